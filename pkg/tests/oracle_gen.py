"""Regenerate the frozen reference values used in the tests (needs mpmath).

Run ``python3 tests/oracle_gen.py``; nothing here imports the package.
"""

import mpmath as mp

mp.mp.dps = 40


def show(name, value):
    print(f"{name} = {mp.nstr(value, 17, min_fixed=-30, max_fixed=30)}")


def robin_root(n, m, beta):
    # bracket between the Neumann and Dirichlet zeros
    lo = mp.besseljzero(n, m, derivative=1) if (n, m) != (0, 1) else mp.mpf(0)
    hi = mp.besseljzero(n, m)
    f = lambda s: s * mp.besselj(n, s, derivative=1) + beta * mp.besselj(n, s)
    return mp.findroot(f, (lo + mp.mpf("1e-30"), hi), solver="anderson")


if __name__ == "__main__":
    for n in (0, 1, 2, 10):
        show(f"r_{n}", mp.besseli(n + 1, 1) / mp.besseli(n, 1))
    show("k_0_1", mp.besseljzero(0, 1))
    show("k_1_1", mp.besseljzero(1, 1))
    show("k_5_7", mp.besseljzero(5, 7))
    show("k_512_200", mp.besseljzero(512, 200))
    show("kp_1_1", mp.besseljzero(1, 1, derivative=1))
    show("kp_3_4", mp.besseljzero(3, 4, derivative=1))
    show("J_0_1e4", mp.besselj(0, 10000))
    show("J_100_150", mp.besselj(100, 150))
    show("J_7_0p5", mp.besselj(7, mp.mpf("0.5")))
    show("Jp_3_2p5", mp.besselj(3, mp.mpf("2.5"), derivative=1))
    show("Jthird_1p7", mp.besselj(mp.mpf(1) / 3, mp.mpf("1.7")))
    show("Jmthird_1p7", mp.besselj(-mp.mpf(1) / 3, mp.mpf("1.7")))
    for m in (1, 2, 50):
        show(f"a_{m}", -mp.airyaizero(m))
    k = mp.besseljzero(0, 1)
    show("half_J1_k01_sq", mp.besselj(1, k) ** 2 / 2)
    show("two_k01_sq", 2 * k * k)
    show("quad_J0sq_c1", mp.quad(lambda r: mp.besselj(0, r) ** 2 * r, [0, 1]))
    show("quad_J0_1_2", mp.quad(lambda r: mp.besselj(0, r) * mp.besselj(0, 2 * r) * r, [0, 1]))
    show("quad_J3_5_7", mp.quad(lambda r: mp.besselj(3, 5 * r) * mp.besselj(3, 7 * r) * r, [0, 1]))
    for beta in (10, 1000, 100000):
        s = robin_root(0, 1, beta)
        show(f"robin_0_1_{beta}", s * s)
    s = robin_root(2, 3, 50)
    show("robin_2_3_50", s * s)
    # gamma_n^2 as the defining theta sum, to 400 terms plus an m^-4 tail estimate
    for n in (0, 1, 3):
        total = mp.mpf(0)
        zs = []
        for m in range(1, 401):
            kp = mp.mpf(0) if (n, m) == (0, 1) else mp.besseljzero(n, m, derivative=1)
            if n == 0:
                th2 = 4 * mp.pi / (1 + kp * kp) ** 2
            else:
                th2 = 4 * mp.pi * kp * kp / ((1 + kp * kp) ** 2 * (kp * kp - n * n))
            total += th2
        show(f"gamma_sq_{n}_sum400", total)
        lam = n + mp.besseli(n + 1, 1) / mp.besseli(n, 1)
        show(f"gamma_sq_{n}_closed", mp.pi * (1 + n * n - lam * lam) / (lam * lam))
    # projection drift 1 - rho^2 at high precision
    for (n, m, beta) in ((0, 1, 1000), (1, 1, 10000)):
        s = robin_root(n, m, beta)
        kk = mp.besseljzero(n, m)
        ov = mp.quad(lambda r: mp.besselj(n, s * r) * mp.besselj(n, kk * r) * r, [0, 1])
        ns_ = mp.quad(lambda r: mp.besselj(n, s * r) ** 2 * r, [0, 1])
        nk = mp.quad(lambda r: mp.besselj(n, kk * r) ** 2 * r, [0, 1])
        show(f"drift_{n}_{m}_{beta}", 1 - ov * ov / (ns_ * nk))
