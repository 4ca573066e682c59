"""Special functions checked against frozen high-precision references.

References were produced with ``tests/oracle_gen.py`` (mpmath, 40 digits).
"""

import math
import threading

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from robin_gap import specfun
from robin_gap.errors import DomainError

RTOL = 1e-13
ZERO_RTOL = 1e-14

J_REF = [
    (0, 1.0e4, -0.0070961603533888015),
    (100, 150.0, -0.015359526118405391),
    (7, 0.5, 1.2015867327763023e-08),
]
ZERO_REF = [
    ("dirichlet", 0, 1, 2.4048255576957728),
    ("dirichlet", 1, 1, 3.8317059702075123),
    ("dirichlet", 5, 7, 28.626618307291138),
    ("dirichlet", 512, 200, 1332.1185354157518),
    ("neumann", 1, 1, 1.8411837813406593),
    ("neumann", 3, 4, 14.585848286167028),
]
RATIO_REF = {0: 0.44638996589653451, 1: 0.24019372387008974,
             2: 0.16330611761053414, 10: 0.045368757071292187}
AIRY_REF = {1: 2.3381074104597670, 2: 4.0879494441309706, 50: 38.021008677255254}


@pytest.mark.parametrize("n,x,ref", J_REF)
def test_bessel_j_reference(n, x, ref):
    # large argument loses a few digits to the phase; absolute error is what matters
    np.testing.assert_allclose(specfun.bessel_j(n, x), ref, rtol=1e-11, atol=1e-15)


def test_bessel_j_prime_reference():
    np.testing.assert_allclose(specfun.bessel_j_prime(3, 2.5), 0.186138589192681, rtol=RTOL)


def test_bessel_j_at_zero():
    assert specfun.bessel_j(0, 0.0) == 1.0
    assert specfun.bessel_j(4, 0.0) == 0.0
    assert specfun.bessel_j_prime(1, 0.0) == 0.5
    assert specfun.bessel_j_prime(2, 0.0) == 0.0


def test_fractional_orders():
    np.testing.assert_allclose(specfun.bessel_j_frac(1 / 3, 1.7), 0.56880197719775258, rtol=RTOL)
    np.testing.assert_allclose(specfun.bessel_j_frac(-1 / 3, 1.7), 0.10208951001979614, rtol=RTOL)


@pytest.mark.parametrize("family,n,m,ref", ZERO_REF)
def test_zero_reference(family, n, m, ref):
    z = specfun.find_zero(family, n, m)
    np.testing.assert_allclose(z.value, ref, rtol=ZERO_RTOL)
    assert z.bracket[0] <= z.value <= z.bracket[1]
    assert z.residual <= 1e-12


def test_neumann_conventions():
    assert specfun.neumann_zero(0, 1) == 0.0
    for m in range(2, 6):
        assert specfun.neumann_zero(0, m) == specfun.dirichlet_zero(1, m - 1)


@pytest.mark.parametrize("n", sorted(RATIO_REF))
def test_modified_ratio_reference(n):
    np.testing.assert_allclose(specfun.modified_ratio(n), RATIO_REF[n], rtol=RTOL)
    a, b = specfun.modified_ratio_routes(n)
    np.testing.assert_allclose(a, b, rtol=1e-14)


@pytest.mark.parametrize("m", sorted(AIRY_REF))
def test_airy_zero_reference(m):
    z = specfun.airy_negative_zero(m)
    np.testing.assert_allclose(z.value, AIRY_REF[m], rtol=1e-13)
    assert abs(specfun.airy_ai_neg(z.value)) < 1e-12


def test_family_parse():
    assert specfun.Family.parse("DirichletJ") is specfun.Family.DIRICHLET_J
    assert specfun.Family.parse("neumann") is specfun.Family.NEUMANN_JPRIME
    with pytest.raises(DomainError):
        specfun.Family.parse("hankel")


@pytest.mark.parametrize("call", [
    lambda: specfun.bessel_j(-1, 1.0),
    lambda: specfun.bessel_j(1.5, 1.0),
    lambda: specfun.bessel_j(2, -0.1),
    lambda: specfun.bessel_j(2, 2.0e4),
    lambda: specfun.bessel_j(3000, 1.0),
    lambda: specfun.bessel_j(1, math.nan),
    lambda: specfun.find_zero("dirichlet", 513, 1),
    lambda: specfun.find_zero("dirichlet", 0, 0),
    lambda: specfun.find_zero("dirichlet", 0, 201),
    lambda: specfun.modified_ratio(-2),
])
def test_domain_errors(call):
    with pytest.raises(DomainError):
        call()


def test_cache_is_thread_safe_and_transparent():
    specfun.clear_caches()
    out = {}

    def work(i):
        out[i] = [specfun.dirichlet_zero(7, m) for m in range(1, 30)]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    ref = out[0]
    specfun.clear_caches()
    assert all(v == ref for v in out.values())
    assert [specfun.dirichlet_zero(7, m) for m in range(1, 30)] == ref


@given(n=st.integers(0, 60), x=st.floats(0.01, 200.0))
def test_three_term_recurrence(n, x):
    # J_{n-1} + J_{n+1} = (2n/x) J_n, compared on the scale of the terms
    if n == 0:
        n = 1
    lhs = specfun.bessel_j(n - 1, x) + specfun.bessel_j(n + 1, x)
    rhs = 2.0 * n / x * specfun.bessel_j(n, x)
    scale = abs(specfun.bessel_j(n - 1, x)) + abs(specfun.bessel_j(n + 1, x)) + abs(rhs)
    assert abs(lhs - rhs) <= 1e-12 * max(scale, 1e-300)


@given(n=st.integers(0, 40), m=st.integers(1, 30))
def test_interlacing(n, m):
    kp = specfun.neumann_zero(n, m)
    k = specfun.dirichlet_zero(n, m)
    assert kp < k < specfun.neumann_zero(n, m + 1)
    assert k < specfun.dirichlet_zero(n + 1, m)
    assert specfun.dirichlet_zero(n, m + 1) - k > specfun.zero_spacing_lower_bound(n)


@given(n=st.integers(0, 5000))
def test_modified_ratio_bounds(n):
    r = specfun.modified_ratio(n)
    # 1/(2n+2+1/(2n+4)) < r < 1/(2n+2); for large n the lower gap is below one ulp
    lo = 1.0 / (2 * n + 2 + 1.0 / (2 * n + 4))
    slack = 0.0 if n <= 100 else 4 * np.finfo(float).eps * lo
    assert lo - slack < r < 1.0 / (2 * n + 2)
