"""Dirichlet, Neumann and Robin eigenvalues of -Delta on the unit disc.

Separation of variables reduces the Robin condition ``du/dr + beta u = 0``
in angular sector ``n`` to the secular equation

    F(s) = s J'_n(s) + beta J_n(s) = 0,      lambda = s**2,

whose ``m``-th root lies in ``(k'_{n,m}, k_{n,m})``: ``F(k'_{n,m}) = beta J_n(k')``
and ``F(k_{n,m}) = k J'_n(k)`` have opposite signs by interlacing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._roots import safeguarded_newton
from .errors import DomainError, InvariantError
from .specfun import _j_and_derivs, _jn_pair, dirichlet_zero, neumann_zero

MAX_BETA = 1.0e12

__all__ = [
    "DiscMode",
    "RobinEigenvalue",
    "boundary_normal_derivative",
    "boundary_pairing",
    "cross_overlap",
    "disc_mode",
    "normalization_integral",
    "robin_eigenvalue",
]


@dataclass(frozen=True)
class DiscMode:
    """Angular order ``n``, radial index ``m`` and the two bounding zeros."""

    n: int
    m: int
    dirichlet_k: float
    neumann_k: float

    @property
    def multiplicity(self) -> int:
        return 1 if self.n == 0 else 2

    @property
    def dirichlet_eigenvalue(self) -> float:
        return self.dirichlet_k ** 2

    @property
    def neumann_eigenvalue(self) -> float:
        return self.neumann_k ** 2


@dataclass(frozen=True)
class RobinEigenvalue:
    """Root of the secular equation for one mode.

    ``lam`` is the eigenvalue ``s**2``; ``residual`` is
    ``|s J'_n(s) + beta J_n(s)|`` at the returned root.
    """

    mode: DiscMode
    beta: float
    lam: float
    s: float
    residual: float

    @property
    def dirichlet_shift(self) -> float:
        """``lam - k_{n,m}**2`` computed as ``(s - k)(s + k)`` (no cancellation)."""
        k = self.mode.dirichlet_k
        return (self.s - k) * (self.s + k)


def disc_mode(n: int, m: int) -> DiscMode:
    if n < 0 or m < 1:
        raise DomainError(f"mode ({n}, {m}) does not exist")
    k = dirichlet_zero(n, m)
    kp = neumann_zero(n, m)
    if not kp < k:
        raise InvariantError(f"k'_{{{n},{m}}} = {kp!r} not below k_{{{n},{m}}} = {k!r}")
    return DiscMode(int(n), int(m), k, kp)


def _secular_value(n: int, s: float, beta: float) -> float:
    if s == 0.0:
        return beta * (1.0 if n == 0 else 0.0)
    jn, jn1 = _jn_pair(n, s)
    return s * ((n / s) * jn - jn1) + beta * jn


def robin_eigenvalue(n: int, m: int, beta: float) -> RobinEigenvalue:
    """Exact Robin eigenvalue ``lambda_{n,m}(beta)`` of the unit disc.

    ``beta = 0`` returns the Neumann value ``k'_{n,m}**2`` exactly.

    Raises
    ------
    DomainError
        For ``beta < 0`` or ``beta > 1e12``.
    InvariantError
        If the root leaves ``(k'^2, k^2)`` or fails its residual certificate.
    """
    beta = float(beta)
    if not math.isfinite(beta) or beta < 0.0:
        raise DomainError(f"beta must be finite and >= 0, got {beta!r}")
    if beta > MAX_BETA:
        raise DomainError(f"beta {beta!r} exceeds the overflow guard {MAX_BETA:g}")
    mode = disc_mode(n, m)
    n = mode.n
    if beta == 0.0:
        s = mode.neumann_k
        return RobinEigenvalue(mode, 0.0, s * s, s, abs(_secular_value(n, s, 0.0)))

    # G = F / max(beta, 1) keeps the scale O(1) for large coupling
    scale = 1.0 / max(beta, 1.0)

    def fdf(s: float) -> tuple[float, float]:
        if s == 0.0:
            jn, jp, curv = (1.0 if n == 0 else 0.0), 0.0, 0.0
        else:
            jn, jp, _ = _j_and_derivs(n, s)
            curv = (s - n * n / s) * jn
        # d/ds (s J'_n) = -(s - n^2/s) J_n
        return (s * jp + beta * jn) * scale, (beta * jp - curv) * scale

    kp = mode.neumann_k
    if kp > 0.0 and beta * kp / ((kp - n) * (kp + n)) <= 16.0 * math.ulp(kp):
        # first-order shift off k' is below rounding: no sign change to certify
        s = kp
    else:
        s = safeguarded_newton(fdf, kp, mode.dirichlet_k)
    lam = s * s
    residual = abs(_secular_value(n, s, beta))
    if not mode.neumann_k <= s < mode.dirichlet_k:
        raise InvariantError(f"Robin root {s!r} escaped ({mode.neumann_k!r}, {mode.dirichlet_k!r})")
    if residual > 1e-11 * (1.0 + beta):
        raise InvariantError(f"Robin residual {residual:.3e} fails certificate at beta={beta!r}")
    return RobinEigenvalue(mode, beta, lam, s, residual)


def normalization_integral(n: int, c: float) -> float:
    """``int_0^1 J_n(c r)**2 r dr = J'_n(c)**2/2 + (1 - n**2/c**2) J_n(c)**2/2``."""
    if c <= 0.0:
        raise DomainError("normalization_integral requires c > 0")
    jn, jn1 = _jn_pair(n, c)
    jp = (n / c) * jn - jn1
    return 0.5 * jp * jp + 0.5 * (1.0 - (n * n) / (c * c)) * jn * jn


def cross_overlap(n: int, a: float, b: float) -> float:
    """Lommel integral ``int_0^1 J_n(a r) J_n(b r) r dr``.

    For ``|a - b| <= 1e-8`` the coincident-argument formula is used.
    """
    if a <= 0.0 or b <= 0.0:
        raise DomainError("cross_overlap requires a, b > 0")
    if abs(a - b) <= 1e-8:
        return normalization_integral(n, a)
    ja, ja1 = _jn_pair(n, a)
    jb, jb1 = _jn_pair(n, b)
    jpa = (n / a) * ja - ja1
    jpb = (n / b) * jb - jb1
    return (b * ja * jpb - a * jpa * jb) / ((a - b) * (a + b))


def boundary_normal_derivative(n: int, m: int) -> float:
    """Amplitude ``d`` with ``df/dnu = d e^{+-i n theta} / sqrt(pi)``.

    For the normalised Dirichlet mode
    ``f = pi^{-1/2} J_n(k r) / J_{n+1}(k) e^{+-i n theta}`` one has ``d = -k_{n,m}``
    because ``J'_n(k) = -J_{n+1}(k)`` at a zero of ``J_n``.
    """
    return -dirichlet_zero(n, m)


def boundary_pairing(n: int, m: int) -> float:
    """``(df/dnu, df/dnu)`` over the circle with arc-length ``d theta``: ``2 k_{n,m}**2``."""
    d = boundary_normal_derivative(n, m)
    return d * d / math.pi * (2.0 * math.pi)
