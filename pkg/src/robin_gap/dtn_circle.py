"""Dirichlet-to-Neumann spectrum of ``-Delta + 1`` on the unit circle.

On the boundary harmonic ``e^{i n theta}`` the operator acts by

    lambda_check_n = I'_n(1) / I_n(1) = n + r_n,     r_n = I_{n+1}(1) / I_n(1),

and the coupling weights are ``theta_{n,m}`` with ``gamma_n^2 = sum_m theta_{n,m}^2``.
The sum has the closed form ``gamma_n^2 = pi (1 + n^2 - lambda_check_n^2) / lambda_check_n^2``,
evaluated without cancellation through the weight

    w_n = lambda_check_n^2 gamma_n^2 = pi r_n (2 + r_{n+1} - r_n).

Envelopes used for certified tails (all ``n >= 0``)::

    pi (2 - 1/(2n+2)) / (2n + 2 + 1/(2n+4)) < w_n < pi / (n + 1)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, InvariantError
from .specfun import (
    MAX_RATIO_ORDER,
    dirichlet_zero,
    modified_ratio,
    neumann_zero,
    zero_spacing_lower_bound,
)

__all__ = [
    "BoundednessReport",
    "DtnMode",
    "boundedness_diagnostics",
    "dtn_eigenvalue",
    "dtn_mode",
    "gamma_sq",
    "gamma_sq_closed",
    "hilbert_schmidt_partial_sums",
    "theta",
    "weight",
    "weight_envelope",
]


@dataclass(frozen=True)
class DtnMode:
    """One angular sector of the diagonal model.

    ``weight`` is ``lambda_check**2 * gamma_sq``; ``gamma_sq_tail_bound`` is zero
    when ``gamma_sq`` comes from the closed form.
    """

    n: int
    lambda_check: float
    gamma_sq: float
    gamma_sq_tail_bound: float
    weight: float

    @property
    def multiplicity(self) -> int:
        return 1 if self.n == 0 else 2


def _check_n(n: int, limit: int = MAX_RATIO_ORDER - 1) -> int:
    if int(n) != n or n < 0 or n > limit:
        raise DomainError(f"n must be an integer in [0, {limit}], got {n!r}")
    return int(n)


def dtn_eigenvalue(n: int) -> float:
    """``lambda_check_n = n + I_{n+1}(1)/I_n(1)``, strictly inside ``(n, n + 1/2)``."""
    n = _check_n(n, MAX_RATIO_ORDER)
    lam = n + modified_ratio(n)
    if not n < lam < n + 0.5:
        raise InvariantError(f"lambda_check_{n} = {lam!r} outside ({n}, {n + 0.5})")
    return lam


def weight(n: int) -> float:
    """``lambda_check_n^2 gamma_n^2 = pi r_n (2 + r_{n+1} - r_n)``."""
    n = _check_n(n)
    r0 = modified_ratio(n)
    r1 = modified_ratio(n + 1)
    return math.pi * r0 * (2.0 + r1 - r0)


def weight_envelope(n: int) -> tuple[float, float]:
    """Analytic ``(lower, upper)`` bounds on :func:`weight`, valid for every ``n >= 0``."""
    if n < 0:
        raise DomainError("n must be >= 0")
    lower = math.pi * (2.0 - 1.0 / (2 * n + 2)) / (2 * n + 2 + 1.0 / (2 * n + 4))
    return lower, math.pi / (n + 1)


def gamma_sq_closed(n: int) -> float:
    """Closed form of ``sum_m theta_{n,m}^2``."""
    lam = dtn_eigenvalue(n)
    return weight(n) / (lam * lam)


def theta(n: int, m: int) -> float:
    """Coupling ``2 sqrt(pi) k' / ((1 + k'^2) sqrt(k'^2 - n^2))`` with ``k' = k'_{n,m}``.

    For ``n = 0`` the factor ``k' / sqrt(k'^2)`` is cancelled, which gives
    ``theta_{0,1} = 2 sqrt(pi)`` at ``k'_{0,1} = 0``.
    """
    kp = neumann_zero(n, m)
    if n == 0:
        return 2.0 * math.sqrt(math.pi) / (1.0 + kp * kp)
    d = (kp - n) * (kp + n)
    if not d > 0.0:
        raise InvariantError(f"k'_{{{n},{m}}} = {kp!r} does not exceed n")
    return 2.0 * math.sqrt(math.pi) * kp / ((1.0 + kp * kp) * math.sqrt(d))


def _atanh_excess(t: float) -> float:
    """``(atanh(t) - t) / t^3`` for ``0 <= t < 1``."""
    if t < 0.1:
        t2 = t * t
        return math.fsum(t2 ** j / (2 * j + 3) for j in range(12))
    return (math.atanh(t) - t) / (t * t * t)


def _theta_sq_tail(n: int, m_trunc: int) -> float:
    # theta^2 <= g(k') = 4 pi / (k'^2 (k'^2 - n^2)), decreasing in k'.
    # Zeros beyond the cut sit at K, K + h, K + 2h, ... or further out.
    h = math.pi
    if n == 0:
        big_k = neumann_zero(0, m_trunc)
        head = 0.0
    else:
        big_k = dirichlet_zero(n, m_trunc)
        h = zero_spacing_lower_bound(n)
        head = 4.0 * math.pi / (big_k * big_k * (big_k - n) * (big_k + n))
    integral = 4.0 * math.pi / big_k ** 3 * _atanh_excess(n / big_k)
    return head + integral / h


def gamma_sq(n: int, m_trunc: int = 64) -> tuple[float, float]:
    """Truncated sum ``sum_{m <= m_trunc} theta_{n,m}^2`` and a bound on the rest.

    ``value + tail_bound`` is an upper bound for ``gamma_n^2``.
    """
    if m_trunc < 8:
        raise DomainError("m_trunc must be >= 8")
    n = _check_n(n)
    value = math.fsum(theta(n, m) ** 2 for m in range(1, m_trunc + 1))
    return value, _theta_sq_tail(n, m_trunc)


def dtn_mode(n: int, m_trunc: int | None = None) -> DtnMode:
    """Build a :class:`DtnMode`, via the closed form unless ``m_trunc`` is given."""
    lam = dtn_eigenvalue(n)
    if m_trunc is None:
        w = weight(n)
        return DtnMode(int(n), lam, w / (lam * lam), 0.0, w)
    g, tail = gamma_sq(n, m_trunc)
    return DtnMode(int(n), lam, g, tail, lam * lam * g)


@dataclass(frozen=True)
class BoundednessReport:
    """Diagnostics for ``sup_n lambda_check_n^{2s} gamma_n^2``.

    ``tail_envelope`` bounds every term with ``n > n_max`` analytically, so
    ``max(sup, tail_envelope)`` bounds the whole sequence.
    """

    s: float
    n_max: int
    sup: float
    argmax: int
    tail_trend: str
    increments_shrinking: bool
    tail_envelope: float
    last_decade: tuple[float, ...]

    @property
    def global_bound(self) -> float:
        return max(self.sup, self.tail_envelope)


def _envelope_tail_sup(n_max: int, s: float) -> float:
    # terms < pi (x + 1/2)^e / (x + 1) with e = 2s - 2 <= 1
    e = 2.0 * s - 2.0
    if e >= 1.0:
        return math.pi
    f = lambda x: math.pi * (x + 0.5) ** e / (x + 1.0)
    cands = [n_max + 1]
    if e > 0.5:
        xstar = (e - 0.5) / (1.0 - e)
        cands += [c for c in (math.floor(xstar), math.ceil(xstar)) if c > n_max]
    return max(f(c) for c in cands)


def boundedness_diagnostics(n_max: int, s: float) -> BoundednessReport:
    """Scan ``lambda_check_n^{2s} gamma_n^2`` for ``n <= n_max``.

    ``tail_trend`` describes the last decade of terms as ``"decreasing"``,
    ``"increasing"`` or ``"mixed"``; ``increments_shrinking`` tells whether
    successive differences shrink in magnitude there.
    """
    if not 0 <= n_max <= 2000:
        raise DomainError("n_max must lie in [0, 2000]")
    if not 0.0 < s <= 1.5:
        raise DomainError("s must lie in (0, 3/2]")
    terms = []
    for n in range(n_max + 1):
        lam = dtn_eigenvalue(n)
        terms.append(weight(n) * lam ** (2.0 * s - 2.0))
    argmax = max(range(len(terms)), key=terms.__getitem__)
    start = max(0, n_max - max(n_max // 10, 2))
    last = terms[start:]
    diffs = [b - a for a, b in zip(last, last[1:])]
    if all(d < 0 for d in diffs):
        trend = "decreasing"
    elif all(d > 0 for d in diffs):
        trend = "increasing"
    else:
        trend = "mixed"
    shrinking = all(abs(b) <= abs(a) for a, b in zip(diffs, diffs[1:]))
    return BoundednessReport(float(s), int(n_max), terms[argmax], argmax, trend,
                             shrinking, _envelope_tail_sup(n_max, s), tuple(last))


def hilbert_schmidt_partial_sums(n_values) -> list[float]:
    """``sum_{n <= N} mult_n lambda_check_n^2 gamma_n^2`` for each ``N`` in ``n_values``."""
    targets = sorted(set(int(v) for v in n_values))
    out: dict[int, float] = {}
    acc: list[float] = []
    nxt = 0
    for n in range(targets[-1] + 1 if targets else 0):
        acc.append((1 if n == 0 else 2) * weight(n))
        if n == targets[nxt]:
            out[n] = math.fsum(acc)
            nxt += 1
    return [out[int(v)] for v in n_values]
