"""Real Bessel functions, Bessel zeros and negative Airy zeros.

Integer orders use the power series where it is cancellation-free
(``(x/2)**2 <= n + 1``) and Miller's backward recurrence, normalised by
``J_0 + 2*sum(J_2k) = 1``, everywhere else.  The fractional orders ``+-1/3``
needed for the Airy function use the same split with the Neumann-type
normalisation ``sum (nu+2k) Gamma(nu+k)/k! J_{nu+2k}(z) = (z/2)**nu``.

Zeros of ``J_n`` are found sequentially: for ``n >= 1`` consecutive zeros are
more than ``pi`` apart (``n = 0``: more than 3), so stepping forward from the
previous zero with a step below that spacing certifies that the first sign
change seen is the next zero.  Zeros of ``J'_n`` are then bracketed between
consecutive zeros of ``J_n`` by interlacing.
"""

from __future__ import annotations

import enum
import math
import threading
import warnings
from dataclasses import dataclass

from ._roots import bisect, safeguarded_newton, tight_bracket
from .errors import BracketError, DomainError, InvariantError, PrecisionWarning

MAX_ORDER = 2048
MAX_ARG = 1.0e4
MAX_ZERO_ORDER = 512
MAX_ZERO_INDEX = 200
MAX_RATIO_ORDER = 10_000

_RESCALE = 1.0e250
_INV_RESCALE = 1.0e-250

__all__ = [
    "AiryZero",
    "BesselZero",
    "Family",
    "airy_ai_neg",
    "airy_negative_zero",
    "bessel_j",
    "bessel_j_frac",
    "bessel_j_prime",
    "clear_caches",
    "dirichlet_zero",
    "find_zero",
    "modified_ratio",
    "modified_ratio_routes",
    "neumann_zero",
    "zero_spacing_lower_bound",
]


class Family(str, enum.Enum):
    DIRICHLET_J = "DirichletJ"
    NEUMANN_JPRIME = "NeumannJprime"

    @classmethod
    def parse(cls, value: "Family | str") -> "Family":
        if isinstance(value, Family):
            return value
        key = str(value).strip().lower()
        if key in ("dirichletj", "dirichlet", "j"):
            return cls.DIRICHLET_J
        if key in ("neumannjprime", "neumann", "jprime", "j'"):
            return cls.NEUMANN_JPRIME
        raise DomainError(f"unknown zero family {value!r}")


@dataclass(frozen=True)
class BesselZero:
    family: Family
    order: int
    index: int
    value: float
    bracket: tuple[float, float]
    residual: float


@dataclass(frozen=True)
class AiryZero:
    index: int
    value: float
    bracket: tuple[float, float]
    residual: float


# ---------------------------------------------------------------------------
# integer order


def _check_order_arg(n: int, x: float) -> None:
    if int(n) != n or n < 0:
        raise DomainError(f"order must be a nonnegative integer, got {n!r}")
    if n > MAX_ORDER:
        raise DomainError(f"order {n} exceeds supported maximum {MAX_ORDER}")
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"argument must be finite and >= 0, got {x!r}")
    if x > MAX_ARG:
        raise DomainError(f"argument {x!r} exceeds supported maximum {MAX_ARG:g}")


def _use_series(n: int, x: float) -> bool:
    return 0.25 * x * x <= n + 1


def _series_jn(n: int, x: float) -> float:
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    half = 0.5 * x
    lead = 1.0
    for j in range(1, n + 1):
        lead *= half / j
        if lead == 0.0:
            return 0.0
    q = -half * half
    terms = [lead]
    term = lead
    partial = lead
    for k in range(1, 500):
        term *= q / (k * (n + k))
        terms.append(term)
        partial += term
        if abs(term) < 1e-18 * abs(partial):
            break
    return math.fsum(terms)


def _miller_pair(n: int, x: float) -> tuple[float, float]:
    big = max(float(n), x)
    start = int(big + 20.0 * big ** (1.0 / 3.0) + 30.0)
    start += start % 2
    two_over_x = 2.0 / x
    jp = 0.0          # J_{k+1}
    jk = 1.0          # J_k, unnormalised
    jn = jn1 = 0.0
    norm = 0.0
    for k in range(start, 0, -1):
        jm = k * two_over_x * jk - jp
        jp, jk = jk, jm
        order = k - 1
        if order == n:
            jn = jk
        elif order == n + 1:
            jn1 = jk
        if order > 0 and order % 2 == 0:
            norm += 2.0 * jk
        if abs(jk) > _RESCALE:
            jk *= _INV_RESCALE
            jp *= _INV_RESCALE
            jn *= _INV_RESCALE
            jn1 *= _INV_RESCALE
            norm *= _INV_RESCALE
    norm += jk
    return jn / norm, jn1 / norm


def _jn_pair(n: int, x: float) -> tuple[float, float]:
    """``(J_n(x), J_{n+1}(x))`` from a single evaluation route."""
    if x == 0.0:
        return (1.0 if n == 0 else 0.0), 0.0
    if _use_series(n, x):
        return _series_jn(n, x), _series_jn(n + 1, x)
    return _miller_pair(n, x)


def bessel_j(n: int, x: float) -> float:
    """Bessel function of the first kind ``J_n(x)`` for integer ``n >= 0``.

    Parameters
    ----------
    n : int
        Order, ``0 <= n <= 2048``.
    x : float
        Argument, ``0 <= x <= 1e4``.

    Raises
    ------
    DomainError
        For negative ``x``, non-integer or oversized ``n``, or ``x > 1e4``.
    """
    x = float(x)
    _check_order_arg(n, x)
    return _jn_pair(int(n), x)[0]


def bessel_j_prime(n: int, x: float) -> float:
    """``J'_n(x)`` computed as ``(n/x) J_n(x) - J_{n+1}(x)``.

    At ``x = 0`` the limits are returned: ``1/2`` for ``n = 1`` and ``0``
    otherwise.
    """
    x = float(x)
    _check_order_arg(n, x)
    n = int(n)
    if x == 0.0:
        return 0.5 if n == 1 else 0.0
    jn, jn1 = _jn_pair(n, x)
    return (n / x) * jn - jn1


def _j_and_derivs(n: int, x: float) -> tuple[float, float, float]:
    """``J_n, J'_n, J''_n`` at ``x > 0`` (second derivative from Bessel's ODE)."""
    jn, jn1 = _jn_pair(n, x)
    jp = (n / x) * jn - jn1
    jpp = -jp / x - (1.0 - (n * n) / (x * x)) * jn
    return jn, jp, jpp


# ---------------------------------------------------------------------------
# fractional order (used for the Airy function)


def _series_frac(nu: float, z: float) -> float:
    half = 0.5 * z
    lead = math.exp(nu * math.log(half) - math.lgamma(nu + 1.0))
    q = -half * half
    terms = [lead]
    term = lead
    partial = lead
    for k in range(1, 500):
        term *= q / (k * (nu + k))
        terms.append(term)
        partial += term
        if abs(term) < 1e-18 * abs(partial):
            break
    return math.fsum(terms)


def _miller_frac_pair(nu0: float, z: float) -> tuple[float, float]:
    """``(J_nu0(z), J_{nu0+1}(z))`` for ``0 < nu0 < 1`` by Miller recurrence."""
    start = int(z + 20.0 * z ** (1.0 / 3.0) + 30.0)
    start += start % 2
    two_over_z = 2.0 / z
    jp, jk = 0.0, 1.0
    j0 = j1 = 0.0
    norm = 0.0
    # sum_k (nu0 + 2k) Gamma(nu0 + k) / k! J_{nu0 + 2k}(z) = (z/2)^nu0
    for j in range(start, 0, -1):
        jm = (nu0 + j) * two_over_z * jk - jp
        jp, jk = jk, jm
        order = j - 1
        if order == 1:
            j1 = jk
        if order % 2 == 0:
            k = order // 2
            coef = (nu0 + order) * math.exp(math.lgamma(nu0 + k) - math.lgamma(k + 1.0))
            norm += coef * jk
        if abs(jk) > _RESCALE:
            jk *= _INV_RESCALE
            jp *= _INV_RESCALE
            j1 *= _INV_RESCALE
            norm *= _INV_RESCALE
    j0 = jk
    scale = math.exp(nu0 * math.log(0.5 * z)) / norm
    return j0 * scale, j1 * scale


def bessel_j_frac(nu: float, z: float) -> float:
    """``J_nu(z)`` for the real orders ``nu = +-1/3`` (and ``+-2/3``), ``z > 0``."""
    allowed = (1.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0, -2.0 / 3.0)
    if not any(abs(nu - a) < 1e-15 for a in allowed):
        raise DomainError(f"fractional order {nu!r} not supported")
    z = float(z)
    if not math.isfinite(z) or z <= 0.0 or z > MAX_ARG:
        raise DomainError(f"argument must lie in (0, {MAX_ARG:g}], got {z!r}")
    if 0.25 * z * z <= abs(nu) + 1.0:
        return _series_frac(nu, z)
    if nu > 0:
        return _miller_frac_pair(nu, z)[0]
    # step the recurrence one order below the positive base
    nu0 = nu + 1.0
    j0, j1 = _miller_frac_pair(nu0, z)
    return (2.0 * nu0 / z) * j0 - j1


def airy_ai_neg(x: float) -> float:
    """``Ai(-x)`` for ``x > 0`` from ``(sqrt(x)/3)(J_{1/3}(zeta) + J_{-1/3}(zeta))``."""
    if x <= 0.0:
        raise DomainError("airy_ai_neg requires x > 0")
    zeta = (2.0 / 3.0) * x ** 1.5
    return (math.sqrt(x) / 3.0) * (bessel_j_frac(1.0 / 3.0, zeta)
                                   + bessel_j_frac(-1.0 / 3.0, zeta))


def airy_negative_zero(m: int) -> AiryZero:
    """The ``m``-th positive root ``a_m`` of ``Ai(-x) = 0``, ``1 <= m <= 50``."""
    if int(m) != m or m < 1 or m > 50:
        raise DomainError(f"Airy zero index must be in [1, 50], got {m!r}")
    m = int(m)
    t = 3.0 * math.pi * (4 * m - 1) / 8.0
    guess = t ** (2.0 / 3.0) * (1.0 + 5.0 / (48.0 * t * t) - 5.0 / (36.0 * t ** 4))
    spacing = math.pi / math.sqrt(guess)
    lo = guess - 0.4 * spacing
    steps = 8
    h = 0.8 * spacing / steps
    flo = airy_ai_neg(lo)
    for i in range(1, steps + 1):
        hi = lo + h
        fhi = airy_ai_neg(hi)
        if flo == 0.0 or flo * fhi < 0.0:
            break
        lo, flo = hi, fhi
    else:
        raise BracketError(f"no sign change of Ai(-x) near a_{m} ~ {guess:.6f}")
    root, blo, bhi = bisect(airy_ai_neg, lo, hi, xtol=4e-16 * hi)
    if not blo < root < bhi:
        blo, bhi = tight_bracket(airy_ai_neg, root, root)
    return AiryZero(index=m, value=root, bracket=(blo, bhi),
                    residual=abs(airy_ai_neg(root)))


# ---------------------------------------------------------------------------
# ratio of modified Bessel functions at 1


def _ratio_series(n: int) -> float:
    def scaled_sum(order: int) -> float:
        # n! * 2^n * I_n(1) = sum_k n! / (4^k k! (n+k)!)
        terms = [1.0]
        t = 1.0
        for k in range(1, 200):
            t /= 4.0 * k * (order + k)
            terms.append(t)
            if t < 1e-18:
                break
        return math.fsum(terms)

    return scaled_sum(n + 1) / (2.0 * (n + 1) * scaled_sum(n))


def _ratio_continued_fraction(n: int, depth: int = 30) -> float:
    r = 0.0
    for k in range(n + depth, n - 1, -1):
        r = 1.0 / (2.0 * (k + 1) + r)
    return r


def modified_ratio_routes(n: int) -> tuple[float, float]:
    """Both evaluations of ``I_{n+1}(1)/I_n(1)``: (power series, continued fraction)."""
    if int(n) != n or n < 0 or n > MAX_RATIO_ORDER:
        raise DomainError(f"order must be an integer in [0, {MAX_RATIO_ORDER}], got {n!r}")
    n = int(n)
    return _ratio_series(n), _ratio_continued_fraction(n)


def modified_ratio(n: int) -> float:
    """``I_{n+1}(1) / I_n(1)``, always in ``(0, 1/2)``.

    Emits :class:`PrecisionWarning` if the series and continued-fraction
    routes disagree by more than ``1e-13`` relative.
    """
    a, b = modified_ratio_routes(n)
    if abs(a - b) > 1e-13 * abs(a):
        warnings.warn(f"modified_ratio({n}): routes differ ({a!r} vs {b!r})",
                      PrecisionWarning, stacklevel=2)
    return a


# ---------------------------------------------------------------------------
# zeros of J_n and J'_n


_SEQ_STEP = 2.5
_dirichlet_cache: dict[int, list[float]] = {}
_cache_lock = threading.Lock()


def zero_spacing_lower_bound(n: int) -> float:
    """Lower bound on the gap between consecutive positive zeros of ``J_n``.

    ``pi`` for ``n >= 1`` (Sturm comparison, order above 1/2); for ``n = 0``
    the gap exceeds ``pi / sqrt(1 + 1/(4 j_{0,1}^2)) > 3``.
    """
    return math.pi if n >= 1 else 3.0


def clear_caches() -> None:
    """Drop memoised zero sequences (results are identical with or without)."""
    with _cache_lock:
        _dirichlet_cache.clear()


def _j_only(n: int):
    return lambda x: _jn_pair(n, x)[0]


def _next_dirichlet(n: int, prev: float | None) -> float:
    f = _j_only(n)
    if prev is None:
        a = float(n) if n >= 1 else 2.0
    else:
        a = prev + zero_spacing_lower_bound(n)
    fa = f(a)
    for _ in range(10_000):
        if fa == 0.0:
            return a
        b = a + _SEQ_STEP
        if b > MAX_ARG:
            break
        fb = f(b)
        if fa * fb < 0.0:
            def fdf(x: float) -> tuple[float, float]:
                jn, jp, _ = _j_and_derivs(n, x)
                return jn, jp
            return safeguarded_newton(fdf, a, b)
        a, fa = b, fb
    raise BracketError(f"no further zero of J_{n} found after {prev!r}")


def _dirichlet_sequence(n: int, m: int) -> list[float]:
    with _cache_lock:
        seq = _dirichlet_cache.setdefault(n, [])
        while len(seq) < m:
            seq.append(_next_dirichlet(n, seq[-1] if seq else None))
        return seq[:m]


def _check_zero_args(n: int, m: int) -> None:
    if int(n) != n or n < 0 or n > MAX_ZERO_ORDER:
        raise DomainError(f"zero order must be an integer in [0, {MAX_ZERO_ORDER}], got {n!r}")
    if int(m) != m or m < 1 or m > MAX_ZERO_INDEX:
        raise DomainError(f"zero index must be an integer in [1, {MAX_ZERO_INDEX}], got {m!r}")


def dirichlet_zero(n: int, m: int) -> float:
    """``k_{n,m}``: the ``m``-th positive zero of ``J_n``."""
    _check_zero_args(n, m)
    return _dirichlet_sequence(int(n), int(m))[-1]


def neumann_zero(n: int, m: int) -> float:
    """``k'_{n,m}``: the ``m``-th zero of ``J'_n`` with ``k'_{0,1} = 0``."""
    return find_zero(Family.NEUMANN_JPRIME, n, m).value


def find_zero(family: Family | str, n: int, m: int) -> BesselZero:
    """Locate the ``m``-th zero of ``J_n`` or ``J'_n`` with a certified bracket.

    Conventions: ``k'_{0,1} = 0`` exactly (residual 0) and
    ``k'_{0,m} = k_{1,m-1}`` for ``m >= 2``.

    Raises
    ------
    BracketError
        If no sign change can be certified.
    InvariantError
        If the interlacing ``k'_{n,m} < k_{n,m} < k'_{n,m+1}`` fails.
    """
    family = Family.parse(family)
    _check_zero_args(n, m)
    n, m = int(n), int(m)

    if family is Family.DIRICHLET_J:
        value = _dirichlet_sequence(n, m)[-1]
        f = _j_only(n)
        lo, hi = tight_bracket(f, value, max(1.0, value))
        return BesselZero(family, n, m, value, (lo, hi), abs(f(value)))

    def fprime(x: float) -> float:
        # J'_n is odd/even with J_n's parity; the n = 0 bracket straddles 0
        if x < 0.0:
            return fprime(-x) * (-1.0 if n % 2 == 0 else 1.0)
        if x == 0.0:
            return 0.5 if n == 1 else 0.0
        jn, jn1 = _jn_pair(n, x)
        return (n / x) * jn - jn1

    if n == 0:
        if m == 1:
            return BesselZero(family, 0, 1, 0.0, (-1.0, 1.0), 0.0)
        value = _dirichlet_sequence(1, m - 1)[-1]
        lower = _dirichlet_sequence(0, m - 1)[-1]
        upper = _dirichlet_sequence(0, m)[-1]
    else:
        seq = _dirichlet_sequence(n, m)
        lower = float(n) if m == 1 else seq[m - 2]
        upper = seq[m - 1]

        def fdf(x: float) -> tuple[float, float]:
            _, jp, jpp = _j_and_derivs(n, x)
            return jp, jpp

        value = safeguarded_newton(fdf, lower, upper)
    if not lower < value < upper:
        raise InvariantError(
            f"interlacing violated: k'_{{{n},{m}}}={value!r} not in ({lower!r}, {upper!r})")
    lo, hi = tight_bracket(fprime, value, max(1.0, value))
    return BesselZero(family, n, m, value, (lo, hi), abs(fprime(value)))
