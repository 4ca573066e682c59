"""Diagonal model of the resolvent gap between Neumann and Robin conditions.

In angular sector ``n`` (multiplicity 1 for ``n = 0``, else 2) with weight
``w_n = lambda_check_n^2 gamma_n^2``:

=========================  ==========================================
operator                   eigenvalue
=========================  ==========================================
``D_inf``                  ``w_n / lambda_check_n``
``D_beta``                 ``w_n / (lambda_check_n (1 + lambda_check_n / beta))``
``D_inf - D_beta``         ``w_n / (beta + lambda_check_n)``
=========================  ==========================================

Sums over ``n > n_max`` are enclosed with the analytic envelopes from
:func:`robin_gap.dtn_circle.weight_envelope` together with
``n < lambda_check_n < n + 1/2``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .dtn_circle import DtnMode, dtn_mode
from .errors import DegenerateGridError, DivergenceWarning, DomainError, TailCertificateError

__all__ = [
    "DiagonalModel",
    "LinearFit",
    "RateFit",
    "RemainderReport",
    "beta_grid",
    "build_model",
    "expansion_remainder",
    "gap_mode_eigenvalue",
    "log_linear_fit",
    "operator_norm_gap",
    "rate_fit",
    "remainder_per_mode",
    "schatten_norm_dinf",
    "schatten_norm_gap",
]


@dataclass
class DiagonalModel:
    """Sectors ``n = 0 .. n_max`` of the diagonal model.

    Attributes
    ----------
    modes : tuple of DtnMode
        Sorted by ``n``.
    tail_policy : str
        How sectors beyond ``n_max`` are accounted for.
    """

    modes: tuple[DtnMode, ...]
    n_max: int
    tail_policy: str = "analytic envelope, integral comparison"
    lam: np.ndarray = field(init=False, repr=False)
    w: np.ndarray = field(init=False, repr=False)
    mult: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if [m.n for m in self.modes] != list(range(self.n_max + 1)):
            raise DomainError("modes must cover n = 0 .. n_max in order")
        self.lam = np.array([m.lambda_check for m in self.modes])
        self.w = np.array([m.weight for m in self.modes])
        self.mult = np.array([m.multiplicity for m in self.modes], dtype=float)


def build_model(n_max: int = 2000, m_trunc: int | None = None) -> DiagonalModel:
    """Assemble the model; ``m_trunc`` switches ``gamma_n^2`` to the truncated theta sum."""
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    return DiagonalModel(tuple(dtn_mode(n, m_trunc) for n in range(n_max + 1)), int(n_max))


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not (beta > 0.0 and math.isfinite(beta)):
        raise DomainError(f"beta must be positive and finite, got {beta!r}")
    return beta


def gap_mode_eigenvalue(mode: DtnMode, beta: float) -> float:
    """Eigenvalue ``gamma^2 lambda_check^2 / (beta + lambda_check)`` of ``D_inf - D_beta``."""
    beta = _check_beta(beta)
    return mode.weight / (beta + mode.lambda_check)


def _gap_values(model: DiagonalModel, beta: float) -> np.ndarray:
    return model.w / (beta + model.lam)


def operator_norm_gap(model: DiagonalModel, beta: float) -> float:
    """``||D_beta - D_inf||`` with a certificate that no sector ``n > n_max`` exceeds it.

    Raises
    ------
    TailCertificateError
        If the envelope ``pi / ((N + 2)(beta + N + 1))`` is not below the maximum.
    """
    beta = _check_beta(beta)
    vals = _gap_values(model, beta)
    top = float(vals.max())
    n = model.n_max
    tail_sup = math.pi / ((n + 2) * (beta + n + 1))
    if tail_sup >= top:
        raise TailCertificateError(
            f"tail envelope {tail_sup:.3e} not below max {top:.3e}; increase n_max")
    return top


def _log1p_ratio(v: float) -> float:
    """``log1p(v) / v`` with the removable singularity at 0."""
    if abs(v) < 1e-8:
        return 1.0 - v / 2.0
    return math.log1p(v) / v


def _tail_p1(n_max: int, c_up: float, c_lo: float) -> tuple[float, float]:
    """Integral bounds on ``sum_{n > n_max} w_n / (c + lambda_check_n)``.

    Upper integrand ``pi / ((x + 1)(x + c_up))`` from ``x = n_max``;
    lower integrand ``pi a / ((2x + b)(x + c_lo))`` from ``x = n_max + 1``.
    """
    big_x = float(n_max)
    upper = math.pi * _log1p_ratio((c_up - 1.0) / (big_x + 1.0)) / (big_x + 1.0)
    a = 2.0 - 1.0 / (2 * n_max + 2)
    b = 2.0 + 1.0 / (2 * n_max + 4)
    x1 = big_x + 1.0
    lower = math.pi * a * _log1p_ratio((2.0 * c_lo - b) / (2.0 * x1 + b)) / (2.0 * x1 + b)
    return lower, upper


def _tail_general(n_max: int, c_up: float, c_lo: float, p: float) -> tuple[float, float]:
    a = 2.0 - 1.0 / (2 * n_max + 2)
    b = 2.0 + 1.0 / (2 * n_max + 4)
    up = lambda x: (math.pi / ((x + 1.0) * (x + c_up))) ** p
    lo = lambda x: (math.pi * a / ((2.0 * x + b) * (x + c_lo))) ** p
    u, eu = integrate.quad(up, n_max, np.inf, epsabs=0.0, epsrel=1e-11, limit=200)
    l, el = integrate.quad(lo, n_max + 1, np.inf, epsabs=0.0, epsrel=1e-11, limit=200)
    return max(l - el, 0.0), u + eu


def _schatten(values: np.ndarray, mult: np.ndarray, n_max: int, p: float,
              c_up: float, c_lo: float) -> tuple[float, float]:
    if p == math.inf:
        return float(values.max()), 0.0
    if not p >= 0.5:
        raise DomainError("p must be >= 1/2")
    head = math.fsum(mult * values ** p)
    if p <= 0.5:
        warnings.warn("Schatten sum diverges for p <= 1/2", DivergenceWarning, stacklevel=3)
        return head ** (1.0 / p), math.inf
    if p == 1.0:
        lo_t, up_t = _tail_p1(n_max, c_up, c_lo)
    else:
        lo_t, up_t = _tail_general(n_max, c_up, c_lo, p)
    low = (head + 2.0 * lo_t) ** (1.0 / p)
    high = (head + 2.0 * up_t) ** (1.0 / p)
    return low, high - low


def schatten_norm_gap(model: DiagonalModel, beta: float, p: float) -> tuple[float, float]:
    """``||D_inf - D_beta||_{S_p}`` as ``(value, tail_bound)``.

    ``value`` includes a certified lower bound for sectors beyond ``n_max``,
    so the norm lies in ``[value, value + tail_bound]``. ``p = inf`` gives the
    operator norm.
    """
    beta = _check_beta(beta)
    vals = _gap_values(model, beta)
    return _schatten(vals, model.mult, model.n_max, float(p), beta, beta + 0.5)


def schatten_norm_dinf(model: DiagonalModel, p: float) -> tuple[float, float]:
    """``||D_inf||_{S_p}`` with eigenvalues ``gamma_n^2 lambda_check_n``."""
    vals = model.w / model.lam
    return _schatten(vals, model.mult, model.n_max, float(p), 0.0, 0.5)


def remainder_per_mode(model: DiagonalModel, beta: float) -> np.ndarray:
    """``gap - w/beta + w lambda_check/beta^2 = w lambda_check^2 / (beta^2 (beta + lambda_check))``."""
    beta = _check_beta(beta)
    lam = model.lam
    return model.w * lam * lam / (beta * beta * (beta + lam))


@dataclass(frozen=True)
class RemainderReport:
    """Second-order remainder of the gap and the ``K'`` norm check.

    ``kprime_norm`` is ``sup_n w_n lambda_check_n / (1 + lambda_check_n/beta)``
    and ``kprime_bound`` is ``sup_n w_n lambda_check_n`` (``n <= n_max``),
    with ``kprime_envelope = pi`` bounding every sector.
    """

    beta: float
    remainder: float
    argmax: int
    kprime_norm: float
    kprime_bound: float
    kprime_envelope: float

    @property
    def bound_holds(self) -> bool:
        return self.kprime_norm <= self.kprime_bound <= self.kprime_envelope


def expansion_remainder(model: DiagonalModel, beta: float) -> RemainderReport:
    beta = _check_beta(beta)
    rem = remainder_per_mode(model, beta)
    k = int(rem.argmax())
    third = model.w * model.lam
    kprime = third / (1.0 + model.lam / beta)
    return RemainderReport(beta, float(rem[k]), k, float(kprime.max()),
                           float(third.max()), math.pi)


@dataclass(frozen=True)
class RateFit:
    """Least-squares fit ``log(value) = log_constant + exponent * log(beta)``."""

    exponent: float
    log_constant: float
    r_squared: float
    beta_grid: tuple[float, ...]


@dataclass(frozen=True)
class LinearFit:
    """Least-squares fit ``value = intercept + slope * log(beta)``."""

    slope: float
    intercept: float
    r_squared: float
    beta_grid: tuple[float, ...]


def _grid(values) -> tuple[np.ndarray, np.ndarray]:
    pts = [(float(b), float(v)) for b, v in values]
    if len(pts) < 4:
        raise DegenerateGridError("need at least 4 grid points")
    b = np.array([q[0] for q in pts])
    v = np.array([q[1] for q in pts])
    if np.any(b <= 0) or np.any(np.diff(b) <= 0):
        raise DegenerateGridError("beta grid must be positive and strictly increasing")
    if math.log10(b[-1] / b[0]) < 3.0 - 1e-9:
        raise DegenerateGridError("beta grid must span at least 3 decades")
    return b, v


def _ols(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    xm, ym = x.mean(), y.mean()
    sxx = float(np.sum((x - xm) ** 2))
    slope = float(np.sum((x - xm) * (y - ym)) / sxx)
    intercept = float(ym - slope * xm)
    sst = float(np.sum((y - ym) ** 2))
    if sst == 0.0:
        return slope, intercept, 1.0
    sse = float(np.sum((y - intercept - slope * x) ** 2))
    return slope, intercept, min(1.0, max(0.0, 1.0 - sse / sst))


def rate_fit(values) -> RateFit:
    """Fit a power law to ``(beta, value)`` pairs in log-log coordinates."""
    b, v = _grid(values)
    if np.any(v <= 0):
        raise DomainError("values must be positive for a log-log fit")
    slope, icpt, r2 = _ols(np.log(b), np.log(v))
    return RateFit(slope, icpt, r2, tuple(b.tolist()))


def log_linear_fit(values) -> LinearFit:
    """Fit ``a + b log(beta)`` to ``(beta, value)`` pairs."""
    b, v = _grid(values)
    slope, icpt, r2 = _ols(np.log(b), v)
    return LinearFit(slope, icpt, r2, tuple(b.tolist()))


def beta_grid(lo: float, hi: float, points: int) -> list[float]:
    """Logarithmically spaced grid with exact endpoints."""
    if points < 2 or not 0 < lo < hi:
        raise DegenerateGridError("need 0 < lo < hi and at least 2 points")
    g = np.logspace(math.log10(lo), math.log10(hi), points).tolist()
    g[0], g[-1] = float(lo), float(hi)
    return g
