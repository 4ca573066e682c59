"""Bracketed scalar root finding used by the zero and eigenvalue solvers."""

from __future__ import annotations

import math
from typing import Callable

from .errors import BracketError

EPS = 2.220446049250313e-16


def _sign(v: float) -> int:
    return (v > 0) - (v < 0)


def bisect(f: Callable[[float], float], lo: float, hi: float, xtol: float,
           maxiter: int = 200) -> tuple[float, float, float]:
    """Plain bisection on a certified bracket.

    Returns ``(root, lo, hi)`` with the final bracket.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo, lo, lo
    if fhi == 0.0:
        return hi, hi, hi
    if _sign(flo) == _sign(fhi):
        raise BracketError(f"no sign change on [{lo!r}, {hi!r}]")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= xtol or mid in (lo, hi):
            break
        fm = f(mid)
        if fm == 0.0:
            return mid, mid, mid
        if _sign(fm) == _sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi), lo, hi


def safeguarded_newton(fdf: Callable[[float], tuple[float, float]],
                       lo: float, hi: float, rtol: float = 4 * EPS,
                       maxiter: int = 100, polish: int = 2) -> float:
    """Newton iteration that never leaves ``[lo, hi]``.

    ``fdf(x)`` returns ``(f(x), f'(x))``. Falls back to bisection whenever a
    Newton step would leave the current bracket or stalls. After convergence,
    up to ``polish`` extra Newton steps are taken if they reduce ``|f|``.
    """
    flo, _ = fdf(lo)
    fhi, _ = fdf(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if _sign(flo) == _sign(fhi):
        raise BracketError(f"no sign change on [{lo!r}, {hi!r}]")
    slo = _sign(flo)
    x = 0.5 * (lo + hi)
    dx_old = hi - lo
    dx = dx_old
    fx, dfx = fdf(x)
    for _ in range(maxiter):
        if fx == 0.0:
            return x
        if _sign(fx) == slo:
            lo = x
        else:
            hi = x
        newton_ok = dfx != 0.0
        if newton_ok:
            step = fx / dfx
            xn = x - step
            newton_ok = lo < xn < hi and abs(2.0 * step) <= abs(dx_old)
        dx_old = dx
        if newton_ok:
            dx = step
            x = xn
        else:
            dx = 0.5 * (hi - lo)
            x = lo + dx
        if abs(dx) <= rtol * max(abs(x), 1e-300) or hi - lo <= rtol * abs(x):
            break
        fx, dfx = fdf(x)
    fx, dfx = fdf(x)
    for _ in range(polish):
        if fx == 0.0 or dfx == 0.0:
            break
        xn = x - fx / dfx
        if not (lo <= xn <= hi) or not math.isfinite(xn):
            break
        fn, dfn = fdf(xn)
        if abs(fn) >= abs(fx):
            break
        x, fx, dfx = xn, fn, dfn
    return x


def tight_bracket(f: Callable[[float], float], x: float, scale: float,
                  max_widen: int = 8) -> tuple[float, float]:
    """Certify a sign change in a small interval around a converged root.

    Starts at half-width ``1e-12 * scale`` and widens tenfold until ``f``
    takes opposite signs at the two ends.
    """
    delta = 1e-12 * scale
    for _ in range(max_widen):
        lo, hi = x - delta, x + delta
        flo, fhi = f(lo), f(hi)
        if flo * fhi < 0.0:
            return lo, hi
        delta *= 10.0
    raise BracketError(f"could not certify a sign change around {x!r}")
