"""Acceptance criteria as finite, certified computations.

Each ``criterion_*`` function returns a :class:`CriterionResult` holding a
pass/fail verdict and the tables that back it. The same functions drive the
``verify`` command and the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import asymptotics, disc_spectrum, dtn_circle, gap_model, specfun
from .config import RunConfig
from .errors import ConsistencyError

__all__ = ["CriterionResult", "Table", "CRITERIA", "run_criteria", "run_criterion"] + [
    f"criterion_{i}" for i in range(1, 12)
]


@dataclass
class Table:
    name: str
    columns: list[str]
    rows: list[list]

    def to_dict(self) -> dict:
        return {"name": self.name, "columns": list(self.columns), "rows": [list(r) for r in self.rows]}


@dataclass
class CriterionResult:
    cid: int
    title: str
    passed: bool
    summary: str
    tables: list[Table] = field(default_factory=list)
    flags: list[dict] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def line(self) -> str:
        return f"[{self.status}] criterion {self.cid:2d}: {self.title} ({self.summary})"


# ---------------------------------------------------------------------------


def criterion_1(cfg: RunConfig, n_hi: int = 50, m_hi: int = 50) -> CriterionResult:
    tol = cfg.tolerances["zero_residual"]
    worst = 0.0
    bad_res = inter = airy = 0
    rows = []
    airy_zeros = [specfun.airy_negative_zero(m).value for m in range(1, m_hi + 1)]
    for n in range(n_hi + 1):
        dz = [specfun.find_zero("dirichlet", n, m) for m in range(1, m_hi + 2)]
        nz = [specfun.find_zero("neumann", n, m) for m in range(1, m_hi + 2)]
        for z in dz[:m_hi] + nz[:m_hi]:
            scaled = z.residual / max(1.0, z.value)
            worst = max(worst, scaled)
            bad_res += scaled > tol
        chain = [v for pair in zip((z.value for z in nz), (z.value for z in dz)) for v in pair]
        inter += sum(not a < b for a, b in zip(chain, chain[1:]))
        if n == 0:
            inter += nz[0].value != 0.0
            inter += sum(nz[m].value != specfun.dirichlet_zero(1, m) for m in range(1, m_hi + 1))
        else:
            inter += not n <= nz[0].value
            c = n ** (1.0 / 3.0)
            for m in range(1, m_hi + 1):
                a = airy_zeros[m - 1]
                lo = n + 2.0 ** (-1.0 / 3.0) * a * c
                hi = lo + 0.3 * a * a / c
                airy += not lo < dz[m - 1].value < hi
        rows.append([n, max(z.residual / max(1.0, z.value) for z in dz[:m_hi] + nz[:m_hi])])
    ok = bad_res == 0 and inter == 0 and airy == 0
    summary = (f"max scaled residual {worst:.2e}, interlacing violations {inter}, "
               f"Airy-bound violations {airy}")
    return CriterionResult(1, "Bessel zeros: residuals, interlacing, Airy bounds", ok, summary,
                           [Table("zero_residuals", ["n", "max_scaled_residual"], rows)])


def criterion_2(cfg: RunConfig, n_hi: int = 500) -> CriterionResult:
    tol = cfg.tolerances["dtn_routes"]
    rows = []
    out_of_band = 0
    worst = 0.0
    for n in range(n_hi + 1):
        a, b = specfun.modified_ratio_routes(n)
        lam_a, lam_b = n + a, n + b
        # compare the fractional parts: the stricter test
        rel = abs(a - b) / a
        worst = max(worst, rel)
        out_of_band += not (n < lam_a < n + 0.5 and n < lam_b < n + 0.5)
        rows.append([n, a, b, rel])
    ok = out_of_band == 0 and worst <= tol
    return CriterionResult(2, "DtN eigenvalues in (n, n+1/2), two routes agree", ok,
                           f"band violations {out_of_band}, max route gap {worst:.2e}",
                           [Table("dtn_routes", ["n", "ratio_series", "ratio_continued_fraction", "rel_gap"], rows)])


def criterion_3(cfg: RunConfig, k_lo: int = 10, k_hi: int = 500) -> CriterionResult:
    seq = []
    n = 0
    while len(seq) < k_hi:
        lam = dtn_circle.dtn_eigenvalue(n)
        seq.extend([lam] if n == 0 else [lam, lam])
        n += 1
    k = np.arange(k_lo, k_hi + 1)
    vals = np.array(seq[k_lo - 1:k_hi])
    slope = float(np.polyfit(np.log(k), np.log(vals), 1)[0])
    lo, hi = cfg.tolerances["growth_slope_lo"], cfg.tolerances["growth_slope_hi"]
    return CriterionResult(3, "DtN growth exponent", lo <= slope <= hi, f"slope {slope:.4f}",
                           [Table("dtn_growth", ["k_lo", "k_hi", "slope"], [[k_lo, k_hi, slope]])])


def criterion_4(cfg: RunConfig, n_hi: int = 20, m_hi: int = 20) -> CriterionResult:
    betas = [10.0 ** e for e in range(7)]
    bracket = mono = cert = 0
    rows = []
    for n in range(n_hi + 1):
        for m in range(1, m_hi + 1):
            prev = None
            for b in betas:
                r = disc_spectrum.robin_eigenvalue(n, m, b)
                md = r.mode
                bracket += not md.neumann_k ** 2 < r.lam < md.dirichlet_k ** 2
                cert += r.residual > 1e-11 * (1.0 + b)
                if prev is not None:
                    mono += not r.lam > prev
                prev = r.lam
            rows.append([n, m, prev])
    ok = bracket == 0 and mono == 0 and cert == 0
    return CriterionResult(4, "Robin eigenvalues bracketed, monotone, certified", ok,
                           f"bracket {bracket}, monotonicity {mono}, residual {cert} violations",
                           [Table("robin_at_1e6", ["n", "m", "lambda"], rows)])


_EXPANSION_MODES = [(n, m) for n in range(4) for m in range(1, 4)]


def _fits(cfg: RunConfig):
    return [asymptotics.extract_coefficients(n, m, q_trunc=cfg.q_trunc) for n, m in _EXPANSION_MODES]


def criterion_5(cfg: RunConfig, fits=None) -> CriterionResult:
    fits = fits if fits is not None else _fits(cfg)
    tol = cfg.tolerances["c1_rel"]
    rows = [[f.n, f.m, f.c1, f.c1_predicted, abs(f.c1 / f.c1_predicted - 1.0)] for f in fits]
    worst = max(r[-1] for r in rows)
    return CriterionResult(5, "First-order coefficient -2k^2", worst <= tol,
                           f"max rel err {worst:.2e}",
                           [Table("first_order", ["n", "m", "c1", "minus_2k2", "rel_err"], rows)])


def criterion_6(cfg: RunConfig, fits=None) -> CriterionResult:
    fits = fits if fits is not None else _fits(cfg)
    tol = cfg.tolerances["c2_rel"]
    ftol = cfg.tolerances["alpha_flag_rel"]
    rows, flags = [], []
    for f in fits:
        err = abs(f.c2 / f.c2_oracle - 1.0)
        gap = abs(f.c2 - f.c2_predicted) / abs(f.c2)
        flag = asymptotics.DISCREPANCY_FLAG if gap > ftol else ""
        if flag:
            flags.append({"criterion": 6, "mode": [f.n, f.m], "flag": flag, "informational": True})
        rows.append([f.n, f.m, f.c2, f.c2_oracle, err, f.c2_predicted, gap, flag])
    worst = max(r[4] for r in rows)
    worst_gap = max(r[6] for r in rows)
    return CriterionResult(6, "Second-order coefficient vs 2k^2 (alpha informational)", worst <= tol,
                           f"max rel err {worst:.2e}; alpha gap {worst_gap:.2e} (informational)",
                           [Table("second_order", ["n", "m", "c2", "c2_oracle", "rel_err", "alpha",
                                                   "alpha_rel_gap", "flag"], rows)], flags)


def criterion_7(cfg: RunConfig, model=None) -> CriterionResult:
    model = model if model is not None else gap_model.build_model(cfg.n_max)
    grid = [b for b in cfg.beta_grid if 1e2 <= b <= 1e6]
    vals = [(b, gap_model.operator_norm_gap(model, b)) for b in grid]
    fit = gap_model.rate_fit(vals)
    sup = dtn_circle.boundedness_diagnostics(cfg.n_max, 1.0)
    at = 1e5 * gap_model.operator_norm_gap(model, 1e5)
    rel = abs(at / sup.sup - 1.0)
    ok = (abs(fit.exponent + 1.0) <= cfg.tolerances["opnorm_exponent"]
          and rel <= cfg.tolerances["opnorm_sup_rel"] and sup.global_bound == sup.sup)
    rows = [[b, v, b * v] for b, v in vals]
    return CriterionResult(7, "Operator-norm rate beta^-1 and limit sup w_n", ok,
                           f"exponent {fit.exponent:.4f}, r2 {fit.r_squared:.6f}, "
                           f"beta*norm(1e5)/sup - 1 = {at / sup.sup - 1.0:.2e}",
                           [Table("operator_norm", ["beta", "norm", "beta_norm"], rows),
                            Table("operator_norm_fit", ["exponent", "log_constant", "r_squared", "sup_w", "argmax"],
                                  [[fit.exponent, fit.log_constant, fit.r_squared, sup.sup, sup.argmax]])])


def criterion_8(cfg: RunConfig, model=None) -> CriterionResult:
    model = model if model is not None else gap_model.build_model(cfg.n_max)
    grid = gap_model.beta_grid(1e3, 1e7, 9)
    res = [(b,) + gap_model.schatten_norm_gap(model, b, 1.0) for b in grid]
    top = [r for r in res if r[0] >= 1e5 - 1e-6]
    # certified: upper bound at the later point below lower bound at the earlier
    dec = all(b1 ** 0.9 * (v1 + t1) < b0 ** 0.9 * v0
              for (b0, v0, _), (b1, v1, t1) in zip(top, top[1:]))
    lo3 = next(r for r in res if r[0] == 1e3)
    hi6 = next(r for r in res if abs(r[0] / 1e6 - 1.0) < 1e-12)
    growth = (1e6 * hi6[1]) / (1e3 * (lo3[1] + lo3[2])) - 1.0
    fit = gap_model.log_linear_fit([(b, b * v) for b, v, _ in res])
    ok = dec and growth >= cfg.tolerances["s1_growth"] and fit.r_squared > cfg.tolerances["s1_r_squared"]
    rows = [[b, v, t, b * v, b ** 0.9 * v] for b, v, t in res]
    return CriterionResult(8, "Trace-norm rate: beta^0.9 decay, log growth of beta*S1", ok,
                           f"decreasing {dec}, growth {growth:.3f}, log fit r2 {fit.r_squared:.6f}",
                           [Table("trace_norm", ["beta", "value", "tail_bound", "beta_value", "beta09_value"], rows),
                            Table("trace_norm_fit", ["slope", "intercept", "r_squared"],
                                  [[fit.slope, fit.intercept, fit.r_squared]])])


def criterion_9(cfg: RunConfig, model=None) -> CriterionResult:
    model = model if model is not None else gap_model.build_model(cfg.n_max)
    lam_top = float(model.lam[-1])
    betas = [b for b in cfg.beta_grid if b >= lam_top] or [10.0 * lam_top]
    lam_f = [Fraction(x) for x in model.lam.tolist()]
    w_f = [Fraction(x) for x in model.w.tolist()]
    viol = kp = 0
    rows = []
    for b in betas:
        bf = Fraction(b)
        for lam, w in zip(lam_f, w_f):
            lhs = abs(w / (bf + lam) - w / bf + w * lam / (bf * bf))
            viol += lhs > w * lam * lam / (bf * bf * bf)
        rep = gap_model.expansion_remainder(model, b)
        kp += not rep.bound_holds
        rows.append([b, rep.remainder, rep.argmax, rep.kprime_norm, rep.kprime_bound])
    ok = viol == 0 and kp == 0
    return CriterionResult(9, "Second-order remainder and K' bound", ok,
                           f"remainder violations {viol} over {len(betas)} beta values, K' violations {kp}",
                           [Table("remainder", ["beta", "sup_remainder", "argmax", "kprime_norm", "kprime_bound"], rows)])


def criterion_10(cfg: RunConfig) -> CriterionResult:
    grid = gap_model.beta_grid(1e2, 1e5, 7)
    lo, hi = cfg.tolerances["drift_slope_lo"], cfg.tolerances["drift_slope_hi"]
    rows, fits = [], []
    ok = True
    for n, m in [(0, 1), (1, 1), (2, 2)]:
        vals = [(b, asymptotics.projection_drift(n, m, b, cfg.q_trunc)) for b in grid]
        fit = gap_model.rate_fit(vals)
        ok &= lo <= fit.exponent <= hi and all(v >= 0 for _, v in vals)
        fits.append([n, m, fit.exponent, fit.r_squared])
        rows += [[n, m, b, v] for b, v in vals]
    return CriterionResult(10, "Projection drift decays like beta^-2", ok,
                           "slopes " + ", ".join(f"{f[2]:.4f}" for f in fits),
                           [Table("projection_drift", ["n", "m", "beta", "drift"], rows),
                            Table("projection_drift_fit", ["n", "m", "exponent", "r_squared"], fits)])


def criterion_11(cfg: RunConfig) -> CriterionResult:
    tol = cfg.tolerances["n_matrix_rel"]
    rows = []
    ok = True
    for n, m in _EXPANSION_MODES:
        try:
            rep = asymptotics.n_matrix_entry(n, m, cfg.q_trunc)
        except ConsistencyError as exc:
            ok = False
            rows.append([n, m, math.nan, math.nan, math.nan, str(exc)])
            continue
        t = asymptotics.alpha_summands(n, m, cfg.q_trunc)
        ref = math.fsum([t.rharm, t.same_space, t.cross_space])
        rel = abs(rep.truncated_entry - ref) / abs(ref)
        ok &= rel <= tol
        rows.append([n, m, rep.truncated_entry, ref, rel, ""])
    worst = max((r[4] for r in rows if not math.isnan(r[4])), default=math.nan)
    return CriterionResult(11, "N-matrix assembly equals alpha formula", ok,
                           f"max rel gap {worst:.2e}",
                           [Table("n_matrix", ["n", "m", "n_entry", "alpha_truncated", "rel_gap", "error"], rows)])


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 12)}


def run_criterion(cid: int, cfg: RunConfig, shared: dict | None = None) -> CriterionResult:
    shared = shared if shared is not None else {}
    if cid in (5, 6):
        return CRITERIA[cid](cfg, fits=shared.get("fits"))
    if cid in (7, 8, 9):
        return CRITERIA[cid](cfg, model=shared.get("model"))
    return CRITERIA[cid](cfg)


def run_criteria(cfg: RunConfig, ids=None, executor=None) -> list[CriterionResult]:
    """Run criteria ``ids`` (default 1..11) in index order.

    With an ``executor`` the criteria run concurrently; results are collected
    in index order so output does not depend on scheduling.
    """
    ids = sorted(ids) if ids is not None else list(range(1, 12))
    shared: dict = {}
    if any(i in ids for i in (7, 8, 9)):
        shared["model"] = gap_model.build_model(cfg.n_max)
    if any(i in ids for i in (5, 6)):
        shared["fits"] = _fits(cfg)
    if executor is None:
        return [run_criterion(i, cfg, shared) for i in ids]
    futures = [executor.submit(run_criterion, i, cfg, shared) for i in ids]
    return [f.result() for f in futures]
