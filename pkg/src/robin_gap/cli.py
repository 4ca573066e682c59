"""``robin-gap`` command line: zero tables, experiments and the acceptance run.

Exit codes: 0 success, 1 usage error, 2 invariant violation or failed criterion.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import nullcontext
from pathlib import Path

from . import __version__, acceptance, asymptotics, disc_spectrum, dtn_circle, gap_model, specfun
from .acceptance import Table
from .config import RunConfig
from .errors import (
    BracketError,
    ConsistencyError,
    DegenerateGridError,
    DomainError,
    InvariantError,
    TailCertificateError,
)

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# parsing helpers


def parse_int_range(text: str) -> list[int]:
    """``"3"``, ``"0..2"`` (inclusive) or ``"0,2,5"``."""
    try:
        if ".." in text:
            a, b = text.split("..")
            lo, hi = int(a), int(b)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad integer range {text!r}") from None


def parse_beta_grid(text: str) -> list[float]:
    """``lo:hi:points`` with logarithmic spacing."""
    try:
        lo, hi, pts = text.split(":")
        return gap_model.beta_grid(float(lo), float(hi), int(pts))
    except (ValueError, DegenerateGridError):
        raise UsageError(f"bad beta grid {text!r}; expected lo:hi:points") from None


def parse_p(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"bad p {text!r}") from None


def thread_cap() -> int:
    raw = os.environ.get("ROBIN_GAP_THREADS", "1")
    try:
        k = int(raw)
    except ValueError:
        k = 0
    if k < 1:
        raise UsageError(f"ROBIN_GAP_THREADS must be an integer >= 1, got {raw!r}")
    return k


# ---------------------------------------------------------------------------
# output


def _fmt(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return "%.17g" % v
    return v


def csv_text(table: Table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json_safe(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None if math.isnan(v) else ("inf" if v > 0 else "-inf")
    if isinstance(v, dict):
        return {k: _json_safe(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_safe(x) for x in v]
    return v


def report_dict(command: str, cfg: RunConfig, tables, flags, timing=None) -> dict:
    rep = {
        "meta": {"tool": "robin-gap", "version": __version__, "command": command},
        "config": cfg.to_dict(),
        "tables": [t.to_dict() for t in tables],
        "flags": list(flags),
    }
    if timing is not None:
        rep["timing"] = timing
    return _json_safe(rep)


def json_text(rep: dict) -> str:
    return json.dumps(rep, indent=2, allow_nan=False) + "\n"


def write_atomic(path: str | Path, text: str) -> None:
    """Write UTF-8 text via a temporary file and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(args, command: str, cfg: RunConfig, tables: list[Table], flags=(), timing=None) -> None:
    """Main table as CSV (``--out`` or stdout), full report as JSON (``--json``)."""
    text = csv_text(tables[0])
    if args.out and args.out != "-":
        write_atomic(args.out, text)
    elif not getattr(args, "quiet_csv", False):
        sys.stdout.write(text)
    if args.json:
        if args.timing:
            timing = dict(timing or {})
            timing["total"] = time.perf_counter() - getattr(args, "t_start", time.perf_counter())
        rep = report_dict(command, cfg, tables, flags, timing if args.timing else None)
        write_atomic(args.json, json_text(rep))


# ---------------------------------------------------------------------------
# commands


def cmd_zeros(args, cfg: RunConfig) -> int:
    kinds = ["dirichlet", "neumann"] if args.kind == "both" else [args.kind]
    ns = parse_int_range(args.n)
    ms = parse_int_range(args.m)
    rows = []
    for n in ns:
        for m in ms:
            for kind in kinds:
                z = specfun.find_zero(kind, n, m)
                rows.append([z.family.value, n, m, z.value, z.residual, z.bracket[0], z.bracket[1]])
        _validate_interlacing(n, max(ms))
    rows.sort(key=lambda r: (r[1], r[2], r[0]))
    emit(args, "zeros", cfg, [Table("zeros", ["family", "n", "m", "value", "residual",
                                              "bracket_lo", "bracket_hi"], rows)])
    return EXIT_OK


def _validate_interlacing(n: int, m_hi: int) -> None:
    chain = []
    for m in range(1, m_hi + 1):
        chain += [specfun.neumann_zero(n, m), specfun.dirichlet_zero(n, m)]
    if any(not a < b for a, b in zip(chain, chain[1:])):
        raise InvariantError(f"interlacing fails for order {n}")


def cmd_dtn(args, cfg: RunConfig) -> int:
    ns = parse_int_range(args.n if args.n is not None else "0..20")
    rows = []
    for n in ns:
        mode = dtn_circle.dtn_mode(n)
        g, tail = (dtn_circle.gamma_sq(n, args.trunc) if args.trunc else (math.nan, math.nan))
        rows.append([n, mode.multiplicity, mode.lambda_check, mode.gamma_sq, mode.weight, g, tail])
    emit(args, "dtn", cfg, [Table("dtn", ["n", "multiplicity", "lambda_check", "gamma_sq", "weight",
                                          "gamma_sq_series", "gamma_sq_tail_bound"], rows)])
    return EXIT_OK


def _betas(args, cfg: RunConfig) -> list[float]:
    if args.beta is not None:
        return [float(args.beta)]
    return list(cfg.beta_grid)


def cmd_robin_eig(args, cfg: RunConfig) -> int:
    ns = parse_int_range(args.n if args.n is not None else "0")
    ms = parse_int_range(args.m if args.m is not None else "1")
    jobs = [(n, m, b) for n in ns for m in ms for b in _betas(args, cfg)]
    with ThreadPoolExecutor(thread_cap()) as ex:
        res = list(ex.map(lambda j: disc_spectrum.robin_eigenvalue(*j), jobs))
    rows = [[r.mode.n, r.mode.m, r.beta, r.lam, r.s, r.residual,
             r.mode.neumann_eigenvalue, r.mode.dirichlet_eigenvalue] for r in res]
    emit(args, "robin-eig", cfg, [Table("robin_eigenvalues", ["n", "m", "beta", "lambda", "s", "residual",
                                                              "neumann_lambda", "dirichlet_lambda"], rows)])
    return EXIT_OK


def _model(args, cfg: RunConfig):
    return gap_model.build_model(args.trunc or cfg.n_max)


def cmd_gap_norms(args, cfg: RunConfig) -> int:
    model = _model(args, cfg)
    p = parse_p(args.p) if args.p is not None else 1.0
    rows = []
    for b in _betas(args, cfg):
        v, t = gap_model.schatten_norm_gap(model, b, p)
        rows.append([b, p, v, t, gap_model.operator_norm_gap(model, b)])
    dv, dt = gap_model.schatten_norm_dinf(model, p)
    tables = [Table("gap_norms", ["beta", "p", "value", "tail_bound", "operator_norm"], rows),
              Table("dinf_norm", ["p", "value", "tail_bound"], [[p, dv, dt]])]
    emit(args, "gap-norms", cfg, tables)
    return EXIT_OK


def cmd_rates(args, cfg: RunConfig) -> int:
    model = _model(args, cfg)
    p = parse_p(args.p) if args.p is not None else 1.0
    betas = _betas(args, cfg)
    rows = []
    for b in betas:
        op = gap_model.operator_norm_gap(model, b)
        v, t = gap_model.schatten_norm_gap(model, b, p)
        rows.append([b, op, v, t, b * op, b * v])
    fits = []
    for name, col in (("operator_norm", 1), (f"schatten_p{_fmt(p)}", 2)):
        f = gap_model.rate_fit([(r[0], r[col]) for r in rows])
        fits.append([name, f.exponent, f.log_constant, f.r_squared])
    lf = gap_model.log_linear_fit([(r[0], r[5]) for r in rows])
    fits.append([f"beta_schatten_p{_fmt(p)}_vs_log_beta", lf.slope, lf.intercept, lf.r_squared])
    tables = [Table("rates", ["beta", "operator_norm", "schatten_value", "schatten_tail_bound",
                              "beta_operator_norm", "beta_schatten"], rows),
              Table("rate_fits", ["quantity", "exponent_or_slope", "log_constant_or_intercept", "r_squared"], fits)]
    emit(args, "rates", cfg, tables)
    return EXIT_OK


def cmd_expansion(args, cfg: RunConfig) -> int:
    ns = parse_int_range(args.n if args.n is not None else "0")
    ms = parse_int_range(args.m if args.m is not None else "1")
    q = args.trunc or cfg.q_trunc
    rows, flags = [], []
    for n in ns:
        for m in ms:
            f = asymptotics.extract_coefficients(n, m, args.beta0, args.ratio, args.levels, q)
            a, atail = asymptotics.alpha_series(n, m, q)
            gap = abs(f.c2 - a) / abs(f.c2)
            flag = asymptotics.DISCREPANCY_FLAG if gap > cfg.tolerances["alpha_flag_rel"] else ""
            if flag:
                flags.append({"mode": [n, m], "flag": flag, "informational": True})
            rows.append([n, m, f.c0, f.c1, f.c2, f.c0_exact, f.c1_predicted, f.c2_oracle, a, atail,
                         gap, f.well_conditioned, flag])
    emit(args, "expansion", cfg, [Table("expansion", ["n", "m", "c0", "c1", "c2", "c0_exact", "c1_ref",
                                                      "c2_oracle", "alpha", "alpha_tail_bound",
                                                      "alpha_rel_gap", "well_conditioned", "flag"], rows)],
         flags)
    return EXIT_OK


def _verify_once(cfg: RunConfig, ids, threads: int):
    timing = {}
    t0 = time.perf_counter()
    ctx = ThreadPoolExecutor(threads) if threads > 1 else nullcontext(None)
    with ctx as ex:
        results = acceptance.run_criteria(cfg, ids, executor=ex)
    timing["criteria_total"] = time.perf_counter() - t0
    return results, timing


def _tables_bytes(results) -> bytes:
    tabs = [t.to_dict() for r in results for t in r.tables]
    return json.dumps(_json_safe(tabs), allow_nan=False).encode("utf-8")


def cmd_verify(args, cfg: RunConfig) -> int:
    ids = parse_int_range(args.criteria) if args.criteria else list(range(1, 12))
    if any(i not in acceptance.CRITERIA for i in ids):
        raise UsageError("criteria ids must lie in 1..11")
    threads = thread_cap()
    results, timing = _verify_once(cfg, ids, threads)
    lines = [r.line() for r in results]
    summary_rows = [[r.cid, r.title, r.status, r.summary] for r in results]
    if not args.skip_determinism:
        specfun.clear_caches()
        again, t2 = _verify_once(cfg, ids, threads)
        same = _tables_bytes(results) == _tables_bytes(again)
        timing["rerun_total"] = t2["criteria_total"]
        c12 = acceptance.CriterionResult(12, "Determinism: rerun gives byte-identical tables", same,
                                         "identical" if same else "tables differ")
        results = results + [c12]
        lines.append(c12.line())
        summary_rows.append([12, c12.title, c12.status, c12.summary])
    for line in lines:
        print(line)
    ok = all(r.passed for r in results)
    print("verify:", "all criteria passed" if ok else "FAILED")
    tables = [Table("criteria", ["id", "title", "status", "summary"], summary_rows)]
    tables += [t for r in results for t in r.tables]
    flags = [f for r in results for f in r.flags]
    args.quiet_csv = True
    emit(args, "verify", cfg, tables, flags, timing)
    return EXIT_OK if ok else EXIT_INVARIANT


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", help="CSV output path (default: stdout)")
    common.add_argument("--json", help="JSON report path")
    common.add_argument("--config", help="flat JSON config file; flags override it")
    common.add_argument("--print-config", action="store_true", help="print the effective config and exit")
    common.add_argument("--timing", action="store_true", help="add wall-clock timing to the JSON report")

    parser = _Parser(prog="robin-gap", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"robin-gap {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("zeros", parents=[common], help="table of Bessel zeros")
    p.add_argument("--kind", choices=["dirichlet", "neumann", "both"], default="dirichlet")
    p.add_argument("--n", default="0..2")
    p.add_argument("--m", default="1..3")
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.add_argument("--criteria", help="subset of criteria, e.g. 1..4")
    p.add_argument("--skip-determinism", action="store_true", help="skip the rerun comparison")
    p.set_defaults(func=cmd_verify)

    for name, func, hlp in (("rates", cmd_rates, "convergence rates of gap norms"),
                            ("gap-norms", cmd_gap_norms, "Schatten norms of the resolvent gap")):
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("--beta", type=float)
        p.add_argument("--beta-grid", type=parse_beta_grid)
        p.add_argument("--p", help="Schatten exponent (>= 1/2 or inf); default 1")
        p.add_argument("--trunc", type=int, help="largest angular order n_max")
        p.set_defaults(func=func)

    p = sub.add_parser("expansion", parents=[common], help="large-coupling eigenvalue coefficients")
    p.add_argument("--n")
    p.add_argument("--m")
    p.add_argument("--trunc", type=int, help="q_trunc for the alpha series")
    p.add_argument("--beta0", type=float, default=1.0e3)
    p.add_argument("--ratio", type=float, default=2.0)
    p.add_argument("--levels", type=int, default=5)
    p.set_defaults(func=cmd_expansion)

    p = sub.add_parser("dtn", parents=[common], help="Dirichlet-to-Neumann spectrum and weights")
    p.add_argument("--n")
    p.add_argument("--trunc", type=int, help="m_trunc for the theta-sum cross-check")
    p.set_defaults(func=cmd_dtn)

    p = sub.add_parser("robin-eig", parents=[common], help="exact Robin eigenvalues")
    p.add_argument("--n")
    p.add_argument("--m")
    p.add_argument("--beta", type=float)
    p.add_argument("--beta-grid", type=parse_beta_grid)
    p.set_defaults(func=cmd_robin_eig)
    return parser


def _config(args) -> RunConfig:
    cfg = RunConfig.from_file(args.config) if args.config else RunConfig().validate()
    grid = getattr(args, "beta_grid", None)
    if grid:
        cfg.beta_grid = grid
    return cfg.validate()


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        args.t_start = time.perf_counter()
        cfg = _config(args)
        if args.print_config:
            sys.stdout.write(json_text(cfg.to_dict()))
            return EXIT_OK
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"robin-gap: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, DegenerateGridError) as exc:
        print(f"robin-gap: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvariantError, ConsistencyError, TailCertificateError, BracketError) as exc:
        print(f"robin-gap: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
