"""Command line front end.

Subcommands:

* solve     evaluate a truncated series solution on a time grid
* coeffs    dump normalized and raw coefficient magnitudes
* radius    root-test estimates of the convergence radius
* validate  compare the series against an independent oracle
* figures   regenerate the bundled figure panels as CSV (and SVG)

All tabular output is CSV with shortest round-trip float formatting, LF
line endings, written atomically (temp file + rename) when a path is given
and to stdout for "-".  Exit codes: 0 success, 1 a validation or numerical
failure, 2 usage errors.
"""

from __future__ import annotations

import argparse
import ast
import math
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .coeffs import (
    ProblemSpec,
    closed_coeff1,
    closed_coeff2,
    closed_coeff3,
    closed_power_coeff1,
    closed_power_coeff2,
    compute_coefficients,
    raw_coefficient,
)
from .oracles import (
    BlowUpError,
    DivergenceError,
    abm_solve,
    build_validation_report,
    evaluate_highprec,
    exact_beta1_bernoulli,
    highprec_coefficients,
)
from .radius import radius_sequence
from .series import evaluate_grid, safe_t_max, solution_from_table
from .svgplot import line_plot_svg

TRUNCATION_TOL = 1e-10  # default tail-size target picking t_max for a grid

_ALLOWED_NAMES = {"pi": math.pi, "e": math.e}
_ALLOWED_FUNCS = {"sqrt": math.sqrt, "exp": math.exp, "log": math.log}
_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
    ast.Pow: lambda a, b: a**b,
}


def _eval_expr(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_expr(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_expr(node.left), _eval_expr(node.right))
    if isinstance(node, ast.Name) and node.id in _ALLOWED_NAMES:
        return _ALLOWED_NAMES[node.id]
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id in _ALLOWED_FUNCS
        and len(node.args) == 1
        and not node.keywords
    ):
        return _ALLOWED_FUNCS[node.func.id](_eval_expr(node.args[0]))
    raise ValueError("unsupported expression")


def parse_number(text: str) -> float:
    """Parse a numeric CLI argument, allowing expressions like sqrt(1/3).

    Only literals, + - * / **, unary sign, pi, e, and sqrt/exp/log calls
    are accepted; anything else is a usage error.
    """
    try:
        return float(_eval_expr(ast.parse(text, mode="eval").body))
    except (SyntaxError, ValueError, ZeroDivisionError, OverflowError) as exc:
        raise argparse.ArgumentTypeError(f"cannot parse number {text!r}: {exc}")


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def fmt(x: float) -> str:
    """Shortest decimal string that round-trips to the same float.

    Integer-valued floats drop the trailing ".0" (grid origins print as
    plain "0"); parsing the result back still recovers the exact value.
    """
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(out: str, text: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        _atomic_write(out, text)


def thread_cap() -> int:
    """Worker cap for figure regeneration, from FRAC_BERNOULLI_THREADS."""
    raw = os.environ.get("FRAC_BERNOULLI_THREADS", "").strip()
    if raw:
        try:
            v = int(raw)
        except ValueError:
            raise ValueError(
                f"FRAC_BERNOULLI_THREADS must be a positive integer, got {raw!r}"
            )
        if v < 1:
            raise ValueError(
                f"FRAC_BERNOULLI_THREADS must be a positive integer, got {raw!r}"
            )
        return v
    return min(os.cpu_count() or 1, 4)


def _spec_from_args(args) -> ProblemSpec:
    return ProblemSpec(beta=args.beta, a0=args.a0, a1=args.a1, p=args.p, u0=args.u0)


def _grid(args, sol) -> np.ndarray:
    t_max = args.t_max
    if t_max is None:
        t_max = safe_t_max(sol, TRUNCATION_TOL)
        if not math.isfinite(t_max):
            t_max = 1.0  # constant series: any horizon works, pick something
    if t_max <= 0.0:
        raise ValueError(f"t-max must be positive, got {t_max!r}")
    return np.linspace(0.0, t_max, args.samples)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_solve(args) -> int:
    spec = _spec_from_args(args)
    table = compute_coefficients(spec, args.n_terms)
    sol = solution_from_table(table)
    t = _grid(args, sol)
    u = evaluate_grid(sol, t)
    lines = ["t,u"]
    lines.extend(f"{fmt(a)},{fmt(b)}" for a, b in zip(t, u))
    _emit(args.out, "\n".join(lines) + "\n")
    if args.svg:
        svg = line_plot_svg("series solution", "t", "u", [("u(t)", t, u)])
        _atomic_write(args.svg, svg)
    return 0


def _cmd_coeffs(args) -> int:
    spec = _spec_from_args(args)
    table = compute_coefficients(spec, args.n_terms)
    lines = ["n,d_n,sign,log10_abs_c_n"]
    for n in range(table.n_valid):
        lm = raw_coefficient(table, 1, n)
        lines.append(f"{n},{fmt(table.d[0][n])},{lm.sign},{fmt(lm.log10_abs)}")
    _emit(args.out, "\n".join(lines) + "\n")
    if table.overflow_at is not None:
        print(
            f"note: coefficients overflowed at index {table.overflow_at}; "
            f"output covers the finite prefix",
            file=sys.stderr,
        )
    return 0


def _cmd_radius(args) -> int:
    spec = _spec_from_args(args)
    table = compute_coefficients(spec, args.n_terms)
    seq = radius_sequence(table, args.n_terms)
    lines = ["n,r_n"]
    lines.extend(f"{n},{fmt(r)}" for n, r in seq.entries)
    lines.append(f"tail_summary,{fmt(seq.tail_summary)}")
    _emit(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_validate(args) -> int:
    spec = _spec_from_args(args)
    table = compute_coefficients(spec, args.n_terms)
    sol = solution_from_table(table)

    if args.oracle == "closed":
        pairs = [
            ("c_1", raw_coefficient(table, 1, 1).to_real(), closed_coeff1(spec)),
            ("c_2", raw_coefficient(table, 1, 2).to_real(), closed_coeff2(spec)),
            ("c_3", raw_coefficient(table, 1, 3).to_real(), closed_coeff3(spec)),
        ]
        for h in range(2, spec.p + 2):
            pairs.append(
                (f"c_1^({h})", raw_coefficient(table, h, 1).to_real(),
                 closed_power_coeff1(spec, h))
            )
            pairs.append(
                (f"c_2^({h})", raw_coefficient(table, h, 2).to_real(),
                 closed_power_coeff2(spec, h))
            )
        tol_rel = 1e-10 if args.tol is None else args.tol
        lines = ["name,engine,closed,abs_err"]
        ok = True
        worst = 0.0
        for name, got, want in pairs:
            err = abs(got - want)
            worst = max(worst, err)
            if err > tol_rel * abs(want) + 1e-12:
                ok = False
            lines.append(f"{name},{fmt(got)},{fmt(want)},{fmt(err)}")
        _emit(args.out, "\n".join(lines) + "\n")
        verdict = "PASS" if ok else "FAIL"
        print(
            f"validate closed: {verdict} (worst abs err {worst:.3e}, "
            f"rel tol {tol_rel:.1e})",
            file=sys.stderr,
        )
        return 0 if ok else 1

    t = _grid(args, sol)
    series_vals = evaluate_grid(sol, t)

    if args.oracle == "beta1":
        if spec.beta != 1.0:
            raise ValueError("oracle 'beta1' needs --beta 1")
        oracle_vals = np.array([exact_beta1_bernoulli(spec, tv) for tv in t])
        tol = 1e-8 if args.tol is None else args.tol
        report = build_validation_report("beta1", t, series_vals, oracle_vals)
        ok = report.max_abs_err <= tol
    elif args.oracle == "abm":
        sol_abm = abm_solve(spec, float(t[-1]), args.steps)
        idx = np.unique(np.round(np.linspace(0, args.steps, len(t))).astype(int))
        t = sol_abm.t[idx]
        series_vals = evaluate_grid(sol, t)
        oracle_vals = sol_abm.u[idx]
        tol = 1e-3 if args.tol is None else args.tol
        report = build_validation_report("abm", t, series_vals, oracle_vals)
        ok = report.max_abs_err <= tol
    else:  # highprec
        hp = highprec_coefficients(spec, min(args.n_terms, 400), digits=args.digits)
        oracle_vals = np.array([evaluate_highprec(hp, tv) for tv in t])
        tol = 1e-9 if args.tol is None else args.tol
        report = build_validation_report("highprec", t, series_vals, oracle_vals)
        ok = all(
            abs(s - o) <= tol * (1.0 + abs(o))
            for _, s, o in report.per_point
        )

    lines = ["t,series,oracle,abs_err"]
    lines.extend(
        f"{fmt(tv)},{fmt(sv)},{fmt(ov)},{fmt(abs(sv - ov))}"
        for tv, sv, ov in report.per_point
    )
    _emit(args.out, "\n".join(lines) + "\n")
    verdict = "PASS" if ok else "FAIL"
    print(
        f"validate {report.oracle_name}: {verdict} "
        f"(max_abs_err {report.max_abs_err:.3e}, tol {tol:.1e})",
        file=sys.stderr,
    )
    return 0 if ok else 1


# Figure panels: each is a list of (label, ProblemSpec) curves sharing one
# axis sweep, matching the CSV bundles the package regenerates.
_U0_SWEEP = (("u0=1/2", 0.5), ("u0=1/3", 1 / 3), ("u0=1/4", 0.25), ("u0=1/5", 0.2))
_BETA_SWEEP = (("beta=1", 1.0), ("beta=1/2", 0.5), ("beta=1/3", 1 / 3), ("beta=1/4", 0.25))
_P_SWEEP = (("p=1", 1), ("p=2", 2), ("p=3", 3))

SOLUTION_T_MAX = 0.8
RADIUS_TERMS = 300
SOLUTION_TERMS = 200


def _panel(name: str):
    def curves_u0(a):
        return [
            (lbl, ProblemSpec(beta=0.5, a0=a, a1=a, p=1, u0=v)) for lbl, v in _U0_SWEEP
        ]

    def curves_p(a):
        return [
            (lbl, ProblemSpec(beta=0.5, a0=a, a1=a, p=v, u0=0.5)) for lbl, v in _P_SWEEP
        ]

    def curves_beta(a):
        return [
            (lbl, ProblemSpec(beta=v, a0=a, a1=a, p=1, u0=0.5)) for lbl, v in _BETA_SWEEP
        ]

    def curves_combo(a):
        out = []
        for plbl, pv in (("p=1", 1), ("p=2", 2)):
            for ulbl, uv in _U0_SWEEP:
                out.append((f"{plbl} {ulbl}", ProblemSpec(beta=0.5, a0=a, a1=a, p=pv, u0=uv)))
        return out

    def curves_radius_p(a):
        return [
            (lbl, ProblemSpec(beta=0.5, a0=a, a1=a, p=v, u0=1 / 3)) for lbl, v in _P_SWEEP
        ]

    def curves_radius_beta(a):
        return [
            (lbl, ProblemSpec(beta=v, a0=a, a1=a, p=1, u0=1 / 3)) for lbl, v in _BETA_SWEEP
        ]

    table = {
        "f1-left": ("solution", curves_u0(-1.0)),
        "f1-right": ("solution", curves_p(-1.0)),
        "f2-left": ("solution", curves_beta(-1.0)),
        "f2-right": ("solution", curves_beta(1.0)),
        "f3-left": ("solution", curves_u0(-1.0)),
        "f3-right": ("solution", curves_u0(1.0)),
        "f4-left": ("solution", curves_p(-1.0)),
        "f4-right": ("solution", curves_p(1.0)),
        "f5-left": ("solution", curves_combo(1.0)),
        "f5-right": ("solution", curves_combo(-1.0)),
        "f6-left": ("radius", curves_radius_p(-1.0)),
        "f6-right": ("radius", curves_radius_p(1.0)),
        "f7-left": ("radius", curves_radius_beta(-1.0)),
        "f7-right": ("radius", curves_radius_beta(1.0)),
    }
    return table[name]


PANEL_NAMES = (
    "f1-left", "f1-right", "f2-left", "f2-right", "f3-left", "f3-right",
    "f4-left", "f4-right", "f5-left", "f5-right", "f6-left", "f6-right",
    "f7-left", "f7-right",
)


def _solution_table(title: str, curves, t: np.ndarray, n_terms: int):
    """CSV + SVG for a family of solution curves on a shared time grid."""
    cols = []
    for label, spec in curves:
        table = compute_coefficients(spec, n_terms)
        cols.append((label, evaluate_grid(solution_from_table(table), t)))
    lines = ["t," + ",".join(label for label, _ in cols)]
    for i, tv in enumerate(t):
        lines.append(fmt(tv) + "," + ",".join(fmt(c[i]) for _, c in cols))
    svg = line_plot_svg(title, "t", "u", [(lbl, t, c) for lbl, c in cols])
    return "\n".join(lines) + "\n", svg


def _render_panel(name: str, samples: int):
    """Compute one panel; returns (csv_text, svg_text)."""
    kind, curves = _panel(name)
    if kind == "solution":
        t = np.linspace(0.0, SOLUTION_T_MAX, samples)
        return _solution_table(name, curves, t, SOLUTION_TERMS)
    else:
        seqs = []
        for label, spec in curves:
            table = compute_coefficients(spec, RADIUS_TERMS)
            seqs.append((label, radius_sequence(table, RADIUS_TERMS)))
        by_n = [dict(seq.entries) for _, seq in seqs]
        lines = ["n," + ",".join(label for label, _ in seqs)]
        for n in range(1, RADIUS_TERMS + 1):
            cells = [fmt(m[n]) if n in m else "" for m in by_n]
            lines.append(f"{n}," + ",".join(cells))
        lines.append(
            "tail_summary," + ",".join(fmt(seq.tail_summary) for _, seq in seqs)
        )
        series = []
        for (label, seq) in seqs:
            xs = [float(n) for n, _ in seq.entries]
            ys = [r for _, r in seq.entries]
            series.append((label, xs, ys))
        svg = line_plot_svg(name, "n", "r_n", series)
    return "\n".join(lines) + "\n", svg


def _custom_sweep_curves(args):
    """Cartesian product of the --betas/--u0s/--ps lists around the base spec.

    Unswept fields come from the scalar --beta/--a0/--a1/--p/--u0 flags;
    labels name only the swept fields so columns stay readable.
    """
    betas = args.betas if args.betas else [args.beta]
    ps = args.ps if args.ps else [args.p]
    u0s = args.u0s if args.u0s else [args.u0]
    curves = []
    for b in betas:
        for pv in ps:
            for uv in u0s:
                parts = []
                if args.betas:
                    parts.append(f"beta={fmt(b)}")
                if args.ps:
                    parts.append(f"p={pv}")
                if args.u0s:
                    parts.append(f"u0={fmt(uv)}")
                spec = ProblemSpec(beta=b, a0=args.a0, a1=args.a1, p=pv, u0=uv)
                curves.append((" ".join(parts), spec))
    return curves


def _cmd_figures(args) -> int:
    os.makedirs(args.out_dir, exist_ok=True)
    if args.betas or args.u0s or args.ps:
        if args.panel is not None:
            raise ValueError("--panel cannot be combined with --betas/--u0s/--ps")
        t_max = SOLUTION_T_MAX if args.t_max is None else args.t_max
        if t_max <= 0.0:
            raise ValueError(f"t-max must be positive, got {t_max!r}")
        t = np.linspace(0.0, t_max, args.samples)
        csv_text, svg_text = _solution_table(
            "custom sweep", _custom_sweep_curves(args), t, args.n_terms
        )
        _atomic_write(os.path.join(args.out_dir, "custom.csv"), csv_text)
        if args.svg:
            _atomic_write(os.path.join(args.out_dir, "custom.svg"), svg_text)
        return 0
    names = PANEL_NAMES if args.panel in (None, "all") else (args.panel,)
    with ThreadPoolExecutor(max_workers=thread_cap()) as pool:
        rendered = list(pool.map(lambda nm: _render_panel(nm, args.samples), names))
    for nm, (csv_text, svg_text) in zip(names, rendered):
        _atomic_write(os.path.join(args.out_dir, f"{nm}.csv"), csv_text)
        if args.svg:
            _atomic_write(os.path.join(args.out_dir, f"{nm}.svg"), svg_text)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracbern",
        description="Series solutions of Caputo fractional Bernoulli equations.",
    )
    from . import __version__

    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    spec_args = argparse.ArgumentParser(add_help=False)
    spec_args.add_argument(
        "--beta", type=parse_number, default=0.5,
        help="fractional order in (0, 1]; expressions like 1/3 work (default 1/2)",
    )
    spec_args.add_argument("--a0", type=parse_number, default=-1.0,
                           help="linear coefficient (default -1)")
    spec_args.add_argument("--a1", type=parse_number, default=-1.0,
                           help="nonlinear coefficient (default -1)")
    spec_args.add_argument("--p", type=_positive_int, default=1,
                           help="nonlinearity degree p >= 1 (default 1)")
    spec_args.add_argument("--u0", type=parse_number, default=0.5,
                           help="initial value, e.g. 1/3 or sqrt(1/3) (default 1/2)")

    out_args = argparse.ArgumentParser(add_help=False)
    out_args.add_argument("--out", default="-",
                          help="output CSV path, or - for stdout (default -)")

    grid_args = argparse.ArgumentParser(add_help=False)
    grid_args.add_argument(
        "--t-max", type=parse_number, default=None,
        help="grid end; default keeps the truncation tail below 1e-10",
    )
    grid_args.add_argument("--samples", type=_positive_int, default=500,
                           help="grid points (default 500)")

    ps = sub.add_parser("solve", parents=[spec_args, grid_args, out_args],
                        help="evaluate the series solution on a grid")
    ps.add_argument("--n-terms", type=_positive_int, default=200,
                    help="truncation order (default 200)")
    ps.add_argument("--svg", default=None, help="also write a plot to this path")
    ps.set_defaults(func=_cmd_solve)

    pc = sub.add_parser("coeffs", parents=[spec_args, out_args],
                        help="dump series coefficients")
    pc.add_argument("--n-terms", type=_positive_int, default=200,
                    help="highest coefficient index (default 200)")
    pc.set_defaults(func=_cmd_coeffs)

    pr = sub.add_parser("radius", parents=[spec_args, out_args],
                        help="convergence radius estimates")
    pr.add_argument("--n-terms", type=_positive_int, default=300,
                    help="number of radius terms (default 300)")
    pr.set_defaults(func=_cmd_radius)

    pv = sub.add_parser("validate", parents=[spec_args, grid_args, out_args],
                        help="compare the series against an oracle")
    pv.add_argument("--oracle", choices=("beta1", "abm", "highprec", "closed"),
                    required=True)
    pv.add_argument("--n-terms", type=_positive_int, default=200)
    pv.add_argument("--steps", type=_positive_int, default=8192,
                    help="time steps for the abm oracle (default 8192)")
    pv.add_argument("--digits", type=_positive_int, default=30,
                    help="working digits for the highprec oracle (default 30)")
    pv.add_argument("--tol", type=parse_number, default=None,
                    help="override the per-oracle default tolerance")
    pv.set_defaults(func=_cmd_validate)

    pf = sub.add_parser("figures", parents=[spec_args, grid_args],
                        help="regenerate figure panel CSVs or a custom sweep")
    pf.add_argument("--panel", choices=PANEL_NAMES + ("all",), default=None,
                    help="bundled panel name (default: all panels)")
    pf.add_argument("--betas", type=parse_number, nargs="+", default=None,
                    help="sweep these fractional orders instead of a panel")
    pf.add_argument("--u0s", type=parse_number, nargs="+", default=None,
                    help="sweep these initial values instead of a panel")
    pf.add_argument("--ps", type=_positive_int, nargs="+", default=None,
                    help="sweep these nonlinearity degrees instead of a panel")
    pf.add_argument("--n-terms", type=_positive_int, default=200,
                    help="truncation order for custom sweeps (default 200)")
    pf.add_argument("--out-dir", default="figures",
                    help="directory for the CSV/SVG files (default figures/)")
    pf.add_argument("--svg", action="store_true", help="also write SVG plots")
    pf.set_defaults(func=_cmd_figures)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BlowUpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
