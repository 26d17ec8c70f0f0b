"""``thetanull`` command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or schema error,
3 numerical failure. Mathematical answers (for example ``in_theta_null``)
only ever appear in the JSON body.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import jsonio
from .characteristics import Characteristic
from .engine import KERNEL, EvalConfig, eval_jet
from .engine.jet import MAX_ORDER
from .errors import ImagNotPositiveDefinite, NotOnSingularityScheme, NotSymmetric, ThetaNullError
from .gauss import bordered_hessian, check_bordered_identity, eta_scale
from .rank import DEFAULT_RANK_REL_TOL
from .sampling import divisor_point
from .siegel import PeriodMatrix, validate_period
from .sing import sing_S_jacobian, sing_S_rank_test, snull_jacobian, snull_rank
from .strata import DEFAULT_VANISH_TOL, classify_stratum
from .verify import SUITES, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _positive(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


def _common(p: argparse.ArgumentParser):
    p.add_argument("--tol", type=_positive, default=1e-12, help="target absolute truncation error")
    p.add_argument("--rank-tol", type=_positive, default=DEFAULT_RANK_REL_TOL,
                   help="relative singular-value threshold")
    p.add_argument("--vanish-tol", type=_positive, default=DEFAULT_VANISH_TOL,
                   help="relative threshold for a vanishing theta constant")
    p.add_argument("--max-radius", type=_positive, default=30.0, help="cap on the summation radius")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default="-", help="output path ('-' for stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="thetanull", description="Theta constants, theta-null strata and Gauss maps.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate a theta jet")
    p.add_argument("period", help="period matrix JSON (path, inline, or '-')")
    p.add_argument("--char", default=None, help="characteristic such as 11:01 (default zero)")
    p.add_argument("--z", default=None, help="point, e.g. '0.1+0.2j,0' (default origin)")
    p.add_argument("--order", type=int, default=0)
    _common(p)

    p = sub.add_parser("classify", help="locate tau in the theta-null strata")
    p.add_argument("period")
    _common(p)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("suite")
    p.add_argument("--samples", type=int, default=20)
    _common(p)

    p = sub.add_parser("scan", help="sample along a line or a complex grid")
    p.add_argument("mode", choices=["line", "grid"])
    p.add_argument("period")
    p.add_argument("--direction", required=True, help="symmetric matrix JSON {re, im} or nested list")
    p.add_argument("--char", default=None, help="characteristic used for --eta")
    p.add_argument("--span", type=_positive, default=0.1)
    p.add_argument("--samples", type=int, default=11, help="points per axis")
    p.add_argument("--eta", default=None, help="start point projected to the divisor for eta")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (output order is fixed)")
    _common(p)

    p = sub.add_parser("sing", help="Jacobians of the singularity schemes")
    p.add_argument("period")
    p.add_argument("--char", default=None)
    p.add_argument("--z", default=None, help="point for the S test (zero characteristic chart)")
    p.add_argument("--which", choices=["s", "snull", "both"], default="both")
    _common(p)
    return parser


def _config(args) -> EvalConfig:
    order = getattr(args, "order", 0)
    if order < 0 or order > MAX_ORDER:
        raise UsageError(f"order must lie in 0..{MAX_ORDER}, got {order}")
    return EvalConfig(target_abs_error=args.tol, max_radius=args.max_radius)


def _period(arg: str) -> PeriodMatrix:
    try:
        obj = jsonio.read_json_arg(arg)
        return PeriodMatrix.from_json(obj)
    except (ValueError, KeyError, TypeError, NotSymmetric, ImagNotPositiveDefinite, OSError) as exc:
        raise UsageError(f"invalid period matrix: {exc}") from exc


def _char(text: str | None, g: int) -> Characteristic:
    if text is None:
        return Characteristic.zero(g)
    try:
        ch = Characteristic.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if ch.g != g:
        raise UsageError(f"characteristic {text} has genus {ch.g}, period matrix has genus {g}")
    return ch


def _point(text: str | None, g: int):
    if text is None:
        return None
    try:
        z = jsonio.parse_complex_vector(text)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"invalid point: {exc}") from exc
    if z.shape != (g,):
        raise UsageError(f"point must have {g} coordinates")
    return z


def _direction(text: str, g: int) -> np.ndarray:
    try:
        obj = jsonio.read_json_arg(text)
        E = jsonio.parse_complex_matrix(obj) if isinstance(obj, dict) else np.asarray(obj, dtype=float)
    except (ValueError, KeyError, TypeError, OSError) as exc:
        raise UsageError(f"invalid direction: {exc}") from exc
    if E.shape != (g, g):
        raise UsageError(f"direction must be {g}x{g}")
    if np.max(np.abs(E - E.T)) > 1e-12 * max(1.0, float(np.max(np.abs(E)))):
        raise UsageError("direction matrix is not symmetric")
    return E.astype(complex)


def _meta(cfg: EvalConfig, args) -> dict:
    return {"kernel": KERNEL, "tol": cfg.target_abs_error, "max_radius": cfg.max_radius,
            "rank_tol": args.rank_tol, "vanish_tol": args.vanish_tol, "seed": args.seed}


def cmd_eval(args) -> tuple[int, object]:
    cfg = _config(args)
    tau = _period(args.period)
    ch = _char(args.char, tau.g)
    z = _point(args.z, tau.g)
    jet = eval_jet(tau, z, ch, args.order, cfg)
    return EXIT_OK, {"command": "eval", "config": _meta(cfg, args), "tau": tau, "jet": jet}


def cmd_classify(args) -> tuple[int, object]:
    cfg = _config(args)
    tau = _period(args.period)
    cls = classify_stratum(tau, cfg, args.vanish_tol, args.rank_tol)
    return EXIT_OK, {"command": "classify", "config": _meta(cfg, args), "tau": tau,
                     "classification": cls}


def cmd_verify(args) -> tuple[int, object]:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    cfg = _config(args)
    report = run_suite(args.suite, args.samples, args.seed, cfg)
    return (EXIT_OK if report["passed"] else EXIT_VERIFY), report


def cmd_sing(args) -> tuple[int, object]:
    cfg = _config(args)
    tau = _period(args.period)
    if args.char is None and args.z is None:
        raise UsageError("sing needs --char or --z")
    ch = _char(args.char, tau.g) if args.char is not None else None
    z = _point(args.z, tau.g)
    out = {"command": "sing", "config": _meta(cfg, args), "tau": tau}
    if args.which in ("s", "both"):
        jac = sing_S_jacobian(tau, z, cfg, ch)
        rep, in_sing = sing_S_rank_test(tau, z, cfg, ch, rank_rel_tol=args.rank_tol)
        out["S"] = {"jacobian": jac, "rank_report": rep, "in_sing_S": in_sing}
    if args.which in ("snull", "both"):
        if ch is None:
            raise UsageError("--which snull needs --char")
        if not ch.is_even:
            raise UsageError("S_null is defined by even characteristics")
        out["S_null"] = {"jacobian": snull_jacobian(tau, ch, cfg),
                         "rank_report": snull_rank(tau, ch, cfg, args.rank_tol)}
    return EXIT_OK, out


def _scan_points(args, tau: PeriodMatrix, E: np.ndarray) -> list[complex]:
    n = args.samples
    if n < 1:
        raise UsageError("--samples must be at least 1")
    axis = np.linspace(-args.span, args.span, n) if n > 1 else np.zeros(1)
    if args.mode == "line":
        return [complex(s) for s in axis]
    return [complex(a, b) for b in axis for a in axis]


def _scan_record(job) -> dict:
    index, s, tau_raw, E, ch, x0, cfg, vanish_tol, rank_tol = job
    tau = validate_period(tau_raw + s * E)
    cls = classify_stratum(tau, cfg, vanish_tol, rank_tol)
    rec = {"index": index, "s": s, "tau": tau,
           "constants_abs": {str(c): abs(v) for c, v in cls.constants},
           "vanishing": [str(c) for c, _ in cls.vanishing],
           "in_theta_null": cls.in_theta_null, "min_h": cls.min_h}
    if x0 is not None:
        x = divisor_point(tau, x0, ch=ch, cfg=cfg)
        bh = bordered_hessian(tau, x, ch, cfg)
        _, e = check_bordered_identity(bh.H, bh.dF)
        rec["eta"] = {"point": x, "value": e, "scale": eta_scale(bh.H, bh.dF)}
    return rec


def cmd_scan(args, out) -> int:
    cfg = _config(args)
    tau = _period(args.period)
    E = _direction(args.direction, tau.g)
    ch = _char(args.char, tau.g)
    x0 = _point(args.eta, tau.g)
    jobs = [(i, s, tau.tau, E, ch, x0, cfg, args.vanish_tol, args.rank_tol)
            for i, s in enumerate(_scan_points(args, tau, E))]
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")

    def emit(results):
        index = 0
        try:
            for rec in results:
                out.write(jsonio.dumps(rec, indent=None) + "\n")
                out.flush()
                index += 1
        except (ThetaNullError, FloatingPointError, np.linalg.LinAlgError) as exc:
            fail = {"index": index, "s": jobs[index][1], "error": type(exc).__name__, "message": str(exc)}
            out.write(jsonio.dumps(fail, indent=None) + "\n")
            out.flush()
            print(f"thetanull: {type(exc).__name__}: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        return EXIT_OK

    if args.jobs == 1:
        return emit(map(_scan_record, jobs))
    with ProcessPoolExecutor(max_workers=args.jobs) as pool:
        return emit(pool.map(_scan_record, jobs))


def _open_output(path: str):
    return sys.stdout if path == "-" else open(path, "w", encoding="utf-8")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"thetanull: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    handlers = {"eval": cmd_eval, "classify": cmd_classify, "verify": cmd_verify, "sing": cmd_sing}
    out = None
    try:
        out = _open_output(args.output)
        if args.command == "scan":
            return cmd_scan(args, out)
        code, body = handlers[args.command](args)
        out.write(jsonio.dumps(body) + "\n")
        return code
    except UsageError as exc:
        print(f"thetanull: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotOnSingularityScheme as exc:
        print(f"thetanull: NotOnSingularityScheme: {exc}", file=sys.stderr)
        print(jsonio.dumps({"error": "NotOnSingularityScheme", "residuals": exc.residuals}), file=sys.stderr)
        return EXIT_NUMERIC
    except (ThetaNullError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"thetanull: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"thetanull: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if out is not None and out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
