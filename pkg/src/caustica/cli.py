"""Command-line front end.

Every subcommand reads one input file (or ``-`` for stdin), writes its main
artifact to ``--out`` (stdout when omitted) and exits with 0 on a conclusive
answer, 2 on an inconclusive one and 1 on any error. Errors are reported as a
single line ``error: <kind>: <detail>`` on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .jetcore import DEFAULT_ORDER, PolyGerm
from . import lagsurface, oddclass, planecurve

COMMANDS = ("classify-germ", "classify-curve-point", "classify-surface-point",
            "trace-onshell", "scan-chords", "versal-check", "realize")

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


class CliError(Exception):
    def __init__(self, kind: str, detail: str):
        super().__init__(f"{kind}: {detail}")
        self.kind = kind
        self.detail = detail


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str
    output_path: str | None = None
    order: int | None = None
    epsilon: float = 1e-9
    grid: int = 2048
    angle_tol: float = 1e-3
    mode: str | None = None
    point: tuple | None = None
    q_range: tuple | None = None
    beta_max: float | None = None
    resolution: int | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise CliError("config", f"unknown command {self.command!r}")
        if self.order is not None and (self.order < 7 or self.order % 2 == 0):
            raise CliError("config", f"--order must be odd and >= 7, got {self.order}")
        if not self.epsilon > 0:
            raise CliError("config", f"--epsilon must be > 0, got {self.epsilon}")
        if self.grid < 16:
            raise CliError("config", f"--grid must be >= 16, got {self.grid}")
        if not self.angle_tol > 0:
            raise CliError("config", f"--angle-tol must be > 0, got {self.angle_tol}")
        if self.mode not in (None, "exact", "float"):
            raise CliError("config", f"--mode must be exact or float, got {self.mode!r}")
        if self.resolution is not None and self.resolution < 2:
            raise CliError("config", "--resolution must be >= 2")
        if self.beta_max is not None and not self.beta_max > 0:
            raise CliError("config", "--beta-max must be > 0")


# -- io helpers ---------------------------------------------------------------------

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError("io", f"cannot read {path}: {exc.strerror}") from None


def _load_json(path: str):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError("malformed-json", f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _germ_from(data, cfg: RunConfig, what: str = "germ") -> PolyGerm:
    if not isinstance(data, dict):
        raise CliError("malformed-germ", f"{what} must be a JSON object")
    try:
        g = PolyGerm.from_dict(data, default_order=DEFAULT_ORDER)
    except (ValueError, TypeError, KeyError) as exc:
        raise CliError("malformed-germ", f"{what}: {exc}") from None
    if cfg.order is not None:
        g = g.with_order(cfg.order)
    if cfg.mode == "exact":
        g = g.to_exact()
    elif cfg.mode == "float":
        g = g.to_float()
    return g


def _load_germ(cfg: RunConfig) -> PolyGerm:
    return _germ_from(_load_json(cfg.input_path), cfg)


def _plain(obj):
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "item") and callable(obj.item):
        return obj.item()
    return obj


def _dumps(obj) -> str:
    return json.dumps(_plain(obj), sort_keys=True, indent=2)


def _emit(cfg: RunConfig, text: str):
    if cfg.output_path:
        Path(cfg.output_path).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_report(cfg: RunConfig, report: dict):
    _emit(cfg, _dumps(report) + "\n")


# -- commands -------------------------------------------------------------------------

def cmd_classify_germ(cfg: RunConfig) -> int:
    f = _load_germ(cfg)
    if f.num_vars >= 3:
        m = f.num_vars
        msg = (f"NONSIMPLE-GATE: odd cubic jets in {m} variables span "
               f"{(m + 2) * (m + 1) * m // 6} dimensions, more than dim GL({m}) = {m * m}; "
               "no singular odd germ is simple")
        _emit_report(cfg, {"label": "NONSIMPLE", "codim": None, "determinacy": None,
                           "diagnostics": {"gate": True, "message": msg}})
        return EXIT_OK
    if not oddclass.is_odd(f):
        raise CliError("not-odd", "germ contains monomials of even degree")
    if f.num_vars == 2 and any(sum(e) == 1 for e in f.coeffs):
        raise CliError("not-singular", "germ has degree-1 terms")
    res = oddclass.classify(f, cfg.epsilon)
    det = oddclass.is_finitely_determined(f, cfg.epsilon) if res.conclusive and res.is_simple else None
    _emit_report(cfg, res.report(det))
    return EXIT_OK if res.conclusive else EXIT_INCONCLUSIVE


def cmd_classify_curve_point(cfg: RunConfig) -> int:
    S = _load_germ(cfg)
    if S.num_vars != 1:
        raise CliError("bad-input", "curve generating function must have one variable")
    if S.degree < 3:
        raise CliError("bad-input", "generating function must have degree >= 3")
    point = cfg.point[0] if cfg.point else 0
    label = planecurve.classify_curve_point(S, point, cfg.epsilon)
    from .jetcore import derivative_value, translate
    Sp = translate(S, (point,)) if point else S
    _emit_report(cfg, {"label": label, "point": point,
                       "derivatives": {str(k): derivative_value(Sp, (k,)) for k in (3, 4, 5)}})
    return EXIT_OK


def cmd_classify_surface_point(cfg: RunConfig) -> int:
    S = _load_germ(cfg)
    if S.num_vars != 2:
        raise CliError("bad-input", "surface generating function must have two variables")
    point = cfg.point if cfg.point else None
    res = lagsurface.classify_surface_point(S, point, check_versality=True, eps=cfg.epsilon)
    _emit_report(cfg, res.report())
    return EXIT_OK if res.conclusive else EXIT_INCONCLUSIVE


def _write_log(cfg: RunConfig, failures: list):
    if not failures:
        return
    target = Path(cfg.output_path + ".log") if cfg.output_path else None
    lines = [json.dumps(_plain(f), sort_keys=True) for f in failures]
    if target is None:
        for ln in lines:
            print(f"warning: solver-failure: {ln}", file=sys.stderr)
    else:
        target.write_text("\n".join(lines) + "\n")


def cmd_trace(cfg: RunConfig) -> int:
    S = _load_germ(cfg)
    if S.num_vars == 1:
        q_range = cfg.q_range or (-0.05, 0.05)
        try:
            branches = planecurve.onshell_trace(S, q_range, cfg.resolution or 1001,
                                                beta_max=cfg.beta_max, grid=cfg.grid)
        except ValueError as exc:
            raise CliError("bad-input", str(exc)) from None
        _emit(cfg, planecurve.branches_to_csv(branches))
        _write_log(cfg, branches.failures)
        n_points = cfg.resolution or 1001
        if branches.failures and len({f["q"] for f in branches.failures}) >= n_points:
            raise CliError("solver", "root finder failed at every grid point")
        summary = {"branches": len(branches),
                   "q_extent": [[float(b.q.min()), float(b.q.max())] for b in branches],
                   "tangency": [b.tangency.to_dict() if b.tangency else None for b in branches],
                   "failures": len(branches.failures)}
        if cfg.output_path:
            print(_dumps(summary))
        return EXIT_OK
    if S.num_vars == 2:
        q = cfg.point or (0.0, 0.0)
        pts = lagsurface.onshell_slice(S, q, resolution=min(cfg.resolution or 256, cfg.grid),
                                       rho_max=cfg.beta_max or 0.5)
        lines = ["ray,beta1,beta2,p1,p2"]
        lines += [f"{s.ray},{s.beta[0]:.17g},{s.beta[1]:.17g},{s.p[0]:.17g},{s.p[1]:.17g}"
                  for s in pts]
        _emit(cfg, "\n".join(lines) + "\n")
        if cfg.output_path:
            print(_dumps({"points": len(pts), "offdiagonal": len(pts) - 1}))
        return EXIT_OK
    raise CliError("bad-input", "trace-onshell expects one or two variables")


def cmd_scan_chords(cfg: RunConfig) -> int:
    text = _read_text(cfg.input_path)
    try:
        curve = planecurve.CurveSamples.from_csv(text)
    except planecurve.OpenCurveError as exc:
        raise CliError("open-curve", str(exc)) from None
    except (ValueError, StopIteration) as exc:
        raise CliError("malformed-csv", str(exc)) from None
    if len(curve) < 16:
        raise CliError("bad-input", "chord scan needs at least 16 samples")
    pairs = planecurve.chord_scan(curve, cfg.angle_tol)
    locus = planecurve.midpoint_locus(pairs)
    cusps = planecurve.cusp_count(locus, scale=curve.scale)
    _emit(cfg, planecurve.chords_to_csv(pairs))
    summary = {"pairs": len(pairs), "cusps": cusps.count, "degenerate_flag": cusps.degenerate,
               "confidence": cusps.confidence, "nonsmooth_warning": not curve.is_smooth()}
    if summary["nonsmooth_warning"]:
        print("warning: nonsmooth: tangent angles jump between consecutive samples", file=sys.stderr)
    print(_dumps(summary))
    return EXIT_OK


def cmd_versal_check(cfg: RunConfig) -> int:
    data = _load_json(cfg.input_path)
    if not isinstance(data, dict) or "germ" not in data or "directions" not in data:
        raise CliError("malformed-input", "expected an object with 'germ' and 'directions'")
    f = _germ_from(data["germ"], cfg)
    dirs = [_germ_from(d, cfg, f"directions[{i}]") for i, d in enumerate(data["directions"])]
    try:
        rep = oddclass.is_versal(f, dirs, cfg.epsilon)
    except ValueError as exc:
        raise CliError("bad-input", str(exc)) from None
    _emit_report(cfg, rep.to_dict())
    return EXIT_INCONCLUSIVE if rep.verdict == "inconclusive" else EXIT_OK


def cmd_realize(cfg: RunConfig) -> int:
    data = _load_json(cfg.input_path)
    if not isinstance(data, dict) or "germ" not in data or "h" not in data:
        raise CliError("malformed-input", "expected an object with 'germ' and 'h'")
    f = _germ_from(data["germ"], cfg)
    h = [_germ_from(d, cfg, f"h[{i}]") for i, d in enumerate(data["h"])]
    try:
        res = oddclass.realization_check(f, h, cfg.epsilon)
    except ValueError as exc:
        raise CliError("bad-input", str(exc)) from None
    out = {"accepted": res.ok, "versal": res.versal, "closed": res.closed, "reason": res.reason or None,
           "S": oddclass.realize_generating_function(f, h, cfg.epsilon).to_dict() if res.ok else None}
    _emit_report(cfg, out)
    if res.report is not None and res.report.verdict == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_OK


HANDLERS = {
    "classify-germ": cmd_classify_germ,
    "classify-curve-point": cmd_classify_curve_point,
    "classify-surface-point": cmd_classify_surface_point,
    "trace-onshell": cmd_trace,
    "scan-chords": cmd_scan_chords,
    "versal-check": cmd_versal_check,
    "realize": cmd_realize,
}


def _floats(text: str, n: int | None, flag: str) -> tuple:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise CliError("config", f"{flag} expects comma-separated numbers") from None
    if n is not None and len(vals) != n:
        raise CliError("config", f"{flag} expects {n} numbers")
    return vals


def _point(text: str) -> tuple:
    # keep rationals exact so exact-mode germs stay exact after re-centering
    out = []
    for v in text.split(","):
        try:
            out.append(Fraction(v.strip()))
        except ValueError:
            raise CliError("config", "--point expects comma-separated numbers") from None
    return tuple(out)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="caustica", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("input", help="input file, or - for stdin")
    ap.add_argument("--order", type=int, default=None, help="jet truncation order (odd, >= 7)")
    ap.add_argument("--epsilon", type=float, default=1e-9, help="zero tolerance for float mode")
    ap.add_argument("--grid", type=int, default=2048, help="root-search grid size (>= 16)")
    ap.add_argument("--angle-tol", type=float, default=1e-3, help="chord parallelism tolerance (rad)")
    ap.add_argument("--mode", choices=("exact", "float"), default=None)
    ap.add_argument("--out", default=None, help="output file (default stdout)")
    ap.add_argument("--point", default=None, help="base point, comma separated")
    ap.add_argument("--q-range", default=None, help="q interval lo,hi for curve tracing")
    ap.add_argument("--beta-max", type=float, default=None, help="chord half-length search bound")
    ap.add_argument("--resolution", type=int, default=None, help="number of q samples or slice rings")
    return ap


VALUE_FLAGS = ("--point", "--q-range")


def _join_values(argv) -> list:
    # "--q-range -0.05,0.05" would otherwise be read as an unknown option
    out, it = [], iter(argv)
    for a in it:
        if a in VALUE_FLAGS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(_join_values(argv))
    return RunConfig(
        command=ns.command, input_path=ns.input, output_path=ns.out, order=ns.order,
        epsilon=ns.epsilon, grid=ns.grid, angle_tol=ns.angle_tol, mode=ns.mode,
        point=_point(ns.point) if ns.point else None,
        q_range=_floats(ns.q_range, 2, "--q-range") if ns.q_range else None,
        beta_max=ns.beta_max, resolution=ns.resolution)


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        return HANDLERS[cfg.command](cfg)
    except CliError as exc:
        print(f"error: {exc.kind}: {exc.detail}".replace("\n", " "), file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # any other failure still gets a one-line reason
        print(f"error: internal: {type(exc).__name__}: {exc}".replace("\n", " "), file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
