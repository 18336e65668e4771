"""Command-line surface: shoot, classify, probe, verify.

Outputs are deterministic: fixed field order and floats printed with 17
significant digits, so identical inputs give byte-identical files.
Complex numbers are always two-element arrays [re, im].

Exit codes: 0 success/Completed, 2 malformed input, 3 Obstructed shoot,
4 out-of-domain germ.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .continuation import (
    ContinuationTrace,
    ObstructionReport,
    PathPolyline,
    completeness_probe,
    continue_path,
)
from .errors import OutOfDomainError
from .manifold import GeodesicGerm, classify, germ as make_germ

DEFAULT_TOL = 1e-10


# ---------------------------------------------------------------------------
# deterministic JSON


def _num(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError("cannot serialize non-finite number")
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return f"{x:.17g}"


def _emit(obj, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_num(obj))
    elif isinstance(obj, complex):
        out.append(f"[{_num(obj.real)},{_num(obj.imag)}]")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, it in enumerate(obj):
            if i:
                out.append(",")
            _emit(it, out)
        out.append("]")
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(",")
            out.append(json.dumps(k))
            out.append(":")
            _emit(v, out)
        out.append("}")
    else:
        raise TypeError(f"unserializable {type(obj)}")


def dumps(obj) -> str:
    out: list[str] = []
    _emit(obj, out)
    return "".join(out)


# ---------------------------------------------------------------------------
# input parsing


class InputError(Exception):
    pass


def _load_spec(arg: str):
    text = arg.strip()
    if not (text.startswith("{") or text.startswith("[")):
        p = Path(text[1:] if text.startswith("@") else text)
        try:
            text = p.read_text()
        except OSError as e:
            raise InputError(f"cannot read {p}: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"bad JSON: {e}") from None


def _as_complex(v, what: str) -> complex:
    if (
        not isinstance(v, list)
        or len(v) != 2
        or not all(isinstance(c, (int, float)) for c in v)
    ):
        raise InputError(f"{what} must be a two-element [re, im] array")
    return complex(float(v[0]), float(v[1]))


def parse_germ(arg: str) -> GeodesicGerm:
    rec = _load_spec(arg)
    if not isinstance(rec, dict):
        raise InputError("germ must be a JSON object")
    missing = {"alpha", "beta", "x", "y"} - rec.keys()
    if missing:
        raise InputError(f"germ record missing fields: {sorted(missing)}")
    vals = {k: _as_complex(rec[k], f"germ.{k}") for k in ("alpha", "beta", "x", "y")}
    t0 = _as_complex(rec["t0"], "germ.t0") if "t0" in rec else 0j
    try:
        return make_germ(vals["alpha"], vals["beta"], vals["x"], vals["y"], t0)
    except ValueError as e:
        raise InputError(str(e)) from None


def parse_path(arg: str) -> PathPolyline:
    rec = _load_spec(arg)
    if not isinstance(rec, list) or len(rec) < 2:
        raise InputError("path must be a JSON array of at least two waypoints")
    pts = tuple(_as_complex(w, "waypoint") for w in rec)
    try:
        return PathPolyline(pts)
    except ValueError as e:
        raise InputError(str(e)) from None


def _germ_record(g: GeodesicGerm) -> dict:
    return {
        "alpha": g.alpha,
        "beta": g.beta,
        "x": g.x,
        "y": g.y,
        "t0": g.t0,
    }


def _manifest(command: str, g: GeodesicGerm, parameters: dict, tolerances: dict) -> dict:
    return {
        "command": command,
        "germ": _germ_record(g),
        "parameters": parameters,
        "tool_version": __version__,
        "tolerances": tolerances,
    }


def _trace_json(trace: ContinuationTrace, manifest: dict) -> dict:
    return {
        "manifest": manifest,
        "status": trace.status,
        "samples": [
            {"t": s.t, "u": s.u, "v": s.v, "du": s.du, "dv": s.dv}
            for s in trace.samples
        ],
        "endpoint": (
            {
                "t": trace.endpoint.t,
                "u": trace.endpoint.u,
                "v": trace.endpoint.v,
                "du": trace.endpoint.du,
                "dv": trace.endpoint.dv,
            }
            if trace.completed
            else None
        ),
        "obstruction": (
            {"t_star": trace.obstruction.t_star, "radius": trace.obstruction.radius}
            if trace.obstruction is not None
            else None
        ),
    }


def _report_json(rep: ObstructionReport, manifest: dict) -> dict:
    return {
        "manifest": manifest,
        "radius": rep.probe_radius,
        "rays": rep.rays,
        "obstructions": list(rep.obstructions),
        "min_separation": rep.min_separation,
        "per_ray": [
            {
                "angle": r.angle,
                "status": r.status,
                "obstructions": list(r.obstructions),
            }
            for r in rep.per_ray
        ],
    }


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text + "\n")
    else:
        Path(out).write_text(text + "\n")


def _write_csv(trace: ContinuationTrace, out: str) -> None:
    lines = ["t_re,t_im,u_re,u_im,v_re,v_im,du_re,du_im,dv_re,dv_im"]
    for s in trace.samples:
        lines.append(
            ",".join(
                _num(c)
                for z in (s.t, s.u, s.v, s.du, s.dv)
                for c in (z.real, z.imag)
            )
        )
    Path(out).write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_shoot(args) -> int:
    g = parse_germ(args.germ)
    path = parse_path(args.path)
    if abs(path.waypoints[0] - g.t0) > 1e-12 * (1.0 + abs(g.t0)):
        raise InputError("path must start at the germ's t0")
    trace = continue_path(g, path, args.tol)
    manifest = _manifest(
        "shoot",
        g,
        {"path": list(path.waypoints)},
        {"tol": args.tol},
    )
    _write_output(dumps(_trace_json(trace, manifest)), args.out)
    if args.csv:
        if args.out is None:
            raise InputError("--csv requires --out")
        _write_csv(trace, str(Path(args.out).with_suffix(".csv")))
    return 0 if trace.completed else 3


def _cmd_classify(args) -> int:
    g = parse_germ(args.germ)
    c = classify(g)
    manifest = _manifest("classify", g, {}, {})
    rec = {
        "manifest": manifest,
        "tag": c.tag.value,
        "A": c.integrals.A if c.integrals else None,
        "B": c.integrals.B if c.integrals else None,
        "discriminant": c.discriminant,
    }
    _write_output(dumps(rec), args.out)
    return 0


def _cmd_probe(args) -> int:
    g = parse_germ(args.germ)
    if args.radius <= 0:
        raise InputError("--radius must be positive")
    if args.rays < 4:
        raise InputError("--rays must be at least 4")
    rep = completeness_probe(g, args.radius, args.rays, args.tol)
    manifest = _manifest(
        "probe",
        g,
        {"radius": args.radius, "rays": args.rays},
        {"tol": args.tol},
    )
    _write_output(dumps(_report_json(rep, manifest)), args.out)
    return 0


def _cmd_verify(args) -> int:
    from . import acceptance

    wanted = None
    if args.criteria:
        try:
            wanted = sorted({int(s) for s in args.criteria.split(",")})
        except ValueError:
            raise InputError("--criteria wants a comma-separated list of integers")
    results = acceptance.run(wanted)
    return 0 if all(r.passed for r in results) else 1


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(
        prog="cph",
        description="Clifton-Pohl geodesics over complex time: "
        "shoot along paths, classify germs, probe completeness.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("shoot", help="continue a germ along a path, write the trace")
    p.add_argument("--germ", required=True, help="germ JSON or file")
    p.add_argument("--path", required=True, help="path JSON or file")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--csv", action="store_true", help="also write samples CSV")
    p.set_defaults(func=_cmd_shoot)

    p = sub.add_parser("classify", help="print a germ's family and first integrals")
    p.add_argument("--germ", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("probe", help="ray fan completeness probe")
    p.add_argument("--germ", required=True)
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--rays", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_probe)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--criteria", default=None, help="comma-separated subset, e.g. 1,5")
    p.set_defaults(func=_cmd_verify)

    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OutOfDomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
