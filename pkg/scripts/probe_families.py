"""Completeness probes for one exemplar germ of each solution family.

Writes one JSON report per family under out/ (created if missing) and
prints a summary table.

Run:  python scripts/probe_families.py [--radius 5] [--rays 64]
"""

import argparse
from pathlib import Path

from cliftonpohl import completeness_probe, germ
from cliftonpohl.cli import _manifest, _report_json, dumps

FAMILIES = {
    "null_rational": germ(1, 0, 1, 0),
    "null_tan": germ(0, 1, 1, 0),
    "exponential": germ(1, 1, 1, 1),
    "generic": germ(1, 2, 1, 1),
}


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--radius", type=float, default=5.0)
    ap.add_argument("--rays", type=int, default=64)
    ap.add_argument("--tol", type=float, default=1e-9)
    ap.add_argument("--outdir", default="out")
    args = ap.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, g in FAMILIES.items():
        rep = completeness_probe(g, args.radius, args.rays, args.tol)
        man = _manifest(
            "probe", g, {"radius": args.radius, "rays": args.rays}, {"tol": args.tol}
        )
        path = outdir / f"probe_{name}.json"
        path.write_text(dumps(_report_json(rep, man)) + "\n")
        obs = ", ".join(f"{z:.4f}" for z in rep.obstructions) or "none"
        print(
            f"{name:14s} obstructions={len(rep.obstructions):2d} "
            f"min_sep={rep.min_separation:.4f}  [{obs}]  -> {path}"
        )


if __name__ == "__main__":
    main()
