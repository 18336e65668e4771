"""The classical incomplete geodesic, rescued by a complex detour.

Shoots t -> (1/(1-t), 0) straight toward t = 2 (halts at the pole),
then again along a path lifted into the upper half plane (completes,
landing on the "other side" of the real singularity).

Run:  python scripts/demo_incompleteness.py
"""

from cliftonpohl import PathPolyline, continue_path, germ


def main() -> None:
    g = germ(1, 0, 1, 0)

    straight = continue_path(g, PathPolyline((0, 2)), 1e-10)
    print(f"straight [0 -> 2]       : {straight.status}")
    print(f"  singular time estimate: {straight.obstruction.t_star:.9f}")
    print(f"  +/- {straight.obstruction.radius:.1e}")

    detour = continue_path(g, PathPolyline((0, 0.5 + 0.5j, 2)), 1e-10)
    e = detour.endpoint
    print(f"detour [0 -> 0.5+0.5i -> 2]: {detour.status}")
    print(f"  u(2) = {e.u:.12f}   (meromorphic value: -1)")
    print(f"  u'(2) = {e.du:.12f}")
    print(f"  accepted steps: {len(detour.samples)}")


if __name__ == "__main__":
    main()
