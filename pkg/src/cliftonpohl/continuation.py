"""Analytic continuation of geodesic germs along paths in complex time.

Continuation always integrates the second-order system in the original
(u, v) coordinates, so the log-chart degeneracies at u = 0 or v = 0 are
invisible here; what stops a path is a genuine blow-up of the state, a
branch point of the solution, or the geodesic running into the excluded
cone u^2 + v^2 = 0.

The integrator is a Dormand-Prince 5(4) embedded pair stepping along
the real arclength of each polyline segment; a complex segment
direction just multiplies the right-hand side, so the classical tableau
applies unchanged.  An obstruction is reported as *data* (a trace
status with an estimated singular time), never as an exception.

The completeness probe shoots straight rays and, along each ray, keeps
estimating the nearest solution singularity from local Taylor
coefficients.  Whatever lands inside the ray's capture tube is
localized by walking toward it (re-expanding as the radius of
convergence shrinks), recorded, and -- when it blocks the ray --
flanked by a small semicircular detour so the ray can report
obstructions hiding behind the first one.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .manifold import GeodesicGerm
from .taylor import nearest_singularity

State = tuple[complex, complex, complex, complex]

#: State magnitudes above this count as a blow-up.
BLOWUP = 1e12

#: Step-size floor, relative to the segment length.
STEP_FLOOR = 1e-12

#: Consecutive step rejections that flag an obstruction on their own.
MAX_REJECTS = 40

#: Cluster width for probe obstruction estimates.
CLUSTER_TOL = 1e-4

_TOL_RANGE = (1e-14, 1e-3)

# Dormand-Prince 5(4) tableau (stage times are not needed: the system
# is autonomous once the segment direction is folded into the slope)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_E = (
    71 / 57600,
    0.0,
    -71 / 16695,
    71 / 1920,
    -17253 / 339200,
    22 / 525,
    -1 / 40,
)


@dataclass(frozen=True)
class PathPolyline:
    """Finite waypoint sequence in the complex t-plane."""

    waypoints: tuple[complex, ...]

    def __post_init__(self):
        pts = tuple(complex(w) for w in self.waypoints)
        object.__setattr__(self, "waypoints", pts)
        if len(pts) < 2:
            raise ValueError("a path needs at least two waypoints")
        for a, b in zip(pts, pts[1:]):
            if a == b:
                raise ValueError("consecutive waypoints must be distinct")


@dataclass(frozen=True)
class TraceSample:
    t: complex
    u: complex
    v: complex
    du: complex
    dv: complex


@dataclass(frozen=True)
class Obstruction:
    t_star: complex
    radius: float


@dataclass
class ContinuationTrace:
    germ: GeodesicGerm
    waypoints: tuple[complex, ...]
    tol: float
    samples: list[TraceSample] = field(default_factory=list)
    status: str = "Completed"
    obstruction: Obstruction | None = None

    @property
    def endpoint(self) -> TraceSample:
        return self.samples[-1]

    @property
    def completed(self) -> bool:
        return self.status == "Completed"


@dataclass(frozen=True)
class RayResult:
    angle: float
    status: str  # Completed | Obstructed | Blocked
    obstructions: tuple[complex, ...]


@dataclass(frozen=True)
class ObstructionReport:
    germ: GeodesicGerm
    probe_radius: float
    rays: int
    obstructions: tuple[complex, ...]
    min_separation: float
    per_ray: tuple[RayResult, ...]


@dataclass(frozen=True)
class LoopResult:
    status: str  # Completed | Obstructed
    base_state: State | None
    end_state: State | None
    branch_changed: bool
    mismatch: float


class _Segment:
    """Outcome of integrating one straight segment."""

    __slots__ = ("status", "t", "y", "t_star", "radius")

    def __init__(self, status, t, y, t_star=None, radius=0.0):
        self.status = status  # "done" | "halted" | "obstructed"
        self.t = t
        self.y = y
        self.t_star = t_star
        self.radius = radius


def _extrapolate_collapse(
    seg_start: complex, direction: complex, hist: list[tuple[float, float]], s_cur: float, h_last: float
) -> tuple[complex, float]:
    """Singular arclength from geometric step collapse (Richardson)."""
    ests = []
    for (s0, h0), (s1, h1) in zip(hist[-3:], hist[-2:]):
        if h0 <= 0 or h1 <= 0 or h1 >= h0:
            continue
        r = h1 / h0
        ests.append(s1 + h1 * r / (1.0 - r))
    if not ests:
        ests = [s_cur + 2.0 * h_last]
    s_star = ests[-1]
    err = abs(ests[-1] - ests[-2]) if len(ests) > 1 else h_last
    err = max(err, h_last, 1e-14)
    return seg_start + s_star * direction, err


def _integrate_segment(
    y: State,
    t_from: complex,
    t_to: complex,
    tol: float,
    collect=None,
    on_step=None,
) -> _Segment:
    """Adaptive DP5(4) along the straight segment t_from -> t_to.

    ``collect(t, y)`` records accepted steps; ``on_step(t, y, h)`` may
    return True to halt cleanly at the current accepted state.
    """
    L = abs(t_to - t_from)
    e = (t_to - t_from) / L

    def f(w: State) -> State:
        u, v, p, q = w
        fw = u * u + v * v
        return (e * p, e * q, e * (2.0 * u * p * p / fw), e * (2.0 * v * q * q / fw))

    s = 0.0
    fnorm = max(abs(c) for c in f(y))
    h = min(L, 0.01 * (1.0 + max(abs(c) for c in y)) / (1.0 + fnorm), 0.25 * L + 1e-30)
    h = max(h, 1e-13 * L)
    k1 = f(y)
    rejects = 0
    hist: list[tuple[float, float]] = []
    scan_h: float | None = None

    a21 = _A[1][0]
    a31, a32 = _A[2]
    a41, a42, a43 = _A[3]
    a51, a52, a53, a54 = _A[4]
    a61, a62, a63, a64, a65 = _A[5]
    b1, _, b3, b4, b5, b6 = _A[6]
    e1, _, e3, e4, e5, e6, e7 = _E

    while s < L:
        h = min(h, L - s)
        y0, y1, y2, y3 = y
        k10, k11, k12, k13 = k1
        try:
            k2 = f((y0 + h * a21 * k10, y1 + h * a21 * k11,
                    y2 + h * a21 * k12, y3 + h * a21 * k13))
            k3 = f((y0 + h * (a31 * k10 + a32 * k2[0]),
                    y1 + h * (a31 * k11 + a32 * k2[1]),
                    y2 + h * (a31 * k12 + a32 * k2[2]),
                    y3 + h * (a31 * k13 + a32 * k2[3])))
            k4 = f((y0 + h * (a41 * k10 + a42 * k2[0] + a43 * k3[0]),
                    y1 + h * (a41 * k11 + a42 * k2[1] + a43 * k3[1]),
                    y2 + h * (a41 * k12 + a42 * k2[2] + a43 * k3[2]),
                    y3 + h * (a41 * k13 + a42 * k2[3] + a43 * k3[3])))
            k5 = f((y0 + h * (a51 * k10 + a52 * k2[0] + a53 * k3[0] + a54 * k4[0]),
                    y1 + h * (a51 * k11 + a52 * k2[1] + a53 * k3[1] + a54 * k4[1]),
                    y2 + h * (a51 * k12 + a52 * k2[2] + a53 * k3[2] + a54 * k4[2]),
                    y3 + h * (a51 * k13 + a52 * k2[3] + a53 * k3[3] + a54 * k4[3])))
            k6 = f((y0 + h * (a61 * k10 + a62 * k2[0] + a63 * k3[0] + a64 * k4[0] + a65 * k5[0]),
                    y1 + h * (a61 * k11 + a62 * k2[1] + a63 * k3[1] + a64 * k4[1] + a65 * k5[1]),
                    y2 + h * (a61 * k12 + a62 * k2[2] + a63 * k3[2] + a64 * k4[2] + a65 * k5[2]),
                    y3 + h * (a61 * k13 + a62 * k2[3] + a63 * k3[3] + a64 * k4[3] + a65 * k5[3])))
            y_new = (
                y0 + h * (b1 * k10 + b3 * k3[0] + b4 * k4[0] + b5 * k5[0] + b6 * k6[0]),
                y1 + h * (b1 * k11 + b3 * k3[1] + b4 * k4[1] + b5 * k5[1] + b6 * k6[1]),
                y2 + h * (b1 * k12 + b3 * k3[2] + b4 * k4[2] + b5 * k5[2] + b6 * k6[2]),
                y3 + h * (b1 * k13 + b3 * k3[3] + b4 * k4[3] + b5 * k5[3] + b6 * k6[3]),
            )
            k7 = f(y_new)  # FSAL: also next step's k1
            err = 0.0
            finite = True
            for q in range(4):
                d = h * (e1 * k1[q] + e3 * k3[q] + e4 * k4[q]
                         + e5 * k5[q] + e6 * k6[q] + e7 * k7[q])
                c = y_new[q]
                if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                    finite = False
                    break
                err = max(err, abs(d) / (1.0 + max(abs(y[q]), abs(c))))
            ok = finite and err <= tol * h
            if not finite:
                err = math.inf
        except ZeroDivisionError:
            err, ok = math.inf, False

        if ok:
            s += h
            y = y_new
            k1 = k7
            rejects = 0
            hist.append((s, h))
            if len(hist) > 6:
                hist.pop(0)
            t_cur = t_to if s >= L else t_from + s * e
            if collect is not None:
                collect(t_cur, y)
            if max(abs(c) for c in y) > BLOWUP:
                t_star, rad = _extrapolate_collapse(t_from, e, hist, s, h)
                return _Segment("obstructed", t_cur, y, t_star, rad)
            if h < 1e-3 * L:
                # terminal-collapse shortcut: when a singularity of the
                # solution sits on the remaining path, stop at the series
                # estimate instead of grinding down to the step floor.
                # Scans re-fire each time the step halves again, so a
                # grazing pass costs only a handful of them.
                if scan_h is None or h < 0.5 * scan_h:
                    scan_h = h
                    est = nearest_singularity(y)
                    if est is not None:
                        off, spread = est
                        # only when the singularity sits essentially on the
                        # remaining path; grazing passes are stepped through
                        if (
                            spread < 0.05
                            and abs(off) < 0.08 * L
                            and _dist_to_segment(t_cur + off, t_cur, t_to)
                            < max(0.02 * abs(off), 1e-6 * L)
                        ):
                            rad = max(3.0 * abs(off) * spread, 1e-12)
                            return _Segment(
                                "obstructed", t_cur, y, t_cur + off, rad
                            )
            else:
                scan_h = None
            if on_step is not None and s < L and on_step(t_cur, y, h):
                return _Segment("halted", t_cur, y)
            if err > 0:
                h *= min(5.0, max(0.2, 0.9 * (tol * h / err) ** 0.25))
            else:
                h *= 5.0
        else:
            rejects += 1
            if math.isinf(err):
                h *= 0.2
            else:
                h *= min(1.0, max(0.2, 0.9 * (tol * h / err) ** 0.25))
            if h < STEP_FLOOR * L or rejects >= MAX_REJECTS:
                t_cur = t_from + s * e
                t_star, rad = _extrapolate_collapse(t_from, e, hist, s, h)
                return _Segment("obstructed", t_cur, y, t_star, rad)
    return _Segment("done", t_to, y)


def _check_tol(tol: float) -> None:
    if not (_TOL_RANGE[0] <= tol <= _TOL_RANGE[1]):
        raise ValueError(f"tol must lie in [{_TOL_RANGE[0]}, {_TOL_RANGE[1]}]")


def continue_path(
    g: GeodesicGerm, path: PathPolyline, tol: float = 1e-10
) -> ContinuationTrace:
    """Continue a germ along a polyline; obstruction is a status, not an error."""
    _check_tol(tol)
    if abs(path.waypoints[0] - g.t0) > 1e-12 * (1.0 + abs(g.t0)):
        raise ValueError("path must start at the germ's base time")
    trace = ContinuationTrace(g, path.waypoints, tol)
    y: State = g.state()
    trace.samples.append(TraceSample(g.t0, *y))
    for a, b in zip(path.waypoints, path.waypoints[1:]):
        res = _integrate_segment(
            y, a, b, tol, collect=lambda t, w: trace.samples.append(TraceSample(t, *w))
        )
        if res.status == "obstructed":
            trace.status = "Obstructed"
            trace.obstruction = Obstruction(res.t_star, res.radius)
            return trace
        y = res.y
    trace.status = "Completed"
    return trace


# ---------------------------------------------------------------------------
# Completeness probe


def _walk_localize(
    t: complex, y: State, tol: float
) -> tuple[complex, float] | None:
    """Walk toward the nearest singularity, re-expanding as it gets close."""
    cur_t, cur_y = t, y
    best: tuple[complex, float] | None = None
    for _ in range(30):
        est = nearest_singularity(cur_y)
        if est is None:
            return best
        off, spread = est
        cand = (cur_t + off, abs(off) * max(spread, 5e-3) + 1e-9)
        if best is None or cand[1] < best[1]:
            best = cand
        if abs(off) < 2e-3 and spread < 0.05:
            return cand
        hop = 0.6 if spread < 0.1 else 0.3
        target = cur_t + hop * off
        res = _integrate_segment(cur_y, cur_t, target, tol)
        if res.status != "done":
            # ran into it: the collapse estimate is sharper than the walk
            return (res.t_star, res.radius) if res.t_star is not None else best
        cur_t, cur_y = target, res.y
    return best


def _detour_waypoints(t_star: complex, rho: float, e: complex, sign: int) -> list[complex]:
    """Semicircle of radius rho around t_star, entering and leaving on the ray."""
    thetas = (math.pi, 3 * math.pi / 4, math.pi / 2, math.pi / 4, 0.0)
    return [t_star + rho * e * cmath.exp(sign * 1j * th) for th in thetas]


def _dist_to_segment(p: complex, a: complex, b: complex) -> float:
    ab = b - a
    L2 = abs(ab) ** 2
    if L2 == 0.0:
        return abs(p - a)
    s = ((p - a) * ab.conjugate()).real / L2
    s = min(1.0, max(0.0, s))
    return abs(p - (a + s * ab))


def _probe_ray(
    g: GeodesicGerm,
    angle: float,
    radius: float,
    n_rays: int,
    tol: float,
) -> RayResult:
    t0 = g.t0
    e = cmath.exp(1j * angle)
    ray_end = t0 + radius * e
    y: State = g.state()
    t_cur = t0
    found: list[tuple[complex, float]] = []
    ghost: list[complex] = []  # unlocalizable candidates, suppressed only
    rho_detour = max(5e-3, min(0.03, 0.008 * radius))
    sin_gap = math.sin(math.pi / n_rays)
    detours = 0
    status = "Completed"

    def width(t: complex) -> float:
        return 1.6 * abs(t - t0) * sin_gap + 0.005 * radius

    def suppressed(cand: complex) -> bool:
        if any(abs(cand - p) < max(5e-4, 3.0 * r) for p, r in found):
            return True
        return any(abs(cand - p) < 5e-3 for p in ghost)

    last_scan: list[complex | None] = [None]
    last_candidate: list[complex | None] = [None]

    def scan(t: complex, w: State, h: float) -> bool:
        wd = width(t)
        if last_scan[0] is not None and abs(t - last_scan[0]) < 0.3 * wd:
            return False
        last_scan[0] = t
        # cheap low-order estimate first, full order only on a near hit
        est = nearest_singularity(w, order=12, max_spread=0.6)
        if est is None or abs(est[0]) >= 1.8 * wd:
            return False
        est = nearest_singularity(w)
        if est is None or abs(est[0]) >= wd:
            return False
        cand = t + est[0]
        if suppressed(cand):
            return False
        last_candidate[0] = cand
        return True

    def record(p: complex, r: float) -> None:
        for i, (q, rq) in enumerate(found):
            if abs(p - q) < max(CLUSTER_TOL, 2.0 * max(r, rq)):
                if r < rq:
                    found[i] = (p, r)
                return
        found.append((p, r))

    while True:
        if abs(t_cur - ray_end) < 1e-12 * (1.0 + radius):
            break
        res = _integrate_segment(y, t_cur, ray_end, tol, on_step=scan)
        if res.status == "done":
            break

        if res.status == "halted":
            loc = _walk_localize(res.t, res.y, tol)
            t_cur, y = res.t, res.y
            if loc is None:
                # unlocalizable candidate: suppress it so the ray advances
                if last_candidate[0] is not None:
                    ghost.append(last_candidate[0])
                continue
            t_star, rad = loc
            record(t_star, rad)
            if _dist_to_segment(t_star, t_cur, ray_end) >= rho_detour:
                continue  # off-path: resume straight, suppression skips it
        else:  # obstructed
            t_star, rad = res.t_star, res.radius
            loc = _walk_localize(res.t, res.y, tol)
            if loc is not None and loc[1] < max(rad, 1e-9):
                t_star, rad = loc
            record(t_star, rad)
            t_cur, y = res.t, res.y

        # flank the blocking singularity and resume behind it
        if detours >= 24:
            status = "Blocked"
            break
        detours += 1
        done = False
        for sign in (1, -1):
            for shrink in (1.0, 0.5):
                rho = rho_detour * shrink
                entry = t_star - rho * e
                wps = [t_cur, entry] if abs(entry - t_cur) > 1e-12 else [t_cur]
                wps += _detour_waypoints(t_star, rho, e, sign)[1:]
                yy, tt, ok = y, t_cur, True
                for a, b in zip(wps, wps[1:]):
                    if abs(b - a) < 1e-15:
                        continue
                    seg = _integrate_segment(yy, a, b, tol)
                    if seg.status != "done":
                        ok = False
                        break
                    yy, tt = seg.y, b
                if ok:
                    t_cur, y = tt, yy
                    done = True
                    break
            if done:
                break
        if not done:
            status = "Blocked"
            break
        if abs(t_cur - t0) >= radius:
            break

    kept = tuple(
        p for p, _ in found if abs(p - t0) <= radius + 10.0 * CLUSTER_TOL
    )
    ray_status = status if status == "Blocked" else ("Obstructed" if kept else "Completed")
    return RayResult(angle, ray_status, kept)


def _cluster(points: list[complex], tol: float) -> list[complex]:
    clusters: list[list[complex]] = []
    for p in sorted(points, key=lambda z: (z.real, z.imag)):
        for c in clusters:
            if abs(p - c[0]) <= tol:
                c.append(p)
                break
        else:
            clusters.append([p])
    return [sum(c) / len(c) for c in clusters]


def completeness_probe(
    g: GeodesicGerm, radius: float, n_rays: int = 64, tol: float = 1e-9
) -> ObstructionReport:
    """Empirical discreteness check: ray fan with obstruction localization.

    Rays are independent; the report is a deterministic function of the
    inputs regardless of evaluation order.
    """
    _check_tol(tol)
    if radius <= 0 or n_rays < 4:
        raise ValueError("radius must be positive and n_rays >= 4")
    per_ray = []
    allpts: list[complex] = []
    for k in range(n_rays):
        r = _probe_ray(g, 2.0 * math.pi * k / n_rays, radius, n_rays, tol)
        per_ray.append(r)
        allpts.extend(r.obstructions)
    centers = _cluster(allpts, CLUSTER_TOL)
    if len(centers) >= 2:
        min_sep = min(
            abs(a - b) for i, a in enumerate(centers) for b in centers[i + 1 :]
        )
    else:
        min_sep = 0.0
    return ObstructionReport(
        g, radius, n_rays, tuple(centers), min_sep, tuple(per_ray)
    )


# ---------------------------------------------------------------------------
# Loop monodromy


def loop_monodromy(
    g: GeodesicGerm,
    center: complex,
    loop_radius: float,
    turns: int = 1,
    tol: float = 1e-10,
) -> LoopResult:
    """Continue around a circle and compare the state with the basepoint.

    The circle is approximated by a polyline (32-gon, doubled until the
    endpoint is tol-stable); homotopic refinements cannot change the
    endpoint, so doubling only guards against a chord grazing an
    obstruction.
    """
    _check_tol(tol)
    base = center + loop_radius
    leg = _integrate_segment(g.state(), g.t0, base, tol) if base != g.t0 else None
    if leg is not None and leg.status != "done":
        return LoopResult("Obstructed", None, None, False, math.inf)
    y0: State = leg.y if leg is not None else g.state()

    prev_end: State | None = None
    for ngon in (32, 64, 128, 256):
        y = y0
        ok = True
        pts = [
            center + loop_radius * cmath.exp(2j * math.pi * k / ngon)
            for k in range(ngon * turns + 1)
        ]
        for a, b in zip(pts, pts[1:]):
            seg = _integrate_segment(y, a, b, tol)
            if seg.status != "done":
                ok = False
                break
            y = seg.y
        if not ok:
            return LoopResult("Obstructed", y0, None, False, math.inf)
        if prev_end is not None:
            drift = max(
                abs(y[q] - prev_end[q]) / (1.0 + abs(y[q])) for q in range(4)
            )
            if drift <= tol:
                break
        prev_end = y

    mismatch = max(abs(y[q] - y0[q]) / (1.0 + abs(y0[q])) for q in range(4))
    return LoopResult("Completed", y0, y, mismatch > 10.0 * tol, mismatch)
