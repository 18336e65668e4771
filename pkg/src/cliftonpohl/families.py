"""Closed-form geodesic families as evaluatable samplers.

Four families cover every germ:

* ``NullRational``   one coordinate is identically 0, the other is
                     t -> 1/(C - B t);
* ``NullTan``        one coordinate is a nonzero constant k, the other
                     is t -> k tan(a t + b);
* ``Exponential``    t -> (alpha e^{b(t-t0)}, beta e^{b(t-t0)}) for
                     proportional data alpha y = beta x;
* ``GenericElliptic`` the log / inverse-tanh / elliptic chain.

The generic chain, concretely: in log coordinates omega = log u,
eta = log v, the first integrals become

    omega' eta' = 2 A cosh(phi),   1/omega' + 1/eta' = B,
    phi = omega - eta,

so omega' and eta' are the two roots of a quadratic in cosh(phi), and
psi = tanh(phi/2) satisfies

    psi' = P sqrt((1 + psi^2)(1 - R psi^2)),
    P = sqrt(A^2 B^2 - 2A),  R = (A^2 B^2 + 2A)/(2A - A^2 B^2).

Substituting psi = i w maps the quartic to Legendre form with elliptic
parameter m = -R, so w is a Jacobi sn in Theta = Theta0 + D (t - t0)
with D^2 = -P^2.  Rather than inverting sn for Theta0 (whose defining
integral may cross a branch cut), the sampler stores the curve point
(Y, Y') = (w, dw/dTheta) at t0 and propagates it with the sn addition
law, which only ever needs the product cn*dn, never cn and dn alone.
The final integration back to (u, v) uses

    omega' = A B cosh(phi) + phi'/2,   eta' = A B cosh(phi) - phi'/2,

whose square-root branch is pinned automatically by the germ through
phi'(t0) = x/alpha - y/beta.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    BothComponentsZeroError,
    ChartDegeneracyError,
    ClassificationMismatchError,
    DegenerateCoefficientsError,
    PoleError,
)
from .manifold import (
    FirstIntegrals,
    GeodesicClass,
    GeodesicGerm,
    Point,
    classify,
    first_integrals,
    germ as make_germ,
)
from .special import POLE_THRESHOLD, _jacobi_raw
from .taylor import taylor_step

QUAD_TOL = 1e-12


# ---------------------------------------------------------------------------
# Gauss-Legendre quadrature on complex segments


@lru_cache(maxsize=None)
def _gl_rule(n: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Nodes and weights of n-point Gauss-Legendre on [-1, 1] via Newton."""
    nodes, weights = [], []
    for i in range(n):
        x = math.cos(math.pi * (i + 0.75) / (n + 0.5))
        for _ in range(60):
            p0, p1 = 1.0, x
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = n * (x * p1 - p0) / (x * x - 1.0)
            dx = p1 / dp
            x -= dx
            if abs(dx) < 1e-15:
                break
        p0, p1 = 1.0, x
        for k in range(2, n + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        dp = n * (x * p1 - p0) / (x * x - 1.0)
        nodes.append(x)
        weights.append(2.0 / ((1.0 - x * x) * dp * dp))
    return tuple(nodes), tuple(weights)


def _gl_pair(f, a: complex, b: complex, n: int = 16) -> tuple[complex, complex]:
    """Integrate a C -> C^2 function over the segment [a, b]."""
    nodes, weights = _gl_rule(n)
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    s1 = 0j
    s2 = 0j
    for x, w in zip(nodes, weights):
        f1, f2 = f(mid + half * x)
        if abs(f1) > POLE_THRESHOLD or abs(f2) > POLE_THRESHOLD:
            raise PoleError(
                "integrand blows up on the evaluation path", location=mid + half * x
            )
        s1 += w * f1
        s2 += w * f2
    return half * s1, half * s2


def adaptive_segment_integral(
    f, a: complex, b: complex, tol: float = QUAD_TOL, depth: int = 48
) -> tuple[complex, complex]:
    """Adaptive bisection of a 16-point Gauss-Legendre pair rule."""
    whole = _gl_pair(f, a, b)
    mid = 0.5 * (a + b)
    left = _gl_pair(f, a, mid)
    right = _gl_pair(f, mid, b)
    fine = (left[0] + right[0], left[1] + right[1])
    err = max(abs(fine[0] - whole[0]), abs(fine[1] - whole[1]))
    if err <= tol * (1.0 + abs(fine[0]) + abs(fine[1])):
        return fine
    if depth <= 0:
        raise PoleError("quadrature failed to converge on the path", location=mid)
    l = adaptive_segment_integral(f, a, mid, tol, depth - 1)
    r = adaptive_segment_integral(f, mid, b, tol, depth - 1)
    return l[0] + r[0], l[1] + r[1]


# ---------------------------------------------------------------------------
# Coefficients of the psi equation


@dataclass(frozen=True)
class PsiCoefficients:
    """Prefactor and quartic ratio of the separated psi equation."""

    prefactor: complex
    ratio: complex


def psi_coefficients(fi: FirstIntegrals) -> PsiCoefficients:
    """P = sqrt(A^2 B^2 - 2A) (principal), R = (A^2 B^2 + 2A)/(2A - A^2 B^2)."""
    A, B = fi.A, fi.B
    s = A * A * B * B
    den = 2.0 * A - s
    if abs(den) <= 1e-14 * (abs(s) + 2.0 * abs(A)):
        raise DegenerateCoefficientsError(
            "2A - A^2 B^2 = 0: the quartic degenerates (A B^2 = 2)"
        )
    return PsiCoefficients(prefactor=cmath.sqrt(s - 2.0 * A), ratio=(s + 2.0 * A) / den)


# ---------------------------------------------------------------------------
# Samplers


class NullRationalSampler:
    """Null geodesic with zero constant coordinate: m(t) = 1/(C - B t)."""

    family = "NullRational"

    def __init__(self, moving: str, B: complex, C: complex):
        self.moving = moving
        self.B = B
        self.C = C

    @property
    def pole(self) -> complex:
        return self.C / self.B

    def _moving_value(self, t: complex) -> tuple[complex, complex, complex]:
        d = self.C - self.B * t
        if abs(d) ** 3 * POLE_THRESHOLD < 2.0 * abs(self.B) ** 2 or abs(d) == 0.0:
            raise PoleError("sampler evaluated at its pole", location=self.pole)
        w = 1.0 / d
        return w, self.B * w * w, 2.0 * self.B * self.B * w * w * w

    def position_velocity(self, t: complex):
        w, dw, _ = self._moving_value(t)
        if self.moving == "u":
            return (w, 0j), (dw, 0j)
        return (0j, w), (0j, dw)

    def acceleration(self, t: complex):
        _, _, ddw = self._moving_value(t)
        return (ddw, 0j) if self.moving == "u" else (0j, ddw)

    def poles_within(self, center: complex, radius: float) -> list[complex]:
        p = self.pole
        return [p] if abs(p - center) <= radius else []


class NullTanSampler:
    """Null geodesic with constant coordinate k != 0: m(t) = k tan(a t + b)."""

    family = "NullTan"

    def __init__(self, moving: str, k: complex, a: complex, b: complex):
        self.moving = moving
        self.k = k
        self.a = a
        self.b = b

    def _moving_value(self, t: complex) -> tuple[complex, complex, complex]:
        th = self.a * t + self.b
        c = cmath.cos(th)
        if abs(c) ** 2 * POLE_THRESHOLD < abs(self.k * self.a):
            raise PoleError(
                "sampler evaluated at a tangent pole", location=self.nearest_pole(t)
            )
        s = cmath.sin(th)
        sec2 = 1.0 / (c * c)
        w = self.k * s / c
        dw = self.k * self.a * sec2
        ddw = 2.0 * self.k * self.a * self.a * sec2 * s / c
        return w, dw, ddw

    def nearest_pole(self, t: complex) -> complex:
        th = self.a * t + self.b
        n = round((th.real - math.pi / 2.0) / math.pi)
        return (math.pi / 2.0 + n * math.pi - self.b) / self.a

    def poles_within(self, center: complex, radius: float) -> list[complex]:
        out = []
        n = 0
        while True:
            hits = [
                (math.pi / 2.0 + s * n * math.pi - self.b) / self.a
                for s in ((1,) if n == 0 else (1, -1))
            ]
            keep = [p for p in hits if abs(p - center) <= radius]
            if not keep and n > 2 + abs(self.a) * (radius + abs(center - self.b / self.a)):
                break
            out.extend(keep)
            n += 1
        return sorted(set(out), key=lambda p: (p.real, p.imag))

    def position_velocity(self, t: complex):
        w, dw, _ = self._moving_value(t)
        if self.moving == "u":
            return (w, self.k), (dw, 0j)
        return (self.k, w), (0j, dw)

    def acceleration(self, t: complex):
        _, _, ddw = self._moving_value(t)
        return (ddw, 0j) if self.moving == "u" else (0j, ddw)


class ExponentialSampler:
    """(alpha e^{b(t-t0)}, beta e^{b(t-t0)}); entire, no obstructions."""

    family = "Exponential"

    def __init__(self, alpha: complex, beta: complex, b: complex, t0: complex):
        self.alpha = alpha
        self.beta = beta
        self.b = b
        self.t0 = t0

    def position_velocity(self, t: complex):
        e = cmath.exp(self.b * (t - self.t0))
        u, v = self.alpha * e, self.beta * e
        return (u, v), (self.b * u, self.b * v)

    def acceleration(self, t: complex):
        e = cmath.exp(self.b * (t - self.t0))
        return (self.b * self.b * self.alpha * e, self.b * self.b * self.beta * e)

    def poles_within(self, center: complex, radius: float) -> list[complex]:
        return []


class GenericEllipticSampler:
    """The full log / artanh / elliptic chain for a generic germ."""

    family = "GenericElliptic"

    def __init__(
        self,
        A: complex,
        B: complex,
        m: complex,
        D: complex,
        Y0: complex,
        Yp0: complex,
        omega0: complex,
        eta0: complex,
        t0: complex,
        phi0: complex,
        psi0: complex,
    ):
        self.A, self.B, self.m, self.D = A, B, m, D
        self.Y0, self.Yp0 = Y0, Yp0
        self.omega0, self.eta0 = omega0, eta0
        self.t0 = t0
        self.phi0, self.psi0 = phi0, psi0

    # -- elliptic curve point (Y, dY/dTheta), propagated by the addition law

    def curve_point(self, t: complex) -> tuple[complex, complex]:
        m = self.m
        s1, p1 = self.Y0, self.Yp0
        s2, c2, d2 = _jacobi_raw(self.D * (t - self.t0), m)
        p2 = c2 * d2
        s1s2 = s1 * s1 * s2 * s2
        Q = 1.0 - m * s1s2
        if abs(Q) == 0.0:
            raise PoleError("elliptic argument hit a lattice pole", location=t)
        c1sq = 1.0 - s1 * s1
        d1sq = 1.0 - m * s1 * s1
        Y = (s1 * p2 + s2 * p1) / Q
        Yp = (
            p1 * p2 * (1.0 + m * s1s2)
            - s1 * s2 * (m * c1sq * c2 * c2 + d1sq * d2 * d2)
        ) / (Q * Q)
        return Y, Yp

    def psi(self, t: complex) -> tuple[complex, complex]:
        """(psi, dpsi/dt)."""
        Y, Yp = self.curve_point(t)
        return 1j * Y, 1j * self.D * Yp

    def _chain(self, t: complex) -> tuple[complex, complex, complex, complex]:
        """cosh(phi), phi', omega', eta' at t."""
        Y, Yp = self.curve_point(t)
        one = 1.0 + Y * Y
        if abs(one) * POLE_THRESHOLD < 4.0 * max(1.0, abs(Y * Y)):
            raise PoleError("chain pole: psi = +/-1", location=t)
        ch = (1.0 - Y * Y) / one
        phid = 2j * self.D * Yp / one
        ab = self.A * self.B * ch
        return ch, phid, ab + 0.5 * phid, ab - 0.5 * phid

    def log_rates(self, t: complex) -> tuple[complex, complex]:
        """(omega', eta') = (u'/u, v'/v)."""
        _, _, od, ed = self._chain(t)
        return od, ed

    def _omega_eta(self, t: complex) -> tuple[complex, complex]:
        def f(s: complex) -> tuple[complex, complex]:
            ch, phid, _, _ = self._chain(s)
            return ch, phid

        ic, iphi = adaptive_segment_integral(f, self.t0, t)
        ab = self.A * self.B * ic
        return self.omega0 + ab + 0.5 * iphi, self.eta0 + ab - 0.5 * iphi

    def position_velocity(self, t: complex):
        om, et = self._omega_eta(t)
        u, v = cmath.exp(om), cmath.exp(et)
        od, ed = self.log_rates(t)
        return (u, v), (od * u, ed * v)

    def acceleration(self, t: complex):
        Y, Yp = self.curve_point(t)
        m, D = self.m, self.D
        one = 1.0 + Y * Y
        Ydot = D * Yp
        Ypdot = D * (-Y * (1.0 + m - 2.0 * m * Y * Y))
        ch_dot = -4.0 * Y * Ydot / (one * one)
        phid_dot = 2j * D * (Ypdot * one - 2.0 * Y * Ydot * Yp) / (one * one)
        ab_dot = self.A * self.B * ch_dot
        om_dd = ab_dot + 0.5 * phid_dot
        et_dd = ab_dot - 0.5 * phid_dot
        (u, v), (du, dv) = self.position_velocity(t)
        od, ed = self.log_rates(t)
        return (u * (om_dd + od * od), v * (et_dd + ed * ed))

    def poles_within(self, center: complex, radius: float) -> list[complex]:
        # not known in closed form cheaply; probing handles the generic family
        raise NotImplementedError


GeodesicSampler = (
    NullRationalSampler | NullTanSampler | ExponentialSampler | GenericEllipticSampler
)


# ---------------------------------------------------------------------------
# Solvers


def solve_null(g: GeodesicGerm) -> NullRationalSampler | NullTanSampler:
    """Closed form for a germ with exactly one zero velocity component."""
    a, b, x, y = g.state()
    if x == 0 and y == 0:
        raise BothComponentsZeroError("null solver needs one moving coordinate")
    if x != 0 and y != 0:
        raise ClassificationMismatchError("germ is not null")
    if x == 0:
        moving, k, w0, dw0 = "v", a, b, y
    else:
        moving, k, w0, dw0 = "u", b, a, x
    if k == 0:
        B = dw0 / (w0 * w0)
        C = 1.0 / w0 + B * g.t0
        return NullRationalSampler(moving, B, C)
    arg = k * k + w0 * w0  # nonzero: the germ is in the domain
    aa = k * dw0 / arg
    bb = cmath.atan(w0 / k) - aa * g.t0
    return NullTanSampler(moving, k, aa, bb)


def solve_exponential(g: GeodesicGerm) -> ExponentialSampler:
    """Closed form (alpha e^{bt}, beta e^{bt}) for proportional data."""
    tag = classify(g).tag
    if tag is not GeodesicClass.EXPONENTIAL:
        raise ClassificationMismatchError(f"classified {tag.value}, not Exponential")
    return ExponentialSampler(g.alpha, g.beta, g.x / g.alpha, g.t0)


def _generic_from_state(
    state: tuple[complex, complex, complex, complex], t0: complex
) -> GenericEllipticSampler:
    a, b, x, y = state
    fi = first_integrals(make_germ(a, b, x, y, t0))
    co = psi_coefficients(fi)
    A, B = fi.A, fi.B
    P, R = co.prefactor, co.ratio
    m = -R
    D = 1j * P
    psi0 = (a - b) / (a + b)  # tanh(log(a/b)/2), branch-free
    phi0 = cmath.log(a) - cmath.log(b)
    phid0 = x / a - y / b
    psid0 = 0.5 * phid0 * (1.0 - psi0 * psi0)
    Y0 = -1j * psi0
    Yp0 = psid0 / (1j * D)
    defect = abs(Yp0 * Yp0 - (1.0 - Y0 * Y0) * (1.0 - m * Y0 * Y0))
    if defect > 1e-8 * (1.0 + abs(Yp0) ** 2):
        raise ChartDegeneracyError("inconsistent elliptic curve point for this germ")
    return GenericEllipticSampler(
        A, B, m, D, Y0, Yp0, cmath.log(a), cmath.log(b), t0, phi0, psi0
    )


def solve_generic(g: GeodesicGerm) -> GenericEllipticSampler:
    """Build the elliptic chain for a generic germ (off the axes)."""
    tag = classify(g).tag
    if tag is not GeodesicClass.GENERIC:
        raise ClassificationMismatchError(f"classified {tag.value}, not Generic")
    a, b, x, y = g.state()
    if a == 0 or b == 0:
        raise ChartDegeneracyError(
            "germ sits on a coordinate axis; advance it off the axis first"
        )
    if abs(a + b) <= 1e-12 * (abs(a) + abs(b)):
        # psi = tanh(phi/2) has a pole on the line beta = -alpha; anchor
        # the chain a mini-step away, the sampler still covers t0
        state = taylor_step((a, b, x, y), 1e-3, order=8)
        return _generic_from_state(state, g.t0 + 1e-3)
    return _generic_from_state((a, b, x, y), g.t0)


def solve(g: GeodesicGerm) -> GeodesicSampler:
    """Dispatch a germ to its family solver."""
    tag = classify(g).tag
    if tag in (GeodesicClass.NULL_U_CONST, GeodesicClass.NULL_V_CONST):
        return solve_null(g)
    if tag is GeodesicClass.EXPONENTIAL:
        return solve_exponential(g)
    if g.alpha == 0 or g.beta == 0:
        state = taylor_step(g.state(), 1e-3, order=8)
        return _generic_from_state(state, g.t0 + 1e-3)
    return solve_generic(g)


def sample(sampler: GeodesicSampler, t: complex) -> tuple[Point, tuple[complex, complex]]:
    """Evaluate a sampler: position as a domain-checked Point, velocity exact."""
    (u, v), (du, dv) = sampler.position_velocity(complex(t))
    return Point(u, v), (du, dv)
