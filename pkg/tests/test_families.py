"""Closed-form samplers: germ matching, residuals, the psi chain."""

import cmath
import math
import random

import pytest

from cliftonpohl.errors import (
    BothComponentsZeroError,
    ChartDegeneracyError,
    ClassificationMismatchError,
    DegenerateCoefficientsError,
    PoleError,
)
from cliftonpohl.families import (
    GenericEllipticSampler,
    psi_coefficients,
    sample,
    solve,
    solve_exponential,
    solve_generic,
    solve_null,
)
from cliftonpohl.manifold import FirstIntegrals, first_integrals, geodesic_rhs, germ
from cliftonpohl.taylor import taylor_step


def eq1_residual(s, t):
    (u, v), (du, dv) = s.position_velocity(t)
    ddu, ddv = s.acceleration(t)
    _, _, ru, rv = geodesic_rhs((u, v, du, dv))
    return max(abs(ddu - ru) / (1 + abs(ddu)), abs(ddv - rv) / (1 + abs(ddv)))


def germ_match_defect(s, g):
    (u, v), (du, dv) = s.position_velocity(g.t0)
    return max(
        abs(u - g.alpha), abs(v - g.beta), abs(du - g.x), abs(dv - g.y)
    )


class TestNull:
    def test_incomplete_real_geodesic(self):
        s = solve_null(germ(1, 0, 1, 0))
        assert s.family == "NullRational"
        pt, vel = sample(s, 0.5)
        assert abs(pt.u - 2) < 1e-14 and pt.v == 0
        assert abs(s.pole - 1) < 1e-14

    def test_tan_family(self):
        s = solve_null(germ(0, 1, 1, 0))
        assert s.family == "NullTan"
        pt, _ = sample(s, 0.9)
        assert abs(pt.u - cmath.tan(0.9)) < 1e-13
        assert pt.v == 1

    def test_nonunit_constant_coordinate(self):
        # v = 2: the moving coordinate is 2 tan(a t + b), not tan(2t + b)
        g = germ(0.5, 2, 1.3, 0)
        s = solve_null(g)
        assert germ_match_defect(s, g) < 1e-10
        assert eq1_residual(s, 0.4 + 0.1j) < 1e-12

    def test_moving_v(self):
        g = germ(2, 0.5, 0, -0.7)
        s = solve_null(g)
        assert germ_match_defect(s, g) < 1e-10
        assert eq1_residual(s, -0.3 + 0.2j) < 1e-12

    def test_both_zero_rejected(self):
        with pytest.raises((BothComponentsZeroError, ValueError)):
            solve_null(germ(1, 0, 0, 0))

    def test_nonnull_rejected(self):
        with pytest.raises(ClassificationMismatchError):
            solve_null(germ(1, 2, 1, 1))

    def test_pole_errors_carry_location(self):
        s = solve_null(germ(0, 1, 1, 0))
        with pytest.raises(PoleError) as err:
            sample(s, math.pi / 2)
        assert abs(err.value.location - math.pi / 2) < 1e-9


class TestExponential:
    def test_diagonal(self):
        s = solve_exponential(germ(1, 1, -1, -1))
        pt, _ = sample(s, 1.0)
        assert abs(pt.u - math.exp(-1)) < 1e-14

    def test_entire_evaluation(self):
        s = solve_exponential(germ(1, 2, 1, 2))
        pt, vel = sample(s, 1 + 1j)
        assert abs(pt.u - cmath.exp(1 + 1j)) < 1e-13
        assert abs(pt.v - 2 * cmath.exp(1 + 1j)) < 1e-13

    def test_first_integrals_constant_along_sampler(self):
        g = germ(1, 2, 1, 2)
        fi = first_integrals(g)
        s = solve_exponential(g)
        for t in (0.3, 1 - 0.5j, -2 + 1j):
            (u, v), (du, dv) = s.position_velocity(t)
            assert abs(du * dv / (u * u + v * v) - fi.A) < 1e-12
            assert abs(u / du + v / dv - fi.B) < 1e-12

    def test_mismatch_rejected(self):
        with pytest.raises(ClassificationMismatchError):
            solve_exponential(germ(1, 2, 1, 1))

    def test_diagonal_solves_equation_offdiagonal_does_not(self):
        # (a e^{bt}, +-a e^{bt}) are geodesics; proportional germs off
        # the diagonal satisfy the first integrals but not the equation
        assert eq1_residual(solve_exponential(germ(1, 1, 2, 2)), 0.4) < 1e-13
        assert eq1_residual(solve_exponential(germ(1, -1, 2, -2)), 0.4) < 1e-13
        assert eq1_residual(solve_exponential(germ(1, 2, 1, 2)), 0.4) > 1e-2


class TestPsiCoefficients:
    def test_printed_example(self):
        co = psi_coefficients(FirstIntegrals(0.2, 3))
        assert abs(co.prefactor - 0.2j) < 1e-14
        assert abs(co.ratio - 19) < 1e-12

    def test_degenerate_boundary(self):
        with pytest.raises(DegenerateCoefficientsError):
            psi_coefficients(FirstIntegrals(0.5, 2))

    def test_simple_values(self):
        co = psi_coefficients(FirstIntegrals(1, 2))
        assert abs(co.prefactor - math.sqrt(2)) < 1e-14
        assert abs(co.ratio + 3) < 1e-14

    def test_prefactor_squared_identity(self):
        for A, B in ((0.2 + 0.1j, 3 - 1j), (1.5, 0.3 + 0.4j)):
            co = psi_coefficients(FirstIntegrals(A, B))
            assert abs(co.prefactor**2 - (A * A * B * B - 2 * A)) < 1e-14


class TestGenericChain:
    def test_germ_matching(self):
        g = germ(1, 2, 1, 1)
        s = solve_generic(g)
        assert germ_match_defect(s, g) < 1e-10

    def test_residual_on_disk(self, seed):
        g = germ(1, 2, 1, 1)
        s = solve_generic(g)
        r = random.Random(seed)
        for _ in range(20):
            t = cmath.rect(r.uniform(0, 0.5), r.uniform(0, 2 * math.pi))
            assert eq1_residual(s, t) < 1e-8

    def test_psi_equation_residual(self, seed):
        g = germ(1, 2, 1, 1)
        s = solve_generic(g)
        co = psi_coefficients(first_integrals(g))
        P, R = co.prefactor, co.ratio
        r = random.Random(seed + 3)
        for _ in range(30):
            t = cmath.rect(r.uniform(0, 1.0), r.uniform(0, 2 * math.pi))
            psi, psid = s.psi(t)
            rhs = P * cmath.sqrt((1 + psi * psi) * (1 - R * psi * psi))
            assert min(abs(psid - rhs), abs(psid + rhs)) < 1e-8

    def test_initial_branch_consistency(self):
        g = germ(1, 2, 1, 1)
        s = solve_generic(g)
        fi = first_integrals(g)
        od, ed = s.log_rates(g.t0)
        assert abs(od - 1.0) < 1e-12  # x / alpha
        assert abs(ed - 0.5) < 1e-12  # y / beta
        assert abs(1 / od + 1 / ed - fi.B) < 1e-10
        for t in (0.2, 0.4 - 0.3j):
            od, ed = s.log_rates(t)
            assert abs(1 / od + 1 / ed - fi.B) < 1e-10

    def test_tanh_artanh_chain(self, seed):
        from cliftonpohl.special import artanh_principal

        r = random.Random(seed + 4)
        for _ in range(40):
            phi0 = complex(r.uniform(-2, 2), r.uniform(-3.1, 3.1))
            if abs(phi0.imag) >= math.pi:
                continue
            assert abs(2 * artanh_principal(cmath.tanh(phi0 / 2)) - phi0) < 1e-12

    def test_log_branch_shift_is_invisible(self):
        g = germ(1, 2, 1, 1)
        s = solve_generic(g)
        shifted = GenericEllipticSampler(
            s.A, s.B, s.m, s.D, s.Y0, s.Yp0,
            s.omega0 + 2j * math.pi, s.eta0 - 2j * math.pi, s.t0, s.phi0, s.psi0,
        )
        for t in (0.3, 0.5 - 0.4j):
            (u1, v1), _ = s.position_velocity(t)
            (u2, v2), _ = shifted.position_velocity(t)
            assert abs(u1 - u2) < 1e-12 * (1 + abs(u1))
            assert abs(v1 - v2) < 1e-12 * (1 + abs(v1))

    def test_on_axis_rejected_by_solver_handled_by_dispatch(self):
        g = germ(0, 1, 1, 1)
        with pytest.raises(ChartDegeneracyError):
            solve_generic(g)
        s = solve(g)  # dispatcher advances the germ off the axis
        (u, v), (du, dv) = s.position_velocity(g.t0 + 1e-3)
        ref = taylor_step(g.state(), 1e-3, order=8)
        assert abs(u - ref[0]) < 1e-9 and abs(v - ref[1]) < 1e-9

    def test_anti_diagonal_start_reanchors(self):
        g = germ(1, -1, 1, 0.5)  # beta = -alpha: psi0 would be infinite
        s = solve(g)
        assert germ_match_defect(s, g) < 1e-9
        assert eq1_residual(s, 0.2 + 0.1j) < 1e-8

    def test_degenerate_quartic_locus_is_not_the_class_boundary(self):
        # A B^2 = 2 with cosh(phi0) != 1: classified Generic, yet the
        # quartic degenerates; the solver refuses rather than mislabel
        import math as _m

        g = germ(1, 2, 1, 3 + _m.sqrt(5))
        fi = first_integrals(g)
        assert abs(fi.A * fi.B * fi.B - 2) < 1e-12
        from cliftonpohl.manifold import GeodesicClass, classify

        assert classify(g).tag is GeodesicClass.GENERIC
        with pytest.raises(DegenerateCoefficientsError):
            solve_generic(g)

    def test_obstruction_is_pole_of_artanh_argument(self):
        # the chain's own singular set: psi = +-1; refine the root of
        # 1 + Y^2 by Newton, then evaluation at it must raise
        s = solve_generic(germ(1, 2, 1, 1))
        t = 3.2516195 + 0j
        for _ in range(8):
            Y, Yp = s.curve_point(t)
            t -= (1 + Y * Y) / (2 * Y * Yp * s.D)
        psi, _ = s.psi(t)
        assert abs(abs(psi) - 1) < 1e-12
        with pytest.raises(PoleError):
            s.position_velocity(t)


class TestFamilyResiduals:
    @pytest.mark.parametrize(
        "g",
        [
            germ(1, 0, 1, 0),
            germ(0, 1, 1, 0),
            germ(1, 1, 2, 2),
            germ(1, 2, 1, 1),
        ],
        ids=["rational", "tan", "exponential", "generic"],
    )
    def test_hundred_points(self, g, seed):
        s = solve(g)
        r = random.Random(seed + 7)
        count = 0
        while count < 100:
            t = g.t0 + cmath.rect(r.uniform(0.05, 1.0), r.uniform(0, 2 * math.pi))
            try:
                res = eq1_residual(s, t)
            except PoleError:
                continue
            count += 1
            assert res < 1e-8

    @pytest.mark.parametrize(
        "g",
        [germ(1, 0, 1, 0), germ(0, 1, 1, 0), germ(1, 1, 2, 2), germ(1, 2, 1, 1)],
        ids=["rational", "tan", "exponential", "generic"],
    )
    def test_first_integrals_constant_along_samplers(self, g, seed):
        s = solve(g)
        r = random.Random(seed + 8)
        nonnull = g.x != 0 and g.y != 0
        fi = first_integrals(g) if nonnull else None
        count = 0
        while count < 25:
            t = g.t0 + cmath.rect(r.uniform(0.05, 1.0), r.uniform(0, 2 * math.pi))
            try:
                (u, v), (du, dv) = s.position_velocity(t)
            except PoleError:
                continue
            count += 1
            if nonnull:
                A_t = du * dv / (u * u + v * v)
                B_t = u / du + v / dv
                assert abs(A_t - fi.A) < 1e-9 * (1 + abs(fi.A))
                assert abs(B_t - fi.B) < 1e-9 * (1 + abs(fi.B))
            else:
                assert abs(du * dv) < 1e-12
