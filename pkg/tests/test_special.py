"""Special-function kernel: branch policy, identities, oracles."""

import cmath
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliftonpohl.errors import PoleError, SingularPathError
from cliftonpohl.special import (
    EllipticTriple,
    artanh_principal,
    elliptic_F,
    jacobi_elliptic,
    _jacobi_raw,
)


def artanh_series(z: complex, terms: int = 60) -> complex:
    """Independent oracle: sum z^(2k+1)/(2k+1), |z| < 1."""
    acc = 0j
    p = z
    z2 = z * z
    for k in range(terms):
        acc += p / (2 * k + 1)
        p *= z2
    return acc


def quad_F(z: complex, m: complex, n: int = 4000) -> complex:
    """Independent oracle: composite Simpson along the straight segment."""
    def f(t: complex) -> complex:
        return 1.0 / cmath.sqrt((1 - t * t) * (1 - m * t * t))

    h = z / n
    acc = f(0) + f(z)
    for i in range(1, n):
        acc += f(i * h) * (4 if i % 2 else 2)
    return acc * h / 3.0


complexes = st.builds(
    cmath.rect, st.floats(0.0, 0.9), st.floats(0.0, 2.0 * math.pi)
)


class TestArtanh:
    def test_fixed_point_zero(self):
        assert artanh_principal(0) == 0

    def test_imaginary_unit(self):
        assert abs(artanh_principal(1j) - 1j * math.pi / 4) < 1e-15

    def test_half_against_series(self):
        want = artanh_series(0.5)
        got = artanh_principal(0.5)
        assert abs(got - 0.5493061443340548) < 1e-15
        assert abs(got - want) < 1e-15

    def test_poles(self):
        for z in (1.0, -1.0):
            with pytest.raises(PoleError):
                artanh_principal(z)

    @given(complexes)
    @settings(max_examples=80, deadline=None)
    def test_roundtrip(self, z):
        assert abs(cmath.tanh(artanh_principal(z)) - z) < 1e-12

    @given(complexes)
    @settings(max_examples=60, deadline=None)
    def test_odd(self, z):
        assert abs(artanh_principal(-z) + artanh_principal(z)) < 1e-15

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            artanh_principal(complex(float("nan"), 0.0))


class TestJacobi:
    def test_origin(self):
        t = jacobi_elliptic(0, 0.3 + 0.1j)
        assert t == EllipticTriple(0j, 1 + 0j, 1 + 0j)

    def test_trigonometric_degeneration(self):
        for z in (0.4, 1.1 - 0.6j, -0.3 + 0.8j):
            t = jacobi_elliptic(z, 0)
            assert abs(t.sn - cmath.sin(z)) < 1e-12
            assert abs(t.cn - cmath.cos(z)) < 1e-12
            assert abs(t.dn - 1) < 1e-12

    def test_hyperbolic_degeneration(self):
        for z in (0.4, 0.9 + 0.2j, -1.2 - 0.4j):
            t = jacobi_elliptic(z, 1)
            sech = 1.0 / cmath.cosh(z)
            assert abs(t.sn - cmath.tanh(z)) < 1e-12
            assert abs(t.cn - sech) < 1e-12
            assert abs(t.dn - sech) < 1e-12

    def test_identity_grid(self, seed):
        r = random.Random(seed)
        checked = 0
        while checked < 500:
            z = cmath.rect(r.uniform(0, 2), r.uniform(0, 2 * math.pi))
            m = cmath.rect(r.uniform(0, 2), r.uniform(0, 2 * math.pi))
            s, c, d = _jacobi_raw(z, m)
            if max(abs(s), abs(c), abs(d)) > 5:
                continue
            checked += 1
            d1, d2 = EllipticTriple(s, c, d).identity_defects(m)
            assert d1 < 1e-10 and d2 < 1e-10

    def test_pole_detection(self):
        # sn(z, m) has its nearest pole at z = i K(1-m); evaluating there
        # must trip the magnitude threshold
        from cliftonpohl.special import carlson_rf

        kprime = carlson_rf(0, 1 - 0.5, 1).real  # K(1-m) for m = 1/2
        with pytest.raises(PoleError):
            jacobi_elliptic(1j * kprime, 0.5)

    def test_reciprocal_parameter_on_cut(self):
        # m > 1 sits on the classical branch cut; the Landen chain must
        # still match sn(u, m) = sn(u sqrt(m), 1/m)/sqrt(m)
        u, m = 0.4, 2.0
        s, _, _ = _jacobi_raw(u, m)
        s2, _, _ = _jacobi_raw(u * math.sqrt(m), 1 / m)
        assert abs(s - s2 / math.sqrt(m)) < 1e-12

    @given(
        st.builds(cmath.rect, st.floats(0.0, 1.5), st.floats(0.0, 2 * math.pi)),
        st.builds(cmath.rect, st.floats(0.0, 1.5), st.floats(0.0, 2 * math.pi)),
    )
    @settings(max_examples=60, deadline=None)
    def test_identities_hypothesis(self, z, m):
        s, c, d = _jacobi_raw(z, m)
        if max(abs(s), abs(c), abs(d)) > 10:
            return
        assert abs(s * s + c * c - 1) < 1e-9
        assert abs(d * d + m * s * s - 1) < 1e-9


class TestEllipticF:
    def test_zero(self):
        assert elliptic_F(0, 0.7) == 0

    def test_arcsin_degeneration(self):
        for z in (0.3, 0.5 + 0.2j, -0.6j):
            assert abs(elliptic_F(z, 0) - cmath.asin(z)) < 1e-12

    def test_against_quadrature_oracle(self):
        got = elliptic_F(0.3, 0.5)
        assert abs(got - 0.3070549304957526) < 1e-12  # frozen from quad_F
        assert abs(got - quad_F(0.3, 0.5)) < 1e-12

    def test_complex_against_quadrature(self, seed):
        r = random.Random(seed + 1)
        for _ in range(25):
            z = cmath.rect(r.uniform(0.1, 0.7), r.uniform(0, 2 * math.pi))
            m = cmath.rect(r.uniform(0.0, 0.9), r.uniform(0, 2 * math.pi))
            assert abs(elliptic_F(z, m) - quad_F(z, m)) < 1e-10

    def test_roundtrip(self, seed):
        r = random.Random(seed + 2)
        for _ in range(100):
            z = cmath.rect(r.uniform(0.0, 0.7), r.uniform(0, 2 * math.pi))
            m = cmath.rect(r.uniform(0.0, 0.9), r.uniform(0, 2 * math.pi))
            s, _, _ = _jacobi_raw(elliptic_F(z, m), m)
            assert abs(s - z) < 1e-9

    def test_singular_path(self):
        with pytest.raises(SingularPathError):
            elliptic_F(1.5, 0.25)  # branch point t = 1 on the segment
        with pytest.raises(SingularPathError):
            elliptic_F(2.5, 0.25)  # also t = 1/sqrt(m) = 2
