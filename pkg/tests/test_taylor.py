"""Series expansion of geodesics and the nearest-singularity estimator."""

import math

from cliftonpohl.taylor import geodesic_series, nearest_singularity, taylor_step


def test_rational_series():
    # u = 1/(1-t): every Taylor coefficient equals 1
    U, V = geodesic_series((1, 0, 1, 0), 10)
    assert all(abs(c - 1) < 1e-12 for c in U)
    assert all(abs(c) == 0 for c in V)


def test_tan_series():
    U, _ = geodesic_series((0, 1, 1, 0), 7)
    expected = [0, 1, 0, 1 / 3, 0, 2 / 15, 0, 17 / 315]
    assert all(abs(u - e) < 1e-12 for u, e in zip(U, expected))


def test_mini_step_matches_closed_form():
    # order-4 truncation: position error ~h^5, velocity error ~5 h^4
    st = taylor_step((1, 0, 1, 0), 1e-3, order=4)
    assert abs(st[0] - 1 / (1 - 1e-3)) < 5e-15
    assert abs(st[2] - 1 / (1 - 1e-3) ** 2) < 1e-11


def test_singularity_of_rational():
    off, spread = nearest_singularity((1 / 0.7, 0, 1 / 0.49, 0))
    assert abs(off - 0.7) < 1e-10
    assert spread < 1e-10


def test_singularity_of_tan():
    s = (math.tan(1.2), 1.0, 1 / math.cos(1.2) ** 2, 0.0)
    off, _ = nearest_singularity(s)
    assert abs(off - (math.pi / 2 - 1.2)) < 1e-10


def test_tan_from_far_needs_tolerance():
    # two comparably distant poles contaminate the ratios; estimate is
    # coarse but directionally right
    s = (math.tan(0.2), 1.0, 1 / math.cos(0.2) ** 2, 0.0)
    off, spread = nearest_singularity(s)
    assert abs(off - (math.pi / 2 - 0.2)) < 5e-2
    assert spread < 0.35


def test_entire_solution_reports_nothing_close():
    est = nearest_singularity((1, 1, 1, 1))
    assert est is None or abs(est[0]) > 5
