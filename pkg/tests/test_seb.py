import math

import numpy as np
import pytest

from conftest import disk, spd
from siegelkit.errors import ContractViolation
from siegelkit.seb import (
    KLEIN_DISK,
    POINCARE_DISK,
    SPD,
    PointCloud,
    SebConfig,
    enclosing_radius,
    farthest_point,
    seb_siegel_klein,
    seb_siegel_poincare,
    seb_spd,
)
from siegelkit.siegel_klein import convert_W_to_K, dist_klein_exact, klein_geodesic_cut
from siegelkit.siegel_poincare_disk import dist_kobayashi, geodesic_cut_disk, membership_disk
from siegelkit.siegel_upper import spd_dist


def test_cloud_validation():
    with pytest.raises(ContractViolation):
        PointCloud(SPD, [])
    with pytest.raises(ContractViolation):
        PointCloud("sphere", [np.eye(2)])
    with pytest.raises(ContractViolation):
        SebConfig(iterations=0)


def test_single_point_balls(rng):
    P = spd(rng, 2)
    b = seb_spd(PointCloud(SPD, [P]), SebConfig(10))
    assert b.radius == pytest.approx(0, abs=1e-12)
    W = disk(rng, 2)
    b = seb_siegel_poincare(PointCloud(POINCARE_DISK, [W]), SebConfig(10))
    assert b.radius < 1e-8
    b = seb_siegel_klein(PointCloud(KLEIN_DISK, [W]), SebConfig(10))
    assert b.radius == 0


def test_farthest_point(rng):
    cloud = PointCloud(KLEIN_DISK, [0.5 * np.eye(2), np.zeros((2, 2))])
    i, dist = farthest_point(np.zeros((2, 2)), cloud)
    assert i == 0 and dist == pytest.approx(0.5 * math.log(3), abs=1e-8)
    pts = [disk(rng, 2) for _ in range(6)]
    c = disk(rng, 2)
    i, dist = farthest_point(c, PointCloud(POINCARE_DISK, pts))
    scan = [dist_kobayashi(c, p) for p in pts]
    assert i == int(np.argmax(scan)) and dist == pytest.approx(max(scan))
    i, _ = farthest_point(c, PointCloud(KLEIN_DISK, pts))
    assert i == int(np.argmax([dist_klein_exact(c, p) for p in pts]))


def test_farthest_ties_lowest_index():
    a = 0.3 * np.eye(2)
    i, _ = farthest_point(np.zeros((2, 2)), PointCloud(KLEIN_DISK, [-a, a]))
    assert i == 0
    i, _ = farthest_point(np.zeros((2, 2)), PointCloud(POINCARE_DISK, [a, -a]))
    assert i == 0


def test_spd_two_points():
    b = seb_spd(PointCloud(SPD, [np.eye(2), np.diag([4.0, 1.0])]), SebConfig(1000))
    assert b.center == pytest.approx(np.diag([2.0, 1.0]), abs=1e-2)
    assert b.radius == pytest.approx(0.5 * math.log(4), abs=1e-2)


def test_symmetric_pairs_center_at_origin():
    a = 0.3 * np.eye(2)
    bp = seb_siegel_poincare(PointCloud(POINCARE_DISK, [a, -a]), SebConfig(500))
    assert np.abs(bp.center).max() < 1e-3
    bk = seb_siegel_klein(PointCloud(KLEIN_DISK, [a, -a]), SebConfig(1000))
    assert np.abs(bk.center).max() < 1e-3


def test_two_point_midpoint_radius(rng):
    W1, W2 = disk(rng, 2), disk(rng, 2)
    cloud = PointCloud(POINCARE_DISK, [W1, W2])
    mid = geodesic_cut_disk(W1, W2, 0.5)
    assert enclosing_radius(mid, cloud) == pytest.approx(0.5 * dist_kobayashi(W1, W2), abs=1e-8)
    kc = PointCloud(KLEIN_DISK, [W1, W2])
    kmid = klein_geodesic_cut(W1, W2, 0.5)
    assert enclosing_radius(kmid, kc) == pytest.approx(0.5 * dist_klein_exact(W1, W2), abs=1e-8)
    assert enclosing_radius(W1, PointCloud(POINCARE_DISK, [W1])) == 0


def test_recomputed_radius_matches_trace(rng):
    pts = [disk(rng, 2) for _ in range(5)]
    b = seb_siegel_klein(PointCloud(KLEIN_DISK, pts), SebConfig(1, eps=1e-12, trace=True))
    # after one step the trace holds the radius at the starting point
    assert b.trace[0].radius == pytest.approx(enclosing_radius(pts[0], PointCloud(KLEIN_DISK, pts)), abs=1e-9)


def test_counters(rng):
    pts = [disk(rng, 2) for _ in range(4)]
    L = 20
    bp = seb_siegel_poincare(PointCloud(POINCARE_DISK, pts), SebConfig(L))
    assert bp.loop_counters["matrix_sqrt"] == 2 * len(pts) * L
    bk = seb_siegel_klein(PointCloud(KLEIN_DISK, [convert_W_to_K(w) for w in pts]), SebConfig(L))
    assert bk.loop_counters["matrix_sqrt"] == 0
    assert bk.loop_counters["operator_norm"] > 0


def test_center_in_domain_and_radius_shrinks(rng):
    pts = [disk(rng, 2) for _ in range(6)]
    for solver, model in ((seb_siegel_poincare, POINCARE_DISK), (seb_siegel_klein, KLEIN_DISK)):
        cloud = PointCloud(model, pts)
        b = solver(cloud, SebConfig(200))
        assert membership_disk(b.center).ok
        assert b.radius < enclosing_radius(pts[0], cloud)


def test_deterministic_traces(rng):
    pts = [disk(rng, 2) for _ in range(4)]
    cfg = SebConfig(30, trace=True)
    a = seb_siegel_klein(PointCloud(KLEIN_DISK, pts), cfg)
    b = seb_siegel_klein(PointCloud(KLEIN_DISK, pts), cfg)
    assert a.trace == b.trace
    assert np.array_equal(a.center, b.center)


def test_spd_radius_trend(rng):
    pts = [spd(rng, 3) for _ in range(10)]
    cloud = PointCloud(SPD, pts)
    balls = [seb_spd(cloud, SebConfig(L)) for L in (5, 150)]
    assert balls[1].radius <= balls[0].radius
    # multi-start oracle: best radius over restarts from other cloud points
    starts = [seb_spd(cloud, SebConfig(150, init=p)).radius for p in pts[1:4]]
    assert balls[1].radius <= 1.05 * min(starts)
    assert max(spd_dist(balls[1].center, p) for p in pts) == pytest.approx(balls[1].radius)
