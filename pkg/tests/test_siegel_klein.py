import math

import numpy as np
import pytest

import oracles
from conftest import disk
from siegelkit.counters import counting
from siegelkit.errors import ContractViolation
from siegelkit.hyperbolic_plane import dist_klein_1d
from siegelkit.siegel_klein import (
    boundary_bisection,
    convert_K_to_W,
    convert_W_to_K,
    cut_parameter,
    dist_klein_bounds,
    dist_klein_diagonal,
    dist_klein_diagonal_entries,
    dist_klein_exact,
    dist_klein_line_origin,
    dist_klein_origin,
    dist_klein_via_poincare,
    exit_parameters,
    frobenius_klein_distance,
    hilbert_distance_1d,
    klein_geodesic_cut,
    klein_geodesic_origin,
)
from siegelkit.siegel_poincare_disk import dist_disk_origin, dist_kobayashi

HALF_LOG3 = 0.5 * math.log(3)


def test_hilbert_1d():
    assert hilbert_distance_1d(-1, 2) == pytest.approx(math.log(2))
    assert hilbert_distance_1d(-1e9, 1e9) < 1e-8
    assert hilbert_distance_1d(-2, 2) == pytest.approx(HALF_LOG3)
    with pytest.raises(ContractViolation):
        hilbert_distance_1d(0.5, 2)
    # widening either end shortens the distance
    assert hilbert_distance_1d(-1.5, 2) < hilbert_distance_1d(-1, 2)
    assert hilbert_distance_1d(-1, 3) < hilbert_distance_1d(-1, 2)


def test_origin(rng):
    assert dist_klein_origin(np.zeros((2, 2))) == 0
    assert dist_klein_origin(0.5 * np.eye(2)) == pytest.approx(HALF_LOG3)
    K = disk(rng, 3)
    assert dist_klein_origin(K) == pytest.approx(0.5 * dist_disk_origin(K), abs=1e-12)


def test_exact_matches_svd_oracle(rng):
    for d in (1, 2, 3):
        for _ in range(5):
            a, b = disk(rng, d), disk(rng, d)
            assert dist_klein_exact(a, b) == pytest.approx(oracles.hilbert_oracle(a, b), abs=1e-9)


def test_exact_special_cases(rng):
    K = disk(rng, 2)
    assert dist_klein_exact(K, K) == 0.0
    assert dist_klein_exact(np.zeros((2, 2)), K) == pytest.approx(dist_klein_origin(K), abs=1e-10)
    a, b = 0.3 + 0.2j, -0.5 + 0.1j
    assert dist_klein_exact([[a]], [[b]]) == pytest.approx(dist_klein_1d(a, b), abs=1e-10)
    assert dist_klein_exact(np.diag([0.5, 0]), np.diag([0, 0.5])) == pytest.approx(math.log(2), abs=1e-10)


def test_exit_parameters_origin():
    am, ap = exit_parameters(np.zeros((2, 2)), 0.5 * np.eye(2))
    assert am == pytest.approx(-2) and ap == pytest.approx(2)


def test_via_poincare(rng):
    # equal in dimension one and along lines through the origin, not in general
    a, b = disk(rng, 1), disk(rng, 1)
    assert dist_klein_via_poincare(a, b) == pytest.approx(dist_klein_exact(a, b), abs=1e-10)
    K = disk(rng, 2)
    assert dist_klein_via_poincare(0.3 * K, K) == pytest.approx(dist_klein_exact(0.3 * K, K), abs=1e-9)
    gap = dist_klein_via_poincare(np.diag([0.5, 0]), np.diag([0, 0.5])) - math.log(2)
    assert abs(gap) > 0.1


def test_line_origin(rng):
    K = disk(rng, 2)
    assert dist_klein_line_origin(K, K) == 0
    assert dist_klein_line_origin(0.2 * np.eye(2), 0.6 * np.eye(2)) == pytest.approx(
        dist_klein_exact(0.2 * np.eye(2), 0.6 * np.eye(2)), abs=1e-9
    )
    assert dist_klein_line_origin(K, 0 * K) == pytest.approx(dist_klein_origin(K), abs=1e-12)
    assert dist_klein_line_origin(K, -0.5 * K) == pytest.approx(dist_klein_exact(K, -0.5 * K), abs=1e-9)
    with pytest.raises(ContractViolation):
        dist_klein_line_origin(K, disk(rng, 2))
    # trace can vanish on valid inputs
    T = np.diag([0.4, -0.4])
    assert dist_klein_line_origin(T, 2 * T) == pytest.approx(dist_klein_exact(T, 2 * T), abs=1e-9)


def test_diagonal(rng):
    assert dist_klein_diagonal(np.zeros((2, 2)), np.diag([0.5, 0])) == pytest.approx(HALF_LOG3)
    D = np.diag([0.3, -0.2j])
    assert dist_klein_diagonal(D, D) == 0
    for _ in range(10):
        a = np.diag(0.9 * np.sqrt(rng.uniform(size=4)) * np.exp(2j * np.pi * rng.uniform(size=4)))
        b = np.diag(0.9 * np.sqrt(rng.uniform(size=4)) * np.exp(2j * np.pi * rng.uniform(size=4)))
        assert dist_klein_diagonal(a, b) == pytest.approx(dist_klein_exact(a, b), abs=1e-9)
        assert dist_klein_diagonal(a, b) == pytest.approx(
            dist_klein_diagonal_entries(np.diagonal(a), np.diagonal(b))
        )
    with pytest.raises(ContractViolation):
        dist_klein_diagonal(disk(rng, 2) + 0.01, np.zeros((2, 2)))


def test_bisection_bracket(rng):
    br = boundary_bisection(np.zeros((2, 2)), 0.5 * np.eye(2), 1e-10)
    assert br.alpha_minus[0] <= -2 <= br.alpha_minus[1]
    assert br.alpha_plus[0] <= 2 <= br.alpha_plus[1]
    assert br.width <= 1e-10
    a, b = disk(rng, 3), disk(rng, 3)
    br = boundary_bisection(a, b, 1e-9)
    K21 = b - a
    for inner, outer in ((br.alpha_minus[1], br.alpha_minus[0]), (br.alpha_plus[0], br.alpha_plus[1])):
        assert oracles.opnorm(a + inner * K21) < 1 + 1e-12
        assert oracles.opnorm(a + outer * K21) > 1 - 1e-12
    with pytest.raises(ContractViolation):
        boundary_bisection(a, a, 1e-9)


def test_bisection_diagonal_roots(rng):
    a = np.diag([0.3 + 0.1j, -0.5])
    b = np.diag([-0.2j, 0.6])
    br = boundary_bisection(a, b, 1e-11)
    am, ap = exit_parameters(a, b)
    assert br.alpha_minus[0] - 1e-11 <= am <= br.alpha_minus[1] + 1e-11
    assert br.alpha_plus[0] - 1e-11 <= ap <= br.alpha_plus[1] + 1e-11


def test_bounds(rng):
    K = disk(rng, 2)
    b = dist_klein_bounds(K, K)
    assert (b.lower, b.upper) == (0, 0)
    b = dist_klein_bounds(np.zeros((2, 2)), 0.5 * np.eye(2), 1e-10)
    assert abs(b.lower - HALF_LOG3) < 1e-9 and abs(b.upper - HALF_LOG3) < 1e-9
    a, c = disk(rng, 2), disk(rng, 2)
    widths = []
    for eps in (1e-4, 1e-6, 1e-8):
        b = dist_klein_bounds(a, c, eps)
        assert b.lower <= dist_klein_exact(a, c) <= b.upper
        widths.append(b.width)
    assert widths[0] > widths[1] > widths[2]


def test_bisection_is_counted(rng):
    with counting() as c:
        dist_klein_bounds(disk(rng, 2), disk(rng, 2), 1e-8)
    assert c.operator_norm > 10 and c.matrix_sqrt == 0


def test_conversions(rng):
    assert np.all(convert_K_to_W(np.zeros((2, 2))) == 0)
    W = convert_K_to_W(0.5 * np.eye(2))
    assert W == pytest.approx(0.2679491924311227 * np.eye(2))
    assert convert_W_to_K(W) == pytest.approx(0.5 * np.eye(2), abs=1e-12)
    for _ in range(5):
        K = disk(rng, 3)
        assert convert_W_to_K(convert_K_to_W(K)) == pytest.approx(K, abs=1e-11)
        W = disk(rng, 3)
        assert dist_klein_origin(convert_W_to_K(W)) == pytest.approx(dist_kobayashi(np.zeros((3, 3)), W), abs=1e-10)


def test_frobenius_bound(rng):
    K = disk(rng, 3)
    assert frobenius_klein_distance(K, K, math.sqrt(3)) == 0
    a, b = 0.3 + 0.1j, -0.4j
    assert frobenius_klein_distance([[a]], [[b]], 1) == pytest.approx(dist_klein_1d(a, b), abs=1e-10)
    for d in (2, 3):
        for _ in range(10):
            x, y = disk(rng, d), disk(rng, d)
            assert frobenius_klein_distance(x, y, math.sqrt(d)) <= dist_klein_exact(x, y)
    with pytest.raises(ContractViolation):
        frobenius_klein_distance(0.9 * np.eye(2), np.zeros((2, 2)), 1.0)


def test_geodesics(rng):
    K = 0.5 * np.eye(2)
    assert klein_geodesic_origin(K, 0.5) == pytest.approx(0.5358983848622454 * K)
    K = disk(rng, 3)
    for t in (0.0, 0.3, 0.7, 1.0):
        assert dist_klein_origin(klein_geodesic_origin(K, t)) == pytest.approx(t * dist_klein_origin(K), abs=1e-10)
    a, b = disk(rng, 2), disk(rng, 2)
    assert np.array_equal(klein_geodesic_cut(a, b, 0), a)
    assert np.array_equal(klein_geodesic_cut(a, b, 1), b)
    Z = np.zeros((2, 2))
    assert klein_geodesic_cut(Z, b, 0.4) == pytest.approx(klein_geodesic_origin(b, 0.4), abs=1e-8)
    m = klein_geodesic_cut(a, b, 0.5)
    assert dist_klein_exact(a, m) == pytest.approx(dist_klein_exact(m, b), abs=1e-8)


def test_cut_parameter_closed_form():
    # symmetric chord around [0, 1]: the midpoint of the distance is the midpoint of the segment
    assert cut_parameter(-1.0, 2.0, 0.5) == pytest.approx(0.5)
    assert cut_parameter(-1.0, 2.0, 0.0) == 0.0
