"""Siegel-Klein disk: the Hilbert geometry of the open operator-norm unit ball.

Geodesics are straight segments. The distance between ``K1`` and ``K2``
depends only on where the line ``K1 + a (K2 - K1)`` leaves the ball, at
parameters ``a_minus < 0`` and ``a_plus > 1``.
"""

from dataclasses import dataclass
import math

import numpy as np

from ._backend import kernels
from .counters import bump
from .errors import ContractViolation, NumericalConvergence
from .matrix_core import (
    MAX_ITER,
    _start_stream,
    as_matrix,
    frobenius_norm,
    hermitian_eigen,
    hermitian_matrix_function,
    operator_norm,
)
from .siegel_poincare_disk import (
    _check_t,
    dist_kobayashi,
    disk_point,
    origin_alpha,
)

BISECTION_EPS = 1e-10
BISECTION_TOL = 1e-12
# relative safety on the inner radius estimate (both norms are power-method lower bounds)
_R0_SAFETY = 1e-10


@dataclass(frozen=True)
class BoundaryBracket:
    """Certified intervals ``(l, u)`` around both boundary parameters."""

    alpha_minus: tuple
    alpha_plus: tuple
    evaluations: int = 0

    @property
    def width(self):
        return max(self.alpha_minus[1] - self.alpha_minus[0], self.alpha_plus[1] - self.alpha_plus[0])

    def midpoints(self):
        return 0.5 * sum(self.alpha_minus), 0.5 * sum(self.alpha_plus)


@dataclass(frozen=True)
class DistanceBounds:
    lower: float
    upper: float
    bracket: BoundaryBracket = None

    @property
    def midpoint(self):
        return 0.5 * (self.lower + self.upper)

    @property
    def width(self):
        return self.upper - self.lower


def _h(am, ap):
    # endpoint-tolerant Hilbert formula; a bracket touching {0, 1} gives +inf
    if am >= 0.0 or ap <= 1.0:
        return math.inf
    # (1 - a-)/|a-| and a+/(a+ - 1) both tend to 1 for an unbounded chord
    lm = 0.0 if math.isinf(am) else math.log1p(-am) - math.log(-am)
    lp = 0.0 if math.isinf(ap) else math.log(ap) - math.log(ap - 1.0)
    return 0.5 * (lm + lp)


def hilbert_distance_1d(alpha_minus, alpha_plus):
    """``1/2 log(a+ (1 - a-) / (|a-| (a+ - 1)))`` for the chord ``[a-, a+]`` through 0 and 1."""
    if not alpha_minus < 0.0 or not alpha_plus > 1.0:
        raise ContractViolation(f"need alpha_minus < 0 < 1 < alpha_plus, got ({alpha_minus}, {alpha_plus})")
    return max(_h(float(alpha_minus), float(alpha_plus)), 0.0)


def klein_point(K, name="K"):
    return disk_point(K, name)


def dist_klein_origin(K):
    """``1/2 log((1 + ||K||_O) / (1 - ||K||_O))``, half the Poincare distance from 0."""
    K = klein_point(K)
    return math.atanh(operator_norm(K))


def dist_klein_line_origin(K1, K2, tol=1e-9):
    """Distance between ``K1`` and ``K2 = lam K1`` (a line through the origin).

    ``lam`` is read off the largest-modulus entry of ``K1``; on that line the
    distance reduces to ``|atanh(lam n) - atanh(n)|`` with ``n = ||K1||_O``.
    """
    K1 = klein_point(K1, "K1")
    K2 = klein_point(K2, "K2")
    flat = np.abs(K1).ravel()
    j = int(np.argmax(flat))
    if flat[j] == 0.0:
        raise ContractViolation("K1 must be nonzero")
    lam = K2.ravel()[j] / K1.ravel()[j]
    if abs(lam.imag) > tol or frobenius_norm(K2 - lam.real * K1) > tol:
        raise ContractViolation("K2 is not a real multiple of K1")
    n = operator_norm(K1)
    return abs(math.atanh(lam.real * n) - math.atanh(n))


def _diag_roots(k1, k21):
    """Per-coordinate roots of ``|k1 + a k21|^2 = 1``; returns ``(a_minus, a_plus)``."""
    a = k21.real ** 2 + k21.imag ** 2
    b = 2.0 * (k1.real * k21.real + k1.imag * k21.imag)
    c = k1.real ** 2 + k1.imag ** 2 - 1.0
    live = a > 0.0
    if not np.any(live):
        return None
    a, b, c = a[live], b[live], c[live]
    # c < 0 so the discriminant is positive and the roots have opposite signs
    q = -0.5 * (b + np.copysign(np.sqrt(b * b - 4.0 * a * c), b))
    r1 = q / a
    r2 = c / q
    lo = np.minimum(r1, r2)
    hi = np.maximum(r1, r2)
    return float(np.max(lo)), float(np.min(hi))


def dist_klein_diagonal_entries(k1, k2):
    """Exact distance between diagonal points given by their diagonals, in O(d).

    Each coordinate bounds the chord by the roots of a real quadratic; the
    chord is the intersection, so ``a_minus`` is the largest negative root
    and ``a_plus`` the smallest positive one.
    """
    k1 = np.asarray(k1, dtype=np.complex128)
    k2 = np.asarray(k2, dtype=np.complex128)
    if k1.shape != k2.shape or k1.ndim != 1:
        raise ContractViolation("diagonals must be 1-d arrays of equal length")
    if np.any(np.abs(k1) >= 1.0) or np.any(np.abs(k2) >= 1.0):
        raise ContractViolation("diagonal entries must lie in the open unit disk")
    roots = _diag_roots(k1, k2 - k1)
    if roots is None:
        return 0.0
    return hilbert_distance_1d(*roots)


def _require_diagonal(K, name):
    K = as_matrix(K, name)
    off = K - np.diag(np.diagonal(K))
    if frobenius_norm(off) > 1e-12:
        raise ContractViolation(f"{name} is not diagonal")
    return np.diagonal(K).copy()


def dist_klein_diagonal(K1, K2):
    """Exact Hilbert distance between diagonal points (linear in ``d``)."""
    return dist_klein_diagonal_entries(_require_diagonal(K1, "K1"), _require_diagonal(K2, "K2"))


def _opnorm_checked(M, x0, tol):
    s, x, _, ok = kernels.opnorm(M, x0, tol, MAX_ITER)
    if not ok:
        raise NumericalConvergence("operator norm did not converge")
    return s, x


def boundary_bisection(K1, K2, eps=BISECTION_EPS, tol=BISECTION_TOL, rng=None):
    """Bracket both exit parameters of the line ``K1 + a (K2 - K1)``.

    Inner ends start at the certified radius ``(1 - ||K1||_O) / ||K2 - K1||_O``
    (or at 0 and 1 themselves), outer ends are found by doubling until the
    operator norm exceeds 1, then both brackets are bisected to width ``eps``.
    """
    if eps <= 0:
        raise ContractViolation("eps must be positive")
    K1 = klein_point(K1, "K1")
    K2 = klein_point(K2, "K2")
    return _bisect(K1, K2 - K1, eps, tol, rng)


def _bisect(K1, K21, eps, tol, rng=None, x0=None):
    if frobenius_norm(K21) == 0.0:
        raise ContractViolation("K1 == K2: no boundary search for a degenerate line")
    if x0 is None:
        x0 = next(_start_stream(rng, K1.shape[0], block=False))
    n1, _ = _opnorm_checked(K1, x0, tol)
    n21, _ = _opnorm_checked(K21, x0, tol)
    r0 = (1.0 - n1 * (1.0 + _R0_SAFETY)) / (n21 * (1.0 + _R0_SAFETY))
    r0 = max(r0, 0.0)
    ip, op, ev_p, ok_p = kernels.boundary_search(K1, K21, 1.0, 1.0, r0, eps, tol, MAX_ITER, x0)
    im, om, ev_m, ok_m = kernels.boundary_search(K1, K21, -1.0, 0.0, r0, eps, tol, MAX_ITER, x0)
    bump("operator_norm", ev_p + ev_m + 2)
    if not (ok_p and ok_m):
        raise NumericalConvergence("boundary bisection failed")
    return BoundaryBracket((om, im), (ip, op), ev_p + ev_m + 2)


def _bounds_from_bracket(br):
    lower = _h(br.alpha_minus[0], br.alpha_plus[1])
    upper = _h(br.alpha_minus[1], br.alpha_plus[0])
    return DistanceBounds(max(lower, 0.0), max(upper, 0.0), br)


def dist_klein_bounds(K1, K2, eps=BISECTION_EPS, tol=BISECTION_TOL, rng=None):
    """Certified ``lower <= rho_K(K1, K2) <= upper`` from a bisection bracket.

    Widening a chord shortens the Hilbert distance, so the outer bracket ends
    give the lower bound and the inner ends the upper bound.
    """
    K1 = klein_point(K1, "K1")
    K2 = klein_point(K2, "K2")
    if np.array_equal(K1, K2):
        return DistanceBounds(0.0, 0.0, None)
    return _bounds_from_bracket(_bisect(K1, K2 - K1, eps, tol, rng))


def exit_parameters(K1, K2):
    """Exact exit parameters ``(a_minus, a_plus)`` of the line through ``K1``, ``K2``.

    ``||K1 + a K21||_O = 1`` exactly when ``det(A + a B) = 0`` with
    ``A = [[-I, K1], [K1^H, -I]]`` (negative definite inside the disk) and
    ``B = [[0, K21], [K21^H, 0]]``. With ``-A = L L^H`` the crossings are the
    reciprocals of the eigenvalues of the Hermitian ``L^{-1} B L^{-H}``; the
    nearest crossing on each side comes from its extreme eigenvalues.
    """
    K1 = klein_point(K1, "K1")
    K2 = klein_point(K2, "K2")
    K21 = K2 - K1
    if frobenius_norm(K21) == 0.0:
        raise ContractViolation("K1 == K2: the line is degenerate")
    d = K1.shape[0]
    I = np.eye(d)
    Z = np.zeros((d, d))
    negA = np.block([[I, -K1], [-K1.conj().T, I]])
    B = np.block([[Z, K21], [K21.conj().T, Z]])
    S = hermitian_matrix_function(negA, "inv_sqrt")
    C = S @ B @ S
    mu = hermitian_eigen(0.5 * (C + C.conj().T)).eigenvalues
    return 1.0 / float(np.min(mu)), 1.0 / float(np.max(mu))


def dist_klein_exact(K1, K2):
    """Exact Hilbert distance from the exact exit parameters."""
    K1 = klein_point(K1, "K1")
    K2 = klein_point(K2, "K2")
    if np.array_equal(K1, K2):
        return 0.0
    return hilbert_distance_1d(*exit_parameters(K1, K2))


def convert_K_to_W(K):
    """Radial contraction ``K / (1 + sqrt(1 - ||K||_O^2))`` into the Poincare disk."""
    K = klein_point(K)
    n = operator_norm(K)
    return K / (1.0 + math.sqrt(1.0 - n * n))


def convert_W_to_K(W):
    """Radial expansion ``2 W / (1 + ||W||_O^2)`` into the Klein disk."""
    W = disk_point(W)
    n = operator_norm(W)
    return 2.0 * W / (1.0 + n * n)


def dist_klein_via_poincare(K1, K2):
    """Kobayashi distance between the radially converted points.

    Agrees with the Hilbert distance at ``d = 1`` and on lines through the
    origin; for ``d >= 2`` the two metrics differ in general.
    """
    return dist_kobayashi(convert_K_to_W(K1), convert_K_to_W(K2))


def frobenius_klein_distance(K1, K2, radius):
    """Hilbert distance in the Frobenius ball of the given radius, O(d^2).

    The chord solves ``||K1 + a K21||_F^2 = radius^2``, a real quadratic.
    With ``radius = sqrt(d)`` the ball contains the Siegel disk and the value
    is a lower bound on the Siegel-Klein distance.
    """
    K1 = as_matrix(K1, "K1")
    K2 = as_matrix(K2, "K2")
    if K1.shape != K2.shape:
        raise ContractViolation("dimension mismatch")
    if radius <= 0:
        raise ContractViolation("radius must be positive")
    r2 = float(radius) ** 2
    f1 = frobenius_norm(K1) ** 2
    if f1 >= r2 or frobenius_norm(K2) ** 2 >= r2:
        raise ContractViolation("points must lie inside the Frobenius ball")
    K21 = K2 - K1
    a = frobenius_norm(K21) ** 2
    if a == 0.0:
        return 0.0
    b = 2.0 * float(np.sum(K21 * K1.conj()).real)
    c = f1 - r2
    q = -0.5 * (b + math.copysign(math.sqrt(b * b - 4.0 * a * c), b))
    lo, hi = sorted((q / a, c / q))
    return hilbert_distance_1d(lo, hi)


def klein_geodesic_origin(K, t):
    """``alpha(t) K`` with ``dist_klein_origin`` growing linearly in ``t``."""
    t = _check_t(t)
    K = klein_point(K)
    return origin_alpha(operator_norm(K), t) * K


def cut_parameter(alpha_minus, alpha_plus, t):
    """Line parameter ``s`` in ``[0, 1]`` at fraction ``t`` of the Hilbert distance.

    On the chord ``[a-, a+]`` the distance from 0 to ``s`` is
    ``1/2 log((s - a-) a+ / (|a-| (a+ - s)))``; solving for ``e^{2 t D}``
    gives ``s = (c a+ + a-) / (1 + c)`` with ``c = e^{2 t D} |a-| / a+``.
    """
    if t == 0.0:
        return 0.0
    if t == 1.0:
        return 1.0
    D = _h(alpha_minus, alpha_plus)
    c = math.exp(2.0 * t * D) * abs(alpha_minus) / alpha_plus
    return (c * alpha_plus + alpha_minus) / (1.0 + c)


def cut_from_bracket(K1, K2, bracket, t):
    """Cut the segment ``[K1, K2]`` using an already computed bracket's midpoints."""
    s = cut_parameter(*bracket.midpoints(), t)
    return K1 + s * (K2 - K1)


def klein_geodesic_cut(K1, K2, t, eps=1e-8, tol=BISECTION_TOL, rng=None):
    """Point ``K1 + s (K2 - K1)`` at Hilbert distance ``t rho_K(K1, K2)`` from ``K1``.

    The line is fixed, so one tight bracket of its exit parameters gives
    ``s`` in closed form; the bracket width is kept well below ``eps``.
    """
    t = _check_t(t)
    K1 = klein_point(K1, "K1")
    K2 = klein_point(K2, "K2")
    if t == 0.0 or np.array_equal(K1, K2):
        return K1.copy()
    if t == 1.0:
        return K2.copy()
    br = _bisect(K1, K2 - K1, min(1e-3 * eps, BISECTION_EPS), tol, rng)
    return cut_from_bracket(K1, K2, br, t)
