"""Siegel upper space: complex symmetric ``Z = X + iY`` with ``Y`` positive-definite.

Covers the matrix cross-ratio and the eigenvalue distance, its truncated
power-series approximation, the SPD submanifold ``Z = iP`` with its geodesics,
real symplectic maps acting by ``(AZ + B)(CZ + D)^{-1}``, and the Cayley maps
to and from the Siegel disk.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import ContractViolation, DomainViolation, NumericalDomain
from .matrix_core import (
    as_matrix,
    frobenius_norm,
    general_spectrum,
    hermitian_eigen,
    hermitian_matrix_function,
    inverse,
    is_symmetric_complex,
    symmetrize,
)

SYM_TOL = 1e-10
SYMPLECTIC_TOL = 1e-9
SERIES_DELTA = 1e-12
SERIES_MAX_TERMS = 10_000


@dataclass(frozen=True)
class Membership:
    ok: bool
    margin: float
    symmetry_defect: float


def real_imag_parts(Z):
    """Return ``(X, Y)`` with ``X = (Z + conj Z)/2`` and ``Y = -(i/2)(Z - conj Z)``."""
    Z = np.asarray(Z, dtype=np.complex128)
    return Z.real.copy(), Z.imag.copy()


def membership_upper(Z):
    """Check ``Z`` symmetric with positive-definite imaginary part.

    ``margin`` is the smallest eigenvalue of ``Y``.
    """
    Z = as_matrix(Z, "Z")
    defect = frobenius_norm(Z - Z.T)
    _, Y = real_imag_parts(Z)
    Y = 0.5 * (Y + Y.T)
    lam_min = float(np.min(hermitian_eigen(Y).eigenvalues))
    ok = defect <= SYM_TOL * max(1.0, frobenius_norm(Z)) and lam_min > 0.0
    return Membership(ok, lam_min, defect)


def _upper_point(Z, name="Z"):
    Z = as_matrix(Z, name)
    m = membership_upper(Z)
    if not m.ok:
        raise DomainViolation(
            f"{name} not in the Siegel upper space "
            f"(min eig Y = {m.margin:.3e}, symmetry defect = {m.symmetry_defect:.3e})"
        )
    return Z


def _spd(P, name="P"):
    P = as_matrix(P, name)
    if np.max(np.abs(P.imag)) > SYM_TOL or not is_symmetric_complex(P, SYM_TOL * max(1.0, frobenius_norm(P))):
        raise DomainViolation(f"{name} must be real symmetric")
    P = 0.5 * (P.real + P.real.T)
    if np.min(hermitian_eigen(P).eigenvalues) <= 0.0:
        raise DomainViolation(f"{name} is not positive-definite")
    return P


def cross_ratio_R(Z1, Z2):
    """Matrix cross-ratio ``(Z1-Z2)(Z1-conj Z2)^-1 (conj Z1-conj Z2)(conj Z1-Z2)^-1``."""
    Z1 = _upper_point(Z1, "Z1")
    Z2 = _upper_point(Z2, "Z2")
    c1 = Z1.conj()
    c2 = Z2.conj()
    return (Z1 - Z2) @ inverse(Z1 - c2) @ (c1 - c2) @ inverse(c1 - Z2)


def cross_ratio_eigenvalues(R, realness_tol=1e-8):
    """Eigenvalues of ``R`` clamped into ``[0, 1)``.

    Slightly negative values (> -1e-10) become 0, values within 1e-10 above
    1 become ``1 - 1e-15``. Anything else raises :class:`NumericalDomain`.
    """
    spec = general_spectrum(R, realness_tol)
    if not spec.is_real:
        raise NumericalDomain(f"cross-ratio has non-real eigenvalues {spec.values}")
    r = spec.values.real.copy()
    if np.any(r <= -1e-10) or np.any(r >= 1.0 + 1e-10):
        raise NumericalDomain(f"cross-ratio eigenvalues {r} outside [0, 1)")
    r = np.clip(r, 0.0, 1.0 - 1e-15)
    return r


def dist_upper(Z1, Z2):
    """Siegel distance ``sqrt(sum_i log^2((1 + sqrt r_i)/(1 - sqrt r_i)))``."""
    r = cross_ratio_eigenvalues(cross_ratio_R(Z1, Z2))
    terms = 2.0 * np.arctanh(np.sqrt(r))
    return float(math.sqrt(np.sum(terms * terms)))


def dist_upper_truncated(Z1, Z2, terms):
    """Distance from the power series truncated after ``terms`` + 1 summands.

    ``2 sqrt(tr(R (sum_{i=0}^{terms} R^i / (2i+1))^2))``; nondecreasing in
    ``terms`` and converging to :func:`dist_upper`.
    """
    if int(terms) != terms or terms < 0:
        raise ContractViolation("terms must be a nonnegative integer")
    R = cross_ratio_R(Z1, Z2)
    d = R.shape[0]
    S = np.zeros_like(R)
    P = np.eye(d, dtype=np.complex128)
    for i in range(int(terms) + 1):
        S = S + P / (2 * i + 1)
        P = P @ R
    return _series_value(R, S)


def _series_value(R, S):
    tr = np.trace(R @ S @ S).real
    return 2.0 * math.sqrt(max(tr, 0.0))


def dist_upper_series(Z1, Z2, delta=SERIES_DELTA, max_terms=SERIES_MAX_TERMS):
    """Truncated series with the rule of thumb stop ``|tr(R^i/(2i+1))| < delta``.

    Returns ``(distance, terms_used)``.
    """
    if delta <= 0:
        raise ContractViolation("delta must be positive")
    R = cross_ratio_R(Z1, Z2)
    d = R.shape[0]
    S = np.zeros_like(R)
    P = np.eye(d, dtype=np.complex128)
    i = 0
    while i <= max_terms:
        term = P / (2 * i + 1)
        S = S + term
        if i > 0 and abs(np.trace(term)) < delta:
            break
        P = P @ R
        i += 1
    return _series_value(R, S), i


def spd_dist(P1, P2):
    """Affine-invariant distance ``||Log(P1^{-1/2} P2 P1^{-1/2})||_F``."""
    P1 = _spd(P1, "P1")
    P2 = _spd(P2, "P2")
    C = hermitian_matrix_function(P1, "inv_sqrt")
    lam = hermitian_eigen(_herm(C @ P2 @ C)).eigenvalues
    if np.min(lam) <= 0.0:
        raise NumericalDomain("congruence lost positive-definiteness")
    return float(np.sqrt(np.sum(np.log(lam) ** 2)))


def _herm(M):
    return 0.5 * (M + M.conj().T)


def spd_geodesic_cut(P1, P2, t):
    """Point at fraction ``t`` of the way from ``P1`` to ``P2``.

    ``P1^{1/2} (P1^{-1/2} P2 P1^{-1/2})^t P1^{1/2}``; ``t = 1/2`` is the
    geometric mean.
    """
    P1 = _spd(P1, "P1")
    P2 = _spd(P2, "P2")
    if t == 0:
        return P1.copy()
    h = hermitian_matrix_function(P1, "sqrt")
    hi = hermitian_matrix_function(P1, "inv_sqrt")
    mid = hermitian_matrix_function(_herm(hi @ P2 @ hi), "pow", t=t)
    out = (h @ mid @ h).real
    return 0.5 * (out + out.T)


@dataclass(frozen=True)
class SymplecticBlockMap:
    """Real ``2d x 2d`` block map ``[[A, B], [C, D]]``."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    @classmethod
    def identity(cls, d):
        I = np.eye(d)
        Z = np.zeros((d, d))
        return cls(I, Z.copy(), Z.copy(), I.copy())

    @classmethod
    def from_matrix(cls, S):
        S = np.asarray(S, dtype=float)
        d = S.shape[0] // 2
        if S.shape != (2 * d, 2 * d):
            raise ContractViolation(f"expected an even square matrix, got {S.shape}")
        return cls(S[:d, :d].copy(), S[:d, d:].copy(), S[d:, :d].copy(), S[d:, d:].copy())

    @property
    def dim(self):
        return self.A.shape[0]

    def matrix(self):
        return np.block([[self.A, self.B], [self.C, self.D]])

    def __matmul__(self, other):
        """Group product; ``(S @ T)`` acts as ``S`` after ``T``."""
        return SymplecticBlockMap.from_matrix(self.matrix() @ other.matrix())

    def __call__(self, Z):
        return symplectic_apply(self, Z)


def is_symplectic(S, tol=SYMPLECTIC_TOL):
    """Check the three block constraints; returns ``(ok, residuals)``."""
    A, B, C, D = S.A, S.B, S.C, S.D
    res = (
        frobenius_norm(A @ B.T - B @ A.T),
        frobenius_norm(C @ D.T - D @ C.T),
        frobenius_norm(A @ D.T - B @ C.T - np.eye(S.dim)),
    )
    return all(r <= tol for r in res), res


def symplectic_apply(S, Z):
    """``(AZ + B)(CZ + D)^{-1}``; raises :class:`SingularMatrix` if ``CZ + D`` is."""
    Z = _upper_point(Z)
    if S.dim != Z.shape[0]:
        raise ContractViolation("map and point dimensions differ")
    out = (S.A @ Z + S.B) @ inverse(S.C @ Z + S.D)
    return symmetrize(out, what="symplectic image")


def symplectic_inverse(S):
    """Group inverse with blocks ``(D^T, -B^T, -C^T, A^T)``."""
    return SymplecticBlockMap(S.D.T.copy(), -S.B.T, -S.C.T, S.A.T.copy())


def translation_to_origin_upper(Z):
    """Symplectic map sending ``Z = X + iY`` to ``iI``.

    Blocks ``(Y^{-1/2}, -Y^{-1/2} X, 0, Y^{1/2})``; its group inverse
    ``(Y^{1/2}, X Y^{-1/2}, 0, Y^{-1/2})`` sends ``iI`` to ``Z``.
    """
    Z = _upper_point(Z)
    X, Y = real_imag_parts(Z)
    Y = 0.5 * (Y + Y.T)
    Yh = hermitian_matrix_function(Y, "sqrt").real
    Yih = hermitian_matrix_function(Y, "inv_sqrt").real
    d = Z.shape[0]
    return SymplecticBlockMap(Yih, -Yih @ X, np.zeros((d, d)), Yh)


def cayley_upper_to_disk(Z):
    """``W = (Z - iI)(Z + iI)^{-1}``; sends ``iI`` to the origin."""
    Z = _upper_point(Z)
    I = np.eye(Z.shape[0])
    W = (Z - 1j * I) @ inverse(Z + 1j * I)
    return symmetrize(W, what="Cayley image")


def cayley_disk_to_upper(W):
    """``Z = i(I + W)(I - W)^{-1}``; inverse of :func:`cayley_upper_to_disk`."""
    from .siegel_poincare_disk import disk_point

    W = disk_point(W)
    I = np.eye(W.shape[0])
    Z = 1j * (I + W) @ inverse(I - W)
    return symmetrize(Z, what="Cayley image")


def dist_upper_in_disk(W1, W2):
    """Siegel (Riemannian) distance between disk points, via the Cayley map."""
    return dist_upper(cayley_disk_to_upper(W1), cayley_disk_to_upper(W2))
