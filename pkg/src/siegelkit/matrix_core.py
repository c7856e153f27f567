"""Dense complex matrix arithmetic, norms, eigenvalues and Hermitian matrix functions.

Matrices are square complex128 ndarrays. The iterative routines (power
method, deflation, Hessenberg-QR, Gauss-Jordan) run in the kernel backend
selected by :mod:`siegelkit._backend`.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from ._backend import kernels
from .counters import bump
from .errors import (
    ContractViolation,
    DomainViolation,
    NumericalConvergence,
    SingularMatrix,
)

PIVOT_TOL = 1e-13
POWER_TOL = 1e-13
MAX_ITER = 10_000
MAX_RESTARTS = 3
REALNESS_TOL = 1e-8
HERMITIAN_TOL = 1e-10


def as_matrix(M, name="matrix"):
    """Return ``M`` as a square, finite complex128 array."""
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ContractViolation(f"{name} must be a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ContractViolation(f"{name} has non-finite entries")
    return A


def _rng(rng):
    if rng is None:
        return np.random.default_rng(0)
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def _draw(g, d, block):
    if block:
        return g.standard_normal((d, d)) + 1j * g.standard_normal((d, d))
    return random_unit_vector(d, g)


@lru_cache(maxsize=None)
def _seed0_first_draw(d, block):
    # building a Generator costs more than a small eigen-solve, so the first
    # draw of the default stream is cached
    return _draw(np.random.default_rng(0), d, block)


def _start_stream(rng, d, block):
    """Start vectors (or blocks) for the restarts of an iterative kernel.

    With ``rng`` omitted this reproduces a fresh ``default_rng(0)`` stream.
    """
    if rng is None:
        yield _seed0_first_draw(d, block).copy()
        g = np.random.default_rng(0)
        _draw(g, d, block)
    else:
        g = _rng(rng)
    while True:
        yield _draw(g, d, block)


def random_unit_vector(d, rng=None):
    """Seeded pseudo-random complex unit vector (power-method start)."""
    g = _rng(rng)
    x = g.standard_normal(d) + 1j * g.standard_normal(d)
    return x / np.linalg.norm(x)


def matmul(A, B):
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    if A.shape != B.shape:
        raise ContractViolation(f"dimension mismatch: {A.shape} vs {B.shape}")
    return A @ B


def inverse(M, piv_tol=PIVOT_TOL):
    """Inverse by Gauss-Jordan elimination with partial pivoting.

    Raises
    ------
    SingularMatrix
        If a pivot magnitude drops below ``piv_tol``; ``err.pivot`` holds it.
    """
    M = as_matrix(M)
    inv, ok, pivot = kernels.gauss_inverse(M, piv_tol)
    if not ok:
        raise SingularMatrix(f"pivot magnitude {pivot:.3e} below {piv_tol:.0e}", pivot=pivot)
    return inv


def solve_right(A, B):
    """``A @ inverse(B)`` (used for the many ``X Y^{-1}`` factors)."""
    return A @ inverse(B)


def frobenius_norm(M):
    M = np.asarray(M, dtype=np.complex128)
    return math.sqrt(float(np.sum(M.real ** 2 + M.imag ** 2)))


def operator_norm(M, tol=POWER_TOL, rng=None, x0=None, return_vector=False):
    """Largest singular value by the normalized power method on ``M^H M``.

    The Rayleigh quotient never exceeds the top eigenvalue, so the result is
    a lower bound on the true spectral norm, accurate to about ``tol``
    relative.

    Parameters
    ----------
    M : array_like, shape (d, d)
    tol : float
        Stopping threshold on the relative eigen-residual.
    rng : Generator or int, optional
        Source of start vectors; fixed seed 0 when omitted.
    x0 : ndarray, optional
        Warm-start vector (e.g. from a nearby matrix).
    return_vector : bool
        Also return the converged right singular vector.
    """
    if tol <= 0:
        raise ContractViolation("tol must be positive")
    M = as_matrix(M)
    bump("operator_norm")
    starts = _start_stream(rng, M.shape[0], block=False)
    x = next(starts) if x0 is None else np.asarray(x0, dtype=np.complex128)
    for _ in range(MAX_RESTARTS + 1):
        s, v, _, ok = kernels.opnorm(M, x, tol, MAX_ITER)
        if ok:
            return (s, v) if return_vector else s
        x = next(starts)
    raise NumericalConvergence(f"operator norm did not converge in {MAX_ITER} iterations")


@dataclass(frozen=True)
class HermitianEigenDecomposition:
    """Eigenpairs sorted by decreasing ``|eigenvalue|``; vectors are columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual: float

    def reconstruct(self):
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T


@dataclass(frozen=True)
class Spectrum:
    values: np.ndarray
    realness_tolerance: float

    @property
    def is_real(self):
        return bool(np.all(self.values.imag == 0.0))


def is_hermitian(M, tol=HERMITIAN_TOL):
    M = np.asarray(M)
    return bool(np.max(np.abs(M - M.conj().T), initial=0.0) <= tol)


def hermitian_eigen(M, tol=POWER_TOL, rng=None):
    """Full eigendecomposition of a Hermitian matrix by deflation.

    Each stage runs a normalized power iteration on the deflated matrix and
    removes the converged eigenpair with a rank-one update
    ``M_{l+1} = M_l - lam_l v_l v_l^H``.

    Raises
    ------
    DomainViolation
        If ``M`` is not Hermitian within 1e-10 entry-wise.
    NumericalConvergence
        If a stage fails after the allowed restarts.
    """
    M = as_matrix(M)
    if not is_hermitian(M):
        raise DomainViolation("hermitian_eigen requires a Hermitian matrix")
    vals, vecs = _eigh(M, tol, rng)
    residual = frobenius_norm(M - (vecs * vals) @ vecs.conj().T)
    return HermitianEigenDecomposition(vals, vecs, residual)


def _eigh(M, tol=POWER_TOL, rng=None):
    # deflation on an already validated Hermitian matrix, sorted by |eigenvalue|
    starts = _start_stream(rng, M.shape[0], block=True)
    for _ in range(MAX_RESTARTS + 1):
        vals, vecs, ok = kernels.deflation_eigh(M, next(starts), tol, MAX_ITER)
        if ok:
            break
    else:
        raise NumericalConvergence("deflation did not converge")
    order = np.argsort(-np.abs(vals), kind="stable")
    return vals[order], vecs[:, order]


def general_spectrum(M, realness_tol=REALNESS_TOL):
    """All eigenvalues of a general complex matrix, sorted by decreasing modulus.

    Hessenberg reduction followed by shifted QR. An eigenvalue whose
    imaginary part satisfies ``|Im| < realness_tol * (1 + |Re|)`` is rounded
    to a real number.
    """
    M = as_matrix(M)
    vals, ok = kernels.hessenberg_qr_eigvals(M, 1e-15, 100 * MAX_ITER)
    if not ok:
        raise NumericalConvergence("shifted QR did not converge")
    small = np.abs(vals.imag) < realness_tol * (1.0 + np.abs(vals.real))
    vals = np.where(small, vals.real + 0j, vals)
    # modulus first, then real part, so conjugate pairs come out in a fixed order
    order = np.lexsort((-vals.imag, -vals.real, -np.abs(vals)))
    return Spectrum(vals[order], realness_tol)


_SCALAR_FUNCS = {
    "sqrt": np.sqrt,
    "inv_sqrt": lambda x: 1.0 / np.sqrt(x),
    "exp": np.exp,
    "log": np.log,
}
_NEEDS_POSITIVE = {"sqrt", "inv_sqrt", "log", "pow"}


def hermitian_matrix_function(M, f, t=None, rng=None):
    """Apply a scalar function to a Hermitian matrix through its eigenvalues.

    ``f`` is one of ``"sqrt"``, ``"inv_sqrt"``, ``"exp"``, ``"log"`` or
    ``"pow"`` (with exponent ``t``). Everything except ``exp`` requires a
    positive-definite input.
    """
    M = as_matrix(M)
    if f not in _SCALAR_FUNCS and f != "pow":
        raise ContractViolation(f"unknown matrix function {f!r}")
    if f == "pow" and t is None:
        raise ContractViolation("pow needs an exponent t")
    # Hermitian part only; callers pass matrices that are Hermitian up to rounding
    Mh = 0.5 * (M + M.conj().T)
    if not is_hermitian(M, max(HERMITIAN_TOL, 1e-12 * frobenius_norm(M))):
        raise DomainViolation("matrix function requires a Hermitian matrix")
    if f in ("sqrt", "inv_sqrt"):
        bump("matrix_sqrt")
    lam, V = _eigh(Mh, rng=rng)
    if f in _NEEDS_POSITIVE and np.min(lam) <= 0.0:
        bad = float(np.min(lam))
        raise DomainViolation(f"{f} needs positive eigenvalues, found {bad:.3e}")
    if f == "pow":
        flam = lam ** t
    else:
        flam = _SCALAR_FUNCS[f](lam)
    out = (V * flam) @ V.conj().T
    return 0.5 * (out + out.conj().T)


def is_symmetric_complex(M, tol=1e-10):
    """True when ``M`` equals its plain transpose (not the conjugate transpose)."""
    M = np.asarray(M, dtype=np.complex128)
    return frobenius_norm(M - M.T) <= tol


def symmetrize(M, tol=1e-8, what="result"):
    """Return ``(M + M^T) / 2``, refusing when the defect exceeds ``tol``."""
    defect = frobenius_norm(M - M.T)
    if defect > tol * max(1.0, frobenius_norm(M)):
        raise DomainViolation(f"{what} has symmetry defect {defect:.3e}")
    return 0.5 * (M + M.T)
