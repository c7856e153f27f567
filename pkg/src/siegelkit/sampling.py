"""Seeded random points in the Siegel domains and random symplectic maps."""

import numpy as np

from .errors import ContractViolation
from .matrix_core import inverse, operator_norm
from .siegel_upper import SymplecticBlockMap

DOMAINS = ("disk", "upper", "spd")


def _gen(rng):
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def random_disk_point(d, rng=None, norm_cap=0.95):
    """Symmetrized complex Gaussian rescaled to operator norm ``u * norm_cap``, ``u ~ U(0, 1)``."""
    if not 0.0 < norm_cap < 1.0:
        raise ContractViolation("norm_cap must lie in (0, 1)")
    g = _gen(rng)
    G = g.standard_normal((d, d)) + 1j * g.standard_normal((d, d))
    G = 0.5 * (G + G.T)
    n = operator_norm(G)
    u = g.uniform()
    if n == 0.0:
        return np.zeros((d, d), dtype=np.complex128)
    return G * (u * norm_cap / n)


def random_spd(d, rng=None):
    """``A^T A + 0.1 I`` with a standard Gaussian ``A``."""
    g = _gen(rng)
    A = g.standard_normal((d, d))
    return A.T @ A + 0.1 * np.eye(d)


def random_upper_point(d, rng=None):
    """``X + iY`` with symmetric Gaussian ``X`` and ``Y = A^T A + 0.1 I``."""
    g = _gen(rng)
    X = g.standard_normal((d, d))
    X = 0.5 * (X + X.T)
    return X + 1j * random_spd(d, g)


def random_diagonal_disk_point(d, rng=None, norm_cap=0.95):
    """Diagonal disk point with independent entries of modulus below ``norm_cap``."""
    g = _gen(rng)
    r = norm_cap * np.sqrt(g.uniform(size=d))
    return np.diag(r * np.exp(2j * np.pi * g.uniform(size=d)))


def random_symplectic(d, rng=None, factors=3):
    """Product of random generators of the real symplectic group.

    Uses ``(A, 0, 0, A^{-T})``, shears ``(I, B, 0, I)`` with symmetric ``B``
    and the swap ``(0, I, -I, 0)``.
    """
    g = _gen(rng)
    I = np.eye(d)
    Z = np.zeros((d, d))
    S = SymplecticBlockMap.identity(d)
    for _ in range(factors):
        A = I + 0.3 * g.standard_normal((d, d))
        B = g.standard_normal((d, d))
        B = 0.5 * (B + B.T)
        S = S @ SymplecticBlockMap(A, Z, Z, inverse(A).real.T)
        S = S @ SymplecticBlockMap(I, B, Z, I)
        if g.uniform() < 0.5:
            S = S @ SymplecticBlockMap(Z, I, -I, Z)
    return S


def sample(domain, count, d, rng=None, norm_cap=0.95):
    """``count`` points of ``domain`` (``"disk"``, ``"upper"`` or ``"spd"``)."""
    if domain not in DOMAINS:
        raise ContractViolation(f"unknown domain {domain!r}")
    if d < 1 or count < 0:
        raise ContractViolation("need dim >= 1 and count >= 0")
    g = _gen(rng)
    if domain == "disk":
        return [random_disk_point(d, g, norm_cap) for _ in range(count)]
    if domain == "upper":
        return [random_upper_point(d, g) for _ in range(count)]
    return [random_spd(d, g) for _ in range(count)]
