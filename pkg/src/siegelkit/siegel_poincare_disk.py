"""Siegel-Poincare disk: symmetric complex ``W`` with ``I - W conj(W)`` positive-definite.

The automorphism ``Phi_{W1}`` moves ``W1`` to the origin; the Kobayashi
distance is the hyperbolic distance of ``||Phi_{W1}(W2)||_O`` from 0 and
geodesics through the origin are straight segments ``alpha(t) W``.
"""

import math

import numpy as np

from .errors import ContractViolation, DomainViolation, NumericalDomain
from .matrix_core import (
    as_matrix,
    frobenius_norm,
    hermitian_matrix_function,
    inverse,
    operator_norm,
    symmetrize,
)
from .siegel_upper import Membership

SYM_TOL = 1e-10


def membership_disk(M):
    """True iff ``M`` is symmetric and ``||M||_O < 1``; margin is ``1 - ||M||_O``."""
    M = as_matrix(M)
    defect = frobenius_norm(M - M.T)
    margin = 1.0 - operator_norm(M)
    return Membership(defect <= SYM_TOL and margin > 0.0, margin, defect)


def disk_point(W, name="W"):
    """Validate a disk point and return it as a complex array."""
    W = as_matrix(W, name)
    m = membership_disk(W)
    if not m.ok:
        raise DomainViolation(
            f"{name} not in the open Siegel disk "
            f"(1 - ||W||_O = {m.margin:.3e}, symmetry defect = {m.symmetry_defect:.3e})"
        )
    return W


def _outer_factors(W1):
    # (I - W1 conj W1)^{-1/2} and (I - conj W1 W1)^{1/2}; both Hermitian PD inside the disk
    I = np.eye(W1.shape[0])
    c1 = W1.conj()
    left = hermitian_matrix_function(I - W1 @ c1, "inv_sqrt")
    right = hermitian_matrix_function(I - c1 @ W1, "sqrt")
    return left, right


def translate_phi(W1, W2):
    """``Phi_{W1}(W2) = (I-W1 W1bar)^{-1/2} (W2-W1) (I-W1bar W2)^{-1} (I-W1bar W1)^{1/2}``.

    Sends ``W1`` to the origin. Costs two Hermitian square roots.

    Raises
    ------
    SingularMatrix, DomainViolation
        For inputs numerically on the boundary.
    """
    W1 = disk_point(W1, "W1")
    W2 = disk_point(W2, "W2")
    return _phi(W1, W2)


def _phi(W1, W2):
    I = np.eye(W1.shape[0])
    left, right = _outer_factors(W1)
    out = left @ (W2 - W1) @ inverse(I - W1.conj() @ W2) @ right
    return symmetrize(out, what="Phi image")


def phi_inverse(W1, V):
    """The point ``U`` with ``Phi_{W1}(U) = V``.

    Moving the outer factors across gives
    ``(I-W1 W1bar)^{-1/2} (U - W1) = V (I-W1bar W1)^{-1/2} (I - W1bar U)``,
    which is linear in ``U`` from the left:
    ``(P + Q W1bar) U = Q + P W1`` with ``P = (I-W1 W1bar)^{-1/2}`` and
    ``Q = V (I-W1bar W1)^{-1/2}``.
    """
    W1 = disk_point(W1, "W1")
    V = disk_point(V, "V")
    return _phi_inv(W1, V)


def _phi_inv(W1, V):
    I = np.eye(W1.shape[0])
    c1 = W1.conj()
    P = hermitian_matrix_function(I - W1 @ c1, "inv_sqrt")
    Q = V @ hermitian_matrix_function(I - c1 @ W1, "inv_sqrt")
    U = inverse(P + Q @ c1) @ (Q + P @ W1)
    return symmetrize(U, what="Phi preimage")


def _log_ratio(n):
    if not 0.0 <= n < 1.0:
        raise NumericalDomain(f"operator norm {n!r} not below 1")
    return 2.0 * math.atanh(n)


def dist_kobayashi(W1, W2):
    """``log((1 + ||Phi||_O) / (1 - ||Phi||_O))`` with ``Phi = Phi_{W1}(W2)``."""
    return _log_ratio(operator_norm(translate_phi(W1, W2)))


def dist_disk_origin(W):
    """Distance from 0: ``log((1 + ||W||_O) / (1 - ||W||_O))``."""
    W = disk_point(W)
    return _log_ratio(operator_norm(W))


def origin_alpha(n, t):
    """Scale ``alpha(t)`` of the origin geodesic for a point of operator norm ``n``.

    ``((1+n)^t - (1-n)^t) / (n ((1+n)^t + (1-n)^t))``, evaluated as
    ``tanh(t atanh n) / n``.
    """
    if n == 0.0:
        return 0.0
    return math.tanh(t * math.atanh(n)) / n


def _check_t(t):
    if not 0.0 <= t <= 1.0:
        raise ContractViolation(f"t = {t!r} outside [0, 1]")
    return float(t)


def geodesic_origin(W, t):
    """Point ``alpha(t) W`` at fraction ``t`` of the geodesic from 0 to ``W``."""
    t = _check_t(t)
    W = disk_point(W)
    return origin_alpha(operator_norm(W), t) * W


def geodesic_cut_disk(W1, W2, t):
    """Point at fraction ``t`` of the geodesic from ``W1`` to ``W2``.

    Translate ``W1`` to 0, cut the straight origin geodesic, translate back.
    """
    t = _check_t(t)
    W1 = disk_point(W1, "W1")
    W2 = disk_point(W2, "W2")
    if t == 0.0:
        return W1.copy()
    V = _phi(W1, W2)
    return _phi_inv(W1, origin_alpha(operator_norm(V), t) * V)
