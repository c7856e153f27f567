"""Independent reference values for the tests.

These use mpmath at high precision or numpy's LAPACK routines, never the
package's own power-method and QR kernels.
"""

import math

import mpmath
import numpy as np

# golden pair: Z = S + iP
S1 = np.array([[0.265, 0.5], [0.5, -0.085]])
P1 = np.array([[0.235, 0.048], [0.048, 0.792]])
S2 = np.array([[-0.329, -0.2], [-0.2, -0.382]])
P2 = np.array([[0.464, 0.289], [0.289, 0.431]])
Z1 = S1 + 1j * P1
Z2 = S2 + 1j * P2

# frozen from upper_fixture_oracle() at 50 digits
FIXTURE_DISTANCE = 2.4859052314299322273
FIXTURE_EIGENVALUES = (0.32114174734169093566, 0.61962597208273409253)


def upper_fixture_oracle(dps=50):
    """Cross-ratio eigenvalues and Siegel distance of the golden pair in mpmath."""
    with mpmath.workdps(dps):
        z1 = mpmath.matrix([[mpmath.mpc(S1[i, j], P1[i, j]) for j in range(2)] for i in range(2)])
        z2 = mpmath.matrix([[mpmath.mpc(S2[i, j], P2[i, j]) for j in range(2)] for i in range(2)])
        c1 = z1.conjugate()
        c2 = z2.conjugate()
        R = (z1 - z2) * (z1 - c2) ** -1 * (c1 - c2) * (c1 - z2) ** -1
        ev = mpmath.eig(R, left=False, right=False)
        r = sorted(mpmath.re(e) for e in ev)
        imag = max(abs(mpmath.im(e)) for e in ev)
        d2 = sum(mpmath.log((1 + mpmath.sqrt(x)) / (1 - mpmath.sqrt(x))) ** 2 for x in r)
        return [float(x) for x in r], float(mpmath.sqrt(d2)), float(imag)


def opnorm(M):
    return float(np.linalg.norm(np.asarray(M), 2))


def hilbert_oracle(K1, K2, iters=200):
    """Hilbert distance by bisection on the SVD operator norm."""
    K1 = np.asarray(K1, dtype=complex)
    K21 = np.asarray(K2, dtype=complex) - K1

    def exit_param(sign):
        inside, outside = 0.0, sign
        while opnorm(K1 + outside * K21) < 1.0:
            inside, outside = outside, 2.0 * outside
        for _ in range(iters):
            mid = 0.5 * (inside + outside)
            if opnorm(K1 + mid * K21) < 1.0:
                inside = mid
            else:
                outside = mid
        return 0.5 * (inside + outside)

    am, ap = exit_param(-1.0), exit_param(1.0)
    return 0.5 * math.log(ap * (1 - am) / (abs(am) * (ap - 1)))


def spd_oracle(P1, P2):
    w = np.linalg.eigvals(np.linalg.solve(P1, P2)).real
    return float(np.sqrt(np.sum(np.log(w) ** 2)))


def siegel_upper_oracle(Z1, Z2):
    Z1 = np.asarray(Z1, dtype=complex)
    Z2 = np.asarray(Z2, dtype=complex)
    c1, c2 = Z1.conj(), Z2.conj()
    R = (Z1 - Z2) @ np.linalg.inv(Z1 - c2) @ (c1 - c2) @ np.linalg.inv(c1 - Z2)
    r = np.clip(np.linalg.eigvals(R).real, 0, None)
    return float(np.sqrt(np.sum((2 * np.arctanh(np.sqrt(r))) ** 2)))


def poincare_1d(w1, w2):
    return 2 * math.atanh(abs((w2 - w1) / (1 - np.conj(w1) * w2)))


def upper_1d(z1, z2):
    return math.acosh(1 + abs(z1 - z2) ** 2 / (2 * z1.imag * z2.imag))
