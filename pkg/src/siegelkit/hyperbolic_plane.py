"""Hyperbolic plane in dimension one: upper half-plane, Poincare disk, Klein disk.

Points are plain Python/numpy complex scalars. These closed forms are the
scalar reference for the matrix models.
"""

import math

from .errors import ContractViolation, DomainViolation

UPPER = "upper"
POINCARE = "poincare"
KLEIN = "klein"
MODELS = (UPPER, POINCARE, KLEIN)


def _check_upper(z):
    z = complex(z)
    if not z.imag > 0.0:
        raise DomainViolation(f"{z} is not in the open upper half-plane")
    return z


def _check_disk(w):
    w = complex(w)
    if not abs(w) < 1.0:
        raise DomainViolation(f"|{w}| >= 1, outside the open unit disk")
    return w


def _arccosh(x):
    if x < 1.0:
        if x < 1.0 - 1e-12:
            raise DomainViolation(f"arccosh argument {x!r} < 1")
        x = 1.0
    return math.acosh(x)


def dist_upper_1d(z1, z2):
    """Hyperbolic distance in the upper half-plane (curvature -1)."""
    z1 = _check_upper(z1)
    z2 = _check_upper(z2)
    a = abs(z1 - z2.conjugate())
    b = abs(z1 - z2)
    if b == 0.0:
        return 0.0
    return math.log((a + b) / (a - b))


def dist_poincare_disk_1d(w1, w2):
    w1 = _check_disk(w1)
    w2 = _check_disk(w2)
    r = abs((w2 - w1) / (1.0 - w1.conjugate() * w2))
    return 2.0 * math.atanh(min(r, 1.0))


def dist_klein_1d(k1, k2):
    k1 = _check_disk(k1)
    k2 = _check_disk(k2)
    num = 1.0 - (k1.real * k2.real + k1.imag * k2.imag)
    den = math.sqrt((1.0 - abs(k1) ** 2) * (1.0 - abs(k2) ** 2))
    return _arccosh(num / den)


def klein_to_poincare_1d(k):
    k = _check_disk(k)
    return k / (1.0 + math.sqrt(1.0 - abs(k) ** 2))


def poincare_to_klein_1d(w):
    w = _check_disk(w)
    return 2.0 * w / (1.0 + abs(w) ** 2)


def upper_to_poincare_1d(z):
    z = _check_upper(z)
    return (z - 1j) / (z + 1j)


def poincare_to_upper_1d(w):
    w = _check_disk(w)
    return 1j * (1.0 + w) / (1.0 - w)


_DIRECT = {
    (KLEIN, POINCARE): klein_to_poincare_1d,
    (POINCARE, KLEIN): poincare_to_klein_1d,
    (UPPER, POINCARE): upper_to_poincare_1d,
    (POINCARE, UPPER): poincare_to_upper_1d,
}


def convert_1d(p, source, target):
    """Convert a scalar point between the three models.

    Klein and upper-plane points go through the Poincare disk.
    """
    if source not in MODELS or target not in MODELS:
        raise ContractViolation(f"unknown model in {source!r} -> {target!r}")
    if source == target:
        return _check_upper(p) if source == UPPER else _check_disk(p)
    if (source, target) in _DIRECT:
        return _DIRECT[source, target](p)
    return _DIRECT[POINCARE, target](_DIRECT[source, POINCARE](p))


def mobius_translate_1d(w1, w2):
    """Disk automorphism sending ``w1`` to 0, evaluated at ``w2``."""
    w1 = complex(w1)
    w2 = complex(w2)
    return (w2 - w1) / (1.0 - w1.conjugate() * w2)

