"""Distances, geodesics and smallest enclosing balls in the Siegel domains."""

from ._backend import BACKEND, COMPILED
from .errors import (
    ContractViolation,
    DomainViolation,
    NumericalConvergence,
    NumericalDomain,
    SiegelError,
    SingularMatrix,
)

__version__ = "0.1.0"
