"""Exact-arithmetic laboratory for the Salecker-Wigner-Peres quantum clock
and its cyclotomic (coprime-restricted) time operator."""

from .clock import ClockModel, Convention, EvolutionSpec
from .exactcyc import CyclotomicNumber, cyclotomic_polynomial, root_of_unity
from .linalg import OperatorMatrix, Scale, ScaledNumber, StateVector

__all__ = [
    "ClockModel",
    "Convention",
    "CyclotomicNumber",
    "EvolutionSpec",
    "OperatorMatrix",
    "Scale",
    "ScaledNumber",
    "StateVector",
    "cyclotomic_polynomial",
    "root_of_unity",
]

__version__ = "0.1.0"
