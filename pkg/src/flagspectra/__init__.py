"""Exact quantum characteristic polynomials of partial flag varieties,
their semiclassical spectra, and the prime-driven double sequences
counting compositions by spectral behaviour."""

from .arith import PrimeSieve, eulerian_polynomial, is_sum_of_two_primes, smallest_prime_factor
from .compositions import Composition, enumerate_compositions, is_prime_type, pair_is_exceeding
from .polyring import Poly, PolyMatrix, RationalFunction
from .quantum import (
    quantum_c1_operator,
    quantum_char_poly,
    semiclassical_char_poly,
    simplicity_at_one,
)
from .sequences import SequenceTable, seq_value

__all__ = [
    "Composition",
    "Poly",
    "PolyMatrix",
    "PrimeSieve",
    "RationalFunction",
    "SequenceTable",
    "enumerate_compositions",
    "eulerian_polynomial",
    "is_prime_type",
    "is_sum_of_two_primes",
    "pair_is_exceeding",
    "quantum_c1_operator",
    "quantum_char_poly",
    "semiclassical_char_poly",
    "seq_value",
    "simplicity_at_one",
    "smallest_prime_factor",
]

__version__ = "0.1.0"
