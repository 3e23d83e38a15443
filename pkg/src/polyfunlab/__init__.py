"""
polyfunlab - polyfunctions over the residue rings Z/nZ

Null-polynomial bases, canonical representatives, counting formulas,
group and ring structure, with brute-force oracles to check them.
"""

from .arith import FactoredCount, factorize, gcd_factorial, legendre_ep
from .errors import (
    InvalidInputError,
    InvariantViolation,
    NotAnIntegerError,
    OracleGuardError,
    PolyfunError,
)
from .multivar import MultiPoly, canonicalize_multi, psi_d, psi_d_general
from .polyfun import (
    CanonicalPolyfunction,
    GroupDecomposition,
    NullDecomposition,
    basic_null_poly,
    canonicalize,
    decompose_null,
    group_structure,
    psi,
    recompose,
)
from .polynomial import Poly, parse_poly
from .smarandache import BasisSpec, MultiIndex, basis_spec, s

__version__ = "0.1.0"

__all__ = [
    "BasisSpec",
    "CanonicalPolyfunction",
    "FactoredCount",
    "GroupDecomposition",
    "InvalidInputError",
    "InvariantViolation",
    "MultiIndex",
    "MultiPoly",
    "NotAnIntegerError",
    "NullDecomposition",
    "OracleGuardError",
    "Poly",
    "PolyfunError",
    "basic_null_poly",
    "basis_spec",
    "canonicalize",
    "canonicalize_multi",
    "decompose_null",
    "factorize",
    "gcd_factorial",
    "group_structure",
    "legendre_ep",
    "parse_poly",
    "psi",
    "psi_d",
    "psi_d_general",
    "recompose",
    "s",
]
