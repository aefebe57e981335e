"""Exact arithmetic for weighted Catalan numbers.

Weighted and q-weighted Catalan numbers with arbitrary-precision dynamic
programming, difference-divisibility certificates and carry sequences of
weight functions, binary-tree orbit enumeration with three independent
carry oracles, periodicity of residue sequences via truncated continued
fractions, and the Morse link number conjecture lab.
"""

from . import arith, catalan, kernel, morse, orbits, periodicity, weights
from .errors import DomainError, ResourceLimitError, WeightSpecError
from .weights import WeightFunction, parse_weight_spec

__version__ = "0.1.0"

__all__ = [
    "arith",
    "catalan",
    "kernel",
    "morse",
    "orbits",
    "periodicity",
    "weights",
    "WeightFunction",
    "parse_weight_spec",
    "DomainError",
    "ResourceLimitError",
    "WeightSpecError",
    "__version__",
]
