"""
ToriCount kernel
================

Exact arithmetic for counting torsion points on subvarieties of algebraic tori:
- arith: arithmetic functions, ζ brackets and main terms
- intlat: integer matrices, Smith normal form, lattices, successive minima
- torsion: torsion points, algebraic subgroups and torsion cosets
- ffield: finite fields F_{p^l} and orders of their elements
- cyclotomic: cyclotomic polynomials and exact cyclotomic numbers
- variety: Laurent polynomials, admissibility and coset membership
"""

from .errors import DomainError, InputError, ResourceLimitError, ToriCountError

__all__ = [
    "ToriCountError",
    "DomainError",
    "InputError",
    "ResourceLimitError",
]
