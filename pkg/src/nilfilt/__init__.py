"""nilfilt: exact invariants of nilpotent filtrations of classifying spaces.

The library computes, for a finite group given by its multiplication table,
the combinatorics and integral homology of the simplicial sets whose
d-simplices are d-tuples generating a subgroup of nilpotency class < q:
tuple counts and their binomial identities, the poset of low-class
subgroups with its colimit presentation, transitively commutative group
invariants, and exact Smith-normal-form homology.
"""

__version__ = "0.1.0"

from .errors import (
    GroupValidationError,
    GuardExceeded,
    NilfiltError,
    NotTransitivelyCommutative,
)
from .groups import FiniteGroup, Subgroup
from .intlinalg import AbelianGroup

__all__ = [
    "__version__",
    "AbelianGroup",
    "FiniteGroup",
    "GroupValidationError",
    "GuardExceeded",
    "NilfiltError",
    "NotTransitivelyCommutative",
    "Subgroup",
]
