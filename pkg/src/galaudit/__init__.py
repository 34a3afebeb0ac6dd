"""galaudit: certified obstructions to parametric sets of regular
Galois realizations over number fields.

The package provides an exact finite-group engine; genus arithmetic and
minimal-genus lower bounds; checkers for the non-parametricity criteria
with honest certificates; a family classifier; and the quadratic-
extension / twisted-curve correspondence with bounded point searches.
"""

__version__ = "0.1.0"

from .config import DEFAULT_LIMITS, Limits
from .genus import FieldContext
from .groups import GroupDescriptor, PermGroup, materialize

__all__ = [
    "DEFAULT_LIMITS",
    "Limits",
    "FieldContext",
    "GroupDescriptor",
    "PermGroup",
    "materialize",
    "__version__",
]
