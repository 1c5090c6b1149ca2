"""topodraw: combinatorics of simple topological graph drawings.

Crossing patterns and thrackle predicates, exact-rational geometric
drawings, realizability of crossing specifications via planarization and
planarity testing, the monotone-path extraction pipeline for two-line
bipartite sub-drawings, the half-circle random drawing model, and
forbidden-submatrix checks.
"""

__version__ = "0.1.0"

from . import geometry, graphs, halfcircle, matrices, planarity, ramsey, realizability, tables
from .errors import (
    BudgetExceededError,
    DegenerateDrawingError,
    InconsistencyError,
    InputError,
    TopodrawError,
)

__all__ = [
    "geometry",
    "graphs",
    "halfcircle",
    "matrices",
    "planarity",
    "ramsey",
    "realizability",
    "tables",
    "BudgetExceededError",
    "DegenerateDrawingError",
    "InconsistencyError",
    "InputError",
    "TopodrawError",
    "__version__",
]
