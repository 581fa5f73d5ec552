"""walkenum: exact enumeration of weighted 2D lattice walks by x-length.

Counts walks with rational-weighted steps under height constraints (two-sided
bands, one-sided floors, or none) and endpoint conditions (free, return to
axis), all in exact rational arithmetic: closed-form rational generating
functions for banded classes, algebraic minimal polynomials for floored ones,
P-recurrences, and exact growth-rate enclosures.
"""

__version__ = "0.1.0"

from .errors import WalkenumError

__all__ = ["WalkenumError", "__version__"]
