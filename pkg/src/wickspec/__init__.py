"""wickspec: numerical verification toolkit for Wick power series machinery.

Subpackages map one-to-one onto the verification areas:

- :mod:`wickspec.profiles` -- scale-function calculus and conjugations
- :mod:`wickspec.sequences` -- defining sequences and indicator functions
- :mod:`wickspec.cones` -- closed cones, duals, distances, separations
- :mod:`wickspec.spaces` -- test-function catalog and membership bounds
- :mod:`wickspec.wick` -- Wick contraction combinatorics and series bounds
- :mod:`wickspec.laplace` -- Laplace transforms and growth-bound checks
- :mod:`wickspec.scenario` -- batch scenario runner behind the CLI
"""

__version__ = "0.1.0"

from .profiles import FunctionProfile, convex_conjugate, concave_conjugate
from .report import BoundReport

__all__ = [
    "FunctionProfile",
    "convex_conjugate",
    "concave_conjugate",
    "BoundReport",
    "__version__",
]
