"""quantakit: reversible-by-construction quantum folds.

Boolean relation algebra for reversibility analysis, a sparse
vector-space monad for simulating quantum operations, structural quantum
folds over truncated list bases, and a back end that compiles the
resulting permutations to Toffoli circuits exported as OpenQASM 2.0.
"""
from . import checks, circuitgen, gates, quanta, relalg, vecmonad
from .relalg import BIT, FinBasis, MonoidSpec, Rel
from .vecmonad import AmpVec, CMatrix, KleisliOp

__all__ = [
    "AmpVec",
    "BIT",
    "CMatrix",
    "FinBasis",
    "KleisliOp",
    "MonoidSpec",
    "Rel",
    "checks",
    "circuitgen",
    "gates",
    "quanta",
    "relalg",
    "vecmonad",
]

__version__ = "0.1.0"
