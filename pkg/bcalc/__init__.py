"""Belief calculus library.

bcalc implements opinions over binary frames, their equivalence with
augmented Beta PDFs, coarsening of general belief mass assignments and
the operator algebra on opinions (union, difference, negation,
multiplication, comultiplication, division, codivision, deduction and
abduction).
"""

from .enums import ECoarsening, EOperator, ERepresentation  # noqa: F401
from .errors import BeliefError, ClippingWarning  # noqa: F401
from .opinion import (  # noqa: F401
    Opinion,
    BasicProbabilityVector,
    make_opinion,
    vacuous,
    expectation,
    negate,
    to_pv,
    from_pv,
    clip,
)
from .operators import (  # noqa: F401
    LimitParams,
    add,
    subtract,
    multiply,
    comultiply,
    divide,
    codivide,
)
from .conditional import ConditionalPair, deduce, abduce  # noqa: F401

__version__ = "0.1.0.dev0"
