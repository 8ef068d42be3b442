"""Possibilistic model checking over finite Kripke structures.

Possibility values live in [0, 1] and are combined with min and max only,
so every result is exact. The hot max-min kernels come from a compiled
extension when it is built, and from numpy otherwise (see ``BACKEND``).
"""

from ._backend import BACKEND
from .automata import (
    FiniteAutomaton,
    ProductStructure,
    accepts_finite,
    check_omega,
    check_safety,
    complete,
    product,
)
from .errors import (
    AutomatonError,
    NotAPathError,
    ParseError,
    PossmcError,
    ShapeError,
    UnknownStateError,
    ValidationError,
)
from .formats import export_dot, parse_automaton, parse_model, render_automaton, render_model
from .fuzzy import (
    FuzzyMatrix,
    FuzzyVector,
    apply,
    compose,
    least_fixed_point,
    transitive_closure,
)
from .kripke import PossKripke, RawStructure, validate
from .reach import (
    PossibilityReport,
    UntilPartition,
    bounded_until_possibility,
    build_partition,
    reach_via_closure,
    reach_via_fixed_point,
    repeated_reach_possibility,
    until_possibility,
)

__version__ = "0.1.0"
