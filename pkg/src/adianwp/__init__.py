"""Word problems for Adian inverse monoids via Schützenberger complexes."""

from .complex import BettiReport, Complex, Face, betti_check
from .errors import (AdianError, NotAdian, NotPositive, PositiveCycle, PresentationError,
                     WrongAlphabet)
from .presentation import (Letter, Presentation, Relation, build_bisided, check_star, classify,
                           is_adian, is_forest, make_presentation, parse_presentation, parse_word)
from .stephen import (Budget, ClosureOutcome, TriBool, close, close_by_positive_saturation,
                      equal_words, equals_identity_in_group, is_idempotent, natural_leq,
                      schutzenberger)
from .wordgraph import WordGraph, accepts, birooted_isomorphic, munn_tree

__version__ = "0.1.0"

__all__ = [
    "BettiReport", "Complex", "Face", "betti_check",
    "AdianError", "NotAdian", "NotPositive", "PositiveCycle", "PresentationError", "WrongAlphabet",
    "Letter", "Presentation", "Relation", "build_bisided", "check_star", "classify", "is_adian",
    "is_forest", "make_presentation", "parse_presentation", "parse_word",
    "Budget", "ClosureOutcome", "TriBool", "close", "close_by_positive_saturation", "equal_words",
    "equals_identity_in_group", "is_idempotent", "natural_leq", "schutzenberger",
    "WordGraph", "accepts", "birooted_isomorphic", "munn_tree",
]
