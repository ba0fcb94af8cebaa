"""Residual finite-state automata inference from observation tables."""

from .automata import (
    EPSILON,
    Automaton,
    ContractError,
    InputError,
    ParseError,
    Word,
    determinize,
    determinize_labeled,
    format_automaton,
    isomorphic,
    minimize,
    parse_automaton,
    reverse_automaton,
    reverse_word,
    shortest_difference_witness,
    trim,
    word,
)
from .learners import (
    DiagnosticError,
    LearnerResult,
    lstar_col,
    nlstar,
    two_step_prime_contexts,
    two_step_reversal,
)
from .residuals import (
    ResidualIndex,
    StateSetFamily,
    c_of_b,
    canonical_rfsa,
    is_coverable_state,
    is_prime,
    min_distinguishing_context_count,
    reachable_state_sets,
    residual_index,
)
from .tables import (
    ModifiedTable,
    ObservationTable,
    apply_modifications,
    derive_rfsa,
    derive_dfa,
    derive_reversal_rfsa,
    modified_row_automaton,
)
from .teacher import QueryStats, ReversalTeacher, TeacherSession, reversal_teacher

__all__ = [
    "EPSILON",
    "Automaton",
    "ContractError",
    "DiagnosticError",
    "InputError",
    "LearnerResult",
    "ModifiedTable",
    "ObservationTable",
    "ParseError",
    "QueryStats",
    "ResidualIndex",
    "ReversalTeacher",
    "StateSetFamily",
    "TeacherSession",
    "Word",
    "apply_modifications",
    "c_of_b",
    "canonical_rfsa",
    "derive_rfsa",
    "derive_dfa",
    "derive_reversal_rfsa",
    "determinize",
    "determinize_labeled",
    "format_automaton",
    "is_coverable_state",
    "is_prime",
    "isomorphic",
    "lstar_col",
    "min_distinguishing_context_count",
    "minimize",
    "modified_row_automaton",
    "nlstar",
    "parse_automaton",
    "reachable_state_sets",
    "residual_index",
    "reverse_automaton",
    "reverse_word",
    "reversal_teacher",
    "shortest_difference_witness",
    "trim",
    "two_step_prime_contexts",
    "two_step_reversal",
    "word",
]
