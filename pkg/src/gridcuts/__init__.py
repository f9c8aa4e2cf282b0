"""gridcuts: cutting an m x n grid into two congruent connected pieces.

The package builds the column-reading finite state machine that recognizes
valid cuts, turns its transfer matrix into an exact rational generating
function, extracts terms, recurrences and dominant-pole asymptotics, and
checks all of it against a brute-force bitboard oracle.
"""

from .board import (
    Board,
    ColumnPattern,
    Cut,
    complete_board,
    component_counts,
    is_canonical,
    is_graham,
    revcomp,
    transform,
)
from .automaton import (
    Automaton,
    acceptance,
    build_canonical,
    build_general,
    transfer_matrix,
)
from .oracle import (
    BudgetError,
    CountReport,
    count_report,
    delahaye_report,
    enumerate_canonical,
    regenerate_figures,
)
from .series import (
    Polynomial,
    RationalFunction,
    Recurrence,
    generating_function,
    recurrence_of,
    resolvent_sum,
    series_terms,
)
from .asymptotics import AsymptoticEstimate, dominant_form, error_profile, isolate_real_roots

__version__ = "0.1.0"

__all__ = [
    "AsymptoticEstimate",
    "Automaton",
    "Board",
    "BudgetError",
    "ColumnPattern",
    "CountReport",
    "Cut",
    "Polynomial",
    "RationalFunction",
    "Recurrence",
    "acceptance",
    "build_canonical",
    "build_general",
    "complete_board",
    "component_counts",
    "count_report",
    "delahaye_report",
    "dominant_form",
    "enumerate_canonical",
    "error_profile",
    "generating_function",
    "is_canonical",
    "is_graham",
    "isolate_real_roots",
    "recurrence_of",
    "regenerate_figures",
    "resolvent_sum",
    "revcomp",
    "series_terms",
    "transfer_matrix",
    "transform",
]
