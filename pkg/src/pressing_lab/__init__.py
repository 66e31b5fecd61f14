"""Pressing games on bicolored graphs and the GF(2) algebra behind them.

A press on a black vertex complements its closed neighborhood and flips
those colors; a successful sequence of presses leaves the graph empty
and all white. Everything observable about that game lives in the
augmented adjacency matrix over GF(2): sequence length is its rank,
success is a no-swap elimination pattern, and five different criteria
decide it. The package exposes the matrix layer (gf2), the graph layer
(graph), verification and counting (sequences), landscape experiments
(explorer), and a command line (cli).
"""

from .gf2 import (
    EliminationTrace,
    Gf2Matrix,
    PermutationMap,
    cholesky,
    conjugate,
    determinant,
    elimination_step,
    elimination_trace,
    is_lpn,
    is_orthogonal,
    leading_principal_minors,
    lu_no_pivot,
    orthogonalize,
    qu_factor,
    rank,
)
from .graph import (
    BLACK,
    WHITE,
    BcgError,
    BicoloredGraph,
    LoopyGraph,
    PressingNumber,
    PressingSequence,
    augmented_adjacency,
    components_ok,
    construct_successful_sequence,
    loopy_graph,
    matching_parity_bruteforce,
    matching_parity_det,
    press,
    pressing_number,
)
from .sequences import (
    VerificationReport,
    average_count,
    count_sequences,
    enumerate_sequences,
    qu_relation,
    unique_coloring,
    verify_cholesky,
    verify_matchings,
    verify_minors,
    verify_psi,
    verify_simulation,
)
from .explorer import (
    SEQUENCE_BUDGET,
    EditGraph,
    build_edit_graph,
    edit_distance,
    find_uniquely_pressable,
    is_connected,
    random_walk,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "EliminationTrace",
    "Gf2Matrix",
    "PermutationMap",
    "cholesky",
    "conjugate",
    "determinant",
    "elimination_step",
    "elimination_trace",
    "is_lpn",
    "is_orthogonal",
    "leading_principal_minors",
    "lu_no_pivot",
    "orthogonalize",
    "qu_factor",
    "rank",
    "BLACK",
    "WHITE",
    "BcgError",
    "BicoloredGraph",
    "LoopyGraph",
    "PressingNumber",
    "PressingSequence",
    "augmented_adjacency",
    "components_ok",
    "construct_successful_sequence",
    "loopy_graph",
    "matching_parity_bruteforce",
    "matching_parity_det",
    "press",
    "pressing_number",
    "VerificationReport",
    "average_count",
    "count_sequences",
    "enumerate_sequences",
    "qu_relation",
    "unique_coloring",
    "verify_cholesky",
    "verify_matchings",
    "verify_minors",
    "verify_psi",
    "verify_simulation",
    "SEQUENCE_BUDGET",
    "EditGraph",
    "build_edit_graph",
    "edit_distance",
    "find_uniquely_pressable",
    "is_connected",
    "random_walk",
]
