"""Experiments on the landscape of successful sequences.

The successful sequences of a bicolored graph form a graph of their own:
join two sequences when a handful of deletions and insertions turns one
into the other. Whether that graph is always connected is open; this
module builds it, walks it at random, and scans small graphs for the
ones with exactly one successful sequence.
"""

from __future__ import annotations

import functools
import itertools
import os
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from . import _kernels
from .graph import BicoloredGraph, PressingSequence, construct_successful_sequence
from .sequences import enumerate_sequences

__all__ = [
    "SEQUENCE_BUDGET",
    "EditGraph",
    "edit_distance",
    "build_edit_graph",
    "is_connected",
    "random_walk",
    "find_uniquely_pressable",
]

# build_edit_graph refuses graphs with more successful sequences than this
SEQUENCE_BUDGET = 100_000


def _apply_thread_cap() -> None:
    # PRESSING_LAB_THREADS caps numba workers; 0, empty, or junk means auto
    raw = os.environ.get("PRESSING_LAB_THREADS", "").strip()
    if not raw:
        return
    try:
        want = int(raw)
    except ValueError:
        return
    if want <= 0:
        return
    import numba

    numba.set_num_threads(min(want, numba.config.NUMBA_NUM_THREADS))


def edit_distance(s, t) -> int:
    """Fewest single-element deletions plus insertions turning s into t.

    Equals len(s) + len(t) - 2 * LCS(s, t).
    """
    a = tuple(s)
    b = tuple(t)
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b):
            cur.append(prev[j] + 1 if x == y else max(prev[j + 1], cur[j]))
        prev = cur
    return len(a) + len(b) - 2 * prev[len(b)]


@dataclass(frozen=True)
class EditGraph:
    """Successful sequences of one graph, joined when few edits apart.

    Vertices are the sequences in lexicographic order; a vertex id is the
    0-based position in that order. Edges are id pairs (i, j) with i < j
    at edit distance at most max_edit.
    """

    sequences: Tuple[PressingSequence, ...]
    edges: Tuple[Tuple[int, int], ...]
    max_edit: int

    def __post_init__(self) -> None:
        m = len(self.sequences)
        for i, j in self.edges:
            if not (0 <= i < j < m):
                raise ValueError(f"bad edge ({i}, {j}) on {m} sequences")

    def neighbor_lists(self) -> Tuple[Tuple[int, ...], ...]:
        out: List[List[int]] = [[] for _ in self.sequences]
        for i, j in self.edges:
            out[i].append(j)
            out[j].append(i)
        return tuple(tuple(sorted(x)) for x in out)

    def to_text(self) -> str:
        lines = [f"{i}: {s.to_text()}".rstrip() for i, s in enumerate(self.sequences)]
        lines.extend(f"{i} {j}" for i, j in self.edges)
        return "\n".join(lines) + "\n"


def build_edit_graph(G: BicoloredGraph, max_edit: int = 4) -> EditGraph:
    """Graph on all successful sequences of G under small edit distance.

    Raises ValueError when G has more than SEQUENCE_BUDGET successful
    sequences or when max_edit is negative.
    """
    if max_edit < 0:
        raise ValueError(f"max_edit must be nonnegative, got {max_edit}")
    seqs = tuple(enumerate_sequences(G, limit=SEQUENCE_BUDGET + 1))
    if len(seqs) > SEQUENCE_BUDGET:
        raise ValueError(
            f"sequence count exceeds budget: more than {SEQUENCE_BUDGET}"
        )
    if len(seqs) <= 1 or len(seqs[0]) == 0:
        return EditGraph(seqs, (), max_edit)
    arr = np.array([s.vertices for s in seqs], dtype=np.int64)
    _apply_thread_cap()
    eu, ev = _kernels.edit_pairs(arr, max_edit)
    edges = tuple(zip(eu.tolist(), ev.tolist()))
    return EditGraph(seqs, edges, max_edit)


def is_connected(P: EditGraph) -> bool:
    """Connectivity by traversal; vacuously true on at most one vertex."""
    m = len(P.sequences)
    if m <= 1:
        return True
    nl = P.neighbor_lists()
    seen = [False] * m
    seen[0] = True
    stack = [0]
    reached = 1
    while stack:
        v = stack.pop()
        for u in nl[v]:
            if not seen[u]:
                seen[u] = True
                reached += 1
                stack.append(u)
    return reached == m


@functools.lru_cache(maxsize=8)
def _walk_arena(G: BicoloredGraph, max_edit: int):
    eg = build_edit_graph(G, max_edit)
    index: Dict[Tuple[int, ...], int] = {
        s.vertices: i for i, s in enumerate(eg.sequences)
    }
    return eg, index, eg.neighbor_lists()


def random_walk(
    G: BicoloredGraph, steps: int, seed: int, max_edit: int = 4
) -> PressingSequence:
    """Endpoint of a lazy random walk on the edit graph of G.

    Starts at the constructed sequence; each step stays put with
    probability 1/2, otherwise moves to a uniformly random neighbor.
    Bit-for-bit reproducible for a fixed seed.
    """
    if steps < 0:
        raise ValueError(f"steps must be nonnegative, got {steps}")
    start = construct_successful_sequence(G)
    eg, index, nl = _walk_arena(G, max_edit)
    cur = index[start.vertices]
    rng = np.random.default_rng(seed)
    for _ in range(steps):
        if int(rng.integers(0, 2)) == 1:
            nbrs = nl[cur]
            if nbrs:
                cur = nbrs[int(rng.integers(0, len(nbrs)))]
    return eg.sequences[cur]


def find_uniquely_pressable(n: int) -> List[BicoloredGraph]:
    """All graphs on n vertices with exactly one successful sequence.

    Scans every edge set and coloring, keeps those with a unique
    sequence, and deduplicates up to color-preserving isomorphism by the
    minimum (edges, colors) encoding over all relabelings. The all-white
    empty graph is excluded: its empty sequence is degenerate. Returned
    canonical representatives are sorted by encoding. Supports n <= 7;
    the relabeling sweep is factorial by design.
    """
    if not 1 <= n <= 7:
        raise ValueError(f"search supports 1 <= n <= 7, got {n}")
    cells = [(u, v) for u in range(n) for v in range(u + 1, n)]
    pair_u = np.array([u for u, _ in cells], dtype=np.int64)
    pair_v = np.array([v for _, v in cells], dtype=np.int64)
    out_e, out_c = _kernels.uniquely_pressable_scan(n, pair_u, pair_v)
    keep = ~((out_e == 0) & (out_c == 0))
    out_e, out_c = out_e[keep], out_c[keep]
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    pair_index = np.zeros((n, n), dtype=np.int64)
    for t, (u, v) in enumerate(cells):
        pair_index[u, v] = pair_index[v, u] = t
    keys = _kernels.canonical_keys(out_e, out_c, n, perms, pair_index)
    graphs = []
    for key in sorted(set(keys.tolist())):
        em, cm = key >> n, key & ((1 << n) - 1)
        edges = [(u + 1, v + 1) for t, (u, v) in enumerate(cells) if (em >> t) & 1]
        colors = "".join("B" if (cm >> i) & 1 else "W" for i in range(n))
        graphs.append(BicoloredGraph(n, colors, edges))
    return graphs
