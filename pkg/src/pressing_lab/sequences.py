"""Pressing-sequence verification, enumeration, counting, and the exact
average over colorings.

Five independent verifiers decide whether a sequence empties a graph:
direct simulation, leading principal minors of the permuted matrix,
matching parities of the loopy graph, the no-swap Cholesky diagonal, and
Gram-Schmidt orthogonality. They always agree; each one is a separate
route through the theory, so the test suite plays them against each
other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Tuple

import numpy as np

from . import _kernels
from .gf2 import (
    Gf2Matrix,
    PermutationMap,
    cholesky,
    conjugate,
    is_orthogonal,
    leading_principal_minors,
    orthogonalize,
    qu_factor,
    rank,
)
from .graph import (
    BicoloredGraph,
    LoopyGraph,
    PressingSequence,
    augmented_adjacency,
    loopy_graph,
    matching_parity_bruteforce,
    matching_parity_det,
    press,
)

__all__ = [
    "PressingSequence",
    "VerificationReport",
    "verify_simulation",
    "verify_minors",
    "verify_matchings",
    "verify_cholesky",
    "verify_psi",
    "qu_relation",
    "enumerate_sequences",
    "count_sequences",
    "unique_coloring",
    "average_count",
]


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one verifier: method label, verdict, and a witness for
    failures (an index or a short reason string)."""

    method: str
    verdict: bool
    witness: Optional[object] = None

    def __post_init__(self) -> None:
        if self.verdict and self.witness is not None:
            raise ValueError("true verdicts carry no witness")
        if not self.verdict and self.witness is None:
            raise ValueError("false verdicts need a witness")


def _as_sequence(G: BicoloredGraph, seq) -> PressingSequence:
    if isinstance(seq, PressingSequence):
        if seq.n != G.n:
            raise ValueError(f"sequence ambient size {seq.n} != graph size {G.n}")
        return seq
    return PressingSequence(tuple(seq), G.n)


def _extended_order(seq: PressingSequence) -> Tuple[int, ...]:
    used = set(seq.vertices)
    return tuple(seq.vertices) + tuple(v for v in range(1, seq.n + 1) if v not in used)


def verify_simulation(G: BicoloredGraph, seq) -> VerificationReport:
    """Press the sequence in order; true iff every pressed vertex is black
    at its turn and the end state is all-white with no edges."""
    seq = _as_sequence(G, seq)
    cur = G
    for idx, v in enumerate(seq.vertices, start=1):
        if not cur.is_black(v):
            return VerificationReport("simulation", False, idx)
        cur = press(cur, v)
    if cur._black or cur.edges:
        return VerificationReport("simulation", False, "residue nonempty")
    return VerificationReport("simulation", True)


def verify_minors(G: BicoloredGraph, seq) -> VerificationReport:
    """Permute the sequence to the front; true iff the leading principal
    minors are nonzero exactly up to the sequence length, which must equal
    the matrix rank."""
    seq = _as_sequence(G, seq)
    a = augmented_adjacency(G)
    k = len(seq)
    r = rank(a)
    if k != r:
        return VerificationReport("minors", False, f"length {k} != rank {r}")
    m = conjugate(a, PermutationMap(_extended_order(seq)))
    minors = leading_principal_minors(m)
    for j in range(1, G.n + 1):
        if minors[j - 1] != (1 if j <= k else 0):
            return VerificationReport("minors", False, j)
    return VerificationReport("minors", True)


def verify_matchings(G: BicoloredGraph, seq) -> VerificationReport:
    """True iff the loopy graph restricted to each prefix of the extended
    order has odd perfect-matching parity exactly up to the sequence
    length, which must equal the matrix rank."""
    seq = _as_sequence(G, seq)
    k = len(seq)
    r = rank(augmented_adjacency(G))
    if k != r:
        return VerificationReport("matchings", False, f"length {k} != rank {r}")
    h = loopy_graph(G)
    order = _extended_order(seq)
    for j in range(1, G.n + 1):
        parity = matching_parity_bruteforce(h, order[:j])
        if parity != (1 if j <= k else 0):
            return VerificationReport("matchings", False, j)
    return VerificationReport("matchings", True)


def verify_cholesky(G: BicoloredGraph, seq) -> VerificationReport:
    """True iff the permuted matrix factors as L L^T without row swaps,
    the first |seq| diagonal entries of L are ones, and |seq| equals the
    rank (so the trailing diagonal is forced to zero)."""
    seq = _as_sequence(G, seq)
    a = augmented_adjacency(G)
    k = len(seq)
    r = rank(a)
    if k != r:
        return VerificationReport("cholesky", False, f"length {k} != rank {r}")
    m = conjugate(a, PermutationMap(_extended_order(seq)))
    L = cholesky(m)
    if L is None:
        return VerificationReport("cholesky", False, "no decomposition")
    for j in range(1, k + 1):
        if L.get(j, j) != 1:
            return VerificationReport("cholesky", False, j)
    return VerificationReport("cholesky", True)


def verify_psi(G: BicoloredGraph, base, seq) -> VerificationReport:
    """Full-rank criterion via Gram-Schmidt.

    Relabel the graph by a known successful full-length sequence `base` so
    that pressing 1..n in order works; take the Cholesky factor L of the
    relabeled matrix and express `seq` in relabeled coordinates as a
    permutation matrix P. The verdict is whether the orthogonalization of
    L^T P^T is orthogonal.
    """
    base = _as_sequence(G, base)
    seq = _as_sequence(G, seq)
    n = G.n
    if len(base) != n:
        raise ValueError("base must be a full-length sequence")
    if len(seq) != n:
        raise ValueError("seq must be full-length for the psi criterion")
    a = augmented_adjacency(G)
    r = rank(a)
    if r < n:
        raise ValueError(f"psi criterion requires full rank: rank {r} < {n}")
    if not verify_simulation(G, base).verdict:
        raise ValueError("base is not a successful sequence")
    sigma_base = PermutationMap(tuple(base))
    m = conjugate(a, sigma_base)
    L = cholesky(m)
    if L is None:
        raise AssertionError("relabeling by a successful base must factor")
    relabeled = sigma_base.inverse().compose(PermutationMap(tuple(seq)))
    b = L.transpose() @ relabeled.to_matrix().transpose()
    if is_orthogonal(orthogonalize(b)):
        return VerificationReport("psi", True)
    return VerificationReport("psi", False, "psi output not orthogonal")


def qu_relation(L: Gf2Matrix, sigma: PermutationMap):
    """QU factorization of L^T P^T for an invertible lower-triangular L;
    None exactly when sigma fails as a pressing order of the graph whose
    matrix is L L^T."""
    if L.n_rows != L.n_cols:
        raise ValueError("L must be square")
    n = L.n_rows
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if L.get(i, j):
                raise ValueError("L must be lower-triangular")
    if any(L.get(i, i) != 1 for i in range(1, n + 1)):
        raise ValueError("L must be invertible (unit diagonal)")
    if sigma.n != n:
        raise ValueError("permutation size mismatch")
    return qu_factor(L.transpose() @ sigma.to_matrix().transpose())


# --- enumeration and counting ------------------------------------------------


def _press_masks(adj, black, v0):
    ns = adj[v0] | (1 << v0)
    out = list(adj)
    u = 0
    m = ns
    while m:
        if m & 1:
            out[u] ^= ns & ~(1 << u)
        m >>= 1
        u += 1
    return out, black ^ ns


def _components_ok_masks(adj, black, n):
    seen = 0
    for v in range(n):
        if (seen >> v) & 1:
            continue
        comp = 1 << v
        frontier = comp
        while frontier:
            nxt = 0
            u = 0
            m = frontier
            while m:
                if m & 1:
                    nxt |= adj[u]
                m >>= 1
                u += 1
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        if comp & (comp - 1) and not (comp & black):
            return False
    return True


def enumerate_sequences(
    G: BicoloredGraph, limit: Optional[int] = None
) -> Iterator[PressingSequence]:
    """Yield every successful pressing sequence in lexicographic order.

    Depth-first over currently-black vertices in index order; a branch is
    dropped as soon as the pressed graph has a nontrivial all-white
    component (at which point no completion can succeed). All yielded
    sequences share the same length, the pressing number.
    """
    n = G.n
    adj = list(G._adj)
    black = G._black
    if not _components_ok_masks(adj, black, n):
        return
    remaining = [limit]

    def dfs(adj, black, prefix):
        if black == 0:
            if not any(adj):
                yield PressingSequence(tuple(prefix), n)
            return
        for v in range(n):
            if not ((black >> v) & 1):
                continue
            nadj, nblack = _press_masks(adj, black, v)
            if not _components_ok_masks(nadj, nblack, n):
                continue
            prefix.append(v + 1)
            yield from dfs(nadj, nblack, prefix)
            prefix.pop()

    for seq in dfs(adj, black, []):
        if remaining[0] is not None:
            if remaining[0] <= 0:
                return
            remaining[0] -= 1
        yield seq


def count_sequences(G: BicoloredGraph) -> int:
    """Number of successful pressing sequences."""
    n = G.n
    if n > 63:
        return sum(1 for _ in enumerate_sequences(G))
    adj = np.array(G._adj, dtype=np.int64)
    st_adj = np.empty((n + 1, n), dtype=np.int64)
    st_black = np.empty(n + 1, dtype=np.int64)
    st_v = np.empty(n + 1, dtype=np.int64)
    return int(
        _kernels.count_sequences_limited(
            adj, np.int64(G._black), n, np.int64(1) << 62, st_adj, st_black, st_v
        )
    )


# --- colorings ---------------------------------------------------------------


def _validated_plain_graph(n: int, edges) -> tuple:
    if n < 1:
        raise ValueError("graph needs at least one vertex")
    adj = [0] * n
    for u, v in edges:
        u, v = int(u), int(v)
        if not (1 <= u <= n and 1 <= v <= n) or u == v:
            raise ValueError(f"bad edge ({u},{v}) on [{n}]")
        adj[u - 1] |= 1 << (v - 1)
        adj[v - 1] |= 1 << (u - 1)
    return tuple(adj)


def unique_coloring(n: int, edges, sigma) -> str:
    """The one coloring of the plain graph for which sigma presses out.

    Walks the sequence left to right keeping every prefix's matching
    parity odd: at each step the two color choices for the next vertex
    give opposite parities (the determinant is affine in the diagonal
    entry), so exactly one choice works.
    """
    adj = _validated_plain_graph(n, edges)
    order = tuple(int(v) for v in sigma)
    if sorted(order) != list(range(1, n + 1)):
        raise ValueError("sigma must be a full-length ordering of [n]")
    edge_list = tuple(
        (u + 1, v + 1) for u in range(n) for v in range(u + 1, n) if (adj[u] >> v) & 1
    )
    loops = [0] * n
    for k in range(n):
        v = order[k]
        prefix = order[: k + 1]
        h = LoopyGraph(n=n, edges=edge_list, loops=tuple(loops))
        if matching_parity_det(h, prefix) != 1:
            loops[v - 1] = 1
    return "".join("B" if b else "W" for b in loops)


_AVERAGE_BUDGET = 12


def average_count(n: int, edges) -> Fraction:
    """Exact mean, over all 2^n colorings, of the number of length-n
    successful pressing sequences."""
    adj = _validated_plain_graph(n, edges)
    if n > _AVERAGE_BUDGET:
        raise ValueError(f"n={n} exceeds the exhaustive budget {_AVERAGE_BUDGET}")
    total = int(_kernels.average_total(np.array(adj, dtype=np.int64), n))
    return Fraction(total, 2**n)
