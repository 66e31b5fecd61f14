"""Bicolored graphs, the press move, and their GF(2) matrix views.

Vertices are 1-indexed everywhere in the public API. Adjacency is kept
internally as per-vertex neighbor bitmasks (plain Python ints, so any n
works), with black vertices as one more mask.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Tuple

from .gf2 import Gf2Matrix, rank

BLACK = "B"
WHITE = "W"


class BcgError(ValueError):
    """Malformed .bcg input; message carries the offending line number."""


class PressingNumber(int):
    """Number of presses needed to empty the graph, i.e. rank of the
    augmented adjacency matrix. reachable is False when no successful
    sequence exists (some nontrivial component is all white)."""

    def __new__(cls, value: int, reachable: bool) -> "PressingNumber":
        obj = super().__new__(cls, value)
        obj.reachable = reachable
        return obj

    def __repr__(self) -> str:
        tag = "" if self.reachable else ", unreachable"
        return f"PressingNumber({int(self)}{tag})"


@dataclass(frozen=True)
class PressingSequence:
    """An ordered selection of distinct vertices of [n]."""

    vertices: tuple
    n: int

    def __post_init__(self) -> None:
        vs = tuple(int(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if self.n < 0:
            raise ValueError("ambient vertex count must be nonnegative")
        seen = set()
        for v in vs:
            if not 1 <= v <= self.n:
                raise ValueError(f"vertex {v} outside [{self.n}]")
            if v in seen:
                raise ValueError(f"vertex {v} repeats")
            seen.add(v)

    @classmethod
    def from_text(cls, text: str, n: int) -> "PressingSequence":
        """Parse comma-separated vertices; empty text is the empty sequence."""
        text = text.strip()
        if not text:
            return cls((), n)
        try:
            vs = tuple(int(part) for part in text.split(","))
        except ValueError:
            raise ValueError(f"bad sequence text {text!r}") from None
        return cls(vs, n)

    def to_text(self) -> str:
        return ",".join(str(v) for v in self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, k):
        return self.vertices[k]


class BicoloredGraph:
    """A simple graph on [n] with a black/white color per vertex."""

    __slots__ = ("n", "_adj", "_black", "_edges")

    def __init__(self, n: int, colors: Sequence[str], edges: Iterable[Tuple[int, int]] = ()) -> None:
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        cols = "".join(colors)
        if len(cols) != n or any(c not in (BLACK, WHITE) for c in cols):
            raise ValueError(f"colors must be {n} characters over B/W")
        adj = [0] * n
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (1 <= u <= n and 1 <= v <= n) or u == v:
                raise ValueError(f"bad edge ({u},{v}) on [{n}]")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge ({key[0]},{key[1]})")
            seen.add(key)
            adj[u - 1] |= 1 << (v - 1)
            adj[v - 1] |= 1 << (u - 1)
        black = 0
        for i, c in enumerate(cols):
            if c == BLACK:
                black |= 1 << i
        self.n = n
        self._adj = tuple(adj)
        self._black = black
        self._edges = tuple(sorted(seen))

    @classmethod
    def _from_masks(cls, n: int, adj: Sequence[int], black: int) -> "BicoloredGraph":
        g = object.__new__(cls)
        g.n = n
        g._adj = tuple(adj)
        g._black = black
        g._edges = tuple(
            (u + 1, v + 1)
            for u in range(n)
            for v in range(u + 1, n)
            if (adj[u] >> v) & 1
        )
        return g

    @property
    def colors(self) -> str:
        return "".join(BLACK if (self._black >> i) & 1 else WHITE for i in range(self.n))

    @property
    def edges(self) -> tuple:
        """Edges as (u, v) pairs with u < v, sorted."""
        return self._edges

    def is_black(self, v: int) -> bool:
        self._check_vertex(v)
        return bool((self._black >> (v - 1)) & 1)

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return u != v and bool((self._adj[u - 1] >> (v - 1)) & 1)

    def neighbors(self, v: int) -> tuple:
        self._check_vertex(v)
        m = self._adj[v - 1]
        return tuple(u + 1 for u in range(self.n) if (m >> u) & 1)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return bin(self._adj[v - 1]).count("1")

    def closed_neighborhood(self, v: int) -> tuple:
        self._check_vertex(v)
        m = self._adj[v - 1] | (1 << (v - 1))
        return tuple(u + 1 for u in range(self.n) if (m >> u) & 1)

    def _check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise ValueError(f"vertex {v} outside [{self.n}]")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BicoloredGraph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj and self._black == other._black

    def __hash__(self) -> int:
        return hash((self.n, self._adj, self._black))

    def __repr__(self) -> str:
        return f"<BicoloredGraph n={self.n} colors={self.colors} edges={len(self._edges)}>"

    # --- .bcg serialization ---------------------------------------------

    @classmethod
    def from_bcg(cls, text: str) -> "BicoloredGraph":
        """Parse the .bcg format: "n <int>", "c <B/W string>", then edge
        lines "e <u> <v>" with u < v. "#" lines and blank lines are skipped."""
        n: Optional[int] = None
        colors: Optional[str] = None
        edges = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            kind = parts[0]
            if kind == "n":
                if n is not None:
                    raise BcgError(f"line {lineno}: duplicate n line")
                if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                    raise BcgError(f"line {lineno}: expected 'n <positive int>'")
                n = int(parts[1])
            elif kind == "c":
                if n is None:
                    raise BcgError(f"line {lineno}: c line before n line")
                if colors is not None:
                    raise BcgError(f"line {lineno}: duplicate c line")
                if len(parts) != 2 or len(parts[1]) != n or any(
                    ch not in "BW" for ch in parts[1]
                ):
                    raise BcgError(f"line {lineno}: expected 'c <{n} chars over B/W>'")
                colors = parts[1]
            elif kind == "e":
                if n is None or colors is None:
                    raise BcgError(f"line {lineno}: e line before n/c lines")
                if len(parts) != 3:
                    raise BcgError(f"line {lineno}: expected 'e <u> <v>'")
                try:
                    u, v = int(parts[1]), int(parts[2])
                except ValueError:
                    raise BcgError(f"line {lineno}: expected integer endpoints") from None
                if not (1 <= u < v <= n):
                    raise BcgError(f"line {lineno}: need 1 <= u < v <= {n}")
                if (u, v) in edges:
                    raise BcgError(f"line {lineno}: duplicate edge ({u},{v})")
                edges.append((u, v))
            else:
                raise BcgError(f"line {lineno}: unknown record {kind!r}")
        if n is None:
            raise BcgError("missing n line")
        if colors is None:
            raise BcgError("missing c line")
        return cls(n, colors, edges)

    def to_bcg(self) -> str:
        lines = [f"n {self.n}", f"c {self.colors}"]
        lines.extend(f"e {u} {v}" for u, v in self._edges)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LoopyGraph:
    """The same edges plus a loop at each vertex that was black."""

    n: int
    edges: tuple
    loops: tuple

    def __post_init__(self) -> None:
        if len(self.loops) != self.n:
            raise ValueError("loops must have one bit per vertex")
        if any(b not in (0, 1) for b in self.loops):
            raise ValueError("loops must be bits")

    def neighbor_mask(self, v: int) -> int:
        m = 0
        for a, b in self.edges:
            if a == v:
                m |= 1 << (b - 1)
            elif b == v:
                m |= 1 << (a - 1)
        return m


def augmented_adjacency(G: BicoloredGraph) -> Gf2Matrix:
    """Adjacency matrix with diagonal ones at black vertices."""
    n = G.n
    rows = []
    for i in range(n):
        m = G._adj[i] | (((G._black >> i) & 1) << i)
        rows.append([(m >> j) & 1 for j in range(n)])
    return Gf2Matrix(rows)


def press(G: BicoloredGraph, v: int) -> BicoloredGraph:
    """Complement the induced subgraph on the closed neighborhood of black
    v and flip every color in it."""
    G._check_vertex(v)
    if not G.is_black(v):
        raise ValueError(f"press of white vertex {v}")
    ns = G._adj[v - 1] | (1 << (v - 1))
    adj = list(G._adj)
    u = 0
    m = ns
    while m:
        if m & 1:
            adj[u] ^= ns & ~(1 << u)
        m >>= 1
        u += 1
    return BicoloredGraph._from_masks(G.n, adj, G._black ^ ns)


def loopy_graph(G: BicoloredGraph) -> LoopyGraph:
    loops = tuple((G._black >> i) & 1 for i in range(G.n))
    return LoopyGraph(n=G.n, edges=G.edges, loops=loops)


_MATCHING_BUDGET = 24


def matching_parity_bruteforce(H: LoopyGraph, S) -> int:
    """Parity of perfect matchings of the induced sub(loopy)graph on S.

    Recursive expansion on the lowest uncovered vertex: cover it by its
    loop (if present) or by an edge to an uncovered neighbor. Results are
    memoized per call on the uncovered-vertex mask.
    """
    verts = sorted(set(int(v) for v in S))
    if any(not 1 <= v <= H.n for v in verts):
        raise ValueError(f"subset not within [{H.n}]")
    if len(verts) > _MATCHING_BUDGET:
        raise ValueError(
            f"subset of {len(verts)} vertices exceeds brute-force budget {_MATCHING_BUDGET}"
        )
    adj = {v: H.neighbor_mask(v) for v in verts}
    smask = 0
    for v in verts:
        smask |= 1 << (v - 1)
    memo = {0: 1}

    def go(mask: int) -> int:
        cached = memo.get(mask)
        if cached is not None:
            return cached
        v = (mask & -mask).bit_length()  # lowest uncovered vertex, 1-indexed
        total = 0
        if H.loops[v - 1]:
            total ^= go(mask & ~(1 << (v - 1)))
        nbrs = adj[v] & mask
        u = 0
        m = nbrs
        while m:
            if m & 1:
                total ^= go(mask & ~(1 << (v - 1)) & ~(1 << u))
            m >>= 1
            u += 1
        memo[mask] = total
        return total

    return go(smask)


def matching_parity_det(H: LoopyGraph, S) -> int:
    """Same parity via the determinant of the principal submatrix of the
    adjacency-plus-loop-diagonal matrix indexed by S."""
    verts = sorted(set(int(v) for v in S))
    if any(not 1 <= v <= H.n for v in verts):
        raise ValueError(f"subset not within [{H.n}]")
    if not verts:
        return 1
    k = len(verts)
    pos = {v: i for i, v in enumerate(verts)}
    rows = [[0] * k for _ in range(k)]
    for i, v in enumerate(verts):
        if H.loops[v - 1]:
            rows[i][i] = 1
        m = H.neighbor_mask(v)
        for u in verts:
            if (m >> (u - 1)) & 1:
                rows[i][pos[u]] = 1
    sub = Gf2Matrix(rows)
    return 1 if rank(sub) == k else 0


def components_ok(G: BicoloredGraph) -> bool:
    """True iff every connected component on 2+ vertices has a black
    vertex. Isolated vertices pass regardless of color."""
    n = G.n
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
                    nxt |= G._adj[u]
                m >>= 1
                u += 1
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        if comp & (comp - 1) and not (comp & G._black):
            return False
    return True


def pressing_number(G: BicoloredGraph) -> PressingNumber:
    """rank of the augmented adjacency matrix, tagged unreachable when no
    successful sequence exists."""
    return PressingNumber(rank(augmented_adjacency(G)), components_ok(G))


def construct_successful_sequence(G: BicoloredGraph) -> PressingSequence:
    """Greedy existence construction.

    While black vertices remain: among them take those with the fewest
    black neighbors, press the one of maximal degree (ties to the smallest
    index). The result always simulates successfully when components_ok
    holds, with length equal to the pressing number.
    """
    if not components_ok(G):
        raise ValueError("no successful sequence exists")
    cur = G
    out = []
    while cur._black:
        best = None
        for v in range(1, cur.n + 1):
            if not cur.is_black(v):
                continue
            bn = bin(cur._adj[v - 1] & cur._black).count("1")
            key = (bn, -cur.degree(v), v)
            if best is None or key < best[0]:
                best = (key, v)
        v = best[1]
        out.append(v)
        cur = press(cur, v)
    if cur._edges:
        raise RuntimeError("construction left a nonempty graph")
    return PressingSequence(tuple(out), G.n)
