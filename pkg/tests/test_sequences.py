"""Sequence verifiers, enumeration, counting, coloring, and averages."""

import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from pressing_lab import _kernels
from pressing_lab.gf2 import Gf2Matrix, PermutationMap
from pressing_lab.graph import (
    BicoloredGraph,
    PressingSequence,
    augmented_adjacency,
    components_ok,
    press,
    pressing_number,
)
from pressing_lab.sequences import (
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


def G(n, colors, edges=()):
    return BicoloredGraph(n, colors, edges)


def edge_bw():
    return G(2, "BW", [(1, 2)])


def triangle_bbb():
    return G(3, "BBB", [(1, 2), (1, 3), (2, 3)])


def all_cells(n):
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def all_graphs(n):
    cells = all_cells(n)
    for ebits in range(1 << len(cells)):
        edges = [cells[k] for k in range(len(cells)) if (ebits >> k) & 1]
        for cbits in range(1 << n):
            colors = "".join("B" if (cbits >> i) & 1 else "W" for i in range(n))
            yield BicoloredGraph(n, colors, edges)


def all_edge_sets(n):
    cells = all_cells(n)
    for ebits in range(1 << len(cells)):
        yield [cells[k] for k in range(len(cells)) if (ebits >> k) & 1]


def all_partial_sequences(n):
    for r in range(n + 1):
        for sub in itertools.permutations(range(1, n + 1), r):
            yield sub


def brute_simulate(g, seq):
    cur = g
    for v in seq:
        if not cur.is_black(v):
            return False
        cur = press(cur, v)
    return cur.colors == "W" * g.n and not cur.edges


# --- reports -----------------------------------------------------------------


def test_report_witness_discipline():
    VerificationReport("simulation", True)
    VerificationReport("simulation", False, 3)
    with pytest.raises(ValueError):
        VerificationReport("simulation", True, 3)
    with pytest.raises(ValueError):
        VerificationReport("simulation", False)


# --- individual verifier examples ---------------------------------------------


def test_simulation_examples():
    assert verify_simulation(G(2, "WW"), ()).verdict is True
    assert verify_simulation(edge_bw(), (1, 2)).verdict is True
    rep = verify_simulation(edge_bw(), (2, 1))
    assert rep.verdict is False and rep.witness == 1
    rep = verify_simulation(G(3, "BWW", [(1, 3)]), (1,))
    assert rep.verdict is False and rep.witness == "residue nonempty"
    with pytest.raises(ValueError):
        verify_simulation(edge_bw(), (3,))


def test_minors_examples():
    assert verify_minors(edge_bw(), (1, 2)).verdict is True
    assert verify_minors(edge_bw(), (2, 1)).verdict is False
    assert verify_minors(triangle_bbb(), (1,)).verdict is True


def test_matchings_examples():
    assert verify_matchings(edge_bw(), (1, 2)).verdict is True
    assert verify_matchings(G(1, "B"), (1,)).verdict is True
    assert verify_matchings(G(2, "WW", [(1, 2)]), (1, 2)).verdict is False


def test_cholesky_examples():
    assert verify_cholesky(edge_bw(), (1, 2)).verdict is True
    assert verify_cholesky(edge_bw(), (2, 1)).verdict is False
    assert verify_cholesky(G(3, "WWW"), ()).verdict is True


def test_psi_examples():
    assert verify_psi(edge_bw(), (1, 2), (1, 2)).verdict is True
    rep = verify_psi(edge_bw(), (1, 2), (2, 1))
    assert rep.verdict is False and rep.witness is not None
    assert verify_psi(G(1, "B"), (1,), (1,)).verdict is True


def test_psi_preconditions():
    with pytest.raises(ValueError):
        verify_psi(edge_bw(), (2, 1), (1, 2))  # base does not simulate
    with pytest.raises(ValueError, match="full rank"):
        verify_psi(G(2, "WW"), (1, 2), (1, 2))  # rank 0 < 2, base vacuous-false
    with pytest.raises(ValueError):
        verify_psi(edge_bw(), (1,), (1, 2))  # short base
    with pytest.raises(ValueError):
        verify_psi(edge_bw(), (1, 2), (1,))  # short seq


def test_qu_relation_examples():
    i2 = Gf2Matrix.identity(2)
    assert qu_relation(i2, PermutationMap.identity(2)) == (i2, i2)
    L = Gf2Matrix([[1, 0], [1, 1]])
    got = qu_relation(L, PermutationMap.identity(2))
    assert got is not None
    q, u = got
    assert q @ u == L.transpose()
    assert qu_relation(L, PermutationMap((2, 1))) is None
    with pytest.raises(ValueError):
        qu_relation(Gf2Matrix([[1, 1], [0, 1]]), PermutationMap.identity(2))
    with pytest.raises(ValueError):
        qu_relation(Gf2Matrix([[1, 0], [1, 0]]), PermutationMap.identity(2))


def test_qu_relation_tracks_simulation():
    # success of the QU factorization = sigma presses out the graph of L L^T
    rng = random.Random(19)
    for _ in range(100):
        n = rng.randrange(1, 6)
        low = [[1 if i == j else (rng.randrange(2) if j < i else 0) for j in range(n)] for i in range(n)]
        L = Gf2Matrix(low)
        a = L @ L.transpose()
        edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if a.get(u, v)]
        colors = "".join("B" if a.get(v, v) else "W" for v in range(1, n + 1))
        g = BicoloredGraph(n, colors, edges)
        img = list(range(1, n + 1))
        rng.shuffle(img)
        sigma = PermutationMap(tuple(img))
        want = verify_simulation(g, tuple(img)).verdict
        assert (qu_relation(L, sigma) is not None) == want


# --- cross-verifier agreement -------------------------------------------------


def test_five_way_agreement_small():
    for n in [1, 2, 3]:
        for g in all_graphs(n):
            a = augmented_adjacency(g)
            full_rank = pressing_number(g) == n
            base = None
            if full_rank and components_ok(g):
                base = next(iter(enumerate_sequences(g, limit=1)), None)
            for seq in all_partial_sequences(n):
                want = brute_simulate(g, seq)
                assert verify_simulation(g, seq).verdict == want
                assert verify_minors(g, seq).verdict == want
                assert verify_matchings(g, seq).verdict == want
                assert verify_cholesky(g, seq).verdict == want
                if base is not None and len(seq) == n:
                    assert verify_psi(g, base, seq).verdict == want


# --- enumeration and counting -------------------------------------------------


def test_enumerate_examples():
    assert [s.vertices for s in enumerate_sequences(G(2, "WW"))] == [()]
    assert [s.vertices for s in enumerate_sequences(edge_bw())] == [(1, 2)]
    assert [s.vertices for s in enumerate_sequences(triangle_bbb())] == [(1,), (2,), (3,)]
    assert list(enumerate_sequences(G(2, "WW", [(1, 2)]))) == []


def test_enumerate_limit_and_order():
    assert [s.vertices for s in enumerate_sequences(triangle_bbb(), limit=2)] == [(1,), (2,)]
    assert list(enumerate_sequences(triangle_bbb(), limit=0)) == []
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randrange(1, 6)
        edges = [c for c in all_cells(n) if rng.randrange(2)]
        colors = "".join(rng.choice("BW") for _ in range(n))
        g = BicoloredGraph(n, colors, edges)
        seqs = [s.vertices for s in enumerate_sequences(g)]
        assert seqs == sorted(seqs)
        assert len(set(seqs)) == len(seqs)


def test_sequences_all_simulate_with_rank_length():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randrange(1, 7)
        edges = [c for c in all_cells(n) if rng.randrange(2)]
        colors = "".join(rng.choice("BW") for _ in range(n))
        g = BicoloredGraph(n, colors, edges)
        r = pressing_number(g)
        for s in enumerate_sequences(g, limit=200):
            assert len(s) == r
            assert brute_simulate(g, s.vertices)


def test_count_examples():
    assert count_sequences(edge_bw()) == 1
    assert count_sequences(triangle_bbb()) == 3
    assert count_sequences(G(2, "WW", [(1, 2)])) == 0
    assert count_sequences(G(1, "W")) == 1


def test_count_matches_enumeration():
    # compiled counter against the Python generator, exhaustive then random
    for n in [1, 2, 3]:
        for g in all_graphs(n):
            assert count_sequences(g) == sum(1 for _ in enumerate_sequences(g))
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randrange(4, 8)
        edges = [c for c in all_cells(n) if rng.randrange(2)]
        colors = "".join(rng.choice("BW") for _ in range(n))
        g = BicoloredGraph(n, colors, edges)
        assert count_sequences(g) == sum(1 for _ in enumerate_sequences(g))


def test_count_wide_graph_fallback():
    n = 70
    assert count_sequences(BicoloredGraph(n, "W" * n)) == 1
    assert count_sequences(BicoloredGraph(n, "B" + "W" * (n - 1))) == 1


def test_automorphisms_permute_sequences():
    for n in [2, 3, 4]:
        for g in all_graphs(n):
            seqs = {s.vertices for s in enumerate_sequences(g)}
            if not seqs:
                continue
            for img in itertools.permutations(range(1, n + 1)):
                pi = PermutationMap(img)
                preserves = all(
                    g.has_edge(pi(u), pi(v)) == g.has_edge(u, v)
                    for u in range(1, n + 1)
                    for v in range(u + 1, n + 1)
                ) and all(g.is_black(pi(v)) == g.is_black(v) for v in range(1, n + 1))
                if not preserves:
                    continue
                for s in seqs:
                    assert tuple(pi(v) for v in s) in seqs


# --- unique coloring ----------------------------------------------------------


def test_unique_coloring_examples():
    assert unique_coloring(1, [], (1,)) == "B"
    assert unique_coloring(2, [(1, 2)], (1, 2)) == "BW"
    assert unique_coloring(2, [(1, 2)], (2, 1)) == "WB"
    with pytest.raises(ValueError):
        unique_coloring(2, [(1, 2)], (1,))
    with pytest.raises(ValueError):
        unique_coloring(2, [(1, 3)], (1, 2))


def test_unique_coloring_is_the_unique_verifier():
    for n in [1, 2, 3, 4]:
        for edges in all_edge_sets(n):
            for order in itertools.permutations(range(1, n + 1)):
                winners = []
                for cbits in range(1 << n):
                    colors = "".join("B" if (cbits >> i) & 1 else "W" for i in range(n))
                    if brute_simulate(BicoloredGraph(n, colors, edges), order):
                        winners.append(colors)
                assert len(winners) == 1
                assert unique_coloring(n, edges, order) == winners[0]


# --- averages -----------------------------------------------------------------


def test_average_examples():
    assert average_count(1, []) == Fraction(1, 2)
    assert average_count(2, [(1, 2)]) == Fraction(1, 2)
    assert average_count(3, [(1, 2), (1, 3), (2, 3)]) == Fraction(3, 4)
    with pytest.raises(ValueError):
        average_count(13, [])


def test_full_length_count_kernel_matches_enumeration():
    # the subset DP used for averages, against the press-simulation counter
    for n in [1, 2, 3, 4]:
        for g in all_graphs(n):
            adj = np.array(g._adj, dtype=np.int64)
            dp = int(_kernels.count_full_orderings(adj, np.int64(g._black), n))
            want = count_sequences(g) if pressing_number(g) == n else 0
            assert dp == want


def test_average_total_matches_per_coloring_sum():
    rng = random.Random(11)
    for n in [1, 2, 3, 4]:
        for edges in all_edge_sets(n):
            adj = [0] * n
            for u, v in edges:
                adj[u - 1] |= 1 << (v - 1)
                adj[v - 1] |= 1 << (u - 1)
            arr = np.array(adj, dtype=np.int64)
            assert int(_kernels.average_total(arr, n)) == int(
                _kernels.sum_counts_over_colorings(arr, n)
            )
    for n in [5, 6, 7]:
        for _ in range(5):
            adj = [0] * n
            for u, v in all_cells(n):
                if rng.randrange(2):
                    adj[u - 1] |= 1 << (v - 1)
                    adj[v - 1] |= 1 << (u - 1)
            arr = np.array(adj, dtype=np.int64)
            assert int(_kernels.average_total(arr, n)) == int(
                _kernels.sum_counts_over_colorings(arr, n)
            )


def test_average_equals_factorial_over_power():
    rng = random.Random(13)
    for n in [1, 2, 3, 4]:
        for edges in all_edge_sets(n):
            assert average_count(n, edges) == Fraction(math.factorial(n), 2**n)
    for n in [5, 6, 8]:
        edges = [c for c in all_cells(n) if rng.randrange(2)]
        assert average_count(n, edges) == Fraction(math.factorial(n), 2**n)
