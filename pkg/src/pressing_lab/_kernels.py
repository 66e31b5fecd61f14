"""Compiled hot loops: packed GF(2) elimination and small-graph search.

Matrices live as C-contiguous uint64 arrays of shape (n_rows, n_words),
column j stored at word j >> 6, bit j & 63.  Graphs at n <= 16 live as
int64 neighbor bitmasks.  Everything here is wrapped by the public
modules; nothing validates its inputs.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

U64 = np.uint64
I64 = np.int64

# ---------------------------------------------------------------------------
# packed-matrix kernels
# ---------------------------------------------------------------------------


@njit(cache=True)
def parity64(x):
    x ^= x >> U64(32)
    x ^= x >> U64(16)
    x ^= x >> U64(8)
    x ^= x >> U64(4)
    x ^= x >> U64(2)
    x ^= x >> U64(1)
    return x & U64(1)


@njit(cache=True)
def gf2_rank(words, n_rows, n_cols):
    """Row echelon with swaps; returns (rank, row_xor_count)."""
    W = words.copy()
    nw = W.shape[1]
    r = 0
    ops = 0
    for c in range(n_cols):
        wc = c >> 6
        bc = c & 63
        piv = -1
        for i in range(r, n_rows):
            if (W[i, wc] >> bc) & U64(1):
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(wc, nw):
                tmp = W[r, k]
                W[r, k] = W[piv, k]
                W[piv, k] = tmp
        for i in range(r + 1, n_rows):
            if (W[i, wc] >> bc) & U64(1):
                for k in range(wc, nw):
                    W[i, k] ^= W[r, k]
                ops += 1
        r += 1
        if r == n_rows:
            break
    return r, ops


@njit(cache=True)
def gf2_lu_nopivot(words, n):
    """No-swap LU, marching the diagonal.

    At step r: pivot on (r,r) if set; otherwise the rest of column r must
    be zero (the row is absorbed into U and the step is skipped), else the
    elimination stalls.  Returns (ok, L, U, row_xor_count); L has a unit
    diagonal in both branches so it is always invertible.
    """
    W = words.copy()
    nw = W.shape[1]
    L = np.zeros((n, nw), np.uint64)
    U = np.zeros((n, nw), np.uint64)
    ops = 0
    for r in range(n):
        wr = r >> 6
        br = r & 63
        bit = U64(1) << U64(br)
        if (W[r, wr] >> br) & U64(1):
            L[r, wr] |= bit
            for i in range(r + 1, n):
                if (W[i, wr] >> br) & U64(1):
                    L[i, wr] |= bit
                    for k in range(wr, nw):
                        W[i, k] ^= W[r, k]
                    ops += 1
        else:
            for i in range(r + 1, n):
                if (W[i, wr] >> br) & U64(1):
                    return 0, L, U, ops
            L[r, wr] |= bit
        for k in range(nw):
            U[r, k] = W[r, k]
    return 1, L, U, ops


@njit(cache=True)
def gf2_cholesky(words, n):
    """Symmetric M -> L with M = L L^T, or stall.

    Same diagonal march as gf2_lu_nopivot; the diagonal of L records which
    steps pivoted (skipped steps leave a zero column, so L is invertible
    exactly when every step pivoted).
    """
    W = words.copy()
    nw = W.shape[1]
    L = np.zeros((n, nw), np.uint64)
    ops = 0
    for r in range(n):
        wr = r >> 6
        br = r & 63
        bit = U64(1) << U64(br)
        if (W[r, wr] >> br) & U64(1):
            L[r, wr] |= bit
            for i in range(r + 1, n):
                if (W[i, wr] >> br) & U64(1):
                    L[i, wr] |= bit
                    for k in range(wr, nw):
                        W[i, k] ^= W[r, k]
                    ops += 1
        else:
            for i in range(r + 1, n):
                if (W[i, wr] >> br) & U64(1):
                    return 0, L, ops
    return 1, L, ops


@njit(cache=True)
def gf2_orthogonalize(colrows, n):
    """Unnormalized Gram-Schmidt over F2.

    colrows holds the columns of the input as packed rows; the result is
    laid out the same way.  Column k+1 gets every earlier output column
    whose dot with the ORIGINAL column k+1 is odd.
    """
    nw = colrows.shape[1]
    out = colrows.copy()
    ops = 0
    for k in range(n):
        for j in range(k):
            acc = U64(0)
            for w in range(nw):
                acc ^= out[j, w] & colrows[k, w]
            if parity64(acc):
                for w in range(nw):
                    out[k, w] ^= out[j, w]
                ops += 1
    return out, ops


@njit(cache=True)
def gf2_gram_identity(colrows, n):
    """1 iff the packed rows are pairwise orthogonal and self-dot 1."""
    nw = colrows.shape[1]
    for i in range(n):
        for j in range(i, n):
            acc = U64(0)
            for w in range(nw):
                acc ^= colrows[i, w] & colrows[j, w]
            p = parity64(acc)
            if i == j:
                if p == U64(0):
                    return 0
            elif p != U64(0):
                return 0
    return 1


@njit(cache=True)
def gf2_matmul(a, b, n_i, n_k, nw_out):
    """C = A.B: XOR together the B-rows selected by each A-row's bits."""
    c = np.zeros((n_i, nw_out), np.uint64)
    for i in range(n_i):
        for j in range(n_k):
            if (a[i, j >> 6] >> (j & 63)) & U64(1):
                for w in range(nw_out):
                    c[i, w] ^= b[j, w]
    return c


@njit(cache=True)
def gf2_leading_minors(words, n):
    """Bit j-1 = det of the leading j x j block; n independent ranks."""
    out = np.zeros(n, np.uint8)
    nw = words.shape[1]
    buf = np.empty((n, nw), np.uint64)
    for j in range(1, n + 1):
        jw = (j + 63) >> 6
        rem = j & 63
        for i in range(j):
            for k in range(jw):
                buf[i, k] = words[i, k]
            if rem:
                buf[i, jw - 1] &= (U64(1) << U64(rem)) - U64(1)
        r = 0
        for c in range(j):
            wc = c >> 6
            bc = c & 63
            piv = -1
            for i in range(r, j):
                if (buf[i, wc] >> bc) & U64(1):
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for k in range(wc, jw):
                    tmp = buf[r, k]
                    buf[r, k] = buf[piv, k]
                    buf[piv, k] = tmp
            for i in range(r + 1, j):
                if (buf[i, wc] >> bc) & U64(1):
                    for k in range(wc, jw):
                        buf[i, k] ^= buf[r, k]
            r += 1
        if r == j:
            out[j - 1] = 1
    return out


# ---------------------------------------------------------------------------
# small-graph kernels (int64 bitmask adjacency, n <= 16)
# ---------------------------------------------------------------------------


@njit(cache=True)
def components_ok_masks(adj, black, n):
    """True iff every component on >= 2 vertices holds a black vertex."""
    seen = I64(0)
    for v in range(n):
        if (seen >> v) & 1:
            continue
        comp = I64(1) << v
        frontier = comp
        while frontier != 0:
            nxt = I64(0)
            for u in range(n):
                if (frontier >> u) & 1:
                    nxt |= adj[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        if (comp & (comp - 1)) != 0 and (comp & black) == 0:
            return False
    return True


@njit(cache=True)
def count_full_orderings(adj, black, n):
    """Orderings of [n] whose every prefix set S has det(A[S]) = 1 over F2.

    A[S] is the principal submatrix of the adjacency-plus-black-diagonal
    matrix.  DP over subsets: N[S] = [det A[S] = 1] * sum_v N[S \\ v].
    """
    full = (I64(1) << n) - 1
    N = np.zeros(full + 1, np.int64)
    N[0] = 1
    rows = np.empty(n, np.int64)
    for S in range(1, full + 1):
        cnt = 0
        for i in range(n):
            if (S >> i) & 1:
                rows[cnt] = (adj[i] & S) | (((black >> i) & 1) << i)
                cnt += 1
        singular = False
        r = 0
        for c in range(n):
            if not ((S >> c) & 1):
                continue
            piv = -1
            for i in range(r, cnt):
                if (rows[i] >> c) & 1:
                    piv = i
                    break
            if piv < 0:
                singular = True
                break
            t = rows[piv]
            rows[piv] = rows[r]
            rows[r] = t
            for i in range(r + 1, cnt):
                if (rows[i] >> c) & 1:
                    rows[i] ^= t
            r += 1
        if singular:
            continue
        total = I64(0)
        for v in range(n):
            if (S >> v) & 1:
                total += N[S ^ (I64(1) << v)]
        N[S] = total
    return N[full]


@njit(cache=True)
def sum_counts_over_colorings(adj, n):
    total = I64(0)
    for black in range(I64(1) << n):
        total += count_full_orderings(adj, black, n)
    return total


@njit(cache=True)
def average_total(adj, n):
    """Sum over all 2^n colorings of the count of full-length orderings
    whose every prefix has an odd matching parity (det of A[prefix] = 1).

    The determinant of a principal submatrix reads colors only inside the
    subset, so the coloring sum folds into one DP over (S, c) pairs with
    c a coloring of S: T[S,c] = [det=1] * sum_v T[S\\v, c\\v].  States are
    packed as base[S] + index of c among S's bits; 3^n states total.
    """
    full = (I64(1) << n) - 1
    base = np.empty(full + 1, np.int64)
    nstates = I64(0)
    for S in range(full + 1):
        base[S] = nstates
        k = 0
        m = S
        while m:
            m &= m - 1
            k += 1
        nstates += I64(1) << k
    T = np.zeros(nstates, np.int64)
    T[0] = 1
    rows = np.empty(n, np.int64)
    verts = np.empty(n, np.int64)
    for S in range(1, full + 1):
        k = 0
        for v in range(n):
            if (S >> v) & 1:
                verts[k] = v
                k += 1
        for cidx in range(I64(1) << k):
            c = I64(0)
            for b in range(k):
                if (cidx >> b) & 1:
                    c |= I64(1) << verts[b]
            for i in range(k):
                v = verts[i]
                rows[i] = (adj[v] & S) | (((c >> v) & 1) << v)
            singular = False
            r = 0
            for ci in range(n):
                if not ((S >> ci) & 1):
                    continue
                piv = -1
                for i in range(r, k):
                    if (rows[i] >> ci) & 1:
                        piv = i
                        break
                if piv < 0:
                    singular = True
                    break
                t = rows[piv]
                rows[piv] = rows[r]
                rows[r] = t
                for i in range(r + 1, k):
                    if (rows[i] >> ci) & 1:
                        rows[i] ^= t
                r += 1
            if singular:
                continue
            total = I64(0)
            for b in range(k):
                v = verts[b]
                S2 = S & ~(I64(1) << v)
                low = cidx & ((I64(1) << b) - 1)
                high = (cidx >> (b + 1)) << b
                total += T[base[S2] + (low | high)]
            T[base[S] + cidx] = total
    out = I64(0)
    for cidx in range(I64(1) << n):
        out += T[base[full] + cidx]
    return out


@njit(cache=True)
def count_sequences_limited(adj0, black0, n, limit, st_adj, st_black, st_v):
    """Successful-sequence count by pruned DFS, stopping at `limit`.

    st_* are caller-provided workspaces: st_adj (n+1, n) int64,
    st_black (n+1,) int64, st_v (n+1,) int64.  Branches where the pressed
    graph acquires a nontrivial all-white component are abandoned.
    """
    for i in range(n):
        st_adj[0, i] = adj0[i]
    st_black[0] = black0
    st_v[0] = 0
    count = I64(0)
    sp = 0
    while sp >= 0:
        v = st_v[sp]
        if v == 0 and st_black[sp] == 0:
            edges = I64(0)
            for i in range(n):
                edges |= st_adj[sp, i]
            if edges == 0:
                count += 1
                if count >= limit:
                    return count
            sp -= 1
            continue
        pushed = False
        while v < n:
            if (st_black[sp] >> v) & 1:
                child = sp + 1
                ns = st_adj[sp, v] | (I64(1) << v)
                for i in range(n):
                    st_adj[child, i] = st_adj[sp, i]
                for u in range(n):
                    if (ns >> u) & 1:
                        st_adj[child, u] = (st_adj[child, u] ^ ns) & ~(I64(1) << u)
                st_black[child] = st_black[sp] ^ ns
                if components_ok_masks(st_adj[child], st_black[child], n):
                    st_v[sp] = v + 1
                    st_v[child] = 0
                    sp = child
                    pushed = True
                    break
            v += 1
        if not pushed:
            sp -= 1
    return count


@njit(cache=True)
def uniquely_pressable_scan(n, pair_u, pair_v):
    """All labeled (edge set, coloring) pairs with exactly one sequence."""
    ncells = pair_u.shape[0]
    cap = 1024
    out_e = np.empty(cap, np.int64)
    out_c = np.empty(cap, np.int64)
    found = 0
    adj = np.empty(n, np.int64)
    st_adj = np.empty((n + 1, n), np.int64)
    st_black = np.empty(n + 1, np.int64)
    st_v = np.empty(n + 1, np.int64)
    for em in range(I64(1) << ncells):
        for i in range(n):
            adj[i] = 0
        for t in range(ncells):
            if (em >> t) & 1:
                u = pair_u[t]
                v = pair_v[t]
                adj[u] |= I64(1) << v
                adj[v] |= I64(1) << u
        for cm in range(I64(1) << n):
            if not components_ok_masks(adj, cm, n):
                continue
            cnt = count_sequences_limited(adj, cm, n, 2, st_adj, st_black, st_v)
            if cnt == 1:
                if found == cap:
                    cap *= 2
                    ne = np.empty(cap, np.int64)
                    nc = np.empty(cap, np.int64)
                    ne[:found] = out_e[:found]
                    nc[:found] = out_c[:found]
                    out_e = ne
                    out_c = nc
                out_e[found] = em
                out_c[found] = cm
                found += 1
    return out_e[:found].copy(), out_c[:found].copy()


@njit(cache=True)
def canonical_keys(out_e, out_c, n, perms, pair_index):
    """Minimum (edges << n | colors) encoding over the given relabelings."""
    m = out_e.shape[0]
    nperm = perms.shape[0]
    keys = np.empty(m, np.int64)
    for idx in range(m):
        em = out_e[idx]
        cm = out_c[idx]
        best = I64(0x7FFFFFFFFFFFFFFF)
        for p in range(nperm):
            cm2 = I64(0)
            for a in range(n):
                if (cm >> a) & 1:
                    cm2 |= I64(1) << perms[p, a]
            em2 = I64(0)
            for a in range(n):
                for b in range(a + 1, n):
                    if (em >> pair_index[a, b]) & 1:
                        em2 |= I64(1) << pair_index[perms[p, a], perms[p, b]]
            key = (em2 << n) | cm2
            if key < best:
                best = key
        keys[idx] = best
    return keys


@njit(cache=True)
def _lcs_rows(seqs, i, j, k, prev, cur):
    for t in range(k + 1):
        prev[t] = 0
    for a in range(1, k + 1):
        cur[0] = 0
        sa = seqs[i, a - 1]
        for b in range(1, k + 1):
            if sa == seqs[j, b - 1]:
                cur[b] = prev[b - 1] + 1
            else:
                x = prev[b]
                y = cur[b - 1]
                cur[b] = x if x > y else y
        prev, cur = cur, prev
    return prev[k]


@njit(cache=True, parallel=True)
def edit_pairs(seqs, max_edit):
    """Pairs (i, j), i < j, of rows at insert/delete distance <= max_edit.

    Distance between equal-length rows is 2 * (k - LCS).  Both passes
    visit pairs in the same order, so the fill offsets are exact and the
    output is independent of thread scheduling.
    """
    m = seqs.shape[0]
    k = seqs.shape[1]
    counts = np.zeros(m, np.int64)
    for i in prange(m):
        prev = np.empty(k + 1, np.int64)
        cur = np.empty(k + 1, np.int64)
        c = I64(0)
        for j in range(i + 1, m):
            lcs = _lcs_rows(seqs, i, j, k, prev, cur)
            if 2 * (k - lcs) <= max_edit:
                c += 1
        counts[i] = c
    offs = np.empty(m + 1, np.int64)
    offs[0] = 0
    for i in range(m):
        offs[i + 1] = offs[i] + counts[i]
    eu = np.empty(offs[m], np.int64)
    ev = np.empty(offs[m], np.int64)
    for i in prange(m):
        prev = np.empty(k + 1, np.int64)
        cur = np.empty(k + 1, np.int64)
        w = offs[i]
        for j in range(i + 1, m):
            lcs = _lcs_rows(seqs, i, j, k, prev, cur)
            if 2 * (k - lcs) <= max_edit:
                eu[w] = i
                ev[w] = j
                w += 1
    return eu, ev
