"""Compiled bitmask kernels shared by the enumeration, solver and predicate layers.

Every mask is a ``uint64``; vertex indices are ``int64``.  Constants are typed
explicitly because mixing signed and unsigned operands promotes to float.
"""

import numpy as np
from numba import njit

ZERO = np.uint64(0)
ONE = np.uint64(1)
ALL = ~np.uint64(0)

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


@njit(cache=True)
def popcount(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(cache=True)
def bit(v):
    return ONE << np.uint64(v)


@njit(cache=True)
def low_index(x):
    return popcount((x & (~x + ONE)) - ONE)


@njit(cache=True)
def full_mask(n):
    if n == 64:
        return ALL
    return (ONE << np.uint64(n)) - ONE


@njit(cache=True)
def reach(rows, seed, within):
    seen = seed & within
    frontier = seen
    while frontier != ZERO:
        nxt = ZERO
        f = frontier
        while f != ZERO:
            v = low_index(f)
            f &= f - ONE
            nxt |= rows[v]
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
    return seen


@njit(cache=True)
def is_biconnected(rows, n):
    if n < 3:
        return False
    full = full_mask(n)
    if reach(rows, ONE, full) != full:
        return False
    for v in range(n):
        rest = full & ~bit(v)
        seed = rest & (~rest + ONE)
        if reach(rows, seed, rest) != rest:
            return False
    return True


# -- graph6-ordered packing (n <= 11) ------------------------------------------

@njit(cache=True)
def pack(rows, n):
    code = ZERO
    for j in range(1, n):
        for i in range(j):
            code = (code << ONE) | ((rows[i] >> np.uint64(j)) & ONE)
    return code


@njit(cache=True)
def unpack(code, n, rows):
    for v in range(n):
        rows[v] = ZERO
    k = n * (n - 1) // 2 - 1
    for j in range(1, n):
        for i in range(j):
            if (code >> np.uint64(k)) & ONE:
                rows[i] |= bit(j)
                rows[j] |= bit(i)
            k -= 1


# -- canonical labelling --------------------------------------------------------

@njit(cache=True)
def _key_less(keys, a, b, width):
    for t in range(width):
        if keys[a, t] != keys[b, t]:
            return keys[a, t] < keys[b, t]
    return False


@njit(cache=True)
def _key_equal(keys, a, b, width):
    for t in range(width):
        if keys[a, t] != keys[b, t]:
            return False
    return True


@njit(cache=True)
def refine(rows, n, color):
    """Refine ``color`` (cell start indices) to the coarsest equitable partition.

    A vertex's new cell is the rank of (old cell, neighbour count in every
    cell); ranks are isomorphism invariant, so the refinement is too.
    Returns the number of cells.
    """
    order = np.empty(n, np.int64)
    keys = np.empty((n, n + 1), np.int64)
    cellmask = np.empty(n, np.uint64)
    ncells = -1
    while True:
        for c in range(n):
            cellmask[c] = ZERO
        for v in range(n):
            cellmask[color[v]] |= bit(v)
        cells = 0
        for c in range(n):
            if cellmask[c] != ZERO:
                cells += 1
        if cells == ncells or cells == n:
            return cells
        ncells = cells
        width = 1
        for c in range(n):
            if cellmask[c] != ZERO:
                width += 1
        for v in range(n):
            keys[v, 0] = color[v]
            t = 1
            for c in range(n):
                if cellmask[c] != ZERO:
                    keys[v, t] = popcount(rows[v] & cellmask[c])
                    t += 1
        # insertion sort of vertex indices by key
        for v in range(n):
            order[v] = v
        for i in range(1, n):
            cur = order[i]
            j = i - 1
            while j >= 0 and _key_less(keys, cur, order[j], width):
                order[j + 1] = order[j]
                j -= 1
            order[j + 1] = cur
        start = 0
        for i in range(n):
            if i > 0 and not _key_equal(keys, order[i], order[i - 1], width):
                start = i
            color[order[i]] = start


@njit(cache=True)
def _leaf_rows(rows, n, color, out):
    lab = np.empty(n, np.int64)
    for v in range(n):
        lab[color[v]] = v
    for i in range(n):
        r = rows[lab[i]]
        acc = ZERO
        while r != ZERO:
            u = low_index(r)
            r &= r - ONE
            acc |= bit(color[u])
        out[i] = acc


@njit(cache=True)
def canon(rows, n, best, best_perm):
    """Canonical relabelling: lexicographically least row tuple over the
    individualisation-refinement tree.

    Writes the canonical rows to ``best`` and the labelling (vertex -> new
    label) to ``best_perm``.  Returns the number of leaves visited.
    Branches on twins of an already tried vertex are skipped: the transposition
    of two twins is an automorphism fixing the current partition.
    """
    colors = np.empty((n + 1, n), np.int64)
    cand = np.empty(n + 1, np.uint64)
    tried = np.empty(n + 1, np.uint64)
    cstart = np.empty(n + 1, np.int64)
    leaf = np.empty(n, np.uint64)
    for v in range(n):
        colors[0, v] = 0
    have = False
    leaves = 0
    depth = 0
    ncell = refine(rows, n, colors[0])
    fresh = True
    while depth >= 0:
        if fresh:
            fresh = False
            if ncell == n:
                leaves += 1
                _leaf_rows(rows, n, colors[depth], leaf)
                better = not have
                if have:
                    for i in range(n):
                        if leaf[i] != best[i]:
                            better = leaf[i] < best[i]
                            break
                if better:
                    have = True
                    for i in range(n):
                        best[i] = leaf[i]
                    for v in range(n):
                        best_perm[v] = colors[depth, v]
                depth -= 1
                continue
            # first non-singleton cell
            size = np.zeros(n, np.int64)
            for v in range(n):
                size[colors[depth, v]] += 1
            target = -1
            for c in range(n):
                if size[c] > 1:
                    target = c
                    break
            m = ZERO
            for v in range(n):
                if colors[depth, v] == target:
                    m |= bit(v)
            cand[depth] = m
            tried[depth] = ZERO
            cstart[depth] = target
        c = cand[depth]
        if c == ZERO:
            depth -= 1
            continue
        v = low_index(c)
        cand[depth] = c & ~bit(v)
        twin = False
        t = tried[depth]
        while t != ZERO:
            u = low_index(t)
            t &= t - ONE
            if (rows[u] & ~bit(v)) == (rows[v] & ~bit(u)):
                twin = True
                break
        if twin:
            continue
        tried[depth] |= bit(v)
        target = cstart[depth]
        for w in range(n):
            cw = colors[depth, w]
            if cw == target and w != v:
                colors[depth + 1, w] = target + 1
            else:
                colors[depth + 1, w] = cw
        depth += 1
        ncell = refine(rows, n, colors[depth])
        fresh = True
    return leaves


@njit(cache=True)
def canon_code(rows, n):
    best = np.empty(n, np.uint64)
    perm = np.empty(n, np.int64)
    canon(rows, n, best, perm)
    return pack(best, n)


# -- level-by-level generation ---------------------------------------------------

@njit(cache=True)
def extend_level(parents, n0, min_new_degree, need_biconnected, out):
    """Add one vertex to every parent in all min-degree-compatible ways.

    The new vertex must have minimum degree in the result, which every graph
    admits (delete a minimum-degree vertex), so each isomorphism class on
    ``n0 + 1`` vertices whose min-degree-deleted subgraph lies among the
    parents appears at least once.  Writes canonical codes to ``out`` and
    returns how many were written.
    """
    n = n0 + 1
    rows = np.empty(n, np.uint64)
    best = np.empty(n, np.uint64)
    perm = np.empty(n, np.int64)
    deg = np.empty(n0, np.int64)
    must = np.empty(n + 1, np.uint64)
    bad = np.empty(n + 1, np.bool_)
    count = 0
    limit = np.int64(1) << n0
    for p in range(parents.shape[0]):
        for v in range(n0):
            deg[v] = popcount(parents[p, v])
        for k in range(n + 1):
            must[k] = ZERO
            bad[k] = False
            for v in range(n0):
                if deg[v] < k - 1:
                    bad[k] = True
                elif deg[v] == k - 1:
                    must[k] |= bit(v)
        for s in range(limit):
            S = np.uint64(s)
            k = popcount(S)
            if k < min_new_degree or bad[k] or (must[k] & ~S) != ZERO:
                continue
            for v in range(n0):
                rows[v] = parents[p, v]
                if (S >> np.uint64(v)) & ONE:
                    rows[v] |= bit(n0)
            rows[n0] = S
            if need_biconnected and not is_biconnected(rows, n):
                continue
            canon(rows, n, best, perm)
            out[count] = pack(best, n)
            count += 1
    return count


@njit(cache=True)
def biconnected_codes(codes, n):
    rows = np.empty(n, np.uint64)
    keep = np.empty(codes.shape[0], np.bool_)
    for i in range(codes.shape[0]):
        unpack(codes[i], n, rows)
        keep[i] = is_biconnected(rows, n)
    return keep


@njit(cache=True)
def connected_codes(codes, n):
    rows = np.empty(n, np.uint64)
    keep = np.empty(codes.shape[0], np.bool_)
    full = full_mask(n)
    for i in range(codes.shape[0]):
        unpack(codes[i], n, rows)
        keep[i] = reach(rows, ONE, full) == full
    return keep


@njit(cache=True)
def unpack_all(codes, n):
    out = np.empty((codes.shape[0], n), np.uint64)
    for i in range(codes.shape[0]):
        unpack(codes[i], n, out[i])
    return out


# -- cycle search ------------------------------------------------------------------

@njit(cache=True)
def _cycle_from(rows, n, start, required, min_len, allowed, out, budget):
    """DFS for a cycle through ``start`` inside ``allowed`` that contains
    ``required`` and has at least ``min_len`` vertices.

    Returns the cycle length (written to ``out``), 0 when none exists, or -1
    when ``budget`` (> 0) search nodes were exhausted first.
    """
    path = np.empty(n, np.int64)
    cand = np.empty(n, np.uint64)
    target = max(min_len, 3)
    sbit = bit(start)
    path[0] = start
    visited = sbit
    depth = 0
    cand[0] = rows[start] & allowed & ~sbit
    nodes = 0
    while depth >= 0:
        c = cand[depth]
        if c == ZERO:
            visited &= ~bit(path[depth])
            depth -= 1
            continue
        w = low_index(c)
        wb = bit(w)
        cand[depth] = c & ~wb
        nodes += 1
        if budget > 0 and nodes > budget:
            return -1
        nv = visited | wb
        length = depth + 2
        if length >= target and (required & ~nv) == ZERO and (rows[w] & sbit) != ZERO:
            for i in range(depth + 1):
                out[i] = path[i]
            out[depth + 1] = w
            return length
        free = allowed & ~nv
        comp = reach(rows, wb, free | wb)
        need = required & ~nv
        if (need & ~comp) != ZERO:
            continue
        if (rows[start] & comp & ~wb) == ZERO:
            continue
        if length + popcount(comp) - 1 < target:
            continue
        ok = True
        pool = free | wb | sbit
        nd = need
        while nd != ZERO:
            u = low_index(nd)
            nd &= nd - ONE
            if popcount(rows[u] & pool) < 2:
                ok = False
                break
        if not ok:
            continue
        depth += 1
        path[depth] = w
        visited = nv
        cand[depth] = rows[w] & free
    return 0


@njit(cache=True)
def find_cycle(rows, n, required, min_len, allowed, out, budget):
    if required != ZERO:
        # start at a required vertex of least degree
        start = -1
        best = n + 1
        r = required
        while r != ZERO:
            v = low_index(r)
            r &= r - ONE
            d = popcount(rows[v] & allowed)
            if d < best:
                best = d
                start = v
        if (required & ~allowed) != ZERO:
            return 0
        return _cycle_from(rows, n, start, required, min_len, allowed, out, budget)
    a = allowed
    below = ZERO
    while a != ZERO:
        s = low_index(a)
        a &= a - ONE
        res = _cycle_from(rows, n, s, ZERO, min_len, allowed & ~below, out, budget)
        if res != 0:
            return res
        below |= bit(s)
    return 0


@njit(cache=True)
def ham_dp(rows, n, out):
    """Held-Karp over (subset, endpoint) with endpoint sets packed as bitmasks.

    Paths start at vertex 0; ``reach[S]`` holds the possible endpoints of a
    path from 0 covering exactly ``S`` (S always contains 0).
    """
    if n < 3:
        return 0
    size = np.int64(1) << (n - 1)
    ends = np.zeros(size, np.uint64)  # index = subset of {1..n-1}
    for v in range(1, n):
        if (rows[0] >> np.uint64(v)) & ONE:
            ends[np.int64(1) << (v - 1)] = bit(v)
    for s in range(1, size):
        e = ends[s]
        if e == ZERO:
            continue
        nb = ZERO
        while e != ZERO:
            v = low_index(e)
            e &= e - ONE
            nb |= rows[v]
        nb = (nb >> ONE) & ~np.uint64(s)
        while nb != ZERO:
            u = low_index(nb)
            nb &= nb - ONE
            t = s | (np.int64(1) << u)
            ends[t] |= bit(u + 1)
    last = ends[size - 1] & rows[0]
    if last == ZERO:
        return 0
    # walk back
    s = size - 1
    v = low_index(last)
    pos = n - 1
    while True:
        out[pos] = v
        pos -= 1
        s_prev = s & ~(np.int64(1) << (v - 1))
        if s_prev == 0:
            break
        e = ends[s_prev] & rows[v]
        v = low_index(e)
        s = s_prev
    out[0] = 0
    return n


@njit(cache=True)
def ham_cycle(rows, n, out):
    """Exact Hamiltonicity: pruned backtracking, Held-Karp when it stalls."""
    if n < 3:
        return 0
    for v in range(n):
        if popcount(rows[v]) < 2:
            return 0
    full = full_mask(n)
    if n <= 24:
        res = _budgeted(rows, n, full, out, 200000)
        if res >= 0:
            return res
        return ham_dp(rows, n, out)
    return find_cycle(rows, n, full, n, full, out, 0)


@njit(cache=True)
def _budgeted(rows, n, full, out, budget):
    return find_cycle(rows, n, full, n, full, out, budget)


# -- induced pattern scan --------------------------------------------------------

@njit(cache=True)
def pattern_scan(rows, n, deg, prow, pdeg, k, order, nonadj, n_nonadj, dist2, n_dist2, want):
    """Scan induced embeddings of a pattern into the host.

    Returns flags: 1 = an embedding exists, 2 = an embedding with no
    nonadjacent pair of degree sum >= n exists (not o-heavy), 4 = an
    embedding with a distance-2 pair both of degree < n/2 exists (not
    f-heavy).  Stops once every flag in ``want`` is set.
    """
    img = np.empty(k, np.int64)
    cand = np.empty(k, np.uint64)
    used = ZERO
    full = full_mask(n)
    flags = 0
    # host candidates per pattern vertex by degree
    pool = np.empty(k, np.uint64)
    for t in range(k):
        m = ZERO
        for v in range(n):
            if deg[v] >= pdeg[order[t]]:
                m |= bit(v)
        pool[t] = m
    depth = 0
    cand[0] = pool[0]
    while depth >= 0:
        c = cand[depth]
        if c == ZERO:
            depth -= 1
            if depth >= 0:
                used &= ~bit(img[order[depth]])
            continue
        h = low_index(c)
        cand[depth] = c & ~bit(h)
        img[order[depth]] = h
        if depth == k - 1:
            flags |= 1
            heavy = False
            for t in range(n_nonadj):
                if deg[img[nonadj[t, 0]]] + deg[img[nonadj[t, 1]]] >= n:
                    heavy = True
                    break
            if not heavy:
                flags |= 2
            for t in range(n_dist2):
                a = deg[img[dist2[t, 0]]]
                b = deg[img[dist2[t, 1]]]
                if 2 * max(a, b) < n:
                    flags |= 4
                    break
            if (flags & want) == want:
                return flags
            continue
        used |= bit(h)
        depth += 1
        p = order[depth]
        m = pool[depth] & ~used & full
        for s in range(depth):
            q = order[s]
            if (prow[p] >> np.uint64(q)) & ONE:
                m &= rows[img[q]]
            else:
                m &= ~rows[img[q]]
        cand[depth] = m
    return flags


@njit(cache=True)
def profile_codes(codes, n, prows, pdegs, ks, orders, nonadjs, n_nonadjs, dist2s, n_dist2s, with_ham):
    """Pattern flags (column per pattern) plus a Hamiltonicity column."""
    npat = ks.shape[0]
    out = np.zeros((codes.shape[0], npat + 1), np.uint8)
    rows = np.empty(n, np.uint64)
    deg = np.empty(n, np.int64)
    cyc = np.empty(n, np.int64)
    for i in range(codes.shape[0]):
        unpack(codes[i], n, rows)
        for v in range(n):
            deg[v] = popcount(rows[v])
        for p in range(npat):
            out[i, p] = pattern_scan(rows, n, deg, prows[p], pdegs[p], ks[p], orders[p],
                                     nonadjs[p], n_nonadjs[p], dist2s[p], n_dist2s[p], 7)
        if with_ham:
            out[i, npat] = 1 if ham_cycle(rows, n, cyc) > 0 else 0
    return out


@njit(cache=True)
def ham_codes(codes, n):
    rows = np.empty(n, np.uint64)
    cyc = np.empty(n, np.int64)
    out = np.empty(codes.shape[0], np.bool_)
    for i in range(codes.shape[0]):
        unpack(codes[i], n, rows)
        out[i] = ham_cycle(rows, n, cyc) > 0
    return out


@njit(cache=True)
def ore_codes(codes, n):
    """Every nonadjacent pair has degree sum at least n."""
    rows = np.empty(n, np.uint64)
    deg = np.empty(n, np.int64)
    out = np.empty(codes.shape[0], np.bool_)
    for i in range(codes.shape[0]):
        unpack(codes[i], n, rows)
        for v in range(n):
            deg[v] = popcount(rows[v])
        ok = True
        for u in range(n):
            if not ok:
                break
            for v in range(u + 1, n):
                if (rows[u] >> np.uint64(v)) & ONE == ZERO and deg[u] + deg[v] < n:
                    ok = False
                    break
        out[i] = ok
    return out


@njit(cache=True)
def scan_codes(codes, n, prow, pdeg, k, order, nonadj, n_nonadj, dist2, n_dist2, want):
    """Pattern flags of one pattern over a batch of codes."""
    rows = np.empty(n, np.uint64)
    deg = np.empty(n, np.int64)
    out = np.zeros(codes.shape[0], np.uint8)
    if k > n:
        return out
    for i in range(codes.shape[0]):
        unpack(codes[i], n, rows)
        for v in range(n):
            deg[v] = popcount(rows[v])
        out[i] = pattern_scan(rows, n, deg, prow, pdeg, k, order, nonadj, n_nonadj,
                              dist2, n_dist2, want)
    return out
