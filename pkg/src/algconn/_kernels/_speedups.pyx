# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the performance-critical kernels.

Entry points and observable behaviour mirror ``_pure`` exactly: the same
canonical orders, the same key bytes, the same tree layouts in the same
order.  ``_pure`` is the reference; the cross-implementation tests compare
the two on thousands of inputs.  Everything here assumes n <= 64 and keeps
adjacency as one 64-bit mask per vertex.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.string cimport memcpy, memset

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

ctypedef unsigned long long u64

DEF AUTO_CAP = 200
DEF MAXN = 64


# ---------------------------------------------------------------------------
# canonical labeling
# ---------------------------------------------------------------------------

cdef struct CanonCtx:
    int n
    u64 adj[MAXN]
    bint has_best
    int best_nchunks
    unsigned char best_chunk_len[MAXN + 1]
    unsigned char best_chunks[MAXN + 1][MAXN]
    unsigned char cur_chunk_len[MAXN + 1]
    unsigned char cur_chunks[MAXN + 1][MAXN]
    u64 best_code[MAXN]
    unsigned char best_order[MAXN]
    unsigned char prefix[MAXN]
    int nautos
    unsigned char autos[AUTO_CAP][MAXN]


cdef void _refine_c(CanonCtx* S, unsigned char* cv, int* cs, int* ncells_p):
    # equitable refinement; splits every cell against splitter si at once,
    # pieces by ascending neighbour count, restart from the first splitter
    # after any change (mirrors the reference implementation)
    cdef unsigned char nv[MAXN]
    cdef int ns[MAXN + 1]
    cdef int counts[MAXN]
    cdef int ncells = ncells_p[0]
    cdef int si, ci, a, b, j, c, mn, mx, nn, pos
    cdef u64 smask
    cdef bint changed, any_split, had
    while True:
        changed = False
        for si in range(ncells):
            smask = 0
            for j in range(cs[si], cs[si + 1]):
                smask |= (<u64>1) << cv[j]
            nn = 0
            pos = 0
            ns[0] = 0
            any_split = False
            for ci in range(ncells):
                a = cs[ci]
                b = cs[ci + 1]
                if b - a == 1:
                    nv[pos] = cv[a]
                    pos += 1
                    nn += 1
                    ns[nn] = pos
                    continue
                mn = MAXN + 1
                mx = -1
                for j in range(a, b):
                    c = __builtin_popcountll(S.adj[cv[j]] & smask)
                    counts[j] = c
                    if c < mn:
                        mn = c
                    if c > mx:
                        mx = c
                if mn == mx:
                    for j in range(a, b):
                        nv[pos] = cv[j]
                        pos += 1
                    nn += 1
                    ns[nn] = pos
                else:
                    any_split = True
                    for c in range(mn, mx + 1):
                        had = False
                        for j in range(a, b):
                            if counts[j] == c:
                                nv[pos] = cv[j]
                                pos += 1
                                had = True
                        if had:
                            nn += 1
                            ns[nn] = pos
            if any_split:
                changed = True
                memcpy(cv, nv, S.n)
                memcpy(cs, ns, (nn + 1) * sizeof(int))
                ncells = nn
                break
        if not changed:
            ncells_p[0] = ncells
            return


cdef inline int _cmp_chunk(unsigned char* a, int la, unsigned char* b, int lb):
    cdef int i, m
    m = la if la < lb else lb
    for i in range(m):
        if a[i] != b[i]:
            return -1 if a[i] < b[i] else 1
    if la == lb:
        return 0
    return -1 if la < lb else 1


cdef bint _in_orbit(CanonCtx* S, int v, u64 tried_mask, int depth):
    # is v in the orbit of an already-tried vertex under the automorphisms
    # fixing every individualized vertex of the current path?
    cdef int app[AUTO_CAP]
    cdef unsigned char stk[MAXN]
    cdef int napp = 0
    cdef int ai, p, top, u, k, w
    cdef bint ok
    cdef u64 orbit, rest
    for ai in range(S.nautos):
        ok = True
        for p in range(depth):
            if S.autos[ai][S.prefix[p]] != S.prefix[p]:
                ok = False
                break
        if ok:
            app[napp] = ai
            napp += 1
    if napp == 0:
        return False
    orbit = tried_mask
    top = 0
    rest = tried_mask
    while rest:
        u = _ctz(rest)
        rest &= rest - 1
        stk[top] = <unsigned char>u
        top += 1
    while top:
        top -= 1
        u = stk[top]
        for k in range(napp):
            w = S.autos[app[k]][u]
            if not (orbit >> w) & 1:
                if w == v:
                    return True
                orbit |= (<u64>1) << w
                stk[top] = <unsigned char>w
                top += 1
    return False


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _ctz(u64 x):
    return __builtin_ctzll(x)


cdef bint _rec(
    CanonCtx* S,
    unsigned char* cv_in,
    int* cs_in,
    int ncells_in,
    int depth,
    bint tied,
):
    cdef unsigned char cv[MAXN]
    cdef int cs[MAXN + 1]
    cdef unsigned char chunk[MAXN]
    cdef u64 code[MAXN]
    cdef unsigned char cv2[MAXN]
    cdef int cs2[MAXN + 1]
    cdef int ncells = ncells_in
    cdef int n = S.n
    cdef int j, k, i, ci, target, cmp, idx, v, d, mind, pos
    cdef u64 row, c, tried_mask
    cdef bint improved, equal_codes, modified
    memcpy(cv, cv_in, n)
    memcpy(cs, cs_in, (ncells + 1) * sizeof(int))
    _refine_c(S, cv, cs, &ncells)
    for j in range(ncells):
        chunk[j] = <unsigned char>(cs[j + 1] - cs[j])
    if tied and S.has_best:
        if depth < S.best_nchunks:
            cmp = _cmp_chunk(chunk, ncells, S.best_chunks[depth], S.best_chunk_len[depth])
            if cmp > 0:
                return False
            if cmp < 0:
                tied = False
        else:
            # equal prefix but a longer chunk sequence sorts after the best
            return False
    memcpy(S.cur_chunks[depth], chunk, ncells)
    S.cur_chunk_len[depth] = <unsigned char>ncells
    target = -1
    for ci in range(ncells):
        if cs[ci + 1] - cs[ci] > 1:
            target = ci
            break
    if target < 0:
        # leaf: all cells singletons, cv is the candidate order
        for k in range(n):
            row = S.adj[cv[k]]
            c = 0
            for i in range(k):
                if (row >> cv[i]) & 1:
                    c |= (<u64>1) << i
            code[k] = c
        improved = False
        equal_codes = False
        if not S.has_best:
            improved = True
        else:
            cmp = 0
            mind = depth + 1 if depth + 1 < S.best_nchunks else S.best_nchunks
            for d in range(mind):
                cmp = _cmp_chunk(
                    S.cur_chunks[d],
                    S.cur_chunk_len[d],
                    S.best_chunks[d],
                    S.best_chunk_len[d],
                )
                if cmp:
                    break
            if cmp == 0 and depth + 1 != S.best_nchunks:
                cmp = -1 if depth + 1 < S.best_nchunks else 1
            if cmp == 0:
                for k in range(n):
                    if code[k] != S.best_code[k]:
                        cmp = -1 if code[k] < S.best_code[k] else 1
                        break
                equal_codes = cmp == 0
            improved = cmp < 0
        if improved:
            S.best_nchunks = depth + 1
            for d in range(depth + 1):
                S.best_chunk_len[d] = S.cur_chunk_len[d]
                memcpy(S.best_chunks[d], S.cur_chunks[d], S.cur_chunk_len[d])
            memcpy(S.best_code, code, n * sizeof(u64))
            memcpy(S.best_order, cv, n)
            S.has_best = True
            return True
        if equal_codes and S.nautos < AUTO_CAP:
            for k in range(n):
                if cv[k] != S.best_order[k]:
                    break
            else:
                return False  # same order: not an automorphism
            for k in range(n):
                S.autos[S.nautos][cv[k]] = S.best_order[k]
            S.nautos += 1
        return False
    # branch on the first non-singleton cell, members in ascending order
    tried_mask = 0
    modified = False
    for idx in range(cs[target], cs[target + 1]):
        v = cv[idx]
        if tried_mask and _in_orbit(S, v, tried_mask, depth):
            continue
        # sub-partition: [v] split off in front of the remainder of its cell
        pos = 0
        for j in range(cs[target]):
            cv2[pos] = cv[j]
            pos += 1
        cv2[pos] = <unsigned char>v
        pos += 1
        for j in range(cs[target], cs[target + 1]):
            if cv[j] != v:
                cv2[pos] = cv[j]
                pos += 1
        for j in range(cs[target + 1], n):
            cv2[pos] = cv[j]
            pos += 1
        for j in range(target + 1):
            cs2[j] = cs[j]
        cs2[target + 1] = cs[target] + 1
        for j in range(target + 1, ncells + 1):
            cs2[j + 1] = cs[j]
        S.prefix[depth] = <unsigned char>v
        if _rec(S, cv2, cs2, ncells + 1, depth + 1, tied):
            modified = True
            tied = True  # new best shares this node's chunk prefix
        tried_mask |= (<u64>1) << v
    return modified


cdef CanonCtx* _canon_run(int n, rows, colors) except NULL:
    cdef CanonCtx* S = <CanonCtx*>PyMem_Malloc(sizeof(CanonCtx))
    cdef unsigned char cv[MAXN]
    cdef int cs[MAXN + 1]
    cdef int i, ncells, pos
    if S is NULL:
        raise MemoryError()
    S.n = n
    S.has_best = False
    S.best_nchunks = 0
    S.nautos = 0
    try:
        for i in range(n):
            S.adj[i] = <u64>rows[i]
        if colors is None:
            for i in range(n):
                cv[i] = <unsigned char>i
            cs[0] = 0
            cs[1] = n
            ncells = 1
        else:
            pairs = sorted((colors[i], i) for i in range(n))
            ncells = 0
            cs[0] = 0
            pos = 0
            prev = None
            for col, i in pairs:
                if pos and col != prev:
                    ncells += 1
                    cs[ncells] = pos
                cv[pos] = <unsigned char>i
                pos += 1
                prev = col
            ncells += 1
            cs[ncells] = n
        _rec(S, cv, cs, ncells, 0, True)
    except BaseException:
        PyMem_Free(S)
        raise
    return S


def canon_perm(n, rows, colors=None):
    """Canonical vertex order; see the reference implementation."""
    cdef CanonCtx* S
    cdef int k
    cdef int cn = n
    if not 1 <= cn <= MAXN:
        raise ValueError("compiled kernel supports 1 <= n <= 64")
    if cn == 1:
        return (0,)
    S = _canon_run(cn, rows, colors)
    try:
        return tuple(S.best_order[k] for k in range(cn))
    finally:
        PyMem_Free(S)


def canon_key(n, rows, colors=None):
    """Bytes identifying the isomorphism class; layout matches the reference."""
    cdef CanonCtx* S
    cdef int k, p, nb
    cdef int cn = n
    cdef u64 row, nr
    if not 1 <= cn <= MAXN:
        raise ValueError("compiled kernel supports 1 <= n <= 64")
    nb = (cn + 7) // 8
    out = bytearray([cn])
    if colors is not None:
        out += bytes(sorted(colors))
    if cn == 1:
        out += (<u64>0).to_bytes(nb, "big")
        return bytes(out)
    S = _canon_run(cn, rows, colors)
    try:
        for k in range(cn):
            row = S.adj[S.best_order[k]]
            nr = 0
            for p in range(cn):
                if (row >> S.best_order[p]) & 1:
                    nr |= (<u64>1) << p
            out += int(nr).to_bytes(nb, "big")
        return bytes(out)
    finally:
        PyMem_Free(S)


# ---------------------------------------------------------------------------
# free trees as level sequences
# ---------------------------------------------------------------------------


cdef bint _next_rooted_c(int* lay, int n, int p):
    cdef int q, i
    if p < 0:
        p = n - 1
        while lay[p] == 1:
            p -= 1
    if p == 0:
        return False
    q = p - 1
    while lay[q] != lay[p] - 1:
        q -= 1
    for i in range(p, n):
        lay[i] = lay[i - p + q]
    return True


cdef void _split_info(int* lay, int n, int* m_out, int* lh_out, int* rh_out):
    # m = index of the second depth-1 vertex (n when absent); heights of the
    # first subtree and of the rest
    cdef int i, m, lh, rh
    cdef bint one_found = False
    m = n
    for i in range(n):
        if lay[i] == 1:
            if one_found:
                m = i
                break
            one_found = True
    lh = 0
    for i in range(1, m):
        if lay[i] - 1 > lh:
            lh = lay[i] - 1
    rh = 0
    for i in range(m, n):
        if lay[i] > rh:
            rh = lay[i]
    m_out[0] = m
    lh_out[0] = lh
    rh_out[0] = rh


cdef bint _is_free_canonical_c(int* lay, int n, int m, int lh, int rh):
    cdef int llen, rlen, i, a, b
    if rh < lh:
        return False
    if rh == lh:
        llen = m - 1
        rlen = n - m + 1
        if llen > rlen:
            return False
        if llen == rlen:
            # lexicographic: left = lay[1..m-1]-1, rest = (0, lay[m..n-1])
            for i in range(llen):
                a = lay[1 + i] - 1
                b = 0 if i == 0 else lay[m + i - 1]
                if a > b:
                    return False
                if a < b:
                    break
    return True


cdef bint _next_free_c(int* lay, int n):
    cdef int m, lh, rh, p, old, m2, lh2, rh2, slen, t
    _split_info(lay, n, &m, &lh, &rh)
    if _is_free_canonical_c(lay, n, m, lh, rh):
        return True
    p = m - 1
    old = lay[p]
    if not _next_rooted_c(lay, n, p):
        return False
    if old > 2:
        _split_info(lay, n, &m2, &lh2, &rh2)
        slen = lh2 + 1
        for t in range(slen):
            lay[n - slen + t] = t + 1
    return True


cdef int _lay_maxdeg(int* lay, int n):
    cdef int deg[MAXN]
    cdef int stk[MAXN + 1]
    cdef int i, lev, parent, best
    memset(deg, 0, n * sizeof(int))
    stk[0] = 0
    for i in range(1, n):
        lev = lay[i]
        parent = stk[lev - 1]
        deg[parent] += 1
        deg[i] += 1
        stk[lev] = i
    best = 0
    for i in range(n):
        if deg[i] > best:
            best = deg[i]
    return best


cdef void _init_layout(int* lay, int n):
    cdef int i, pos
    for i in range(n // 2 + 1):
        lay[i] = i
    pos = n // 2 + 1
    for i in range(1, (n + 1) // 2):
        lay[pos] = i
        pos += 1


cdef class _TreeGen:
    """Iterator over free-tree level sequences with a degree cap."""

    cdef int n, dmax
    cdef int lay[MAXN]
    cdef bint exhausted

    def __cinit__(self, int n, int dmax):
        self.n = n
        self.dmax = dmax
        self.exhausted = False
        _init_layout(self.lay, n)

    def __iter__(self):
        return self

    def __next__(self):
        cdef bint ok
        cdef int i
        while True:
            if self.exhausted:
                raise StopIteration
            if not _next_free_c(self.lay, self.n):
                self.exhausted = True
                raise StopIteration
            ok = _lay_maxdeg(self.lay, self.n) <= self.dmax
            if ok:
                result = tuple(self.lay[i] for i in range(self.n))
            if not _next_rooted_c(self.lay, self.n, -1):
                self.exhausted = True
            if ok:
                return result


def free_tree_layouts(n, dmax):
    """Level sequences of all free trees on n vertices, max degree <= dmax."""
    cdef int cn = n
    cdef int cd = dmax
    if cn > MAXN:
        raise ValueError("compiled kernel supports n <= 64")
    if cn == 1:
        return iter(((0,),))
    if cn == 2:
        return iter((((0, 1),) if cd >= 1 else ()))
    if cd < 2:
        return iter(())
    return _TreeGen(cn, cd)


def count_free_trees(n, dmax):
    """Number of free trees on n vertices with maximum degree <= dmax."""
    cdef int lay[MAXN]
    cdef long total = 0
    cdef int cn = n
    cdef int cd = dmax
    if cn > MAXN:
        raise ValueError("compiled kernel supports n <= 64")
    if cn == 1:
        return 1
    if cn == 2:
        return 1 if cd >= 1 else 0
    if cd < 2:
        return 0
    _init_layout(lay, cn)
    while True:
        if not _next_free_c(lay, cn):
            return total
        if _lay_maxdeg(lay, cn) <= cd:
            total += 1
        if not _next_rooted_c(lay, cn, -1):
            return total
