"""Pure-Python implementations of the performance-critical kernels.

Two kernels live here: canonical labeling of small graphs (individualization
plus equitable refinement with automorphism pruning) and generation of free
trees as level sequences.  The compiled extension module ``_speedups``
implements the same entry points with identical observable behaviour; this
module is both the fallback and the reference the extension is tested
against.

Graphs are passed as ``(n, rows)`` where ``rows[i]`` is an integer bitmask of
the neighbours of vertex ``i``.  All functions here assume ``n <= 64``.
"""

from __future__ import annotations

# Automorphism generators stored per canonical-labeling search.  The cap only
# bounds memory; pruning degrades gracefully if it is hit.
_AUTO_CAP = 200


def _refine(adj, cells):
    """Equitable refinement of an ordered partition.

    Cells are split by the count of neighbours inside each splitter cell,
    pieces ordered by ascending count.  Both the splitting key and the piece
    order are label-invariant, so isomorphic inputs refine to corresponding
    partitions.
    """
    while True:
        changed = False
        for si in range(len(cells)):
            smask = 0
            for v in cells[si]:
                smask |= 1 << v
            new_cells = []
            for cell in cells:
                if len(cell) == 1:
                    new_cells.append(cell)
                    continue
                groups = {}
                for v in cell:
                    groups.setdefault((adj[v] & smask).bit_count(), []).append(v)
                if len(groups) == 1:
                    new_cells.append(cell)
                else:
                    changed = True
                    for key in sorted(groups):
                        new_cells.append(groups[key])
            if changed:
                cells = new_cells
                break
        if not changed:
            return cells


def canon_perm(n, rows, colors=None):
    """Canonical vertex order of a (optionally vertex-coloured) graph.

    Returns a tuple ``order`` with ``order[k]`` = the original vertex placed
    at canonical position ``k``.  Two graphs receive identical relabeled
    adjacency exactly when they are isomorphic (colour-preservingly, if
    colours are given).

    The search minimizes, over the individualization-refinement tree, the
    pair (sequence of refined cell-size tuples, adjacency code of the leaf
    order).  Cell-size sequences are label-invariant, which makes pruning by
    prefix comparison exact; automorphisms discovered at repeated leaves
    prune sibling branches via orbit closure.
    """
    if n == 1:
        return (0,)
    adj = rows
    if colors is None:
        cells = [list(range(n))]
    else:
        by = {}
        for v in range(n):
            by.setdefault(colors[v], []).append(v)
        cells = [by[c] for c in sorted(by)]

    best_chunks = None
    best_code = None
    best_order = None
    autos = []
    cur_chunks = []

    def in_orbit(v, tried, prefix):
        applicable = [a for a in autos if all(a[p] == p for p in prefix)]
        if not applicable:
            return False
        orbit = set(tried)
        frontier = list(tried)
        while frontier:
            u = frontier.pop()
            for a in applicable:
                w = a[u]
                if w not in orbit:
                    if w == v:
                        return True
                    orbit.add(w)
                    frontier.append(w)
        return False

    def rec(cells, depth, tied, prefix):
        nonlocal best_chunks, best_code, best_order
        cells = _refine(adj, cells)
        chunk = tuple(len(c) for c in cells)
        if tied and best_chunks is not None:
            if depth < len(best_chunks):
                bc = best_chunks[depth]
                if chunk > bc:
                    return False
                if chunk < bc:
                    tied = False
            else:
                # equal prefix but a longer chunk sequence sorts after the
                # current best, so nothing below can win
                return False
        cur_chunks.append(chunk)
        modified = False
        try:
            target = -1
            for ci, cell in enumerate(cells):
                if len(cell) > 1:
                    target = ci
                    break
            if target < 0:
                order = tuple(c[0] for c in cells)
                code = []
                for k in range(n):
                    row = adj[order[k]]
                    c = 0
                    for i in range(k):
                        if (row >> order[i]) & 1:
                            c |= 1 << i
                    code.append(c)
                code = tuple(code)
                key = (tuple(cur_chunks), code)
                if best_chunks is None or key < (best_chunks, best_code):
                    best_chunks, best_code, best_order = key[0], code, order
                    return True
                if code == best_code and order != best_order and len(autos) < _AUTO_CAP:
                    a = [0] * n
                    for k in range(n):
                        a[order[k]] = best_order[k]
                    autos.append(tuple(a))
                return False
            cell = cells[target]
            members = sorted(cell)
            tried = []
            for v in members:
                if tried and in_orbit(v, tried, prefix):
                    continue
                sub = (
                    cells[:target]
                    + [[v], [u for u in cell if u != v]]
                    + cells[target + 1 :]
                )
                if rec(sub, depth + 1, tied, prefix + (v,)):
                    modified = True
                    tied = True  # new best shares this node's chunk prefix
                tried.append(v)
            return modified
        finally:
            cur_chunks.pop()

    rec(cells, 0, True, ())
    return best_order


def canon_key(n, rows, colors=None):
    """Bytes uniquely identifying the isomorphism class of the graph.

    Layout: one byte ``n``, the sorted colour values (when given), then the
    canonically relabeled adjacency rows packed big-endian.
    """
    order = canon_perm(n, rows, colors)
    nb = (n + 7) // 8
    out = bytearray([n])
    if colors is not None:
        out += bytes(sorted(colors))
    for k in range(n):
        row = rows[order[k]]
        nr = 0
        for pos in range(n):
            if (row >> order[pos]) & 1:
                nr |= 1 << pos
        out += nr.to_bytes(nb, "big")
    return bytes(out)


# ---------------------------------------------------------------------------
# Free trees as level sequences (Wright/Richmond/Odlyzko/McKay successor).
#
# A tree on n vertices is a layout ``(0, l1, ..., l_{n-1})`` where entry i is
# the depth of vertex i in a preorder walk.  The successor scheme enumerates
# every free (unrooted, unlabeled) tree exactly once via its canonical rooted
# representation.
# ---------------------------------------------------------------------------


def _next_rooted_tree(layout, p=None):
    """Successor of a rooted-tree level sequence, or None at the last one."""
    if p is None:
        p = len(layout) - 1
        while layout[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while layout[q] != layout[p] - 1:
        q -= 1
    result = list(layout)
    for i in range(p, len(result)):
        result[i] = result[i - p + q]
    return result


def _split_layout(layout):
    """Split at the second depth-1 vertex: (first subtree, rest of tree)."""
    one_found = False
    m = None
    for i, lev in enumerate(layout):
        if lev == 1:
            if one_found:
                m = i
                break
            one_found = True
    if m is None:
        m = len(layout)
    left = [layout[i] - 1 for i in range(1, m)]
    rest = [0] + [layout[i] for i in range(m, len(layout))]
    return left, rest


def _is_free_canonical(layout):
    left, rest = _split_layout(layout)
    left_height = max(left)
    rest_height = max(rest)
    if rest_height < left_height:
        return False
    if rest_height == left_height:
        if len(left) > len(rest):
            return False
        if len(left) == len(rest) and left > rest:
            return False
    return True


def _next_free_tree(candidate):
    """Candidate itself if canonical as a free tree, else the next one."""
    if _is_free_canonical(candidate):
        return candidate
    left, rest = _split_layout(candidate)
    p = len(left)
    new_candidate = _next_rooted_tree(candidate, p)
    if new_candidate is None:
        return None
    if candidate[p] > 2:
        new_left, _ = _split_layout(new_candidate)
        new_left_height = max(new_left)
        suffix = list(range(1, new_left_height + 2))
        new_candidate[-len(suffix) :] = suffix
    return new_candidate


def _layout_max_degree(layout):
    n = len(layout)
    deg = [0] * n
    stack = [0]
    for i in range(1, n):
        lev = layout[i]
        del stack[lev:]
        parent = stack[lev - 1]
        deg[parent] += 1
        deg[i] += 1
        stack.append(i)
    return max(deg)


def free_tree_layouts(n, dmax):
    """Yield level sequences of all free trees on n vertices, max degree <= dmax.

    Exactly one representative per isomorphism class, in the successor
    order of the underlying enumeration.
    """
    if n == 1:
        yield (0,)
        return
    if n == 2:
        if dmax >= 1:
            yield (0, 1)
        return
    if dmax < 2:
        return
    layout = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while layout is not None:
        layout = _next_free_tree(layout)
        if layout is None:
            return
        if _layout_max_degree(layout) <= dmax:
            yield tuple(layout)
        layout = _next_rooted_tree(layout)


def count_free_trees(n, dmax):
    """Number of free trees on n vertices with maximum degree <= dmax."""
    total = 0
    for _ in free_tree_layouts(n, dmax):
        total += 1
    return total
