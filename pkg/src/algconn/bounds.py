"""Upper bounds on algebraic connectivity for trees and cubic graphs.

Trees: a layered test vector (geometric weights over breadth-first layers)
bounds the modified eigenvalue of a branch, which in turn bounds the
connectivity of any tree containing that branch; worked through exactly this
yields a closed-form rational bound parameterized by the maximum degree d
and the layer depth K that fits inside the tree.

Cubic graphs: a path-shaped tridiagonal comparison matrix gives
3 - 2 sqrt(2) cos(pi/K) for graphs of girth >= 2K, and a diameter variant
of the same shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .graphs import (
    Graph,
    degree_sequence,
    diameter,
    girth,
    is_connected,
    is_tree,
    max_degree,
    min_degree,
)
from .spectral import algebraic_connectivity


@dataclass(frozen=True)
class LayerDecomposition:
    """n = (1 + (d-1) + ... + (d-1)^(K-1)) + m with 0 <= m < (d-1)^K."""

    K: int
    m: int


@dataclass(frozen=True)
class BoundEntry:
    name: str
    value: Optional[float]
    applicable: bool
    certified: bool
    attained: bool
    note: str


@dataclass(frozen=True)
class BoundReport:
    lambda2: float
    entries: tuple[BoundEntry, ...]


def layer_decomposition(n: int, d: int) -> LayerDecomposition:
    """Split n into full geometric layers of branching d-1 plus a remainder."""
    if n < 1:
        raise ValueError("need n >= 1")
    if d < 3:
        raise ValueError("need d >= 3")
    K = 0
    total = 0
    width = 1
    while total + width <= n:
        total += width
        width *= d - 1
        K += 1
    return LayerDecomposition(K=K, m=n - total)


def lamtilde_test_vector(g: Graph, r: int, d: int) -> np.ndarray:
    """Layered trial vector for the modified quotient rooted at r.

    Vertices are ranked by (breadth-first distance from r, index) and filled
    into layers of sizes 1, d-1, (d-1)^2, ..., (d-1)^(K-1) and a remainder;
    layer k receives the constant value 1 - (d-1)^(-k), the remainder
    1 - (d-1)^(-K-1).  On a tree whose degrees are at most d this ordering
    never puts a vertex above a deeper layer than its distance allows, which
    is what makes the resulting quotient small.
    """
    if not 0 <= r < g.n:
        raise ValueError(f"root {r} outside 0..{g.n - 1}")
    if d < 3:
        raise ValueError("need d >= 3")
    if not is_connected(g):
        raise ValueError("test vector needs a connected graph")
    dec = layer_decomposition(g.n, d)
    dist = _bfs_order(g, r)
    x = np.empty(g.n)
    pos = 0
    width = 1
    for k in range(1, dec.K + 1):
        val = 1.0 - (d - 1.0) ** (-k)
        for v in dist[pos : pos + width]:
            x[v] = val
        pos += width
        width *= d - 1
    val = 1.0 - (d - 1.0) ** (-(dec.K + 1))
    for v in dist[pos:]:
        x[v] = val
    return x


def _bfs_order(g: Graph, r: int) -> list[int]:
    dist = [-1] * g.n
    dist[r] = 0
    queue = [r]
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        row = g.rows[u]
        while row:
            low = row & -row
            w = low.bit_length() - 1
            row ^= low
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return sorted(range(g.n), key=lambda v: (dist[v], v))


def precise_lamtilde_bound(d: int, K: int) -> Fraction:
    """Exact rational bound on the modified eigenvalue of a depth-K branch.

    Valid for any tree of maximum degree <= d that contains K full layers
    below the root.  Requires K >= 2 and a positive denominator (the bound
    degenerates when the correction terms swamp the main term).
    """
    if d < 3:
        raise ValueError("need d >= 3")
    if K < 2:
        raise ValueError("need K >= 2")
    q = Fraction(1, d - 1)
    num = Fraction((d - 2) ** 2) * q ** (K + 1) * (1 - q ** (K - 1))
    den = (
        1
        - 2 * (K - 1) * (d - 2) * q**K
        - (d - 1 - q**2) * q**K
        - q ** (2 * K + 1)
    )
    if den <= 0:
        raise ValueError(f"bound degenerates at d={d}, K={K} (denominator {den})")
    return num / den


def _tree_bound_level(n: int, d: int) -> int:
    # largest K with (d-1)^K <= 1 + (d-2)(n-2) / (2(d-1)), exactly
    cap = 1 + Fraction((d - 2) * (n - 2), 2 * (d - 1))
    K = 0
    power = 1
    while power * (d - 1) <= cap:
        power *= d - 1
        K += 1
    return K


def tree_bound_precise(n: int, d: int) -> Fraction:
    """Upper bound on the connectivity of every n-vertex tree of max degree d.

    Splitting any such tree at a well-chosen vertex leaves a branch deep
    enough for K full layers, with K as computed here; the layered-branch
    bound then applies.  Raises when n is too small to guarantee K >= 2.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if d < 3:
        raise ValueError("need d >= 3")
    K = _tree_bound_level(n, d)
    if K < 2:
        raise ValueError(f"no guaranteed depth-2 branch at n={n}, d={d}")
    return precise_lamtilde_bound(d, K)


def tree_bound_asymptotic(n: int, d: int) -> float:
    """Leading-order form 2(d-2)/n of the tree bound (reference value)."""
    if n < 1:
        raise ValueError("need n >= 1")
    if d < 3:
        raise ValueError("need d >= 3")
    return 2.0 * (d - 2) / n


def conjectured_tree_bound(n: int, d: int) -> float:
    """Conjectured sharp asymptotic d(d-2) / ((d-1) n) (reference value)."""
    if n < 1:
        raise ValueError("need n >= 1")
    if d < 3:
        raise ValueError("need d >= 3")
    return d * (d - 2) / ((d - 1) * n)


def basic_diameter_bound(t: Graph) -> float:
    """2 - 2 cos(pi / (D+1)) for a tree of diameter D.

    A diameter-D tree contains a path on D+1 vertices, and attaching the
    rest of the tree only lowers the connectivity, so the path's value
    bounds the tree's.
    """
    if not is_tree(t):
        raise ValueError("diameter bound applies to trees")
    if t.n < 2:
        raise ValueError("need n >= 2")
    D = diameter(t)
    return 2.0 - 2.0 * math.cos(math.pi / (D + 1))


def tk_bound(K: int) -> float:
    """3 - 2 sqrt(2) cos(pi/K): connectivity bound for cubic girth >= 2K."""
    if K < 1:
        raise ValueError("need K >= 1")
    return 3.0 - 2.0 * math.sqrt(2.0) * math.cos(math.pi / K)


def girth_bound(g_girth: int) -> float:
    """Cubic upper bound from the girth: tk_bound(floor(girth/2))."""
    if g_girth < 3:
        raise ValueError("girth is at least 3")
    return tk_bound(g_girth // 2)


def nilli_bound(D: int) -> float:
    """3 - 2 sqrt(2) cos(2 pi / D): cubic bound from the diameter, D >= 2."""
    if D < 2:
        raise ValueError("need diameter >= 2")
    return 3.0 - 2.0 * math.sqrt(2.0) * math.cos(2.0 * math.pi / D)


def tk_matrix(K: int) -> np.ndarray:
    """Tridiagonal comparison matrix behind tk_bound.

    K x K, diagonal (4, 3, ..., 3, 5), off-diagonals -sqrt(2).  Its smallest
    eigenvalue equals tk_bound(K).
    """
    if K < 2:
        raise ValueError("need K >= 2")
    M = np.diag([4.0] + [3.0] * (K - 2) + [5.0])
    for i in range(K - 1):
        M[i, i + 1] = M[i + 1, i] = -math.sqrt(2.0)
    return M


def min_degree_bound(g: Graph) -> float:
    """Fiedler's bound: connectivity <= n/(n-1) * minimum degree."""
    if g.n < 2:
        raise ValueError("need n >= 2")
    return g.n / (g.n - 1.0) * min_degree(g)


ATTAINED_TOL = 1e-6


def bound_report(g: Graph) -> BoundReport:
    """Every applicable upper bound for g, with certification flags.

    "certified" entries are proven bounds for g's class; the rest are
    asymptotic or conjectured reference values.  "attained" marks certified
    bounds met by g's actual connectivity to within 1e-6.
    """
    if g.n < 2:
        raise ValueError("need n >= 2")
    lam2 = algebraic_connectivity(g)
    entries = []

    def add(name, value, applicable, certified, note=""):
        attained = (
            applicable
            and certified
            and value is not None
            and abs(value - lam2) <= ATTAINED_TOL
        )
        entries.append(
            BoundEntry(
                name=name,
                value=None if value is None else float(value),
                applicable=applicable,
                certified=certified,
                attained=attained,
                note=note,
            )
        )

    add("min_degree", min_degree_bound(g), True, True, "n/(n-1) * min degree")

    tree = is_tree(g)
    d = max_degree(g)
    if tree and g.n >= 2:
        add("diameter_path", basic_diameter_bound(g), True, True,
            f"embedded path, D={diameter(g)}")
    else:
        add("diameter_path", None, False, True, "not a tree")

    if tree and d >= 3:
        try:
            K = _tree_bound_level(g.n, d)
            val = tree_bound_precise(g.n, d)
            add("tree_layered", float(val), True, True, f"d={d}, K={K}")
        except ValueError as exc:
            add("tree_layered", None, False, True, str(exc))
        add("tree_asymptotic", tree_bound_asymptotic(g.n, d), True, False,
            f"2(d-2)/n at d={d}")
        add("tree_conjectured", conjectured_tree_bound(g.n, d), True, False,
            f"d(d-2)/((d-1)n) at d={d}")
    else:
        why = "not a tree" if not tree else "max degree below 3"
        add("tree_layered", None, False, True, why)
        add("tree_asymptotic", None, False, False, why)
        add("tree_conjectured", None, False, False, why)

    cubic = degree_sequence(g) == (3,) * g.n
    gir = girth(g) if cubic else None
    if cubic and gir is not None:
        add("girth_cubic", girth_bound(gir), True, True,
            f"girth {gir}, K={gir // 2}")
    else:
        add("girth_cubic", None, False, True, "needs a cubic graph with a cycle")

    if cubic and is_connected(g) and diameter(g) >= 2:
        add("nilli_cubic", nilli_bound(diameter(g)), True, True,
            f"diameter {diameter(g)}")
    else:
        add("nilli_cubic", None, False, True,
            "needs a connected cubic graph of diameter >= 2")

    return BoundReport(lambda2=lam2, entries=tuple(entries))
