"""Brute-force tree oracle for the weight series R_n.

Planted plane trees whose inner vertices are even-valent and carry a fixed
quota of buds; the contour walk of such a tree encodes how deeply the root
gets encircled when buds are matched to leaves around it.  Enumerating the
trees directly gives an independent check on the series produced by the
fixed-point solver.

A tree is a nested tuple: ("L",) for a leaf, ("B",) for a bud, and
("V", children) for an inner vertex with an ordered child tuple (the edge
toward the root is implicit).  A 2k-valent inner vertex has 2k - 1
children, exactly k - 1 of which are buds.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator

from .algebra import ONE, Poly, gvar, make_monomial

LEAF = ("L",)
BUD = ("B",)

Tree = tuple


def is_leaf(t: Tree) -> bool:
    return t[0] == "L"


def is_bud(t: Tree) -> bool:
    return t[0] == "B"


def enumerate_blossom(m: int, max_inner: int) -> Iterator[Tree]:
    """All planted trees with at most max_inner inner vertices.

    Exhaustive and duplicate-free; valences run over 2, 4, ..., 2m.
    Includes the single-leaf tree.
    """
    for t, _ in _subtrees(m, max_inner):
        yield t


def _subtrees(m: int, budget: int) -> Iterator[tuple[Tree, int]]:
    yield LEAF, 0
    if budget < 1:
        return
    for k in range(1, m + 1):
        slots = 2 * k - 1
        for bud_positions in combinations(range(slots), k - 1):
            buds = set(bud_positions)
            for filled, used in _fill(m, slots - (k - 1), budget - 1):
                children = []
                it = iter(filled)
                for pos in range(slots):
                    children.append(BUD if pos in buds else next(it))
                yield ("V", tuple(children)), used + 1


def _fill(m: int, count: int, budget: int) -> Iterator[tuple[tuple, int]]:
    if count == 0:
        yield (), 0
        return
    for head, used in _subtrees(m, budget):
        for rest, rest_used in _fill(m, count - 1, budget - used):
            yield (head,) + rest, used + rest_used


def inner_valences(t: Tree) -> list[int]:
    """Valences of the inner vertices, in traversal order."""
    out: list[int] = []
    stack = [t]
    while stack:
        node = stack.pop()
        if node[0] == "V":
            out.append(len(node[1]) + 1)
            stack.extend(reversed(node[1]))
    return out


def tree_weight(t: Tree) -> Poly:
    """Product of one coupling factor per inner vertex."""
    exps: dict[str, int] = {}
    for v in inner_valences(t):
        g = gvar(v // 2)
        exps[g] = exps.get(g, 0) + 1
    if not exps:
        return ONE
    return Poly({make_monomial(exps): 1})


def contour_walk(t: Tree) -> list[int]:
    """+1 per leaf and -1 per bud, read around the tree from the root."""
    steps: list[int] = []

    def visit(node: Tree) -> None:
        if node[0] == "L":
            steps.append(1)
        elif node[0] == "B":
            steps.append(-1)
        else:
            for child in node[1]:
                visit(child)

    visit(t)
    return steps


def contour_depth(t: Tree) -> int:
    """Absolute value of the minimum height reached by the contour walk."""
    h = 0
    lo = 0
    for s in contour_walk(t):
        h += s
        lo = min(lo, h)
    return -lo


def closure_excess(t: Tree) -> int:
    """Buds left unmatched when each bud grabs the next leaf after it.

    The gluing reads the atoms in the direction opposite to the contour
    walk and never wraps past the root, so a stack scan of the reversed
    walk suffices: a leaf closes the most recently opened bud.
    """
    open_buds = 0
    for s in reversed(contour_walk(t)):
        if s < 0:
            open_buds += 1
        elif open_buds:
            open_buds -= 1
    return open_buds


def brute_force_rn(n: int, m: int, max_inner: int,
                   x_weight: bool = False) -> Poly:
    """Weight series of trees with contour depth at most n, by enumeration."""
    if x_weight:
        raise ValueError("face-weighted enumeration is not supported; "
                         "use the series route in stats instead")
    total = Poly.zero()
    for t in enumerate_blossom(m, max_inner):
        if contour_depth(t) <= n:
            total = total + tree_weight(t)
    return total


def reroot(t: Tree) -> Tree:
    """Move the planting to the first bud whose step dips below height 0.

    The old planting becomes a leaf.  The result is a tree whose root
    vertex is missing one bud from its quota, whose contour walk ends at
    +3, and whose depth drops by exactly one.
    """
    # locate the target bud: first contour step descending to height -1
    path: list[int] | None = None
    h = 0

    def find(node: Tree, trail: list[int]) -> bool:
        nonlocal h, path
        if node[0] == "L":
            h += 1
            return False
        if node[0] == "B":
            h -= 1
            if h == -1:
                path = list(trail)
                return True
            return False
        for i, child in enumerate(node[1]):
            trail.append(i)
            if find(child, trail):
                return True
            trail.pop()
        return False

    if not find(t, []):
        raise ValueError("tree has depth 0; nothing encircles the root")
    assert path is not None

    # walk down to the bud, recording the vertex chain
    chain: list[Tree] = [t]
    for i in path[:-1]:
        chain.append(chain[-1][1][i])

    # view from below: what each vertex looks like once its parent edge
    # becomes a child edge; the old planting turns into a leaf
    up: Tree = LEAF
    for node, i in zip(chain[:-1], path[:-1]):
        kids = node[1]
        up = ("V", kids[i + 1:] + (up,) + kids[:i])
    last, j = chain[-1], path[-1]
    kids = last[1]
    return ("V", kids[j + 1:] + (up,) + kids[:j])


def count_atoms(t: Tree) -> tuple[int, int]:
    """(leaves, buds) of a tree."""
    leaves = buds = 0
    stack = [t]
    while stack:
        node = stack.pop()
        if node[0] == "L":
            leaves += 1
        elif node[0] == "B":
            buds += 1
        else:
            stack.extend(node[1])
    return leaves, buds
