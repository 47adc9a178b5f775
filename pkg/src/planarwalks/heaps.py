"""Hard dimers, heaps of dimers, pyramids, and the walk/pyramid bijection.

Geometry conventions: a dimer in the unit segment [i-1, i] lives in the
stripe labeled i (label = top boundary) and carries weight R_i. A heap
places dimers at integer columns <= 0, each pushed as far right as
possible: a dimer at column c < 0 must be blocked by a dimer at column
c + 1 in its own stripe or an adjacent one. The right projection is the
set of column-0 dimers, always a hard-dimer configuration. A pyramid of
base [a, b] ((b-a) odd, positive) is a heap whose right projection is the
maximal configuration on [a, b]; a half-pyramid uses stripes > a only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Poly, SeriesContext
from .walks import Walk, WeightEnv, positive_walk_gf

_ZERO = Poly.zero()
_ONE = Poly.const(1)


@dataclass(frozen=True)
class DimerConfig:
    """Hard dimers on a segment: the set of occupied stripe labels."""

    lo: int  # segment [lo, hi]
    hi: int
    stripes: frozenset[int]

    def __post_init__(self):
        for i in self.stripes:
            if not (self.lo + 1 <= i <= self.hi):
                raise ValueError(f"dimer stripe {i} outside [{self.lo},{self.hi}]")
            if i + 1 in self.stripes:
                raise ValueError(f"dimers in stripes {i},{i+1} touch")


@dataclass(frozen=True)
class Heap:
    """Canonical heap of dimers: a frozen set of (stripe, column) pairs."""

    dimers: frozenset[tuple[int, int]]

    def right_projection(self) -> frozenset[int]:
        return frozenset(s for s, c in self.dimers if c == 0)

    def sorted_dimers(self) -> list[tuple[int, int]]:
        return sorted(self.dimers, key=lambda sc: (-sc[1], sc[0]))

    def weight(self, env: WeightEnv) -> Poly:
        w = _ONE
        for s, c in self.sorted_dimers():
            if c != 0:
                w = w.mul(env.weight(s), env.ctx)
        return w

    def to_json(self) -> list[list[int]]:
        return [[s, c] for s, c in self.sorted_dimers()]


def hard_dimer_gf(a: int, b: int, k: int, env: WeightEnv) -> Poly:
    """Weighted count of k hard dimers in [a, b] (0 above max packing)."""
    if k == 0:
        return _ONE
    if k < 0 or b <= a:
        return _ZERO
    key = ("pi", a, b, k)
    memo = env._memo
    hit = memo.get(key)
    if hit is not None:
        return hit
    # a configuration either leaves [b-1, b] empty or occupies it
    result = hard_dimer_gf(a, b - 1, k, env)
    sub = hard_dimer_gf(a, b - 2, k - 1, env)
    if not sub.is_zero():
        result = result + env.weight(b).mul(sub, env.ctx)
    memo[key] = result
    return result


def enumerate_hard_dimers(a: int, b: int, k: int) -> list[DimerConfig]:
    """All k-dimer hard configurations in [a, b] (enumeration oracle)."""
    out: list[DimerConfig] = []

    def rec(next_stripe: int, left: int, chosen: tuple[int, ...]):
        if left == 0:
            out.append(DimerConfig(a, b, frozenset(chosen)))
            return
        for s in range(next_stripe, b + 1):
            if b - s + 1 < 2 * left - 1:
                break
            rec(s + 2, left - 1, chosen + (s,))

    rec(a + 1, k, ())
    return out


def _base_stripes(a: int, b: int) -> tuple[int, ...]:
    if (b - a) % 2 == 0 or b <= a:
        raise ValueError("pyramid base must have (b - a) odd and positive")
    return tuple(range(a + 1, b + 1, 2))


def enumerate_pyramids(a: int, b: int, k: int, half: bool = False) -> list[Heap]:
    """All pyramids (or half-pyramids) of base [a, b] with k dimers total.

    Builds heaps column by column leftward from the base; every dimer in
    column c < 0 must conflict with a dimer in column c + 1, and stripes
    within one column are pairwise non-adjacent.
    """
    base = _base_stripes(a, b)
    need = len(base)
    if k < need:
        return []
    out: list[Heap] = []

    def extend(prev_col: tuple[int, ...], col: int, left: int,
               placed: tuple[tuple[int, int], ...]):
        if left == 0:
            out.append(Heap(frozenset(placed)))
            return
        candidates = sorted({s + d for s in prev_col for d in (-1, 0, 1)})
        if half:
            candidates = [s for s in candidates if s > a]

        def pick(idx: int, chosen: tuple[int, ...]):
            if chosen:
                extend(chosen, col - 1, left - len(chosen),
                       placed + tuple((s, col) for s in chosen))
            if idx >= len(candidates) or len(chosen) >= left:
                return
            for j in range(idx, len(candidates)):
                s = candidates[j]
                if chosen and s - chosen[-1] <= 1:
                    continue
                pick(j + 1, chosen + (s,))

        pick(0, ())

    extend(base, -1, k - need, tuple((s, 0) for s in base))
    return out


def heap_weight_sum(heaps: list[Heap], env: WeightEnv) -> Poly:
    total = _ZERO
    for h in heaps:
        total = total + h.weight(env)
    return total


def walk_to_pyramid(w: Walk) -> Heap:
    """Pebble bijection: walk from a to b > a with 2k-1 steps -> pyramid.

    The walker drops a pebble at each first passage through a unit
    segment and picks it up on the second, yielding a dimer per pick-up;
    the heap is completed on the right by the maximal configuration of
    the base.
    """
    a, b = w.start, w.end
    if b <= a:
        raise ValueError("walk must end strictly above its start")
    pebbles: set[int] = set()
    pickups: list[int] = []  # stripe labels in time order
    h = a
    for s in w.steps:
        stripe = h + 1 if s > 0 else h
        if stripe in pebbles:
            pebbles.remove(stripe)
            pickups.append(stripe)
        else:
            pebbles.add(stripe)
        h += s
    sequence = pickups + list(_base_stripes(a, b))
    # canonical columns: push right, processing in reverse addition order
    placed: list[tuple[int, int]] = []
    for s in reversed(sequence):
        blockers = [c for t, c in placed if abs(t - s) <= 1]
        col = min(blockers) - 1 if blockers else 0
        placed.append((s, col))
    return Heap(frozenset(placed))


def pyramid_to_walk(h: Heap) -> Walk:
    """Inverse of walk_to_pyramid via the triangle-splitting construction."""
    proj = sorted(h.right_projection())
    if not proj:
        raise ValueError("heap has an empty right projection")
    a, b = proj[0] - 1, proj[-1]
    if tuple(proj) != _base_stripes(a, b):
        raise ValueError("right projection is not a maximal base configuration")
    total = len(h.dimers)
    # per boundary line: (column, +1/-1) decisions, ordered left to right
    lines: dict[int, list[tuple[int, int]]] = {}
    for s, c in h.dimers:
        if c == 0:
            continue
        lines.setdefault(s - 1, []).append((c, 1))
        lines.setdefault(s, []).append((c, -1))
    for i in range(a, b):
        lines.setdefault(i, []).append((1, 1))
    for seq in lines.values():
        seq.sort()
    cursors = {i: 0 for i in lines}
    steps: list[int] = []
    pos = a
    for _ in range(2 * total - 1):
        seq = lines.get(pos)
        idx = cursors.get(pos, 0)
        if seq is None or idx >= len(seq):
            raise ValueError("not a pyramid: ran out of step decisions")
        cursors[pos] = idx + 1
        step = seq[idx][1]
        steps.append(step)
        pos += step
    if pos != b or any(cursors[i] != len(lines[i]) for i in lines):
        raise ValueError("not a pyramid: inconsistent triangle sequences")
    return Walk(a, tuple(steps))


def inversion_matrix(which: str, a: int, size: int,
                     env: WeightEnv) -> list[list[Poly]]:
    """Size x size truncation of the lower-triangular D(a) or Z(a) matrix."""
    if size < 1:
        raise ValueError("matrix size must be positive")
    mat = []
    for i in range(size):
        row = []
        for j in range(size):
            if j > i:
                row.append(_ZERO)
            elif which == "Z":
                row.append(positive_walk_gf(a, a + 2 * j, 2 * i, env))
            elif which == "D":
                val = hard_dimer_gf(a, a + 2 * i - 1, i - j, env)
                row.append(val if (i - j) % 2 == 0 else -val)
            else:
                raise ValueError("matrix kind must be 'D' or 'Z'")
        mat.append(row)
    return mat


def mat_mul(x: list[list[Poly]], y: list[list[Poly]],
            ctx: SeriesContext | None = None) -> list[list[Poly]]:
    n = len(x)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = _ZERO
            for l in range(n):
                acc = acc + x[i][l].mul(y[l][j], ctx)
            row.append(acc)
        out.append(row)
    return out


def identity_matrix(n: int) -> list[list[Poly]]:
    return [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
