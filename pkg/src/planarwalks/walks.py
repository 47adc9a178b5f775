"""Generating functions for weighted lattice walks.

A walk makes +-1 steps on the integers; every descent from height i to
height i-1 picks up a weight R_i. Weights are supplied by a WeightEnv,
which answers R_i for every integer i, either symbolically (R_i is the
indeterminate "R_i") or from a solved assignment with a floor (R_i = 0
below it) and a stabilized tail value beyond a horizon.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import TYPE_CHECKING, Sequence

from .algebra import Poly, SeriesContext, rvar

if TYPE_CHECKING:  # pragma: no cover
    from .master import ModelSpec

_ZERO = Poly.zero()
_ONE = Poly.const(1)


@dataclass(frozen=True)
class Walk:
    """An explicit walk: start height plus a word of +-1 steps."""

    start: int
    steps: tuple[int, ...]

    @property
    def end(self) -> int:
        return self.start + sum(self.steps)

    def heights(self) -> list[int]:
        out = [self.start]
        for s in self.steps:
            out.append(out[-1] + s)
        return out

    def descent_heights(self) -> list[int]:
        """Starting heights of the descending steps (weight indices)."""
        h = self.start
        out = []
        for s in self.steps:
            if s < 0:
                out.append(h)
            h += s
        return out


@dataclass
class WeightEnv:
    """Total assignment i -> R_i over the integers.

    mode "symbolic": R_i is the variable R_i (zero below the floor, if a
    floor is set). mode "solved": R_i is looked up in `assignment` for
    floor <= i <= horizon and equals `tail` above the horizon.
    `zero_max` forces R_i = 0 for i <= zero_max (used for positive walks).
    """

    mode: str = "symbolic"
    floor: int | None = None
    horizon: int | None = None
    assignment: dict[int, Poly] = field(default_factory=dict)
    tail: Poly | None = None
    ctx: SeriesContext | None = None
    zero_max: int | None = None
    _memo: dict = field(default_factory=dict, repr=False)
    _restricted: dict = field(default_factory=dict, repr=False)

    def weight(self, i: int) -> Poly:
        if self.zero_max is not None and i <= self.zero_max:
            return _ZERO
        if self.floor is not None and i < self.floor:
            return _ZERO
        if self.mode == "symbolic":
            return Poly.var(rvar(i))
        if self.horizon is not None and i > self.horizon:
            if self.tail is None:
                raise ValueError(f"no tail value for R_{i} beyond the horizon")
            return self.tail
        try:
            return self.assignment[i]
        except KeyError:
            raise ValueError(f"R_{i} not covered by this environment") from None

    def restrict_above(self, a: int) -> "WeightEnv":
        """Environment with R_i -> 0 for all i <= a (positive-walk weights)."""
        env = self._restricted.get(a)
        if env is None:
            zm = a if self.zero_max is None else max(a, self.zero_max)
            env = WeightEnv(mode=self.mode, floor=self.floor,
                            horizon=self.horizon, assignment=self.assignment,
                            tail=self.tail, ctx=self.ctx, zero_max=zm)
            self._restricted[a] = env
        return env

    def bindings(self, indices) -> dict[str, Poly]:
        """Map R_i variables to this environment's values, for substitution."""
        return {rvar(i): self.weight(i) for i in indices}


def symbolic_env(floor: int | None = None,
                 ctx: SeriesContext | None = None) -> WeightEnv:
    """Environment where every R_i is its own indeterminate."""
    return WeightEnv(mode="symbolic", floor=floor, ctx=ctx)


def walk_gf(a: int, b: int, k: int, env: WeightEnv) -> Poly:
    """Weighted count of k-step walks from height a to height b.

    Computed by dynamic programming on (height, steps); zero whenever
    (b - a) and k have different parities or k < 0.
    """
    if k < 0 or (b - a - k) % 2 != 0 or abs(b - a) > k:
        return _ZERO
    key = (a, b, k)
    memo = env._memo
    hit = memo.get(key)
    if hit is not None:
        return hit
    ctx = env.ctx
    front: dict[int, Poly] = {a: _ONE}
    for _ in range(k):
        new: dict[int, Poly] = {}
        for h, val in front.items():
            up = new.get(h + 1)
            new[h + 1] = val if up is None else up + val
            w = env.weight(h)
            if not w.is_zero():
                down = val.mul(w, ctx)
                prev = new.get(h - 1)
                new[h - 1] = down if prev is None else prev + down
        front = new
    result = front.get(b, _ZERO)
    memo[key] = result
    return result


def walk_gf_enumerated(a: int, b: int, k: int, env: WeightEnv) -> Poly:
    """Brute-force oracle for walk_gf by enumerating all 2^k step words."""
    if k < 0:
        return _ZERO
    total = _ZERO
    for steps in product((1, -1), repeat=k):
        h = a
        w = _ONE
        for s in steps:
            if s < 0:
                w = w.mul(env.weight(h), env.ctx)
                if w.is_zero():
                    break
            h += s
        else:
            if h == b:
                total = total + w
    return total


def positive_walk_gf(a: int, b: int, k: int, env: WeightEnv) -> Poly:
    """Like walk_gf but for walks staying at or above height a."""
    return walk_gf(a, b, k, env.restrict_above(a))


def vprime(a: int, b: int, env: WeightEnv, spec: "ModelSpec") -> Poly:
    """Grand-canonical walk generating function sum_k g_k Z_{a,b}(2k-1)."""
    total = _ZERO
    for k, g in spec.couplings():
        z = walk_gf(a, b, 2 * k - 1, env)
        if not z.is_zero():
            total = total + z.mul(Poly.var(g), env.ctx)
    return total


def mobile_polygon_gf(n: int, k: int, env: WeightEnv) -> Poly:
    """Rooted-polygon generating function of the mobile picture (an alias)."""
    return walk_gf(n - 1, n, 2 * k - 1, env)


def walk_weight(start: int, steps: Sequence[int], env: WeightEnv) -> Poly:
    """Product of descent weights along an explicit walk."""
    h = start
    w = _ONE
    for s in steps:
        if s < 0:
            w = w.mul(env.weight(h), env.ctx)
        h += s
    return w


def all_walks(a: int, b: int, k: int) -> list[Walk]:
    """All walks of length k from a to b (oracle-scale enumeration)."""
    out = []
    for steps in product((1, -1), repeat=k):
        if a + sum(steps) == b:
            out.append(Walk(a, steps))
    return out
