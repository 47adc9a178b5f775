"""Series solver for the depth recursion R_n = boundary_n + V'_{n,n-1}.

The solution is a family of formal power series in the couplings g_k,
one per depth n >= 0, with R_n = 0 for n < 0. Beyond a stabilization
horizon every R_n equals the depth-unrestricted value Rbar.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .algebra import ONE, Poly, RBAR, SeriesContext, gvar
from .walks import WeightEnv, vprime

_ZERO = Poly.zero()


@dataclass(frozen=True)
class ModelSpec:
    """Even-valence model with couplings g_1..g_m and an n=0 boundary term.

    `active` restricts which couplings are switched on (defaults to all of
    1..m); the boundary defaults to 1 and is set to the variable x for
    face-adjacency statistics.
    """

    m: int
    boundary: Poly = ONE
    active: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("valence cutoff m must be >= 1")
        if self.active is not None:
            bad = [k for k in self.active if not 1 <= k <= self.m]
            if bad:
                raise ValueError(f"couplings {bad} outside 1..{self.m}")

    def couplings(self) -> list[tuple[int, str]]:
        ks = self.active if self.active is not None else range(1, self.m + 1)
        return [(k, gvar(k)) for k in ks]

    def coupling_vars(self) -> list[str]:
        return [g for _, g in self.couplings()]

    def boundary_value(self, n: int) -> Poly:
        return self.boundary if n == 0 else ONE


def series_context(spec: ModelSpec, order: int) -> SeriesContext:
    """Default truncation: grade by this model's coupling variables."""
    return SeriesContext(spec.coupling_vars(), order)


def solve_rbar(spec: ModelSpec, ctx: SeriesContext) -> Poly:
    """Depth-unrestricted series: Rbar = 1 + sum_k g_k C(2k-1, k) Rbar^k."""
    from .algebra import newton_solve

    u = Poly.var(RBAR)
    eq = u - ONE
    for k, g in spec.couplings():
        eq = eq - Poly.var(g) * comb(2 * k - 1, k) * u.pow(k, None)
    return newton_solve(eq, RBAR, ONE, ctx)


def rbar_equation_residual(rbar: Poly, spec: ModelSpec,
                           ctx: SeriesContext) -> Poly:
    res = rbar - ONE
    for k, g in spec.couplings():
        res = res - comb(2 * k - 1, k) * Poly.var(g).mul(rbar.pow(k, ctx), ctx)
    return res.truncate(ctx)


def horizon(spec: ModelSpec, ctx: SeriesContext) -> int:
    """Depth beyond which R_n has provably stabilized, plus lookahead slack."""
    return ctx.order * (2 * spec.m - 2) + 2 * spec.m


def _env_from(assignment: dict[int, Poly], tail: Poly, h: int,
              ctx: SeriesContext) -> WeightEnv:
    return WeightEnv(mode="solved", floor=0, horizon=h,
                     assignment=assignment, tail=tail, ctx=ctx)


def solve_master(spec: ModelSpec, ctx: SeriesContext) -> WeightEnv:
    """Solve the recursion for R_0..R_H as truncated coupling series.

    Jacobi iteration from R_n = boundary_n: each sweep recomputes every
    R_n from the previous iterate and gains one order in the couplings,
    so ctx.order + 1 sweeps are guaranteed to reach the fixed point.
    """
    h = horizon(spec, ctx)
    tail = solve_rbar(spec, ctx)
    current = {n: spec.boundary_value(n).truncate(ctx) for n in range(h + 1)}
    for _ in range(ctx.order + 2):
        env = _env_from(current, tail, h, ctx)
        updated = {
            n: (spec.boundary_value(n) + vprime(n, n - 1, env, spec)).truncate(ctx)
            for n in range(h + 1)
        }
        if updated == current:
            break
        current = updated
    else:
        raise RuntimeError("master-equation sweeps did not reach a fixed point")
    env = _env_from(current, tail, h, ctx)
    bad = [n for n, (r1, r2) in residual_master(env, spec, range(h + 1), ctx)
           if not (r1.is_zero() and r2.is_zero())]
    if bad:
        raise RuntimeError(f"nonzero residual at n={bad}")
    return env


def residual_master(env: WeightEnv, spec: ModelSpec, n_range,
                    ctx: SeriesContext) -> list[tuple[int, tuple[Poly, Poly]]]:
    """Per-n residuals of both equivalent forms of the recursion.

    First form: R_n - boundary_n - V'_{n,n-1}. Second (reflected) form:
    R_n (1 - V'_{n-1,n}) - boundary_n.
    """
    out = []
    for n in n_range:
        rn = env.weight(n)
        r1 = (rn - spec.boundary_value(n) - vprime(n, n - 1, env, spec)).truncate(ctx)
        r2 = (rn.mul(ONE - vprime(n - 1, n, env, spec), ctx)
              - spec.boundary_value(n)).truncate(ctx)
        out.append((n, (r1, r2)))
    return out
