"""Multi-point functions G_{2i} of the planar-graph ensemble.

Three independent routes to the same series — the boundary walk sum, the
ballot-number closed form in the uniform weight, and the linear reduction
valid once the index reaches the valence cutoff — plus the loop-equation
and re-rooting identities that tie them together.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb as _math_comb

from .algebra import ONE, Poly, RBAR, SeriesContext, make_monomial
from .master import ModelSpec
from .walks import WeightEnv, vprime, walk_gf

_ZERO = Poly.zero()


def comb(n: int, k: int) -> int:
    """Binomial coefficient with the zero-outside-range convention."""
    if k < 0 or k > n:
        return 0
    return _math_comb(n, k)


def ballot(i: int, j: int) -> int:
    """Number of 2i-step walks from 0 to 2j that stay non-negative."""
    return comb(2 * i, i - j) - comb(2 * i, i - j - 1)


def _rbar_pow(k: int) -> Poly:
    return Poly({make_monomial({RBAR: k}): 1}) if k else ONE


def g2i_boundary(i: int, env: WeightEnv) -> Poly:
    """G_{2i} as a walk sum hitting the hard wall: Z_{0,-1}(2i-1)."""
    return walk_gf(0, -1, 2 * i - 1, env)


def g2i_closed(i: int, spec: ModelSpec) -> Poly:
    """G_{2i} as a polynomial in the uniform weight Rbar and the couplings."""
    total = ballot(i, 0) * _rbar_pow(i)
    for k, g in spec.couplings():
        if k < 2:
            continue
        c = sum(ballot(i, j) * comb(2 * k - 1, k + j)
                for j in range(1, min(i, k - 1) + 1))
        if c:
            term = Poly({make_monomial({RBAR: i + k, g: 1}): c})
            total = total - term
    return total


def g2i_reduce(j: int, spec: ModelSpec, lower_values: dict[int, Poly],
               rbar: Poly, ctx: SeriesContext | None = None) -> Poly:
    """G_{2j} for j >= m, linearly from G_0..G_{2j-2} and the uniform weight."""
    if j < spec.m:
        raise ValueError("reduction only holds at or beyond the valence cutoff")
    total = _ZERO
    rpow = ONE
    for i in range(1, j + 1):
        rpow = rpow.mul(rbar, ctx)
        low = lower_values[j - i] if j - i > 0 else ONE
        term = rpow.mul(low, ctx) * comb(2 * j - i, i)
        total = total + term if i % 2 == 1 else total - term
    return total


def inverse_relation_residual(j: int, spec: ModelSpec, rbar: Poly,
                              gvalues: dict[int, Poly],
                              ctx: SeriesContext | None = None) -> Poly:
    """Difference of the two sides of the uniform-weight inversion relation.

    lhs = sum_{k >= j+1} g_k C(2k-1, k+j) Rbar^{k+j};
    rhs = sum_{i=0..j} (-1)^{i-1} C(2j-i, i) Rbar^i G_{2j-2i} + d_{j,0} Rbar;
    at j = 0 the relation collapses to the equation defining Rbar.
    """
    lhs = _ZERO
    for k, g in spec.couplings():
        if k < j + 1:
            continue
        term = rbar.pow(k + j, ctx) * comb(2 * k - 1, k + j)
        lhs = lhs + term.mul(Poly.var(g), ctx)
    rhs = _ZERO
    for i in range(j + 1):
        low = gvalues[j - i] if j - i > 0 else ONE
        term = rbar.pow(i, ctx).mul(low, ctx) * comb(2 * j - i, i)
        rhs = rhs - term if i % 2 == 0 else rhs + term
    if j == 0:
        rhs = rhs + rbar
    return lhs - rhs


def one_cut_residual(i: int, spec: ModelSpec, rbar: Poly,
                     gvalues: dict[int, Poly],
                     ctx: SeriesContext | None = None) -> Poly:
    """Difference of the two sides of the one-cut moment formula.

    lhs = sum_{l=0..i} G_{2i-2l} C(2l, l) Rbar^l; rhs = C(2i+1, i) Rbar^i
    minus the coupling corrections with plain binomial coefficients.
    """
    lhs = _ZERO
    for ell in range(i + 1):
        low = gvalues[i - ell] if i - ell > 0 else ONE
        lhs = lhs + rbar.pow(ell, ctx).mul(low, ctx) * comb(2 * ell, ell)
    rhs = rbar.pow(i, ctx) * comb(2 * i + 1, i)
    for k, g in spec.couplings():
        if k < 2:
            continue
        c = sum(comb(2 * i + 1, i - j) * comb(2 * k - 1, k + j)
                for j in range(1, min(i, k - 1) + 1))
        if c:
            rhs = rhs - rbar.pow(i + k, ctx).mul(Poly.var(g), ctx) * c
    return lhs - rhs


def cut_binomial_check(i: int, j: int) -> bool:
    """Walk-cutting identity on exact integers."""
    lhs = sum(comb(2 * ell, ell) * ballot(i - ell, j) for ell in range(i + 1))
    return lhs == comb(2 * i + 1, i - j)


def loop_equation_residual(i: int, spec: ModelSpec, env: WeightEnv,
                           gvalues: dict[int, Poly]) -> Poly:
    """Difference of the two sides of the loop equation.

    G_{2i+2} = sum_k g_k G_{2i+2k} + sum_{j=0..i} G_{2i-2j} G_{2j},
    with G_0 = 1 and all values taken as coupling series.
    """
    ctx = env.ctx

    def G(a: int) -> Poly:
        return gvalues[a] if a > 0 else ONE

    rhs = _ZERO
    for k, g in spec.couplings():
        rhs = rhs + G(i + k).mul(Poly.var(g), ctx)
    for j in range(i + 1):
        rhs = rhs + G(i - j).mul(G(j), ctx)
    return G(i + 1) - rhs


def rerooting_identity_residual(i: int, n: int, env: WeightEnv,
                                spec: ModelSpec) -> Poly:
    """Difference of the two sides of the depth-i re-rooting identity.

    These express constancy of the conserved values through telescoping
    products of R differences against sums of odd-walk products; the
    supported orders are i = 1..4.
    """
    ctx = env.ctx

    def R(a: int) -> Poly:
        return env.weight(a)

    def V(a: int, b: int) -> Poly:
        return vprime(a, b, env, spec)

    if i == 1:
        return (R(n) - R(0)) - V(n + 1, n - 2)
    if i == 2:
        lhs = R(0).mul(R(n + 1) - R(1), ctx)
        rhs = V(n + 3, n - 2) + V(n + 3, n).mul(V(n + 1, n - 2), ctx)
        return lhs - rhs
    if i == 3:
        lhs = (R(0).mul(R(1), ctx).mul(R(n + 2) - R(2), ctx)
               - R(0).mul(R(n + 1) - R(1), ctx).mul(R(n + 3) - R(1), ctx))
        rhs = (V(n + 5, n - 2)
               + V(n + 5, n).mul(V(n + 1, n - 2), ctx)
               + V(n + 5, n + 2).mul(V(n + 3, n - 2), ctx)
               + V(n + 5, n + 2).mul(V(n + 3, n), ctx).mul(V(n + 1, n - 2), ctx))
        return lhs - rhs
    if i == 4:
        r012 = R(0).mul(R(1), ctx).mul(R(2), ctx)
        lhs = (r012.mul(R(n + 3) - R(3), ctx)
               - R(0).mul(R(1), ctx).mul(
                   (R(n + 1) - R(1)).mul(R(n + 4) - R(2), ctx)
                   + (R(n + 2) - R(2)).mul(R(n + 4) - R(1), ctx)
                   + (R(n + 2) - R(2)).mul(R(n + 5) - R(2), ctx), ctx)
               + R(0).mul((R(n + 1) - R(1)).mul(R(n + 3) - R(1), ctx)
                          .mul(R(n + 5) - R(1), ctx), ctx))
        rhs = (V(n + 7, n - 2)
               + V(n + 7, n).mul(V(n + 1, n - 2), ctx)
               + V(n + 7, n + 4).mul(V(n + 5, n - 2), ctx)
               + V(n + 7, n + 2).mul(V(n + 3, n), ctx).mul(V(n + 1, n - 2), ctx)
               + V(n + 7, n + 4).mul(V(n + 5, n), ctx).mul(V(n + 1, n - 2), ctx)
               + V(n + 7, n + 4).mul(V(n + 5, n + 2), ctx)
               .mul(V(n + 3, n - 2), ctx)
               + V(n + 7, n + 2).mul(V(n + 3, n - 2), ctx)
               + V(n + 7, n + 4).mul(V(n + 5, n + 2), ctx).mul(V(n + 3, n), ctx)
               .mul(V(n + 1, n - 2), ctx))
        return lhs - rhs
    raise ValueError("supported orders are i = 1..4")


@dataclass
class Correlator:
    """A 2i-point function together with the route that produced it."""

    index: int
    value: Poly
    route: str
