"""Face-adjacency statistics for pure tetravalent and hexavalent graphs.

The weight series R_0 gains a marker x per face adjacent to the external
face; in the infinite-size limit the normalized series becomes a genuine
probability distribution over the number of adjacent faces, with exact
rational probabilities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import (ONE, Poly, RBAR, SeriesContext, make_monomial,
                      newton_solve, series_inverse)
from .master import ModelSpec, series_context, solve_master, solve_rbar

XVAR = "x"
_X = Poly.var(XVAR)
_ZERO = Poly.zero()


def face_spec(model: str) -> ModelSpec:
    """Model with the x-marked boundary and a single active coupling."""
    if model == "tetra":
        return ModelSpec(m=2, boundary=_X, active=(2,))
    if model == "hexa":
        return ModelSpec(m=3, boundary=_X, active=(3,))
    raise ValueError("model must be 'tetra' or 'hexa'")


def face_series(model: str, order: int) -> Poly:
    """R_0(x) as a series in the coupling with polynomial x coefficients."""
    spec = face_spec(model)
    ctx = series_context(spec, order)
    return solve_master(spec, ctx).weight(0)


def tetra_equation_residual(r0: Poly, order: int) -> Poly:
    """Residual of the algebraic equation satisfied by the tetravalent R_0(x).

    x(x-1) + (1 - x + g2 R(R-2) - 2 g2^2 R^3) R_0 + x g2 R_0^2, with R the
    uniform-weight series of the pure-g2 model.
    """
    spec = face_spec("tetra")
    ctx = series_context(spec, order)
    g2 = Poly.var("g2")
    r = solve_rbar(spec, ctx)
    lin = (ONE - _X + g2.mul(r.mul(r - 2 * ONE, ctx), ctx)
           - 2 * g2.pow(2, ctx).mul(r.pow(3, ctx), ctx))
    res = (_X.mul(_X - ONE, ctx) + lin.mul(r0, ctx)
           + _X.mul(g2, ctx).mul(r0.pow(2, ctx), ctx))
    return res.truncate(ctx)


def hexa_equation_residual(r0: Poly, order: int) -> Poly:
    """Residual of the cubic equation satisfied by the hexavalent R_0(x)."""
    spec = face_spec("hexa")
    ctx = series_context(spec, order)
    g3 = Poly.var("g3")
    r = solve_rbar(spec, ctx)
    xm1 = _X - ONE
    lin = (xm1 + 2 * g3.mul(r.pow(2, ctx), ctx).mul(3 * ONE - 2 * r, ctx)
           + 24 * g3.pow(2, ctx).mul(r.pow(5, ctx), ctx))
    quad = r.mul(_X, ctx).mul(g3, ctx).mul(
        r - 2 * ONE - 5 * g3.mul(r.pow(3, ctx), ctx), ctx)
    res = (_X.mul(xm1.pow(2, ctx), ctx)
           - xm1.mul(lin, ctx).mul(r0, ctx)
           + quad.mul(r0.pow(2, ctx), ctx)
           + _X.pow(2, ctx).mul(g3, ctx).mul(r0.pow(3, ctx), ctx))
    return res.truncate(ctx)


def _x_ctx(order: int) -> SeriesContext:
    return SeriesContext([XVAR], order)


def delta_tetra(order: int) -> Poly:
    """Tetravalent face-count distribution as an x-series.

    Closed form (1/(2x)) (1 - (8-9x)/(4-3x)^{3/2}), expanded with exact
    rational coefficients: (4-3x)^{-3/2} = (1/8) (1-3x/4)^{-3/2}.
    """
    # (1-u)^{-3/2} = sum_p binom(-3/2, p) (-u)^p with u = 3x/4
    s = _ZERO
    c = Fraction(1)
    for p in range(order + 2):
        if p:
            c = c * Fraction(2 * p + 1, 2 * p) * Fraction(3, 4)
        s = s + Poly({make_monomial({XVAR: p}): c})
    num = ONE - (8 * ONE - 9 * _X).mul(s, None) * Fraction(1, 8)
    out = {}
    for mono, coeff in num.terms.items():
        exp = mono[0][1] if mono else 0
        if exp == 0:
            raise ArithmeticError("numerator must vanish at x=0")
        if exp - 1 <= order:
            out[make_monomial({XVAR: exp - 1})] = Fraction(coeff, 2)
    return Poly(out)


def tetra_delta_residual(delta: Poly, order: int) -> Poly:
    """27 x (x-1) + 4 (4-3x)^3 Delta (1 - x Delta), modulo x^{order+1}."""
    ctx = _x_ctx(order)
    cubic = (4 * ONE - 3 * _X).pow(3, ctx)
    res = (27 * _X.mul(_X - ONE, ctx)
           + 4 * cubic.mul(delta, ctx).mul(ONE - _X.mul(delta, ctx), ctx))
    return res.truncate(ctx)


def p_tetra(p: int) -> Fraction:
    """Probability of exactly p adjacent faces, tetravalent case."""
    if p < 1:
        raise ValueError("p must be >= 1")
    return (Fraction(3, 16) ** (p + 1)
            * Fraction(factorial(2 * p + 1),
                       factorial(p + 1) * factorial(p - 1)))


def _hexa_delta_equation(delta: Poly, ctx: SeriesContext) -> Poly:
    xm1 = _X - ONE
    return (125 * _X.mul(xm1.pow(2, ctx), ctx)
            - 9 * xm1.mul(125 * _X.pow(3, ctx) + 475 * _X.pow(2, ctx)
                          + 200 * _X - 96 * ONE, ctx).mul(delta, ctx)
            - 27 * _X.mul(_X + 4 * ONE, ctx)
            .mul((7 * ONE - 5 * _X).pow(3, ctx), ctx)
            .mul(delta.pow(2, ctx), ctx)
            .mul(ONE - _X.mul(delta, ctx), ctx))


def delta_hexa(order: int) -> Poly:
    """Hexavalent face-count distribution: the series branch with Delta=O(x)."""
    ctx = _x_ctx(order)
    u = Poly.var("Delta")
    return newton_solve(_hexa_delta_equation(u, ctx), "Delta", _ZERO, ctx)


def hexa_delta_residual(delta: Poly, order: int) -> Poly:
    ctx = _x_ctx(order)
    return _hexa_delta_equation(delta, ctx).truncate(ctx)


def p_hexa(p: int, order: int | None = None) -> Fraction:
    """Probability of exactly p adjacent faces, hexavalent case."""
    if p < 1:
        raise ValueError("p must be >= 1")
    series = delta_hexa(order if order is not None else p)
    c = series.coeff_of({XVAR: p})
    return c if isinstance(c, Fraction) else Fraction(c)


def r1_closed(spec: ModelSpec, ctx: SeriesContext) -> Poly:
    """Closed form of R_1 at cutoff 3 as a rational expression in Rbar.

    R (1 - 6 g3 R^3 - g2^2 R^4 - 25 g3^2 R^6 - g2 (R^2 + 10 g3 R^5))
    divided by (1 - g2 R^2 - 5 g3 R^3), with R the uniform-weight series.
    """
    if spec.m != 3 or spec.active is not None:
        raise ValueError("closed form stated for the full cutoff-3 model")
    r = solve_rbar(spec, ctx)
    g2, g3 = Poly.var("g2"), Poly.var("g3")
    num = r.mul(ONE - 6 * g3.mul(r.pow(3, ctx), ctx)
                - g2.pow(2, ctx).mul(r.pow(4, ctx), ctx)
                - 25 * g3.pow(2, ctx).mul(r.pow(6, ctx), ctx)
                - g2.mul(r.pow(2, ctx) + 10 * g3.mul(r.pow(5, ctx), ctx),
                         ctx), ctx)
    den = ONE - g2.mul(r.pow(2, ctx), ctx) - 5 * g3.mul(r.pow(3, ctx), ctx)
    return num.mul(series_inverse(den, ctx), ctx)


@dataclass
class FaceDistribution:
    """Limiting distribution of the number of faces next to the root face."""

    model: str
    delta: Poly
    probabilities: dict[int, Fraction]

    @staticmethod
    def compute(model: str, order: int) -> "FaceDistribution":
        if model == "tetra":
            delta = delta_tetra(order)
            probs = {p: p_tetra(p) for p in range(1, order + 1)}
        elif model == "hexa":
            delta = delta_hexa(order)
            probs = {p: Fraction(delta.coeff_of({XVAR: p}))
                     for p in range(1, order + 1)}
        else:
            raise ValueError("model must be 'tetra' or 'hexa'")
        return FaceDistribution(model, delta, probs)
