"""Exact sparse multivariate polynomial and truncated-series arithmetic.

Polynomials are dictionaries mapping monomials to rational coefficients.
A monomial is a sorted tuple of (variable, exponent) pairs; coefficients
are Python ints whenever the value is integral and Fraction otherwise,
which keeps the common all-integer computations fast while staying exact.

Variables are plain strings with a fixed canonical order:

    g1 < g2 < ... < x < Rbar < R_i (by index) < anything else

Series truncation is controlled by a SeriesContext naming the "small"
(graded) variables and a maximal total degree in them; variables outside
the grading set are never truncated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

Coeff = int | Fraction
Monomial = tuple[tuple[str, int], ...]


def gvar(k: int) -> str:
    """Name of the coupling variable attached to 2k-valent vertices."""
    return f"g{k}"


def rvar(i: int) -> str:
    """Name of the indeterminate standing for the weight R_i."""
    return f"R_{i}"


XVAR = "x"
RBAR = "Rbar"


def var_key(name: str):
    """Canonical sort key for variable names (fixes the monomial order)."""
    if name[0] == "g" and name[1:].lstrip("-").isdigit():
        return (0, int(name[1:]), "")
    if name == XVAR:
        return (1, 0, "")
    if name == RBAR:
        return (2, 0, "")
    if name.startswith("R_"):
        return (3, int(name[2:]), "")
    return (4, 0, name)


def _norm_coeff(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _mono_key(mono: Monomial):
    return (sum(e for _, e in mono), tuple((var_key(v), e) for v, e in mono))


def make_monomial(exps: Mapping[str, int]) -> Monomial:
    """Build a monomial from a variable -> exponent mapping."""
    items = [(v, e) for v, e in exps.items() if e != 0]
    for v, e in items:
        if e < 0:
            raise ValueError(f"negative exponent for {v}")
    return tuple(sorted(items, key=lambda p: var_key(p[0])))


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda p: var_key(p[0])))


@dataclass(frozen=True)
class SeriesContext:
    """Truncation rule: drop monomials of total grading-degree > order."""

    grading: frozenset[str]
    order: int

    def __init__(self, grading: Iterable[str], order: int):
        object.__setattr__(self, "grading", frozenset(grading))
        object.__setattr__(self, "order", order)
        if order < 0:
            raise ValueError("truncation order must be non-negative")

    def degree(self, mono: Monomial) -> int:
        return sum(e for v, e in mono if v in self.grading)


class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Coeff] | None = None):
        clean: dict[Monomial, Coeff] = {}
        if terms:
            for m, c in terms.items():
                c = _norm_coeff(c)
                if c != 0:
                    clean[m] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return _ZERO

    @staticmethod
    def const(c: Coeff) -> "Poly":
        c = _norm_coeff(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
        if c == 0:
            return _ZERO
        return Poly({(): c})

    @staticmethod
    def var(name: str, exp: int = 1) -> "Poly":
        if exp == 0:
            return Poly.const(1)
        return Poly({((name, exp),): 1})

    # -- predicates / access -------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mono: Monomial) -> Fraction:
        return Fraction(self.terms.get(mono, 0))

    def coeff_of(self, exps: Mapping[str, int]) -> Fraction:
        return self.coeff(make_monomial(exps))

    def constant_term(self) -> Fraction:
        return Fraction(self.terms.get((), 0))

    def variables(self) -> set[str]:
        out: set[str] = set()
        for m in self.terms:
            out.update(v for v, _ in m)
        return out

    # -- ring operations -----------------------------------------------

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = _norm_coeff(s)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return _raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) + (-self)

    def __mul__(self, other) -> "Poly":
        return self.mul(_as_poly(other), None)

    __rmul__ = __mul__

    def mul(self, other: "Poly", ctx: SeriesContext | None) -> "Poly":
        """Product, discarding cross terms beyond ctx.order when ctx given."""
        a, b = self.terms, other.terms
        if not a or not b:
            return _ZERO
        if len(a) > len(b):
            a, b = b, a
        out: dict[Monomial, Coeff] = {}
        if ctx is None:
            for m1, c1 in a.items():
                for m2, c2 in b.items():
                    m = _mono_mul(m1, m2)
                    s = out.get(m, 0) + c1 * c2
                    if s == 0:
                        out.pop(m, None)
                    else:
                        out[m] = s
        else:
            order = ctx.order
            deg = ctx.degree
            bt = [(m2, c2, deg(m2)) for m2, c2 in b.items()]
            bt = [t for t in bt if t[2] <= order]
            for m1, c1 in a.items():
                d1 = deg(m1)
                if d1 > order:
                    continue
                for m2, c2, d2 in bt:
                    if d1 + d2 > order:
                        continue
                    m = _mono_mul(m1, m2)
                    s = out.get(m, 0) + c1 * c2
                    if s == 0:
                        out.pop(m, None)
                    else:
                        out[m] = s
        return _raw({m: _norm_coeff(c) for m, c in out.items() if c != 0})

    def __pow__(self, n: int) -> "Poly":
        return self.pow(n, None)

    def pow(self, n: int, ctx: SeriesContext | None) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result.mul(base, ctx)
            n >>= 1
            if n:
                base = base.mul(base, ctx)
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- series operations -----------------------------------------------

    def truncate(self, ctx: SeriesContext) -> "Poly":
        deg = ctx.degree
        return _raw({m: c for m, c in self.terms.items() if deg(m) <= ctx.order})

    def substitute(self, bindings: Mapping[str, "Poly"],
                   ctx: SeriesContext | None = None) -> "Poly":
        """Simultaneous substitution; unbound variables map to themselves."""
        pow_cache: dict[tuple[str, int], Poly] = {}
        out = _ZERO
        for m, c in self.terms.items():
            term = Poly.const(c)
            for v, e in m:
                if v in bindings:
                    key = (v, e)
                    p = pow_cache.get(key)
                    if p is None:
                        p = bindings[v].pow(e, ctx)
                        pow_cache[key] = p
                    term = term.mul(p, ctx)
                else:
                    term = term.mul(Poly.var(v, e), ctx)
            out = out + term
        return out.truncate(ctx) if ctx is not None else out

    def derivative(self, name: str) -> "Poly":
        out: dict[Monomial, Coeff] = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(name, 0)
            if e == 0:
                continue
            if e == 1:
                del d[name]
            else:
                d[name] = e - 1
            mono = tuple(sorted(d.items(), key=lambda p: var_key(p[0])))
            out[mono] = out.get(mono, 0) + e * c
        return _raw({m: _norm_coeff(c) for m, c in out.items() if c != 0})

    # -- presentation ------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return [(m, Fraction(self.terms[m]))
                for m in sorted(self.terms, key=_mono_key)]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for v, e in sorted(m, key=lambda p: var_key(p[0])):
                factors.append(v if e == 1 else f"{v}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def to_json(self) -> list[dict]:
        return [
            {"vars": {v: e for v, e in m}, "num": str(c.numerator),
             "den": str(c.denominator)}
            for m, c in self.sorted_terms()
        ]

    @staticmethod
    def from_json(data: list[dict]) -> "Poly":
        terms: dict[Monomial, Coeff] = {}
        for entry in data:
            mono = make_monomial(entry["vars"])
            terms[mono] = Fraction(int(entry["num"]), int(entry["den"]))
        return Poly(terms)


def _raw(terms: dict[Monomial, Coeff]) -> Poly:
    p = Poly.__new__(Poly)
    object.__setattr__(p, "terms", terms)
    return p


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    raise TypeError(f"cannot coerce {type(x)!r} to Poly")


_ZERO = _raw({})

ONE = Poly.const(1)


def poly_op(a: Poly, b: Poly, kind: str) -> Poly:
    """Dispatch add/sub/mul by name (convenience for serialization layers)."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown operation {kind!r}")


class NonInvertibleError(ValueError):
    """Raised when a series has no multiplicative inverse at grading order 0."""


class BadSeedError(ValueError):
    """Raised when a Newton seed does not solve the equation at order 0."""


def series_inverse(p: Poly, ctx: SeriesContext) -> Poly:
    """Inverse of p as a series in ctx.grading; needs a nonzero constant head.

    The grading-degree-0 part of p must be a plain constant: otherwise the
    inverse is not a polynomial in the remaining variables.
    """
    head = _ZERO
    for m, c in p.terms.items():
        if ctx.degree(m) == 0:
            head = head + _raw({m: c})
    if head.terms and set(head.terms) != {()}:
        raise NonInvertibleError("grading-order-0 part is not a constant")
    c0 = head.constant_term()
    if c0 == 0:
        raise NonInvertibleError("zero constant term, series not invertible")
    # p = c0*(1 - q) with q of positive grading degree
    q = Poly.const(1) - p.mul(Poly.const(Fraction(1, 1) / c0), ctx)
    out = Poly.const(1)
    qk = Poly.const(1)
    for _ in range(ctx.order):
        qk = qk.mul(q, ctx)
        if qk.is_zero():
            break
        out = out + qk
    return out.mul(Poly.const(Fraction(1, 1) / c0), ctx)


def newton_solve(equation: Poly, unknown: str, u0: Poly,
                 ctx: SeriesContext) -> Poly:
    """Series solution u of equation(u) = 0 through the branch at u0.

    The residual must vanish at grading order 0 for the seed, and the
    derivative of the equation with respect to the unknown must be
    invertible there.
    """
    zero_ctx = SeriesContext(ctx.grading, 0)
    if not equation.substitute({unknown: u0}, zero_ctx).is_zero():
        raise BadSeedError("seed does not solve the equation at order 0")
    deriv = equation.derivative(unknown)
    u = u0.truncate(ctx)
    for _ in range(ctx.order + 2):
        residual = equation.substitute({unknown: u}, ctx)
        if residual.is_zero():
            return u
        jac = deriv.substitute({unknown: u}, ctx)
        u = (u - residual.mul(series_inverse(jac, ctx), ctx)).truncate(ctx)
    residual = equation.substitute({unknown: u}, ctx)
    if residual.is_zero():
        return u
    raise ValueError("Newton iteration failed to converge")
