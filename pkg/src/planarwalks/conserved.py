"""Three families of quantities conserved along the depth recursion.

Each family is an expression in finitely many consecutive R values whose
evaluation is independent of n whenever the master recursion holds: the
positive-walk family, its time-reversal-symmetric variant, and the
compacted variant that drops the highest R index.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import ONE, Poly
from .heaps import hard_dimer_gf
from .master import ModelSpec
from .walks import WeightEnv, positive_walk_gf, vprime, walk_gf

_ZERO = Poly.zero()


def gamma(i: int, n: int, env: WeightEnv, spec: ModelSpec,
          gamma0: Poly | None = None) -> Poly:
    """Conserved quantity built from positive walks above height n-1.

    gamma0 overrides the order-0 member (useful for comparing against
    simplified closed forms where it has been replaced by 1).
    """
    g0 = gamma0 if gamma0 is not None else _gamma0(n, env, spec)
    if i == 0:
        return g0
    ctx = env.ctx
    total = positive_walk_gf(n - 1, n - 1, 2 * i, env).mul(g0, ctx)
    for j in range(1, i + 1):
        z = positive_walk_gf(n - 1, n - 1 + 2 * j, 2 * i, env)
        if z.is_zero():
            continue
        total = total - z.mul(vprime(n + 2 * j - 1, n - 2, env, spec), ctx)
    return total


def _gamma0(n: int, env: WeightEnv, spec: ModelSpec) -> Poly:
    g0 = env.weight(n - 1) - vprime(n - 1, n - 2, env, spec)
    if n == 0:
        g0 = g0 + ONE
    return g0


def gamma_tilde(i: int, n: int, env: WeightEnv, spec: ModelSpec,
                gamma0: Poly | None = None) -> Poly:
    """Time-reversal-symmetric conserved family."""
    g0 = gamma0 if gamma0 is not None else _gamma_tilde0(n, env, spec)
    if i == 0:
        return g0
    ctx = env.ctx
    total = _symmetric_bracket(0, i, n, env).mul(g0, ctx)
    for j in range(1, i + 1):
        z = _symmetric_bracket(j, i, n, env)
        if z.is_zero():
            continue
        total = total - z.mul(vprime(n + j, n - j - 1, env, spec), ctx)
    return total


def _gamma_tilde0(n: int, env: WeightEnv, spec: ModelSpec) -> Poly:
    return env.weight(n) - vprime(n, n - 1, env, spec)


def _symmetric_bracket(j: int, i: int, n: int, env: WeightEnv) -> Poly:
    """Z_{n-j,n+j-1}(2i-1) - R_{n-j-1} R_{n+j+1} Z_{n-j-2,n+j+1}(2i-1)."""
    ctx = env.ctx
    out = walk_gf(n - j, n + j - 1, 2 * i - 1, env)
    z2 = walk_gf(n - j - 2, n + j + 1, 2 * i - 1, env)
    if not z2.is_zero():
        corr = env.weight(n - j - 1).mul(env.weight(n + j + 1), ctx).mul(z2, ctx)
        out = out - corr
    return out


def theta(i: int, n: int, env: WeightEnv, spec: ModelSpec) -> Poly:
    """Compacted family: cancels every occurrence of the top R index."""
    ctx = env.ctx
    g0t = _gamma_tilde0(n, env, spec)
    out = gamma_tilde(i, n, env, spec)
    corr = walk_gf(n - 1, n - 1, 2 * i, env)
    return out + (ONE - g0t).mul(corr, ctx)


def vprime_from_conserved(j: int, n: int, family: str,
                          values: dict[int, Poly], env: WeightEnv) -> Poly:
    """Invert a conserved family back to the grand-canonical walk sums.

    family "gamma" reproduces V'_{n+2j-1,n-2}; family "gamma_tilde"
    reproduces V'_{n+j,n-j-1}. `values` holds the family members for
    indices 0..j at this n.
    """
    ctx = env.ctx
    total = _ZERO
    for i in range(j + 1):
        if family == "gamma":
            pi = hard_dimer_gf(n - 1, n + 2 * j - 2, i, env)
        elif family == "gamma_tilde":
            pi = hard_dimer_gf(n - j, n + j - 1, i, env)
        else:
            raise ValueError("family must be 'gamma' or 'gamma_tilde'")
        term = pi.mul(values[j - i], ctx)
        total = total - term if i % 2 == 0 else total + term
    if j == 0:
        if family == "gamma":
            total = total + env.weight(n - 1)
            if n == 0:
                total = total + ONE
        else:
            total = total + env.weight(n)
    return total


@dataclass
class ConservedFamily:
    """Grid of family values over (i, n), with a constancy report."""

    kind: str
    values: dict[tuple[int, int], Poly]

    @staticmethod
    def evaluate(kind: str, i_max: int, n_range, env: WeightEnv,
                 spec: ModelSpec) -> "ConservedFamily":
        fn = {"gamma": gamma, "gamma_tilde": gamma_tilde, "theta": theta}[kind]
        vals = {(i, n): fn(i, n, env, spec)
                for i in range(i_max + 1) for n in n_range}
        return ConservedFamily(kind, vals)

    def is_conserved(self, i: int) -> bool:
        series = [v for (ii, _), v in sorted(self.values.items()) if ii == i]
        return all(v == series[0] for v in series)

    def common_value(self, i: int) -> Poly:
        return next(v for (ii, _), v in sorted(self.values.items()) if ii == i)
