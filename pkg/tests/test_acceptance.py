"""End-to-end acceptance gate: ten timed criteria, one line printed each.

Every check is an exact identity between rational series; the time bounds
catch performance regressions in the solvers and enumerators.
"""

import time
from fractions import Fraction

from planarwalks.algebra import ONE, Poly
from planarwalks.blossom import (
    brute_force_rn,
    closure_excess,
    contour_depth,
    enumerate_blossom,
    tree_weight,
)
from planarwalks.conserved import (
    ConservedFamily,
    gamma,
    gamma_tilde,
    theta,
    vprime_from_conserved,
)
from planarwalks.correlators import (
    cut_binomial_check,
    g2i_boundary,
    g2i_closed,
    g2i_reduce,
    loop_equation_residual,
    one_cut_residual,
    rerooting_identity_residual,
)
from planarwalks.heaps import (
    enumerate_pyramids,
    hard_dimer_gf,
    identity_matrix,
    inversion_matrix,
    mat_mul,
    pyramid_to_walk,
    walk_to_pyramid,
)
from planarwalks.master import (
    ModelSpec,
    rbar_equation_residual,
    residual_master,
    series_context,
    solve_master,
    solve_rbar,
)
from planarwalks.stats import (
    delta_hexa,
    delta_tetra,
    face_series,
    hexa_delta_residual,
    hexa_equation_residual,
    p_hexa,
    p_tetra,
    r1_closed,
    tetra_delta_residual,
    tetra_equation_residual,
)
from planarwalks.walks import (
    all_walks,
    positive_walk_gf,
    symbolic_env,
    vprime,
    walk_gf,
    walk_weight,
)

ZERO = Poly.zero()


def R(i: int) -> Poly:
    return Poly.var(f"R_{i}")


def _timed(number: int, name: str, bound: float, body) -> None:
    start = time.monotonic()
    try:
        body()
    except BaseException:
        elapsed = time.monotonic() - start
        print(f"criterion {number:2d} FAIL ({elapsed:.1f}s): {name}")
        raise
    elapsed = time.monotonic() - start
    print(f"criterion {number:2d} PASS ({elapsed:.1f}s): {name}")
    assert elapsed < bound, f"criterion {number} exceeded {bound}s"


def _solved(m: int, order: int = 6):
    spec = ModelSpec(m=m)
    ctx = series_context(spec, order)
    return spec, ctx, solve_master(spec, ctx)


def test_criterion_01_inversion_matrices():
    def body():
        env = symbolic_env()
        a = 0
        d = inversion_matrix("D", a, 6, env)
        z = inversion_matrix("Z", a, 6, env)
        assert mat_mul(d, z, env.ctx) == identity_matrix(6)
        d3 = inversion_matrix("D", a, 3, env)
        z3 = inversion_matrix("Z", a, 3, env)
        s123 = R(1) + R(2) + R(3)
        assert d3 == [[ONE, ZERO, ZERO],
                      [-R(1), ONE, ZERO],
                      [R(1) * R(3), -s123, ONE]]
        assert z3 == [[ONE, ZERO, ZERO],
                      [R(1), ONE, ZERO],
                      [R(1) * (R(1) + R(2)), s123, ONE]]

    _timed(1, "dimer/walk matrices are mutually inverse", 5.0, body)


def test_criterion_02_inversion_identities():
    def body():
        env = symbolic_env()
        a, n = 0, 6
        # entrywise inversion sum over dimer configurations and flat walks
        for k in range(5):
            for j in range(5):
                total = ZERO
                for ell in range(k + 1):
                    term = (hard_dimer_gf(a, a + 2 * k - 1, k - ell, env)
                            * positive_walk_gf(a, a + 2 * j, 2 * ell, env))
                    total = total + term if (k - ell) % 2 == 0 else total - term
                assert total == (ONE if k == j else ZERO), (k, j)

        def walk_ext(p, q, steps):
            if steps == -1:
                return ONE if q == p - 1 else ZERO
            return walk_gf(p, q, steps, env)

        for j in range(1, 5):
            for k in range(5):
                t1 = t2 = ZERO
                for i in range(j + 1):
                    pi = hard_dimer_gf(n - j, n + j - 1, j - i, env)
                    prefix = ONE
                    for ell in range(1, k + 1):
                        prefix = prefix * R(n + k + 1 - 2 * ell)
                    sign = 1 if (j - i) % 2 == 0 else -1
                    t1 = t1 + sign * pi * prefix * walk_ext(
                        n - k, n + k - 1, 2 * i - 1)
                    bracket = (walk_ext(n - k, n + k - 1, 2 * i - 1)
                               - R(n - k - 1) * R(n + k + 1)
                               * walk_ext(n - k - 2, n + k + 1, 2 * i - 1))
                    t2 = t2 + sign * pi * bracket
                want1 = ZERO
                if j >= k and (j - k) % 2 == 0:
                    want1 = hard_dimer_gf(n - j, n + j - 1, j, env)
                assert t1 == want1, (j, k)
                assert t2 == (ONE if j == k else ZERO), (j, k)
            # wall-anchored variant
            t3 = ZERO
            for i in range(j + 1):
                pi = hard_dimer_gf(n - j, n + j - 1, j - i, env)
                term = pi * R(n - 1) * walk_gf(n - 2, n - 1, 2 * i - 1, env)
                t3 = t3 + term if (j - i) % 2 == 0 else t3 - term
            want3 = ZERO
            if j % 2 == 0:
                want3 = want3 - hard_dimer_gf(n - j, n + j - 1, j, env)
            prod = ONE
            for ell in range(1, j + 1):
                prod = prod * R(n - ell)
            assert t3 == want3 + prod, j

        # inversion of the conserved-family definitions at cutoff 3
        spec = ModelSpec(m=3)
        gvals = {i: gamma(i, n, env, spec) for i in range(5)}
        for j in range(5):
            got = vprime_from_conserved(j, n, "gamma", gvals, env)
            assert got == vprime(n + 2 * j - 1, n - 2, env, spec), j
        tvals = {i: gamma_tilde(i, n, env, spec) for i in range(5)}
        for j in range(5):
            got = vprime_from_conserved(j, n, "gamma_tilde", tvals, env)
            assert got == vprime(n + j, n - j - 1, env, spec), j

    _timed(2, "alternating dimer-walk inversion identities", 30.0, body)


def test_criterion_03_walk_pyramid_bijection():
    def body():
        env = symbolic_env()
        for a in (0, 2):
            for gap in (1, 3):
                b = a + gap
                for steps in range(gap, 10, 2):
                    walks = all_walks(a, b, steps)
                    for w in walks:
                        h = walk_to_pyramid(w)
                        assert pyramid_to_walk(h) == w
                        assert h.weight(env) == walk_weight(
                            w.start, w.steps, env)
        # exhaustive pyramid counts reproduce the walk sums
        for a in (0, 1):
            for gap in (1, 3):
                b = a + gap
                for k in range((gap + 1) // 2, 7):
                    full = enumerate_pyramids(a, b, k)
                    total = ZERO
                    for h in full:
                        assert pyramid_to_walk(walk_to_pyramid(
                            pyramid_to_walk(h))) == pyramid_to_walk(h)
                        total = total + h.weight(env)
                    assert total == walk_gf(a, b, 2 * k - 1, env), (a, b, k)
                    half = enumerate_pyramids(a, b, k, half=True)
                    total_half = ZERO
                    for h in half:
                        total_half = total_half + h.weight(env)
                    assert total_half == positive_walk_gf(
                        a, b, 2 * k - 1, env), (a, b, k)

    _timed(3, "walk/pyramid roundtrip and count equalities", 60.0, body)


def test_criterion_04_master_solution():
    def body():
        for m in (2, 3):
            spec, ctx, env = _solved(m)
            top = env.horizon
            for n, (r1, r2) in residual_master(env, spec, range(top + 1), ctx):
                assert r1 == ZERO and r2 == ZERO, (m, n)
            rbar = solve_rbar(spec, ctx)
            assert rbar_equation_residual(rbar, spec, ctx) == ZERO, m
            stable_from = ctx.order * (2 * m - 2)
            for n in range(top + 1):
                series = env.weight(n)
                for coeff in series.terms.values():
                    assert coeff == int(coeff) and coeff >= 0, (m, n)
                if n >= stable_from:
                    assert series == rbar, (m, n)

    _timed(4, "depth recursion solves with non-negative integers", 60.0,
           body)


def test_criterion_05_conservation():
    def body():
        for m in (2, 3):
            spec, ctx, env = _solved(m)
            rbar = solve_rbar(spec, ctx)
            gvals = {i: g2i_boundary(i, env) for i in range(1, 5)}
            for kind in ("gamma", "gamma_tilde", "theta"):
                fam = ConservedFamily.evaluate(kind, 4, range(7), env, spec)
                for i in range(1, 5):
                    assert fam.is_conserved(i), (m, kind, i)
                    common = fam.common_value(i)
                    # route one: walks absorbed at the wall
                    assert common == gvals[i], (m, kind, i)
                    # route two: closed form in the uniform weight
                    closed = g2i_closed(i, spec).substitute(
                        {"Rbar": rbar}, ctx)
                    assert common == closed, (m, kind, i)
                    # route three: linear reduction beyond the cutoff
                    if i >= spec.m:
                        reduced = g2i_reduce(i, spec, gvals, rbar, ctx)
                        assert common == reduced, (m, kind, i)

    _timed(5, "three conserved families share the correlator values",
           120.0, body)


def test_criterion_06_correlator_identities():
    def body():
        spec, ctx, env = _solved(3)
        rbar = solve_rbar(spec, ctx)
        gvals = {i: g2i_boundary(i, env) for i in range(1, 7)}
        for i in range(1, 5):
            for n in range(1, 6):
                res = rerooting_identity_residual(i, n, env, spec)
                assert res == ZERO, (i, n)
        for i in range(1, 4):
            assert loop_equation_residual(i, spec, env, gvals) == ZERO, i
        for i in range(1, 5):
            assert one_cut_residual(i, spec, rbar, gvals, ctx) == ZERO, i
        for i in range(11):
            for j in range(i + 1):
                assert cut_binomial_check(i, j), (i, j)

    _timed(6, "re-rooting, loop, one-cut, and binomial identities",
           120.0, body)


def test_criterion_07_tree_oracle():
    def body():
        for m in (2, 3):
            spec = ModelSpec(m=m)
            ctx = series_context(spec, 3)
            env = solve_master(spec, ctx)
            for n in range(4):
                oracle = brute_force_rn(n, m, ctx.order)
                assert oracle.truncate(ctx) == env.weight(n), (m, n)
        for m, max_inner in ((2, 3), (3, 2)):
            for t in enumerate_blossom(m, max_inner):
                assert contour_depth(t) == closure_excess(t)
        # re-rooting realizes the depth-one identity by weighted counts
        spec = ModelSpec(m=2)
        ctx = series_context(spec, 3)
        env = solve_master(spec, ctx)
        trees = list(enumerate_blossom(2, ctx.order))
        for n in range(1, 4):
            counted = ZERO
            for t in trees:
                if 1 <= contour_depth(t) <= n:
                    counted = counted + tree_weight(t)
            assert counted.truncate(ctx) == vprime(n + 1, n - 2, env, spec), n

    _timed(7, "tree enumeration oracle agrees with the solver", 120.0, body)


def test_criterion_08_tetravalent_statistics():
    def body():
        series = face_series("tetra", 3)
        printed = {
            (0, 1): 1,
            (1, 1): 1, (1, 2): 1,
            (2, 1): 3, (2, 2): 4, (2, 3): 2,
            (3, 1): 14, (3, 2): 20, (3, 3): 15, (3, 4): 5,
        }
        for (order, p), value in printed.items():
            assert series.coeff_of({"g2": order, "x": p}) == value
        total = sum(c for (order, _), c in printed.items() if order == 3)
        assert sum(series.coeff_of({"g2": 3, "x": p})
                   for p in range(1, 5)) == total
        assert tetra_equation_residual(series, 3) == ZERO
        delta = delta_tetra(30)
        assert tetra_delta_residual(delta, 30) == ZERO
        for p in range(1, 16):
            assert delta.coeff_of({"x": p}) == p_tetra(p), p
        # closed form at unit argument: the square-root factor is exactly 8,
        # making the distribution sum to one
        s = Fraction(8)
        assert s * s * (1 - Fraction(3, 4)) ** 3 == 1
        assert (1 - (8 - 9) * s / 8) / 2 == 1

    _timed(8, "tetravalent adjacent-face statistics", 30.0, body)


def test_criterion_09_hexavalent_statistics():
    def body():
        series = face_series("hexa", 2)
        printed = {
            (0, 1): 1,
            (1, 1): 2, (1, 2): 2, (1, 3): 1,
            (2, 1): 28, (2, 2): 32, (2, 3): 25, (2, 4): 12, (2, 5): 3,
        }
        for (order, p), value in printed.items():
            assert series.coeff_of({"g3": order, "x": p}) == value
        assert hexa_equation_residual(series, 2) == ZERO
        delta = delta_hexa(6)
        assert hexa_delta_residual(delta, 6) == ZERO
        assert p_hexa(1, 6) == Fraction(125, 864)
        assert p_hexa(2, 6) == Fraction(1625, 10368)
        assert p_hexa(3, 6) == Fraction(865625, 5971968)

    _timed(9, "hexavalent adjacent-face statistics", 30.0, body)


def test_criterion_10_closed_forms():
    def body():
        spec, ctx, env = _solved(3)
        rbar = solve_rbar(spec, ctx)
        g2, g3 = Poly.var("g2"), Poly.var("g3")
        r0 = (rbar - g2.mul(rbar.pow(3, ctx), ctx)
              - 5 * g3.mul(rbar.pow(4, ctx), ctx)).truncate(ctx)
        assert r0 == env.weight(0)
        assert r1_closed(spec, ctx) == env.weight(1)

    _timed(10, "closed forms for the first two weights", 30.0, body)
