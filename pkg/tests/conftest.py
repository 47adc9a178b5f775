"""Shared fixtures: solved environments are expensive, build them once."""

import pytest

from planarwalks.master import ModelSpec, series_context, solve_master, solve_rbar


@pytest.fixture(scope="session")
def model_m2():
    return ModelSpec(m=2)


@pytest.fixture(scope="session")
def model_m3():
    return ModelSpec(m=3)


@pytest.fixture(scope="session")
def solved_m2(model_m2):
    ctx = series_context(model_m2, 6)
    return model_m2, ctx, solve_master(model_m2, ctx)


@pytest.fixture(scope="session")
def solved_m3(model_m3):
    ctx = series_context(model_m3, 6)
    return model_m3, ctx, solve_master(model_m3, ctx)


@pytest.fixture(scope="session")
def rbar_m3(model_m3, solved_m3):
    _, ctx, _ = solved_m3
    return solve_rbar(model_m3, ctx)
