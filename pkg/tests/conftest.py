from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from spectralops import reference
from spectralops.bamodule import default_basis
from spectralops.session import worked_example_session
from spectralops.solver import construct_operator

settings.register_profile(
    "fixed",
    derandomize=True,
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fixed")


@pytest.fixture(scope="session")
def session():
    return worked_example_session()


@pytest.fixture(scope="session")
def basis(session):
    return default_basis(session)


@pytest.fixture(scope="session")
def lambdas(session):
    return {name: reference.function(name, session) for name in reference.FUNCTIONS}


@pytest.fixture(scope="session")
def operators(session, basis, lambdas):
    return {name: construct_operator(lam, basis, session) for name, lam in lambdas.items()}
