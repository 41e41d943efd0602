import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from verdier import linalg as la
from verdier.algebra import a2_path, dual_numbers, semisimple, string_algebra
from verdier.generators import named_fixtures

settings.register_profile(
    "default", deadline=None, max_examples=30,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.register_profile("ci", parent=settings.get_profile("default"), max_examples=80)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(autouse=True)
def _reset_prime():
    la.set_prime(101)
    yield
    la.set_prime(101)


@pytest.fixture(scope="session")
def D():
    return dual_numbers().validate()


@pytest.fixture(scope="session")
def S():
    return string_algebra().validate()


@pytest.fixture(scope="session")
def Q():
    return a2_path().validate()


@pytest.fixture(scope="session")
def E2():
    return semisimple(2).validate()


@pytest.fixture(scope="session")
def fx(D):
    return named_fixtures(D)


@pytest.fixture
def rng():
    return np.random.default_rng(20240)
