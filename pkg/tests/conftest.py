import pytest
from hypothesis import HealthCheck, settings

import support
from dominotwist import geometry as geo

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def tilings_222():
    return support.all_tilings(geo.make_box(2, 2, 2))


@pytest.fixture(scope="session")
def tilings_332():
    return support.all_tilings(geo.make_box(3, 3, 2))


@pytest.fixture(scope="session")
def tilings_224():
    return support.all_tilings(geo.make_box(2, 2, 4))


@pytest.fixture(scope="session")
def tilings_234():
    return support.all_tilings(geo.make_box(2, 3, 4))
