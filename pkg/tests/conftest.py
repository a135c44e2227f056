import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile("ci")


from curvlab.spaces import make_standard


@pytest.fixture(scope="session")
def complex6():
    return make_standard(6, "complex")


@pytest.fixture(scope="session")
def para6():
    return make_standard(6, "para")


@pytest.fixture(scope="session")
def complex4():
    return make_standard(4, "complex")


@pytest.fixture(scope="session")
def para4():
    return make_standard(4, "para")
