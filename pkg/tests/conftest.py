import pytest
from hypothesis import HealthCheck, settings

import upcube

settings.register_profile(
    "ci",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def q21():
    """The lifted Q_21 triple and its report, built once per session."""
    return upcube.build_q21()
