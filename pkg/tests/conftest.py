import pytest

from stepharm import PotentialConfig


@pytest.fixture
def cfg15():
    return PotentialConfig.from_beta0(1.5)


@pytest.fixture
def cfg45():
    return PotentialConfig.from_beta0(4.5)


def make_config(beta0: float) -> PotentialConfig:
    return PotentialConfig.from_beta0(beta0)
