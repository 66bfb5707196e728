import numpy as np
import pytest

from solenoid_oam.sources import SolenoidSpec, landau2_gauge, symmetric_gauge


@pytest.fixture
def spec():
    return SolenoidSpec(R=1.0, B0=1.0)


@pytest.fixture
def sym(spec):
    return symmetric_gauge(spec)


@pytest.fixture
def lan(spec):
    return landau2_gauge(spec)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
