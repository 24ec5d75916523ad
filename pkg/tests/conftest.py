import numpy as np
import pytest


def random_state(n, rng):
    from qsim.qstate import StateVector

    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n, amps / np.linalg.norm(amps))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
