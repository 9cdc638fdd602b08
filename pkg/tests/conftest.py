import math

import numpy as np
import pytest

from floquet_dqpt.model import ModelParams

EXAMPLE1 = ModelParams(omega_drive=math.pi, delta1=math.pi,
                       delta2=math.pi / 2, omega_amp=1.0)
EXAMPLE2 = ModelParams(omega_drive=math.pi, delta1=math.pi / 5,
                       delta2=math.pi / 2, omega_amp=1.0)
EXAMPLE3 = ModelParams(omega_drive=math.pi, delta1=-math.pi,
                       delta2=math.pi / 2, omega_amp=1.0)


@pytest.fixture
def ex1():
    return EXAMPLE1


@pytest.fixture
def ex2():
    return EXAMPLE2


@pytest.fixture
def ex3():
    return EXAMPLE3


def random_params(rng: np.random.Generator, positive_amp=False) -> ModelParams:
    """One random parameter draw on the scales used throughout the suite."""
    amp_lo = 0.1 if positive_amp else -5.0
    return ModelParams(omega_drive=rng.uniform(0.5, 6.0),
                       delta1=rng.uniform(-5.0, 5.0),
                       delta2=rng.uniform(-5.0, 5.0),
                       omega_amp=rng.uniform(amp_lo, 5.0))
