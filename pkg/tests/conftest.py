import json

import numpy as np
import pytest

from assimdyn import ModelParams

# Desk-scale parameter set used throughout: the natives-only subset is
# the closed-economy benchmark, the full set is the open economy.
EXAMPLE = {
    "I_HS": 1.0,
    "I_LS": 0.6,
    "I_A": 0.53,
    "I_NA": 0.3,
    "I_E": 0.35,
    "c_HS": 0.7,
    "c_A": 0.2,
    "beta": 0.5,
    "m": 0.1,
    "N": 1.0,
    "A": 0.0,
}

# Frozen golden values (exact rationals, derived independently by hand)
Q_STAR = 0.4
Q_STAR2 = 22.0 / 57.0
A_STAR = 263.0 / 2200.0
A_STAR2 = -86.0 / 1425.0
CA_BAR = 177.0 / 2200.0
CLAIM2_RHS = 9523.0 / 41800.0  # = 177/2200 + 14/95
SADDLE = (0.6517306346348083, 0.390444202666342)


@pytest.fixture
def example_params() -> ModelParams:
    return ModelParams(**EXAMPLE)


@pytest.fixture
def example_config(tmp_path):
    path = tmp_path / "params.json"
    path.write_text(json.dumps(EXAMPLE))
    return path


@pytest.fixture
def rng():
    return np.random.default_rng(0)
