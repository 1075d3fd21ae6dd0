import math

import numpy as np
import pytest
from hypothesis import strategies as st

from wmsncover.geometry import ModelParams, SensorPose
from wmsncover.grid import Region


@pytest.fixture
def params():
    # half-angle reading of the tabulated 45/60 degree FOV, K = 50 degrees
    return ModelParams.from_degrees(22.5, 30.0, 50.0)


@pytest.fixture
def region():
    return Region(500.0, 500.0, 1.0)


@st.composite
def model_params(draw):
    alpha = draw(st.floats(math.radians(5), math.radians(80)))
    beta = draw(st.floats(math.radians(5), math.radians(40)))
    k_max = draw(st.floats(beta, math.pi / 2 - beta - math.radians(3)))
    return ModelParams(alpha, beta, k_max)


@st.composite
def params_and_pose(draw):
    p = draw(model_params())
    pose = SensorPose(
        x=draw(st.floats(-100, 100)),
        y=draw(st.floats(-100, 100)),
        z=draw(st.floats(0.5, 20)),
        theta=draw(st.floats(0, 2 * math.pi, exclude_max=True)),
        gamma=draw(st.floats(p.beta, p.k_max)),
    )
    return p, pose


def random_valid(rng: np.random.Generator, params: ModelParams | None = None):
    """One random (params, pose) pair satisfying every model precondition."""
    if params is None:
        beta = rng.uniform(math.radians(5), math.radians(40))
        k_max = rng.uniform(beta, math.pi / 2 - beta - math.radians(3))
        params = ModelParams(rng.uniform(math.radians(5), math.radians(80)), beta, k_max)
    pose = SensorPose(
        x=rng.uniform(0, 500),
        y=rng.uniform(0, 500),
        z=rng.uniform(1, 20),
        theta=rng.uniform(0, 2 * math.pi),
        gamma=rng.uniform(params.beta, params.k_max),
    )
    return params, pose


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[key])
