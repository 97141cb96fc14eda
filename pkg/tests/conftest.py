import cmath

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from qboundstate.kinematics import KinematicsError, ModelParams, kinematics_from_xplus, random_kinematics
from qboundstate.verify import is_generic_pair

settings.register_profile(
    "default", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# generic deformation parameters: away from |q| = 1 roots of unity and from q = 1
q_values = st.builds(
    lambda r, t: r * cmath.exp(1j * t),
    st.floats(0.6, 0.95),
    st.floats(-0.7, 0.7),
)
couplings = st.floats(0.4, 2.5)
xplus_values = st.builds(lambda r, t: r * cmath.exp(1j * t), st.floats(1.3, 3.0), st.floats(0, 2 * np.pi))
gammas = st.builds(complex, st.floats(0.5, 1.8), st.floats(-0.6, 0.6))


@st.composite
def model_params(draw):
    return ModelParams(q=draw(q_values), g=draw(couplings))


@st.composite
def particle(draw, M, params=None):
    params = params if params is not None else draw(model_params())
    xp = draw(xplus_values)
    try:
        kin = kinematics_from_xplus(xp, params, M, draw(gammas), root=draw(st.integers(0, 1)))
    except KinematicsError:
        assume(False)
    U2, V2 = kin.U**2, kin.V**2
    assume(abs(U2 * V2 - 1) > 1e-3 and abs(U2 - V2) > 1e-3)
    return kin


@st.composite
def particle_pair(draw, M1, M2):
    params = draw(model_params())
    kin1, kin2 = draw(particle(M1, params)), draw(particle(M2, params))
    assume(is_generic_pair(kin1, kin2))
    return kin1, kin2


@pytest.fixture
def params():
    return ModelParams(q=0.82 + 0.31j, g=1.3)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def draw_particles(rng, params, *Ms):
    return [random_kinematics(rng, params, M) for M in Ms]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(LINES):
            terminalreporter.write_line(LINES[n])
