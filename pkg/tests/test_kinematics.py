import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qboundstate.kinematics import (
    KinematicsError,
    ModelParams,
    OffShellError,
    PoleError,
    build_kinematics,
    check_shortening,
    consistency_residuals,
    mass_shell_residual,
    solve_mass_shell,
    with_gamma,
    xi_of,
)

from conftest import model_params, particle, xplus_values

Ms = st.integers(1, 4)


@given(model_params(), xplus_values, Ms)
def test_mass_shell_roots(params, xp, M):
    roots = solve_mass_shell(xp, params, M)
    assert abs(roots[0]) <= abs(roots[1])
    assert abs(roots[0] * roots[1] - 1) < 1e-10
    for xm in roots:
        assert abs(mass_shell_residual(xp, xm, params, M)) < 1e-9 * max(1, abs(xp) + abs(xm))


@given(st.data(), Ms)
def test_consistency_relations_hold_on_shell(data, M):
    kin = data.draw(particle(M))
    res = consistency_residuals(kin)
    assert res, "no relations checked"
    assert max(res.values()) < 1e-9, res


@given(st.data(), Ms)
def test_shortening_both_label_sets(data, M):
    kin = data.draw(particle(M))
    assert check_shortening(kin) < 1e-9
    assert check_shortening(kin, affine=True) < 1e-9


@given(st.data())
def test_affine_partners_are_inverses(data):
    kin = data.draw(particle(2))
    assert abs(kin.U * kin.U_tilde - 1) < 1e-12
    assert abs(kin.V * kin.V_tilde - 1) < 1e-12


@given(st.data())
def test_evaluation_parameter_both_forms(data):
    kin = data.draw(particle(3))
    xi, _ = xi_of(kin.params)
    from qboundstate.kinematics import zeta_of

    q = kin.q
    assert abs(q**-3 * zeta_of(kin.xplus, xi) - kin.z) < 1e-9 * abs(kin.z)
    assert abs(q**3 * zeta_of(kin.xminus, xi) - kin.z) < 1e-9 * abs(kin.z)


def test_off_shell_rejected(params):
    xp = 1.7 + 0.4j
    xm = solve_mass_shell(xp, params, 2)[0]
    with pytest.raises(OffShellError):
        build_kinematics(xp, xm * 1.01, params, 2)


def test_label_pole_rejected(params):
    xi, _ = xi_of(params)
    with pytest.raises((PoleError, KinematicsError)):
        xm = solve_mass_shell(-xi, params, 1)[0]
        build_kinematics(-xi, xm, params, 1)


def test_model_params_validation():
    with pytest.raises(KinematicsError):
        ModelParams(q=0.9, g=-1.0)
    with pytest.raises(KinematicsError):
        ModelParams(q=0, g=1.0)


def test_gamma_only_rescales_labels(params):
    xp = 1.9 - 0.6j
    kin = build_kinematics(xp, solve_mass_shell(xp, params, 2)[0], params, 2, gamma=1.0)
    k2 = with_gamma(kin, 1.4 + 0.2j)
    assert k2.z == kin.z and k2.U == kin.U
    assert abs(k2.labels.a / kin.labels.a - (1.4 + 0.2j)) < 1e-12
    assert max(consistency_residuals(k2).values()) < 1e-9


def test_as_dict_is_json_ready(params):
    import json

    xp = 1.9 - 0.6j
    kin = build_kinematics(xp, solve_mass_shell(xp, params, 1)[1], params, 1)
    d = json.loads(json.dumps(kin.as_dict()))
    assert d["M"] == 1 and np.allclose(d["xplus"], [xp.real, xp.imag])
