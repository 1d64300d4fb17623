import csv
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hugoniot.errors import NotASaddle, NoUndercompressive
from hugoniot.model import State, Viscosity, ZType, ab_connection_speed, grad_Z, undercompressive_speed
from hugoniot.structure import (
    OdeParams,
    TerminalKind,
    find_heteroclinic,
    jouguet_connection,
    ode_rhs,
    saddle_connection_found,
    shoot_separatrix,
    verify_connection,
)

UP = State(2.0, 3.0)
ANISO = Viscosity(1.0, 0.5)
W_STAR = 2 * (2 + 3 / math.sqrt(3))


def _eq(p, name):
    return {e.name: e for e in p.equilibria()}[name]


def _direction_towards(eq, target, unstable):
    """Eigenvector of ``eq`` (unstable or stable) oriented towards ``target``."""
    (l1, v1), (l2, v2) = eq.ode_eigen
    v = np.asarray(v1 if (l1 > 0) == unstable else v2)
    return v if v @ np.subtract(target, eq.location) > 0 else -v


def test_ode_rhs_examples():
    p = OdeParams(UP, 7.4641016, Viscosity(1, 1))
    assert np.allclose(ode_rhs(State(0, 0), p), (1.9282032, 10.3923048), atol=1e-7)
    for e in p.equilibria():
        assert np.allclose(ode_rhs(e.location, p), 0, atol=1e-10)
    u = State(0.7, -1.3)
    assert np.allclose(ode_rhs(u, p), -np.asarray(grad_Z(u, UP, p.W)), atol=1e-12)
    q = OdeParams(UP, 7.0, Viscosity(2.0, 0.5))
    g = np.asarray(grad_Z(u, UP, 7.0))
    assert np.allclose(ode_rhs(u, q), (-g[0] / 2.0, -g[1] / 0.5), atol=1e-12)


def test_separatrix_hits_u_plus_only_at_connection_speed():
    p = OdeParams(UP, W_STAR, ANISO)
    ux = _eq(p, "ux")
    assert np.allclose(ux.location, (5.4641016, -3), atol=1e-7)
    tr = shoot_separatrix(ux, _direction_towards(ux, UP, True), p)
    assert tr.terminal.converged_to(UP, 1e-5)
    assert tr.max_energy_rise(p) <= 1e-7
    assert np.all(np.diff(tr.xi) > 0)
    q = OdeParams(UP, 7.6, ANISO)
    ux = _eq(q, "ux")
    tr = shoot_separatrix(ux, _direction_towards(ux, UP, True), q)
    assert not tr.terminal.converged_to(UP, 1e-5)
    assert tr.max_energy_rise(q) <= 1e-7


def test_shooting_refuses_nodes():
    p = OdeParams(UP, W_STAR, ANISO)
    ua = _eq(p, "ua")
    assert ua.z_type is not ZType.SADDLE
    with pytest.raises(NotASaddle):
        shoot_separatrix(ua, (1.0, 0.0), p)


def test_reversal_consistency():
    p = OdeParams(UP, W_STAR, ANISO)
    ux, up = _eq(p, "ux"), _eq(p, "u+")
    fwd = shoot_separatrix(ux, _direction_towards(ux, UP, True), p)
    back = shoot_separatrix(up, _direction_towards(up, ux.location, False), p)
    assert back.reversed and back.terminal.converged_to(ux.location, 1e-5)
    # same orbit: every sample of one lies on the other (both hug the chord)
    for a, b in ((fwd, back), (back, fwd)):
        d = np.min(np.linalg.norm(a.u[:, None, :] - b.u[None, ::7, :], axis=-1), axis=1)
        spacing = np.max(np.linalg.norm(np.diff(b.u[::7], axis=0), axis=1))
        assert np.max(d) <= spacing
    assert np.all(np.diff(back.xi) > 0)


def test_find_heteroclinic_examples():
    prof = find_heteroclinic(State(6, -1), UP, 6.0, ANISO)
    assert prof is not None and not prof.family
    assert prof.trajectory.terminal.kind is TerminalKind.CONVERGED
    assert np.linalg.norm(prof.trajectory.u[0] - (6, -1)) <= 1e-4
    assert np.linalg.norm(prof.trajectory.u[-1] - UP) <= 1e-4
    assert prof.trajectory.max_energy_rise(prof.params) <= 1e-7
    assert find_heteroclinic(State(7, -2), UP, 8.0, ANISO) is None
    assert find_heteroclinic(State(9, -3), UP, 11.0, ANISO) is None
    fam = find_heteroclinic(State(13, -3), UP, 15.0, ANISO)
    assert fam is not None and fam.family


def test_undercompressive_profile_is_straight():
    W = undercompressive_speed(UP, ANISO)
    ux = State(W - UP[0], -UP[1])
    prof = find_heteroclinic(ux, UP, W, ANISO)
    assert prof is not None and prof.chord_deviation() <= 1e-5
    prof = find_heteroclinic(State(1 + 2 / math.sqrt(3), -1), State(1, 1), 2 * (1 + 1 / math.sqrt(3)), Viscosity(2, 1))
    assert prof is not None and prof.chord_deviation() <= 1e-5


def test_verify_connection_examples():
    assert abs(verify_connection(UP, ANISO) - 7.4641016151377) <= 1e-6 * 7.47
    assert abs(verify_connection(State(1, 1), Viscosity(2, 1)) - 3.1547005) <= 1e-6 * 3.16
    with pytest.raises(NoUndercompressive):
        verify_connection(UP, Viscosity(1, 1.5))


def test_saddle_connection_is_isolated():
    assert saddle_connection_found(UP, W_STAR, ANISO)
    for W in (7.6, 0.95 * W_STAR, 1.05 * W_STAR):
        assert not saddle_connection_found(UP, W, ANISO)


def _connected(p, src, dst):
    a, b = _eq(p, src), _eq(p, dst)
    tr = shoot_separatrix(a, _direction_towards(a, b.location, True), p)
    return tr.terminal.converged_to(b.location, 1e-4)


@pytest.mark.parametrize("which", [0, 1])
def test_ab_saddle_connection(which):
    W = ab_connection_speed(UP, ANISO)[which]
    p = OdeParams(UP, W, ANISO)
    assert _eq(p, "ua").z_type is ZType.SADDLE and _eq(p, "ub").z_type is ZType.SADDLE
    assert _connected(p, "ua", "ub") or _connected(p, "ub", "ua")
    q = OdeParams(UP, W + 0.05 * abs(W), ANISO)
    assert not (_connected(q, "ua", "ub") or _connected(q, "ub", "ua"))


def test_jouguet_connection_regimes():
    assert jouguet_connection(UP, Viscosity(1, 2))
    assert jouguet_connection(UP, Viscosity(1, 1))
    assert not jouguet_connection(UP, Viscosity(1, 0.5))


def test_profile_csv(tmp_path):
    prof = find_heteroclinic(State(6, -1), UP, 6.0, ANISO)
    path = tmp_path / "p.csv"
    prof.to_csv(path)
    rows = list(csv.reader(open(path)))
    assert rows[0] == ["xi", "u1", "u2", "Z"]
    assert len(rows) - 1 == len(prof.trajectory.xi)
    assert float(rows[1][1]) == prof.trajectory.u[0, 0]
    assert np.allclose(prof.at([-1e9, 1e9]), [(6, -1), UP])


@settings(max_examples=15, deadline=None)
@given(st.floats(0.05, 0.95), st.floats(0.5, 2.5), st.floats(-2, 2), st.floats(0.1, 0.9))
def test_slow_profiles_decrease_energy(s, b, a, m):
    mu = Viscosity(1.0, 2 * m * m / (1 + m * m))
    up = State(a, b)
    t = s * (1 + m) * b
    um = State(a + t, b - t)
    prof = find_heteroclinic(um, up, 2 * (um[0] - b), mu)
    assert prof is not None
    assert prof.trajectory.terminal.kind is TerminalKind.CONVERGED
    assert prof.trajectory.max_energy_rise(prof.params) <= 1e-7
