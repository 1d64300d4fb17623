import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hugoniot.errors import DegenerateAxis, NoConnection, NotAShock, NotOnLocus, NoUndercompressive
from hugoniot.model import (
    ShockCandidate,
    ShockKind,
    State,
    Verdict,
    Viscosity,
    ZType,
    ab_connection_speed,
    characteristic_speeds,
    coefficients_D,
    critical_points,
    energy_Z,
    flux,
    grad_Z,
    hessian_kind,
    hugoniot_branches,
    key_points,
    lax_classify,
    locus_branch,
    locus_product,
    rh_residual,
    shock_speed,
    structure_exists,
    undercompressive_energy_gap,
    undercompressive_speed,
    zero_set,
)

UP = State(2.0, 3.0)
ANISO = Viscosity(1.0, 0.5)
ISO = Viscosity(1.0, 2.0)
M = 1.0 / math.sqrt(3.0)

coord = st.floats(-8.0, 8.0, allow_nan=False)
nonzero = st.floats(0.2, 6.0).flatmap(lambda b: st.sampled_from([b, -b]))
ratio = st.floats(0.05, 3.0)


def close(u, v, tol=1e-7):
    return np.allclose(np.asarray(u, float), np.asarray(v, float), atol=tol, rtol=0)


# -- examples ---------------------------------------------------------------


@pytest.mark.parametrize("u,f", [((0, 0), (0, 0)), ((2, 3), (13, 12)), ((1, -1), (2, -2))])
def test_flux_examples(u, f):
    assert flux(State(*u)) == State(*f)


def test_characteristic_speeds():
    c = characteristic_speeds(State(0.0, 0.0))
    assert (c.c1, c.c2, c.coincident) == (0.0, 0.0, True)
    for u in [(2.0, 3.0), (2.0, -3.0)]:
        c = characteristic_speeds(State(*u))
        assert (c.c1, c.c2) == (-2.0, 10.0) and not c.coincident
        assert math.isclose(np.linalg.norm(c.beta1), 1.0) and math.isclose(np.linalg.norm(c.beta2), 1.0)


def test_branches_of_2_3():
    h, d, a = hugoniot_branches(UP)
    for x in (-3.0, 0.0, 4.5):
        assert h.state_at(x) == (x, -3.0) and h.speed_at(x) == x + 2
        assert d.state_at(x) == (x, x + 1) and d.speed_at(x) == 2 * (x + 3)
        assert a.state_at(x) == (x, -x + 5) and a.speed_at(x) == 2 * (x - 3)


def test_shock_speed_examples():
    assert math.isclose(shock_speed(State(4, 5), UP), 14.0)
    assert abs(shock_speed(State(3, 2), UP)) < 1e-12
    with pytest.raises(NotOnLocus):
        shock_speed(State(0, 0.5), UP)
    assert abs(locus_product(State(0, 0.5), UP)) > 1e-3
    assert locus_branch(State(4, 5), UP).value == "diagonal"


def test_energy_examples():
    W = 7.4641016
    D1, D2 = coefficients_D(UP, W)
    assert math.isclose(D1, -1.9282032, abs_tol=1e-7) and math.isclose(D2, -10.3923048, abs_tol=1e-7)
    assert close(grad_Z(UP, UP, W), (0, 0), 1e-12)
    assert math.isclose(undercompressive_energy_gap(UP, ANISO), 69.2820323, abs_tol=1e-7)
    W = undercompressive_speed(UP, ANISO)
    ux = zero_set(UP, W)["ux"]
    assert math.isclose(energy_Z(ux, UP, W) - energy_Z(UP, UP, W), 69.2820323, abs_tol=1e-7)


def test_critical_points_examples():
    z = zero_set(UP, 7.0)
    assert z["ux"] == (5, -3) and z["ua"] == (6.5, -1.5) and z["ub"] == (0.5, 1.5)
    eq = {e.name: e for e in critical_points(UP, 10.0)}
    assert eq["ua"].location == eq["ux"].location == (8, -3) and eq["ux"].multiplicity == 2
    assert all(e.multiplicity == 4 for e in critical_points(State(1, 0), 2.0))


@pytest.mark.parametrize(
    "um,W,kind",
    [
        ((4, 5), 14.0, ShockKind.FAST),
        ((3, 2), 0.0, ShockKind.SLOW),
        ((2 + 2 * M * 3, -3), None, ShockKind.UNDERCOMPRESSIVE),
        ((9, -3), 11.0, ShockKind.OVERCOMPRESSIVE),
    ],
)
def test_lax_examples(um, W, kind):
    um = State(*um)
    W = shock_speed(um, UP) if W is None else W
    assert lax_classify(ShockCandidate(um, UP, W)).kind is kind


def test_lax_rejects_off_locus():
    with pytest.raises(NotOnLocus):
        lax_classify(ShockCandidate(State(0, 0.5), UP, 1.0))


def test_undercompressive_speed_examples():
    assert math.isclose(ANISO.m, 0.5773503, abs_tol=1e-7)
    assert math.isclose(undercompressive_speed(UP, ANISO), 7.4641016, abs_tol=1e-7)
    assert math.isclose(undercompressive_speed(State(2, -3), ANISO), 7.4641016, abs_tol=1e-7)
    with pytest.raises(NoUndercompressive):
        undercompressive_speed(UP, ISO)
    with pytest.raises(DegenerateAxis):
        undercompressive_speed(State(2, 0), ANISO)


def test_ab_connection_examples():
    hi, lo = ab_connection_speed(UP, ANISO)
    assert math.isclose(hi, 14.3923048, abs_tol=1e-7) and math.isclose(lo, -6.3923048, abs_tol=1e-7)
    with pytest.raises(NoConnection):
        ab_connection_speed(UP, Viscosity(1, 1))
    hi, lo = ab_connection_speed(State(2, 1e-9), ANISO)
    assert math.isclose(hi, 4.0, abs_tol=1e-7) and math.isclose(lo, 4.0, abs_tol=1e-7)


def test_structure_examples():
    def verdict(um, mu):
        um = State(*um)
        return structure_exists(ShockCandidate(um, UP, shock_speed(um, UP)), mu).verdict

    assert verdict((6, -1), ISO) is Verdict.YES
    assert verdict((6, -1), ANISO) is Verdict.YES
    assert verdict((7, -2), ANISO) is Verdict.NO
    for mu in (ISO, ANISO, Viscosity(1, 1)):
        assert verdict((4, 5), mu) is Verdict.YES
    D = key_points(UP, ANISO).D
    assert verdict(D, ANISO) is Verdict.BOUNDARY
    with pytest.raises(NotAShock):
        verdict((9, -3), ANISO)


def test_key_points_examples():
    kp = key_points(UP, ISO)
    assert (kp.B, kp.C, kp.H) == ((8, -3), (-4, -3), (-1, 0))
    assert kp.D is None and kp.E is None and kp.F is None
    kp = key_points(UP, ANISO)
    assert close(kp.D, (6.7320508, -1.7320508)) and close(kp.E, (10.1961524, -5.1961524))
    assert close(kp.F, (12.3923048, -3))
    # B, C, D, E, F on the locus
    for p in (kp.B, kp.C, kp.D, kp.E, kp.F):
        assert abs(locus_product(p, UP)) < 1e-12


# -- properties ---------------------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(coord, nonzero, st.integers(0, 2), coord)
def test_branch_points_satisfy_rh(a, b, k, x):
    up = State(a, b)
    br = hugoniot_branches(up)[k]
    um = br.state_at(x)
    assert rh_residual(ShockCandidate(um, up, br.speed_at(x))) <= 1e-10
    if abs(x - a) > 1e-3:
        assert math.isclose(shock_speed(um, up), br.speed_at(x), abs_tol=1e-7)


@settings(max_examples=200, deadline=None)
@given(coord, nonzero, st.integers(0, 2), coord, ratio)
def test_mirror_symmetry(a, b, k, x, r):
    up = State(a, b)
    mu = Viscosity(1.0, r)
    br = hugoniot_branches(up)[k]
    c = ShockCandidate(br.state_at(x), up, br.speed_at(x))
    cm = c.mirrored()
    assert lax_classify(c).kind is lax_classify(cm).kind
    assert characteristic_speeds(c.u_minus)[:2] == characteristic_speeds(cm.u_minus)[:2]
    kind = lax_classify(c).kind
    if kind in (ShockKind.FAST, ShockKind.SLOW):
        assert structure_exists(c, mu).verdict is structure_exists(cm, mu).verdict
    if mu.admits_undercompressive:
        assert undercompressive_speed(up, mu) == undercompressive_speed(up.mirrored(), mu)
    kp, kpm = key_points(up, mu), key_points(up.mirrored(), mu)
    for (n1, p), (n2, q) in zip(kp.items(), kpm.items()):
        assert n1 == n2 and close(p.mirrored(), q, 1e-12)


@settings(max_examples=200, deadline=None)
@given(coord, nonzero, st.floats(-20, 20))
def test_equilibria_pair_types(a, b, W):
    eqs = {e.name: e for e in critical_points(State(a, b), W)}
    assume(all(e.multiplicity == 1 for e in eqs.values()))
    saddle = {k: e.z_type is ZType.SADDLE for k, e in eqs.items()}
    assert saddle["u+"] == saddle["ux"] and saddle["ua"] == saddle["ub"]
    assert saddle["u+"] != saddle["ua"]


@settings(max_examples=300, deadline=None)
@given(coord, nonzero, st.integers(0, 2), coord)
def test_lambda_consistency(a, b, k, x):
    up = State(a, b)
    br = hugoniot_branches(up)[k]
    c = ShockCandidate(br.state_at(x), up, br.speed_at(x))
    kind = lax_classify(c).kind
    assume(kind is not ShockKind.DEGENERATE)
    hk = hessian_kind(c)
    assert (hk is ShockKind.FAST) == (kind is ShockKind.FAST)
    assert (hk is ShockKind.SLOW) == (kind is ShockKind.SLOW)


@settings(max_examples=100, deadline=None)
@given(coord, nonzero, st.floats(0.05, 0.95), st.floats(0.1, 10), st.floats(0.1, 10))
def test_rescaling_invariance(a, b, m, mu1, s):
    mu = Viscosity(mu1, 2 * m * m * mu1 / (1 + m * m))
    up = State(a, b)
    assert math.isclose(mu.m, mu.scaled(s).m, rel_tol=1e-12)
    assert math.isclose(undercompressive_speed(up, mu), undercompressive_speed(up, mu.scaled(s)), rel_tol=1e-12)
    kp1, kp2 = key_points(up, mu), key_points(up, mu.scaled(s))
    assert all(close(p, q, 1e-9) for (_, p), (_, q) in zip(kp1.items(), kp2.items()))


@settings(max_examples=200, deadline=None)
@given(coord, nonzero, st.floats(0.05, 0.95))
def test_undercompressive_speed_is_saddle_and_gap(a, b, m):
    mu = Viscosity(1.0, 2 * m * m / (1 + m * m))
    up = State(a, b)
    W = undercompressive_speed(up, mu)
    assert (a - W / 2) ** 2 < b**2
    ux = zero_set(up, W)["ux"]
    gap = energy_Z(ux, up, W) - energy_Z(up, up, W)
    assert gap > 0
    assert abs(gap - undercompressive_energy_gap(up, mu)) <= 1e-10 * max(1.0, abs(gap))


def test_axis_classification_is_degenerate():
    up = State(1.0, 0.0)
    for br in hugoniot_branches(up):
        c = ShockCandidate(br.state_at(3.0), up, br.speed_at(3.0))
        assert lax_classify(c).kind is ShockKind.DEGENERATE


def test_off_locus_product_bounded_away():
    rng = np.random.default_rng(0)
    for _ in range(200):
        up = State(*rng.uniform(-5, 5, 2))
        br = hugoniot_branches(up)[rng.integers(3)]
        p = br.state_at(float(rng.uniform(-5, 5)))
        q = State(p[0] + 0.3, p[1] + 0.3 * (1 if br.branch_id.value != "diagonal" else -1))
        if min(b.distance(q) for b in hugoniot_branches(up)) >= 0.1:
            assert abs(locus_product(q, up)) > 1e-6
