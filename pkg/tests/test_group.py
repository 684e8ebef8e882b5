import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2flow.algebra import E1, AlgebraVector
from sl2flow.group import (
    GroupMatrix,
    HyperbolicPoint,
    IwasawaCoords,
    adjoint_rotation,
    exp_algebra,
    exp_rotation,
    from_coords,
    hopf_project,
    iwasawa,
    mobius,
)
from util import (
    angle_gap,
    conjugate_vector,
    max_entry_gap,
    nak_product,
    parameters,
    series_exp,
    vectors,
)


def group_points(bound: float = 1.2):
    return vectors(bound).map(exp_algebra)


# ---------------------------------------------------------------------------
# GroupMatrix
# ---------------------------------------------------------------------------


def test_constructor_accepts_unit_determinant():
    p = GroupMatrix(2.0, 3.0, 1.0, 2.0)
    assert p.det == 1.0


def test_constructor_rejects_bad_determinant():
    with pytest.raises(ValueError):
        GroupMatrix(2.0, 0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        GroupMatrix(1.001, 0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        GroupMatrix(-1.0, 0.0, 0.0, 1.0)


def test_constructor_renormalizes_near_misses():
    p = GroupMatrix(1.0 + 3e-10, 0.0, 0.0, 1.0)
    assert abs(p.det - 1.0) <= 1e-15
    assert abs(p.p11 - 1.0) <= 3e-10


def test_identity_and_inverse():
    e = GroupMatrix.identity()
    p = exp_algebra(AlgebraVector(0.3, 1.1, -0.4))
    # the product constructor renormalizes, which may shift one ulp
    assert max_entry_gap(p @ e, p) <= 1e-15
    assert max_entry_gap(p @ p.inverse(), e) <= 1e-15


@given(vectors(1.2), vectors(1.2))
def test_matmul_matches_numpy(x, y):
    p, q = exp_algebra(x), exp_algebra(y)
    prod = (p @ q).array()
    direct = p.array() @ q.array()
    scale = max(1.0, float(np.abs(direct).max()))
    assert float(np.abs(prod - direct).max()) <= 1e-13 * scale


def test_array_roundtrip():
    p = exp_algebra(AlgebraVector(0.2, 0.9, -1.3))
    assert max_entry_gap(GroupMatrix.from_array(p.array()), p) == 0.0
    with pytest.raises(ValueError):
        GroupMatrix.from_array(np.eye(3))


# ---------------------------------------------------------------------------
# exponential
# ---------------------------------------------------------------------------


@given(vectors(1.0), st.floats(min_value=-0.5, max_value=0.5))
def test_exp_matches_power_series(x, s):
    got = exp_algebra(x, s).array()
    assert float(np.abs(got - series_exp(x, s)).max()) <= 1e-12


@given(vectors(1.5), parameters(1.5))
@settings(max_examples=120)
def test_exp_matches_scipy_expm(x, s):
    got = exp_algebra(x, s).array()
    want = scipy.linalg.expm(s * x.matrix())
    scale = max(1.0, float(np.abs(want).max()))
    # renormalization may shift entries by |det-1|/2 ~ eps * scale^2
    tol = max(1e-12, 2.0 * np.finfo(float).eps * scale * scale)
    assert float(np.abs(got - want).max()) <= tol


def test_exp_zero_is_identity():
    assert max_entry_gap(exp_algebra(AlgebraVector(0.0, 0.0, 0.0)), GroupMatrix.identity()) == 0.0


def test_exp_elliptic_pinned():
    # exp(t e1) is the rotation by t
    t = 0.7
    p = exp_algebra(E1, t)
    assert abs(p.p11 - math.cos(t)) <= 1e-15
    assert abs(p.p12 - math.sin(t)) <= 1e-15


def test_exp_hyperbolic_pinned():
    # exp(t e2) = [[cosh t, sinh t], [sinh t, cosh t]]
    t = 1.1
    p = exp_algebra(AlgebraVector(0.0, 1.0, 0.0), t)
    assert abs(p.p11 - math.cosh(t)) <= 4e-16 * math.cosh(t)
    assert abs(p.p12 - math.sinh(t)) <= 4e-16 * math.cosh(t)
    # exp(t e3) = diag(e^t, e^-t)
    p = exp_algebra(AlgebraVector(0.0, 0.0, 1.0), t)
    assert abs(p.p11 - math.exp(t)) <= 4e-16 * math.exp(t)
    assert p.p12 == 0.0 and p.p21 == 0.0


def test_exp_nilpotent_pinned():
    # (1, 1, 0) squares to zero: exp(sX) = I + sX
    s = 1.7
    p = exp_algebra(AlgebraVector(1.0, 1.0, 0.0), s)
    assert max_entry_gap(p, GroupMatrix(1.0, 2.0 * s, 0.0, 1.0)) == 0.0


def test_exp_branch_continuity():
    # entries vary smoothly through the Taylor window around d = 0
    base = AlgebraVector(1.0, 1.0, 0.0)
    probes = []
    for eps in (-2e-8, -9e-9, 0.0, 9e-9, 2e-8):
        x = AlgebraVector(1.0 + eps, 1.0, 0.0)
        probes.append(exp_algebra(x, 1.0))
    for a, b in zip(probes, probes[1:]):
        assert max_entry_gap(a, b) <= 1e-7
    assert max_entry_gap(exp_algebra(base), probes[2]) == 0.0


@given(vectors(1.0), parameters(1.5), parameters(1.5))
def test_exp_one_parameter_homomorphism(x, s, t):
    lhs = (exp_algebra(x, s) @ exp_algebra(x, t)).array()
    rhs = exp_algebra(x, s + t).array()
    scale = max(1.0, float(np.abs(rhs).max()))
    assert float(np.abs(lhs - rhs).max()) <= 1e-11 * scale


@given(vectors(1.2), parameters(1.5))
def test_exp_inverse_is_negative_parameter(x, s):
    assert max_entry_gap(exp_algebra(x, -s), exp_algebra(x, s).inverse()) <= 1e-13


@given(parameters(3.0), parameters(2.0))
def test_exp_rotation_matches_exp_algebra(u, s):
    assert max_entry_gap(exp_rotation(u, s), exp_algebra(u * E1, s)) <= 1e-14


def test_exp_rotation_period():
    assert max_entry_gap(exp_rotation(2.0 * math.pi, 1.0), GroupMatrix.identity()) <= 1e-14


# ---------------------------------------------------------------------------
# Iwasawa coordinates
# ---------------------------------------------------------------------------


def test_iwasawa_identity():
    c = iwasawa(GroupMatrix.identity())
    assert (c.x, c.y, c.theta) == (0.0, 1.0, 0.0) or (
        c.x == 0.0 and c.y == 1.0 and abs(c.theta) == 0.0
    )


def test_iwasawa_worked_examples():
    c = iwasawa(GroupMatrix(2.0, 0.0, 0.0, 0.5))
    assert abs(c.x) <= 1e-14 and abs(c.y - 4.0) <= 1e-14 and abs(c.theta) <= 1e-14

    c = iwasawa(GroupMatrix(1.0, 1.0, 1.0, 2.0))
    assert abs(c.x - 0.6) <= 1e-14
    assert abs(c.y - 0.2) <= 1e-14
    # e^{i theta} = (2 - i)/sqrt(5)
    assert abs(c.theta - math.atan2(-1.0, 2.0)) <= 1e-14


@given(group_points())
def test_iwasawa_roundtrip_from_matrix(p):
    assert max_entry_gap(from_coords(iwasawa(p)), p) <= 1e-10


@given(
    st.floats(min_value=-3.0, max_value=3.0),
    st.floats(min_value=0.2, max_value=5.0),
    st.floats(min_value=-6.0, max_value=6.0),
)
def test_iwasawa_roundtrip_from_coords(x, y, theta):
    c = IwasawaCoords(x, y, theta)
    back = iwasawa(from_coords(c))
    assert abs(back.x - c.x) <= 1e-10
    assert abs(back.y - c.y) <= 1e-10 * max(1.0, c.y)
    assert angle_gap(back.theta, c.theta) <= 1e-10


@given(
    st.floats(min_value=-3.0, max_value=3.0),
    st.floats(min_value=0.2, max_value=5.0),
    st.floats(min_value=-6.0, max_value=6.0),
)
def test_from_coords_matches_nak_product(x, y, theta):
    got = from_coords(IwasawaCoords(x, y, theta)).array()
    assert float(np.abs(got - nak_product(x, y, theta)).max()) <= 1e-13


@given(group_points())
def test_iwasawa_angle_in_principal_interval(p):
    c = iwasawa(p)
    assert -math.pi < c.theta <= math.pi
    assert c.y > 0.0


def test_coords_reject_nonpositive_y():
    with pytest.raises(ValueError):
        IwasawaCoords(0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        IwasawaCoords(0.0, -1.0, 0.0)
    with pytest.raises(ValueError):
        HyperbolicPoint(0.0, -2.0)


def test_canonical_angle_interval():
    assert abs(IwasawaCoords(0, 1, 3 * math.pi).canonical().theta - math.pi) <= 1e-15
    assert abs(IwasawaCoords(0, 1, -math.pi).canonical().theta - math.pi) == 0.0
    assert abs(IwasawaCoords(0, 1, 0.5).canonical().theta - 0.5) == 0.0


# ---------------------------------------------------------------------------
# projection and Moebius action
# ---------------------------------------------------------------------------


@given(group_points())
def test_projection_is_mobius_at_i(p):
    z = mobius(p, HyperbolicPoint(0.0, 1.0))
    h = hopf_project(p)
    assert abs(z.x - h.x) <= 1e-13 and abs(z.y - h.y) <= 1e-13


@given(group_points(), group_points())
def test_projection_equivariance(p, q):
    lhs = hopf_project(p @ q)
    rhs = mobius(p, hopf_project(q))
    assert abs(lhs.x - rhs.x) <= 1e-12
    assert abs(lhs.y - rhs.y) <= 1e-12


@given(group_points())
def test_projection_matches_base_point(p):
    c = iwasawa(p)
    h = hopf_project(p)
    assert (h.x, h.y) == (c.base_point().x, c.base_point().y)


def test_rotation_stabilizes_i():
    z = mobius(exp_rotation(0.9), HyperbolicPoint(0.0, 1.0))
    assert abs(z.x) <= 1e-15 and abs(z.y - 1.0) <= 1e-15


@given(group_points(), st.floats(min_value=-3, max_value=3), st.floats(min_value=0.1, max_value=4))
def test_mobius_preserves_half_plane(p, zx, zy):
    w = mobius(p, HyperbolicPoint(zx, zy))
    assert w.y > 0.0


# ---------------------------------------------------------------------------
# adjoint rotation
# ---------------------------------------------------------------------------


@given(parameters(2.0), parameters(2.0), vectors())
def test_adjoint_rotation_matches_conjugation(u, s, x):
    want = conjugate_vector(exp_rotation(u, s).array(), x)
    assert (adjoint_rotation(u, s, x) - want).norm() <= 1e-13


@given(vectors())
def test_adjoint_rotation_half_period(x):
    # Ad(exp(s u e1)) rotates the (c2, c3)-plane at twice the fiber angle
    got = adjoint_rotation(math.pi, 1.0, x)
    assert (got - x).norm() <= 1e-14 * max(1.0, x.norm())


@given(parameters(2.0), parameters(2.0), vectors())
def test_adjoint_rotation_fixes_reeb_and_norm(u, s, x):
    got = adjoint_rotation(u, s, x)
    assert got.c1 == x.c1
    assert abs(got.norm() - x.norm()) <= 1e-14 * max(1.0, x.norm())
