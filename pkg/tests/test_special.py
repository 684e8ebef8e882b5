import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2flow import special
from sl2flow.algebra import E1, AlgebraVector, u_tensor
from sl2flow.flows import geodesic, magnetic, sample_magnetic
from sl2flow.group import exp_algebra, from_coords, hopf_project, iwasawa
from sl2flow.special import (
    Circle,
    DeformedStructure,
    FiberPoint,
    GeodesicKind,
    VerticalLine,
    classify_one_param,
    deform,
    deformed_geodesic,
    deformed_magnetic,
    deformed_reductive_pair,
    deformed_residual,
    deformed_rotation_rate,
    from_sym_basis,
    one_param_coords,
    projected_locus,
    sample_deformed_geodesic,
    sample_deformed_magnetic,
    to_sym_basis,
)
from util import (
    angle_gap,
    body_velocity,
    fiber_vectors,
    max_entry_gap,
    nonzero_vectors,
    parameters,
    symmetric_vectors,
    vectors,
)


def curvatures():
    return st.floats(min_value=-12.0, max_value=-3.2)


def flow_curvatures():
    # keep the deformation scale -4/(c+3) modest so finite-difference
    # truncation stays far below the asserted bounds
    return st.floats(min_value=-12.0, max_value=-4.0)


# ---------------------------------------------------------------------------
# symmetrized basis
# ---------------------------------------------------------------------------


@given(vectors())
def test_sym_basis_roundtrip(x):
    a, b, c = to_sym_basis(x)
    assert (from_sym_basis(a, b, c) - x).norm() <= 1e-14


@given(vectors())
def test_sym_basis_is_isometric(x):
    a, b, c = to_sym_basis(x)
    lhs = a * a + b * b + c * c
    rhs = x.c1**2 + x.c2**2 + x.c3**2
    assert abs(lhs - rhs) <= 1e-13 * max(1.0, rhs)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


@given(fiber_vectors())
def test_classify_fiber(x):
    assert classify_one_param(x).kind is GeodesicKind.FIBER


@given(symmetric_vectors())
def test_classify_symmetric(x):
    assert classify_one_param(x).kind is GeodesicKind.SYMMETRIC


@given(nonzero_vectors().filter(lambda v: min(abs(v.c1), math.hypot(v.c2, v.c3)) > 1e-3))
def test_classify_generic(x):
    assert classify_one_param(x).kind is GeodesicKind.NOT_GEODESIC


def test_classify_rejects_zero():
    with pytest.raises(ValueError):
        classify_one_param(AlgebraVector(0.0, 0.0, 0.0))


def test_classify_relative_threshold():
    assert classify_one_param(AlgebraVector(1e-15, 1.0, 0.0)).kind is (
        GeodesicKind.SYMMETRIC
    )
    assert classify_one_param(AlgebraVector(1e-9, 1.0, 0.0)).kind is (
        GeodesicKind.NOT_GEODESIC
    )


@given(nonzero_vectors())
def test_classification_matches_u_tensor(x):
    # exp(sX) is a geodesic exactly when U(X, X) = 0
    is_geodesic = classify_one_param(x).kind is not GeodesicKind.NOT_GEODESIC
    defect = u_tensor(x, x).norm()
    if is_geodesic:
        # the classifier tolerates |components| up to 1e-12 |X|
        assert defect <= 8.0e-12 * x.norm() ** 2
    else:
        assert defect > 0.0


def test_delta_pinned():
    # delta^2 = c^2 + 2 b^2
    cls = classify_one_param(AlgebraVector(0.0, 1.0, 1.0))
    b = 1.0 / math.sqrt(2.0)
    assert abs(cls.delta - math.sqrt(1.0 + 2.0 * b * b)) <= 1e-15


# ---------------------------------------------------------------------------
# explicit coordinates
# ---------------------------------------------------------------------------


@given(
    symmetric_vectors(1.2).filter(lambda v: abs(v.c2) >= 0.1),
    st.floats(min_value=-3.0, max_value=3.0),
)
@settings(max_examples=80)
def test_symmetric_coords_match_iwasawa(x, s):
    got = one_param_coords(x, s)
    want = iwasawa(exp_algebra(x, s))
    assert abs(got.x - want.x) <= 1e-9
    assert abs(got.y - want.y) <= 1e-9 * max(1.0, want.y)
    assert angle_gap(got.theta, want.theta) <= 1e-9


@given(fiber_vectors(), st.floats(min_value=-3.0, max_value=3.0))
def test_fiber_coords_match_iwasawa(x, s):
    got = one_param_coords(x, s)
    want = iwasawa(exp_algebra(x, s))
    assert got.x == 0.0 and got.y == 1.0
    assert abs(got.theta - x.c1 * s) == 0.0
    assert angle_gap(got.theta, want.theta) <= 1e-12


@given(
    symmetric_vectors(1.2).filter(lambda v: abs(v.c2) >= 0.1),
    st.floats(min_value=-2.0, max_value=2.0),
)
@settings(max_examples=60)
def test_coords_reassemble_the_matrix(x, s):
    p = from_coords(one_param_coords(x, s))
    q = exp_algebra(x, s)
    scale = max(1.0, abs(q.p11), abs(q.p12), abs(q.p21), abs(q.p22))
    assert max_entry_gap(p, q) <= 1e-9 * scale


def test_vertical_ray_coords():
    # b = 0: the curve climbs the y-axis at exponential rate 2c
    x = AlgebraVector(0.0, 0.0, 0.8)
    for s in (-1.0, 0.3, 1.2):
        co = one_param_coords(x, s)
        assert co.x == 0.0
        assert abs(co.y - math.exp(1.6 * s)) <= 1e-12 * co.y
        assert co.theta == 0.0


def test_coords_reject_non_geodesic():
    with pytest.raises(ValueError):
        one_param_coords(AlgebraVector(1.0, 1.0, 0.0), 0.5)
    with pytest.raises(ValueError):
        projected_locus(AlgebraVector(1.0, 1.0, 0.0))


# ---------------------------------------------------------------------------
# projected loci
# ---------------------------------------------------------------------------


@given(symmetric_vectors(1.2).filter(lambda v: abs(v.c2) >= 0.1))
@settings(max_examples=50)
def test_circle_membership(x):
    locus = projected_locus(x)
    assert isinstance(locus, Circle)
    r2 = locus.radius**2
    # the circle passes through the base point i
    assert abs(locus.center_x**2 + 1.0 - r2) <= 1e-9 * max(1.0, r2)
    for s in (-1.5, -0.4, 0.0, 0.6, 1.3):
        pt = hopf_project(exp_algebra(x, s))
        member = (pt.x - locus.center_x) ** 2 + pt.y**2 - r2
        assert abs(member) <= 1e-9 * max(1.0, r2)


def test_circle_pinned():
    # X = e2: b = 1/sqrt(2), c = 0 -> unit circle centered at the origin
    locus = projected_locus(AlgebraVector(0.0, 1.0, 0.0))
    assert isinstance(locus, Circle)
    assert abs(locus.center_x) == 0.0
    assert abs(locus.radius - 1.0) <= 1e-15


def test_vertical_locus():
    assert isinstance(projected_locus(AlgebraVector(0.0, 0.0, 1.0)), VerticalLine)


@given(fiber_vectors())
def test_fiber_locus(x):
    locus = projected_locus(x)
    assert isinstance(locus, FiberPoint)
    assert (locus.x, locus.y) == (0.0, 1.0)
    pt = hopf_project(exp_algebra(x, 0.8))
    assert abs(pt.x) <= 1e-12 and abs(pt.y - 1.0) <= 1e-12


# ---------------------------------------------------------------------------
# deformed structures
# ---------------------------------------------------------------------------


def test_deform_rejects_admissible_boundary():
    for c in (-3.0, -2.9, 0.0, 5.0):
        with pytest.raises(ValueError):
            deform(c)


def test_deform_identity_coefficients():
    d = deform(-7.0)
    assert d.metric_scale == 1.0
    assert d.eta_weight == 0.0
    assert d.geo_k_scale == -1.0
    assert d.reeb_k_rate == 2.0


def test_deform_coefficients_pinned():
    d = deform(-4.0)
    assert d.metric_scale == 4.0
    assert d.eta_weight == 12.0
    assert d.geo_k_scale == -4.0
    assert d.reeb_k_rate == 5.0


@given(curvatures())
def test_deform_scale_positive(c):
    d = deform(c)
    assert d.metric_scale > 0.0
    assert abs(d.eta_weight - d.metric_scale * (d.metric_scale - 1.0)) == 0.0


@given(vectors(1.5), parameters(1.5), st.floats(min_value=-2, max_value=2))
def test_deformation_identity_is_bitwise(x, s, q):
    assert max_entry_gap(deformed_geodesic(-7.0, x, s), geodesic(x, s)) == 0.0
    assert max_entry_gap(deformed_magnetic(-7.0, x, q, s), magnetic(x, q, s)) == 0.0


@given(flow_curvatures(), vectors(1.0))
@settings(max_examples=25)
def test_deformed_geodesic_initial_velocity(c, x):
    v = body_velocity(lambda s: deformed_geodesic(c, x, s), 0.0)
    assert (v - x).norm() <= 1e-5


@given(flow_curvatures(), vectors(1.0), st.floats(min_value=-1, max_value=1))
@settings(max_examples=25)
def test_deformed_magnetic_initial_velocity(c, x, q):
    # the charge shifts the velocity along the deformed Reeb vector
    v = body_velocity(lambda s: deformed_magnetic(c, x, q, s), 0.0)
    want = x - (q * (c + 3.0) / 8.0) * E1
    assert (v - want).norm() <= 1e-5


def test_deformed_rotation_rate_pinned():
    # at c = -7 the deformed rate is the undeformed 4A
    assert deformed_rotation_rate(-7.0, 0.3) == 1.2
    # at c = -4: 2 (c-1) a / (c+3) = 10 a
    assert deformed_rotation_rate(-4.0, 0.5) == 5.0


@given(flow_curvatures(), nonzero_vectors(1.0))
@settings(max_examples=15)
def test_deformed_residual_small_on_deformed_paths(c, x):
    path = sample_deformed_geodesic(c, x, 0.0, 1.0, 10001)
    # truncation floor is (h^2/6) w^3 r, at most ~2e-6 for these draws
    assert deformed_residual(path, c) <= 5e-5


def test_deformed_residual_with_charge():
    c, q = -5.0, 0.6
    x = AlgebraVector(0.3, 0.7, -0.2)
    path = sample_deformed_magnetic(c, x, q, 0.0, 1.0, 40001)
    assert deformed_residual(path, c, q) <= 1e-6
    # undeformed rate disagrees once c != -7
    assert deformed_residual(path, -7.0, q) > 1e-3


@given(curvatures(), vectors())
def test_deformed_pair_membership(c, x):
    pair = deformed_reductive_pair(c, x)
    assert abs(pair.k_part + (c - 1.0) / 4.0 * pair.g_part.c1) <= 1e-13
    assert pair.g_part.c2 == x.c2 and pair.g_part.c3 == x.c3


def test_sampled_deformed_paths_match_pointwise():
    c, q = -4.5, 0.4
    x = AlgebraVector(0.2, -0.6, 0.9)
    path = sample_deformed_magnetic(c, x, q, -1.0, 1.0, 21)
    for k in (0, 3, 20):
        assert max_entry_gap(path[k].matrix, deformed_magnetic(c, x, q, path.s[k])) <= 1e-13
    path = sample_deformed_geodesic(c, x, 0.0, 1.0, 11)
    for k in (0, 10):
        assert max_entry_gap(path[k].matrix, deformed_geodesic(c, x, path.s[k])) <= 1e-13


def test_deformed_magnetic_matches_undeformed_sampling():
    # the c = -7 sampled paths coincide with the flows module bitwise
    x, q = AlgebraVector(0.3, 0.8, -0.5), 1.1
    a = sample_deformed_magnetic(-7.0, x, q, 0.0, 2.0, 101)
    b = sample_magnetic(x, q, 0.0, 2.0, 101)
    assert np.array_equal(a.entries, b.entries)
    assert np.array_equal(a.omega, b.omega)


def test_structure_is_frozen():
    d = DeformedStructure(-5.0)
    with pytest.raises(AttributeError):
        d.c = -4.0
