"""Runtime verification suites for every module in the package.

Each check evaluates an identity the implementation promises -- on the
frame, on tabulated data, or on deterministic pseudo-random draws -- and
records the worst residual against a pinned tolerance.  :func:`run_all`
returns every result; the ``verify`` command-line subcommand prints them
together with the per-suite maxima and exits nonzero on any breach.

Checks that exercise the connection and curvature tables read
``algebra.LEVI_CIVITA_TABLE`` and ``algebra.CURVATURE_TABLE`` through the
module at call time, so corrupting a single table entry is caught even when
every formula-side computation is still correct.

Finite-difference checks carry an O(h^2) truncation floor; their tolerances
are far above round-off but far below any coefficient error.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from . import algebra, flows, group, special
from .algebra import E1, FRAME, AlgebraVector
from .group import GroupMatrix, HyperbolicPoint, IwasawaCoords

__all__ = ["CheckResult", "run_all", "SUITES"]

#: suite names in reporting order
SUITES = ("algebra", "group", "flows", "special")


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named check: worst residual vs. its tolerance."""

    suite: str
    name: str
    residual: float
    tolerance: float
    passed: bool


class _Recorder:
    """Collects results for one suite, applying the global tolerance scale."""

    def __init__(self, suite: str, tol_scale: float, results: list[CheckResult]):
        self.suite = suite
        self.tol_scale = tol_scale
        self.results = results

    def add(self, name: str, residual: float, tolerance: float) -> None:
        tol = tolerance * self.tol_scale
        residual = float(residual)
        self.results.append(
            CheckResult(self.suite, name, residual, tol, residual <= tol)
        )


# ---------------------------------------------------------------------------
# draw helpers
# ---------------------------------------------------------------------------


def _vec(rng: random.Random, scale: float = 1.5) -> AlgebraVector:
    return AlgebraVector(
        rng.uniform(-scale, scale),
        rng.uniform(-scale, scale),
        rng.uniform(-scale, scale),
    )


def _unit(rng: random.Random) -> AlgebraVector:
    while True:
        v = _vec(rng)
        n = v.norm()
        if n > 0.1:
            return (1.0 / n) * v


def _group_point(rng: random.Random, scale: float = 1.2) -> GroupMatrix:
    return group.exp_algebra(_vec(rng, scale))


def _matrix_residual(p: GroupMatrix, q: GroupMatrix) -> float:
    return max(
        abs(p.p11 - q.p11), abs(p.p12 - q.p12), abs(p.p21 - q.p21), abs(p.p22 - q.p22)
    )


def _normalized_matrix_residual(p: GroupMatrix, q: GroupMatrix) -> float:
    scale = max(1.0, abs(p.p11), abs(p.p12), abs(p.p21), abs(p.p22))
    return _matrix_residual(p, q) / scale


def _exp_series(x: AlgebraVector, s: float, terms: int = 24) -> np.ndarray:
    """Truncated power series for exp(sX); independent of the closed form."""
    m = s * x.matrix()
    acc = np.eye(2)
    term = np.eye(2)
    for k in range(1, terms):
        term = term @ m / k
        acc = acc + term
    return acc


# ---------------------------------------------------------------------------
# suite: algebra
# ---------------------------------------------------------------------------


def _check_algebra(rec: _Recorder, rng: random.Random) -> None:
    draws = [( _vec(rng), _vec(rng), _vec(rng)) for _ in range(40)]

    rec.add(
        "bracket_antisymmetry",
        max(
            (algebra.bracket(x, y) + algebra.bracket(y, x)).norm()
            for x, y, _ in draws
        ),
        1e-15,
    )

    rec.add(
        "jacobi_identity",
        max(
            (
                algebra.bracket(x, algebra.bracket(y, z))
                + algebra.bracket(y, algebra.bracket(z, x))
                + algebra.bracket(z, algebra.bracket(x, y))
            ).norm()
            for x, y, z in draws
        ),
        1e-13,
    )

    rec.add(
        "u_tensor_symmetry",
        max(
            (algebra.u_tensor(x, y) - algebra.u_tensor(y, x)).norm()
            for x, y, _ in draws
        ),
        1e-15,
    )

    rec.add(
        "u_tensor_defining_relation",
        max(
            (algebra.u_tensor(x, y) - algebra.u_tensor_defining(x, y)).norm()
            for x, y, _ in draws
        ),
        1e-13,
    )

    rec.add(
        "levi_civita_table",
        max(
            (
                AlgebraVector(*algebra.LEVI_CIVITA_TABLE[(i, j)])
                - algebra.levi_civita(FRAME[i - 1], FRAME[j - 1])
            ).norm()
            for i in (1, 2, 3)
            for j in (1, 2, 3)
        ),
        1e-14,
    )

    rec.add(
        "metric_compatibility",
        max(
            abs(
                algebra.inner(algebra.levi_civita(z, x), y)
                + algebra.inner(x, algebra.levi_civita(z, y))
            )
            for x, y, z in draws
        ),
        1e-13,
    )

    rec.add(
        "torsion_free",
        max(
            (
                algebra.levi_civita(x, y)
                - algebra.levi_civita(y, x)
                - algebra.bracket(x, y)
            ).norm()
            for x, y, _ in draws
        ),
        1e-13,
    )

    rec.add(
        "curvature_table",
        max(
            (
                algebra.curvature_table(i, j, k)
                - algebra.curvature(FRAME[i - 1], FRAME[j - 1], FRAME[k - 1])
            ).norm()
            for i in (1, 2, 3)
            for j in (1, 2, 3)
            for k in (1, 2, 3)
        ),
        1e-14,
    )

    rec.add(
        "sasakian_curvature_formula",
        max(
            (
                algebra.curvature(x, y, z) - algebra.curvature_sasakian(x, y, z)
            ).norm()
            for x, y, z in draws
        ),
        1e-12,
    )

    expected = {(1, 1): 2.0, (2, 2): -6.0, (3, 3): -6.0}
    rec.add(
        "ricci_spectrum",
        max(
            max(
                abs(algebra.ricci(FRAME[i - 1], FRAME[j - 1]) - expected.get((i, j), 0.0))
                for i in (1, 2, 3)
                for j in (1, 2, 3)
            ),
            abs(algebra.scalar_curvature() - (-10.0)),
        ),
        1e-13,
    )

    def _structure_defect(x: AlgebraVector, y: AlgebraVector) -> float:
        phi2 = algebra.lorentz_force(algebra.lorentz_force(x))
        wanted = -1.0 * x + algebra.contact_form(x) * E1
        d1 = (phi2 - wanted).norm()
        d2 = abs(algebra.contact_form(algebra.lorentz_force(x)))
        d3 = abs(
            algebra.inner(algebra.lorentz_force(x), algebra.lorentz_force(y))
            - algebra.inner(x, y)
            + algebra.contact_form(x) * algebra.contact_form(y)
        )
        d4 = (algebra.levi_civita(x, algebra.reeb()) - algebra.lorentz_force(x)).norm()
        return max(d1, d2, d3, d4)

    rec.add(
        "sasakian_structure",
        max(_structure_defect(x, y) for x, y, _ in draws),
        1e-13,
    )

    rec.add(
        "reductive_roundtrip",
        max(
            (algebra.ReductivePair.from_tangent(x).tangent() - x).norm()
            for x, _, _ in draws
        ),
        1e-15,
    )

    rec.add(
        "naturally_reductive_defect",
        max(
            abs(
                algebra.natred_defect(
                    algebra.ReductivePair.from_tangent(_unit(rng)),
                    algebra.ReductivePair.from_tangent(_unit(rng)),
                    algebra.ReductivePair.from_tangent(_unit(rng)),
                )
            )
            for _ in range(40)
        ),
        1e-14,
    )


# ---------------------------------------------------------------------------
# suite: group
# ---------------------------------------------------------------------------


def _check_group(rec: _Recorder, rng: random.Random) -> None:
    res = 0.0
    for _ in range(40):
        x = _vec(rng, 1.0)
        s = rng.uniform(-0.4, 0.4)
        p = group.exp_algebra(x, s)
        res = max(res, float(np.abs(p.array() - _exp_series(x, s)).max()))
    rec.add("exp_power_series", res, 1e-12)

    nil = AlgebraVector(0.7, 0.7, 0.0)
    p = group.exp_algebra(nil, 1.3)
    expect = np.eye(2) + 1.3 * nil.matrix()
    rec.add(
        "exp_nilpotent_branch",
        float(np.abs(p.array() - expect).max()),
        1e-14,
    )

    res = 0.0
    for _ in range(40):
        x = _vec(rng, 1.0)
        s, t = rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)
        lhs = group.exp_algebra(x, s) @ group.exp_algebra(x, t)
        rhs = group.exp_algebra(x, s + t)
        res = max(res, _normalized_matrix_residual(rhs, lhs))
    rec.add("exp_one_parameter_group", res, 1e-10)

    res = 0.0
    for _ in range(40):
        x = _vec(rng, 1.2)
        s = rng.uniform(-1.5, 1.5)
        res = max(
            res,
            _matrix_residual(
                group.exp_algebra(x, -s), group.exp_algebra(x, s).inverse()
            ),
        )
    rec.add("exp_inverse", res, 1e-13)

    res = 0.0
    for _ in range(40):
        u = rng.uniform(-3.0, 3.0)
        s = rng.uniform(-2.0, 2.0)
        res = max(
            res,
            _matrix_residual(
                group.exp_rotation(u, s), group.exp_algebra(u * E1, s)
            ),
        )
    rec.add("rotation_is_reeb_exponential", res, 1e-14)

    res = 0.0
    for _ in range(40):
        p = _group_point(rng)
        res = max(res, _matrix_residual(group.from_coords(group.iwasawa(p)), p))
        c = IwasawaCoords(
            rng.uniform(-3.0, 3.0), rng.uniform(0.2, 5.0), rng.uniform(-3.0, 3.0)
        )
        back = group.iwasawa(group.from_coords(c)).canonical()
        want = c.canonical()
        res = max(
            res,
            abs(back.x - want.x),
            abs(back.y - want.y),
            abs(back.theta - want.theta),
        )
    rec.add("iwasawa_roundtrip", res, 1e-10)

    c = group.iwasawa(GroupMatrix(2.0, 0.0, 0.0, 0.5))
    r1 = max(abs(c.x - 0.0), abs(c.y - 4.0), abs(c.theta - 0.0))
    c = group.iwasawa(GroupMatrix(1.0, 1.0, 1.0, 2.0))
    r2 = max(
        abs(c.x - 0.6), abs(c.y - 0.2), abs(c.theta - math.atan2(-1.0, 2.0))
    )
    rec.add("iwasawa_pinned_values", max(r1, r2), 1e-15)

    res = 0.0
    for _ in range(40):
        p = _group_point(rng)
        h = group.hopf_project(p)
        m = group.mobius(p, HyperbolicPoint(0.0, 1.0))
        res = max(res, abs(h.x - m.x), abs(h.y - m.y))
    rec.add("projection_is_mobius_of_i", res, 1e-13)

    res = 0.0
    for _ in range(40):
        p, g = _group_point(rng), _group_point(rng)
        lhs = group.hopf_project(p @ g)
        rhs = group.mobius(p, group.hopf_project(g))
        res = max(res, abs(lhs.x - rhs.x), abs(lhs.y - rhs.y))
    rec.add("projection_equivariance", res, 1e-12)

    res = 0.0
    for _ in range(40):
        u, s, x = rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), _vec(rng)
        r = group.exp_rotation(u, s).array()
        conj = r @ x.matrix() @ np.linalg.inv(r)
        oracle = AlgebraVector.from_matrix(conj, atol=1e-8)
        res = max(res, (group.adjoint_rotation(u, s, x) - oracle).norm())
    rec.add("adjoint_rotation_conjugation", res, 1e-13)


# ---------------------------------------------------------------------------
# suite: flows
# ---------------------------------------------------------------------------


def _body_velocity(curve, s0: float, h: float = 1e-5) -> AlgebraVector:
    """Central-difference body velocity gamma^{-1} gamma' at s0."""
    plus = curve(s0 + h).array()
    minus = curve(s0 - h).array()
    here = curve(s0).array()
    deriv = np.linalg.inv(here) @ ((plus - minus) / (2.0 * h))
    return AlgebraVector.from_matrix(deriv, atol=1e-5)


def _check_flows(rec: _Recorder, rng: random.Random) -> None:
    res = 0.0
    for _ in range(40):
        x, q = _vec(rng), rng.uniform(-2.0, 2.0)
        s = rng.uniform(-2.0, 2.0)
        w = AlgebraVector(-x.c1, x.c2, x.c3)
        u = -2.0 * x.c1 - 0.5 * q
        got = flows.product_omega(w, u, s)
        want = flows.solve_reduced(q, x + (0.5 * q) * E1, s)
        res = max(res, (got - want).norm())
    rec.add("body_velocity_solves_reduced_law", res, 1e-13)

    res = 0.0
    for _ in range(12):
        x = _vec(rng)
        v = _body_velocity(lambda s: flows.geodesic(x, s), 0.0)
        res = max(res, (v - x).norm())
    rec.add("geodesic_initial_velocity", res, 1e-6)

    res = 0.0
    for _ in range(12):
        x, q = _vec(rng), rng.uniform(-2.0, 2.0)
        v = _body_velocity(lambda s: flows.magnetic(x, q, s), 0.0)
        res = max(res, (v - (x + (0.5 * q) * E1)).norm())
        v = _body_velocity(lambda s: flows.magnetic_from_velocity(x, q, s), 0.0)
        res = max(res, (v - x).norm())
    rec.add("magnetic_initial_velocity", res, 1e-6)

    res = 0.0
    for _ in range(12):
        coords = IwasawaCoords(
            rng.uniform(-2.0, 2.0), rng.uniform(0.3, 3.0), rng.uniform(-3.0, 3.0)
        )
        a, b, c = (rng.uniform(-2.0, 2.0) for _ in range(3))
        got = flows.coeffs_from_velocity(coords, a, b, c)
        c2t, s2t = math.cos(2.0 * coords.theta), math.sin(2.0 * coords.theta)
        p = got.c2 * c2t - got.c3 * s2t
        r = got.c2 * s2t + got.c3 * c2t
        res = max(
            res,
            abs(2.0 * coords.y * p - a),
            abs(2.0 * coords.y * r - b),
            abs(got.c1 - p - c),
        )
    rec.add("velocity_coefficients_invert", res, 1e-13)

    res_speed = res_slant = res_det = 0.0
    for _ in range(10):
        x, q = _vec(rng), rng.uniform(-2.0, 2.0)
        path = flows.sample_magnetic(x, q, 0.0, 2.0, 257)
        res_speed = max(res_speed, flows.speed_drift(path))
        res_slant = max(res_slant, flows.contact_angle_drift(path))
        res_det = max(res_det, flows.det_drift(path))
    rec.add("sampled_speed_drift", res_speed, 1e-13)
    rec.add("sampled_contact_angle_drift", res_slant, 1e-13)
    rec.add("sampled_det_drift", res_det, 1e-12)

    res = 0.0
    for _ in range(4):
        x = AlgebraVector(
            rng.uniform(-1.0, 1.0), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)
        )
        q = rng.uniform(-1.0, 1.0)
        path = flows.sample_magnetic(x, q, 0.0, 1.0, 40001)
        res = max(res, flows.lorentz_residual(path, q))
    rec.add("lorentz_force_law", res, 1e-6)

    res6 = res4 = res2 = 0.0
    for _ in range(3):
        x, q = _vec(rng, 1.0), rng.uniform(-1.0, 1.0)
        spec = flows.TrajectorySpec(x0=x, q=q, s_min=0.0, s_max=2.0, n_samples=2001)
        exact = flows.sample_magnetic(
            x - (0.5 * q) * E1, q, 0.0, 2.0, 2001
        )
        scale = max(1.0, float(np.abs(exact.entries).max()))
        num = flows.reconstruct(spec, method="magnus6")
        res6 = max(res6, float(np.abs(num.entries - exact.entries).max()) / scale)
        num = flows.reconstruct(spec, method="magnus4")
        res4 = max(res4, float(np.abs(num.entries - exact.entries).max()) / scale)
        num = flows.reconstruct(spec, method="midpoint")
        res2 = max(res2, float(np.abs(num.entries - exact.entries).max()) / scale)
    rec.add("reconstruct_magnus6", res6, 1e-10)
    rec.add("reconstruct_magnus4", res4, 1e-8)
    rec.add("reconstruct_midpoint", res2, 1e-4)


# ---------------------------------------------------------------------------
# suite: special
# ---------------------------------------------------------------------------


def _check_special(rec: _Recorder, rng: random.Random) -> None:
    bad = 0
    for _ in range(40):
        a = rng.uniform(0.2, 2.0) * rng.choice([-1.0, 1.0])
        b = rng.uniform(0.2, 2.0) * rng.choice([-1.0, 1.0])
        c = rng.uniform(-2.0, 2.0)
        if special.classify_one_param(AlgebraVector(a, 0.0, 0.0)).kind is not (
            special.GeodesicKind.FIBER
        ):
            bad += 1
        if special.classify_one_param(AlgebraVector(0.0, b, c)).kind is not (
            special.GeodesicKind.SYMMETRIC
        ):
            bad += 1
        if special.classify_one_param(AlgebraVector(a, b, c)).kind is not (
            special.GeodesicKind.NOT_GEODESIC
        ):
            bad += 1
    rec.add("classification_kinds", float(bad), 0.5)

    rec.add(
        "sym_basis_roundtrip",
        max(
            (special.from_sym_basis(*special.to_sym_basis(v)) - v).norm()
            for v in (_vec(rng) for _ in range(40))
        ),
        1e-14,
    )

    res = 0.0
    for _ in range(25):
        x = AlgebraVector(0.0, rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2))
        if x.norm() < 0.1:
            continue
        s = rng.uniform(-1.0, 1.0)
        res = max(
            res,
            _normalized_matrix_residual(
                group.exp_algebra(x, s), group.from_coords(special.one_param_coords(x, s))
            ),
        )
        xf = AlgebraVector(rng.uniform(0.2, 2.0), 0.0, 0.0)
        res = max(
            res,
            _matrix_residual(
                group.exp_algebra(xf, s),
                group.from_coords(special.one_param_coords(xf, s)),
            ),
        )
    rec.add("one_param_coordinates", res, 1e-9)

    res = 0.0
    for _ in range(25):
        x = AlgebraVector(0.0, rng.uniform(0.3, 1.2), rng.uniform(-1.2, 1.2))
        locus = special.projected_locus(x)
        if not isinstance(locus, special.Circle):
            res = max(res, 1.0)
            continue
        for s in (-1.0, -0.3, 0.0, 0.4, 1.1):
            pt = group.hopf_project(group.exp_algebra(x, s))
            member = (pt.x - locus.center_x) ** 2 + pt.y**2 - locus.radius**2
            res = max(res, abs(member) / locus.radius**2)
    rec.add("projected_circle_membership", res, 1e-9)

    res = 0.0
    for _ in range(10):
        c = rng.uniform(0.2, 1.2) * rng.choice([-1.0, 1.0])
        x = AlgebraVector(0.0, 0.0, c)
        if not isinstance(special.projected_locus(x), special.VerticalLine):
            res = max(res, 1.0)
        for s in (-0.8, 0.5):
            co = special.one_param_coords(x, s)
            res = max(res, abs(co.x), abs(co.y - math.exp(2.0 * c * s)))
        xf = AlgebraVector(rng.uniform(0.3, 2.0), 0.0, 0.0)
        if not isinstance(special.projected_locus(xf), special.FiberPoint):
            res = max(res, 1.0)
        pt = group.hopf_project(group.exp_algebra(xf, 0.7))
        res = max(res, abs(pt.x), abs(pt.y - 1.0))
    rec.add("degenerate_loci", res, 1e-12)

    d = special.deform(-7.0)
    res = max(
        abs(d.metric_scale - 1.0),
        abs(d.eta_weight),
        abs(d.geo_k_scale + 1.0),
        abs(d.reeb_k_rate - 2.0),
    )
    for _ in range(10):
        x, q = _vec(rng), rng.uniform(-2.0, 2.0)
        s = rng.uniform(-1.5, 1.5)
        res = max(
            res,
            _matrix_residual(special.deformed_geodesic(-7.0, x, s), flows.geodesic(x, s)),
            _matrix_residual(
                special.deformed_magnetic(-7.0, x, q, s), flows.magnetic(x, q, s)
            ),
        )
    rec.add("deformation_identity_at_minus_7", res, 0.0)

    d = special.deform(-4.0)
    rec.add(
        "deformation_coefficients_at_minus_4",
        max(
            abs(d.metric_scale - 4.0),
            abs(d.eta_weight - 12.0),
            abs(d.geo_k_scale + 4.0),
            abs(d.reeb_k_rate - 5.0),
        ),
        0.0,
    )

    res = 0.0
    for c in (-5.0, -4.0):
        x = AlgebraVector(
            rng.uniform(-0.6, 0.6), rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)
        )
        q = rng.uniform(-0.8, 0.8)
        path = special.sample_deformed_geodesic(c, x, 0.0, 1.0, 40001)
        res = max(res, special.deformed_residual(path, c))
        path = special.sample_deformed_magnetic(c, x, q, 0.0, 1.0, 40001)
        res = max(res, special.deformed_residual(path, c, q))
    rec.add("deformed_rotation_law", res, 1e-6)

    res = 0.0
    for _ in range(20):
        c = rng.uniform(-9.0, -3.5)
        x = _vec(rng)
        pair = special.deformed_reductive_pair(c, x)
        res = max(res, abs(pair.k_part + (c - 1.0) / 4.0 * pair.g_part.c1))
    rec.add("deformed_pair_membership", res, 1e-13)


_SUITE_RUNNERS = {
    "algebra": _check_algebra,
    "group": _check_group,
    "flows": _check_flows,
    "special": _check_special,
}


def run_all(tol_scale: float = 1.0, seed: int = 0) -> list[CheckResult]:
    """Run every suite and return the full list of :class:`CheckResult`.

    ``tol_scale`` multiplies every pinned tolerance (for loose hardware or
    debugging); ``seed`` fixes the pseudo-random draws.
    """
    if not tol_scale > 0.0:
        raise ValueError(f"tolerance scale must be positive, got {tol_scale}")
    results: list[CheckResult] = []
    for offset, suite in enumerate(SUITES):
        rec = _Recorder(suite, tol_scale, results)
        _SUITE_RUNNERS[suite](rec, random.Random(seed + offset))
    return results
