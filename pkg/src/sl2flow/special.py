"""One-parameter subgroups that are geodesics, their projected loci in the
hyperbolic plane, and the D-homothetic deformation of the contact metric
structure.

The classification is sharpest in the symmetrized basis

    a = (A + B)/sqrt(2),   b = (B - A)/sqrt(2),   c = C,

where exp(sX) is a geodesic iff either a = b (equivalently A = 0, the
curve then projects to a circle or vertical line) or a = -b != 0 with
c = 0 (X along the Reeb direction, the curve stays in the fiber).

Deforming the structure by eta -> a eta, g -> a g + a(a-1) eta (x) eta with
a = -4/(c+3) realizes every constant phi-sectional curvature c < -3; the
deformed geodesics and magnetic trajectories remain two-factor products
with rescaled exponents.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Union

from .algebra import AlgebraVector
from .flows import SampledPath, product_curve, sample_product_curve
from .group import GroupMatrix, IwasawaCoords

_SQRT2 = math.sqrt(2.0)


class GeodesicKind(Enum):
    """Outcome of :func:`classify_one_param`."""

    SYMMETRIC = "SymmetricGeodesic"
    FIBER = "FiberGeodesic"
    NOT_GEODESIC = "NotGeodesic"


def to_sym_basis(x: AlgebraVector) -> tuple[float, float, float]:
    """Coefficients (a, b, c) of X in the symmetrized basis."""
    return (
        (x.c1 + x.c2) / _SQRT2,
        (x.c2 - x.c1) / _SQRT2,
        x.c3,
    )


def from_sym_basis(a: float, b: float, c: float) -> AlgebraVector:
    """Inverse of :func:`to_sym_basis`."""
    return AlgebraVector((a - b) / _SQRT2, (a + b) / _SQRT2, c)


@dataclass(frozen=True)
class OneParamClass:
    """Classification of exp(sX): kind, symmetrized coefficients, delta.

    ``delta`` = sqrt(c^2 + 2 b^2) is the exponential rate of the symmetric
    case (it is reported for every kind).
    """

    kind: GeodesicKind
    abc: tuple[float, float, float]
    delta: float


def classify_one_param(x: AlgebraVector, rtol: float = 1e-12) -> OneParamClass:
    """Decide whether the one-parameter subgroup of X is a geodesic.

    Tolerances are relative to |X|; X must be nonzero.
    """
    scale = x.norm()
    if not scale > 0.0:
        raise ValueError("cannot classify the zero vector")
    a, b, c = to_sym_basis(x)
    delta = math.sqrt(c * c + 2.0 * b * b)
    tol = rtol * scale
    if abs(x.c2) <= tol and abs(x.c3) <= tol:
        kind = GeodesicKind.FIBER
    elif abs(x.c1) <= tol:
        kind = GeodesicKind.SYMMETRIC
    else:
        kind = GeodesicKind.NOT_GEODESIC
    return OneParamClass(kind=kind, abc=(a, b, c), delta=delta)


def one_param_coords(x: AlgebraVector, s: float) -> IwasawaCoords:
    """Iwasawa coordinates of exp(sX) for a geodesic one-parameter subgroup.

    Symmetric case (a = b, delta = sqrt(c^2 + 2b^2)):

        x(s) = sqrt(2) b sinh(2 delta s) / D(s),   y(s) = delta / D(s),
        theta(s) = atan2(-sqrt(2) b sinh(delta s),
                         delta cosh(delta s) - c sinh(delta s)),

    with D(s) = delta cosh(2 delta s) - c sinh(2 delta s) > 0; for b = 0
    this collapses to the vertical ray (0, e^{2cs}, 0).  Fiber case:
    (0, 1, A s).  Raises ValueError for non-geodesic generators.  The
    angle is the continuous branch (theta stays in (-pi/2, pi/2) in the
    symmetric case and is unbounded along the fiber).
    """
    cls = classify_one_param(x)
    a, b, c = cls.abc
    if cls.kind is GeodesicKind.FIBER:
        return IwasawaCoords(0.0, 1.0, x.c1 * s)
    if cls.kind is GeodesicKind.NOT_GEODESIC:
        raise ValueError("exp(sX) is not a geodesic for this X")
    delta = cls.delta
    big = delta * math.cosh(2.0 * delta * s) - c * math.sinh(2.0 * delta * s)
    xx = _SQRT2 * b * math.sinh(2.0 * delta * s) / big
    yy = delta / big
    th = math.atan2(
        -_SQRT2 * b * math.sinh(delta * s),
        delta * math.cosh(delta * s) - c * math.sinh(delta * s),
    )
    return IwasawaCoords(xx, yy, th)


class Circle(NamedTuple):
    """Euclidean circle (center on the real axis) traced in the half-plane."""

    center_x: float
    radius: float


class VerticalLine(NamedTuple):
    """The vertical ray x = 0 in the half-plane."""


class FiberPoint(NamedTuple):
    """The single base point (0, 1) under a fiber geodesic."""

    x: float = 0.0
    y: float = 1.0


ProjectedLocus = Union[Circle, VerticalLine, FiberPoint]


def projected_locus(x: AlgebraVector) -> ProjectedLocus:
    """Base locus of the geodesic exp(sX) in the hyperbolic plane.

    Symmetric generators project onto the circle of center c/(sqrt(2) b)
    and radius delta/(sqrt(2)|b|) (a vertical line when b = 0); fiber
    generators stay over (0, 1).  Raises ValueError for non-geodesics.
    """
    cls = classify_one_param(x)
    a, b, c = cls.abc
    if cls.kind is GeodesicKind.FIBER:
        return FiberPoint()
    if cls.kind is GeodesicKind.NOT_GEODESIC:
        raise ValueError("exp(sX) is not a geodesic for this X")
    if b == 0.0:
        return VerticalLine()
    return Circle(center_x=c / (_SQRT2 * b), radius=cls.delta / (_SQRT2 * abs(b)))


# ---------------------------------------------------------------------------
# D-homothetic deformation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DeformedStructure:
    """Contact metric structure of constant phi-sectional curvature c < -3.

    Obtained from the standard structure by the D-homothetic deformation
    eta -> a eta, xi -> xi/a, g -> a g + a(a - 1) eta (x) eta with
    a = ``metric_scale`` = -4/(c+3) > 0.  The remaining coefficients drive
    the deformed flows:

      * ``eta_weight``  = a(a-1), the eta (x) eta weight in the metric;
      * ``geo_k_scale`` = 4/(c+3), the e1-rescaling of the exp(sW) factor
        of a deformed geodesic;
      * ``reeb_k_rate`` = (c-1)/(c+3), the fiber rate multiplier (the
        deformed geodesic of X rotates its transverse plane at
        2 (c-1) A / (c+3)).

    The undeformed structure is c = -7 (all four coefficients exact).
    """

    c: float
    metric_scale: float = field(init=False)
    eta_weight: float = field(init=False)
    geo_k_scale: float = field(init=False)
    reeb_k_rate: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", float(self.c))
        if not self.c < -3.0:
            raise ValueError(
                f"phi-sectional curvature must be below -3, got {self.c}"
            )
        a = -4.0 / (self.c + 3.0)
        object.__setattr__(self, "metric_scale", a)
        object.__setattr__(self, "eta_weight", a * (a - 1.0))
        object.__setattr__(self, "geo_k_scale", 4.0 / (self.c + 3.0))
        object.__setattr__(self, "reeb_k_rate", (self.c - 1.0) / (self.c + 3.0))


def deform(c: float) -> DeformedStructure:
    """The deformed structure with phi-sectional curvature c."""
    return DeformedStructure(c)


class DeformedPair(NamedTuple):
    """Reductive data of a deformed geodesic: membership is
    k_part = -((c - 1)/4) * g_part.c1 (c = -7 recovers the undeformed rule)."""

    g_part: AlgebraVector
    k_part: float


def _deformed_w(d: DeformedStructure, x: AlgebraVector) -> AlgebraVector:
    return AlgebraVector(d.geo_k_scale * x.c1, x.c2, x.c3)


def deformed_reductive_pair(c: float, x: AlgebraVector) -> DeformedPair:
    """The pair (W, k) generating the deformed geodesic of velocity x."""
    d = deform(c)
    return DeformedPair(_deformed_w(d, x), -d.reeb_k_rate * x.c1)


def deformed_geodesic(c: float, x: AlgebraVector, s: float) -> GroupMatrix:
    """Geodesic of the deformed metric through the identity with velocity x:

    gamma(s) = exp(s (4A/(c+3), B, C)) exp(s ((c-1)/(c+3)) A e1).
    """
    d = deform(c)
    return product_curve(_deformed_w(d, x), -d.reeb_k_rate * x.c1, s)


def deformed_magnetic(
    c: float, x: AlgebraVector, q: float, s: float
) -> GroupMatrix:
    """Magnetic trajectory of charge q in the deformed structure.

    The charge enters through the deformed Reeb vector xi/a = -((c+3)/4) e1,
    turning the fiber exponent of the deformed geodesic by q (c+3)/8; at
    c = -7 this is the undeformed magnetic trajectory (entrywise: every
    coefficient is then a power of two).
    """
    d = deform(c)
    u = -d.reeb_k_rate * x.c1 + q * (c + 3.0) / 8.0
    return product_curve(_deformed_w(d, x), u, s)


def deformed_rotation_rate(c: float, a: float) -> float:
    """Transverse-plane rotation rate 2 (c-1) a / (c+3) of a deformed geodesic
    whose body velocity has e1-component ``a``."""
    return 2.0 * (c - 1.0) * a / (c + 3.0)


def deformed_residual(path: SampledPath, c: float, q: float = 0.0) -> float:
    """Finite-difference defect of the deformed reduced law along a path.

    The body velocity of a deformed trajectory of charge q rotates its
    (B, C)-plane at rate 2 (c-1) A_Omega / (c+3) - q.  Evaluated with
    :func:`flows.rotation_residual`; carries the same O(h^2) floor.
    """
    from .flows import rotation_residual

    rate = deformed_rotation_rate(c, path.omega[:, 0]) - q
    return rotation_residual(path, rate)


def sample_deformed_geodesic(
    c: float,
    x: AlgebraVector,
    s_min: float = 0.0,
    s_max: float = 1.0,
    n_samples: int = 1001,
) -> SampledPath:
    """Sampled deformed geodesic with initial velocity x."""
    d = deform(c)
    return sample_product_curve(
        _deformed_w(d, x), -d.reeb_k_rate * x.c1, s_min, s_max, n_samples
    )


def sample_deformed_magnetic(
    c: float,
    x: AlgebraVector,
    q: float = 0.0,
    s_min: float = 0.0,
    s_max: float = 1.0,
    n_samples: int = 1001,
) -> SampledPath:
    """Sampled deformed magnetic trajectory of charge q."""
    d = deform(c)
    u = -d.reeb_k_rate * x.c1 + q * (c + 3.0) / 8.0
    return sample_product_curve(_deformed_w(d, x), u, s_min, s_max, n_samples)
