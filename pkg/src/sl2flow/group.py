"""The group SL(2,R): matrices, exponential, Iwasawa coordinates, and the
isometric action on the hyperbolic plane.

Iwasawa coordinates (x, y, theta) with y > 0 realize SL(2,R) as the unit
tangent bundle of the upper half-plane H^2(-4): a matrix factors uniquely
as p = n(x) a(y) k(theta) with

    n(x) = [[1, x], [0, 1]],  a(y) = [[sqrt(y), 0], [0, 1/sqrt(y)]],
    k(theta) = [[cos theta, sin theta], [-sin theta, cos theta]],

and theta is the fiber angle over the base point x + i y.  The bundle
projection composed with the Moebius action recovers the base point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._fp import det2
from .algebra import AlgebraVector

#: absolute determinant tolerance for well-scaled matrices
DET_ATOL = 1e-9

#: series switch-over for the exponential branch functions
_BRANCH_EPS = 1e-8

_EPS =2.220446049250313e-16  # float64 machine epsilon


def _det_tolerance(scale: float) -> float:
    """Determinant tolerance adapted to entry scale.

    The determinant of a stored float64 matrix is only defined to about
    scale^2 * eps absolutely, so for large entries the unit-determinant
    check must widen accordingly.
    """
    return max(DET_ATOL, 64.0 * _EPS * scale * scale)


@dataclass(frozen=True)
class GroupMatrix:
    """Element of SL(2,R) with rows (p11, p12), (p21, p22).

    The determinant must equal 1 within a scale-aware tolerance; when it is
    within ``DET_ATOL`` of 1 the entries are renormalized by det^(-1/2) so
    stored matrices sit on the group to working precision.  The second row
    must be nonzero (automatic for true group elements; guards degenerate
    input before Iwasawa factorization).
    """

    p11: float
    p12: float
    p21: float
    p22: float

    def __post_init__(self) -> None:
        e = [float(self.p11), float(self.p12), float(self.p21), float(self.p22)]
        d = det2(*e)
        scale = max(abs(v) for v in e)
        if not abs(d - 1.0) <= _det_tolerance(scale):
            # d <= 0 always lands here for well-scaled entries
            raise ValueError(f"matrix is not in SL(2,R): det = {d} differs from 1")
        if abs(d - 1.0) <= DET_ATOL and d != 1.0:
            r = 1.0 / math.sqrt(d)
            e = [v * r for v in e]
        if e[2] == 0.0 and e[3] == 0.0:
            raise ValueError("second row is zero")
        for name, v in zip(("p11", "p12", "p21", "p22"), e):
            object.__setattr__(self, name, v)

    # -- constructors ------------------------------------------------------
    @classmethod
    def identity(cls) -> "GroupMatrix":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_array(cls, m) -> "GroupMatrix":
        m = np.asarray(m, dtype=float)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    # -- conversions and algebra --------------------------------------------
    def array(self) -> np.ndarray:
        return np.array([[self.p11, self.p12], [self.p21, self.p22]])

    @property
    def det(self) -> float:
        """Compensated determinant of the stored entries."""
        return det2(self.p11, self.p12, self.p21, self.p22)

    def __matmul__(self, other: "GroupMatrix") -> "GroupMatrix":
        return GroupMatrix(
            self.p11 * other.p11 + self.p12 * other.p21,
            self.p11 * other.p12 + self.p12 * other.p22,
            self.p21 * other.p11 + self.p22 * other.p21,
            self.p21 * other.p12 + self.p22 * other.p22,
        )

    def inverse(self) -> "GroupMatrix":
        return GroupMatrix(self.p22, -self.p12, -self.p21, self.p11)

    def isclose(self, other: "GroupMatrix", atol: float = 1e-12) -> bool:
        return (
            abs(self.p11 - other.p11) <= atol
            and abs(self.p12 - other.p12) <= atol
            and abs(self.p21 - other.p21) <= atol
            and abs(self.p22 - other.p22) <= atol
        )


@dataclass(frozen=True)
class IwasawaCoords:
    """Unit-tangent-bundle coordinates (x, y, theta), y > 0.

    ``theta`` is stored as given (callers may carry an unwrapped angle);
    :meth:`canonical` reduces it to (-pi, pi].
    """

    x: float
    y: float
    theta: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "theta", float(self.theta))
        if not self.y > 0.0:
            raise ValueError(f"y must be positive, got {self.y}")

    def canonical(self) -> "IwasawaCoords":
        """Same point with theta reduced to the interval (-pi, pi]."""
        t = math.remainder(self.theta, 2.0 * math.pi)
        if t <= -math.pi:
            t += 2.0 * math.pi
        return IwasawaCoords(self.x, self.y, t)

    def base_point(self) -> "HyperbolicPoint":
        return HyperbolicPoint(self.x, self.y)


@dataclass(frozen=True)
class HyperbolicPoint:
    """Point x + i y of the upper half-plane, y > 0."""

    x: float
    y: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not self.y > 0.0:
            raise ValueError(f"y must be positive, got {self.y}")

    def complex(self) -> complex:
        return complex(self.x, self.y)


def _branch_cf(d: float) -> tuple[float, float]:
    """The entire functions c(d) = cos(sqrt(d)) and f(d) = sin(sqrt(d))/sqrt(d).

    For d < 0 these continue to cosh/sinh of sqrt(-d).  Near d = 0 a Taylor
    expansion avoids the 0/0 in f.
    """
    if abs(d) <= _BRANCH_EPS:
        c = 1.0 - d * (0.5 - d * (1.0 / 24.0 - d / 720.0))
        f = 1.0 - d * (1.0 / 6.0 - d * (1.0 / 120.0 - d / 5040.0))
        return c, f
    if d > 0.0:
        r = math.sqrt(d)
        return math.cos(r), math.sin(r) / r
    r = math.sqrt(-d)
    return math.cosh(r), math.sinh(r) / r


def exp_algebra(x: AlgebraVector, s: float = 1.0) -> GroupMatrix:
    """Group exponential exp(s X).

    With k = B(X,X) = -c1^2 + c2^2 + c3^2 (the normalized Killing square),
    exp(sX) = c(-s^2 k) I + s f(-s^2 k) X: trigonometric for elliptic X
    (k < 0), polynomial for nilpotent X (k = 0), hyperbolic for k > 0.
    """
    a, b, c = x.c1, x.c2, x.c3
    d = (s * s) * (a * a - b * b - c * c)
    cf, ff = _branch_cf(d)
    sa, sb, sc = s * a, s * b, s * c
    return GroupMatrix(
        cf + ff * sc,
        ff * (sa + sb),
        ff * (sb - sa),
        cf - ff * sc,
    )


def exp_rotation(u: float, s: float = 1.0) -> GroupMatrix:
    """exp(s u e1) = [[cos(su), sin(su)], [-sin(su), cos(su)]], the fiber rotation."""
    c, sn = math.cos(u * s), math.sin(u * s)
    return GroupMatrix(c, sn, -sn, c)


def iwasawa(p: GroupMatrix) -> IwasawaCoords:
    """Iwasawa factorization p = n(x) a(y) k(theta) with theta in (-pi, pi]."""
    den = p.p21 * p.p21 + p.p22 * p.p22
    if den == 0.0:
        raise ValueError("second row is zero; matrix is not invertible")
    x = (p.p11 * p.p21 + p.p12 * p.p22) / den
    y = 1.0 / den
    theta = math.atan2(-p.p21, p.p22)
    if theta <= -math.pi:
        theta = math.pi
    return IwasawaCoords(x, y, theta)


def from_coords(c: IwasawaCoords) -> GroupMatrix:
    """Inverse of :func:`iwasawa`: assemble n(x) a(y) k(theta)."""
    rt = math.sqrt(c.y)
    ct, st = math.cos(c.theta), math.sin(c.theta)
    return GroupMatrix(
        rt * ct - (c.x / rt) * st,
        rt * st + (c.x / rt) * ct,
        -st / rt,
        ct / rt,
    )


def adjoint_rotation(u: float, s: float, x: AlgebraVector) -> AlgebraVector:
    """Ad(exp(s u e1)) X: rotates the (c2, c3)-plane by angle 2 u s, fixes c1."""
    c, sn = math.cos(2.0 * u * s), math.sin(2.0 * u * s)
    return AlgebraVector(
        x.c1,
        x.c2 * c - x.c3 * sn,
        x.c2 * sn + x.c3 * c,
    )


def mobius(p: GroupMatrix, z: HyperbolicPoint) -> HyperbolicPoint:
    """Moebius action (p, z) -> (p11 z + p12) / (p21 z + p22) on the half-plane."""
    w = (p.p11 * z.complex() + p.p12) / (p.p21 * z.complex() + p.p22)
    return HyperbolicPoint(w.real, w.imag)


def hopf_project(p: GroupMatrix) -> HyperbolicPoint:
    """Bundle projection SL(2,R) -> H^2: p acting on i, i.e. the Iwasawa base point."""
    den = p.p21 * p.p21 + p.p22 * p.p22
    if den == 0.0:
        raise ValueError("second row is zero; matrix is not invertible")
    return HyperbolicPoint((p.p11 * p.p21 + p.p12 * p.p22) / den, 1.0 / den)
