"""The Lie algebra sl(2,R) with the structure tensors of SL(2,R)'s
standard left-invariant Sasakian metric.

Vectors are stored as coefficients (c1, c2, c3) in the metric-orthonormal
left-invariant frame

    e1 = E - F = [[0, 1], [-1, 0]]   (vertical / Reeb direction)
    e2 = E + F = [[0, 1], [ 1, 0]]
    e3 = H     = [[1, 0], [ 0,-1]]

with commutators [e1,e2] = 2 e3, [e2,e3] = -2 e1, [e3,e1] = 2 e2.  The
metric makes this frame orthonormal, i.e. <X,Y> = tr(transpose(X) Y) / 2;
the normalized Killing form B(X,Y) = tr(XY)/2 has signature (-,+,+) on it.

Everything here is a pure function on small immutable values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: default componentwise absolute tolerance for closeness tests
ATOL = 1e-12

#: relative tolerance for structural membership validation
_MEMBERSHIP_RTOL = 1e-9


@dataclass(frozen=True)
class AlgebraVector:
    """Element of sl(2,R) as frame coefficients (c1, c2, c3)."""

    c1: float
    c2: float
    c3: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "c1", float(self.c1))
        object.__setattr__(self, "c2", float(self.c2))
        object.__setattr__(self, "c3", float(self.c3))

    # -- linear structure ------------------------------------------------
    def __add__(self, other: "AlgebraVector") -> "AlgebraVector":
        return AlgebraVector(self.c1 + other.c1, self.c2 + other.c2, self.c3 + other.c3)

    def __sub__(self, other: "AlgebraVector") -> "AlgebraVector":
        return AlgebraVector(self.c1 - other.c1, self.c2 - other.c2, self.c3 - other.c3)

    def __neg__(self) -> "AlgebraVector":
        return AlgebraVector(-self.c1, -self.c2, -self.c3)

    def __mul__(self, t: float) -> "AlgebraVector":
        return AlgebraVector(self.c1 * t, self.c2 * t, self.c3 * t)

    __rmul__ = __mul__

    # -- conversions -----------------------------------------------------
    def components(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)

    def matrix(self) -> np.ndarray:
        """Traceless 2x2 matrix [[c3, c1+c2], [-c1+c2, -c3]]."""
        return np.array(
            [[self.c3, self.c1 + self.c2], [-self.c1 + self.c2, -self.c3]]
        )

    @classmethod
    def from_matrix(cls, m, atol: float = ATOL) -> "AlgebraVector":
        """Inverse of :meth:`matrix`; rejects non-traceless input."""
        m = np.asarray(m, dtype=float)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        scale = max(1.0, float(np.abs(m).max()))
        if abs(m[0, 0] + m[1, 1]) > atol * scale:
            raise ValueError(f"matrix is not traceless: trace = {m[0, 0] + m[1, 1]}")
        return cls((m[0, 1] - m[1, 0]) / 2.0, (m[0, 1] + m[1, 0]) / 2.0, m[0, 0])

    # -- metric helpers ----------------------------------------------------
    def norm(self) -> float:
        return math.sqrt(self.c1 * self.c1 + self.c2 * self.c2 + self.c3 * self.c3)

    def isclose(self, other: "AlgebraVector", atol: float = ATOL) -> bool:
        return (
            abs(self.c1 - other.c1) <= atol
            and abs(self.c2 - other.c2) <= atol
            and abs(self.c3 - other.c3) <= atol
        )


#: the orthonormal frame and the zero vector
E1 = AlgebraVector(1.0, 0.0, 0.0)
E2 = AlgebraVector(0.0, 1.0, 0.0)
E3 = AlgebraVector(0.0, 0.0, 1.0)
ZERO = AlgebraVector(0.0, 0.0, 0.0)
FRAME = (E1, E2, E3)


def bracket(x: AlgebraVector, y: AlgebraVector) -> AlgebraVector:
    """Lie bracket [X, Y], equal to the matrix commutator XY - YX."""
    return AlgebraVector(
        -2.0 * (x.c2 * y.c3 - x.c3 * y.c2),
        -2.0 * (x.c1 * y.c3 - x.c3 * y.c1),
        2.0 * (x.c1 * y.c2 - x.c2 * y.c1),
    )


def inner(x: AlgebraVector, y: AlgebraVector) -> float:
    """Riemannian inner product <X,Y> = tr(transpose(X) Y)/2 (frame-orthonormal)."""
    return x.c1 * y.c1 + x.c2 * y.c2 + x.c3 * y.c3


def killing(x: AlgebraVector, y: AlgebraVector) -> float:
    """Normalized Killing form B(X,Y) = tr(XY)/2, signature (-,+,+)."""
    return -x.c1 * y.c1 + x.c2 * y.c2 + x.c3 * y.c3


@dataclass(frozen=True)
class KMSplit:
    """Decomposition X = k_part + m_part into so(2) and symmetric parts."""

    k_part: AlgebraVector
    m_part: AlgebraVector


def split_km(x: AlgebraVector) -> KMSplit:
    """Split along g = k (+) m: k_part = (X - tX)/2, m_part = (X + tX)/2."""
    return KMSplit(AlgebraVector(x.c1, 0.0, 0.0), AlgebraVector(0.0, x.c2, x.c3))


def u_tensor(x: AlgebraVector, y: AlgebraVector) -> AlgebraVector:
    """Bi-invariance obstruction U(X,Y) = [X_k, Y_m] + [Y_k, X_m]."""
    sx = split_km(x)
    sy = split_km(y)
    return bracket(sx.k_part, sy.m_part) + bracket(sy.k_part, sx.m_part)


def u_tensor_defining(x: AlgebraVector, y: AlgebraVector) -> AlgebraVector:
    """U(X,Y) from its defining relation 2<U(X,Y),Z> = -<X,[Y,Z]> + <Y,[Z,X]>.

    Solved against the orthonormal frame; agrees with the bracket closed
    form of :func:`u_tensor` (checked by the verification suite).
    """
    comps = [
        0.5 * (-inner(x, bracket(y, e)) + inner(y, bracket(e, x))) for e in FRAME
    ]
    return AlgebraVector(*comps)


#: Levi-Civita connection on frame pairs, nabla_{e_i} e_j, as coefficient
#: triples indexed by (i, j) with i, j in {1, 2, 3}.
LEVI_CIVITA_TABLE: dict[tuple[int, int], tuple[float, float, float]] = {
    (1, 1): (0.0, 0.0, 0.0),
    (1, 2): (0.0, 0.0, 3.0),
    (1, 3): (0.0, -3.0, 0.0),
    (2, 1): (0.0, 0.0, 1.0),
    (2, 2): (0.0, 0.0, 0.0),
    (2, 3): (-1.0, 0.0, 0.0),
    (3, 1): (0.0, -1.0, 0.0),
    (3, 2): (1.0, 0.0, 0.0),
    (3, 3): (0.0, 0.0, 0.0),
}


def levi_civita(x: AlgebraVector, y: AlgebraVector) -> AlgebraVector:
    """Levi-Civita connection nabla_X Y = [X,Y]/2 + U(X,Y).

    Reproduces :data:`LEVI_CIVITA_TABLE` on frame pairs.
    """
    return 0.5 * bracket(x, y) + u_tensor(x, y)


def curvature(x: AlgebraVector, y: AlgebraVector, z: AlgebraVector) -> AlgebraVector:
    """Curvature R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z."""
    return (
        levi_civita(x, levi_civita(y, z))
        - levi_civita(y, levi_civita(x, z))
        - levi_civita(bracket(x, y), z)
    )


#: curvature on frame triples, R(e_i, e_j) e_k for i < j, as coefficient
#: triples indexed by (i, j, k); entries with i > j follow by antisymmetry
#: and i == j vanish (see :func:`curvature_table`).
CURVATURE_TABLE: dict[tuple[int, int, int], tuple[float, float, float]] = {
    (1, 2, 1): (0.0, -1.0, 0.0),
    (1, 2, 2): (1.0, 0.0, 0.0),
    (1, 2, 3): (0.0, 0.0, 0.0),
    (1, 3, 1): (0.0, 0.0, -1.0),
    (1, 3, 2): (0.0, 0.0, 0.0),
    (1, 3, 3): (1.0, 0.0, 0.0),
    (2, 3, 1): (0.0, 0.0, 0.0),
    (2, 3, 2): (0.0, 0.0, 7.0),
    (2, 3, 3): (0.0, -7.0, 0.0),
}


def curvature_table(i: int, j: int, k: int) -> AlgebraVector:
    """Tabulated R(e_i, e_j) e_k for any i, j, k in {1, 2, 3}."""
    if i == j:
        return ZERO
    if i < j:
        return AlgebraVector(*CURVATURE_TABLE[(i, j, k)])
    return -AlgebraVector(*CURVATURE_TABLE[(j, i, k)])


def contact_form(x: AlgebraVector) -> float:
    """Contact form eta(X): the e1-coefficient."""
    return x.c1


def reeb() -> AlgebraVector:
    """Reeb vector xi = e1."""
    return E1


def lorentz_force(x: AlgebraVector) -> AlgebraVector:
    """Lorentz force phi of the contact magnetic field F = d eta.

    phi e1 = 0, phi e2 = e3, phi e3 = -e2, extended linearly; satisfies
    phi^2 = -I + eta (x) xi.
    """
    return AlgebraVector(0.0, -x.c3, x.c2)


def curvature_sasakian(
    x: AlgebraVector, y: AlgebraVector, z: AlgebraVector
) -> AlgebraVector:
    """Curvature from the canonical Sasakian closed formula.

    R(X,Y)Z = -g(Y,Z)X + g(Z,X)Y
              - 2{ eta(Z)eta(X)Y - eta(Y)eta(Z)X
                   + g(Z,X)eta(Y)xi - g(Y,Z)eta(X)xi
                   - g(Y,phiZ)phiX - g(Z,phiX)phiY + 2 g(X,phiY)phiZ }.

    Agrees identically with :func:`curvature`.
    """
    xi = E1
    px, py, pz = lorentz_force(x), lorentz_force(y), lorentz_force(z)
    base = (-inner(y, z)) * x + inner(z, x) * y
    brace = (
        (contact_form(z) * contact_form(x)) * y
        - (contact_form(y) * contact_form(z)) * x
        + (inner(z, x) * contact_form(y)) * xi
        - (inner(y, z) * contact_form(x)) * xi
        - inner(y, pz) * px
        - inner(z, px) * py
        + (2.0 * inner(x, py)) * pz
    )
    return base - 2.0 * brace


def ricci(x: AlgebraVector, y: AlgebraVector) -> float:
    """Ricci tensor Ric(X,Y) = sum_k <R(e_k, X)Y, e_k>."""
    return sum(inner(curvature(e, x, y), e) for e in FRAME)


def ricci_principal() -> tuple[float, float, float]:
    """Principal Ricci curvatures (the frame diagonalizes Ricci)."""
    return (ricci(E1, E1), ricci(E2, E2), ricci(E3, E3))


def scalar_curvature() -> float:
    """Scalar curvature, the trace of Ricci over the frame."""
    return sum(ricci(e, e) for e in FRAME)


def inertia(x: AlgebraVector) -> AlgebraVector:
    """Moment of inertia I(X) = transpose(X): negates c1, fixes c2, c3."""
    return AlgebraVector(-x.c1, x.c2, x.c3)


def momentum(omega: AlgebraVector) -> AlgebraVector:
    """Momentum mu = I(Omega) of an angular velocity."""
    return inertia(omega)


@dataclass(frozen=True)
class ReductivePair:
    """Element of the reductive complement p = {(V + W, 2W)} in g (+) k.

    ``g_part`` lives in g; ``k_part`` is the e1-coefficient of the k-factor
    (k is one-dimensional).  Membership requires k_part to equal twice the
    e1-coefficient of ``g_part``.
    """

    g_part: AlgebraVector
    k_part: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "k_part", float(self.k_part))
        scale = max(1.0, self.g_part.norm(), abs(self.k_part))
        if abs(self.k_part - 2.0 * self.g_part.c1) > _MEMBERSHIP_RTOL * scale:
            raise ValueError(
                "not in the reductive complement: k_part must equal "
                f"2 * g_part.c1, got {self.k_part} vs {2.0 * self.g_part.c1}"
            )

    @classmethod
    def from_tangent(cls, x: AlgebraVector) -> "ReductivePair":
        """Identify a tangent vector X with (X_m - X_k, -2 X_k) in p."""
        return cls(AlgebraVector(-x.c1, x.c2, x.c3), -2.0 * x.c1)

    def tangent(self) -> AlgebraVector:
        """Inverse identification: the tangent vector this pair represents."""
        return AlgebraVector(-self.g_part.c1, self.g_part.c2, self.g_part.c3)


def project_reductive(g_vec: AlgebraVector, k_coeff: float) -> ReductivePair:
    """Project an element (Y, y) of g (+) k onto p along the diagonal copy of k.

    The split is (Y, y) = (Y_m + w e1, 2w) + (z e1, z) with w = y - Y.c1 and
    z = 2 Y.c1 - y.
    """
    w = k_coeff - g_vec.c1
    return ReductivePair(AlgebraVector(w, g_vec.c2, g_vec.c3), 2.0 * w)


def natred_defect(p1: ReductivePair, p2: ReductivePair, p3: ReductivePair) -> float:
    """Natural-reductivity defect <[X,Y]_p, Z> + <Y, [X,Z]_p> on p.

    Brackets are taken in the product algebra g (+) k (the k-factor is
    abelian), projected back to p along the diagonal copy of k; the inner
    product is pulled back through the tangent identification.  Vanishes
    identically on p.
    """
    b12 = project_reductive(bracket(p1.g_part, p2.g_part), 0.0)
    b13 = project_reductive(bracket(p1.g_part, p3.g_part), 0.0)
    return inner(b12.tangent(), p3.tangent()) + inner(p2.tangent(), b13.tangent())
