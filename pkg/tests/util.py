"""Shared oracles and hypothesis strategies for the test suite.

Every oracle recomputes a quantity from first principles -- power series,
matrix commutators, trace forms, explicit triple products -- without calling
the closed forms under test, so agreement is evidence rather than tautology.
"""

from __future__ import annotations

import math

import numpy as np
from hypothesis import strategies as st

from sl2flow.algebra import FRAME, AlgebraVector

# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


def series_exp(x: AlgebraVector, s: float = 1.0, terms: int = 28) -> np.ndarray:
    """Truncated power series sum (sX)^k / k! as a 2x2 array."""
    m = s * x.matrix()
    acc = np.eye(2)
    term = np.eye(2)
    for k in range(1, terms):
        term = term @ m / k
        acc = acc + term
    return acc


def commutator_bracket(x: AlgebraVector, y: AlgebraVector) -> AlgebraVector:
    """[X, Y] computed as a matrix commutator."""
    m = x.matrix() @ y.matrix() - y.matrix() @ x.matrix()
    return AlgebraVector.from_matrix(m, atol=1e-9)


def trace_inner(x: AlgebraVector, y: AlgebraVector) -> float:
    """Riemannian metric as the trace form (1/2) tr(X^T Y)."""
    return 0.5 * float(np.trace(x.matrix().T @ y.matrix()))


def trace_killing(x: AlgebraVector, y: AlgebraVector) -> float:
    """Normalized Killing form (1/2) tr(XY)."""
    return 0.5 * float(np.trace(x.matrix() @ y.matrix()))


def defining_u(x: AlgebraVector, y: AlgebraVector) -> AlgebraVector:
    """U(X,Y) solved from 2<U(X,Y),Z> = -<X,[Y,Z]> + <Y,[Z,X]> on the frame."""
    comps = []
    for e in FRAME:
        lhs = -trace_inner(x, commutator_bracket(y, e)) + trace_inner(
            y, commutator_bracket(e, x)
        )
        comps.append(0.5 * lhs)
    return AlgebraVector(*comps)


def nak_product(x: float, y: float, theta: float) -> np.ndarray:
    """Explicit N(x) A(y) K(theta) product of the Iwasawa factors."""
    n = np.array([[1.0, x], [0.0, 1.0]])
    a = np.array([[math.sqrt(y), 0.0], [0.0, 1.0 / math.sqrt(y)]])
    k = np.array(
        [
            [math.cos(theta), math.sin(theta)],
            [-math.sin(theta), math.cos(theta)],
        ]
    )
    return n @ a @ k


def conjugate_vector(p: np.ndarray, x: AlgebraVector) -> AlgebraVector:
    """Ad(p) X = p X p^{-1} computed with explicit matrices."""
    m = p @ x.matrix() @ np.linalg.inv(p)
    return AlgebraVector.from_matrix(m, atol=1e-8)


def body_velocity(curve, s0: float, h: float = 1e-5) -> AlgebraVector:
    """Central-difference body velocity gamma^{-1} gamma' at s0.

    ``curve`` maps a parameter to a GroupMatrix; truncation is O(h^2).
    """
    plus = curve(s0 + h).array()
    minus = curve(s0 - h).array()
    here = curve(s0).array()
    deriv = np.linalg.inv(here) @ ((plus - minus) / (2.0 * h))
    return AlgebraVector.from_matrix(deriv, atol=1e-4)


def angle_gap(a: float, b: float) -> float:
    """Distance between two angles modulo 2 pi."""
    return abs(math.remainder(a - b, 2.0 * math.pi))


def max_entry_gap(p, q) -> float:
    """Largest entrywise difference between two GroupMatrix values."""
    return max(
        abs(p.p11 - q.p11), abs(p.p12 - q.p12), abs(p.p21 - q.p21), abs(p.p22 - q.p22)
    )


# ---------------------------------------------------------------------------
# strategies
# ---------------------------------------------------------------------------


def component(bound: float = 2.0):
    return st.floats(
        min_value=-bound, max_value=bound, allow_nan=False, allow_infinity=False
    )


def vectors(bound: float = 2.0):
    """Arbitrary algebra vectors with components in [-bound, bound]."""
    return st.builds(AlgebraVector, component(bound), component(bound), component(bound))


def nonzero_vectors(bound: float = 2.0, floor: float = 0.1):
    """Vectors bounded away from zero (norm >= floor)."""
    return vectors(bound).filter(lambda v: v.norm() >= floor)


def symmetric_vectors(bound: float = 1.2, floor: float = 0.1):
    """Vectors orthogonal to the Reeb direction, bounded away from zero."""
    return st.builds(
        lambda b, c: AlgebraVector(0.0, b, c), component(bound), component(bound)
    ).filter(lambda v: v.norm() >= floor)


def fiber_vectors(bound: float = 2.0, floor: float = 0.05):
    """Nonzero multiples of the Reeb vector."""
    return st.builds(
        lambda mag, sign: AlgebraVector(mag * sign, 0.0, 0.0),
        st.floats(min_value=floor, max_value=bound),
        st.sampled_from([-1.0, 1.0]),
    )


def parameters(bound: float = 2.0):
    return st.floats(
        min_value=-bound, max_value=bound, allow_nan=False, allow_infinity=False
    )
