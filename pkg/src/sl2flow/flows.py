"""Geodesics and contact magnetic trajectories through the identity of
SL(2,R), their reduced (Euler-Arnold) dynamics, and sampled paths.

Trajectories with initial velocity X and charge q are products of two
one-parameter groups,

    gamma(s) = exp(s W) exp(-s u e1),

whose body velocity Omega(s) = gamma^-1 gamma' solves the magnetized
Euler-Arnold system

    A' = 0,   B' = (4A - q) C,   C' = -(4A - q) B

(components of Omega in the orthonormal frame; q = 0 is the geodesic
case).  :func:`reconstruct` solves the same reconstruction problem
numerically with a Lie-group integrator, which is the cross-check used by
the verification suite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._accel import integrate
from ._fp import det2_array
from .algebra import AlgebraVector, E1
from .group import (
    GroupMatrix,
    IwasawaCoords,
    adjoint_rotation,
    exp_algebra,
    exp_rotation,
)

_BRANCH_EPS = 1e-8
_DET_ATOL = 1e-9

#: recognized time-stepping schemes for :func:`reconstruct`
METHODS = {"magnus6": 6, "magnus4": 4, "midpoint": 2}


@dataclass(frozen=True)
class TrajectorySpec:
    """A reconstruction problem: initial body velocity, charge, sample grid.

    ``x0`` is the initial velocity Omega(0); the trajectory starts at the
    identity at parameter ``s_min`` and is sampled on ``n_samples`` evenly
    spaced points of [s_min, s_max].
    """

    x0: AlgebraVector
    q: float = 0.0
    s_min: float = 0.0
    s_max: float = 1.0
    n_samples: int = 1001

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", float(self.q))
        object.__setattr__(self, "s_min", float(self.s_min))
        object.__setattr__(self, "s_max", float(self.s_max))
        object.__setattr__(self, "n_samples", int(self.n_samples))
        if not self.x0.norm() > 0.0:
            raise ValueError("x0 must be nonzero")
        for name in ("q", "s_min", "s_max"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not self.s_min < self.s_max:
            raise ValueError(
                f"s_min must be less than s_max, got [{self.s_min}, {self.s_max}]"
            )
        if self.n_samples < 2:
            raise ValueError(f"n_samples must be at least 2, got {self.n_samples}")

    @property
    def step(self) -> float:
        return (self.s_max - self.s_min) / (self.n_samples - 1)


def solve_reduced(q: float, init: AlgebraVector, s: float) -> AlgebraVector:
    """Closed-form reduced solution at time s from initial velocity ``init``.

    A is constant and (B, C) rotates at rate w = 4A - q:
    B(s) = B0 cos(ws) + C0 sin(ws), C(s) = C0 cos(ws) - B0 sin(ws).
    """
    w = 4.0 * init.c1 - q
    cw, sw = math.cos(w * s), math.sin(w * s)
    return AlgebraVector(
        init.c1,
        init.c2 * cw + init.c3 * sw,
        init.c3 * cw - init.c2 * sw,
    )


def coeffs_from_velocity(
    coords: IwasawaCoords, xdot: float, ydot: float, thetadot: float
) -> AlgebraVector:
    """Frame components of a tangent vector given in coordinate velocities.

    At (x, y, theta) the left-invariant frame reads the velocity as
        A = thetadot + xdot/(2y),
        B = (xdot/(2y)) cos 2theta + (ydot/(2y)) sin 2theta,
        C = -(xdot/(2y)) sin 2theta + (ydot/(2y)) cos 2theta.
    """
    p = xdot / (2.0 * coords.y)
    r = ydot / (2.0 * coords.y)
    c2t, s2t = math.cos(2.0 * coords.theta), math.sin(2.0 * coords.theta)
    return AlgebraVector(thetadot + p, p * c2t + r * s2t, -p * s2t + r * c2t)


# ---------------------------------------------------------------------------
# closed-form trajectories
# ---------------------------------------------------------------------------


def product_curve(w: AlgebraVector, u: float, s: float) -> GroupMatrix:
    """The two-factor curve gamma(s) = exp(s w) exp(-s u e1)."""
    return exp_algebra(w, s) @ exp_rotation(-u, s)


def product_omega(w: AlgebraVector, u: float, s: float) -> AlgebraVector:
    """Body velocity of :func:`product_curve`: Ad(exp(s u e1)) w - u e1."""
    rotated = adjoint_rotation(u, s, w)
    return AlgebraVector(rotated.c1 - u, rotated.c2, rotated.c3)


def geodesic(x: AlgebraVector, s: float) -> GroupMatrix:
    """Geodesic through the identity with initial velocity x = (A, B, C):

    gamma(s) = exp(s (-A, B, C)) exp(2 s A e1).
    """
    w = AlgebraVector(-x.c1, x.c2, x.c3)
    return product_curve(w, -2.0 * x.c1, s)


def magnetic(x: AlgebraVector, q: float, s: float) -> GroupMatrix:
    """Contact magnetic trajectory of charge q attached to the geodesic of x.

    gamma(s) = exp(s (-A, B, C)) exp((2A + q/2) s e1); its initial velocity
    is x + (q/2) e1 (the Reeb shift of the underlying geodesic), so the
    charged and neutral curves share the exp(sW) factor.  Use
    :func:`magnetic_from_velocity` to prescribe the velocity itself.
    """
    w = AlgebraVector(-x.c1, x.c2, x.c3)
    return product_curve(w, -2.0 * x.c1 - 0.5 * q, s)


def magnetic_from_velocity(v: AlgebraVector, q: float, s: float) -> GroupMatrix:
    """Contact magnetic trajectory of charge q with initial velocity v."""
    return magnetic(v - (0.5 * q) * E1, q, s)


# ---------------------------------------------------------------------------
# sampled paths
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PathSample:
    """One sample of a path: parameter, matrix, coordinates, body velocity."""

    s: float
    matrix: GroupMatrix
    coords: IwasawaCoords
    omega: AlgebraVector
    theta_raw: float


@dataclass(frozen=True)
class SampledPath:
    """A trajectory sampled on an increasing parameter grid.

    Column arrays (read-only float64):
      * ``s``        -- (n,)  parameter values;
      * ``entries``  -- (n,4) matrix rows (p11, p12, p21, p22);
      * ``omega``    -- (n,3) body velocity components (A, B, C);
      * ``x, y``     -- (n,)  base-point coordinates;
      * ``theta``    -- (n,)  fiber angle, unwrapped to a continuous branch
        (valid when the grid resolves the fiber rotation, i.e. successive
        raw angles differ by less than pi);
      * ``theta_raw`` -- (n,) principal-value angle in (-pi, pi].

    Indexing yields :class:`PathSample` views with ``coords`` carrying the
    unwrapped angle.
    """

    s: np.ndarray
    entries: np.ndarray
    omega: np.ndarray
    x: np.ndarray
    y: np.ndarray
    theta: np.ndarray
    theta_raw: np.ndarray

    @classmethod
    def from_arrays(cls, s, entries, omega) -> "SampledPath":
        s = np.ascontiguousarray(s, dtype=np.float64)
        entries = np.ascontiguousarray(entries, dtype=np.float64)
        omega = np.ascontiguousarray(omega, dtype=np.float64)
        n = s.shape[0]
        if s.ndim != 1 or n < 1:
            raise ValueError("s must be a nonempty 1-d array")
        if entries.shape != (n, 4):
            raise ValueError(f"entries must have shape ({n}, 4), got {entries.shape}")
        if omega.shape != (n, 3):
            raise ValueError(f"omega must have shape ({n}, 3), got {omega.shape}")
        if n > 1 and not np.all(np.diff(s) > 0.0):
            raise ValueError("s must be strictly increasing")

        dets = det2_array(entries[:, 0], entries[:, 1], entries[:, 2], entries[:, 3])
        scale = np.abs(entries).max(axis=1)
        tol = np.maximum(_DET_ATOL, 64.0 * np.finfo(np.float64).eps * scale * scale)
        bad = np.abs(dets - 1.0) > tol
        if bad.any():
            k = int(np.argmax(bad))
            raise ValueError(
                f"sample {k} is not in SL(2,R): det = {dets[k]} differs from 1"
            )

        den = entries[:, 2] ** 2 + entries[:, 3] ** 2
        if not np.all(den > 0.0):
            raise ValueError("a sample has a zero second row")
        x = (entries[:, 0] * entries[:, 2] + entries[:, 1] * entries[:, 3]) / den
        y = 1.0 / den
        theta_raw = np.arctan2(-entries[:, 2], entries[:, 3])
        theta_raw[theta_raw <= -np.pi] = np.pi
        theta = np.unwrap(theta_raw)

        for arr in (s, entries, omega, x, y, theta, theta_raw):
            arr.setflags(write=False)
        return cls(s, entries, omega, x, y, theta, theta_raw)

    def __len__(self) -> int:
        return self.s.shape[0]

    def __getitem__(self, k: int) -> PathSample:
        n = len(self)
        if not isinstance(k, (int, np.integer)):
            raise TypeError(f"indices must be integers, got {type(k).__name__}")
        if k < 0:
            k += n
        if not 0 <= k < n:
            raise IndexError(f"index {k} out of range for {n} samples")
        return PathSample(
            s=float(self.s[k]),
            matrix=GroupMatrix(*self.entries[k]),
            coords=IwasawaCoords(self.x[k], self.y[k], self.theta[k]),
            omega=AlgebraVector(*self.omega[k]),
            theta_raw=float(self.theta_raw[k]),
        )


def _exp_entries(w: AlgebraVector, s: np.ndarray) -> np.ndarray:
    """Rows of exp(s w) over an array of parameters (vectorized closed form)."""
    kd = w.c1 * w.c1 - w.c2 * w.c2 - w.c3 * w.c3
    d = kd * (s * s)
    ce = np.empty_like(d)
    fe = np.empty_like(d)
    near = np.abs(d) <= _BRANCH_EPS
    pos = d > _BRANCH_EPS
    neg = d < -_BRANCH_EPS
    dn = d[near]
    ce[near] = 1.0 - dn * (0.5 - dn * (1.0 / 24.0 - dn / 720.0))
    fe[near] = 1.0 - dn * (1.0 / 6.0 - dn * (1.0 / 120.0 - dn / 5040.0))
    r = np.sqrt(d[pos])
    ce[pos] = np.cos(r)
    fe[pos] = np.sin(r) / r
    r = np.sqrt(-d[neg])
    ce[neg] = np.cosh(r)
    fe[neg] = np.sinh(r) / r
    sa, sb, sc = s * w.c1, s * w.c2, s * w.c3
    return np.stack(
        [ce + fe * sc, fe * (sa + sb), fe * (sb - sa), ce - fe * sc], axis=1
    )


def _grid(s_min: float, s_max: float, n_samples: int) -> np.ndarray:
    if not float(s_min) < float(s_max):
        raise ValueError(f"s_min must be less than s_max, got [{s_min}, {s_max}]")
    if int(n_samples) < 2:
        raise ValueError(f"n_samples must be at least 2, got {n_samples}")
    h = (s_max - s_min) / (n_samples - 1)
    return s_min + h * np.arange(int(n_samples))


def _renorm_rows(entries: np.ndarray) -> np.ndarray:
    """Guarded det re-projection, the vectorized twin of GroupMatrix's rule."""
    dets = det2_array(entries[:, 0], entries[:, 1], entries[:, 2], entries[:, 3])
    mask = (np.abs(dets - 1.0) <= _DET_ATOL) & (dets != 1.0) & (dets > 0.0)
    if mask.any():
        entries[mask] *= (1.0 / np.sqrt(dets[mask]))[:, None]
    return entries


def sample_product_curve(
    w: AlgebraVector, u: float, s_min: float, s_max: float, n_samples: int
) -> SampledPath:
    """Sampled gamma(s) = exp(s w) exp(-s u e1) with its body velocity."""
    s = _grid(s_min, s_max, n_samples)
    e = _exp_entries(w, s)
    ang = u * s
    ca, sn = np.cos(ang), np.sin(ang)
    entries = np.stack(
        [
            e[:, 0] * ca + e[:, 1] * sn,
            -e[:, 0] * sn + e[:, 1] * ca,
            e[:, 2] * ca + e[:, 3] * sn,
            -e[:, 2] * sn + e[:, 3] * ca,
        ],
        axis=1,
    )
    entries = _renorm_rows(entries)
    ang2 = 2.0 * ang
    cb, sb = np.cos(ang2), np.sin(ang2)
    omega = np.stack(
        [
            np.full_like(s, w.c1 - u),
            w.c2 * cb - w.c3 * sb,
            w.c2 * sb + w.c3 * cb,
        ],
        axis=1,
    )
    return SampledPath.from_arrays(s, entries, omega)


def sample_geodesic(
    x: AlgebraVector, s_min: float = 0.0, s_max: float = 1.0, n_samples: int = 1001
) -> SampledPath:
    """Sampled geodesic with initial velocity x."""
    w = AlgebraVector(-x.c1, x.c2, x.c3)
    return sample_product_curve(w, -2.0 * x.c1, s_min, s_max, n_samples)


def sample_magnetic(
    x: AlgebraVector,
    q: float = 0.0,
    s_min: float = 0.0,
    s_max: float = 1.0,
    n_samples: int = 1001,
) -> SampledPath:
    """Sampled magnetic trajectory of charge q attached to the geodesic of x."""
    w = AlgebraVector(-x.c1, x.c2, x.c3)
    return sample_product_curve(w, -2.0 * x.c1 - 0.5 * q, s_min, s_max, n_samples)


def reconstruct(spec: TrajectorySpec, method: str = "magnus6") -> SampledPath:
    """Numerically reconstruct the trajectory of a :class:`TrajectorySpec`.

    Integrates gamma' = gamma Omega from gamma(s_min) = identity with the
    selected Lie-group scheme, sampling every step.  Omega is the
    closed-form reduced solution seeded at ``spec.x0``, evaluated at
    elapsed parameter s - s_min.
    """
    try:
        order = METHODS[method]
    except KeyError:
        raise ValueError(
            f"unknown method {method!r}; expected one of {sorted(METHODS)}"
        ) from None
    n_steps = spec.n_samples - 1
    h = spec.step
    entries = integrate(
        spec.x0.c1, spec.x0.c2, spec.x0.c3, spec.q, h, n_steps, order
    )
    elapsed = h * np.arange(spec.n_samples)
    s = spec.s_min + elapsed
    wq = 4.0 * spec.x0.c1 - spec.q
    cw, sw = np.cos(wq * elapsed), np.sin(wq * elapsed)
    omega = np.stack(
        [
            np.full_like(s, spec.x0.c1),
            spec.x0.c2 * cw + spec.x0.c3 * sw,
            spec.x0.c3 * cw - spec.x0.c2 * sw,
        ],
        axis=1,
    )
    return SampledPath.from_arrays(s, entries, omega)


# ---------------------------------------------------------------------------
# residuals and drift diagnostics
# ---------------------------------------------------------------------------


def rotation_residual(path: SampledPath, rate) -> float:
    """Finite-difference defect of the reduced rotation law along a path.

    Checks A' = 0, B' = rate * C, C' = -rate * B at interior samples with
    central differences; ``rate`` may be a scalar or per-sample array.
    Returns the largest componentwise defect (reported residuals therefore
    include an O(h^2) discretization floor).
    """
    if len(path) < 3:
        raise ValueError("need at least 3 samples for a central difference")
    rate = np.broadcast_to(np.asarray(rate, dtype=np.float64), path.s.shape)
    ds = path.s[2:] - path.s[:-2]
    dev = (path.omega[2:] - path.omega[:-2]) / ds[:, None]
    mid = slice(1, -1)
    res_a = np.abs(dev[:, 0])
    res_b = np.abs(dev[:, 1] - rate[mid] * path.omega[mid, 2])
    res_c = np.abs(dev[:, 2] + rate[mid] * path.omega[mid, 1])
    return float(max(res_a.max(), res_b.max(), res_c.max()))


def lorentz_residual(path: SampledPath, q: float) -> float:
    """Defect of the magnetized Euler-Arnold law, rate = 4A - q, along a path."""
    return rotation_residual(path, 4.0 * path.omega[:, 0] - q)


def det_drift(path: SampledPath) -> float:
    """Largest |det - 1| along the path (compensated determinants)."""
    dets = det2_array(
        path.entries[:, 0], path.entries[:, 1], path.entries[:, 2], path.entries[:, 3]
    )
    return float(np.abs(dets - 1.0).max())


def speed_drift(path: SampledPath) -> float:
    """Largest deviation of the body speed |Omega| from its initial value."""
    speeds = np.sqrt((path.omega**2).sum(axis=1))
    return float(np.abs(speeds - speeds[0]).max())


def contact_angle_drift(path: SampledPath) -> float:
    """Largest deviation of eta(Omega) = A from its initial value."""
    return float(np.abs(path.omega[:, 0] - path.omega[0, 0]).max())


def contact_angle(x: AlgebraVector) -> float:
    """Angle between a nonzero vector and the Reeb direction: acos(A / |X|)."""
    n = x.norm()
    if not n > 0.0:
        raise ValueError("zero vector has no contact angle")
    return math.acos(max(-1.0, min(1.0, x.c1 / n)))
