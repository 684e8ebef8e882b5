"""sl2flow: geometry and dynamics on SL(2,R) with its standard
left-invariant Sasakian metric.

Submodules:
  * :mod:`sl2flow.algebra` -- the Lie algebra frame, metric tensors,
    connection, curvature, and naturally-reductive data;
  * :mod:`sl2flow.group`   -- group elements, the exponential, Iwasawa
    coordinates, and the action on the hyperbolic plane;
  * :mod:`sl2flow.flows`   -- geodesics, contact magnetic trajectories,
    the reduced Euler-Arnold dynamics, sampling, and reconstruction;
  * :mod:`sl2flow.special` -- one-parameter geodesics, projected loci,
    and the D-homothetic deformation;
  * :mod:`sl2flow.verify`  -- the runtime self-check suite;
  * :mod:`sl2flow.cli`     -- the ``sl2flow`` command-line interface.

The time-stepping kernel is a compiled extension with a pure-Python
fallback; :func:`active_backend` reports which is live.
"""
from . import algebra, flows, group, special
from ._accel import active_backend
from .algebra import AlgebraVector
from .flows import SampledPath, TrajectorySpec
from .group import GroupMatrix, HyperbolicPoint, IwasawaCoords

__version__ = "0.1.0"

__all__ = [
    "AlgebraVector",
    "GroupMatrix",
    "HyperbolicPoint",
    "IwasawaCoords",
    "SampledPath",
    "TrajectorySpec",
    "active_backend",
    "algebra",
    "flows",
    "group",
    "special",
    "__version__",
]
