"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``SL2FLOW_PURE_PYTHON=1`` in the environment to force the fallback
(useful for debugging and for benchmarking the two kernels against each
other).  ``BACKEND`` records which one is live.
"""
from __future__ import annotations

import os

_FORCE_PURE = os.environ.get("SL2FLOW_PURE_PYTHON", "").strip().lower() in (
    "1",
    "true",
    "yes",
)

if not _FORCE_PURE:
    try:
        from ._stepper import integrate  # noqa: F401
        BACKEND = "compiled"
    except ImportError:
        from ._stepper_py import integrate  # noqa: F401
        BACKEND = "python"
else:
    from ._stepper_py import integrate  # noqa: F401
    BACKEND = "python"


def active_backend() -> str:
    """Name of the stepping kernel in use: 'compiled' or 'python'."""
    return BACKEND
