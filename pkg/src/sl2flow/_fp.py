"""Compensated floating-point primitives.

2x2 determinants of near-unimodular matrices suffer catastrophic
cancellation: the naive product difference carries an absolute error of
order eps * max(entry)^2,  which at entry scale 1e8 is O(10).  The Dekker
two-product recovers the exact rounding residue of each product (no
math.fma on Python 3.10), so ``det2`` is accurate to a couple of ulp of the
true determinant of the stored entries.
"""
from __future__ import annotations

import numpy as np

_SPLIT = 134217729.0  # 2**27 + 1, Dekker splitting constant for binary64


def two_prod(a: float, b: float) -> tuple[float, float]:
    """Return (p, e) with p = fl(a*b) and p + e = a*b exactly."""
    p = a * b
    aa = a * _SPLIT
    a_hi = aa - (aa - a)
    a_lo = a - a_hi
    bb = b * _SPLIT
    b_hi = bb - (bb - b)
    b_lo = b - b_hi
    e = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, e


def two_sum(a: float, b: float) -> tuple[float, float]:
    """Return (s, e) with s = fl(a+b) and s + e = a + b exactly."""
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


def det2(p11: float, p12: float, p21: float, p22: float) -> float:
    """Compensated determinant p11*p22 - p12*p21."""
    w, e1 = two_prod(p11, p22)
    v, e2 = two_prod(p12, p21)
    s, e3 = two_sum(w, -v)
    return s + (e1 - e2 + e3)


def det2_array(p11, p12, p21, p22):
    """Vectorized ``det2`` on numpy arrays."""
    with np.errstate(invalid="ignore"):
        w, e1 = _two_prod_arr(p11, p22)
        v, e2 = _two_prod_arr(p12, p21)
        s = w - v
        bb = s - w
        e3 = (w - (s - bb)) + (-v - bb)
        return s + (e1 - e2 + e3)


def _two_prod_arr(a, b):
    p = a * b
    aa = a * _SPLIT
    a_hi = aa - (aa - a)
    a_lo = a - a_hi
    bb = b * _SPLIT
    b_hi = bb - (bb - b)
    b_lo = b - b_hi
    e = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, e
