# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel for Lie-group time stepping on SL(2,R).

Twin of ``_stepper_py`` (see that module for the method notes); same
contract, selected at import time by ``_accel``.
"""

import numpy as np

from libc.math cimport sqrt, sin, cos, sinh, cosh, fabs

cdef double _BRANCH_EPS = 1e-8
cdef double _DET_ATOL = 1e-9
cdef double _EPS = 2.220446049250313e-16
cdef double _SPLIT = 134217729.0  # 2**27 + 1, Dekker splitting constant
cdef double _GAUSS_SHIFT = sqrt(3.0) / 6.0
cdef double _COMM_COEF = sqrt(3.0) / 12.0
cdef double _GAUSS15 = sqrt(15.0) / 10.0
cdef double _ALPHA2_COEF = sqrt(15.0) / 3.0
cdef double _ALPHA3_COEF = 10.0 / 3.0


cdef inline double _prod_err(double x, double y, double p) nogil:
    """Rounding error of p = x * y via Dekker splitting."""
    cdef double hi, x1, x2, y1, y2
    hi = _SPLIT * x
    x1 = hi - (hi - x)
    x2 = x - x1
    hi = _SPLIT * y
    y1 = hi - (hi - y)
    y2 = y - y1
    return ((x1 * y1 - p) + x1 * y2 + x2 * y1) + x2 * y2


cdef inline double _det2(double p11, double p12, double p21, double p22) nogil:
    """Compensated determinant p11*p22 - p12*p21."""
    cdef double w = p11 * p22
    cdef double v = p12 * p21
    return (w - v) + (_prod_err(p11, p22, w) - _prod_err(p12, p21, v))


def integrate(double a, double b, double c, double q, double h,
              long n_steps, long order=4):
    """March gamma' = gamma Omega from the identity; see ``_stepper_py.integrate``."""
    if order != 2 and order != 4 and order != 6:
        raise ValueError(f"order must be 2, 4, or 6, got {order}")
    if n_steps < 0:
        raise ValueError(f"n_steps must be nonnegative, got {n_steps}")

    out_arr = np.empty((n_steps + 1, 4), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double g11 = 1.0, g12 = 0.0, g21 = 0.0, g22 = 1.0
    cdef double w = 4.0 * a - q
    cdef double cf = _COMM_COEF * h * h
    cdef double half_h = 0.5 * h
    cdef double s2 = _ALPHA2_COEF * h
    cdef double s3 = _ALPHA3_COEF * h
    cdef double t, t1, t2, t3, cw, sw, b1, c1, b2, c2, b3, c3
    cdef double a1a, a1b, a1c, a2b, a2c, a3b, a3c
    cdef double d1a, d1b, d1c, za, zb, zc, d2a, d2b, d2c
    cdef double pa, pb, pc, qa, qb, qc
    cdef double ta, tb, tc, d, r, ce, fe
    cdef double e11, e12, e21, e22, n11, n12, n21, n22
    cdef double det, err, scale, f, co11, co12, co21, co22
    cdef long k
    cdef long bad = -1

    out[0, 0] = 1.0
    out[0, 1] = 0.0
    out[0, 2] = 0.0
    out[0, 3] = 1.0

    with nogil:
        for k in range(n_steps):
            if order == 2:
                t = (k + 0.5) * h
                cw = cos(w * t)
                sw = sin(w * t)
                ta = h * a
                tb = h * (b * cw + c * sw)
                tc = h * (c * cw - b * sw)
            elif order == 4:
                t1 = (k + 0.5 - _GAUSS_SHIFT) * h
                t2 = (k + 0.5 + _GAUSS_SHIFT) * h
                cw = cos(w * t1)
                sw = sin(w * t1)
                b1 = b * cw + c * sw
                c1 = c * cw - b * sw
                cw = cos(w * t2)
                sw = sin(w * t2)
                b2 = b * cw + c * sw
                c2 = c * cw - b * sw
                ta = h * a + cf * (-2.0 * (b1 * c2 - c1 * b2))
                tb = half_h * (b1 + b2) + cf * (-2.0 * a * (c2 - c1))
                tc = half_h * (c1 + c2) + cf * (2.0 * a * (b2 - b1))
            else:
                t1 = (k + 0.5 - _GAUSS15) * h
                t2 = (k + 0.5) * h
                t3 = (k + 0.5 + _GAUSS15) * h
                cw = cos(w * t1)
                sw = sin(w * t1)
                b1 = b * cw + c * sw
                c1 = c * cw - b * sw
                cw = cos(w * t2)
                sw = sin(w * t2)
                b2 = b * cw + c * sw
                c2 = c * cw - b * sw
                cw = cos(w * t3)
                sw = sin(w * t3)
                b3 = b * cw + c * sw
                c3 = c * cw - b * sw
                a1a = h * a
                a1b = h * b2
                a1c = h * c2
                a2b = s2 * (b3 - b1)
                a2c = s2 * (c3 - c1)
                a3b = s3 * (b3 - 2.0 * b2 + b1)
                a3c = s3 * (c3 - 2.0 * c2 + c1)
                d1a = -2.0 * (a1b * a2c - a1c * a2b)
                d1b = -2.0 * (a1a * a2c)
                d1c = 2.0 * (a1a * a2b)
                za = -d1a
                zb = 2.0 * a3b - d1b
                zc = 2.0 * a3c - d1c
                d2a = -2.0 * (a1b * zc - a1c * zb) / 60.0
                d2b = 2.0 * (a1c * za - a1a * zc) / 60.0
                d2c = 2.0 * (a1a * zb - a1b * za) / 60.0
                pa = 20.0 * a1a + d1a
                pb = 20.0 * a1b + a3b + d1b
                pc = 20.0 * a1c + a3c + d1c
                qa = d2a
                qb = a2b + d2b
                qc = a2c + d2c
                ta = a1a - 2.0 * (pb * qc - pc * qb) / 240.0
                tb = a1b + a3b / 12.0 + 2.0 * (pc * qa - pa * qc) / 240.0
                tc = a1c + a3c / 12.0 + 2.0 * (pa * qb - pb * qa) / 240.0

            d = ta * ta - tb * tb - tc * tc
            if fabs(d) <= _BRANCH_EPS:
                ce = 1.0 - d * (0.5 - d * (1.0 / 24.0 - d / 720.0))
                fe = 1.0 - d * (1.0 / 6.0 - d * (1.0 / 120.0 - d / 5040.0))
            elif d > 0.0:
                r = sqrt(d)
                ce = cos(r)
                fe = sin(r) / r
            else:
                r = sqrt(-d)
                ce = cosh(r)
                fe = sinh(r) / r
            e11 = ce + fe * tc
            e12 = fe * (ta + tb)
            e21 = fe * (tb - ta)
            e22 = ce - fe * tc

            n11 = g11 * e11 + g12 * e21
            n12 = g11 * e12 + g12 * e22
            n21 = g21 * e11 + g22 * e21
            n22 = g21 * e12 + g22 * e22

            det = _det2(n11, n12, n21, n22)
            err = fabs(det - 1.0)
            if err > _DET_ATOL:
                scale = fabs(n11)
                if fabs(n12) > scale:
                    scale = fabs(n12)
                if fabs(n21) > scale:
                    scale = fabs(n21)
                if fabs(n22) > scale:
                    scale = fabs(n22)
                if err > 64.0 * _EPS * scale * scale:
                    bad = k + 1
                    break
            if det != 1.0:
                # Newton step toward det = 1 along the determinant gradient
                # (see _stepper_py for why a scalar rescale is not used)
                f = (det - 1.0) / (
                    n11 * n11 + n12 * n12 + n21 * n21 + n22 * n22
                )
                co11 = f * n22
                co12 = f * n21
                co21 = f * n12
                co22 = f * n11
                n11 -= co11
                n12 += co12
                n21 += co21
                n22 -= co22

            g11 = n11
            g12 = n12
            g21 = n21
            g22 = n22
            out[k + 1, 0] = g11
            out[k + 1, 1] = g12
            out[k + 1, 2] = g21
            out[k + 1, 3] = g22

    if bad >= 0:
        raise ValueError(
            f"determinant drifted off the group at step {bad}: det = {det}"
        )
    return out_arr
