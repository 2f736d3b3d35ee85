# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled integration kernel.

C twin of ``hillres.kernel.pure``: adaptive Dormand-Prince 8(5,3) on the
complex fundamental system of -y'' + V(x) y = z^2 y. The algorithm and
step control mirror the pure module statement for statement; tests assert
the two backends agree.
"""

import numpy as np

from . import _tableau as tb
from .pure import KernelError

cimport cython
from libc.math cimport cos, sin, log, sqrt, exp, fabs

ctypedef double complex dc

DEF NSTAGE = 12
DEF MAXCOMP = 8

cdef double[12][12] A_C
cdef double[12] C_C
cdef double[12] B_C
cdef double[13] E5_C
cdef double[13] E3_C

def _init_tableau():
    cdef int i, j
    A = np.ascontiguousarray(tb.A, dtype=np.float64)
    for i in range(NSTAGE):
        for j in range(NSTAGE):
            A_C[i][j] = A[i, j]
        C_C[i] = tb.C[i]
        B_C[i] = tb.B[i]
    for i in range(NSTAGE + 1):
        E5_C[i] = tb.E5[i]
        E3_C[i] = tb.E3[i]

_init_tableau()

cdef double SAFETY = 0.9
cdef double MIN_FACTOR = 0.2
cdef double MAX_FACTOR = 10.0
cdef double ERR_EXPO = -0.125
cdef double RENORM_THRESHOLD = 1e120
cdef double EXP_OVERFLOW = 690.0
cdef long MAX_STEPS = 2_000_000
cdef double TWO_PI = 6.283185307179586476925287


cdef inline double cmod(dc v) noexcept nogil:
    cdef double a = v.real
    cdef double b = v.imag
    return sqrt(a * a + b * b)


cdef inline double pot_eval(double pc0, int nh, double* pcs, double* psn,
                            int nq, double* qb, double* qc, int dmax,
                            bint use_q, double x) noexcept nogil:
    cdef double v = pc0
    cdef double w = TWO_PI * x
    cdef int k, lo, hi, mid, i, j
    cdef double u, acc
    for k in range(nh):
        v += pcs[k] * cos((k + 1) * w) + psn[k] * sin((k + 1) * w)
    if use_q and nq > 0:
        if x >= qb[0] and x <= qb[nq]:
            lo = 0
            hi = nq
            while hi - lo > 1:
                mid = (lo + hi) >> 1
                if x >= qb[mid]:
                    lo = mid
                else:
                    hi = mid
            i = lo
            u = x - qb[i]
            acc = 0.0
            for j in range(dmax - 1, -1, -1):
                acc = acc * u + qc[i * dmax + j]
            v += acc
    return v


cdef inline void eval_rhs(double pc0, int nh, double* pcs, double* psn,
                          int nq, double* qb, double* qc, int dmax, bint use_q,
                          double x, dc z2, dc two_z, bint deriv,
                          dc* y, dc* f) noexcept nogil:
    cdef double v = pot_eval(pc0, nh, pcs, psn, nq, qb, qc, dmax, use_q, x)
    cdef dc c = v - z2
    f[0] = y[1]
    f[1] = c * y[0]
    f[2] = y[3]
    f[3] = c * y[2]
    if deriv:
        f[4] = y[5]
        f[5] = c * y[4] - two_z * y[0]
        f[6] = y[7]
        f[7] = c * y[6] - two_z * y[2]


def integrate_system(z, double x0, stops, y0, pc0, pcos, psin, qbreaks, qcoefs,
                     use_q, deriv, double rtol, double atol):
    """Same contract as hillres.kernel.pure.integrate_system."""
    cdef dc zc = z
    cdef dc z2 = zc * zc
    cdef dc two_z = 2.0 * zc
    cdef bint uq = bool(use_q)
    cdef bint dv = bool(deriv)

    cdef double[::1] pcs = np.ascontiguousarray(pcos, dtype=np.float64)
    cdef double[::1] psn = np.ascontiguousarray(psin, dtype=np.float64)
    cdef double[::1] qb = np.ascontiguousarray(qbreaks, dtype=np.float64)
    qc2 = np.ascontiguousarray(np.atleast_2d(np.asarray(qcoefs, dtype=np.float64)))
    cdef double[:, ::1] qc = qc2
    cdef int nh = pcs.shape[0]
    cdef int nq = qc.shape[0] if qb.shape[0] > 1 else 0
    cdef int dmax = qc.shape[1]
    cdef double pc0d = pc0

    cdef double[::1] st = np.ascontiguousarray(stops, dtype=np.float64)
    cdef int nst = st.shape[0]
    y0a = np.ascontiguousarray(np.asarray(y0, dtype=np.complex128))
    cdef dc[::1] y0v = y0a
    cdef int ncomp = y0v.shape[0]
    if ncomp > MAXCOMP:
        raise KernelError("too many components")

    out_arr = np.empty((nst, ncomp), dtype=np.complex128)
    cdef dc[:, ::1] out = out_arr

    cdef dc y[MAXCOMP]
    cdef dc yn[MAXCOMP]
    cdef dc ys[MAXCOMP]
    cdef dc f[MAXCOMP]
    cdef dc fn[MAXCOMP]
    cdef dc K[13][MAXCOMP]
    cdef dc acc, e5c, e3c
    cdef double scale, e5, e3, err_norm, factor, m, d0, d1, d2, h0, h1
    cdef int i, s, j, iout
    cdef long nsteps = 0
    cdef double x = x0
    cdef double logscale = 0.0
    cdef double dirn = 1.0 if st[nst - 1] >= x0 else -1.0
    cdef double span = fabs(st[nst - 1] - x0)
    cdef double h, ht, hs, xt, remaining, lsc
    cdef bint clamped

    for i in range(ncomp):
        y[i] = y0v[i]

    if span == 0.0:
        for iout in range(nst):
            for i in range(ncomp):
                out[iout, i] = y[i]
        return out_arr

    cdef double* pcs_p = &pcs[0] if nh > 0 else NULL
    cdef double* psn_p = &psn[0] if nh > 0 else NULL
    cdef double* qb_p = &qb[0] if qb.shape[0] > 0 else NULL
    cdef double* qc_p = &qc[0, 0] if nq > 0 else NULL

    eval_rhs(pc0d, nh, pcs_p, psn_p, nq, qb_p, qc_p, dmax, uq,
             x, z2, two_z, dv, y, f)

    # initial step selection (mirrors the pure twin)
    d0 = 0.0
    d1 = 0.0
    for i in range(ncomp):
        scale = atol + rtol * cmod(y[i])
        d0 += (cmod(y[i]) / scale) ** 2
        d1 += (cmod(f[i]) / scale) ** 2
    d0 = sqrt(d0 / ncomp)
    d1 = sqrt(d1 / ncomp)
    if d0 < 1e-5 or d1 < 1e-5:
        h0 = 1e-6
    else:
        h0 = 0.01 * d0 / d1
    if h0 > span:
        h0 = span
    for i in range(ncomp):
        ys[i] = y[i] + h0 * dirn * f[i]
    eval_rhs(pc0d, nh, pcs_p, psn_p, nq, qb_p, qc_p, dmax, uq,
             x + h0 * dirn, z2, two_z, dv, ys, fn)
    d2 = 0.0
    for i in range(ncomp):
        scale = atol + rtol * cmod(y[i])
        d2 += (cmod(fn[i] - f[i]) / scale) ** 2
    d2 = sqrt(d2 / ncomp) / h0
    if d1 <= 1e-15 and d2 <= 1e-15:
        h1 = h0 * 1e-3
        if h1 < 1e-6:
            h1 = 1e-6
    else:
        h1 = (0.01 / (d1 if d1 > d2 else d2)) ** 0.125
    h = 100 * h0
    if h1 < h:
        h = h1
    if span < h:
        h = span

    for iout in range(nst):
        xt = st[iout]
        while True:
            remaining = fabs(xt - x)
            if remaining <= 1e-14 * (1.0 + fabs(xt)):
                x = xt
                break
            nsteps += 1
            if nsteps > MAX_STEPS:
                raise KernelError("step budget exhausted at z=%r" % (z,))
            clamped = h > remaining
            ht = remaining if clamped else h
            if ht < 1e-14 * (1.0 + fabs(x)):
                raise KernelError("step underflow at x=%g, z=%r" % (x, z))
            hs = ht * dirn
            with nogil:
                for i in range(ncomp):
                    K[0][i] = f[i]
                for s in range(1, NSTAGE):
                    for i in range(ncomp):
                        acc = 0.0
                        for j in range(s):
                            acc = acc + A_C[s][j] * K[j][i]
                        ys[i] = y[i] + hs * acc
                    eval_rhs(pc0d, nh, pcs_p, psn_p, nq, qb_p, qc_p, dmax, uq,
                             x + C_C[s] * hs, z2, two_z, dv, ys, K[s])
                for i in range(ncomp):
                    acc = 0.0
                    for j in range(NSTAGE):
                        acc = acc + B_C[j] * K[j][i]
                    yn[i] = y[i] + hs * acc
                eval_rhs(pc0d, nh, pcs_p, psn_p, nq, qb_p, qc_p, dmax, uq,
                         x + hs, z2, two_z, dv, yn, K[NSTAGE])
                e5 = 0.0
                e3 = 0.0
                for i in range(ncomp):
                    scale = cmod(y[i])
                    m = cmod(yn[i])
                    if m > scale:
                        scale = m
                    scale = atol + rtol * scale
                    e5c = 0.0
                    e3c = 0.0
                    for j in range(NSTAGE + 1):
                        e5c = e5c + E5_C[j] * K[j][i]
                        e3c = e3c + E3_C[j] * K[j][i]
                    e5 += (cmod(e5c) / scale) ** 2
                    e3 += (cmod(e3c) / scale) ** 2
            if e5 == 0.0 and e3 == 0.0:
                err_norm = 0.0
            else:
                err_norm = ht * e5 / sqrt((e5 + 0.01 * e3) * ncomp)

            if err_norm < 1.0:
                x = x + hs
                for i in range(ncomp):
                    y[i] = yn[i]
                    f[i] = K[NSTAGE][i]
                if err_norm == 0.0:
                    factor = MAX_FACTOR
                else:
                    factor = SAFETY * err_norm ** ERR_EXPO
                    if factor > MAX_FACTOR:
                        factor = MAX_FACTOR
                if clamped:
                    if ht * factor > h:
                        h = ht * factor
                else:
                    h = ht * factor
                m = 0.0
                for i in range(ncomp):
                    if cmod(y[i]) > m:
                        m = cmod(y[i])
                if m > RENORM_THRESHOLD:
                    for i in range(ncomp):
                        y[i] = y[i] / m
                        f[i] = f[i] / m
                    logscale += log(m)
            else:
                factor = SAFETY * err_norm ** ERR_EXPO
                if factor < MIN_FACTOR:
                    factor = MIN_FACTOR
                h = ht * factor
        if logscale != 0.0:
            m = 0.0
            for i in range(ncomp):
                if cmod(y[i]) > m:
                    m = cmod(y[i])
            if logscale + log(m if m > 1.0 else 1.0) > EXP_OVERFLOW:
                raise KernelError("solution magnitude overflow at z=%r" % (z,))
            lsc = exp(logscale)
            for i in range(ncomp):
                out[iout, i] = y[i] * lsc
        else:
            for i in range(ncomp):
                out[iout, i] = y[i]
    return out_arr
