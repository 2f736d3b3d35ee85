"""Pure-Python integration kernel.

Twin of the compiled extension ``hillres.kernel._core``; same entry point,
same algorithm (adaptive Dormand-Prince 8(5,3) on the first-order complex
system), implemented with numpy. Used as the fallback when the extension
is not built and as the reference the extension is tested against.

The ODE is the fundamental system of -y'' + V(x) y = z^2 y, propagated as
u = (theta, theta', phi, phi') and, optionally, its z-derivative
(variational) components driven by -2z*y.
"""

import numpy as np

from . import _tableau as tb

MAX_STEPS = 2_000_000
SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 10.0
RENORM_THRESHOLD = 1e120
EXP_OVERFLOW = 690.0


class KernelError(RuntimeError):
    """Integration failed (tolerance unreachable, overflow, underflow)."""


def potential_value(x, pc0, pcos, psin, qbreaks, qcoefs, use_q):
    """Evaluate V(x) = p(x) [+ q(x)]: trig series plus piecewise polynomial."""
    v = pc0
    if pcos.size:
        w = 2.0 * np.pi * x
        ks = np.arange(1, pcos.size + 1)
        v += float(pcos @ np.cos(ks * w) + psin @ np.sin(ks * w))
    if use_q and qbreaks.size:
        if qbreaks[0] <= x <= qbreaks[-1]:
            i = int(np.searchsorted(qbreaks, x, side="right")) - 1
            if i == qcoefs.shape[0]:
                i -= 1
            u = x - qbreaks[i]
            acc = 0.0
            for c in qcoefs[i, ::-1]:
                acc = acc * u + c
            v += acc
    return v


def _rhs(x, y, z2, z, deriv, pargs):
    v = potential_value(x, *pargs)
    c = v - z2
    f = np.empty_like(y)
    f[0] = y[1]
    f[1] = c * y[0]
    f[2] = y[3]
    f[3] = c * y[2]
    if deriv:
        f[4] = y[5]
        f[5] = c * y[4] - 2.0 * z * y[0]
        f[6] = y[7]
        f[7] = c * y[6] - 2.0 * z * y[2]
    return f


def _rms(v):
    return np.sqrt(np.mean(np.abs(v) ** 2))


def _initial_step(x0, y0, f0, dirn, span, z2, z, deriv, pargs, rtol, atol):
    scale = atol + rtol * np.abs(y0)
    d0 = _rms(y0 / scale)
    d1 = _rms(f0 / scale)
    if d0 < 1e-5 or d1 < 1e-5:
        h0 = 1e-6
    else:
        h0 = 0.01 * d0 / d1
    h0 = min(h0, span)
    y1 = y0 + h0 * dirn * f0
    f1 = _rhs(x0 + h0 * dirn, y1, z2, z, deriv, pargs)
    d2 = _rms((f1 - f0) / scale) / h0
    if d1 <= 1e-15 and d2 <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.125
    return min(100 * h0, h1, span)


def integrate_system(z, x0, stops, y0, pc0, pcos, psin, qbreaks, qcoefs,
                     use_q, deriv, rtol, atol):
    """Propagate the fundamental system from x0 through every stop point.

    ``stops`` must be strictly monotone and exclude x0; the RHS must be
    smooth within each (previous, stop] subinterval (the caller inserts
    potential breakpoints). Returns the state at each stop, shape
    (len(stops), ncomp). Raises KernelError on failure.
    """
    z = complex(z)
    z2 = z * z
    pargs = (float(pc0), np.asarray(pcos, float), np.asarray(psin, float),
             np.asarray(qbreaks, float), np.atleast_2d(np.asarray(qcoefs, float)),
             bool(use_q))
    stops = np.asarray(stops, float)
    y = np.asarray(y0, complex).copy()
    ncomp = y.size
    x = float(x0)
    dirn = 1.0 if stops[-1] >= x else -1.0
    span = abs(stops[-1] - x)
    if span == 0.0:
        return np.tile(y, (len(stops), 1))

    A, B, C, E5, E3 = tb.A, tb.B, tb.C, tb.E5, tb.E3
    K = np.empty((tb.N_STAGES + 1, ncomp), complex)
    out = np.empty((len(stops), ncomp), complex)
    logscale = 0.0

    f = _rhs(x, y, z2, z, deriv, pargs)
    h = _initial_step(x, y, f, dirn, span, z2, z, deriv, pargs, rtol, atol)
    nsteps = 0

    for iout, xt in enumerate(stops):
        while True:
            remaining = abs(xt - x)
            if remaining <= 1e-14 * (1.0 + abs(xt)):
                x = xt
                break
            nsteps += 1
            if nsteps > MAX_STEPS:
                raise KernelError("step budget exhausted at z=%r" % (z,))
            clamped = h > remaining
            ht = remaining if clamped else h
            if ht < 1e-14 * (1.0 + abs(x)):
                raise KernelError("step underflow at x=%g, z=%r" % (x, z))
            hs = ht * dirn
            K[0] = f
            for s in range(1, tb.N_STAGES):
                ys = y + hs * (A[s, :s] @ K[:s])
                K[s] = _rhs(x + C[s] * hs, ys, z2, z, deriv, pargs)
            y_new = y + hs * (B @ K[:-1])
            x_new = x + hs
            f_new = _rhs(x_new, y_new, z2, z, deriv, pargs)
            K[-1] = f_new

            scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
            err5 = (K.T @ E5) / scale
            err3 = (K.T @ E3) / scale
            e5 = float(np.real(err5 @ err5.conj()))
            e3 = float(np.real(err3 @ err3.conj()))
            if e5 == 0.0 and e3 == 0.0:
                err_norm = 0.0
            else:
                err_norm = ht * e5 / np.sqrt((e5 + 0.01 * e3) * ncomp)

            if err_norm < 1.0:
                x, y, f = x_new, y_new, f_new
                factor = MAX_FACTOR if err_norm == 0.0 else min(
                    MAX_FACTOR, SAFETY * err_norm ** tb.ERROR_EXPONENT)
                # a step clamped to a stop point says nothing about the
                # natural step size, so never let it shrink h
                h = max(h, ht * factor) if clamped else ht * factor
                m = float(np.max(np.abs(y)))
                if m > RENORM_THRESHOLD:
                    y /= m
                    f /= m
                    logscale += np.log(m)
            else:
                h = ht * max(MIN_FACTOR, SAFETY * err_norm ** tb.ERROR_EXPONENT)
        if logscale != 0.0:
            m = max(1.0, float(np.max(np.abs(y))))
            if logscale + np.log(m) > EXP_OVERFLOW:
                raise KernelError("solution magnitude overflow at z=%r" % (z,))
            out[iout] = y * np.exp(logscale)
        else:
            out[iout] = y
    return out
