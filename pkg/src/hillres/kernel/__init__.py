"""Integration kernel with compiled core and pure-Python fallback.

The compiled extension ``_core`` (Cython) is preferred; if it is not built,
or if the environment variable ``HILLRES_PURE`` is set to a non-empty
value, the numpy twin ``pure`` is used. Both expose the same
``integrate_system`` contract and are tested against each other.
"""

import os

import numpy as np

from . import pure
from .pure import KernelError

if os.environ.get("HILLRES_PURE"):
    _impl = pure
    BACKEND = "pure"
else:
    try:
        from . import _core as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = pure
        BACKEND = "pure"


def backend_name():
    return BACKEND


def integrate_raw(z, x0, stops, y0, pot, use_q, deriv, rtol, atol):
    """Low-level dispatch; ``pot`` is (pc0, pcos, psin, qbreaks, qcoefs)."""
    pc0, pcos, psin, qb, qc = pot
    return _impl.integrate_system(z, x0, stops, y0, pc0, pcos, psin, qb, qc,
                                  use_q, deriv, rtol, atol)


def integrate(z, x0, targets, y0, pot, use_q=False, deriv=False,
              rtol=1e-12, atol=1e-12):
    """Integrate the fundamental system from x0 through the targets.

    Inserts the compact potential's breakpoints as additional stop points
    so every integration subinterval has a smooth right-hand side, then
    returns the state only at the requested targets (shape (len(targets),
    ncomp)). Targets must be monotone and must not contain x0.
    """
    targets = np.asarray(targets, float)
    if targets.size == 0:
        return np.zeros((0, len(y0)), complex)
    qb = np.asarray(pot[3], float)
    dirn = 1.0 if targets[-1] >= x0 else -1.0
    if use_q and qb.size:
        lo, hi = min(x0, targets[-1]), max(x0, targets[-1])
        inner = qb[(qb > lo + 1e-15) & (qb < hi - 1e-15)]
    else:
        inner = np.array([])
    if inner.size:
        # drop break points that duplicate a target up to roundoff
        dist = np.min(np.abs(inner[:, None] - targets[None, :]), axis=1)
        inner = inner[dist > 1e-14 * (1 + np.abs(inner))]
    if inner.size:
        merged = np.concatenate([targets, inner])
        is_target = np.concatenate(
            [np.ones(len(targets), bool), np.zeros(len(inner), bool)])
        order = np.argsort(dirn * merged, kind="stable")
        merged, is_target = merged[order], is_target[order]
        Y = integrate_raw(z, x0, merged, y0, pot, use_q, deriv, rtol, atol)
        return Y[is_target]
    return integrate_raw(z, x0, targets, y0, pot, use_q, deriv, rtol, atol)
