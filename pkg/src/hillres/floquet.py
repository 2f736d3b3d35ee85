"""Monodromy, band/gap structure, quasimomentum and Floquet solutions.

All spectral machinery works in the momentum variable z (energy = z^2) of
the periodic problem normalized so that the bottom of the spectrum sits at
energy 0: the engine shifts p by its lowest periodic eigenvalue at
construction and records the shift. Reported energies are shifted back.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from . import kernel
from .errors import (BranchTrackingError, DirichletSingularity,
                     EdgeResolutionError, GapUnresolved, StepFailure)
from .potentials import PeriodicPotential, PotentialPair

PHYSICAL = "physical"
NONPHYSICAL = "nonphysical"

_REAL_EPS = 1e-13


@dataclass(frozen=True)
class MomentumPoint:
    """Point on the two-sheeted momentum surface.

    Off the real axis the sheet is determined by sign(Im z); on a gap
    closure the rim sign (+1 upper/physical, -1 lower/non-physical) and the
    gap index resolve the sheet.
    """

    z: complex
    sheet: str
    gap_index: Optional[int] = None
    rim: Optional[int] = None

    @classmethod
    def from_z(cls, z, rim=None, gap_index=None):
        z = complex(z)
        if abs(z.imag) > _REAL_EPS * (1 + abs(z.real)):
            return cls(z, PHYSICAL if z.imag > 0 else NONPHYSICAL,
                       gap_index, rim)
        if rim is None:
            rim = 1
        return cls(z, PHYSICAL if rim > 0 else NONPHYSICAL, gap_index, rim)


@dataclass(frozen=True)
class MonodromyData:
    """Period-map data at momentum z: discriminant and friends."""

    z: complex
    delta: complex
    beta: complex
    phi1: complex
    theta1p: complex
    theta1: complex
    phi1p: complex
    ld0_residual: float
    ddelta: Optional[complex] = None
    dbeta: Optional[complex] = None
    dphi1: Optional[complex] = None
    dtheta1p: Optional[complex] = None


@dataclass(frozen=True)
class FundamentalValues:
    """theta, phi and derivatives on a grid of x points."""

    z: complex
    x: np.ndarray
    theta: np.ndarray
    theta_p: np.ndarray
    phi: np.ndarray
    phi_p: np.ndarray

    @property
    def wronskian_drift(self):
        w = self.theta * self.phi_p - self.theta_p * self.phi
        scale = np.maximum(1.0, np.abs(self.theta * self.phi_p) +
                           np.abs(self.theta_p * self.phi))
        return float(np.max(np.abs(w - 1.0) / scale))


@dataclass(frozen=True)
class GapRow:
    n: int
    e_minus: float
    e_plus: float
    mu: float
    nu: float
    e_star: float
    h: float
    closed: bool

    @property
    def gap_len(self):
        return 0.0 if self.closed else self.e_plus - self.e_minus

    @property
    def gamma_len(self):
        """Gap length in energy."""
        return 0.0 if self.closed else self.e_plus ** 2 - self.e_minus ** 2


@dataclass
class BandStructure:
    """Band edges, auxiliary spectra and gap extrema up to n_max."""

    n_max: int
    shift: float
    rows: list = field(default_factory=list)

    def gap(self, n) -> GapRow:
        if not 1 <= n <= len(self.rows):
            raise GapUnresolved("gap %d beyond resolved band structure" % n)
        return self.rows[n - 1]

    def band_interval(self, n):
        """The n-th band (e_{n-1}^+, e_n^-) in momentum, n >= 1."""
        lo = 0.0 if n == 1 else self.gap(n - 1).e_plus
        return lo, self.gap(n).e_minus

    @property
    def coverage(self):
        return self.gap(self.n_max).e_plus if self.rows else 0.0

    def locate(self, x, edge_tol=1e-12):
        """Classify a real momentum x>=0: ('band'|'gap'|'edge', n[, side])."""
        if x < 0:
            raise ValueError("locate expects x >= 0")
        if x > self.coverage:
            raise GapUnresolved("momentum %g beyond resolved bands" % x)
        for row in self.rows:
            if x < row.e_minus - edge_tol:
                return ("band", row.n)
            if row.closed:
                if abs(x - row.e_star) <= edge_tol:
                    return ("edge", row.n, 0)
                if x <= row.e_star:
                    return ("band", row.n)
                continue
            if abs(x - row.e_minus) <= edge_tol:
                return ("edge", row.n, -1)
            if abs(x - row.e_plus) <= edge_tol:
                return ("edge", row.n, +1)
            if x < row.e_plus:
                return ("gap", row.n)
        return ("band", self.n_max + 1)


class HillEngine:
    """Per-pair evaluation engine for the periodic problem.

    Pure given (pair, z); all caches are value caches keyed by z, so
    parallel use over z-grids is deterministic.
    """

    def __init__(self, pair: PotentialPair, rtol=1e-12, atol=1e-12,
                 normalize=True):
        self.raw_pair = pair
        self.rtol = float(rtol)
        self.atol = float(atol)
        self.closed_gap_tol = 1e-8
        if normalize:
            self.shift = self._find_spectral_bottom(pair.p)
        else:
            self.shift = 0.0
        self.pair = pair.with_p(pair.p.shifted(self.shift))
        self._pdata = (self.pair.p.c0, self.pair.p.cos_coef,
                       self.pair.p.sin_coef, np.zeros(0), np.zeros((0, 1)))
        self._mono_cache = {}
        self._band: Optional[BandStructure] = None

    # -- fundamental system ------------------------------------------------

    def _find_spectral_bottom(self, p: PeriodicPotential):
        """Lowest periodic eigenvalue of -y'' + p y, by matrix estimate
        plus a discriminant-level Brent polish."""
        from .oracles import periodic_matrix_eigs
        est = float(periodic_matrix_eigs(p, n_basis=max(48, 4 * p.n_harmonics))[0])

        def g(lam):
            z = math.sqrt(lam) if lam >= 0 else 1j * math.sqrt(-lam)
            return (self._monodromy_for(p, z).delta - 1.0).real

        lo, hi = est - 0.25, est + 0.25
        tries = 0
        while g(lo) <= 0 and tries < 60:
            lo -= 0.5
            tries += 1
        while g(hi) >= 0 and tries < 120:
            hi += 0.25
            tries += 1
        if g(lo) <= 0 or g(hi) >= 0:
            raise EdgeResolutionError("cannot bracket the spectral bottom")
        lam0 = brentq(g, lo, hi, xtol=1e-13, rtol=8.9e-16)
        return float(lam0)

    def _monodromy_for(self, p: PeriodicPotential, z, deriv=False):
        pdata = (p.c0, p.cos_coef, p.sin_coef, np.zeros(0), np.zeros((0, 1)))
        ncomp = 8 if deriv else 4
        y0 = np.zeros(ncomp, complex)
        y0[0] = 1.0
        y0[3] = 1.0
        Y = kernel.integrate(z, 0.0, [1.0], y0, pdata, use_q=False,
                             deriv=deriv, rtol=self.rtol, atol=self.atol)[0]
        return self._mono_from_row(z, Y, deriv)

    @staticmethod
    def _mono_from_row(z, Y, deriv):
        th, thp, ph, php = Y[0], Y[1], Y[2], Y[3]
        delta = 0.5 * (php + th)
        beta = 0.5 * (php - th)
        lhs = beta * beta + 1.0 - delta * delta
        rhs = -ph * thp
        resid = abs(lhs - rhs) / (1.0 + abs(rhs))
        if deriv:
            dth, dthp, dph, dphp = Y[4], Y[5], Y[6], Y[7]
            return MonodromyData(z, delta, beta, ph, thp, th, php, resid,
                                 0.5 * (dphp + dth), 0.5 * (dphp - dth),
                                 dph, dthp)
        return MonodromyData(z, delta, beta, ph, thp, th, php, resid)

    def monodromy(self, z, deriv=False) -> MonodromyData:
        z = complex(z)
        key = (z, deriv)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        ncomp = 8 if deriv else 4
        y0 = np.zeros(ncomp, complex)
        y0[0] = 1.0
        y0[3] = 1.0
        try:
            Y = kernel.integrate(z, 0.0, [1.0], y0, self._pdata, use_q=False,
                                 deriv=deriv, rtol=self.rtol, atol=self.atol)[0]
        except kernel.KernelError as exc:
            raise StepFailure(str(exc)) from exc
        mono = self._mono_from_row(z, Y, deriv)
        if len(self._mono_cache) > 300_000:
            self._mono_cache.clear()
        self._mono_cache[key] = mono
        return mono

    def fundamental(self, z, xs) -> FundamentalValues:
        """Fundamental system of the periodic problem on xs within [0, 1]."""
        xs = np.asarray(xs, float)
        if np.any((xs < 0) | (xs > 1)):
            raise ValueError("fundamental grid must lie in [0, 1]")
        order = np.argsort(xs, kind="stable")
        stops = xs[order]
        y0 = np.array([1, 0, 0, 1], complex)
        pos = stops > 0
        Y = np.empty((len(stops), 4), complex)
        Y[~pos] = y0
        if pos.any():
            try:
                Y[pos] = kernel.integrate(z, 0.0, stops[pos], y0, self._pdata,
                                          use_q=False, deriv=False,
                                          rtol=self.rtol, atol=self.atol)
            except kernel.KernelError as exc:
                raise StepFailure(str(exc)) from exc
        out = np.empty_like(Y)
        out[order] = Y
        return FundamentalValues(z, xs, out[:, 0], out[:, 1],
                                 out[:, 2], out[:, 3])

    def transfer_at(self, z, xs):
        """2x2 transfer matrices [[theta, phi], [theta', phi']] at global
        x >= 0, using monodromy powers beyond the first period."""
        xs = np.asarray(xs, float)
        whole = np.floor(xs + 1e-15).astype(int)
        frac = xs - whole
        snap = frac > 1.0 - 1e-15
        whole[snap] += 1
        frac[snap] = 0.0
        uniq = np.unique(frac[frac > 1e-15])
        fv = self.fundamental(z, uniq) if uniq.size else None
        fmap = {}
        for i, u in enumerate(uniq):
            fmap[u] = np.array([[fv.theta[i], fv.phi[i]],
                                [fv.theta_p[i], fv.phi_p[i]]])
        mono = self.monodromy(z)
        M = np.array([[mono.theta1, mono.phi1],
                      [mono.theta1p, mono.phi1p]])
        powers = {0: np.eye(2, dtype=complex)}
        mx = int(whole.max()) if len(whole) else 0
        for m in range(1, mx + 1):
            powers[m] = powers[m - 1] @ M
        out = np.empty((len(xs), 2, 2), complex)
        eye = np.eye(2, dtype=complex)
        for i, (w, u) in enumerate(zip(whole, frac)):
            base = fmap[u] if u > 1e-15 else eye
            out[i] = base @ powers[int(w)]
        return out

    # -- band structure ----------------------------------------------------

    def band_structure(self, n_max) -> BandStructure:
        if self._band is not None and self._band.n_max >= n_max:
            return self._band
        self._band = self._compute_band_structure(int(n_max))
        return self._band

    def ensure_coverage(self, z_abs) -> BandStructure:
        n_need = max(1, int(math.ceil(z_abs / math.pi)) + 1)
        return self.band_structure(n_need)

    def _delta_real(self, x, deriv=False):
        m = self.monodromy(complex(x), deriv)
        return m

    def _compute_band_structure(self, n_max) -> BandStructure:
        zmax = math.pi * n_max + math.pi / 2
        per_unit = 8
        extrema = None
        for _ in range(4):
            ngrid = int(round(zmax * per_unit)) + 1
            zs = np.linspace(zmax / ngrid, zmax, ngrid)
            monos = [self.monodromy(complex(x), deriv=True) for x in zs]
            dd = np.array([m.ddelta.real for m in monos])
            sign_change = np.nonzero(np.sign(dd[:-1]) * np.sign(dd[1:]) < 0)[0]
            if len(sign_change) == n_max:
                extrema = []
                for i in sign_change:
                    zst = brentq(lambda x: self.monodromy(complex(x), True)
                                 .ddelta.real, zs[i], zs[i + 1],
                                 xtol=1e-13, rtol=8.9e-16)
                    extrema.append(float(zst))
                break
            per_unit *= 2
        if extrema is None:
            raise EdgeResolutionError(
                "discriminant extrema count does not match %d gaps" % n_max)

        rows = []
        prev_extremum = 0.0
        for n, zst in enumerate(extrema, start=1):
            sgn = -1.0 if n % 2 else 1.0  # (-1)^n
            dst = sgn * self.monodromy(complex(zst)).delta.real
            closed_tol = self.closed_gap_tol * max(1.0, math.pi * n)
            h = math.acosh(max(1.0, dst))
            if dst <= 1.0 or 2.0 * h < closed_tol:
                rows.append(GapRow(n, zst, zst, zst, zst, zst,
                                   max(0.0, h), True))
                prev_extremum = zst
                continue

            def f(x, s=sgn):
                return s * self.monodromy(complex(x)).delta.real - 1.0

            left_anchor = 0.5 * (prev_extremum + zst)
            right_anchor = zst + 0.5 * (
                (extrema[n] if n < len(extrema) else zst + math.pi) - zst)
            if f(left_anchor) >= 0 or f(right_anchor) >= 0:
                raise EdgeResolutionError("band anchor inside gap %d" % n)
            e_minus = brentq(f, left_anchor, zst, xtol=1e-14, rtol=8.9e-16)
            e_plus = brentq(f, zst, right_anchor, xtol=1e-14, rtol=8.9e-16)
            e_minus = self._polish_edge(e_minus, sgn, left_anchor, zst)
            e_plus = self._polish_edge(e_plus, sgn, zst, right_anchor)
            if e_plus - e_minus < closed_tol:
                rows.append(GapRow(n, zst, zst, zst, zst, zst, h, True))
            else:
                mu = self._aux_root(n, e_minus, e_plus, "phi1")
                nu = self._aux_root(n, e_minus, e_plus, "theta1p")
                rows.append(GapRow(n, float(e_minus), float(e_plus),
                                   mu, nu, zst, h, False))
            prev_extremum = zst
        return BandStructure(n_max, self.shift, rows)

    def _polish_edge(self, e, sgn, lo, hi):
        for _ in range(3):
            m = self.monodromy(complex(e), deriv=True)
            f = sgn * m.delta.real - 1.0
            df = sgn * m.ddelta.real
            if df == 0:
                break
            step = f / df
            e2 = e - step
            if not (lo <= e2 <= hi):
                break
            e = e2
            if abs(step) < 1e-15 * (1 + abs(e)):
                break
        return e

    def _aux_root(self, n, e_minus, e_plus, which):
        """One root of phi(1,.) or theta'(1,.) in the gap closure."""

        def val(x, deriv=False):
            m = self.monodromy(complex(x), deriv)
            if which == "phi1":
                return (m.phi1.real, m.dphi1.real if deriv else None)
            return (m.theta1p.real, m.dtheta1p.real if deriv else None)

        fa, _ = val(e_minus)
        fb, _ = val(e_plus)
        scale = max(abs(fa), abs(fb), 1e-300)
        if fa * fb < 0 and min(abs(fa), abs(fb)) > 1e-7 * scale:
            root = brentq(lambda x: val(x)[0], e_minus, e_plus,
                          xtol=1e-14, rtol=8.9e-16)
        else:
            root = e_minus if abs(fa) <= abs(fb) else e_plus
        # safeguarded Newton polish, constrained to the closure
        for _ in range(6):
            f, df = val(root, deriv=True)
            if df == 0:
                break
            step = f / df
            nxt = min(max(root - step, e_minus), e_plus)
            if abs(nxt - root) < 1e-15 * (1 + abs(root)):
                root = nxt
                break
            root = nxt
        return float(root)

    # -- quasimomentum -----------------------------------------------------

    def sin_k(self, z, rim=None):
        """sin k(z) with the global branch (Im k > 0 on the upper half
        plane, rim-resolved on gap closures)."""
        z = complex(z)
        if abs(z.imag) > _REAL_EPS * (1 + abs(z.real)):
            d = self.monodromy(z).delta
            s = np.sqrt(complex(1.0) - d * d)
            mod = abs(d + 1j * s)
            if z.imag > 0:
                return s if mod <= 1.0 else -s
            return s if mod >= 1.0 else -s
        x = abs(z.real)
        conj = z.real < 0  # sin k(-z) = -sin k(z)
        band = self.ensure_coverage(x)
        loc = band.locate(x)
        if loc[0] == "band":
            n = loc[1]
            d = self.monodromy(complex(x)).delta.real
            s0 = math.sqrt(max(0.0, (1.0 - d) * (1.0 + d)))
            val = complex((-1.0) ** (n + 1) * s0)
        elif loc[0] == "edge":
            val = complex(0.0)
        else:
            n = loc[1]
            if rim is None:
                raise BranchTrackingError(
                    "rim sign required for sin k inside gap %d" % n)
            d = self.monodromy(complex(x)).delta.real
            v = rim * math.acosh(max(1.0, (-1.0) ** n * d))
            val = (-1.0) ** n * 1j * math.sinh(v)
        return -val if conj else val

    def rim_v(self, x, n, rim):
        """v = Im k on the rim of gap n at real momentum x."""
        d = self.monodromy(complex(x)).delta.real
        return rim * math.acosh(max(1.0, (-1.0) ** n * d))

    def k_value(self, z, rim=None):
        """Full quasimomentum k(z) on the chosen sheet/rim."""
        z = complex(z)
        if abs(z.imag) <= _REAL_EPS * (1 + abs(z.real)):
            x = abs(z.real)
            sgn = 1.0 if z.real >= 0 else -1.0
            band = self.ensure_coverage(x)
            loc = band.locate(x)
            d = self.monodromy(complex(x)).delta.real
            if loc[0] == "band":
                n = loc[1]
                u = math.acos(min(1.0, max(-1.0, (-1.0) ** (n - 1) * d)))
                return sgn * complex((n - 1) * math.pi + u)
            n = loc[1]
            if loc[0] == "edge":
                return sgn * complex(n * math.pi)
            if rim is None:
                raise BranchTrackingError(
                    "rim sign required for k inside gap %d" % n)
            v = self.rim_v(x, n, rim)
            return sgn * complex(n * math.pi) + 1j * v
        sk = self.sin_k(z)
        d = self.monodromy(z).delta
        eik = d + 1j * sk
        k0 = -1j * cmath.log(eik)
        m = round((z - k0).real / (2 * math.pi))
        k = k0 + 2 * math.pi * m
        if abs(k - z) < 0.9 * math.pi:
            return k
        return self._k_by_continuation(z)

    def _k_by_continuation(self, z):
        """Straight-path continuation from the first band's midpoint, with
        step-doubling branch control (jump > pi/2 forces refinement)."""
        band = self.ensure_coverage(abs(z))
        lo, hi = band.band_interval(1)
        z0 = complex(0.5 * (lo + hi))
        k_prev = self.k_value(z0)
        nsteps = 8
        for _ in range(8):
            path = z0 + (z - z0) * np.linspace(0, 1, nsteps + 1)[1:]
            k_cur = k_prev
            ok = True
            for zp in path:
                d = self.monodromy(complex(zp)).delta
                s = np.sqrt(complex(1.0) - d * d)
                cands = []
                for sg in (s, -s):
                    k0 = -1j * cmath.log(d + 1j * sg)
                    m = round((k_cur - k0).real / (2 * math.pi))
                    cands.append(k0 + 2 * math.pi * m)
                k_next = min(cands, key=lambda kk: abs(kk - k_cur))
                if abs(k_next - k_cur) > math.pi / 2:
                    ok = False
                    break
                k_cur = k_next
            if ok:
                return k_cur
            nsteps *= 2
        raise BranchTrackingError("quasimomentum continuation to %r failed"
                                  % (z,))

    # -- Floquet multipliers and solutions ----------------------------------

    def dirichlet_near(self, x_re, radius):
        """mu_n within radius of x_re, or None."""
        if x_re < 0:
            return None
        try:
            band = self.ensure_coverage(x_re + 1.0)
        except EdgeResolutionError:
            return None
        best = None
        for row in band.rows:
            mu = row.mu if not row.closed else row.e_star
            if abs(mu - x_re) < radius:
                if best is None or abs(mu - x_re) < abs(best[0] - x_re):
                    best = (mu, row)
        return best

    def floquet_m(self, point: MomentumPoint):
        """(m_plus, m_minus) at the point; deflated near Dirichlet points."""
        z = complex(point.z)
        mono = self.monodromy(z)
        sk = self.sin_k(z, rim=point.rim)
        near = self.dirichlet_near(z.real, 1e-6 * (1 + abs(z))) \
            if abs(z.imag) < 1e-6 else None
        if near is None:
            if abs(mono.phi1) == 0.0:
                raise DirichletSingularity("phi(1,z) = 0 at z=%r" % (z,))
            mp = (mono.beta + 1j * sk) / mono.phi1
            mm = (mono.beta - 1j * sk) / mono.phi1
            return mp, mm
        mu, row = near
        return self._m_deflated(z, mu, row, point.rim)

    def _m_deflated(self, z, mu, row, rim):
        """First-order Taylor quotient around the Dirichlet point mu."""
        md = self.monodromy(complex(mu), deriv=True)
        h = 1e-5 * (1 + abs(mu))
        mp_ = self.monodromy(complex(mu + h), deriv=True)
        mm_ = self.monodromy(complex(mu - h), deriv=True)
        ddphi1 = (mp_.dphi1 - mm_.dphi1) / (2 * h)
        if row.closed:
            # removable: sin k has a simple zero too; (sin k)'(mu) from
            # the curvature of the discriminant
            ddd = (mp_.ddelta - mm_.ddelta).real / (2 * h)
            sgn = (-1.0) ** row.n
            kp = math.sqrt(max(0.0, -sgn * ddd))
            dsk = sgn * kp
            sk0 = 0.0
            dnum_p = md.dbeta + 1j * dsk
            dnum_m = md.dbeta - 1j * dsk
        else:
            if rim is None and abs(z.imag) <= _REAL_EPS * (1 + abs(z.real)):
                raise DirichletSingularity(
                    "m evaluated at Dirichlet point mu_%d without rim info"
                    % row.n)
            sk0 = self.sin_k(complex(mu), rim=rim if rim is not None
                             else (1 if z.imag >= 0 else -1))
            # d(sin k)/dz = -delta * ddelta / sin k on the rim
            dsk = -md.delta * md.ddelta / sk0 if sk0 != 0 else 0.0
            dnum_p = md.dbeta + 1j * dsk
            dnum_m = md.dbeta - 1j * dsk
        dz = z - mu
        den = md.dphi1 * dz + 0.5 * ddphi1 * dz * dz
        num_p0 = md.beta + 1j * sk0
        num_m0 = md.beta - 1j * sk0
        out = []
        for n0, dn in ((num_p0, dnum_p), (num_m0, dnum_m)):
            rel = abs(n0) / max(1e-300, abs(md.dphi1) * max(abs(dz), 1e-300))
            if dz == 0:
                if abs(n0) > 1e-7 * (1 + abs(md.beta)):
                    raise DirichletSingularity(
                        "m has a genuine pole at mu_%d on this rim" % row.n)
                out.append(dn / md.dphi1)
            else:
                out.append((n0 + dn * dz) / den)
        return out[0], out[1]

    def floquet_psi(self, x, point: MomentumPoint, sign=+1):
        """psi_plusminus(x, z) = theta + m_pm phi, valid for any x >= 0."""
        mp, mm = self.floquet_m(point)
        m = mp if sign > 0 else mm
        T = self.transfer_at(point.z, np.atleast_1d(np.asarray(x, float)))
        psi = T[:, 0, 0] + m * T[:, 0, 1]
        psi_p = T[:, 1, 0] + m * T[:, 1, 1]
        return psi, psi_p

    def exp_ik(self, z, rim=None):
        """e^{i k(z)}: the Floquet multiplier of psi_plus."""
        d = self.monodromy(complex(z)).delta
        return d + 1j * self.sin_k(z, rim=rim)


# -- public operations mirroring the module contract ------------------------

def fundamental_solutions(p: PeriodicPotential, z, grid,
                          rtol=1e-12, atol=1e-12) -> FundamentalValues:
    """Fundamental system of -y'' + p y = z^2 y at the grid points.

    Uses the raw (unshifted) potential; invariants (Wronskian drift,
    a-priori bound) are checked by the caller/tests.
    """
    eng = HillEngine(PotentialPair(p, _unit_zero_q()), rtol=rtol, atol=atol,
                     normalize=False)
    return eng.fundamental(z, grid)


def discriminant(p: PeriodicPotential, z, rtol=1e-12, atol=1e-12,
                 deriv=False) -> MonodromyData:
    eng = HillEngine(PotentialPair(p, _unit_zero_q()), rtol=rtol, atol=atol,
                     normalize=False)
    return eng.monodromy(z, deriv=deriv)


def _unit_zero_q():
    from .potentials import CompactPotential
    return CompactPotential.zero(1.0)
