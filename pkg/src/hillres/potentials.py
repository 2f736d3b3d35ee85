"""Potential pair model: periodic part p, compact part q, derived constants.

The periodic part is always held as a finite cosine/sine series (uniform
samples are converted by trigonometric interpolation); the compact part is
always held as contiguous polynomial pieces covering [0, t] (uniform
samples become piecewise-constant cells). Fourier data of q is computed in
closed form, exact for the representation class.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ParseError, ValidationError

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _quad_abs(f, a, b, panels):
    """Gauss-Legendre of |f| over [a,b] with the given panel count."""
    edges = np.linspace(a, b, panels + 1)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
        total += half * float(np.abs(f(mid + half * _GL_NODES)) @ _GL_WEIGHTS)
    return total


def _quad_abs_adaptive(f, a, b, base_panels):
    if b <= a:
        return 0.0
    panels = max(1, base_panels)
    val = _quad_abs(f, a, b, panels)
    for _ in range(6):
        val2 = _quad_abs(f, a, b, 2 * panels)
        if abs(val2 - val) <= 1e-12 * (1.0 + abs(val2)):
            return val2
        panels *= 2
        val = val2
    return val2


@dataclass(frozen=True)
class PeriodicPotential:
    """Real 1-periodic potential as a finite cosine/sine series.

    p(x) = c0 + sum_k cos_coef[k-1] cos(2 pi k x) + sin_coef[k-1] sin(2 pi k x)
    """

    c0: float
    cos_coef: np.ndarray
    sin_coef: np.ndarray

    @classmethod
    def zero(cls):
        return cls(0.0, np.zeros(0), np.zeros(0))

    @classmethod
    def from_series(cls, c0, cos=(), sin=()):
        cos = np.asarray(cos, float)
        sin = np.asarray(sin, float)
        k = max(len(cos), len(sin))
        cos = np.pad(cos, (0, k - len(cos)))
        sin = np.pad(sin, (0, k - len(sin)))
        return cls(float(c0), cos, sin)

    @classmethod
    def from_samples(cls, values):
        """Trigonometric interpolation of uniform samples at x_j = j/N."""
        v = np.asarray(values, float)
        if v.size < 1:
            raise ValidationError("periodic samples must be non-empty")
        n = v.size
        spec = np.fft.rfft(v) / n
        c0 = float(spec[0].real)
        k = n // 2
        cos = 2.0 * spec[1:k + 1].real
        sin = -2.0 * spec[1:k + 1].imag
        if n % 2 == 0 and k >= 1:
            cos[-1] *= 0.5
            sin[-1] = 0.0
        return cls(c0, np.asarray(cos), np.asarray(sin))

    def __call__(self, x):
        x = np.asarray(x, float)
        v = np.full_like(x, self.c0, dtype=float)
        for k in range(len(self.cos_coef)):
            w = 2.0 * np.pi * (k + 1) * x
            v += self.cos_coef[k] * np.cos(w) + self.sin_coef[k] * np.sin(w)
        return v if v.ndim else float(v)

    @property
    def mean(self):
        return self.c0

    @property
    def n_harmonics(self):
        return len(self.cos_coef)

    def fourier(self, n):
        """p_n = integral_0^1 p(x) e^{-2 pi i n x} dx = p_cn - i p_sn, n >= 1."""
        if n < 1:
            raise ValueError("fourier index must be >= 1")
        if n > len(self.cos_coef):
            return 0.0 + 0.0j
        return 0.5 * (self.cos_coef[n - 1] - 1j * self.sin_coef[n - 1])

    def shifted(self, c):
        """p - c (used for the spectral-bottom normalization)."""
        return PeriodicPotential(self.c0 - c, self.cos_coef, self.sin_coef)

    @cached_property
    def norm_l1(self):
        """Integral over one period of |p|."""
        return _quad_abs_adaptive(self, 0.0, 1.0,
                                  4 * (self.n_harmonics + 1))

    def norm_l1_on(self, t):
        """Integral of |p| over [0, t]."""
        whole, frac = divmod(t, 1.0)
        val = whole * self.norm_l1
        if frac > 0:
            val += _quad_abs_adaptive(self, 0.0, frac,
                                      4 * (self.n_harmonics + 1))
        return val

    @cached_property
    def norm_l2_sq(self):
        """Parseval: integral of p^2 over one period."""
        return self.c0 ** 2 + 0.5 * float(
            self.cos_coef @ self.cos_coef + self.sin_coef @ self.sin_coef)


def _poly_eval(coefs, u):
    acc = np.zeros_like(np.asarray(u, float))
    for c in coefs[::-1]:
        acc = acc * u + c
    return acc


def _poly_cos_sin_moments(deg, omega, length):
    """(integral of u^j cos(omega u), u^j sin(omega u)) over [0, length]."""
    ic = np.empty(deg + 1)
    is_ = np.empty(deg + 1)
    s, c = math.sin(omega * length), math.cos(omega * length)
    ic[0] = s / omega
    is_[0] = 2.0 * math.sin(0.5 * omega * length) ** 2 / omega
    pw = 1.0
    for j in range(1, deg + 1):
        pw *= length
        ic[j] = pw * s / omega - (j / omega) * is_[j - 1]
        is_[j] = -pw * c / omega + (j / omega) * ic[j - 1]
    return ic, is_


@dataclass(frozen=True)
class CompactPotential:
    """Real compactly supported potential on [0, t], piecewise polynomial.

    breaks has m+1 ascending entries with breaks[0]=0 and breaks[-1]=t;
    coefs[i] are the coefficients (ascending degree) of the polynomial in
    the local variable x - breaks[i] on piece i. q vanishes outside [0, t].
    """

    t: float
    breaks: np.ndarray
    coefs: np.ndarray

    @classmethod
    def zero(cls, t=1.0):
        return cls(float(t), np.array([0.0, float(t)]), np.zeros((1, 1)))

    @classmethod
    def from_pieces(cls, t, pieces):
        """pieces: iterable of (a, b, coeffs ascending degree)."""
        t = float(t)
        if t <= 0:
            raise ValidationError("t must be positive")
        pieces = sorted(((float(a), float(b), np.asarray(c, float))
                         for a, b, c in pieces), key=lambda p: p[0])
        if not pieces:
            raise ValidationError("empty piece list (empty support)")
        for a, b, c in pieces:
            if not (0.0 <= a < b <= t + 1e-12):
                raise ValidationError(
                    "piece [%g, %g] outside [0, t=%g]" % (a, b, t))
        for (a0, b0, _), (a1, b1, _) in zip(pieces[:-1], pieces[1:]):
            if a1 < b0 - 1e-12:
                raise ValidationError("overlapping pieces at x=%g" % a1)
        # fill uncovered stretches with zero pieces so coverage is contiguous
        full = []
        cursor = 0.0
        for a, b, c in pieces:
            if a > cursor + 1e-12:
                full.append((cursor, a, np.zeros(1)))
            full.append((max(a, cursor), min(b, t), c))
            cursor = min(b, t)
        if cursor < t - 1e-12:
            full.append((cursor, t, np.zeros(1)))
        dmax = max(len(c) for _, _, c in full)
        breaks = np.array([p[0] for p in full] + [t])
        coefs = np.zeros((len(full), dmax))
        for i, (_, _, c) in enumerate(full):
            coefs[i, :len(c)] = c
        return cls(t, breaks, coefs)

    @classmethod
    def from_samples(cls, t, values):
        """Uniform cells on [0, t]; values[i] on [i t/N, (i+1) t/N)."""
        v = np.asarray(values, float)
        if v.size < 1:
            raise ValidationError("compact samples must be non-empty")
        n = v.size
        return cls.from_pieces(
            t, [(i * t / n, (i + 1) * t / n, [v[i]]) for i in range(n)])

    def __call__(self, x):
        x = np.atleast_1d(np.asarray(x, float))
        out = np.zeros_like(x)
        inside = (x >= 0.0) & (x <= self.t)
        if inside.any():
            idx = np.clip(np.searchsorted(self.breaks, x[inside],
                                          side="right") - 1,
                          0, len(self.coefs) - 1)
            u = x[inside] - self.breaks[idx]
            vals = np.zeros_like(u)
            for i in np.unique(idx):
                m = idx == i
                vals[m] = _poly_eval(self.coefs[i], u[m])
            out[inside] = vals
        return out if np.ndim(x) and out.size > 1 else float(out[0])

    @cached_property
    def q0(self):
        """Signed integral of q."""
        total = 0.0
        for i in range(len(self.coefs)):
            length = self.breaks[i + 1] - self.breaks[i]
            for j, c in enumerate(self.coefs[i]):
                total += c * length ** (j + 1) / (j + 1)
        return total

    @cached_property
    def norm_l1(self):
        """Integral over [0, t] of |q| (exact up to piece root splitting)."""
        total = 0.0
        for i in range(len(self.coefs)):
            a, b = self.breaks[i], self.breaks[i + 1]
            c = self.coefs[i]
            pts = [0.0, b - a]
            if len(c) > 1 and np.any(c[1:] != 0.0):
                roots = np.polynomial.polynomial.polyroots(c)
                pts += [float(r.real) for r in roots
                        if abs(r.imag) < 1e-12 and 0.0 < r.real < b - a]
            pts = sorted(set(pts))
            for lo, hi in zip(pts[:-1], pts[1:]):
                seg = 0.0
                for j, cj in enumerate(c):
                    seg += cj * (hi ** (j + 1) - lo ** (j + 1)) / (j + 1)
                total += abs(seg)
        return total

    def fourier(self, n):
        """(integral q cos 2 pi n x, integral q sin 2 pi n x), closed form."""
        if n < 0:
            raise ValueError("fourier index must be >= 0")
        if n == 0:
            return self.q0, 0.0
        omega = 2.0 * np.pi * n
        qc = qs = 0.0
        for i in range(len(self.coefs)):
            a = self.breaks[i]
            length = self.breaks[i + 1] - a
            c = self.coefs[i]
            ic, is_ = _poly_cos_sin_moments(len(c) - 1, omega, length)
            mc = float(c @ ic[:len(c)])
            ms = float(c @ is_[:len(c)])
            ca, sa = math.cos(omega * a), math.sin(omega * a)
            qc += ca * mc - sa * ms
            qs += sa * mc + ca * ms
        return qc, qs

    def fourier_complex(self, n):
        """q_hat_n = q_cn + i q_sn with phase tau_n (q_hat = |q_hat| e^{i tau})."""
        qc, qs = self.fourier(n)
        return complex(qc, qs)

    @cached_property
    def hull_slack(self):
        """Distance from 0 / t to the first / last non-vanishing piece.

        The support hull is only known to the resolution of the
        representation; nonzero slack is recorded, not an error.
        """
        nz = [i for i in range(len(self.coefs))
              if np.any(np.abs(self.coefs[i]) > 0.0)]
        if not nz:
            return self.t, self.t
        return float(self.breaks[nz[0]]), float(self.t - self.breaks[nz[-1] + 1])

    @property
    def is_zero(self):
        return not np.any(np.abs(self.coefs) > 0.0)

    def scaled(self, factor):
        return CompactPotential(self.t, self.breaks, self.coefs * factor)

    def reflected(self):
        """q(t - x): support hull is preserved."""
        m = len(self.coefs)
        breaks = self.t - self.breaks[::-1]
        coefs = np.zeros_like(self.coefs)
        for i in range(m):
            # re-expand piece i around its right endpoint, reversed
            c = self.coefs[m - 1 - i]
            length = self.breaks[m - i] - self.breaks[m - 1 - i]
            # r(u) = poly(length - u)
            deg = len(c) - 1
            r = np.zeros(len(c))
            for j, cj in enumerate(c):
                # (length - u)^j expanded
                for kk in range(j + 1):
                    r[kk] += cj * math.comb(j, kk) * (length ** (j - kk)) * (-1) ** kk
            coefs[i, :len(r)] = r
        return CompactPotential(self.t, breaks, coefs)


@dataclass(frozen=True)
class DerivedConstants:
    """The explicit constants entering bounds and thresholds."""

    p_norm1: float
    p_norm_t: float
    q_norm_t: float
    c_f: float
    c_star: float
    c_pq: float
    r_p: float
    r_1: float
    n_threshold: float

    @classmethod
    def from_pair(cls, pair):
        p1 = pair.p.norm_l1
        pt = pair.p.norm_l1_on(pair.q.t)
        qt = pair.q.norm_l1
        grow = math.exp(min(600.0, p1 + qt + 2 * pt))
        c_star = qt * grow
        c_f = 12.0 * qt * grow
        c_pq = math.exp(min(600.0, 2 * pt + qt))
        r_p = 8.0 * math.exp(min(600.0, p1))
        r_1 = 11.0 * c_star
        n_thr = 1.0 + math.exp(min(600.0, pair.q.t * math.pi / 2)) * c_f / math.pi
        return cls(p1, pt, qt, c_f, c_star, c_pq, r_p, r_1, n_thr)


@dataclass(frozen=True)
class PotentialPair:
    """Periodic plus compact potential, with kernel-ready arrays."""

    p: PeriodicPotential
    q: CompactPotential

    @property
    def t(self):
        return self.q.t

    @cached_property
    def constants(self):
        return DerivedConstants.from_pair(self)

    def value(self, x):
        return self.p(x) + self.q(x)

    @cached_property
    def kernel_data(self):
        return (self.p.c0, self.p.cos_coef, self.p.sin_coef,
                self.q.breaks, self.q.coefs)

    def with_p(self, p):
        return PotentialPair(p, self.q)

    def with_q(self, q):
        return PotentialPair(self.p, q)


def _require_number(v, what):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValidationError("%s must be a real number, got %r" % (what, v))
    if not math.isfinite(v):
        raise ValidationError("%s must be finite" % what)
    return float(v)


def _require_array(v, what):
    if not isinstance(v, list):
        raise ValidationError("%s must be an array" % what)
    return np.array([_require_number(x, what + " entry") for x in v])


def _parse_periodic(node):
    kind = node.get("type")
    if kind == "fourier":
        return PeriodicPotential.from_series(
            _require_number(node.get("c0", 0.0), "periodic c0"),
            _require_array(node.get("cos", []), "periodic cos"),
            _require_array(node.get("sin", []), "periodic sin"))
    if kind == "samples":
        return PeriodicPotential.from_samples(
            _require_array(node.get("values", []), "periodic values"))
    raise ParseError("periodic type must be 'fourier' or 'samples'")


def _parse_compact(node):
    kind = node.get("type")
    t = _require_number(node.get("t", 0.0), "compact t")
    if t <= 0:
        raise ValidationError("compact support endpoint t must be > 0")
    if kind == "pieces":
        pieces = node.get("pieces")
        if not isinstance(pieces, list) or not pieces:
            raise ValidationError("compact pieces must be a non-empty array")
        parsed = []
        for pc in pieces:
            if not isinstance(pc, dict):
                raise ParseError("each piece must be an object")
            parsed.append((_require_number(pc.get("a"), "piece a"),
                           _require_number(pc.get("b"), "piece b"),
                           _require_array(pc.get("coeffs", []), "piece coeffs")))
        return CompactPotential.from_pieces(t, parsed)
    if kind == "samples":
        return CompactPotential.from_samples(
            t, _require_array(node.get("values", []), "compact values"))
    raise ParseError("compact type must be 'pieces' or 'samples'")


def load_potential_spec(path):
    """Parse and validate a potential spec file into a PotentialPair."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise ParseError("malformed potential spec %s: %s" % (path, exc)) from exc
    if not isinstance(doc, dict):
        raise ParseError("potential spec must be a JSON object")
    if "periodic" not in doc or "compact" not in doc:
        raise ParseError("potential spec needs 'periodic' and 'compact'")
    pair = PotentialPair(_parse_periodic(doc["periodic"]),
                         _parse_compact(doc["compact"]))
    # touch the invariant-bearing derived quantities so loading validates them
    pair.constants
    return pair
