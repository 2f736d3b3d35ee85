"""Independent brute-force references used to certify the main build.

Deliberately different numerics than the production route (matrix
eigenvalues and closed forms instead of ODE integration plus root
finding), so agreement is evidence rather than tautology.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal, eigvalsh

from .errors import ConvergenceFailure, ValidationError
from .potentials import PeriodicPotential, PotentialPair


# -- trigonometric-basis band solver ----------------------------------------

def _p_hat(p: PeriodicPotential, m: int) -> complex:
    """Complex Fourier coefficient of p at harmonic m."""
    if m == 0:
        return complex(p.c0)
    a = abs(m)
    if a > p.n_harmonics:
        return 0j
    c = 0.5 * (p.cos_coef[a - 1] - 1j * p.sin_coef[a - 1])
    return c if m > 0 else c.conjugate()


def periodic_matrix_eigs(p: PeriodicPotential, n_basis=64, antiperiodic=False):
    """Eigenvalues of -y'' + p y with (anti)periodic boundary conditions,
    from the truncated exponential basis."""
    if antiperiodic:
        ks = np.arange(-n_basis, n_basis)
        freqs = math.pi * (2 * ks + 1)
        harm = (ks[:, None] - ks[None, :])
    else:
        ks = np.arange(-n_basis, n_basis + 1)
        freqs = 2 * math.pi * ks
        harm = (ks[:, None] - ks[None, :])
    n = len(freqs)
    H = np.zeros((n, n), complex)
    for i in range(n):
        H[i, i] = freqs[i] ** 2
    kmax = p.n_harmonics
    for i in range(n):
        for j in range(n):
            m = int(harm[i, j])
            if m != 0 and abs(m) <= kmax:
                H[i, j] += _p_hat(p, m)
    return np.sort(eigvalsh(H))


def _cos_moment(p: PeriodicPotential, j: int) -> float:
    """P(j) = integral_0^1 p(x) cos(pi j x) dx, exact for the series."""
    j = abs(j)
    if j == 0:
        return p.c0
    if j % 2 == 0:
        k = j // 2
        return 0.5 * p.cos_coef[k - 1] if k <= p.n_harmonics else 0.0
    total = 0.0
    for k in range(1, p.n_harmonics + 1):
        total += p.sin_coef[k - 1] * (4 * k / math.pi) / (4 * k * k - j * j)
    return total


def dirichlet_matrix_eigs(p: PeriodicPotential, n_basis=64):
    """Dirichlet eigenvalues on [0,1] from the sine basis."""
    ms = np.arange(1, n_basis + 1)
    H = np.zeros((n_basis, n_basis))
    for i, mi in enumerate(ms):
        H[i, i] = (math.pi * mi) ** 2 + _cos_moment(p, 0) - _cos_moment(p, 2 * mi)
        for j in range(i + 1, n_basis):
            mj = ms[j]
            H[i, j] = H[j, i] = (_cos_moment(p, mi - mj)
                                 - _cos_moment(p, mi + mj))
    return np.sort(eigvalsh(H))


def neumann_matrix_eigs(p: PeriodicPotential, n_basis=64):
    """Neumann eigenvalues on [0,1] from the cosine basis (incl. constant)."""
    n = n_basis + 1
    H = np.zeros((n, n))
    H[0, 0] = _cos_moment(p, 0)
    for i in range(1, n):
        H[0, i] = H[i, 0] = math.sqrt(2.0) * _cos_moment(p, i)
        H[i, i] = (math.pi * i) ** 2 + _cos_moment(p, 0) + _cos_moment(p, 2 * i)
        for j in range(i + 1, n):
            H[i, j] = H[j, i] = (_cos_moment(p, i - j) + _cos_moment(p, i + j))
    return np.sort(eigvalsh(H))


@dataclass(frozen=True)
class OracleBands:
    """Band edges and auxiliary spectra (energies) with a truncation
    certificate: the change under basis doubling."""

    n_max: int
    e0_plus: float
    E_minus: np.ndarray
    E_plus: np.ndarray
    mu_sq: np.ndarray
    nu_sq: np.ndarray
    certificate: float


def fourier_band_solver(p: PeriodicPotential, n_max, n_basis=None,
                        tol=1e-8) -> OracleBands:
    """Periodic/antiperiodic plus Dirichlet/Neumann eigenvalues from
    truncated trigonometric matrices, with a basis-doubling certificate."""
    if n_max < 1:
        raise ValidationError("n_max must be >= 1")
    if n_basis is None:
        n_basis = max(4 * n_max, 32, 2 * p.n_harmonics + 8)

    def assemble(nb):
        per = periodic_matrix_eigs(p, nb)
        anti = periodic_matrix_eigs(p, nb, antiperiodic=True)
        dir_ = dirichlet_matrix_eigs(p, nb)
        neu = neumann_matrix_eigs(p, nb)
        e0 = per[0]
        Em = np.empty(n_max)
        Ep = np.empty(n_max)
        for n in range(1, n_max + 1):
            if n % 2 == 1:
                j = n - 1
                Em[n - 1], Ep[n - 1] = anti[j], anti[j + 1]
            else:
                j = n - 1
                Em[n - 1], Ep[n - 1] = per[j], per[j + 1]
        return e0, Em, Ep, dir_[:n_max], neu[1:n_max + 1]

    out1 = assemble(n_basis)
    out2 = assemble(2 * n_basis)
    cert = max(float(np.max(np.abs(a - b)))
               for a, b in zip(out1[1:], out2[1:]))
    cert = max(cert, abs(out1[0] - out2[0]))
    if cert > tol:
        raise ConvergenceFailure(
            "band oracle moved %.3e under basis doubling (tol %.1e)"
            % (cert, tol))
    e0, Em, Ep, mu2, nu2 = out2
    return OracleBands(n_max, float(e0), Em, Ep, mu2, nu2, cert)


# -- truncated-domain eigensolver -------------------------------------------

@dataclass(frozen=True)
class OracleEigenvalues:
    values: np.ndarray
    errors: np.ndarray
    periods: int
    pts_per_period: int


def _fd_window_eigs(pair: PotentialPair, window, periods, pts_per_period):
    lo, hi = window
    a = -float(periods)
    b = pair.t + float(periods)
    n = int(round((b - a) * pts_per_period))
    h = (b - a) / n
    x = a + h * np.arange(1, n)
    V = pair.p(x) + pair.q(x)
    diag = 2.0 / h ** 2 + V
    off = np.full(n - 2, -1.0 / h ** 2)
    pad = 4.0 * max(1.0, abs(lo), abs(hi)) * h ** 2 + 1e-6
    vals = eigh_tridiagonal(diag, off, select="v",
                            select_range=(lo - pad, hi + pad),
                            eigvals_only=True)
    return np.sort(vals), pad


def _richardson_window(pair, window, periods, pts):
    v1, _ = _fd_window_eigs(pair, window, periods, pts)
    v2, pad = _fd_window_eigs(pair, window, periods, 2 * pts)
    lo, hi = window
    # pair up by proximity: the h/2 run is authoritative
    out = []
    for v in v2:
        if len(v1) == 0:
            break
        i = int(np.argmin(np.abs(v1 - v)))
        if abs(v1[i] - v) < 100.0 * pad + 1e-3:
            out.append((4.0 * v - v1[i]) / 3.0)
    vals = np.array([v for v in out if lo <= v <= hi])
    return np.sort(vals)


def truncated_eigensolver(pair: PotentialPair, window, periods=10,
                          pts_per_period=200, tol=1e-7,
                          max_periods=160) -> OracleEigenvalues:
    """Eigenvalues of the truncated Dirichlet problem on [-L, t+L] inside
    the window, Richardson-extrapolated in the grid and certified by
    doubling L until values settle."""
    lo, hi = window
    if hi <= lo:
        raise ValidationError("empty eigenvalue window")
    prev = _richardson_window(pair, window, periods, pts_per_period)
    L = periods
    while True:
        L2 = 2 * L
        if L2 > max_periods:
            raise ConvergenceFailure(
                "eigenvalues did not settle up to L=%d periods" % L)
        cur = _richardson_window(pair, window, L2, pts_per_period)
        if len(cur) == len(prev):
            moved = (float(np.max(np.abs(cur - prev)))
                     if len(cur) else 0.0)
            if moved < tol:
                return OracleEigenvalues(cur, np.full(len(cur), moved),
                                         L2, pts_per_period)
        prev, L = cur, L2


# -- closed-form square well -------------------------------------------------

def _stable_sin_ratio(zp, w):
    """sin(z' w)/z', stable as z' -> 0."""
    u = zp * w
    if abs(u) < 1e-4:
        return w * (1.0 - u * u / 6.0 * (1.0 - u * u / 20.0))
    return cmath.sin(u) / zp


def squarewell_amplitudes(z, height, width):
    """(a, b) for p = 0 and q = height on [0, width], by interface matching."""
    z = complex(z)
    if z == 0:
        raise ValidationError("z = 0 is a band edge of the free problem")
    zp = cmath.sqrt(z * z - height)
    cw = cmath.cos(zp * width)
    sr = _stable_sin_ratio(zp, width)
    ph = cmath.exp(1j * z * width)
    a = ph * (cw - 1j * ((2 * z * z - height) / (2 * z)) * sr)
    b = ph * height * sr / (2j * z)
    return a, b


def _squarewell_a_and_deriv(z, height, width):
    z = complex(z)
    zp2 = z * z - height
    zp = cmath.sqrt(zp2)
    cw = cmath.cos(zp * width)
    sr = _stable_sin_ratio(zp, width)        # sin(z'w)/z'
    r = (2 * z * z - height) / (2 * z)       # r = (z^2 + z'^2)/(2 z)
    g = cw - 1j * r * sr
    # dg/dz: d(cos z'w)/dz = -w sin(z'w) z/z' = -w z sr
    dr = (2 * z * z + height) / (2 * z * z)
    # d(sr)/dz = (w cos(z'w) - sr) * z / z'^2 ;  stable near z' = 0
    if abs(zp2) > 1e-8:
        dsr = (width * cw - sr) * z / zp2
    else:
        dsr = -z * width ** 3 / 3.0
    dg = -width * z * sr - 1j * (dr * sr + r * dsr)
    ph = cmath.exp(1j * z * width)
    a = ph * g
    da = ph * (1j * width * g + dg)
    return a, da


def squarewell_roots(height, width, n_lowest=20, re_max=None,
                     include_axis=True):
    """Zeros of the transmission-amplitude numerator a(z) continued off the
    real axis, by Newton on the closed form from a grid of starts. Returns
    the n_lowest roots with Im z < 0 sorted by modulus (resonances and, on
    the negative imaginary axis, antibound states)."""
    if re_max is None:
        re_max = (n_lowest + 6) * math.pi / width
    starts = []
    for k in range(1, int(re_max * width / math.pi) + 2):
        for im in (-0.4, -1.2, -2.5, -4.0):
            starts.append(complex(k * math.pi / width, im))
    if include_axis:
        for v in np.linspace(0.3, max(4.0, math.sqrt(abs(height)) + 2), 40):
            starts.append(complex(0.0, -v))
            if height < 0:
                starts.append(complex(0.0, v))
    roots = []
    for z0 in starts:
        z = z0
        ok = False
        for _ in range(60):
            a, da = _squarewell_a_and_deriv(z, height, width)
            if da == 0:
                break
            step = a / da
            z -= step
            if abs(step) < 1e-13 * (1 + abs(z)):
                ok = True
                break
        if not ok or abs(z) < 1e-8:
            continue
        a, _ = _squarewell_a_and_deriv(z, height, width)
        if abs(a) > 1e-9:
            continue
        if not any(abs(z - r) < 1e-7 * (1 + abs(r)) for r in roots):
            roots.append(z)
    roots = [r for r in roots if r.imag < 1e-12]
    roots.sort(key=abs)
    return roots[:n_lowest]
