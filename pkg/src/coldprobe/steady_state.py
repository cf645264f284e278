"""Exact stationary covariances of the damped probe oscillator.

Two routes to the same 2x2 covariance matrix:

* ``covariance_numeric``: frequency-domain quadrature of
  sigma_xx = (1/pi) int_0^inf J(w) coth(w/2T) / |alpha(w)|^2 dw   (and the
  w^2-weighted analogue for sigma_pp), valid for any supported spectrum.

* ``covariance_analytic_ld``: closed form for the Lorentz-Drude bath.
  Expanding coth in Matsubara terms and integrating each term exactly
  reduces the moments to a series sum over n of rational functions whose
  denominator is the cubic p(y) = y^3 + wc y^2 + (w0^2 + 2 gamma wc) y +
  w0^2 wc evaluated at y = nu_n = 2 pi T n; the sum telescopes into
  digamma values at the (shifted, rescaled) cubic roots:

      sigma_xx = T/w0^2 - 2 sum_m c_m  psi(-d_m)
      sigma_pp = T      - 2 sum_m c'_m psi(-d_m)

  with y_m the roots of p, d_m = y_m/nu_1 - 1, and

      c_m  = (y_m + wc) / (2 pi p'(y_m))
      c'_m = (y_m (w0^2 + 2 gamma wc) + w0^2 wc) / (2 pi p'(y_m)).

  The constant terms T/w0^2 and T are the n = 0 (classical) Matsubara
  contributions; at gamma -> 0 the whole expression collapses exactly to
  the Gibbs moments, which pins the prefactor conventions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._backend import impl
from .errors import (ConvergenceError, DegenerateRootsError, DomainError,
                     QuadratureError, UnphysicalStateError)
from .special_functions import digamma
from .spectral import SpectralModel, chi_fourier, renormalization_freq_sq

__all__ = [
    "ProbeSpec",
    "CovarianceMatrix",
    "AnalyticLDSolution",
    "QuadratureInfo",
    "alpha",
    "covariance_numeric",
    "covariance_analytic_ld",
    "covariance_lowT_approx",
    "thermal_covariance",
]

_HEISENBERG_SLACK = 1e-9


@dataclass(frozen=True)
class ProbeSpec:
    """Probe oscillator: H = (w0^2 x^2 + p^2) / 2, unit mass, hbar = kB = 1."""

    omega0: float = 1.0

    def __post_init__(self):
        if not (self.omega0 > 0.0 and math.isfinite(self.omega0)):
            raise DomainError("probe frequency omega0 must be positive and finite")


@dataclass(frozen=True)
class CovarianceMatrix:
    """Second moments of an undisplaced single-mode Gaussian state.

    sigma_xx = <x^2>, sigma_pp = <p^2>, sigma_xp = <{x,p}>/2.  Stationary
    states produced by this package always have sigma_xp = 0.
    """

    sigma_xx: float
    sigma_pp: float
    sigma_xp: float = 0.0

    def __post_init__(self):
        if not (self.sigma_xx > 0.0 and self.sigma_pp > 0.0):
            raise UnphysicalStateError("diagonal covariances must be positive")
        if self.det < 0.25 - _HEISENBERG_SLACK:
            raise UnphysicalStateError(
                f"covariance violates the Heisenberg bound: det = {self.det!r}")

    @property
    def det(self) -> float:
        return self.sigma_xx * self.sigma_pp - self.sigma_xp ** 2

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.sigma_xx, self.sigma_pp, self.sigma_xp)


@dataclass(frozen=True)
class AnalyticLDSolution:
    """Intermediate quantities of the Lorentz-Drude closed form.

    roots holds the cubic roots d_m (digamma arguments are -d_m); coeffs_x
    and coeffs_p are the partial-fraction coefficients of the position and
    momentum series; matsubara_nu1 is the first Matsubara frequency 2 pi T.
    """

    roots: tuple[complex, complex, complex]
    coeffs_x: tuple[complex, complex, complex]
    coeffs_p: tuple[complex, complex, complex]
    matsubara_nu1: float


@dataclass(frozen=True)
class QuadratureInfo:
    """Achieved error estimates of the covariance quadrature."""

    err_xx: float
    err_pp: float
    segments_xx: int
    segments_pp: int


def alpha(model: SpectralModel, probe: ProbeSpec, omega: float) -> complex:
    """Inverse susceptibility alpha(w) = w0^2 + wR^2 - w^2 - chi(w)."""
    wr2 = renormalization_freq_sq(model)
    return (probe.omega0 ** 2 + wr2 - omega * omega) - chi_fourier(model, omega)


def covariance_numeric(model: SpectralModel, probe: ProbeSpec, T: float,
                       *, zero_temperature: bool = False,
                       epsabs: float = 1e-12, epsrel: float = 1e-9,
                       full_output: bool = False):
    """Stationary covariance by adaptive Gauss-Kronrod quadrature.

    The integration domain is split at the response resonance (located by
    bisection on Re alpha); a tangent substitution flattens the resonance
    peak, a logarithmic panel covers the mid range and an inverse-map panel
    the algebraic tail.  With ``zero_temperature=True`` the thermal factor
    coth(w/2T) is replaced by its T -> 0 limit of 1 and ``T`` is ignored.
    """
    if not zero_temperature and not (T > 0.0 and math.isfinite(T)):
        raise DomainError("temperature must be positive (or use zero_temperature=True)")
    if model.variant_code == impl.VARIANT_EXP_CUTOFF and not model.has_closed_form_kernel:
        return _covariance_numeric_generic(model, probe, T, zero_temperature,
                                           epsabs, epsrel, full_output)
    results = []
    errs = []
    segs = []
    for moment in (0, 2):
        val, err, nseg, ok = impl.covariance_integral(
            model.variant_code, model.gamma, model.omega_c, model.s,
            probe.omega0, 0.0 if zero_temperature else T, moment,
            zero_temperature, epsabs, epsrel)
        if not ok and err > 1e-6 * max(abs(val), 1e-300):
            raise QuadratureError(
                f"covariance quadrature did not converge (moment {moment}, "
                f"estimated error {err:.2e})", estimate=val, error_bound=err)
        results.append(val)
        errs.append(err)
        segs.append(nseg)
    cov = CovarianceMatrix(results[0], results[1], 0.0)
    if full_output:
        return cov, QuadratureInfo(errs[0], errs[1], segs[0], segs[1])
    return cov


def _covariance_numeric_generic(model, probe, T, zero_temperature,
                                epsabs, epsrel, full_output):
    """Slow quadrature path for exponential cutoffs without closed-form
    kernels: every integrand evaluation performs a principal-value Hilbert
    transform for chi_real."""
    from . import _pure
    from .spectral import chi_real, spectral_density

    w0 = probe.omega0
    wr2 = renormalization_freq_sq(model)

    def re_alpha(w):
        return w0 * w0 + wr2 - w * w - chi_real(model, w)

    def integrand(moment, w):
        if w <= 0.0:
            return 0.0
        j = spectral_density(model, w)
        if j == 0.0:
            return 0.0
        ra = re_alpha(w)
        val = j / (ra * ra + j * j) / math.pi
        if not zero_temperature:
            val *= _pure._coth_half(w, T)
        if moment == 2:
            val *= w * w
        return val

    # bracket the resonance exactly as the kernel path does
    hi = math.sqrt(w0 * w0 + wr2) + 1e-3 * w0
    while re_alpha(hi) > 0.0:
        hi *= 1.5
    lo = 0.0
    for _ in range(120):
        mid = 0.5 * (lo + hi)
        if re_alpha(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    wstar = 0.5 * (lo + hi)
    omega_hi = max(20.0 * model.omega_c, 4.0 * wstar,
                   0.0 if zero_temperature else 20.0 * T)
    out = []
    errs = []
    segs = []
    for moment in (0, 2):
        base = lambda w: integrand(moment, w)
        panels = [
            (base, 0.0, 2.0 * wstar),
            ((lambda t: base(math.exp(t)) * math.exp(t)),
             math.log(2.0 * wstar), math.log(omega_hi)),
            ((lambda t: base(1.0 / t) / (t * t)), 0.0, 1.0 / omega_hi),
        ]
        val, err, nseg, ok = _pure.adaptive_gk(panels, epsabs, max(epsrel, 1e-7),
                                               max_segments=400)
        if not ok and err > 1e-4 * max(abs(val), 1e-300):
            raise QuadratureError(
                f"generic-kernel quadrature did not converge (err {err:.2e})",
                estimate=val, error_bound=err)
        out.append(val)
        errs.append(err)
        segs.append(nseg)
    cov = CovarianceMatrix(out[0], out[1], 0.0)
    if full_output:
        return cov, QuadratureInfo(errs[0], errs[1], segs[0], segs[1])
    return cov


def _solve_matsubara_cubic(gamma: float, omega_c: float, omega0: float):
    """Roots of p(y) = y^3 + wc y^2 + (w0^2 + 2 g wc) y + w0^2 wc.

    Cardano on the depressed cubic followed by one Newton polish per root.
    All roots have negative real part (the polynomial is Hurwitz).
    """
    a2 = omega_c
    a1 = omega0 * omega0 + 2.0 * gamma * omega_c
    a0 = omega0 * omega0 * omega_c

    p = a1 - a2 * a2 / 3.0
    q = 2.0 * a2 ** 3 / 27.0 - a2 * a1 / 3.0 + a0
    disc = 0.25 * q * q + p ** 3 / 27.0
    if disc > 0.0:
        rt = math.sqrt(disc)
        u1 = math.copysign(abs(-0.5 * q + rt) ** (1.0 / 3.0), -0.5 * q + rt)
        u2 = math.copysign(abs(-0.5 * q - rt) ** (1.0 / 3.0), -0.5 * q - rt)
        us = [complex(u1 + u2, 0.0),
              complex(-0.5 * (u1 + u2), 0.5 * math.sqrt(3.0) * (u1 - u2)),
              complex(-0.5 * (u1 + u2), -0.5 * math.sqrt(3.0) * (u1 - u2))]
    else:
        r = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * r) if p != 0.0 else 0.0
        arg = min(1.0, max(-1.0, arg))
        theta = math.acos(arg)
        us = [complex(r * math.cos((theta - 2.0 * math.pi * k) / 3.0), 0.0)
              for k in range(3)]
    roots = []
    for u in us:
        y = u - a2 / 3.0
        for _ in range(2):
            f = ((y + a2) * y + a1) * y + a0
            df = (3.0 * y + 2.0 * a2) * y + a1
            if df != 0:
                y = y - f / df
        roots.append(y)
    roots.sort(key=lambda z: (z.real, z.imag))
    scale = max(abs(r) for r in roots)
    # exactly degenerate roots split by ~sqrt(eps) under double-precision
    # Cardano; a threshold well above that catches them, and the
    # partial-fraction coefficients stay accurate above it
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(roots[i] - roots[j]) < 3e-7 * scale:
                raise DegenerateRootsError(
                    "cubic roots are not simple at this parameter point; "
                    "the digamma closed form does not apply")
    return tuple(roots), (a2, a1, a0)


def covariance_analytic_ld(gamma: float, omega_c: float, probe: ProbeSpec,
                           T: float):
    """Closed-form Lorentz-Drude covariance via the digamma series sum.

    Returns (CovarianceMatrix, AnalyticLDSolution).  Exact for all
    coupling strengths; requires simple cubic roots and T > 0.
    """
    if not (T > 0.0 and math.isfinite(T)):
        raise DomainError("temperature must be positive")
    if not (gamma > 0.0 and omega_c > 0.0):
        raise DomainError("gamma and omega_c must be positive")
    w0 = probe.omega0
    nu1 = 2.0 * math.pi * T
    (y1, y2, y3), (a2, a1, a0) = _solve_matsubara_cubic(gamma, omega_c, w0)

    w_shift = w0 * w0 + 2.0 * gamma * omega_c
    roots_d = []
    coeffs_x = []
    coeffs_p = []
    sum_x = 0.0 + 0.0j
    sum_p = 0.0 + 0.0j
    for y in (y1, y2, y3):
        dp = (3.0 * y + 2.0 * a2) * y + a1   # p'(y)
        cx = (y + omega_c) / (2.0 * math.pi * dp)
        cp = (y * w_shift + w0 * w0 * omega_c) / (2.0 * math.pi * dp)
        d = y / nu1 - 1.0
        psi = digamma(complex(-d))
        roots_d.append(d)
        coeffs_x.append(cx)
        coeffs_p.append(cp)
        sum_x += cx * psi
        sum_p += cp * psi

    sxx = T / (w0 * w0) - 2.0 * sum_x.real
    spp = T - 2.0 * sum_p.real
    imag_residue = max(abs(2.0 * sum_x.imag), abs(2.0 * sum_p.imag))
    if imag_residue > 1e-9:
        raise ConvergenceError(
            f"digamma sums failed conjugate-pair cancellation "
            f"(imaginary residue {imag_residue:.2e})")
    cov = CovarianceMatrix(sxx, spp, 0.0)
    sol = AnalyticLDSolution(tuple(roots_d), tuple(coeffs_x), tuple(coeffs_p),
                             nu1)
    return cov, sol


def covariance_lowT_approx(gamma: float, omega_c: float, probe: ProbeSpec,
                           T: float) -> CovarianceMatrix:
    """First-order low-temperature / large-cutoff approximation.

    Intended regime gamma/omega_c << 1, T/omega0 << 1, omega0/omega_c << 1
    (not enforced).
    """
    if T < 0.0 or gamma <= 0.0 or omega_c <= 0.0:
        raise DomainError("require T >= 0, gamma > 0, omega_c > 0")
    w0 = probe.omega0
    log_ratio = math.log(omega_c / w0)
    sxx = (1.0 / (2.0 * w0)) * (
        1.0 - (2.0 * gamma / (math.pi * w0)
               + 2.0 * T / w0
               + 4.0 * gamma * w0 / (math.pi * omega_c ** 2) * log_ratio))
    spp = (w0 / 2.0) * (
        1.0 + (4.0 * gamma / (math.pi * w0) * log_ratio
               + 3.0 * gamma / omega_c
               - 2.0 * T / w0
               - 2.0 * gamma / (math.pi * w0)))
    return CovarianceMatrix(sxx, spp, 0.0)


def thermal_covariance(probe: ProbeSpec, T: float) -> CovarianceMatrix:
    """Gibbs-state moments of the bare probe (weak-coupling reference)."""
    if not (T > 0.0 and math.isfinite(T)):
        raise DomainError("temperature must be positive")
    w0 = probe.omega0
    u = 1.0 / math.tanh(0.5 * w0 / T) if 0.5 * w0 / T < 350.0 else 1.0
    return CovarianceMatrix(u / (2.0 * w0), 0.5 * w0 * u, 0.0)
