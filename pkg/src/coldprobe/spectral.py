"""Bath spectral densities and their Fourier-domain dissipation kernels.

Two families are supported:

* Lorentz-Drude:  J(w) = 2 gamma w wc^2 / (w^2 + wc^2)
* exponential cutoff with Ohmicity s:  J_s(w) = (pi/2) gamma w^s wc^(1-s) e^(-w/wc)

The full kernel is chi(w) = chi_real(w) + i chi_imag(w), with chi_imag
equal to J on the positive axis (odd continuation) and chi_real given in
closed form (Lorentz-Drude for all parameters; exponential cutoff for
s = 1 and s = 2 in terms of exponential integrals).  A numerical
principal-value Hilbert transform serves as an independent oracle for the
closed forms and as the only route for exponential cutoffs with other
Ohmicities (opt-in ``numeric_only`` mode).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from ._backend import impl
from .errors import DomainError, QuadratureError
from .special_functions import gamma_fn

__all__ = [
    "SpectralModel",
    "spectral_density",
    "chi_imag",
    "chi_real",
    "chi_fourier",
    "renormalization_freq_sq",
    "kramers_kronig_numeric",
]

LORENTZ_DRUDE = "lorentz_drude"
EXP_CUTOFF = "exp_cutoff"

_VARIANT_CODE = {LORENTZ_DRUDE: impl.VARIANT_LORENTZ_DRUDE,
                 EXP_CUTOFF: impl.VARIANT_EXP_CUTOFF}


@dataclass(frozen=True)
class SpectralModel:
    """Immutable bath-coupling spectrum description.

    gamma is the dissipation strength, omega_c the cutoff frequency and s
    the Ohmicity exponent (exponential-cutoff family only).  Closed-form
    kernels exist for s = 1 and s = 2; other s >= 1 require
    ``numeric_only=True`` and fall back to the principal-value Hilbert
    transform for chi_real.
    """

    variant: str
    gamma: float
    omega_c: float
    s: float = 1.0
    numeric_only: bool = False

    def __post_init__(self):
        if self.variant not in (LORENTZ_DRUDE, EXP_CUTOFF):
            raise DomainError(f"unknown spectral variant {self.variant!r}")
        if not (self.gamma > 0.0 and math.isfinite(self.gamma)):
            raise DomainError("gamma must be positive and finite")
        if not (self.omega_c > 0.0 and math.isfinite(self.omega_c)):
            raise DomainError("omega_c must be positive and finite")
        if self.variant == EXP_CUTOFF:
            if self.s < 1.0:
                raise DomainError("sub-Ohmic exponents s < 1 are not supported")
            if self.s not in (1.0, 2.0) and not self.numeric_only:
                raise DomainError(
                    "closed-form kernel requires s in {1, 2}; pass "
                    "numeric_only=True to accept the slow numerical kernel")

    @classmethod
    def lorentz_drude(cls, gamma: float, omega_c: float) -> "SpectralModel":
        return cls(LORENTZ_DRUDE, float(gamma), float(omega_c))

    @classmethod
    def exp_cutoff(cls, gamma: float, omega_c: float, s: float = 1.0,
                   numeric_only: bool = False) -> "SpectralModel":
        return cls(EXP_CUTOFF, float(gamma), float(omega_c), float(s),
                   numeric_only)

    @property
    def variant_code(self) -> int:
        return _VARIANT_CODE[self.variant]

    @property
    def has_closed_form_kernel(self) -> bool:
        return self.variant == LORENTZ_DRUDE or self.s in (1.0, 2.0)


def spectral_density(model: SpectralModel, omega: float) -> float:
    """J(omega) for omega >= 0; zero at the origin for all variants."""
    if omega < 0.0:
        raise DomainError("spectral_density requires omega >= 0")
    return impl.spectral_density(model.variant_code, model.gamma,
                                 model.omega_c, model.s, float(omega))


def chi_imag(model: SpectralModel, omega: float) -> float:
    """Imaginary part of the dissipation kernel; odd in omega."""
    return impl.chi_imag(model.variant_code, model.gamma, model.omega_c,
                         model.s, float(omega))


def chi_real(model: SpectralModel, omega: float) -> float:
    """Real part of the dissipation kernel; even in omega."""
    if model.has_closed_form_kernel:
        return impl.chi_real(model.variant_code, model.gamma, model.omega_c,
                             model.s, float(omega))
    return kramers_kronig_numeric(model, float(omega))


def chi_fourier(model: SpectralModel, omega: float) -> complex:
    """chi(omega) = chi_real + i * chi_imag."""
    return complex(chi_real(model, omega), chi_imag(model, omega))


def renormalization_freq_sq(model: SpectralModel) -> float:
    """Counter-term frequency squared, (2/pi) * integral of J(w)/w.

    Lorentz-Drude: 2 gamma omega_c.  Exponential cutoff: gamma omega_c
    Gamma(s).
    """
    if model.variant == LORENTZ_DRUDE:
        return 2.0 * model.gamma * model.omega_c
    return model.gamma * model.omega_c * gamma_fn(model.s)


def kramers_kronig_numeric(model: SpectralModel, omega: float,
                           pole_radius_scale: float = 1e-4) -> float:
    """chi_real via the principal-value Hilbert transform of chi_imag.

    The PV integral (1/pi) P int chi_imag(w') / (w' - w) dw' is evaluated
    by symmetric excision of radius eps around the pole: the excised
    contribution is restored analytically from the local linear term
    (2 eps d(chi_imag)/dw), and the folded remainder
    int_eps^inf [f(w+u) - f(w-u)] / u du is handled by adaptive quadrature.
    This path is independent of the closed forms and serves as their
    validation oracle.
    """
    if not math.isfinite(omega):
        raise DomainError("kramers_kronig_numeric requires finite omega")
    f = lambda w: chi_imag(model, w)
    eps = pole_radius_scale * max(1.0, abs(omega))

    def folded(u):
        return (f(omega + u) - f(omega - u)) / u

    # local linear term of the excised neighbourhood
    slope = (f(omega + eps) - f(omega - eps)) / (2.0 * eps)
    excised = 2.0 * eps * slope

    scale = model.omega_c
    breakpoints = sorted({abs(omega) + eps, scale, 5.0 * scale, 20.0 * scale,
                          abs(omega) + scale})
    upper = max(50.0 * scale, abs(omega) + 50.0 * scale)
    pts = [p for p in breakpoints if eps < p < upper]
    with np.errstate(over="raise"):
        body, err_body = integrate.quad(folded, eps, upper, points=pts,
                                        limit=400, epsabs=1e-11, epsrel=1e-11)
        tail, err_tail = integrate.quad(folded, upper, np.inf, limit=200,
                                        epsabs=1e-11, epsrel=1e-10)
    total_err = err_body + err_tail
    value = (body + tail + excised) / math.pi
    if total_err > 1e-6 * max(1.0, abs(value)):
        raise QuadratureError(
            f"principal-value transform did not converge (err {total_err:.2e})",
            estimate=value, error_bound=total_err)
    return value
