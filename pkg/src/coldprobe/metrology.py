"""Temperature-estimation precision of the stationary probe state.

Quantum Fisher information (QFI) is computed two ways:

* ``qfi_from_fidelity``: curvature of the two-state Uhlmann fidelity,
  F_T = -2 d^2 F(rho_T, rho_{T+d}) / dd^2, by Richardson-extrapolated
  central second differences.  Faithful to the definition but limited by
  double precision once 1 - F drops toward 1e-13 (very low T).

* ``qfi_gaussian``: closed form for single-mode Gaussian states needing
  only the first temperature derivative of the covariances,
      F_T = tr[(S^-1 S')^2] / (2 (1 + mu^2)) + 2 mu'^2 / (1 - mu^4),
  with S = 2 sigma and purity mu = 1 / sqrt(det S).  This is the route
  used by the parameter sweeps; the two routes cross-validate at moderate
  temperature.

Thermal sensitivities F_T(O) = |d<O>/dT|^2 / Var(O) are evaluated for the
probe energy and for x^2 from zero-mean Gaussian moment identities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError, UnphysicalStateError
from .spectral import LORENTZ_DRUDE, SpectralModel
from .steady_state import (CovarianceMatrix, ProbeSpec,
                           covariance_analytic_ld, covariance_numeric)

__all__ = [
    "SensitivityReport",
    "gaussian_fidelity",
    "qfi_from_fidelity",
    "qfi_gaussian",
    "qfi_equilibrium",
    "sensitivity",
    "relative_error",
    "sensitivity_report",
]

_BOUND_CHAIN_SLACK = 1e-3


@dataclass(frozen=True)
class SensitivityReport:
    """QFI, observable sensitivities and relative error at one parameter point."""

    model: SpectralModel
    probe: ProbeSpec
    T: float
    qfi: float
    f_energy: float
    f_xsq: float
    rel_error: float

    def __post_init__(self):
        slack = 1.0 + _BOUND_CHAIN_SLACK
        if self.f_energy > self.qfi * slack or self.f_xsq > self.qfi * slack:
            raise UnphysicalStateError(
                "observable sensitivity exceeds the QFI bound chain: "
                f"F(H)={self.f_energy!r}, F(x^2)={self.f_xsq!r}, QFI={self.qfi!r}")


def _steady_covariance(model: SpectralModel, probe: ProbeSpec, T: float) -> CovarianceMatrix:
    """Best covariance route for the model: digamma closed form for
    Lorentz-Drude, quadrature otherwise."""
    if model.variant == LORENTZ_DRUDE:
        cov, _ = covariance_analytic_ld(model.gamma, model.omega_c, probe, T)
        return cov
    return covariance_numeric(model, probe, T)


def _derivative_step(model: SpectralModel, T: float) -> float:
    # the quadrature route carries ~1e-10 relative noise near resonance;
    # a wider step keeps the finite difference above the noise floor
    if model.variant == LORENTZ_DRUDE:
        return 1e-3 * T
    return 1e-2 * T


def gaussian_fidelity(s1: CovarianceMatrix, s2: CovarianceMatrix) -> float:
    """Uhlmann fidelity of two undisplaced single-mode Gaussian states.

    F = 2 / (sqrt(D + L) - sqrt(L)) with D = 4 det(s1 + s2) and
    L = (4 det s1 - 1)(4 det s2 - 1).
    """
    for s in (s1, s2):
        if s.det < 0.25 - 1e-9:
            raise UnphysicalStateError("fidelity input violates the Heisenberg bound")
    sxx = s1.sigma_xx + s2.sigma_xx
    spp = s1.sigma_pp + s2.sigma_pp
    sxp = s1.sigma_xp + s2.sigma_xp
    big_delta = 4.0 * (sxx * spp - sxp * sxp)
    big_lambda = max((4.0 * s1.det - 1.0) * (4.0 * s2.det - 1.0), 0.0)
    fid = 2.0 / (math.sqrt(big_delta + big_lambda) - math.sqrt(big_lambda))
    return min(fid, 1.0)


def qfi_from_fidelity(model: SpectralModel, probe: ProbeSpec, T: float,
                      *, delta: float | None = None) -> float:
    """QFI as the fidelity curvature -2 d^2F/dd^2 at d = 0.

    Central second differences 2[2 - F(T,T+h) - F(T,T-h)]/h^2 at steps
    h = delta and delta/2 are Richardson-combined; the result must be
    step-robust to 0.1% between the (delta, delta/2) and (delta/2,
    delta/4) extrapolations, otherwise a ConvergenceError is raised.
    """
    if not (T > 0.0 and math.isfinite(T)):
        raise DomainError("temperature must be positive")
    if delta is None:
        delta = max(1e-3 * T, 1e-7 * probe.omega0)
    if not (0.0 < delta < T):
        raise DomainError("step must satisfy 0 < delta < T")
    cov = lambda t: _steady_covariance(model, probe, t)
    centre = cov(T)

    def curvature(h):
        f_plus = gaussian_fidelity(centre, cov(T + h))
        f_minus = gaussian_fidelity(centre, cov(T - h))
        return 2.0 * ((1.0 - f_plus) + (1.0 - f_minus)) / (h * h)

    q1 = curvature(delta)
    q2 = curvature(0.5 * delta)
    q3 = curvature(0.25 * delta)
    r12 = (4.0 * q2 - q1) / 3.0
    r23 = (4.0 * q3 - q2) / 3.0
    if abs(r23 - r12) > 1e-3 * max(abs(r23), 1e-300):
        raise ConvergenceError(
            f"fidelity-curvature QFI is not step-robust at T={T}: "
            f"{r12!r} vs {r23!r}; the steps cannot resolve 1 - F in double "
            "precision (use qfi_gaussian)")
    return max(r23, 0.0)


def _covariance_derivative(model: SpectralModel, probe: ProbeSpec, T: float,
                           step: float | None):
    """d sigma / dT by fourth-order Richardson central differences."""
    h = step if step is not None else _derivative_step(model, T)
    if not (0.0 < h < T):
        raise DomainError("derivative step must satisfy 0 < h < T")
    cov = lambda t: _steady_covariance(model, probe, t)

    def central(hh):
        cp = cov(T + hh)
        cm = cov(T - hh)
        return ((cp.sigma_xx - cm.sigma_xx) / (2.0 * hh),
                (cp.sigma_pp - cm.sigma_pp) / (2.0 * hh))

    d1 = central(h)
    d2 = central(0.5 * h)
    return (cov(T), ((4.0 * d2[0] - d1[0]) / 3.0, (4.0 * d2[1] - d1[1]) / 3.0))


def qfi_gaussian(model: SpectralModel, probe: ProbeSpec, T: float,
                 *, step: float | None = None) -> float:
    """Closed-form single-mode Gaussian QFI from first covariance derivatives."""
    if not (T > 0.0 and math.isfinite(T)):
        raise DomainError("temperature must be positive")
    cov, (dxx, dpp) = _covariance_derivative(model, probe, T, step)
    # S = 2 sigma (vacuum = identity); here sigma_xp = 0 so S is diagonal
    sxx = 2.0 * cov.sigma_xx
    spp = 2.0 * cov.sigma_pp
    dsxx = 2.0 * dxx
    dspp = 2.0 * dpp
    det = sxx * spp
    mu = 1.0 / math.sqrt(det)
    trace_sq = (dsxx / sxx) ** 2 + (dspp / spp) ** 2
    one_minus_mu4 = 1.0 - mu ** 4
    if one_minus_mu4 < 1e-12:
        raise ConvergenceError(
            "state is numerically pure; the mixed-state QFI form is singular")
    dmu = -0.5 * mu * (dsxx / sxx + dspp / spp)
    return trace_sq / (2.0 * (1.0 + mu * mu)) + 2.0 * dmu * dmu / one_minus_mu4


def qfi_equilibrium(omega: float, T: float) -> float:
    """Equilibrium benchmark QFI (w^2 / 4 T^4) csch^2(w / 2T)."""
    if not (omega > 0.0 and T > 0.0):
        raise DomainError("qfi_equilibrium requires omega > 0 and T > 0")
    x = 0.5 * omega / T
    if x > 350.0:
        # csch^2(x) -> 4 exp(-2x); avoids sinh overflow (the value itself
        # underflows to 0 below roughly T = omega/700)
        return (omega * omega / T ** 4) * math.exp(-2.0 * x)
    csch = 1.0 / math.sinh(x)
    return 0.25 * (omega * omega / T ** 4) * csch * csch


def qfi_equilibrium_log(omega: float, T: float) -> float:
    """Natural log of the equilibrium QFI, stable at any temperature.

    The value itself underflows double precision below T ~ omega/700; its
    logarithm stays representable, which is what the low-temperature
    reference curves need.
    """
    if not (omega > 0.0 and T > 0.0):
        raise DomainError("qfi_equilibrium_log requires omega > 0 and T > 0")
    x = 0.5 * omega / T
    if x > 20.0:
        ln_sinh = x + math.log1p(-math.exp(-2.0 * x)) - math.log(2.0)
    else:
        ln_sinh = math.log(math.sinh(x))
    return (2.0 * math.log(omega) - math.log(4.0) - 4.0 * math.log(T)
            - 2.0 * ln_sinh)


def _moments_energy(cov: CovarianceMatrix, omega0: float):
    """(<H>, Var H) for H = (w0^2 x^2 + p^2)/2 on a zero-mean Gaussian state
    with sigma_xp = 0.  The quartic terms factorize by Wick pairing; the
    canonical commutator contributes the -w0^2/4 term."""
    w2 = omega0 * omega0
    mean = 0.5 * (w2 * cov.sigma_xx + cov.sigma_pp)
    var = 0.5 * (w2 * w2 * cov.sigma_xx ** 2 + cov.sigma_pp ** 2) - 0.25 * w2
    return mean, var


def _moments_xsq(cov: CovarianceMatrix):
    """(<x^2>, Var x^2) = (sigma_xx, 2 sigma_xx^2) on a zero-mean Gaussian."""
    return cov.sigma_xx, 2.0 * cov.sigma_xx ** 2


def sensitivity(observable: str, model: SpectralModel, probe: ProbeSpec,
                T: float, *, step: float | None = None) -> float:
    """Thermal sensitivity F_T(O) = |d<O>/dT|^2 / Var(O).

    observable is "energy" (probe Hamiltonian) or "x_squared".
    """
    if observable not in ("energy", "x_squared"):
        raise DomainError(f"unknown observable {observable!r}")
    if not (T > 0.0 and math.isfinite(T)):
        raise DomainError("temperature must be positive")
    cov, (dxx, dpp) = _covariance_derivative(model, probe, T, step)
    if observable == "energy":
        _, var = _moments_energy(cov, probe.omega0)
        dmean = 0.5 * (probe.omega0 ** 2 * dxx + dpp)
    else:
        _, var = _moments_xsq(cov)
        dmean = dxx
    if var <= 0.0:
        raise UnphysicalStateError("vanishing observable variance")
    return dmean * dmean / var


def relative_error(qfi: float, T: float) -> float:
    """Best-case relative error dT/T = 1 / (T sqrt(QFI))."""
    if not (T > 0.0 and math.isfinite(T)):
        raise DomainError("temperature must be positive")
    if qfi <= 0.0:
        raise DomainError("zero-information point: relative error diverges")
    return 1.0 / (T * math.sqrt(qfi))


def sensitivity_report(model: SpectralModel, probe: ProbeSpec, T: float,
                       *, step: float | None = None) -> SensitivityReport:
    """Compute QFI, both observable sensitivities and dT/T in one pass."""
    q = qfi_gaussian(model, probe, T, step=step)
    fe = sensitivity("energy", model, probe, T, step=step)
    fx = sensitivity("x_squared", model, probe, T, step=step)
    return SensitivityReport(model=model, probe=probe, T=T, qfi=q,
                             f_energy=fe, f_xsq=fx,
                             rel_error=relative_error(q, T))
