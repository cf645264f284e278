"""Finite star-system surrogate: one central oscillator coupled to N bath modes.

Discretizing the bath spectrum onto a frequency grid gives a closed
N+1-mode harmonic system whose global Gibbs state is exactly computable
by normal-mode decomposition.  The marginal of the central oscillator
converges to the continuum steady state as the grid refines, which makes
the star system an independent oracle for the quadrature and digamma
routes.  The normal-mode spectrum also carries the mechanism behind the
coupling-enhanced sensitivity: eigenvalues below the shifted central
frequency decrease monotonically with the overall coupling scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnphysicalStateError
from .metrology import qfi_equilibrium
from .spectral import SpectralModel, spectral_density
from .steady_state import CovarianceMatrix

__all__ = [
    "StarSystem",
    "NormalModes",
    "discretize_bath",
    "interaction_matrix",
    "normal_modes",
    "eigenvalue_coupling_derivatives",
    "reduced_probe_covariance",
    "star_qfi",
]


@dataclass(frozen=True, eq=False)
class StarSystem:
    """Central frequency, bath frequencies, bare couplings, global scale G.

    The effective couplings are G * g_mu.  The central diagonal entry of
    the interaction matrix is shifted to Omega0^2 = omega0^2 +
    sum (G g_mu)^2 / omega_mu^2, which keeps the matrix positive definite
    for every G (Schur complement omega0^2 > 0).
    """

    omega0: float
    bath_freqs: np.ndarray
    couplings: np.ndarray
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "bath_freqs",
                           np.asarray(self.bath_freqs, dtype=float))
        object.__setattr__(self, "couplings",
                           np.asarray(self.couplings, dtype=float))
        if self.bath_freqs.shape != self.couplings.shape or self.bath_freqs.ndim != 1:
            raise DomainError("bath_freqs and couplings must be 1-d and congruent")
        if not (self.omega0 > 0.0):
            raise DomainError("central frequency must be positive")
        if np.any(self.bath_freqs <= 0.0):
            raise DomainError("bath frequencies must be positive")
        if self.scale < 0.0:
            raise DomainError("coupling scale must be non-negative")

    @property
    def n_modes(self) -> int:
        return self.bath_freqs.size + 1

    @property
    def shifted_freq_sq(self) -> float:
        g2 = (self.scale * self.couplings) ** 2
        return self.omega0 ** 2 + float(np.sum(g2 / self.bath_freqs ** 2))

    @property
    def discrete_renormalization_freq_sq(self) -> float:
        """sum g_mu^2 / omega_mu^2 at unit scale (Riemann sum of 2/pi int J/w)."""
        return float(np.sum(self.couplings ** 2 / self.bath_freqs ** 2))

    def with_scale(self, scale: float) -> "StarSystem":
        return StarSystem(self.omega0, self.bath_freqs, self.couplings,
                          float(scale))


@dataclass(frozen=True, eq=False)
class NormalModes:
    """Eigenvalues (ascending squared frequencies) and orthogonal mode matrix.

    Column i of mode_matrix is the i-th normal coordinate; row 0 holds the
    probe weights.
    """

    eigenvalues: np.ndarray
    mode_matrix: np.ndarray

    @property
    def frequencies(self) -> np.ndarray:
        return np.sqrt(self.eigenvalues)

    @property
    def probe_weights(self) -> np.ndarray:
        return self.mode_matrix[0, :]


def discretize_bath(model: SpectralModel, n_modes: int,
                    omega_max: float | None = None,
                    omega0: float = 1.0) -> StarSystem:
    """Uniform midpoint-grid inversion of the spectral-density sum rule.

    With grid spacing dw and unit masses, g_mu^2 = (2/pi) w_mu J(w_mu) dw
    reproduces J as a Riemann sum; the discrete counter-term
    sum g^2/w^2 then converges (first order in dw) to the continuum value
    truncated at omega_max.
    """
    if n_modes < 1:
        raise DomainError("n_modes must be >= 1")
    if omega_max is None:
        omega_max = 20.0 * model.omega_c
    if omega_max <= 0.0:
        raise DomainError("omega_max must be positive")
    dw = omega_max / n_modes
    freqs = (np.arange(n_modes) + 0.5) * dw
    j = np.array([spectral_density(model, w) for w in freqs])
    g2 = (2.0 / math.pi) * freqs * j * dw
    return StarSystem(omega0, freqs, np.sqrt(g2), 1.0)


def interaction_matrix(star: StarSystem) -> np.ndarray:
    """Potential matrix V: V00 = Omega0^2, V0mu = G g_mu, Vmumu = w_mu^2."""
    n = star.n_modes
    v = np.zeros((n, n))
    v[0, 0] = star.shifted_freq_sq
    g = star.scale * star.couplings
    v[0, 1:] = g
    v[1:, 0] = g
    v[np.arange(1, n), np.arange(1, n)] = star.bath_freqs ** 2
    return v


def normal_modes(star: StarSystem) -> NormalModes:
    """Symmetric eigendecomposition of the interaction matrix.

    Degenerate bath frequencies get a 1e-9 relative jitter before
    diagonalization so the secular equation stays non-singular.
    """
    freqs = star.bath_freqs
    if np.unique(freqs).size != freqs.size:
        jitter = 1.0 + 1e-9 * np.arange(freqs.size)
        star = StarSystem(star.omega0, freqs * jitter, star.couplings,
                          star.scale)
    v = interaction_matrix(star)
    evals, evecs = np.linalg.eigh(v)
    if evals[0] <= 0.0:
        raise UnphysicalStateError(
            f"interaction matrix is not positive definite (lambda_min = {evals[0]!r})")
    return NormalModes(evals, evecs)


def eigenvalue_coupling_derivatives(star: StarSystem,
                                    modes: NormalModes | None = None) -> np.ndarray:
    """d lambda_i / dG at fixed central shift, from the secular equation:

        d lambda_i / dG = -2G sum_k g_k^2/(w_k^2-lambda_i)
                           / (1 + sum_k G^2 g_k^2/(w_k^2-lambda_i)^2)

    The sign satisfies d lambda_i/dG > 0 iff lambda_i > Omega0^2.  The
    matching finite-difference check must rescale G while holding the
    central diagonal entry fixed (see tests).
    """
    if modes is None:
        modes = normal_modes(star)
    lam = modes.eigenvalues
    if star.scale == 0.0 or star.bath_freqs.size == 0:
        # decoupled system: the derivative is proportional to G
        return np.zeros_like(lam)
    w2 = star.bath_freqs ** 2
    g2 = star.couplings ** 2
    gap = w2[None, :] - lam[:, None]
    # the num/den structure keeps the ratio finite as lambda approaches a
    # coupled bath frequency; only true coincidence is singular
    if np.min(np.abs(gap)) < 1e-13 * max(1.0, float(np.max(w2))):
        raise DomainError(
            "an eigenvalue coincides with a bath frequency; the derivative "
            "formula is singular there")
    num = -2.0 * star.scale * np.sum(g2[None, :] / gap, axis=1)
    den = 1.0 + star.scale ** 2 * np.sum(g2[None, :] / gap ** 2, axis=1)
    return num / den


def reduced_probe_covariance(star: StarSystem, T: float,
                             modes: NormalModes | None = None) -> CovarianceMatrix:
    """Marginal covariance of the central oscillator in the global Gibbs state.

    Mode-wise Gibbs moments weighted by the squared probe components:
    sigma_xx = sum O_0i^2 coth(sqrt(l_i)/2T) / (2 sqrt(l_i)),
    sigma_pp = sum O_0i^2 (sqrt(l_i)/2) coth(sqrt(l_i)/2T).
    """
    if not (T > 0.0 and math.isfinite(T)):
        raise DomainError("temperature must be positive")
    if modes is None:
        modes = normal_modes(star)
    w = modes.frequencies
    o2 = modes.probe_weights ** 2
    x = 0.5 * w / T
    u = np.where(x < 350.0, 1.0 / np.tanh(np.minimum(x, 350.0)), 1.0)
    sxx = float(np.sum(o2 * u / (2.0 * w)))
    spp = float(np.sum(o2 * 0.5 * w * u))
    return CovarianceMatrix(sxx, spp, 0.0)


def star_qfi(star: StarSystem, T: float,
             modes: NormalModes | None = None) -> float:
    """Total QFI of the global Gibbs state: additive over normal modes."""
    if not (T > 0.0 and math.isfinite(T)):
        raise DomainError("temperature must be positive")
    if modes is None:
        modes = normal_modes(star)
    return float(sum(qfi_equilibrium(float(w), T) for w in modes.frequencies))
