"""coldprobe: exact steady state and thermometric precision of a quantum
Brownian probe strongly coupled to a cold thermal sample.

The probe is a single harmonic oscillator bilinearly coupled to a bosonic
bath (Caldeira-Leggett model, hbar = k_B = 1, unit mass).  The package
computes the exact stationary covariance matrix for arbitrary coupling
strength (adaptive quadrature for any supported spectrum, a digamma
closed form for the Lorentz-Drude bath), the quantum Fisher information
of temperature estimation, observable thermal sensitivities, and a
finite star-system surrogate used as an independent oracle.

Hot numerical kernels run in a compiled Cython core when available, with
a pure-Python fallback selected automatically at import (force it with
the environment variable COLDPROBE_PURE=1).
"""

from ._backend import available_backends, backend_name
from .errors import (ColdprobeError, ConvergenceError, DegenerateRootsError,
                     DomainError, PoleError, QuadratureError,
                     UnphysicalStateError)
from .metrology import (SensitivityReport, gaussian_fidelity, qfi_equilibrium,
                        qfi_equilibrium_log, qfi_from_fidelity, qfi_gaussian,
                        relative_error, sensitivity, sensitivity_report)
from .special_functions import digamma, exp_integral, gamma_fn
from .spectral import (SpectralModel, chi_fourier, chi_imag, chi_real,
                       kramers_kronig_numeric, renormalization_freq_sq,
                       spectral_density)
from .star import (NormalModes, StarSystem, discretize_bath,
                   eigenvalue_coupling_derivatives, interaction_matrix,
                   normal_modes, reduced_probe_covariance, star_qfi)
from .steady_state import (AnalyticLDSolution, CovarianceMatrix, ProbeSpec,
                           QuadratureInfo, alpha, covariance_analytic_ld,
                           covariance_lowT_approx, covariance_numeric,
                           thermal_covariance)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend_name",
    "available_backends",
    # errors
    "ColdprobeError", "ConvergenceError", "DegenerateRootsError",
    "DomainError", "PoleError", "QuadratureError", "UnphysicalStateError",
    # special functions
    "digamma", "exp_integral", "gamma_fn",
    # spectral
    "SpectralModel", "spectral_density", "chi_imag", "chi_real",
    "chi_fourier", "renormalization_freq_sq", "kramers_kronig_numeric",
    # steady state
    "ProbeSpec", "CovarianceMatrix", "AnalyticLDSolution", "QuadratureInfo",
    "alpha", "covariance_numeric", "covariance_analytic_ld",
    "covariance_lowT_approx", "thermal_covariance",
    # metrology
    "SensitivityReport", "gaussian_fidelity", "qfi_from_fidelity",
    "qfi_gaussian", "qfi_equilibrium", "qfi_equilibrium_log",
    "sensitivity", "relative_error",
    "sensitivity_report",
    # star
    "StarSystem", "NormalModes", "discretize_bath", "interaction_matrix",
    "normal_modes", "eigenvalue_coupling_derivatives",
    "reduced_probe_covariance", "star_qfi",
]
