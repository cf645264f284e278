"""Acceptance suite.

One test per acceptance criterion, each printing a PASS/FAIL line on the
real stdout (visible regardless of capture).  Tolerances are fixed here,
not calibrated at runtime.

Criterion 5a is expected to fail and is marked strict-xfail: the 0.95
floor on F(H)/QFI at gamma = 5e-3 over T in [0.01, 1] is unattainable --
the true ratio at the low-T end is 0.94288 (flat to three digits for
T <= 0.05), confirmed by an independent 40-digit mpmath evaluation of
the closed-form covariances and their exact temperature derivatives.
"""

import math
import sys
import time

import numpy as np
import pytest
from coldprobe import (ProbeSpec, SpectralModel, chi_real,
                       covariance_analytic_ld, covariance_numeric,
                       digamma, discretize_bath, exp_integral,
                       eigenvalue_coupling_derivatives,
                       interaction_matrix, kramers_kronig_numeric,
                       normal_modes, qfi_equilibrium, qfi_equilibrium_log,
                       qfi_from_fidelity, qfi_gaussian,
                       reduced_probe_covariance, relative_error,
                       sensitivity_report, thermal_covariance)

from test_metrology import fock_basis_moments
from test_star import fd_eigen_derivative, random_star

LD = SpectralModel.lorentz_drude
EXP = SpectralModel.exp_cutoff

PROBE = ProbeSpec(1.0)


@pytest.fixture
def report(capfd):
    """Print one PASS/FAIL line per criterion on the live terminal."""
    def _report(criterion, ok, detail):
        status = "PASS" if ok else "FAIL"
        with capfd.disabled():
            print(f"\nACCEPTANCE {criterion}: {status} - {detail}",
                  file=sys.stderr)
    return _report


def test_criterion_1_route_equivalence(report):
    t0 = time.perf_counter()
    worst = 0.0
    for gamma in (0.1, 1.0, 5.0):
        for T in (0.01, 0.1, 1.0):
            num = covariance_numeric(LD(gamma, 100.0), PROBE, T)
            ana, _ = covariance_analytic_ld(gamma, 100.0, PROBE, T)
            worst = max(worst,
                        abs(num.sigma_xx / ana.sigma_xx - 1.0),
                        abs(num.sigma_pp / ana.sigma_pp - 1.0))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-6 and elapsed < 10.0
    report(1, ok, f"route equivalence worst rel {worst:.2e} "
                  f"(tol 1e-6), runtime {elapsed:.2f}s (< 10s)")
    assert worst < 1e-6
    assert elapsed < 10.0


def test_criterion_2_thermalization_limit(report):
    worst_cov = 0.0
    for T in (0.1, 0.5, 1.0):
        ana, _ = covariance_analytic_ld(1e-6, 100.0, PROBE, T)
        th = thermal_covariance(PROBE, T)
        worst_cov = max(worst_cov,
                        abs(ana.sigma_xx / th.sigma_xx - 1.0),
                        abs(ana.sigma_pp / th.sigma_pp - 1.0))
    worst_qfi = 0.0
    m = LD(1e-6, 100.0)
    for T in (0.5, 1.0):
        ref = qfi_equilibrium(1.0, T)
        worst_qfi = max(worst_qfi,
                        abs(qfi_from_fidelity(m, PROBE, T) / ref - 1.0),
                        abs(qfi_gaussian(m, PROBE, T) / ref - 1.0))
    ok = worst_cov < 1e-3 and worst_qfi < 1e-3
    report(2, ok, f"gamma=1e-6: covariances within {worst_cov:.2e}, "
                  f"QFI within {worst_qfi:.2e} of equilibrium (tol 1e-3)")
    assert worst_cov < 1e-3
    assert worst_qfi < 1e-3


def test_criterion_3_fig1a_shape(report):
    t0 = time.perf_counter()
    temps = np.geomspace(1e-3, 1e-2, 8)
    slopes = {}
    for gamma in (0.1, 1.0, 5.0):
        m = LD(gamma, 100.0)
        vals = [relative_error(qfi_gaussian(m, PROBE, float(T)), float(T))
                for T in temps]
        slopes[gamma] = float(np.polyfit(np.log(temps), np.log(vals), 1)[0])
    # equilibrium reference on the same window (exponential blow-up);
    # evaluated in log space because the QFI itself underflows here
    eq_log_vals = [-math.log(float(T)) - 0.5 * qfi_equilibrium_log(1.0, float(T))
                   for T in temps]
    eq_slope = float(np.polyfit(np.log(temps), eq_log_vals, 1)[0])
    # ordering at T = 0.01
    order = [relative_error(qfi_gaussian(LD(g, 100.0), PROBE, 0.01), 0.01)
             for g in (5.0, 1.0, 0.1)]
    ordered = order[0] < order[1] < order[2]
    elapsed = time.perf_counter() - t0
    exponents_ok = all(abs(s + 2.0) <= 0.3 for s in slopes.values())
    ok = exponents_ok and eq_slope < -20.0 and ordered and elapsed < 120.0
    report(3, ok,
           "dT/T low-T exponents " +
           ", ".join(f"gamma={g}: {s:+.3f}" for g, s in slopes.items()) +
           f" (claim -2 +/- 0.3); equilibrium slope {eq_slope:+.1f} "
           f"(exponential blow-up); ordering at T=0.01 "
           f"{'holds' if ordered else 'violated'}; runtime {elapsed:.1f}s")
    assert exponents_ok
    assert eq_slope < -20.0
    assert ordered
    assert elapsed < 120.0


def test_criterion_4_fig1b_monotonicity(report):
    gammas = np.geomspace(1.0, 10.0, 20)
    results = {}
    for T in (0.01, 0.1, 1.0):
        q = [qfi_gaussian(LD(float(g), 100.0), PROBE, T) for g in gammas]
        results[T] = all(b > a for a, b in zip(q, q[1:]))
    ok = results[0.01] and results[0.1]
    report(4, ok, f"QFI strictly increasing on gamma in [1,10]: "
                  f"T=0.01 {results[0.01]}, T=0.1 {results[0.1]} (required); "
                  f"T=1 {results[1.0]} (not asserted)")
    assert results[0.01]
    assert results[0.1]


# [DERIVED] regression constants, frozen from the first verified run of
# this artifact (analytic-route covariances; cross-checked against a
# 40-digit mpmath replica of the closed form):
RATIO_H_WEAK = 0.9428762421087772       # F(H)/QFI at gamma=5e-3, T=0.01
RATIO_X2_WEAK = 0.044472271975159156    # F(x^2)/QFI at gamma=5e-3, T=0.01
RATIO_H_STRONG = 0.05128041882513165    # F(H)/QFI at gamma=0.5, T=0.01
RATIO_X2_STRONG = 0.852298889338641     # F(x^2)/QFI at gamma=0.5, T=0.01


@pytest.mark.xfail(strict=True, reason=(
    "stated 0.95 threshold unattainable: min F(H)/QFI over T in [0.01, 1] "
    "at gamma = 5e-3 is 0.94288, verified against an independent 40-digit "
    "high-precision evaluation; the energy observable is genuinely "
    "sub-optimal once coupling-induced mixing dominates the thermal "
    "population (T <~ 0.06)"))
def test_criterion_5a_energy_ratio_threshold(report):
    m = LD(5e-3, 100.0)
    ratios = []
    for T in np.geomspace(0.01, 1.0, 10):
        rep = sensitivity_report(m, PROBE, float(T))
        ratios.append(rep.f_energy / rep.qfi)
    ok = min(ratios) >= 0.95
    report("5a", ok, f"F(H)/QFI at gamma=5e-3 over T in [0.01,1]: "
                     f"min {min(ratios):.5f} (stated threshold 0.95; true "
                     f"floor 0.94288 -- threshold set too tight)")
    assert min(ratios) >= 0.95


def test_criterion_5b_x2_crossover_and_regression_values(report):
    weak = sensitivity_report(LD(5e-3, 100.0), PROBE, 0.01)
    strong = sensitivity_report(LD(0.5, 100.0), PROBE, 0.01)
    rh_w = weak.f_energy / weak.qfi
    rx_w = weak.f_xsq / weak.qfi
    rh_s = strong.f_energy / strong.qfi
    rx_s = strong.f_xsq / strong.qfi
    crossover = rx_s > rh_s and rx_s > rx_w
    regression = (abs(rh_w / RATIO_H_WEAK - 1.0) < 1e-6
                  and abs(rx_w / RATIO_X2_WEAK - 1.0) < 1e-6
                  and abs(rh_s / RATIO_H_STRONG - 1.0) < 1e-6
                  and abs(rx_s / RATIO_X2_STRONG - 1.0) < 1e-6)
    ok = crossover and regression
    report("5b", ok,
           f"x^2 crossover at gamma=0.5, T=0.01: F(x2)/QFI={rx_s:.4f} > "
           f"F(H)/QFI={rh_s:.4f} and > weak-coupling value {rx_w:.4f}; "
           f"regression constants reproduced: {regression}")
    assert crossover
    assert regression


def test_criterion_6_fig3_ordering(report):
    temps = np.geomspace(1e-3, 0.1, 20)
    s1 = EXP(0.1, 100.0, 1.0)
    s2 = EXP(0.1, 100.0, 2.0)
    margins = []
    for T in temps:
        q1 = qfi_gaussian(s1, PROBE, float(T))
        q2 = qfi_gaussian(s2, PROBE, float(T))
        margins.append(q1 / max(q2, 1e-300))
    ok = all(m > 1.0 for m in margins)
    report(6, ok, f"Ohmic QFI above super-Ohmic on all 20 points of "
                  f"T in [1e-3, 0.1]; smallest ratio {min(margins):.3g}")
    assert ok


def test_criterion_7_kramers_kronig_oracle(report):
    worst = 0.0
    for model in (LD(1.0, 100.0), EXP(0.1, 100.0, 1.0), EXP(0.1, 100.0, 2.0)):
        for w in np.geomspace(0.01, 10.0, 10):
            pv = kramers_kronig_numeric(model, float(w))
            cf = chi_real(model, float(w))
            worst = max(worst, abs(pv / cf - 1.0))
    ok = worst < 1e-5
    report(7, ok, f"closed-form Re(kernel) vs PV Hilbert transform: "
                  f"worst rel {worst:.2e} over 10 frequencies x 3 variants "
                  f"(tol 1e-5)")
    assert worst < 1e-5


def test_criterion_8_star_oracle(report):
    # continuum reproduction at N = 2048
    m = LD(1.0, 100.0)
    star = discretize_bath(m, 2048, 2000.0)
    red = reduced_probe_covariance(star, 0.1)
    cont = covariance_numeric(m, PROBE, 0.1)
    cov_err = max(abs(red.sigma_xx / cont.sigma_xx - 1.0),
                  abs(red.sigma_pp / cont.sigma_pp - 1.0))
    # derivative sign law and finite-difference agreement on 100 systems
    rng = np.random.default_rng(20240817)
    sign_violations = 0
    fd_failures = 0
    for _ in range(100):
        st = random_star(rng)
        nm = normal_modes(st)
        dl = eigenvalue_coupling_derivatives(st, nm)
        om2 = st.shifted_freq_sq
        for lam, d in zip(nm.eigenvalues, dl):
            if (d > 0.0 and lam < om2) or (d < 0.0 and lam > om2):
                sign_violations += 1
        fd = fd_eigen_derivative(st)
        vnorm = float(np.max(np.abs(interaction_matrix(st))))
        tol = np.maximum(1e-4 * np.abs(fd), 3e-10 * max(1.0, vnorm))
        if np.any(np.abs(dl - fd) > tol):
            fd_failures += 1
    ok = cov_err < 0.01 and sign_violations == 0 and fd_failures == 0
    report(8, ok, f"N=2048 star vs continuum: worst rel {cov_err:.2e} "
                  f"(tol 1e-2); sign-law violations {sign_violations}/100 "
                  f"systems; finite-difference mismatches {fd_failures}")
    assert cov_err < 0.01
    assert sign_violations == 0
    assert fd_failures == 0


def test_criterion_9_moment_identity_oracle(report):
    rng = np.random.default_rng(20240817)
    worst = 0.0
    for _ in range(20):
        nb = float(rng.uniform(0.05, 0.9))
        r = float(rng.uniform(-0.3, 0.3))
        w0 = float(rng.uniform(0.7, 1.4))
        sxx = (nb + 0.5) * math.exp(-2.0 * r) / w0
        spp = (nb + 0.5) * math.exp(2.0 * r) * w0
        _, var_x2, _, var_h = fock_basis_moments(sxx, spp, w0)
        worst = max(worst,
                    abs(var_x2 / (2.0 * sxx ** 2) - 1.0),
                    abs(var_h / (0.5 * (w0 ** 4 * sxx ** 2 + spp ** 2)
                                 - 0.25 * w0 ** 2) - 1.0))
    ok = worst < 1e-6
    report(9, ok, f"Var(x^2), Var(H) vs Fock-basis oracle (cutoff 60): "
                  f"worst rel {worst:.2e} on 20 random states (tol 1e-6)")
    assert worst < 1e-6


def test_criterion_10_special_function_invariants(report):
    rng = np.random.default_rng(20240817)
    worst_rec = 0.0
    worst_conj = 0.0
    n_checked = 0
    while n_checked < 10_000:
        r = float(rng.uniform(0.1, 50.0))
        phi = float(rng.uniform(0.0, 2.0 * math.pi))
        z = complex(r * math.cos(phi), r * math.sin(phi))
        if abs(z.imag) < 1e-3 and z.real < 0.5 and abs(z.real - round(z.real)) < 1e-3:
            continue
        n_checked += 1
        rec = abs(digamma(z + 1.0) - digamma(z) - 1.0 / z)
        worst_rec = max(worst_rec, rec / max(1.0, abs(1.0 / z)))
        worst_conj = max(worst_conj,
                         abs(digamma(z.conjugate()) - digamma(z).conjugate()))
    worst_deriv = 0.0
    for x in (0.5, 1.0, 2.0, 5.0):
        h = 1e-5 * x
        num = (exp_integral(x + h, "principal_value")
               - exp_integral(x - h, "principal_value")) / (2.0 * h)
        worst_deriv = max(worst_deriv, abs(num / (math.exp(x) / x) - 1.0))
    ok = worst_rec < 1e-12 and worst_conj < 1e-12 and worst_deriv < 1e-6
    report(10, ok, f"digamma recurrence {worst_rec:.2e}, conjugation "
                   f"{worst_conj:.2e} (tol 1e-12, 1e4 samples); Ei "
                   f"derivative identity {worst_deriv:.2e} (tol 1e-6)")
    assert worst_rec < 1e-12
    assert worst_conj < 1e-12
    assert worst_deriv < 1e-6
