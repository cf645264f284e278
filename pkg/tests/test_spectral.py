"""Spectral densities, dissipation kernels and the Kramers-Kronig oracle."""

import math

import numpy as np
import pytest

from coldprobe import (DomainError, SpectralModel, chi_fourier, chi_imag,
                       chi_real, kramers_kronig_numeric,
                       renormalization_freq_sq, spectral_density)

LD = SpectralModel.lorentz_drude
EXP = SpectralModel.exp_cutoff


class TestSpectralDensity:
    def test_zero_at_origin(self):
        for m in (LD(1.0, 100.0), EXP(0.1, 100.0, 1.0), EXP(0.1, 100.0, 2.0)):
            assert spectral_density(m, 0.0) == 0.0

    def test_lorentz_drude_at_cutoff(self):
        # 2*1*100*100^2/(2*100^2) = 100
        assert spectral_density(LD(1.0, 100.0), 100.0) == pytest.approx(100.0,
                                                                        rel=1e-15)

    def test_exp_cutoff_formula(self):
        expected = 0.5 * math.pi * 0.1 * 1.0 ** 2 * 100.0 ** (-1) * math.exp(-0.01)
        assert spectral_density(EXP(0.1, 100.0, 2.0), 1.0) == pytest.approx(
            expected, rel=1e-14)

    def test_positivity(self, rng):
        for m in (LD(0.3, 50.0), EXP(0.2, 80.0, 1.0), EXP(0.2, 80.0, 2.0)):
            for w in rng.uniform(0.0, 500.0, 200):
                assert spectral_density(m, float(w)) >= 0.0

    def test_negative_frequency_rejected(self):
        with pytest.raises(DomainError):
            spectral_density(LD(1.0, 100.0), -1.0)


class TestChi:
    def test_imag_odd_and_matches_j(self, rng):
        for m in (LD(1.0, 100.0), EXP(0.1, 100.0, 1.0), EXP(0.1, 100.0, 2.0)):
            assert chi_imag(m, 0.0) == 0.0
            for w in rng.uniform(0.01, 300.0, 100):
                w = float(w)
                assert chi_imag(m, -w) == pytest.approx(-chi_imag(m, w),
                                                        abs=1e-12)
                assert chi_imag(m, w) == pytest.approx(spectral_density(m, w),
                                                       rel=1e-14)

    def test_imag_examples(self):
        assert chi_imag(LD(1.0, 100.0), -100.0) == pytest.approx(-100.0,
                                                                 rel=1e-14)
        expected = 0.5 * math.pi * 0.1 * 2.0 * math.exp(-0.02)
        assert chi_imag(EXP(0.1, 100.0, 1.0), 2.0) == pytest.approx(expected,
                                                                    rel=1e-14)
        assert expected == pytest.approx(0.30794, rel=1e-4)

    def test_real_even(self, rng):
        for m in (LD(1.0, 100.0), EXP(0.1, 100.0, 1.0), EXP(0.1, 100.0, 2.0)):
            for w in rng.uniform(0.01, 300.0, 50):
                w = float(w)
                assert chi_real(m, -w) == pytest.approx(chi_real(m, w),
                                                        abs=1e-12)

    def test_real_zero_frequency_sum_rule(self):
        for m in (LD(1.0, 100.0), LD(0.03, 7.0), EXP(0.1, 100.0, 1.0),
                  EXP(0.1, 100.0, 2.0), EXP(0.7, 12.0, 2.0)):
            assert abs(chi_real(m, 0.0) - renormalization_freq_sq(m)) < 1e-9

    def test_lorentz_drude_values(self):
        m = LD(1.0, 100.0)
        assert chi_real(m, 0.0) == pytest.approx(200.0, rel=1e-15)
        assert chi_real(m, 100.0) == pytest.approx(100.0, rel=1e-15)

    def test_fourier_assembly(self):
        m = LD(1.0, 1.0)
        # 2/(1 - i) = 1 + 1i
        assert chi_fourier(m, 1.0) == pytest.approx(1.0 + 1.0j, rel=1e-14)
        m = LD(1.0, 100.0)
        assert chi_fourier(m, 100.0) == pytest.approx(100.0 + 100.0j,
                                                      rel=1e-14)
        for model in (m, EXP(0.1, 100.0, 2.0)):
            z = chi_fourier(model, 0.0)
            assert z.imag == 0.0
            assert z.real == pytest.approx(renormalization_freq_sq(model),
                                           rel=1e-12)


class TestRenormalizationFreq:
    def test_values(self):
        assert renormalization_freq_sq(LD(0.1, 100.0)) == pytest.approx(20.0,
                                                                        rel=1e-14)
        assert renormalization_freq_sq(EXP(0.1, 100.0, 1.0)) == pytest.approx(
            10.0, rel=1e-13)
        # Gamma(2) = 1
        assert renormalization_freq_sq(EXP(0.1, 100.0, 2.0)) == pytest.approx(
            10.0, rel=1e-13)

    def test_matches_defining_integral(self):
        from scipy import integrate
        for m in (LD(0.37, 60.0), EXP(0.21, 40.0, 1.0), EXP(0.21, 40.0, 2.0)):
            val, err = integrate.quad(
                lambda w: 2.0 / math.pi * spectral_density(m, w) / w,
                0.0, np.inf, limit=300)
            assert renormalization_freq_sq(m) == pytest.approx(val, rel=1e-8)


class TestKramersKronig:
    def test_lorentz_drude_zero_frequency(self):
        val = kramers_kronig_numeric(LD(1.0, 100.0), 0.0)
        assert val == pytest.approx(200.0, abs=1e-3)

    @pytest.mark.parametrize("model", [
        LD(1.0, 100.0), LD(0.2, 30.0),
        EXP(0.1, 100.0, 1.0), EXP(0.1, 100.0, 2.0), EXP(0.4, 25.0, 2.0),
    ])
    def test_closed_forms_match_pv_transform(self, model):
        for w in np.geomspace(0.01, 10.0, 10):
            pv = kramers_kronig_numeric(model, float(w))
            cf = chi_real(model, float(w))
            assert pv == pytest.approx(cf, rel=1e-6, abs=1e-9)

    def test_general_ohmicity_uses_pv_route(self):
        m = EXP(0.1, 50.0, 1.5, numeric_only=True)
        v = chi_real(m, 1.0)
        assert math.isfinite(v)
        assert chi_real(m, 0.0) == pytest.approx(renormalization_freq_sq(m),
                                                 rel=1e-5)


class TestModelValidation:
    def test_rejects_bad_parameters(self):
        with pytest.raises(DomainError):
            LD(-1.0, 100.0)
        with pytest.raises(DomainError):
            LD(1.0, 0.0)
        with pytest.raises(DomainError):
            EXP(0.1, 100.0, 0.5)  # sub-Ohmic
        with pytest.raises(DomainError):
            EXP(0.1, 100.0, 1.5)  # needs numeric_only opt-in

    def test_numeric_only_opt_in(self):
        m = EXP(0.1, 100.0, 1.5, numeric_only=True)
        assert not m.has_closed_form_kernel
