"""Special-function contracts, checked against independent oracles.

The oracles are deliberately primitive: Euler-Maclaurin for the
Euler-Mascheroni constant, the convergent exponential-integral series in
exact-ish arithmetic (mpmath), and direct quadrature of the Gamma
integral.  None of them share code with the implementations under test.
"""

import math

import mpmath as mp
import numpy as np
import pytest
from scipy import integrate

from coldprobe import DomainError, PoleError, digamma, exp_integral, gamma_fn


def euler_gamma_oracle(n=200):
    """Euler-Maclaurin acceleration of sum 1/k - ln n."""
    s = sum(1.0 / k for k in range(1, n + 1))
    return (s - math.log(n) - 0.5 / n + 1.0 / (12.0 * n ** 2)
            - 1.0 / (120.0 * n ** 4))


def ei_series_oracle(x, dps=40):
    """gamma + ln|x| + sum x^n/(n n!) in high-precision arithmetic."""
    with mp.workdps(dps):
        acc = mp.euler + mp.log(abs(mp.mpf(x)))
        term = mp.mpf(1)
        for n in range(1, 200):
            term *= mp.mpf(x) / n
            acc += term / n
        return float(acc)


class TestDigamma:
    def test_at_one_equals_minus_euler_gamma(self):
        assert digamma(1.0) == pytest.approx(-euler_gamma_oracle(), abs=1e-13)

    def test_recurrence_step_at_two(self):
        assert digamma(2.0) == pytest.approx(digamma(1.0) + 1.0, abs=1e-14)

    def test_at_half_duplication_value(self):
        # psi(1/2) = -gamma_E - 2 ln 2 from the duplication formula
        expected = -euler_gamma_oracle() - 2.0 * math.log(2.0)
        assert digamma(0.5) == pytest.approx(expected, abs=1e-13)
        assert expected == pytest.approx(-1.9635100260214235, abs=1e-13)

    def test_recurrence_invariant_random(self, rng):
        for _ in range(10_000):
            r = rng.uniform(0.1, 50.0)
            phi = rng.uniform(0.0, 2.0 * math.pi)
            z = complex(r * math.cos(phi), r * math.sin(phi))
            if abs(z.imag) < 1e-3 and z.real < 0.5 and abs(z.real - round(z.real)) < 1e-3:
                continue  # stay away from the pole line
            lhs = digamma(z + 1.0) - digamma(z)
            assert abs(lhs - 1.0 / z) < 1e-12 * max(1.0, abs(1.0 / z))

    def test_conjugate_symmetry(self, rng):
        for _ in range(200):
            z = complex(rng.uniform(0.2, 30.0), rng.uniform(0.1, 30.0))
            assert abs(digamma(z.conjugate()) - digamma(z).conjugate()) < 1e-12

    def test_real_in_real_out(self):
        out = digamma(3.5)
        assert isinstance(out, float)
        assert isinstance(digamma(3.5 + 0.0j), complex)

    @pytest.mark.parametrize("z", [0.0, -1.0, -7.0, -3.0 + 1e-14j])
    def test_pole_rejection(self, z):
        with pytest.raises(PoleError):
            digamma(z)


class TestExpIntegral:
    def test_ei_at_minus_one(self):
        assert exp_integral(-1.0, "negative_arg") == pytest.approx(
            ei_series_oracle(-1.0), rel=1e-12)
        assert ei_series_oracle(-1.0) == pytest.approx(-0.21938393439552026,
                                                       abs=1e-15)

    def test_eibar_at_one(self):
        assert exp_integral(1.0, "principal_value") == pytest.approx(
            ei_series_oracle(1.0), rel=1e-12)
        assert ei_series_oracle(1.0) == pytest.approx(1.8951178163559368,
                                                      abs=1e-14)

    def test_asymptotic_decay(self):
        assert abs(exp_integral(-50.0, "negative_arg")) < 1e-20

    def test_ten_digit_contract_wide_range(self):
        with mp.workdps(40):
            for x in np.geomspace(0.01, 600.0, 40):
                ref = float(mp.ei(-x))
                got = exp_integral(float(-x), "negative_arg")
                assert got == pytest.approx(ref, rel=1e-10)
            for x in np.geomspace(0.01, 600.0, 40):
                ref = float(mp.ei(x))
                got = exp_integral(float(x), "principal_value")
                assert got == pytest.approx(ref, rel=1e-10)

    def test_derivative_identity(self):
        # d/dx Eibar(x) = e^x / x by central differences
        for x in (0.5, 1.0, 2.0, 5.0):
            h = 1e-5 * x
            num = (exp_integral(x + h, "principal_value")
                   - exp_integral(x - h, "principal_value")) / (2.0 * h)
            assert num == pytest.approx(math.exp(x) / x, rel=1e-6)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            exp_integral(0.0, "negative_arg")
        with pytest.raises(DomainError):
            exp_integral(1.0, "negative_arg")
        with pytest.raises(DomainError):
            exp_integral(-1.0, "principal_value")
        with pytest.raises(DomainError):
            exp_integral(1.0, "nope")


class TestGamma:
    def test_integer_values(self):
        assert gamma_fn(1.0) == pytest.approx(1.0, rel=1e-14)
        assert gamma_fn(2.0) == pytest.approx(1.0, rel=1e-14)
        assert gamma_fn(5.0) == pytest.approx(24.0, rel=1e-13)

    def test_half_matches_defining_integral(self):
        quad_val, quad_err = integrate.quad(
            lambda t: t ** (-0.5) * math.exp(-t), 0.0, np.inf)
        assert quad_err < 1e-10
        assert gamma_fn(0.5) == pytest.approx(quad_val, rel=1e-9)
        assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-12)

    def test_recurrence(self, rng):
        for _ in range(300):
            s = rng.uniform(0.1, 10.0)
            assert gamma_fn(s + 1.0) == pytest.approx(s * gamma_fn(s),
                                                      rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            gamma_fn(0.0)
        with pytest.raises(DomainError):
            gamma_fn(-2.5)
