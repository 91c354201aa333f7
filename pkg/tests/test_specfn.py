"""Tests for the special-function stack.

Oracles: closed forms (exp, erfcx, half-Gaussian), extended-precision mpmath
series summed with exact-precision parameters, and quadrature identities.
"""

import math

import mpmath
import numpy as np
import pytest
from scipy import integrate, special

from ringbm import (
    ConvergenceError,
    DomainError,
    SeriesPolicy,
    fox_wright_2psi2,
    gamma_fn,
    gamma_upper_incomplete,
    m_wright,
    mittag_leffler,
    mittag_leffler_asymptotic,
    mittag_leffler_general,
)


def ml_reference(beta, rho, z, dps=120, n_terms=6000):
    """Mittag-Leffler by brute-force series with mpf parameters throughout.

    The sum cancels from peak ~exp(u) down to O(1), so both the working
    precision and the gamma arguments must be extended-precision.
    """
    with mpmath.workdps(dps):
        b = mpmath.mpf(beta)
        r = mpmath.mpf(rho)
        zz = mpmath.mpf(z)
        s = mpmath.mpf(0)
        for n in range(n_terms):
            s += zz**n / mpmath.gamma(b * n + r)
        return float(s)


def m_wright_reference(beta, x, dps=80, n_terms=2000):
    with mpmath.workdps(dps):
        b = mpmath.mpf(beta)
        xx = mpmath.mpf(x)
        s = mpmath.mpf(0)
        for n in range(n_terms):
            a = 1 - b * (n + 1)
            if abs(a - mpmath.nint(a)) < mpmath.mpf("1e-30") and a < 0.5:
                pass  # pole in the denominator gamma: term is zero
            else:
                s += (-xx) ** n / (mpmath.factorial(n) * mpmath.gamma(a))
        return float(s)


class TestGamma:
    def test_integers(self):
        for n in range(1, 10):
            assert gamma_fn(n) == pytest.approx(math.factorial(n - 1), rel=1e-14)

    def test_half(self):
        assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)

    def test_domain(self):
        with pytest.raises(DomainError):
            gamma_fn(0.0)
        with pytest.raises(DomainError):
            gamma_fn(-1.5)

    def test_upper_incomplete_a1(self):
        # Gamma(1, x) = exp(-x)
        for x in [0.0, 0.5, 2.0, 10.0]:
            assert gamma_upper_incomplete(1.0, x) == pytest.approx(
                math.exp(-x), rel=1e-13
            )

    def test_upper_incomplete_x0(self):
        assert gamma_upper_incomplete(2.5, 0.0) == pytest.approx(
            gamma_fn(2.5), rel=1e-14
        )

    def test_upper_incomplete_reference(self):
        for a, x in [(0.5, 1.0), (3.0, 7.0), (1.75, 0.3)]:
            ref = float(mpmath.gammainc(a, x))
            assert gamma_upper_incomplete(a, x) == pytest.approx(ref, rel=1e-12)


class TestMittagLeffler:
    def test_exponential_reduction(self):
        for z in [0.0, -0.5, -5.0, -40.0]:
            assert mittag_leffler(1.0, z) == pytest.approx(math.exp(z), rel=1e-13)

    def test_erfcx_reduction(self):
        # E_{1/2}(-x) = exp(x^2) erfc(x), exercising every evaluation regime
        for x in np.geomspace(0.05, 80.0, 60):
            ref = float(special.erfcx(x))
            assert mittag_leffler(0.5, -x) == pytest.approx(ref, rel=5e-10)

    def test_at_zero(self):
        assert mittag_leffler_general(0.7, 1.0, 0.0) == 1.0
        assert mittag_leffler_general(0.7, 2.5, 0.0) == pytest.approx(
            1.0 / gamma_fn(2.5), rel=1e-14
        )

    def test_series_regime_reference(self):
        for beta, rho, z in [(0.3, 1.0, -0.7), (0.6, 2.0, -2.0), (0.9, 1.3, -4.0)]:
            ref = ml_reference(beta, rho, z)
            assert mittag_leffler_general(beta, rho, z) == pytest.approx(
                ref, rel=1e-12
            )

    def test_band_regime_reference(self):
        # u = |z|**(1/beta) between 12 and 28: extended-precision band
        for beta, rho, z in [(0.6, 2.0, -6.0), (0.8, 1.0, -11.0), (0.4, 1.5, -3.2)]:
            ref = ml_reference(beta, rho, z)
            assert mittag_leffler_general(beta, rho, z) == pytest.approx(
                ref, rel=1e-11
            )

    def test_asymptotic_regime_reference(self):
        for beta, rho, z in [(0.5, 2.0, -25.0), (0.9, 1.0, -30.0), (0.4, 2.0, -4.5)]:
            ref = ml_reference(beta, rho, z, dps=320)
            assert mittag_leffler_general(beta, rho, z) == pytest.approx(
                ref, rel=1e-10
            )

    def test_monotone_decreasing(self):
        xs = np.linspace(0.0, 30.0, 121)
        vals = [mittag_leffler(0.7, -x) for x in xs]
        assert all(b < a for a, b in zip(vals, vals[1:]))
        assert all(v > 0 for v in vals)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            mittag_leffler(0.0, -1.0)
        with pytest.raises(DomainError):
            mittag_leffler(1.5, -1.0)
        with pytest.raises(DomainError):
            mittag_leffler(0.5, 1.0)
        with pytest.raises(DomainError):
            mittag_leffler_general(0.5, -1.0, -1.0)
        with pytest.raises(DomainError):
            mittag_leffler_general(2.0, 1.0, -1.0)


class TestAsymptoticExpansion:
    def test_terms_definition(self):
        # m-term sum matches the written-out formula, poles skipped
        beta, rho, z, m = 0.5, 1.0, -9.0, 5
        expect = 0.0
        for n in range(1, m + 1):
            a = rho - beta * n
            if a <= 0 and abs(a - round(a)) < 1e-12:
                continue
            expect -= z ** (-n) / math.gamma(a)
        assert mittag_leffler_asymptotic(beta, rho, z, m) == pytest.approx(
            expect, rel=1e-13
        )

    def test_agrees_with_series_on_overlap(self):
        # regime-consistency window: moderate |z| where both apply
        for beta, rho in [(0.5, 1.0), (0.5, 2.0), (1.0, 2.0)]:
            for z in [-15.0, -25.0]:
                a = mittag_leffler_asymptotic(beta, rho, z, 3)
                s = mittag_leffler_general(beta, rho, z)
                assert a == pytest.approx(s, abs=1e-4)

    def test_domain(self):
        with pytest.raises(DomainError):
            mittag_leffler_asymptotic(0.5, 1.0, 1.0, 3)
        with pytest.raises(DomainError):
            mittag_leffler_asymptotic(0.5, 1.0, -1.0, 0)


class TestMWright:
    def test_half_gaussian(self):
        # M_{1/2}(x) = exp(-x^2/4)/sqrt(pi)
        for x in [0.0, 0.3, 1.0, 2.5, 6.0, 12.0]:
            ref = math.exp(-x * x / 4.0) / math.sqrt(math.pi)
            assert m_wright(0.5, x) == pytest.approx(ref, rel=1e-11, abs=1e-300)

    def test_at_zero(self):
        for beta in [0.2, 0.5, 0.8]:
            assert m_wright(beta, 0.0) == pytest.approx(
                1.0 / gamma_fn(1.0 - beta), rel=1e-14
            )

    def test_series_reference(self):
        for beta, x in [(0.3, 0.8), (0.7, 2.0), (0.8, 4.0)]:
            ref = m_wright_reference(beta, x)
            assert m_wright(beta, x) == pytest.approx(ref, rel=1e-10)

    def test_normalization(self):
        # density integrates to 1
        for beta in [0.3, 0.6]:
            val, _ = integrate.quad(
                lambda t: m_wright(beta, t), 0.0, 80.0, limit=200
            )
            assert val == pytest.approx(1.0, abs=1e-8)

    def test_domain(self):
        with pytest.raises(DomainError):
            m_wright(1.0, 1.0)
        with pytest.raises(DomainError):
            m_wright(0.5, -0.1)


class TestFoxWright:
    def test_x_zero(self):
        val, used = fox_wright_2psi2(1.0, 0.5, 1.0, 1.0, 1.0, 0.5, 2.0, 0.5, 0.0)
        expect = gamma_fn(1.0) * gamma_fn(1.0) / (gamma_fn(1.0) * gamma_fn(2.0))
        assert val == pytest.approx(expect, rel=1e-14)
        assert used >= 1

    def test_mittag_leffler_reduction(self):
        # 2Psi2((a,b),(1,1);(a,b),(s+a,b)|x) = E_{b,a+s}(x)
        for beta, alpha, sigma, x in [(0.5, 1.0, 1.0, -2.0), (0.7, 1.5, 2.0, -3.0)]:
            val, _ = fox_wright_2psi2(
                alpha, beta, 1.0, 1.0, alpha, beta, sigma + alpha, beta, x
            )
            ref = mittag_leffler_general(beta, alpha + sigma, x)
            assert val == pytest.approx(ref, rel=1e-9)

    def test_debye_series_parameters(self):
        # ((1,2H),(1,1);(1,beta),(2,2H)|x) = sum x^n / ((1+2Hn) Gamma(1+beta n))
        hurst, beta, x = 0.25, 0.5, -1.0
        val, _ = fox_wright_2psi2(
            1.0, 2 * hurst, 1.0, 1.0, 1.0, beta, 2.0, 2 * hurst, x
        )
        direct = sum(
            x**n / ((1.0 + 2 * hurst * n) * math.gamma(1.0 + beta * n))
            for n in range(200)
        )
        # the partial sum stops once terms drop below the policy abs_tol
        assert val == pytest.approx(direct, abs=5e-10)

    def test_positive_argument_rejected(self):
        with pytest.raises(DomainError):
            fox_wright_2psi2(1.0, 0.5, 1.0, 1.0, 1.0, 0.5, 2.0, 0.5, 1.0)

    def test_numerator_pole_rejected(self):
        with pytest.raises(DomainError):
            fox_wright_2psi2(0.0, 0.5, 1.0, 1.0, 1.0, 0.5, 2.0, 0.5, -1.0)


class TestSeriesPolicy:
    def test_defaults(self):
        policy = SeriesPolicy()
        assert policy.max_terms >= 100
        assert policy.abs_tol > 0

    def test_validation(self):
        with pytest.raises(DomainError):
            SeriesPolicy(max_terms=0)
        with pytest.raises(DomainError):
            SeriesPolicy(abs_tol=-1e-10)

    def test_tight_budget_raises(self):
        policy = SeriesPolicy(max_terms=3)
        with pytest.raises(ConvergenceError):
            fox_wright_2psi2(
                1.0, 0.5, 1.0, 1.0, 1.0, 0.5, 2.0, 0.5, -5.0, policy
            )
