"""Tests for process parametrization and the circle covariance structure."""

import math

import numpy as np
import pytest

from ringbm import (
    CircleGrid,
    DomainError,
    ProcessClass,
    ProcessSpec,
    covariance,
    covariance_matrix,
    gamma_fn,
    geodesic_variance,
    increment_char_fn,
    increment_second_moment,
    mittag_leffler,
    multivariate_char_fn,
    psd_check,
    self_similarity_check,
)


class TestProcessSpec:
    def test_pfbm_forces_beta(self):
        spec = ProcessSpec(ProcessClass.PFBM, 0.3)
        assert spec.beta == 1.0

    def test_pgbm_forces_beta(self):
        spec = ProcessSpec(ProcessClass.PGBM, 0.25)
        assert spec.beta == 0.5
        with pytest.raises(DomainError):
            ProcessSpec(ProcessClass.PGBM, 0.25, beta=0.7)

    def test_pggbm_requires_beta(self):
        with pytest.raises(DomainError):
            ProcessSpec(ProcessClass.PGGBM, 0.25)
        spec = ProcessSpec(ProcessClass.PGGBM, 0.25, beta=0.8)
        assert spec.beta == 0.8
        with pytest.raises(DomainError):
            ProcessSpec(ProcessClass.PGGBM, 0.25, beta=1.5)

    def test_string_class_accepted(self):
        spec = ProcessSpec("pfbm", 0.4)
        assert spec.process_class is ProcessClass.PFBM

    def test_high_hurst_gated(self):
        with pytest.raises(DomainError):
            ProcessSpec(ProcessClass.PFBM, 0.7)
        spec = ProcessSpec(ProcessClass.PFBM, 0.7, allow_unstable=True)
        assert spec.hurst == 0.7

    def test_validation(self):
        with pytest.raises(DomainError):
            ProcessSpec(ProcessClass.PFBM, -0.1)
        with pytest.raises(DomainError):
            ProcessSpec(ProcessClass.PFBM, 0.3, circle_length=0.0)


class TestCircleGrid:
    def test_times(self):
        grid = CircleGrid(4, 2.0)
        assert np.allclose(grid.times, [0.0, 0.5, 1.0, 1.5])

    def test_validation(self):
        with pytest.raises(DomainError):
            CircleGrid(0)
        with pytest.raises(DomainError):
            CircleGrid(4, -1.0)


class TestGeodesicVariance:
    def test_endpoints(self):
        assert geodesic_variance(0.0, 0.3, 1.0) == 0.0
        assert geodesic_variance(1.0, 0.3, 1.0) == 0.0

    def test_halfway_maximum(self):
        hurst, L = 0.3, 2.0
        assert geodesic_variance(L / 2, hurst, L) == pytest.approx(
            (L / 2) ** (2 * hurst), rel=1e-14
        )

    def test_short_arc_wins(self):
        # beyond the halfway point the complementary arc is shorter
        assert geodesic_variance(0.9, 0.25, 1.0) == pytest.approx(
            0.1**0.5, rel=1e-14
        )

    def test_symmetry(self):
        assert geodesic_variance(-0.3, 0.4, 1.0) == geodesic_variance(0.3, 0.4, 1.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            geodesic_variance(1.5, 0.3, 1.0)
        with pytest.raises(DomainError):
            geodesic_variance(0.3, 0.0, 1.0)


class TestCovariance:
    def test_matches_elementwise_definition(self):
        hurst, L = 0.3, 1.0
        for t, s in [(0.1, 0.7), (0.0, 0.5), (0.9, 0.2)]:
            d = lambda tau: geodesic_variance(tau, hurst, L)
            expect = 0.5 * (d(t) + d(s) - d(t - s))
            assert covariance(t, s, hurst, L) == pytest.approx(expect, rel=1e-14)

    def test_pinned_at_zero(self):
        assert covariance(0.0, 0.4, 0.3, 1.0) == 0.0

    def test_variance_on_diagonal(self):
        hurst, L = 0.25, 1.0
        t = 0.3
        assert covariance(t, t, hurst, L) == pytest.approx(
            geodesic_variance(t, hurst, L), rel=1e-14
        )

    def test_matrix_matches_scalar(self):
        grid = CircleGrid(16, 1.5)
        hurst = 0.35
        cov = covariance_matrix(grid, hurst)
        t = grid.times
        brute = np.array(
            [[covariance(a, b, hurst, 1.5) for b in t] for a in t]
        )
        assert np.allclose(cov.values, brute, atol=1e-14)
        assert np.array_equal(cov.values, cov.values.T)

    def test_self_similarity(self):
        for a in [0.5, 2.0, 7.3]:
            assert self_similarity_check(0.3, a, 0.2, 0.6, 1.0)


class TestPsdCheck:
    def test_low_hurst_is_psd(self):
        for hurst in [0.1, 0.3, 0.5]:
            cov = covariance_matrix(CircleGrid(64), hurst)
            min_ev, ok = psd_check(cov)
            assert ok, f"H={hurst}: min eigenvalue {min_ev}"
            assert cov.min_eigenvalue == min_ev

    def test_high_hurst_fails(self):
        cov = covariance_matrix(CircleGrid(64), 0.7)
        min_ev, ok = psd_check(cov)
        assert not ok
        assert min_ev < 0


class TestCharacteristicFunctions:
    def test_pfbm_gaussian(self):
        spec = ProcessSpec(ProcessClass.PFBM, 0.3)
        k, t, s = 1.5, 0.4, 0.1
        d = geodesic_variance(t - s, 0.3, 1.0)
        assert increment_char_fn(spec, k, t, s) == pytest.approx(
            math.exp(-0.5 * k * k * d), rel=1e-13
        )

    def test_grey_classes_mittag_leffler(self):
        for spec in [
            ProcessSpec(ProcessClass.PGBM, 0.25),
            ProcessSpec(ProcessClass.PGGBM, 0.25, beta=0.7),
        ]:
            k, t, s = 2.0, 0.6, 0.2
            d = geodesic_variance(t - s, spec.hurst, 1.0)
            ref = mittag_leffler(spec.beta, -0.5 * k * k * d)
            assert increment_char_fn(spec, k, t, s) == pytest.approx(ref, rel=1e-12)

    def test_zero_wavenumber(self):
        spec = ProcessSpec(ProcessClass.PGBM, 0.2)
        assert increment_char_fn(spec, 0.0, 0.3, 0.1) == 1.0

    def test_second_moment_scaling(self):
        # grey classes divide the Gaussian increment variance by Gamma(beta+1)
        t, s = 0.4, 0.15
        pf = ProcessSpec(ProcessClass.PFBM, 0.25)
        pg = ProcessSpec(ProcessClass.PGBM, 0.25)
        d = geodesic_variance(t - s, 0.25, 1.0)
        assert increment_second_moment(pf, t, s) == pytest.approx(d, rel=1e-13)
        assert increment_second_moment(pg, t, s) == pytest.approx(
            d / gamma_fn(1.5), rel=1e-13
        )

    def test_multivariate_reduces_to_increment(self):
        # lambdas (k, -k) at (t, s) is the characteristic function of the
        # increment X(t) - X(s)
        spec = ProcessSpec(ProcessClass.PGGBM, 0.3, beta=0.6)
        k, t, s = 1.2, 0.55, 0.2
        joint = multivariate_char_fn(spec, [k, -k], [t, s])
        assert joint == pytest.approx(increment_char_fn(spec, k, t, s), rel=1e-12)

    def test_multivariate_single_point(self):
        spec = ProcessSpec(ProcessClass.PFBM, 0.3)
        lam, t = 2.0, 0.4
        var = geodesic_variance(t, 0.3, 1.0)
        assert multivariate_char_fn(spec, [lam], [t]) == pytest.approx(
            math.exp(-0.5 * lam * lam * var), rel=1e-13
        )

    def test_multivariate_validation(self):
        spec = ProcessSpec(ProcessClass.PFBM, 0.3)
        with pytest.raises(DomainError):
            multivariate_char_fn(spec, [1.0, 2.0], [0.1])
        with pytest.raises(DomainError):
            multivariate_char_fn(spec, [1.0], [1.5])
