"""Noise generation, surrogates, spectra and Hurst estimation."""

import math

import numpy as np
import pytest

from couplemap import (
    FgnSpec,
    LengthTooShort,
    estimate_hurst,
    fgn_autocovariance,
    generate_fgn,
    surrogate,
)
from couplemap.series import KIND_STANDARDIZED, index_series
from couplemap.synth import (
    Spectrum,
    _circulant_fgn,
    _recursive_fgn,
    inverse_spectrum,
    spectrum,
)


def sample_acf(values: np.ndarray, lag: int) -> float:
    v = values - values.mean()
    return float((v[:-lag] * v[lag:]).sum() / (v * v).sum())


class TestFgnSpec:
    def test_validation(self):
        FgnSpec(0.5, 16, 0)
        with pytest.raises(ValueError):
            FgnSpec(0.0, 100, 0)
        with pytest.raises(ValueError):
            FgnSpec(1.0, 100, 0)
        with pytest.raises(ValueError):
            FgnSpec(0.5, 15, 0)
        with pytest.raises(ValueError):
            FgnSpec(0.5, 100, -1)
        with pytest.raises(ValueError):
            FgnSpec(0.5, 100, 2**64)
        with pytest.raises(TypeError):
            FgnSpec(0.5, 100, 1.5)


class TestAutocovariance:
    def test_white_noise_is_delta(self):
        acov = fgn_autocovariance(0.5, 5)
        assert acov[0] == 1.0
        assert np.allclose(acov[1:], 0.0, atol=1e-15)

    def test_persistent_lag_one(self):
        # gamma(1) = (2^{2H} - 2) / 2
        acov = fgn_autocovariance(0.9, 1)
        assert acov[1] == pytest.approx((2**1.8 - 2) / 2)
        assert acov[1] == pytest.approx(0.7411, abs=5e-4)

    def test_antipersistent_negative_lag_one(self):
        assert fgn_autocovariance(0.3, 1)[1] < 0

    def test_hurst_range_checked(self):
        with pytest.raises(ValueError):
            fgn_autocovariance(1.2, 4)


class TestGenerateFgn:
    def test_deterministic_and_standardized(self):
        a = generate_fgn(FgnSpec(0.7, 512, 42))
        b = generate_fgn(FgnSpec(0.7, 512, 42))
        assert np.array_equal(a.values, b.values)
        assert a.kind == KIND_STANDARDIZED
        assert len(a) == 512
        assert list(a.timestamps[:3]) == [0, 1, 2]
        assert abs(a.values.mean()) < 1e-12
        assert abs(a.values.std() - 1.0) < 1e-12

    def test_distinct_seeds_differ(self):
        a = generate_fgn(FgnSpec(0.7, 256, 1))
        b = generate_fgn(FgnSpec(0.7, 256, 2))
        assert not np.array_equal(a.values, b.values)

    def test_white_noise_uncorrelated(self):
        s = generate_fgn(FgnSpec(0.5, 4096, 7))
        assert abs(sample_acf(s.values, 1)) <= 2.0 / math.sqrt(4096)

    def test_persistent_lag_one_autocorrelation(self):
        # theory gives 0.7411 at H=0.9; the sample ACF of strongly
        # persistent noise is biased low at finite N, so allow for that
        acc = [
            sample_acf(generate_fgn(FgnSpec(0.9, 4096, seed)).values, 1)
            for seed in range(20)
        ]
        assert 0.60 <= np.mean(acc) <= 0.78

    def test_pooled_autocovariance_matches_theory(self):
        # 50 pooled realizations, lags 1..5, three exponents
        n = 4096
        for h in (0.3, 0.5, 0.7):
            theory = fgn_autocovariance(h, 5)
            pooled = np.zeros(5)
            for seed in range(50):
                v = generate_fgn(FgnSpec(h, n, seed)).values
                for k in range(1, 6):
                    pooled[k - 1] += (v[:-k] * v[k:]).sum() / (n - k)
            pooled /= 50
            assert np.all(np.abs(pooled - theory[1:]) <= 0.05), h

    def test_recursive_fallback_agrees_statistically(self):
        # same covariance target as the circulant path, different algorithm
        acov = fgn_autocovariance(0.8, 511)
        draws = [
            _recursive_fgn(acov, 512, np.random.default_rng(seed))
            for seed in range(30)
        ]
        lag1 = np.mean([sample_acf(d, 1) for d in draws])
        assert abs(lag1 - acov[1]) < 0.08

    def test_circulant_matches_requested_length(self):
        acov = fgn_autocovariance(0.6, 99)
        out = _circulant_fgn(acov, 100, np.random.default_rng(0))
        assert out.shape == (100,)

class TestSurrogate:
    def test_amplitude_spectrum_preserved(self):
        rng = np.random.default_rng(3)
        s = index_series(rng.normal(size=1000))
        out = surrogate(s, seed=11)
        amp_in = np.abs(np.fft.fft(s.values))
        amp_out = np.abs(np.fft.fft(out.values))
        scale = amp_in.max()
        assert np.all(np.abs(amp_in - amp_out) <= 1e-9 * scale)

    def test_mean_and_variance_preserved(self):
        rng = np.random.default_rng(4)
        s = index_series(rng.normal(loc=3.0, scale=2.0, size=999))
        out = surrogate(s, seed=5)
        assert out.values.mean() == pytest.approx(s.values.mean(), abs=1e-9)
        # Parseval: the amplitude spectrum fixes the population variance
        assert out.values.std() == pytest.approx(s.values.std(), rel=1e-9)

    def test_constant_series_unchanged(self):
        s = index_series([5.0] * 16)
        out = surrogate(s, seed=9)
        assert np.allclose(out.values, 5.0, atol=1e-12)

    def test_deterministic(self):
        s = index_series(np.sin(np.arange(64) / 3.0))
        assert np.array_equal(surrogate(s, 8).values, surrogate(s, 8).values)
        assert not np.array_equal(surrogate(s, 8).values, surrogate(s, 9).values)

    def test_too_short(self):
        with pytest.raises(LengthTooShort):
            surrogate(index_series([1.0, 2.0, 3.0]), 0)

    def test_kind_and_timestamps_preserved(self):
        from couplemap.series import standardize

        s = standardize(index_series(np.random.default_rng(0).normal(size=100)))
        out = surrogate(s, 1)
        assert out.kind == KIND_STANDARDIZED
        assert np.array_equal(out.timestamps, s.timestamps)

    def test_odd_length_real_output(self):
        s = index_series(np.random.default_rng(1).normal(size=101))
        out = surrogate(s, 2)
        assert len(out) == 101
        assert out.values.dtype == np.float64

    def test_double_surrogate_same_amplitudes(self):
        rng = np.random.default_rng(5)
        s = index_series(rng.normal(size=256))
        once = surrogate(s, 100)
        twice = surrogate(once, 200)
        amp1 = np.abs(np.fft.fft(once.values))
        amp2 = np.abs(np.fft.fft(twice.values))
        assert np.allclose(amp1, amp2, rtol=1e-9, atol=1e-12 * amp1.max())

    def test_gaussianizes_fat_tails(self):
        from scipy.stats import kurtosis, skew

        rng = np.random.default_rng(12)
        values = rng.standard_t(3, size=2000)
        s = index_series(values)
        assert kurtosis(values) > 3.0
        skews, kurts = [], []
        for seed in range(20):
            out = surrogate(s, seed).values
            skews.append(abs(skew(out)))
            kurts.append(abs(kurtosis(out)))
        assert np.mean(skews) < 0.15
        assert np.mean(kurts) < 0.3

    def test_linear_structure_preserved(self):
        n = 2000
        s = generate_fgn(FgnSpec(0.7, n, 77))
        out = surrogate(s, 13)
        for lag in range(1, 11):
            diff = abs(sample_acf(out.values, lag) - sample_acf(s.values, lag))
            assert diff <= 3.0 / math.sqrt(n), lag


class TestSpectrum:
    def test_forward_convention_small_oracle(self):
        # X(k) = (1/N) sum_t x_t exp(+2 pi i k t / N), checked term by term
        values = np.array([1.0, -2.0, 0.5, 3.0, -1.0])
        n = len(values)
        sp = spectrum(index_series(values))
        for k in range(n):
            direct = sum(
                values[t] * np.exp(2j * np.pi * k * t / n) for t in range(n)
            ) / n
            assert sp.amplitudes[k] == pytest.approx(abs(direct), abs=1e-12)
            if abs(direct) > 1e-12:
                got = sp.amplitudes[k] * np.exp(1j * sp.phases[k])
                assert got == pytest.approx(direct, abs=1e-12)

    def test_constant_series_is_pure_dc(self):
        sp = spectrum(index_series([4.0, 4.0, 4.0, 4.0]))
        assert sp.amplitudes[0] == pytest.approx(4.0)
        assert np.allclose(sp.amplitudes[1:], 0.0, atol=1e-12)

    def test_real_series_is_hermitian(self):
        s = index_series(np.random.default_rng(2).normal(size=32))
        assert spectrum(s).hermitian

    def test_round_trip(self):
        values = np.random.default_rng(6).normal(size=50)
        sp = spectrum(index_series(values))
        back = inverse_spectrum(sp)
        assert np.allclose(back, values, atol=1e-9)
        assert back.dtype == np.float64

    def test_non_hermitian_inverse_is_complex(self):
        rng = np.random.default_rng(8)
        amp = np.abs(rng.normal(size=8)) + 0.1
        phases = rng.uniform(-math.pi / 2, math.pi / 2, size=8)
        sp = Spectrum(amp, phases, 8)
        assert not sp.hermitian
        assert np.iscomplexobj(inverse_spectrum(sp))

    def test_validation(self):
        with pytest.raises(ValueError):
            Spectrum(np.array([1.0, -0.5]), np.array([0.0, 0.0]), 2)
        with pytest.raises(ValueError):
            Spectrum(np.array([1.0, 0.5]), np.array([0.0, 4.0]), 2)
        with pytest.raises(ValueError):
            Spectrum(np.array([1.0]), np.array([0.0, 0.0]), 2)

    def test_phases_half_open_interval(self):
        s = index_series(np.random.default_rng(9).normal(size=64))
        sp = spectrum(s)
        assert np.all(sp.phases > -math.pi)
        assert np.all(sp.phases <= math.pi)


class TestEstimateHurst:
    def test_length_guard(self):
        with pytest.raises(LengthTooShort):
            estimate_hurst(index_series(np.zeros(255)))

    def test_white_noise_band(self):
        est = estimate_hurst(generate_fgn(FgnSpec(0.5, 4096, 7)))
        assert 0.43 <= est <= 0.57

    def test_persistent_band(self):
        ests = [
            estimate_hurst(generate_fgn(FgnSpec(0.8, 4096, 1000 + s)))
            for s in range(20)
        ]
        assert 0.73 <= np.mean(ests) <= 0.87

    def test_antipersistent_band(self):
        ests = [
            estimate_hurst(generate_fgn(FgnSpec(0.3, 4096, 1000 + s)))
            for s in range(20)
        ]
        assert 0.23 <= np.mean(ests) <= 0.37
