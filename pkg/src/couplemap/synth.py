"""Fractional Gaussian noise, Fourier surrogates, Hurst estimation.

fGn synthesis uses circulant embedding of the autocovariance (exact spectral
method); a sequential conditional recursion takes over if an embedding
eigenvalue is negative beyond tolerance. Surrogates randomize the phases of
the Fourier transform while keeping every amplitude bin, so the linear
structure survives and the distribution Gaussianizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import EmbeddingFailure, LengthTooShort
from .series import KIND_RAW, TimeSeries, index_series, standardize

_MAX_SEED = 2**64
_EIGENVALUE_TOL = -1e-8
_HURST_BLOCK_SIZES = (8, 16, 32, 64, 128)
_MIN_HURST_LENGTH = 2 * _HURST_BLOCK_SIZES[-1]


def _check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)):
        raise TypeError(f"seed must be an integer, got {type(seed).__name__}")
    if not 0 <= seed < _MAX_SEED:
        raise ValueError(f"seed must fit in 64 unsigned bits, got {seed}")
    return int(seed)


@dataclass(frozen=True)
class FgnSpec:
    """One fractional-Gaussian-noise draw: exponent, length and seed."""

    hurst: float
    length: int
    seed: int

    def __post_init__(self) -> None:
        if not 0.0 < self.hurst < 1.0:
            raise ValueError(f"hurst must lie in (0, 1), got {self.hurst}")
        if self.length < 16:
            raise ValueError(f"length must be at least 16, got {self.length}")
        _check_seed(self.seed)


def fgn_autocovariance(hurst: float, max_lag: int) -> np.ndarray:
    """Theoretical autocovariance gamma(0..max_lag) of unit-variance fGn."""
    if not 0.0 < hurst < 1.0:
        raise ValueError(f"hurst must lie in (0, 1), got {hurst}")
    k = np.arange(max_lag + 1, dtype=np.float64)
    h2 = 2.0 * hurst
    return 0.5 * (np.abs(k + 1) ** h2 - 2.0 * np.abs(k) ** h2 + np.abs(k - 1) ** h2)


def _circulant_fgn(acov: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
    """Exact draw via circulant embedding of the 2n x 2n covariance."""
    m = 2 * n
    first_row = np.concatenate([acov, [0.0], acov[-1:0:-1]])
    eig = np.fft.fft(first_row).real
    if eig.min() < _EIGENVALUE_TOL:
        raise EmbeddingFailure(f"negative circulant eigenvalue {eig.min():.3e}")
    eig = np.clip(eig, 0.0, None)

    # Hermitian complex-Gaussian spectrum: E|y_k|^2 = eig_k, y_{m-k} = conj(y_k).
    zr = rng.standard_normal(n + 1)
    zi = rng.standard_normal(n - 1)
    y = np.empty(m, dtype=np.complex128)
    y[0] = math.sqrt(eig[0]) * zr[0]
    y[n] = math.sqrt(eig[n]) * zr[n]
    y[1:n] = np.sqrt(eig[1:n]) * (zr[1:n] + 1j * zi) / math.sqrt(2.0)
    y[n + 1 :] = np.conj(y[1:n][::-1])
    return (np.fft.fft(y) / math.sqrt(m))[:n].real


def _recursive_fgn(acov: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
    """Durbin-Levinson conditional sampling, O(n^2) fallback."""
    noise = rng.standard_normal(n)
    x = np.empty(n)
    phi = np.zeros(n + 1)
    prev = np.zeros(n + 1)
    v = acov[0]
    x[0] = math.sqrt(v) * noise[0]
    for t in range(1, n):
        if t == 1:
            kappa = acov[1] / acov[0]
        else:
            kappa = (acov[t] - prev[1:t] @ acov[t - 1 : 0 : -1]) / v
        phi[t] = kappa
        phi[1:t] = prev[1:t] - kappa * prev[t - 1 : 0 : -1]
        v *= 1.0 - kappa * kappa
        if v <= 0.0:
            raise EmbeddingFailure(f"conditional variance hit {v:.3e} at step {t}")
        x[t] = phi[1 : t + 1] @ x[t - 1 :: -1] + math.sqrt(v) * noise[t]
        prev[: t + 1] = phi[: t + 1]
    return x


def generate_fgn(spec: FgnSpec) -> TimeSeries:
    """Draw one fGn realization; output is standardized, timestamps 0..N-1."""
    acov = fgn_autocovariance(spec.hurst, spec.length - 1)
    rng = np.random.default_rng(spec.seed)
    try:
        values = _circulant_fgn(acov, spec.length, rng)
    except EmbeddingFailure:
        values = _recursive_fgn(acov, spec.length, np.random.default_rng(spec.seed))
    return standardize(index_series(values, kind=KIND_RAW))


def surrogate(s: TimeSeries, seed: int) -> TimeSeries:
    """Phase-randomized copy preserving the full amplitude spectrum.

    The DC bin and, for even length, the Nyquist bin are untouched, so the
    output is real with the input's exact mean and population variance. The
    remaining phases are i.i.d. uniform on (-pi, pi]; Hermitian symmetry
    comes from working on the half spectrum.
    """
    _check_seed(seed)
    n = len(s)
    if n < 4:
        raise LengthTooShort(f"surrogate needs at least 4 points, got {n}")
    coeffs = np.fft.rfft(s.values)
    hi = len(coeffs) - 1 if n % 2 == 0 else len(coeffs)
    rng = np.random.default_rng(seed)
    eta = rng.uniform(-math.pi, math.pi, size=hi - 1)
    coeffs[1:hi] = np.abs(coeffs[1:hi]) * np.exp(1j * eta)
    values = np.fft.irfft(coeffs, n=n)
    return TimeSeries(s.timestamps.copy(), values, kind=s.kind)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Polar discrete Fourier transform, one bin per frequency 0..N-1."""

    amplitudes: np.ndarray
    phases: np.ndarray
    length: int

    def __post_init__(self) -> None:
        amp = np.asarray(self.amplitudes, dtype=np.float64)
        pha = np.asarray(self.phases, dtype=np.float64)
        if amp.ndim != 1 or pha.ndim != 1:
            raise ValueError("amplitudes and phases must be 1-D")
        if len(amp) != self.length or len(pha) != self.length:
            raise ValueError("amplitudes, phases and length must agree")
        if not np.all(np.isfinite(amp)) or np.any(amp < 0):
            raise ValueError("amplitudes must be finite and non-negative")
        if np.any(pha <= -math.pi) or np.any(pha > math.pi):
            raise ValueError("phases must lie in (-pi, pi]")
        amp.flags.writeable = False
        pha.flags.writeable = False
        object.__setattr__(self, "amplitudes", amp)
        object.__setattr__(self, "phases", pha)

    def coefficients(self) -> np.ndarray:
        return self.amplitudes * np.exp(1j * self.phases)

    @cached_property
    def hermitian(self) -> bool:
        """True when the spectrum is that of a real series.

        Checks coefficient(k) == conj(coefficient(N-k)), which bundles the
        amplitude mirror, the phase antisymmetry and the real DC/Nyquist
        bins into one comparison.
        """
        c = self.coefficients()
        mirrored = np.conj(np.roll(c[::-1], 1))
        scale = max(float(self.amplitudes.max()), 1.0)
        return bool(np.allclose(c, mirrored, rtol=0.0, atol=1e-9 * scale))


def spectrum(s: TimeSeries) -> Spectrum:
    """Forward transform with the 1/N prefactor and positive exponent.

    X(k) = (1/N) sum_t x_t exp(+2 pi i k t / N); the matching inverse in
    inverse_spectrum carries no prefactor.
    """
    n = len(s)
    coeffs = np.conj(np.fft.fft(s.values)) / n
    phases = np.angle(coeffs)
    phases[phases <= -math.pi] += 2.0 * math.pi
    return Spectrum(np.abs(coeffs), phases, n)


def inverse_spectrum(sp: Spectrum) -> np.ndarray:
    """x_t = sum_k X(k) exp(-2 pi i k t / N); real array when hermitian."""
    values = np.fft.fft(sp.coefficients())
    return values.real if sp.hermitian else values


def estimate_hurst(s: TimeSeries) -> float:
    """Aggregated-variance Hurst estimate.

    Splits the series into blocks of size m in {8,16,32,64,128}, regresses
    log Var(block means) on log m, and returns 1 + slope/2. A validation
    tool for generate_fgn, not part of the mapping pipeline.
    """
    n = len(s)
    if n < _MIN_HURST_LENGTH:
        raise LengthTooShort(
            f"hurst estimation needs at least {_MIN_HURST_LENGTH} points, got {n}"
        )
    log_var = []
    for m in _HURST_BLOCK_SIZES:
        blocks = n // m
        means = s.values[: blocks * m].reshape(blocks, m).mean(axis=1)
        log_var.append(math.log(means.var(ddof=1)))
    slope = np.polyfit(np.log(_HURST_BLOCK_SIZES), log_var, 1)[0]
    return float(1.0 + slope / 2.0)
