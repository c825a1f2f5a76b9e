"""Fourier decomposition, power spectra and band-limited Gaussian mutual information.

Frequencies are in Hz, ``f_n = n / T`` for a record of duration ``T``;
the angular equivalents ``2 pi n / T`` are available as
:attr:`FourierCoefficients.angular_frequencies`.

Power per frequency is ``S_n = a_n**2 + b_n**2`` without the usual 1/2,
so the mean square of a signal is ``x0**2 + sum(S_n) / 2`` (the Nyquist
bin, when present, enters with weight 1; see :func:`parseval_power`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._backend import kernels
from .discrete import log2
from .errors import DomainError, ValidationError


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SampledSignal:
    samples: np.ndarray
    sample_rate: float

    def __post_init__(self):
        arr = _frozen(self.samples)
        if arr.ndim != 1 or arr.size < 2:
            raise ValidationError(f"a signal needs at least 2 samples, got {arr.size}")
        if not (self.sample_rate > 0 and math.isfinite(self.sample_rate)):
            raise ValidationError(f"sample_rate must be > 0, got {self.sample_rate!r}")
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "sample_rate", float(self.sample_rate))

    @classmethod
    def from_times(cls, times, values) -> "SampledSignal":
        """Build from uniformly spaced sample times starting at 0."""
        t = np.asarray(times, dtype=float)
        if t.size < 2:
            raise ValidationError("a signal needs at least 2 samples")
        dt = np.diff(t)
        step = float(np.mean(dt))
        if step <= 0 or np.max(np.abs(dt - step)) > 1e-9 * max(1.0, step):
            raise ValidationError("sample times must be uniformly spaced and increasing")
        return cls(values, 1.0 / step)

    def __len__(self) -> int:
        return self.samples.size

    @property
    def duration(self) -> float:
        return self.samples.size / self.sample_rate

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.samples.size) / self.sample_rate


@dataclass(frozen=True, eq=False)
class FourierCoefficients:
    """``x_t = x0 + sum_n a[n-1] cos(2 pi f_n t) + b[n-1] sin(2 pi f_n t)``."""

    x0: float
    a: np.ndarray
    b: np.ndarray
    duration: float
    n_samples: Optional[int] = None

    def __post_init__(self):
        a, b = _frozen(self.a), _frozen(self.b)
        if a.shape != b.shape or a.ndim != 1:
            raise ValidationError("cosine and sine coefficient arrays must have equal length")
        if not self.duration > 0:
            raise ValidationError(f"duration must be > 0, got {self.duration!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "x0", float(self.x0))

    @property
    def frequencies(self) -> np.ndarray:
        return np.arange(1, self.a.size + 1) / self.duration

    @property
    def angular_frequencies(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(1, self.a.size + 1) / self.duration

    @property
    def has_nyquist_bin(self) -> bool:
        return self.n_samples is not None and self.n_samples % 2 == 0 and 2 * self.a.size == self.n_samples


def fourier_analyze(sig: SampledSignal, method: str = "direct") -> FourierCoefficients:
    """Fourier coefficients up to the Nyquist index ``len(sig) // 2``.

    The coefficient integrals are evaluated by the trapezoid rule over one
    period of the sampled record, i.e. ``a_n = (2/M) sum_k x_k cos(2 pi n k / M)``.
    The Nyquist coefficient of an even-length record takes weight ``1/M``
    so that synthesis reproduces the samples exactly.

    ``method='fft'`` evaluates the same sums with ``numpy.fft.rfft``.
    """
    x = np.ascontiguousarray(sig.samples, dtype=float)
    m = x.size
    nmax = m // 2
    if method == "direct":
        csum, ssum = kernels.dft_direct(x, nmax)
    elif method == "fft":
        spec = np.fft.rfft(x)
        csum, ssum = spec.real, -spec.imag
    else:
        raise ValidationError(f"unknown method {method!r}")
    a = 2.0 * np.asarray(csum[1:]) / m
    b = 2.0 * np.asarray(ssum[1:]) / m
    if m % 2 == 0:
        a[-1] *= 0.5
        b[-1] = 0.0
    return FourierCoefficients(float(csum[0]) / m, a, b, sig.duration, m)


def synthesize(coeffs: FourierCoefficients, times=None) -> np.ndarray:
    """Evaluate the Fourier series at ``times`` (default: the original sample grid)."""
    if times is None:
        if coeffs.n_samples is None:
            raise ValidationError("times are required when the sample count is unknown")
        times = np.arange(coeffs.n_samples) * (coeffs.duration / coeffs.n_samples)
    t = np.atleast_1d(np.asarray(times, dtype=float))
    out = np.full(t.shape, coeffs.x0)
    n = np.arange(1, coeffs.a.size + 1)
    chunk = 1024
    for lo in range(0, t.size, chunk):
        # phase as 2 pi * frac(n t / T) keeps the argument small for long records
        cycles = np.outer(t[lo:lo + chunk] / coeffs.duration, n)
        phase = 2.0 * np.pi * (cycles - np.floor(cycles))
        out[lo:lo + chunk] += np.cos(phase) @ coeffs.a + np.sin(phase) @ coeffs.b
    return out


def synthesize_signal(coeffs: FourierCoefficients) -> SampledSignal:
    """Resynthesise on the original sampling grid."""
    if coeffs.n_samples is None:
        raise ValidationError("sample count unknown; use synthesize() with explicit times")
    return SampledSignal(synthesize(coeffs), coeffs.n_samples / coeffs.duration)


@dataclass(frozen=True, eq=False)
class PowerSpectrum:
    frequencies: np.ndarray
    power: np.ndarray
    phase: np.ndarray


def power_spectrum(coeffs: FourierCoefficients) -> PowerSpectrum:
    """Power ``a_n**2 + b_n**2`` and phase ``atan2(b_n, a_n)`` per frequency."""
    return PowerSpectrum(
        coeffs.frequencies,
        coeffs.a**2 + coeffs.b**2,
        np.arctan2(coeffs.b, coeffs.a),
    )


def parseval_power(coeffs: FourierCoefficients) -> float:
    """Mean-square value implied by the coefficients."""
    s = coeffs.a**2 + coeffs.b**2
    w = np.full(s.shape, 0.5)
    if coeffs.has_nyquist_bin:
        w[-1] = 1.0
    return coeffs.x0**2 + math.fsum((w * s).tolist())


# --------------------------------------------------------------------------
# band-limited mutual information


@dataclass(frozen=True, eq=False)
class SpectrumPair:
    """Signal and noise power on a frequency grid inside [0, bandwidth]."""

    frequencies: np.ndarray
    signal: np.ndarray
    noise: np.ndarray
    bandwidth: float
    level: Optional[float] = field(default=None)

    def __post_init__(self):
        f, s, n = _frozen(self.frequencies), _frozen(self.signal), _frozen(self.noise)
        if f.ndim != 1 or f.size == 0:
            raise ValidationError("frequency grid must be a non-empty 1-D sequence")
        if s.shape != f.shape or n.shape != f.shape:
            raise ValidationError("signal, noise and frequency arrays must have equal length")
        if np.any(np.diff(f) <= 0):
            raise ValidationError("frequency grid must be strictly increasing")
        if not (self.bandwidth > 0 and math.isfinite(self.bandwidth)):
            raise ValidationError(f"bandwidth must be > 0, got {self.bandwidth!r}")
        if f[0] < 0 or f[-1] > self.bandwidth:
            raise ValidationError(f"frequency grid must lie within [0, {self.bandwidth!r}]")
        if np.any(s < 0) or not np.all(np.isfinite(s)):
            raise ValidationError("signal power must be finite and >= 0")
        if np.any(n <= 0) or not np.all(np.isfinite(n)):
            raise ValidationError("noise power must be finite and > 0")
        object.__setattr__(self, "frequencies", f)
        object.__setattr__(self, "signal", s)
        object.__setattr__(self, "noise", n)
        object.__setattr__(self, "bandwidth", float(self.bandwidth))

    @classmethod
    def flat(cls, signal: float, noise: float, bandwidth: float, points: int = 2) -> "SpectrumPair":
        f = np.linspace(0.0, bandwidth, points)
        return cls(f, np.full(points, float(signal)), np.full(points, float(noise)), bandwidth)


def quadrature_weights(frequencies, bandwidth: float) -> np.ndarray:
    """Trapezoid weights over [0, bandwidth] on the grid.

    Values are held constant from the first node down to 0 and from the
    last node up to ``bandwidth``, so a constant integrand integrates to
    exactly ``c * bandwidth``.
    """
    f = np.asarray(frequencies, dtype=float)
    w = np.zeros(f.size)
    if f.size > 1:
        d = np.diff(f)
        w[:-1] += d / 2.0
        w[1:] += d / 2.0
    w[0] += f[0]
    w[-1] += bandwidth - f[-1]
    return w


def per_frequency_mi(signal_power, noise_power):
    """``log2(1 + S/N)`` bits/s per unit bandwidth; scalar or array."""
    s = np.asarray(signal_power, dtype=float)
    n = np.asarray(noise_power, dtype=float)
    if np.any(n <= 0):
        raise DomainError("noise power must be > 0")
    if np.any(s < 0):
        raise DomainError("signal power must be >= 0")
    out = log2(1.0 + s / n)
    return float(out) if np.ndim(out) == 0 else out


def spectral_mutual_information(sp: SpectrumPair) -> float:
    """Integral of the per-frequency MI over [0, W] in bits/s."""
    w = quadrature_weights(sp.frequencies, sp.bandwidth)
    terms = w * per_frequency_mi(sp.signal, sp.noise)
    return math.fsum(terms.tolist())


def allocated_power(sp: SpectrumPair) -> float:
    w = quadrature_weights(sp.frequencies, sp.bandwidth)
    return math.fsum((w * sp.signal).tolist())


def flat_spectrum_allocation(
    frequencies,
    noise,
    total_signal_power: float,
    bandwidth: Optional[float] = None,
    tol: float = 1e-9,
) -> SpectrumPair:
    """Water-filling: ``S(f) = max(0, k - N(f))`` with total power equal to the budget.

    The level ``k`` is bracketed and bisected until the allocated power is
    within ``tol`` of ``total_signal_power``, then polished in closed form on
    the active set.  Power is measured with :func:`quadrature_weights`.
    """
    f = np.asarray(frequencies, dtype=float)
    n = np.asarray(noise, dtype=float)
    if f.size == 0:
        raise ValidationError("frequency grid is empty")
    if total_signal_power < 0:
        raise DomainError(f"signal power budget must be >= 0, got {total_signal_power!r}")
    if np.any(n <= 0):
        raise ValidationError("noise power must be > 0")
    bw = float(f[-1]) if bandwidth is None else float(bandwidth)
    w = quadrature_weights(f, bw)
    budget = float(total_signal_power)

    def used(k: float) -> float:
        return math.fsum((w * np.maximum(0.0, k - n)).tolist())

    lo = float(n.min())
    hi = float(n.max()) + budget / float(w.sum())
    k = lo
    if budget > 0:
        for _ in range(400):
            k = 0.5 * (lo + hi)
            p = used(k)
            if abs(p - budget) <= tol or hi - lo <= 1e-15 * max(1.0, hi):
                break
            if p < budget:
                lo = k
            else:
                hi = k
        active = n < k
        k = (budget + math.fsum((w[active] * n[active]).tolist())) / math.fsum(w[active].tolist())
    s = np.maximum(0.0, k - n)
    return SpectrumPair(f, s, n, bw, level=k)
