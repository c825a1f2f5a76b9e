"""Seeded channel simulation and plug-in entropy / MI estimation from samples.

Random numbers come from a counter-based SplitMix64 generator: the value
at position ``c`` of the stream with key ``k`` is
``mix64(k + (c + 1) * 0x9E3779B97F4A7C15)``, top 53 bits scaled to [0, 1).
Gaussian variates use the polar (Marsaglia) method on consecutive pairs.
Keys for sub-streams are derived from ``(seed, *path)`` with the same
mixer, so any sample block can be regenerated on its own.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._backend import kernels
from .channel import GaussianChannelSpec, gaussian_mutual_information
from .discrete import DiscretePmf, JointPmf, entropy, joint_entropy, marginalize
from .errors import DomainError, ValidationError

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
ALGORITHM = "splitmix64-counter+polar"
#: samples per independently keyed block of a simulation
BLOCK_SIZE = 1 << 16


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class SeededStream:
    """Reproducible random stream identified by a 64-bit seed."""

    seed: int
    algorithm: str = ALGORITHM

    def __post_init__(self):
        if self.algorithm != ALGORITHM:
            raise ValidationError(f"unsupported generator {self.algorithm!r}")
        if not isinstance(self.seed, (int, np.integer)) or not 0 <= self.seed <= MASK64:
            raise ValidationError(f"seed must be an integer in [0, 2**64), got {self.seed!r}")

    def key(self, *path: int) -> int:
        k = mix64(int(self.seed))
        for idx in path:
            k = mix64(k ^ mix64((int(idx) + 1) * GAMMA))
        return k

    def uniforms(self, count: int, *path: int) -> np.ndarray:
        return kernels.splitmix_uniform(self.key(*path), 0, int(count))

    def normals(self, count: int, *path: int) -> np.ndarray:
        """Standard normal variates (polar method)."""
        count = int(count)
        pairs = (count + 1) // 2
        u, v, s = kernels.polar_pairs(self.key(*path), pairs)
        f = np.sqrt(-2.0 * np.log(s) / s)
        z = np.empty(2 * pairs)
        z[0::2] = u * f
        z[1::2] = v * f
        return z[:count]


def _simulate_block(spec: GaussianChannelSpec, stream: SeededStream, block: int, m: int):
    z = stream.normals(2 * m, block)
    x = math.sqrt(spec.signal_power) * z[:m]
    noise = math.sqrt(spec.noise_power) * z[m:]
    return x, x + noise


def simulate_additive_gaussian(
    spec: GaussianChannelSpec,
    n: int,
    stream: SeededStream,
    workers: int = 1,
) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``n`` iid pairs ``x ~ N(0, S)``, ``y = x + noise`` with ``noise ~ N(0, N)``.

    Samples are produced in blocks of ``BLOCK_SIZE`` keyed by (seed, block
    index), so the output does not depend on ``workers``.
    """
    n = int(n)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    sizes = [min(BLOCK_SIZE, n - lo) for lo in range(0, n, BLOCK_SIZE)]
    jobs = list(enumerate(sizes))
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _simulate_block(spec, stream, *job), jobs))
    else:
        parts = [_simulate_block(spec, stream, b, m) for b, m in jobs]
    x = np.concatenate([p[0] for p in parts])
    y = np.concatenate([p[1] for p in parts])
    return x, y


# --------------------------------------------------------------------------
# histograms and plug-in estimators


@dataclass(frozen=True, eq=False)
class Histogram2D:
    x_edges: np.ndarray
    y_edges: np.ndarray
    counts: np.ndarray

    def __post_init__(self):
        xe = np.asarray(self.x_edges, dtype=float)
        ye = np.asarray(self.y_edges, dtype=float)
        c = np.asarray(self.counts)
        for name, e in (("x_edges", xe), ("y_edges", ye)):
            if e.ndim != 1 or e.size < 2 or np.any(np.diff(e) <= 0):
                raise ValidationError(f"{name} must be strictly increasing with at least 2 entries")
        if c.shape != (xe.size - 1, ye.size - 1):
            raise ValidationError(f"counts shape {c.shape} does not match the bin edges")
        if np.any(c < 0) or not np.all(np.equal(np.mod(c, 1), 0)):
            raise ValidationError("counts must be nonnegative integers")
        c = c.astype(np.int64)
        for a in (xe, ye, c):
            a.setflags(write=False)
        object.__setattr__(self, "x_edges", xe)
        object.__setattr__(self, "y_edges", ye)
        object.__setattr__(self, "counts", c)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def bins(self) -> tuple[int, int]:
        return self.counts.shape

    @classmethod
    def from_samples(cls, x, y, bins=64, binning: str = "quantile", x_edges=None, y_edges=None) -> "Histogram2D":
        """Bin paired samples; values on the last edge fall in the last bin."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.shape != y.shape or x.ndim != 1 or x.size == 0:
            raise ValidationError("x and y must be equal-length non-empty 1-D sample arrays")
        bx, by = (bins, bins) if np.isscalar(bins) else bins
        xe = np.asarray(x_edges, dtype=float) if x_edges is not None else bin_edges(x, bx, binning)
        ye = np.asarray(y_edges, dtype=float) if y_edges is not None else bin_edges(y, by, binning)
        ix = _digitize(x, xe)
        iy = _digitize(y, ye)
        ny = ye.size - 1
        counts = np.bincount(ix * ny + iy, minlength=(xe.size - 1) * ny).reshape(xe.size - 1, ny)
        return cls(xe, ye, counts)

    @classmethod
    def from_joint(cls, j: JointPmf, n: int) -> "Histogram2D":
        """Histogram whose cell frequencies are exactly ``n * p(x, y)``."""
        counts = np.rint(j.probs * n)
        if not np.allclose(counts, j.probs * n, rtol=0, atol=1e-6):
            raise ValidationError("n * p(x, y) must be integral for every cell")
        return cls(np.arange(j.shape[0] + 1), np.arange(j.shape[1] + 1), counts)

    def joint_pmf(self) -> JointPmf:
        if self.total < 1:
            raise ValidationError("histogram is empty")
        return JointPmf(range(self.bins[0]), range(self.bins[1]), self.counts / self.total)


def bin_edges(v: np.ndarray, bins: int, binning: str = "quantile") -> np.ndarray:
    """Equal-probability (``'quantile'``) or equal-width (``'width'``) edges.

    Quantile edges that coincide (discrete data) are merged, so fewer bins
    than requested may result.
    """
    if int(bins) < 1:
        raise DomainError(f"bins must be >= 1, got {bins!r}")
    lo, hi = float(v.min()), float(v.max())
    if hi <= lo:
        return np.array([lo - 0.5, lo + 0.5])
    if binning == "quantile":
        edges = np.unique(np.quantile(v, np.linspace(0.0, 1.0, int(bins) + 1)))
    elif binning == "width":
        edges = np.linspace(lo, hi, int(bins) + 1)
    else:
        raise ValidationError(f"unknown binning {binning!r}")
    return edges


def _digitize(v: np.ndarray, edges: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(edges, v, side="right") - 1
    if np.any((v < edges[0]) | (v > edges[-1])):
        raise ValidationError("samples fall outside the bin edges")
    return np.clip(idx, 0, edges.size - 2)


def _miller_madow(counts: np.ndarray) -> float:
    n = counts.sum()
    occupied = int(np.count_nonzero(counts))
    return (occupied - 1) / (2.0 * n * math.log(2.0))


def plugin_entropy(h, axis: Optional[str] = None, bias_correction: bool = False) -> float:
    """Entropy of empirical frequencies.

    ``h`` is a :class:`Histogram2D` (``axis`` 'x', 'y', or None for the joint)
    or an array of counts.  ``bias_correction`` adds the Miller-Madow term.
    """
    if isinstance(h, Histogram2D):
        counts = h.counts
        if axis == "x":
            counts = counts.sum(axis=1)
        elif axis == "y":
            counts = counts.sum(axis=0)
        elif axis is not None:
            raise ValidationError(f"axis must be 'x', 'y' or None, got {axis!r}")
    else:
        counts = np.asarray(h)
    counts = np.ravel(counts)
    total = counts.sum()
    if total < 1:
        raise ValidationError("histogram is empty")
    value = entropy(DiscretePmf(range(counts.size), counts / total))
    if bias_correction:
        value += _miller_madow(counts)
    return value


def plugin_mutual_information(h: Histogram2D, bias_correction: bool = False) -> float:
    """MI of the empirical joint pmf, clamped at 0."""
    j = h.joint_pmf()
    hx = entropy(marginalize(j, "x"))
    hy = entropy(marginalize(j, "y"))
    value = hx + hy - joint_entropy(j)
    if bias_correction:
        value += _miller_madow(h.counts.sum(axis=1)) + _miller_madow(h.counts.sum(axis=0)) - _miller_madow(h.counts)
    return max(0.0, value)


def estimator_report(
    x,
    y,
    bins: int = 64,
    signal_power: Optional[float] = None,
    noise_power: Optional[float] = None,
    binning: str = "quantile",
) -> dict:
    """Plug-in entropies and MI of paired samples beside the Gaussian-channel value.

    Powers default to the sample variances of ``x`` and ``y - x``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    h = Histogram2D.from_samples(x, y, bins, binning)
    s = float(np.var(x)) if signal_power is None else float(signal_power)
    nz = float(np.var(y - x)) if noise_power is None else float(noise_power)
    i_hat = plugin_mutual_information(h)
    analytic = gaussian_mutual_information(s, nz)
    return {
        "n": int(x.size),
        "bins": int(bins),
        "H_x": plugin_entropy(h, "x"),
        "H_y": plugin_entropy(h, "y"),
        "H_xy": plugin_entropy(h),
        "I": i_hat,
        "analytic_I": analytic,
        "gap": analytic - i_hat,
    }
