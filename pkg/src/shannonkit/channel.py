"""Additive channels, discrete memoryless channels and capacity."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .discrete import (
    NORM_TOL,
    DiscretePmf,
    JointPmf,
    entropy,
    log2,
    marginalize,
    mutual_information,
)
from .errors import ConvergenceError, DomainError, ValidationError

#: absolute tolerance for merging real-valued output levels
COLLISION_TOL = 1e-12


# --------------------------------------------------------------------------
# additive channel y = x + noise


@dataclass(frozen=True)
class DiscreteAdditiveChannel:
    """Channel whose output is the input level plus independent discrete noise."""

    input_values: tuple
    noise: DiscretePmf

    def __init__(self, input_values: Sequence[float], noise: DiscretePmf):
        values = tuple(input_values)
        if not values:
            raise ValidationError("channel needs at least one input value")
        if len(set(values)) != len(values):
            raise ValidationError("channel input values must be unique")
        object.__setattr__(self, "input_values", values)
        object.__setattr__(self, "noise", noise)


def _is_integral(v) -> bool:
    return isinstance(v, (int, np.integer, Fraction)) or (
        isinstance(v, float) and v.is_integer()
    )


def _merge_outputs(sums: list) -> tuple[list, list[int]]:
    """Distinct output levels (sorted) and the output index of every sum.

    Integer/rational levels are compared exactly; otherwise levels closer
    than ``COLLISION_TOL`` are merged.
    """
    if all(_is_integral(s) for s in sums):
        exact = [Fraction(s) for s in sums]
        levels = sorted(set(exact))
        pos = {lv: k for k, lv in enumerate(levels)}
        out_levels = [int(lv) if lv.denominator == 1 else lv for lv in levels]
        return out_levels, [pos[s] for s in exact]
    order = sorted(range(len(sums)), key=lambda k: float(sums[k]))
    levels: list[float] = []
    index = [0] * len(sums)
    for k in order:
        v = float(sums[k])
        if levels and abs(v - levels[-1]) <= COLLISION_TOL:
            index[k] = len(levels) - 1
        else:
            levels.append(v)
            index[k] = len(levels) - 1
    return levels, index


def _check_input_pmf(ch: DiscreteAdditiveChannel, input_pmf: DiscretePmf) -> np.ndarray:
    if set(input_pmf.symbols) != set(ch.input_values) or len(input_pmf) != len(ch.input_values):
        raise ValidationError(
            f"input pmf symbols {input_pmf.symbols!r} do not match channel inputs {ch.input_values!r}"
        )
    return np.array([input_pmf.prob(v) for v in ch.input_values])


def fan_out(ch: DiscreteAdditiveChannel, input_pmf: DiscretePmf) -> JointPmf:
    """Joint pmf of (x, y = x + noise) with noise independent of x."""
    px = _check_input_pmf(ch, input_pmf)
    sums = [x + eta for x in ch.input_values for eta in ch.noise.symbols]
    levels, index = _merge_outputs(sums)
    grid = np.zeros((len(ch.input_values), len(levels)))
    m = len(ch.noise)
    for i in range(len(ch.input_values)):
        for k in range(m):
            grid[i, index[i * m + k]] += px[i] * ch.noise.probs[k]
    return JointPmf(ch.input_values, levels, grid)


class EntropyDecomposition(NamedTuple):
    H_x: float
    H_noise: float
    H_y: float
    collision: bool


def output_entropy_decomposition(ch: DiscreteAdditiveChannel, input_pmf: DiscretePmf) -> EntropyDecomposition:
    """Input, noise and output entropies plus whether any two (x, noise) sums coincide.

    Without collisions the output entropy is exactly ``H_x + H_noise``.
    """
    j = fan_out(ch, input_pmf)
    h_x = entropy(input_pmf)
    h_noise = entropy(ch.noise)
    collision = len(j.y_symbols) < len(ch.input_values) * len(ch.noise)
    h_y = h_x + h_noise if not collision else entropy(marginalize(j, "y"))
    return EntropyDecomposition(h_x, h_noise, h_y, collision)


def mutual_information_of_channel(ch: DiscreteAdditiveChannel, input_pmf: DiscretePmf) -> float:
    """I(x, y) of an additive channel driven by ``input_pmf``."""
    return mutual_information(fan_out(ch, input_pmf))


# --------------------------------------------------------------------------
# discrete memoryless channels


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """Row-stochastic matrix ``rows[i, j] = p(y_j | x_i)``."""

    inputs: tuple
    outputs: tuple
    rows: np.ndarray

    def __init__(self, rows, inputs: Optional[Sequence] = None, outputs: Optional[Sequence] = None):
        arr = np.array(rows, dtype=float)
        if arr.ndim != 2 or arr.size == 0:
            raise ValidationError("transition matrix must be a non-empty 2-D grid")
        if not np.all(np.isfinite(arr)) or np.any(arr < 0):
            raise ValidationError("transition matrix entries must be finite and >= 0")
        sums = arr.sum(axis=1)
        bad = np.flatnonzero(np.abs(sums - 1.0) > NORM_TOL)
        if bad.size:
            raise ValidationError(f"row {int(bad[0])} sums to {float(sums[bad[0]])!r}, not 1")
        arr = arr / sums[:, None]
        arr.setflags(write=False)
        inputs = tuple(range(arr.shape[0])) if inputs is None else tuple(inputs)
        outputs = tuple(range(arr.shape[1])) if outputs is None else tuple(outputs)
        if len(inputs) != arr.shape[0] or len(outputs) != arr.shape[1]:
            raise ValidationError(
                f"matrix shape {arr.shape} does not match {len(inputs)} inputs x {len(outputs)} outputs"
            )
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "outputs", outputs)
        object.__setattr__(self, "rows", arr)

    @classmethod
    def binary_symmetric(cls, flip: float) -> "TransitionMatrix":
        if not 0.0 <= flip <= 1.0:
            raise DomainError(f"flip probability must be in [0, 1], got {flip!r}")
        return cls([[1.0 - flip, flip], [flip, 1.0 - flip]])

    @classmethod
    def identity(cls, m: int) -> "TransitionMatrix":
        return cls(np.eye(m))

    def joint(self, input_pmf: DiscretePmf) -> JointPmf:
        return JointPmf.from_channel(input_pmf, self.rows, self.outputs)


class CapacityResult(NamedTuple):
    capacity: float
    optimal_input: DiscretePmf
    gap: float
    iterations: int


def _row_divergences(rows: np.ndarray, q: np.ndarray) -> np.ndarray:
    """D(rows[i] || q) in bits for every row, with 0 log 0 = 0."""
    out = np.zeros(rows.shape[0])
    for i, r in enumerate(rows):
        nz = r > 0
        out[i] = float((r[nz] * log2(r[nz] / q[nz])).sum())
    return out


def dmc_capacity(t: TransitionMatrix, tol: float = 1e-9, max_iters: int = 10_000) -> CapacityResult:
    """Capacity of a discrete memoryless channel by alternating maximisation.

    Starts from the uniform input and applies the Blahut-Arimoto update
    ``p <- p * 2**D(row || q) / Z``.  Stops once the gap between the upper
    bound ``max_i D(row_i || q)`` and the achieved ``I(x, y)`` is at most
    ``tol``.

    Raises :class:`ConvergenceError` (carrying the last gap) if ``max_iters``
    updates are not enough.
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    rows = t.rows
    m = rows.shape[0]
    p = np.full(m, 1.0 / m)
    gap = math.inf
    for it in range(int(max_iters) + 1):
        q = p @ rows
        d = _row_divergences(rows, q)
        lower = float(p @ d)
        upper = float(d.max())
        gap = upper - lower
        if gap <= tol:
            return CapacityResult(max(lower, 0.0), DiscretePmf(t.inputs, p), gap, it)
        if it == max_iters:
            break
        w = p * np.exp2(d - upper)
        p = w / w.sum()
    raise ConvergenceError(
        f"capacity solver did not converge in {max_iters} iterations (gap {gap:.3g})",
        gap=gap,
        iterations=int(max_iters),
    )


def bsc_capacity(flip: float) -> float:
    """Closed form 1 - H(flip) of the binary symmetric channel."""
    return 1.0 - entropy(DiscretePmf((0, 1), (flip, 1.0 - flip)))


# --------------------------------------------------------------------------
# Gaussian channel


@dataclass(frozen=True)
class GaussianChannelSpec:
    """Additive Gaussian channel; powers in J/s, optional bandwidth in Hz."""

    signal_power: float
    noise_power: float
    bandwidth: Optional[float] = None

    def __post_init__(self):
        if not (self.signal_power >= 0 and math.isfinite(self.signal_power)):
            raise ValidationError(f"signal power must be >= 0, got {self.signal_power!r}")
        if not (self.noise_power > 0 and math.isfinite(self.noise_power)):
            raise ValidationError(f"noise power must be > 0, got {self.noise_power!r}")
        if self.bandwidth is not None and not (self.bandwidth > 0 and math.isfinite(self.bandwidth)):
            raise ValidationError(f"bandwidth must be > 0, got {self.bandwidth!r}")

    @property
    def snr(self) -> float:
        return self.signal_power / self.noise_power


def gaussian_mutual_information(v_x: float, v_noise: float) -> float:
    """I(x, y) = 1/2 log2(1 + v_x / v_noise) for Gaussian input and noise."""
    if not v_noise > 0:
        raise DomainError(f"noise variance must be > 0, got {v_noise!r}")
    if not v_x >= 0:
        raise DomainError(f"signal variance must be >= 0, got {v_x!r}")
    return 0.5 * float(log2(1.0 + v_x / v_noise))


def gaussian_capacity(spec: GaussianChannelSpec) -> float:
    """Bits per usage, or bits/s (``W log2(1 + S/N)``) when a bandwidth is set."""
    per_usage = gaussian_mutual_information(spec.signal_power, spec.noise_power)
    if spec.bandwidth is None:
        return per_usage
    # Nyquist rate: 2W usages per second
    return 2.0 * spec.bandwidth * per_usage


def capacity_curve(signal_powers, noise_power: float = 1.0) -> list[tuple[float, float]]:
    """(S, C) pairs of the per-usage Gaussian capacity against signal power."""
    return [
        (float(s), gaussian_capacity(GaussianChannelSpec(float(s), noise_power)))
        for s in signal_powers
    ]


def erf(x: float) -> float:
    return math.erf(x)


def detection_probability(signal_power: float, noise_power: float) -> float:
    """``1/2 log2(1 + erf(sqrt(S / 8N)))``, evaluated as written.

    The value is bounded above by 0.5 although it is labelled a
    probability; no extra normalisation is applied.
    """
    if not noise_power > 0:
        raise DomainError(f"noise power must be > 0, got {noise_power!r}")
    if not signal_power >= 0:
        raise DomainError(f"signal power must be >= 0, got {signal_power!r}")
    if math.isinf(signal_power):
        return 0.5
    return 0.5 * float(log2(1.0 + erf(math.sqrt(signal_power / (8.0 * noise_power)))))


def data_processing_check(j_xy: JointPmf, h_x: float) -> bool:
    """True iff I(x, y) does not exceed the input entropy ``h_x``."""
    return mutual_information(j_xy) <= h_x + 1e-10
