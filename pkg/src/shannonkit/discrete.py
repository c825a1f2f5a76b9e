"""Discrete distributions and the entropy / information functionals over them.

All logarithms are base 2 and go through :func:`log2`.  The convention
``0 * log2(1/0) = 0`` is applied everywhere a probability can be zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Hashable, Sequence

import numpy as np

from .errors import DomainError, ValidationError

#: absolute tolerance on normalisation of pmfs and joint pmfs
NORM_TOL = 1e-9
#: results this close below zero are clamped to zero
CLAMP_TOL = 1e-12


def log2(x):
    """Base-2 logarithm; the only logarithm used for information quantities.

    Scalars go through ``math.log2``; arrays through ``numpy.log2``.
    """
    if isinstance(x, (int, float)):
        return math.log2(x)
    return np.log2(x)


def _plogp(p: np.ndarray) -> np.ndarray:
    """Elementwise p * log2(1/p), with 0 where p == 0.

    Evaluated per element with ``math.log2``: vectorised log2 may round
    differently depending on an element's position, which would break
    exact permutation and transpose invariance.
    """
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    nz = p > 0
    out[nz] = [-v * math.log2(v) for v in p[nz].tolist()]
    return out


def _clamp(value: float) -> float:
    if -CLAMP_TOL < value < 0.0:
        return 0.0
    return float(value)


def _validated_probs(values, what: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.size == 0:
        raise ValidationError(f"{what}: at least one probability is required")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{what}: probabilities must be finite")
    if np.any(arr < 0):
        bad = float(arr[arr < 0].min())
        raise ValidationError(f"{what}: negative probability {bad!r}")
    total = math.fsum(arr.ravel().tolist())
    if abs(total - 1.0) > NORM_TOL:
        raise ValidationError(f"{what}: probabilities sum to {total!r}, not 1")
    arr = arr / total
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DiscretePmf:
    """Normalised probability mass function over labelled symbols.

    Inputs within ``NORM_TOL`` of unit mass are renormalised exactly, so
    derived identities hold to machine precision.
    """

    symbols: tuple
    probs: np.ndarray

    def __init__(self, symbols: Sequence[Hashable], probs: Sequence[float]):
        symbols = tuple(symbols)
        arr = _validated_probs(probs, "pmf")
        if arr.ndim != 1:
            raise ValidationError("pmf: probs must be one-dimensional")
        if len(symbols) != arr.size:
            raise ValidationError(
                f"pmf: {len(symbols)} symbols but {arr.size} probabilities"
            )
        if len(set(symbols)) != len(symbols):
            raise ValidationError("pmf: symbols must be unique")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "probs", arr)

    @classmethod
    def uniform(cls, symbols: Sequence[Hashable]) -> "DiscretePmf":
        symbols = tuple(symbols)
        return cls(symbols, np.full(len(symbols), 1.0 / len(symbols)))

    @classmethod
    def from_weights(cls, symbols, weights) -> "DiscretePmf":
        """Build a pmf from nonnegative weights (e.g. frequencies)."""
        w = np.asarray(weights, dtype=float)
        if w.size == 0 or np.any(w < 0) or w.sum() <= 0:
            raise ValidationError("weights must be nonnegative with positive sum")
        return cls(symbols, w / w.sum())

    def __len__(self) -> int:
        return len(self.symbols)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, DiscretePmf):
            return NotImplemented
        return self.symbols == other.symbols and np.array_equal(self.probs, other.probs)

    def __hash__(self) -> int:
        return hash((self.symbols, self.probs.tobytes()))

    def __repr__(self) -> str:
        pairs = ", ".join(f"{s!r}: {p:.6g}" for s, p in zip(self.symbols, self.probs))
        return f"DiscretePmf({{{pairs}}})"

    def prob(self, symbol: Hashable) -> float:
        try:
            return float(self.probs[self.symbols.index(symbol)])
        except ValueError:
            raise KeyError(symbol) from None

    def as_dict(self) -> dict:
        return dict(zip(self.symbols, self.probs.tolist()))

    def contributions(self) -> np.ndarray:
        """Per-symbol terms p * log2(1/p); their sum is the entropy."""
        return _plogp(self.probs)

    def surprisals(self) -> np.ndarray:
        """Per-symbol surprisal log2(1/p); ``inf`` for zero-probability symbols."""
        with np.errstate(divide="ignore"):
            return -log2(self.probs)


@dataclass(frozen=True, eq=False)
class JointPmf:
    """Joint pmf with ``probs[i, j] = p(x_i, y_j)``."""

    x_symbols: tuple
    y_symbols: tuple
    probs: np.ndarray

    def __init__(self, x_symbols, y_symbols, probs):
        x_symbols = tuple(x_symbols)
        y_symbols = tuple(y_symbols)
        arr = _validated_probs(probs, "joint pmf")
        if arr.ndim != 2:
            raise ValidationError("joint pmf: probs must be a 2-D grid")
        if arr.shape != (len(x_symbols), len(y_symbols)):
            raise ValidationError(
                f"joint pmf: grid shape {arr.shape} does not match "
                f"{len(x_symbols)} x-symbols by {len(y_symbols)} y-symbols"
            )
        if len(set(x_symbols)) != len(x_symbols) or len(set(y_symbols)) != len(y_symbols):
            raise ValidationError("joint pmf: symbols must be unique along each axis")
        object.__setattr__(self, "x_symbols", x_symbols)
        object.__setattr__(self, "y_symbols", y_symbols)
        object.__setattr__(self, "probs", arr)

    @classmethod
    def product(cls, px: DiscretePmf, py: DiscretePmf) -> "JointPmf":
        """Joint pmf of independent variables."""
        return cls(px.symbols, py.symbols, np.outer(px.probs, py.probs))

    @classmethod
    def from_channel(cls, px: DiscretePmf, rows, y_symbols) -> "JointPmf":
        """Joint pmf from an input pmf and a row-stochastic matrix p(y|x)."""
        rows = np.asarray(rows, dtype=float)
        return cls(px.symbols, y_symbols, px.probs[:, None] * rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.probs.shape

    def transpose(self) -> "JointPmf":
        """Swap the roles of x and y; the grid is copied, not renormalised."""
        t = object.__new__(JointPmf)
        grid = np.ascontiguousarray(self.probs.T)
        grid.setflags(write=False)
        object.__setattr__(t, "x_symbols", self.y_symbols)
        object.__setattr__(t, "y_symbols", self.x_symbols)
        object.__setattr__(t, "probs", grid)
        return t

    def __repr__(self) -> str:
        return f"JointPmf(x={self.x_symbols!r}, y={self.y_symbols!r}, probs={self.probs.tolist()!r})"


# --------------------------------------------------------------------------
# scalar functionals


def surprisal(p: float) -> float:
    """Shannon information log2(1/p) of an outcome with probability ``p``."""
    p = float(p)
    if not (0.0 < p <= 1.0):
        raise DomainError(f"surprisal needs 0 < p <= 1, got p={p!r}")
    return float(-log2(p))


def _sum_exact(terms: np.ndarray) -> float:
    return math.fsum(np.ravel(terms).tolist())


def entropy(pmf: DiscretePmf) -> float:
    """Entropy in bits of a discrete pmf."""
    return _clamp(_sum_exact(_plogp(pmf.probs)))


def equivalent_equiprobable_count(h: float) -> float:
    """Number of equiprobable values, ``2**h``, carrying ``h`` bits."""
    h = float(h)
    if h < 0:
        raise DomainError(f"entropy must be nonnegative, got {h!r}")
    return float(2.0**h)


def joint_entropy(j: JointPmf) -> float:
    return _clamp(_sum_exact(_plogp(j.probs)))


def _row_sums(grid: np.ndarray) -> np.ndarray:
    # fsum keeps marginals independent of memory layout (transpose symmetry)
    return np.array([math.fsum(row) for row in grid.tolist()])


def marginalize(j: JointPmf, axis) -> DiscretePmf:
    """Marginal pmf of ``x`` (``axis='x'`` or 0) or ``y`` (``axis='y'`` or 1)."""
    if axis in ("x", 0):
        return DiscretePmf(j.x_symbols, _row_sums(j.probs))
    if axis in ("y", 1):
        return DiscretePmf(j.y_symbols, _row_sums(j.probs.T))
    raise ValidationError(f"axis must be 'x', 'y', 0 or 1, got {axis!r}")


def conditional_entropy_y_given_x(j: JointPmf) -> float:
    """H(y|x) = H(x,y) - H(x)."""
    return _clamp(joint_entropy(j) - entropy(marginalize(j, "x")))


def conditional_entropy_x_given_y(j: JointPmf) -> float:
    """H(x|y) = H(x,y) - H(y)."""
    return _clamp(joint_entropy(j) - entropy(marginalize(j, "y")))


def conditional_entropy_double_sum(j: JointPmf, given: str = "x") -> float:
    """Conditional entropy by the direct double sum of p(x,y) log2 1/p(.|.)."""
    p = j.probs
    if given == "x":
        cond_denominator = p.sum(axis=1, keepdims=True)
    elif given == "y":
        cond_denominator = p.sum(axis=0, keepdims=True)
    else:
        raise ValidationError(f"given must be 'x' or 'y', got {given!r}")
    nz = p > 0
    denom = np.broadcast_to(cond_denominator, p.shape)
    return _clamp(float(-(p[nz] * log2(p[nz] / denom[nz])).sum()))


def mutual_information_double_sum(j: JointPmf) -> float:
    """I(x,y) as the double sum of p(x,y) log2 p(x,y) / (p(x) p(y))."""
    p = j.probs
    px = p.sum(axis=1, keepdims=True)
    py = p.sum(axis=0, keepdims=True)
    nz = p > 0
    outer = (px * py)[nz]
    return _clamp(float((p[nz] * log2(p[nz] / outer)).sum()))


def mutual_information(j: JointPmf) -> float:
    """Mutual information I(x,y) in bits.

    Computed as H(x) + H(y) - H(x,y).  Entropies are summed with
    ``math.fsum``, which is order independent, so
    ``mutual_information(j) == mutual_information(j.transpose())`` exactly.
    """
    hx = entropy(marginalize(j, "x"))
    hy = entropy(marginalize(j, "y"))
    hxy = joint_entropy(j)
    return _clamp((hx + hy) - hxy)


def coin_entropy_curve(n_points: int) -> list[tuple[float, float]]:
    """Entropy of a coin against its bias, on ``n_points`` evenly spaced biases in [0, 1]."""
    if int(n_points) != n_points or n_points < 2:
        raise DomainError(f"n_points must be an integer >= 2, got {n_points!r}")
    biases = np.linspace(0.0, 1.0, int(n_points))
    return [(float(b), entropy(DiscretePmf(("head", "tail"), (b, 1.0 - b)))) for b in biases]


def information_summary(j: JointPmf) -> dict[str, float]:
    """Every quantity in the entropy/MI identity web for one joint pmf."""
    hx = entropy(marginalize(j, "x"))
    hy = entropy(marginalize(j, "y"))
    return {
        "H_x": hx,
        "H_y": hy,
        "H_xy": joint_entropy(j),
        "H_x_given_y": conditional_entropy_x_given_y(j),
        "H_y_given_x": conditional_entropy_y_given_x(j),
        "I": mutual_information(j),
    }


def dice_sum_pmf() -> DiscretePmf:
    """Pmf of the sum of two fair six-sided dice, probabilities freq/36."""
    freqs = [6 - abs(s - 7) for s in range(2, 13)]
    return DiscretePmf(tuple(range(2, 13)), np.array(freqs, dtype=float) / 36.0)
