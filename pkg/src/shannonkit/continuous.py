"""Maximum-entropy continuous distributions and differential entropy."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
from scipy import integrate

from .discrete import log2
from .errors import ConvergenceError, DomainError, ValidationError

#: truncation of infinite supports for quadrature
GAUSSIAN_SIGMAS = 10.0
EXPONENTIAL_MEANS = 50.0
MASS_TOL = 1e-6


@dataclass(frozen=True)
class Gaussian:
    variance: float
    mean: float = 0.0

    def __post_init__(self):
        if not (self.variance > 0 and math.isfinite(self.variance)):
            raise ValidationError(f"Gaussian variance must be > 0, got {self.variance!r}")

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)

    def support(self) -> tuple[float, float]:
        half = GAUSSIAN_SIGMAS * self.std
        return (self.mean - half, self.mean + half)


@dataclass(frozen=True)
class Exponential:
    mean: float

    def __post_init__(self):
        if not (self.mean > 0 and math.isfinite(self.mean)):
            raise ValidationError(f"Exponential mean must be > 0, got {self.mean!r}")

    def support(self) -> tuple[float, float]:
        return (0.0, EXPONENTIAL_MEANS * self.mean)


@dataclass(frozen=True)
class Uniform:
    lower: float
    upper: float

    def __post_init__(self):
        if not (self.upper > self.lower):
            raise ValidationError(
                f"Uniform needs upper > lower, got [{self.lower!r}, {self.upper!r}]"
            )

    def support(self) -> tuple[float, float]:
        return (self.lower, self.upper)


MaxEntDistribution = Union[Gaussian, Exponential, Uniform]


def density(d: MaxEntDistribution, x):
    """Probability density of ``d`` at ``x`` (scalar or array); 0 outside the support."""
    x = np.asarray(x, dtype=float)
    if isinstance(d, Gaussian):
        out = np.exp(-((d.mean - x) ** 2) / (2.0 * d.variance)) / math.sqrt(2.0 * math.pi * d.variance)
    elif isinstance(d, Exponential):
        out = np.where(x >= 0, np.exp(-np.maximum(x, 0.0) / d.mean) / d.mean, 0.0)
    elif isinstance(d, Uniform):
        out = np.where((x >= d.lower) & (x <= d.upper), 1.0 / (d.upper - d.lower), 0.0)
    else:
        raise TypeError(f"not a max-entropy distribution: {d!r}")
    return float(out) if out.ndim == 0 else out


def variance(d: MaxEntDistribution) -> float:
    if isinstance(d, Gaussian):
        return float(d.variance)
    if isinstance(d, Exponential):
        return float(d.mean) ** 2
    if isinstance(d, Uniform):
        return (d.upper - d.lower) ** 2 / 12.0
    raise TypeError(f"not a max-entropy distribution: {d!r}")


def differential_entropy(d: MaxEntDistribution) -> float:
    """Closed-form differential entropy in bits; may be negative."""
    if isinstance(d, Gaussian):
        return 0.5 * float(log2(2.0 * math.pi * math.e * d.variance))
    if isinstance(d, Exponential):
        return float(log2(d.mean * math.e))
    if isinstance(d, Uniform):
        return float(log2(d.upper - d.lower))
    raise TypeError(f"not a max-entropy distribution: {d!r}")


def _integrand(pdf: Callable[[float], float]) -> Callable[[float], float]:
    def f(x: float) -> float:
        p = float(pdf(x))
        if p <= 0.0:
            return 0.0
        return -p * float(log2(p))

    return f


def numeric_differential_entropy(
    pdf: Callable[[float], float],
    support: tuple[float, float],
    tol: float = 1e-8,
    points=None,
) -> float:
    """Differential entropy of ``pdf`` on ``support`` by adaptive quadrature.

    The density must carry unit mass on ``support`` to within ``1e-6``.
    ``tol`` is the absolute error target in bits; ``points`` lists interior
    breakpoints (kinks, discontinuities) for the integrator.
    """
    lo, hi = map(float, support)
    if not hi > lo:
        raise ValidationError(f"support must be an interval with hi > lo, got {support!r}")
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    kw = dict(limit=500)
    if points is not None:
        kw["points"] = [p for p in points if lo < p < hi]
    mass, _ = integrate.quad(lambda x: float(pdf(x)), lo, hi, epsabs=min(tol, 1e-10), epsrel=0.0, **kw)
    if abs(mass - 1.0) > MASS_TOL:
        raise ValidationError(f"density is not normalised on {support!r}: measured mass {mass!r}")
    value, err = integrate.quad(_integrand(pdf), lo, hi, epsabs=tol, epsrel=0.0, **kw)
    if err > tol:
        raise ConvergenceError(
            f"quadrature error estimate {err:.3g} exceeds tol {tol:.3g}", gap=err
        )
    return float(value)


def numeric_entropy_of(d: MaxEntDistribution, tol: float = 1e-8) -> float:
    """Numeric differential entropy of a max-entropy distribution on its truncated support."""
    return numeric_differential_entropy(lambda x: density(d, x), d.support(), tol)


@dataclass(frozen=True)
class FixedVariance:
    variance: float


@dataclass(frozen=True)
class FixedMean:
    """Fixed mean on the nonnegative half-line."""

    mean: float


@dataclass(frozen=True)
class FixedRange:
    lower: float
    upper: float


def maxent_for_constraints(constraints) -> MaxEntDistribution:
    """Maximum-entropy distribution for one of the three supported constraint kinds.

    ``constraints`` is a :class:`FixedVariance`, :class:`FixedMean` or
    :class:`FixedRange`; also accepted is a mapping with exactly one of the
    keys ``variance``, ``mean`` or ``range``.
    """
    if isinstance(constraints, dict):
        keys = set(constraints)
        if keys == {"variance"}:
            constraints = FixedVariance(constraints["variance"])
        elif keys == {"mean"}:
            constraints = FixedMean(constraints["mean"])
        elif keys == {"range"}:
            constraints = FixedRange(*constraints["range"])
        else:
            raise ValidationError(
                f"constraint set {sorted(keys)} is not covered: use exactly one of "
                "fixed variance, fixed mean on x >= 0, or fixed range"
            )
    if isinstance(constraints, FixedVariance):
        return Gaussian(constraints.variance)
    if isinstance(constraints, FixedMean):
        return Exponential(constraints.mean)
    if isinstance(constraints, FixedRange):
        return Uniform(constraints.lower, constraints.upper)
    raise ValidationError(f"constraint {constraints!r} is not covered by the maximum-entropy cases")
