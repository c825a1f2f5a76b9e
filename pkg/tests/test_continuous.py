import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from shannonkit import (
    Exponential,
    Gaussian,
    Uniform,
    ValidationError,
    density,
    differential_entropy,
    maxent_for_constraints,
    numeric_differential_entropy,
    variance,
)
from shannonkit.continuous import FixedMean, FixedRange, FixedVariance, numeric_entropy_of


def test_construction_invariants():
    for bad in (lambda: Gaussian(0.0), lambda: Gaussian(-1.0), lambda: Exponential(0.0), lambda: Uniform(2, 2)):
        with pytest.raises(ValidationError):
            bad()


@pytest.mark.parametrize(
    "d, x, expected",
    [
        (Gaussian(1.0), 0.0, 1 / math.sqrt(2 * math.pi)),
        (Exponential(2.0), 0.0, 0.5),
        (Uniform(0, 2), 1.0, 0.5),
        (Exponential(2.0), -1.0, 0.0),
        (Uniform(0, 2), 2.5, 0.0),
    ],
)
def test_density_examples(d, x, expected):
    assert density(d, x) == pytest.approx(expected, abs=1e-12)


def test_density_vectorised_matches_scipy():
    x = np.linspace(-3, 6, 50)
    assert np.allclose(density(Gaussian(2.0, 0.5), x), stats.norm(0.5, math.sqrt(2.0)).pdf(x))
    assert np.allclose(density(Exponential(1.5), x), stats.expon(scale=1.5).pdf(x))


@pytest.mark.parametrize("d", [Gaussian(1.0), Gaussian(0.3, 2.0), Exponential(1.0), Exponential(7.0), Uniform(-1, 3)])
def test_density_integrates_to_one(d):
    from scipy import integrate

    lo, hi = d.support()
    mass, _ = integrate.quad(lambda x: density(d, x), lo, hi, epsabs=1e-12, limit=200)
    assert mass == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize(
    "d, expected",
    [(Exponential(3.0), 9.0), (Uniform(0, 2), 1 / 3), (Gaussian(2.5), 2.5)],
)
def test_variance(d, expected):
    assert variance(d) == pytest.approx(expected, rel=1e-15)


def test_closed_form_entropies():
    assert differential_entropy(Gaussian(1.0)) == pytest.approx(2.047, abs=0.0005)
    assert differential_entropy(Gaussian(1.0)) == pytest.approx(0.5 * math.log2(2 * math.pi * math.e), abs=1e-15)
    assert differential_entropy(Uniform(0, 2)) == 1.0
    assert differential_entropy(Uniform(0, 1)) == 0.0
    assert differential_entropy(Uniform(0, 0.5)) == -1.0


def test_numeric_examples():
    g = Gaussian(1.0)
    assert numeric_differential_entropy(lambda x: density(g, x), (-10, 10), 1e-7) == pytest.approx(
        differential_entropy(g), abs=1e-7
    )
    u = Uniform(0, 2)
    assert numeric_differential_entropy(lambda x: density(u, x), (0, 2), 1e-9) == pytest.approx(1.0, abs=1e-9)
    e = Exponential(1.0)
    assert numeric_differential_entropy(lambda x: density(e, x), (0, 50), 1e-7) == pytest.approx(
        math.log2(math.e), abs=1e-7
    )


def test_numeric_rejects_unnormalised():
    with pytest.raises(ValidationError, match="mass"):
        numeric_differential_entropy(lambda x: 0.4, (0, 2), 1e-8)


@given(
    st.sampled_from(["gauss", "exp", "unif"]),
    st.floats(0.05, 50.0),
    st.floats(-5.0, 5.0),
)
@settings(max_examples=150, deadline=None)
def test_numeric_matches_closed_form(kind, scale, shift):
    d = {"gauss": Gaussian(scale, shift), "exp": Exponential(scale), "unif": Uniform(shift, shift + scale)}[kind]
    assert numeric_entropy_of(d, 1e-9) == pytest.approx(differential_entropy(d), abs=1e-6)


# competitors sharing the constraint of each max-entropy family


def _mixture_pdf(m, s2):
    def pdf(x):
        return 0.5 * (stats.norm.pdf(x, -m, math.sqrt(s2)) + stats.norm.pdf(x, m, math.sqrt(s2)))

    return pdf


@pytest.mark.parametrize("m", [0.2, 0.5, 0.8, 0.95])
def test_gaussian_beats_same_variance_mixtures(m):
    v = 1.0
    pdf = _mixture_pdf(m, v - m * m)
    h = numeric_differential_entropy(pdf, (-12, 12), 1e-9)
    assert h <= differential_entropy(Gaussian(v)) + 1e-6


@pytest.mark.parametrize(
    "pdf, support",
    [
        (stats.laplace(scale=math.sqrt(0.5)).pdf, (-30, 30)),
        (stats.uniform(-math.sqrt(3), 2 * math.sqrt(3)).pdf, (-math.sqrt(3), math.sqrt(3))),
        (stats.logistic(scale=math.sqrt(3) / math.pi).pdf, (-30, 30)),
    ],
)
def test_gaussian_beats_other_unit_variance_densities(pdf, support):
    pts = [0.0] if support[0] < 0 < support[1] else None
    h = numeric_differential_entropy(pdf, support, 1e-9, points=pts)
    assert h <= differential_entropy(Gaussian(1.0)) + 1e-6


@pytest.mark.parametrize(
    "pdf",
    [
        stats.gamma(2.0, scale=1.0).pdf,  # mean 2
        stats.uniform(0, 4).pdf,
        stats.halfnorm(scale=2.0 * math.sqrt(math.pi / 2)).pdf,
        stats.gamma(0.7, scale=2 / 0.7).pdf,
    ],
)
def test_exponential_beats_same_mean_densities(pdf):
    h = numeric_differential_entropy(lambda x: float(pdf(x)) if x > 0 else 0.0, (0, 100), 1e-8, points=[4.0])
    assert h <= differential_entropy(Exponential(2.0)) + 1e-6


@pytest.mark.parametrize("a, b", [(2.0, 2.0), (1.5, 3.0), (1.0, 1.0001), (5.0, 1.2)])
def test_uniform_beats_same_range_densities(a, b):
    pdf = stats.beta(a, b, loc=0.0, scale=2.0).pdf
    h = numeric_differential_entropy(pdf, (0, 2), 1e-8)
    assert h <= differential_entropy(Uniform(0, 2)) + 1e-6


def test_maxent_for_constraints():
    assert maxent_for_constraints(FixedVariance(1.0)) == Gaussian(1.0)
    assert maxent_for_constraints({"mean": 2.0}) == Exponential(2.0)
    assert maxent_for_constraints(FixedRange(0, 2)) == Uniform(0, 2)
    assert maxent_for_constraints({"range": (0, 2)}) == Uniform(0, 2)
    with pytest.raises(ValidationError, match="not covered"):
        maxent_for_constraints({"mean": 1.0, "variance": 2.0})
    with pytest.raises(ValidationError):
        maxent_for_constraints("bounded kurtosis")
    assert maxent_for_constraints(FixedMean(3.0)).mean == 3.0
