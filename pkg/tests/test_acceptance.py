"""Acceptance criteria, one printed PASS/FAIL line each.

Run under pytest, or directly with ``python3 tests/test_acceptance.py``.
"""
import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from shannonkit import (
    DiscreteAdditiveChannel,
    DiscretePmf,
    GaussianChannelSpec,
    JointPmf,
    SeededStream,
    SourceSpec,
    TransitionMatrix,
    block_code_rate,
    build_optimal_code,
    data_processing_check,
    dmc_capacity,
    entropy,
    gaussian_capacity,
    gaussian_mutual_information,
    mutual_information,
    naive_code_length,
    output_entropy_decomposition,
    simulate_additive_gaussian,
)
from shannonkit.discrete import (
    conditional_entropy_double_sum,
    conditional_entropy_x_given_y,
    conditional_entropy_y_given_x,
    equivalent_equiprobable_count,
    joint_entropy,
    marginalize,
    mutual_information_double_sum,
    surprisal,
)
from shannonkit.estimation import Histogram2D, plugin_mutual_information
from shannonkit.spectral import (
    SampledSignal,
    SpectrumPair,
    allocated_power,
    flat_spectrum_allocation,
    fourier_analyze,
    parseval_power,
    quadrature_weights,
    spectral_mutual_information,
    synthesize,
)

from conftest import DICE_FREQ, PRINTED_SURPRISAL, random_joint_probs
from test_coding import exhaustive_min_length

CRITERIA = {}


def criterion(number, budget_s):
    def register(fn):
        CRITERIA[number] = (fn, budget_s)
        return fn

    return register


def _dice():
    return DiscretePmf(range(2, 13), [f / 36 for f in DICE_FREQ])


@criterion(1, 1.0)
def biased_coin():
    h = entropy(DiscretePmf("HT", [0.9, 0.1]))
    return abs(h - 0.469) <= 0.0005, f"H={h:.6f} (target 0.469 +/- 0.0005)"


@criterion(2, 1.0)
def dice_source():
    dice = _dice()
    h = entropy(dice)
    count_example = equivalent_equiprobable_count(3.27)
    count_exact = equivalent_equiprobable_count(h)
    s = [surprisal(p) for p in dice.probs]
    off = [(sym, round(v, 5), t) for sym, v, t in zip(dice.symbols, s, PRINTED_SURPRISAL) if abs(v - t) > 0.005]
    ok = abs(h - 3.27) <= 0.005 and abs(count_example - 9.65) <= 0.01 and not off
    detail = f"H={h:.6f} count(3.27)={count_example:.4f} count(H)={count_exact:.4f}"
    if off:
        detail += f" surprisal rows off by >0.005: {off}"
    return ok, detail


@criterion(3, 1.0)
def fan_diagram():
    ch = DiscreteAdditiveChannel([100, 200, 300], DiscretePmf.uniform([10, 20]))
    px = DiscretePmf.uniform([100, 200, 300])
    d = output_entropy_decomposition(ch, px)
    from shannonkit import fan_out

    i = mutual_information(fan_out(ch, px))
    ok = (
        abs(d.H_x - 1.58) <= 0.005
        and abs(d.H_noise - 1.00) <= 0.005
        and abs(d.H_y - 2.58) <= 0.005
        and abs(i - 1.58) <= 0.005
        and not d.collision
        and d.H_y == d.H_x + d.H_noise
    )
    return ok, f"H_x={d.H_x:.5f} H_eta={d.H_noise:.5f} H_y={d.H_y:.5f} I={i:.5f} exact_sum={d.H_y == d.H_x + d.H_noise}"


@criterion(4, 1.0)
def source_coding():
    dice = _dice()
    naive = naive_code_length(dice)
    length = build_optimal_code(dice).average_length(dice)
    oracle = exhaustive_min_length(dice.probs.tolist())
    r1 = block_code_rate(SourceSpec(dice, 1))
    r2 = block_code_rate(SourceSpec(dice, 2))
    ok = abs(naive - 3.46) <= 0.005 and 3.27 <= length < 4.27 and abs(length - oracle) <= 1e-12 and r2 < r1
    return ok, f"naive={naive:.5f} L={length:.6f} oracle={oracle:.6f} rate1={r1:.6f} rate2={r2:.6f}"


@criterion(5, 1.0)
def capacity_solver():
    ident = dmc_capacity(TransitionMatrix.identity(4), tol=1e-9)
    bsc = dmc_capacity(TransitionMatrix.binary_symmetric(0.1), tol=1e-9)
    closed = 1 - entropy(DiscretePmf("HT", [0.9, 0.1]))
    ok = (
        round(ident.capacity, 6) == 2.0
        and np.allclose(ident.optimal_input.probs, 0.25, atol=1e-9)
        and abs(bsc.capacity - closed) <= 1e-4
    )
    return ok, f"identity={ident.capacity:.6f} BSC(0.1)={bsc.capacity:.7f} closed={closed:.7f}"


@criterion(6, 1.0)
def gaussian_channel():
    exact = all(gaussian_mutual_information(s, 1.0) == c for s, c in ((1, 0.5), (3, 1.0), (15, 2.0)))
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(100):
        s, n, w = rng.uniform(0, 1e3), rng.uniform(1e-3, 1e2), rng.uniform(1e-2, 1e6)
        band = gaussian_capacity(GaussianChannelSpec(s, n, w))
        per = gaussian_capacity(GaussianChannelSpec(s, n))
        worst = max(worst, abs(band - 2 * w * per) / max(1.0, band))
    return exact and worst <= 1e-12, f"exact_power_of_two={exact} max_rel_dev={worst:.2e}"


@criterion(7, 5.0)
def spectral_bridge():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        s, n, w = rng.uniform(0, 100), rng.uniform(0.01, 10), rng.uniform(0.1, 100)
        sp = SpectrumPair.flat(s, n, w, int(rng.integers(2, 64)))
        worst = max(worst, abs(spectral_mutual_information(sp) - w * math.log2(1 + s / n)))
    f = np.linspace(0, 5, 41)
    noise = 1 + 2 * np.sin(f) ** 2 + f / 5
    budget = 6.0
    sp = flat_spectrum_allocation(f, noise, budget)
    wts = quadrature_weights(f, 5.0)
    best = spectral_mutual_information(sp)
    beaten = 0
    for _ in range(1000):
        # random power-preserving perturbation: redistribute a fraction of the allocation
        frac = rng.uniform(0, 0.5)
        target = rng.dirichlet(np.ones(f.size)) * budget / wts
        alt = (1 - frac) * sp.signal + frac * target
        cand = SpectrumPair(f, alt, noise, 5.0)
        assert abs(allocated_power(cand) - budget) <= 1e-9
        beaten += spectral_mutual_information(cand) > best + 1e-12
    return worst <= 1e-9 and beaten == 0, f"flat max_abs_err={worst:.2e} perturbations_beating={beaten}/1000"


@criterion(8, 5.0)
def fourier():
    m, rate = 200, 100.0
    t = np.arange(m) / rate
    x = 0.5 + 1.5 * np.cos(2 * np.pi * 5 * t) - 0.7 * np.sin(2 * np.pi * 12 * t) + 0.25 * np.cos(2 * np.pi * 30 * t)
    c = fourier_analyze(SampledSignal(x, rate))
    expect_a = np.zeros(c.a.size)
    expect_b = np.zeros(c.b.size)
    expect_a[9], expect_b[23], expect_a[59] = 1.5, -0.7, 0.25
    coef_err = max(abs(c.x0 - 0.5), np.max(np.abs(c.a - expect_a)), np.max(np.abs(c.b - expect_b)))
    rng = np.random.default_rng(8)
    rt, pv = 0.0, 0.0
    for _ in range(100):
        m = int(rng.integers(8, 400))
        k = int(rng.integers(1, (m - 1) // 2 + 1))
        n = np.arange(1, k + 1)
        tt = np.arange(m) / m
        sig = rng.normal() + rng.normal(size=k) @ np.cos(2 * np.pi * np.outer(n, tt)) + rng.normal(size=k) @ np.sin(2 * np.pi * np.outer(n, tt))
        coeffs = fourier_analyze(SampledSignal(sig, float(m)))
        rt = max(rt, np.max(np.abs(synthesize(coeffs) - sig)) / np.max(np.abs(sig)))
        pv = max(pv, abs(parseval_power(coeffs) - np.mean(sig**2)) / np.mean(sig**2))
    ok = coef_err <= 1e-9 and rt <= 1e-9 and pv <= 1e-9
    return ok, f"coef_err={coef_err:.2e} roundtrip_rel={rt:.2e} parseval_rel={pv:.2e}"


@criterion(9, 30.0)
def simulation_loop():
    spec = GaussianChannelSpec(1.0, 1.0)
    x, y = simulate_additive_gaussian(spec, 1_000_000, SeededStream(2024))
    i_hat = plugin_mutual_information(Histogram2D.from_samples(x, y, bins=64))
    x2, y2 = simulate_additive_gaussian(spec, 1_000_000, SeededStream(2024))
    x4, y4 = simulate_additive_gaussian(spec, 1_000_000, SeededStream(2024), workers=4)
    same = np.array_equal(x, x2) and np.array_equal(y, y2) and np.array_equal(x, x4) and np.array_equal(y, y4)
    ok = abs(i_hat - 0.5) <= 0.05 and i_hat <= 0.5 + 0.01 and same
    return ok, f"I_hat={i_hat:.5f} analytic=0.5 bit_identical(rerun, 4 workers)={same}"


@criterion(10, 60.0)
def property_suites():
    rng = np.random.default_rng(10)
    fails = {k: 0 for k in ("chain", "identity_web", "nonneg", "min_bound", "data_processing", "kraft", "prefix_free")}
    tol = 1e-10
    for _ in range(1000):
        p = random_joint_probs(rng)
        j = JointPmf(range(p.shape[0]), range(p.shape[1]), p)
        hx, hy, hxy = entropy(marginalize(j, "x")), entropy(marginalize(j, "y")), joint_entropy(j)
        hyx, hxgy = conditional_entropy_y_given_x(j), conditional_entropy_x_given_y(j)
        i = mutual_information(j)
        fails["chain"] += abs(hxy - (hx + hyx)) > tol or abs(hxy - (hy + hxgy)) > tol
        web = (
            abs(i - (hx - hxgy)) <= tol
            and abs(i - (hy - hyx)) <= tol
            and abs(i - (hx + hy - hxy)) <= tol
            and abs(i - mutual_information_double_sum(j)) <= tol
            and abs(hyx - conditional_entropy_double_sum(j, "x")) <= tol
            and abs(i - mutual_information(j.transpose())) <= tol
        )
        fails["identity_web"] += not web
        fails["nonneg"] += min(hx, hy, hxy, hyx, hxgy, i) < 0
        fails["min_bound"] += i > min(hx, hy) + tol
        fails["data_processing"] += not data_processing_check(j, hx)
        m = int(rng.integers(1, 30))
        code = build_optimal_code(DiscretePmf(range(m), rng.dirichlet(np.ones(m))))
        fails["kraft"] += code.kraft_sum > 1.0 + 1e-12
        fails["prefix_free"] += not code.is_prefix_free()
    return sum(fails.values()) == 0, "1000 instances each; failures " + " ".join(f"{k}={v}" for k, v in fails.items())


def evaluate(number):
    fn, budget = CRITERIA[number]
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    ok = bool(ok) and elapsed <= budget
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}  [{elapsed:.2f}s / {budget:g}s]"
    return ok, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, line = evaluate(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
