import numpy as np
import pytest

from shannonkit import DiscreteAdditiveChannel, DiscretePmf, fan_out
from shannonkit.discrete import dice_sum_pmf

# outcome frequencies for the sums 2..12 of two dice
DICE_FREQ = [1, 2, 3, 4, 5, 6, 5, 4, 3, 2, 1]
PRINTED_SURPRISAL = [5.17, 4.17, 3.59, 3.17, 2.85, 2.59, 2.85, 3.17, 3.59, 4.17, 5.17]


@pytest.fixture
def dice():
    return dice_sum_pmf()


@pytest.fixture
def fan_channel():
    return DiscreteAdditiveChannel([100, 200, 300], DiscretePmf.uniform([10, 20]))


@pytest.fixture
def fan_input():
    return DiscretePmf.uniform([100, 200, 300])


@pytest.fixture
def fan_joint(fan_channel, fan_input):
    return fan_out(fan_channel, fan_input)


def random_joint_probs(rng, max_side=6, zero_frac=0.2):
    nx, ny = rng.integers(1, max_side + 1, size=2)
    p = rng.dirichlet(np.full(nx * ny, 0.7)).reshape(nx, ny)
    mask = rng.random(p.shape) < zero_frac
    if mask.all():
        mask.flat[0] = False
    p = np.where(mask, 0.0, p)
    return p / p.sum()


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
