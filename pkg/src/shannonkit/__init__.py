"""Entropy, mutual information, channel capacity, source coding and spectral MI."""
from ._backend import BACKEND
from .channel import (
    DiscreteAdditiveChannel,
    GaussianChannelSpec,
    TransitionMatrix,
    data_processing_check,
    detection_probability,
    dmc_capacity,
    fan_out,
    gaussian_capacity,
    gaussian_mutual_information,
    mutual_information_of_channel,
    output_entropy_decomposition,
)
from .coding import (
    PrefixCode,
    SourceSpec,
    block_code_rate,
    build_optimal_code,
    decode,
    encode,
    naive_code_length,
)
from .continuous import (
    Exponential,
    Gaussian,
    Uniform,
    density,
    differential_entropy,
    maxent_for_constraints,
    numeric_differential_entropy,
    variance,
)
from .discrete import (
    DiscretePmf,
    JointPmf,
    coin_entropy_curve,
    conditional_entropy_x_given_y,
    conditional_entropy_y_given_x,
    entropy,
    equivalent_equiprobable_count,
    joint_entropy,
    marginalize,
    mutual_information,
    surprisal,
)
from .errors import (
    ConvergenceError,
    DomainError,
    InfoTheoryError,
    ResourceError,
    ValidationError,
)
from .estimation import (
    Histogram2D,
    SeededStream,
    plugin_entropy,
    plugin_mutual_information,
    simulate_additive_gaussian,
)
from .spectral import (
    FourierCoefficients,
    SampledSignal,
    SpectrumPair,
    flat_spectrum_allocation,
    fourier_analyze,
    per_frequency_mi,
    power_spectrum,
    spectral_mutual_information,
    synthesize,
)

__version__ = "0.1.0"
