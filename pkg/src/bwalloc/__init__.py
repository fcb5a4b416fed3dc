"""Adaptive bandwidth-chunk allocation in Poisson bipolar networks.

Closed-form success probability, SIR meta distribution, Shannon throughput,
and mean-model calibration for networks whose users occupy a type-dependent
number of bandwidth chunks, cross-validated by a Monte Carlo simulator.
"""

from .allocation import (
    OverlapPmf,
    mean_overlap,
    overlap_pmf,
    overlap_pmf_contiguous,
    overlap_pmf_random,
    sample_chunk_set,
    sample_type,
    type_averaged_overlap,
)
from .errors import (
    ConfigError,
    DomainError,
    IntegrationError,
    OscillatoryIntegrationError,
)
from .experiments import (
    ExperimentSpec,
    Metric,
    SweepSpec,
    SweepVariable,
    db_to_linear,
    default_bandwidth,
    default_network,
    parse_config,
    read_csv_config,
    render_config,
    run_and_write,
    run_experiment,
    run_figure,
)
from .meanmodel import (
    MatchedNetwork,
    match_mean_model,
    matched_intensity,
    matched_power,
    mean_interference_k,
    mean_interference_overall,
    mean_signal,
    msmir_k,
)
from .metadist import (
    beta_shape_parameters,
    meta_ccdf,
    meta_ccdf_beta,
    meta_ccdf_gilpelaez,
    meta_ccdf_overall,
    moment_b_k,
)
from .metrics import (
    ThroughputResult,
    bounded_interference_constant,
    interference_constant,
    shannon_throughput_k,
    shannon_throughput_overall,
    shannon_throughput_per_hz_k,
    shannon_throughput_per_joule_k,
    shannon_throughput_per_joule_overall,
    success_prob_k,
    success_prob_ki,
    success_prob_overall,
)
from .params import (
    MAX_CHUNKS,
    AllocationMode,
    BandwidthConfig,
    NetworkParams,
    PathLossModel,
)
from .simulate import (
    ConditionalMode,
    EstimateWithCI,
    NetworkRealization,
    SimConfig,
    conditional_success_prob,
    estimate_mean_interference,
    estimate_meta_distribution,
    estimate_success_prob,
    estimate_throughput,
    realization_rng,
    sample_realization,
    sir_of_realization,
    success_prob_curve,
)

__version__ = "0.1.0"

__all__ = [
    "AllocationMode",
    "BandwidthConfig",
    "ConditionalMode",
    "ConfigError",
    "DomainError",
    "EstimateWithCI",
    "ExperimentSpec",
    "IntegrationError",
    "MAX_CHUNKS",
    "MatchedNetwork",
    "Metric",
    "NetworkParams",
    "NetworkRealization",
    "OscillatoryIntegrationError",
    "OverlapPmf",
    "PathLossModel",
    "SimConfig",
    "SweepSpec",
    "SweepVariable",
    "ThroughputResult",
    "beta_shape_parameters",
    "bounded_interference_constant",
    "conditional_success_prob",
    "db_to_linear",
    "default_bandwidth",
    "default_network",
    "estimate_mean_interference",
    "estimate_meta_distribution",
    "estimate_success_prob",
    "estimate_throughput",
    "interference_constant",
    "match_mean_model",
    "matched_intensity",
    "matched_power",
    "mean_interference_k",
    "mean_interference_overall",
    "mean_overlap",
    "mean_signal",
    "meta_ccdf",
    "meta_ccdf_beta",
    "meta_ccdf_gilpelaez",
    "meta_ccdf_overall",
    "moment_b_k",
    "msmir_k",
    "overlap_pmf",
    "overlap_pmf_contiguous",
    "overlap_pmf_random",
    "parse_config",
    "read_csv_config",
    "realization_rng",
    "render_config",
    "run_and_write",
    "run_experiment",
    "run_figure",
    "sample_chunk_set",
    "sample_realization",
    "sample_type",
    "shannon_throughput_k",
    "shannon_throughput_overall",
    "shannon_throughput_per_hz_k",
    "shannon_throughput_per_joule_k",
    "shannon_throughput_per_joule_overall",
    "sir_of_realization",
    "success_prob_curve",
    "success_prob_k",
    "success_prob_ki",
    "success_prob_overall",
    "type_averaged_overlap",
    "__version__",
]
