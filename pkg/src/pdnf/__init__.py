"""Probabilistic disjunctive normal forms.

Weight matrices form a normed vector space; probability families map
weights to ternary literal distributions; together they induce a product
measure over venjunctions.  The subpackages cover evidence fusion and
identification experiments, exact distance distributions, random-walk
weight dynamics, a two-sensor worked scenario, JSON model files and a
CLI exposing all of it.
"""

from .core import (
    Pdnf,
    ShapeMismatchError,
    WeightMatrix,
    add,
    distance_l1,
    norm_l1,
    pad_conjunctions,
    scale,
    zero,
)
from .distance import (
    DistanceDistribution,
    ball_probability,
    distance_distribution,
    enumerated_histogram,
    literal_weight,
    normal_approx,
    venjunction_distance,
)
from .encoder import (
    Encoder,
    asymmetry,
    clamped_triples,
    csv_rows,
    decode,
    encode,
    l1_norm,
    probability_grid,
    segment_probs,
    signed_parts,
)
from .families import (
    DefinitionReport,
    ProbabilityFamily,
    ProbTriple,
    SoftmaxFamily,
    ThresholdFamily,
    WarpedSoftmaxFamily,
    entropy_grid,
    partition_probs,
    total_entropy,
    validate_definition,
)
from .fusion import (
    ContradictoryEvidenceError,
    IdentificationBound,
    IdentificationResult,
    check_characterization,
    check_composition,
    convergence_experiment,
    coupon_bound,
    fuse,
    identification_experiment,
)
from .model_io import ModelFormatError, load_model, save_model
from .sensor import Decision, DemoResult, DemoRow, SensorConfig, decision_rule, run_demo
from .stochastic import (
    StepDistribution,
    WalkProcess,
    hmm_sample,
    hmm_sample_many,
    mean_encoder,
    mean_encoder_l1_error,
    monte_carlo_mean_encoder,
    simulate_walks,
    variance_encoder,
)
from .venjunction import (
    ENUMERATION_CAP,
    EnumerationCapError,
    HiddenEncoding,
    Language,
    Venjunction,
    VenjunctionMeasure,
    hidden_variable_encoding,
    mixture_measure,
    sample_mixture,
)

__version__ = "0.1.0"

__all__ = [
    "ContradictoryEvidenceError",
    "Decision",
    "DefinitionReport",
    "DemoResult",
    "DemoRow",
    "DistanceDistribution",
    "ENUMERATION_CAP",
    "Encoder",
    "EnumerationCapError",
    "HiddenEncoding",
    "IdentificationBound",
    "IdentificationResult",
    "Language",
    "ModelFormatError",
    "Pdnf",
    "ProbTriple",
    "ProbabilityFamily",
    "SensorConfig",
    "ShapeMismatchError",
    "SoftmaxFamily",
    "StepDistribution",
    "ThresholdFamily",
    "Venjunction",
    "VenjunctionMeasure",
    "WalkProcess",
    "WarpedSoftmaxFamily",
    "WeightMatrix",
    "add",
    "asymmetry",
    "ball_probability",
    "check_characterization",
    "check_composition",
    "clamped_triples",
    "convergence_experiment",
    "coupon_bound",
    "csv_rows",
    "decision_rule",
    "decode",
    "distance_distribution",
    "distance_l1",
    "encode",
    "entropy_grid",
    "enumerated_histogram",
    "fuse",
    "hidden_variable_encoding",
    "hmm_sample",
    "hmm_sample_many",
    "identification_experiment",
    "l1_norm",
    "literal_weight",
    "load_model",
    "mean_encoder",
    "mean_encoder_l1_error",
    "mixture_measure",
    "monte_carlo_mean_encoder",
    "norm_l1",
    "normal_approx",
    "pad_conjunctions",
    "partition_probs",
    "probability_grid",
    "run_demo",
    "sample_mixture",
    "save_model",
    "scale",
    "segment_probs",
    "signed_parts",
    "simulate_walks",
    "total_entropy",
    "validate_definition",
    "variance_encoder",
    "venjunction_distance",
    "zero",
]
