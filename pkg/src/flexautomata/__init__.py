"""flexautomata: red-blue state-merging automaton learning.

The pipeline, end to end: parse traces (or discretize a numeric series into
traces), build the prefix tree acceptor, merge states bottom-up under a
pluggable evidence heuristic, then use the learned machine to classify,
predict numeric targets, sample words, or render DOT.
"""

from .apta import build_apta, structural_tree_check
from .automaton import (
    Automaton,
    ComputationResult,
    Outcome,
    StateAggregate,
    StateLabel,
    check_integrity,
    compute,
    language_upto,
)
from .errors import (
    GenerationError,
    InconsistentSampleError,
    IterationLimitError,
    ModelFormatError,
    PredictionError,
    SampleFormatError,
)
from .heuristics import (
    FAIL_DISTRIBUTION,
    FAIL_LABEL_CONFLICT,
    FAIL_NO_TARGETS,
    Alergia,
    Edsm,
    EvidenceScore,
    Mse,
    evidence_alergia,
    evidence_edsm,
    evidence_mse,
    hoeffding_bound,
    hoeffding_compatible,
)
from .learner import LearnLog, LearnerConfig, LearnerState, learn, promote
from .merging import MergeOutcome, PairDistribution, merge, merge_aggregates
from .predict import (
    BinMethod,
    DiscretizationSpec,
    EvalReport,
    Fallback,
    PredictionConfig,
    TargetKind,
    bin_cuts,
    discretize,
    evaluate,
    global_target_mean,
    predict_value,
    sample_words,
    shortest_accepted_length,
)
from .sample_io import (
    Sample,
    SymbolInstance,
    Trace,
    TraceLabel,
    load_model,
    parse_abbadingo,
    parse_augmented,
    save_model,
    write_dot,
    write_sample,
)

__version__ = "0.1.0"

__all__ = [
    "Alergia",
    "FAIL_DISTRIBUTION",
    "FAIL_LABEL_CONFLICT",
    "FAIL_NO_TARGETS",
    "Automaton",
    "BinMethod",
    "ComputationResult",
    "DiscretizationSpec",
    "Edsm",
    "EvalReport",
    "EvidenceScore",
    "Fallback",
    "GenerationError",
    "InconsistentSampleError",
    "IterationLimitError",
    "LearnLog",
    "LearnerConfig",
    "LearnerState",
    "MergeOutcome",
    "ModelFormatError",
    "Mse",
    "Outcome",
    "PairDistribution",
    "PredictionConfig",
    "PredictionError",
    "Sample",
    "SampleFormatError",
    "StateAggregate",
    "StateLabel",
    "SymbolInstance",
    "Trace",
    "TraceLabel",
    "bin_cuts",
    "build_apta",
    "check_integrity",
    "compute",
    "discretize",
    "evaluate",
    "global_target_mean",
    "shortest_accepted_length",
    "evidence_alergia",
    "evidence_edsm",
    "evidence_mse",
    "hoeffding_bound",
    "hoeffding_compatible",
    "language_upto",
    "learn",
    "load_model",
    "merge",
    "merge_aggregates",
    "parse_abbadingo",
    "parse_augmented",
    "predict_value",
    "promote",
    "sample_words",
    "save_model",
    "structural_tree_check",
    "write_dot",
    "write_sample",
]
