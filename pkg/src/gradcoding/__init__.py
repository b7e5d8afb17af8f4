"""Straggler-tolerant distributed gradient aggregation via sparse assignment matrices.

The library builds k x n 0/1 assignment matrices (tasks x workers),
models which workers go missing, decodes an approximate sum of task
results from the survivors, and compares measured errors against closed
forms and concentration bounds. A Monte Carlo harness and a small coded
gradient descent demo sit on top.
"""

from .bounds import (
    BoundReport,
    ConcentrationSummary,
    check_ebound,
    check_u1_bound,
    concentration_probe,
    deviation_norm,
    expander_bound,
    frc_expected_one_step,
    frc_expected_optimal,
    frc_tail_bound,
    frc_threshold_s,
    graph_second_eigen,
)
from .codes import (
    SCHEMES,
    AssignmentMatrix,
    CodeParams,
    gen_bgc,
    gen_frc,
    gen_rbgc,
    gen_sregular,
    generate,
    parse_text,
    to_text,
    validate,
)
from .decoders import (
    DecodeOutcome,
    DecoderConfig,
    decode,
    decode_iterative,
    decode_one_step,
    decode_optimal,
    default_rho,
)
from .descent import (
    CodedGdTrace,
    GdTrace,
    LossProblem,
    make_quadratic_problem,
    run_gd_demo,
    run_gd_exact,
)
from .experiments import (
    AggregateRow,
    ExperimentConfig,
    ExperimentResult,
    SkippedCell,
    TrialRecord,
    aggregate,
    aggregate_to_csv,
    parse_config,
    records_to_csv,
    run_cell,
    run_experiment,
)
from .linalg import SpectralReport, least_squares, spectral_norm, walk_count
from .seeds import derive_seed, make_rng
from .stragglers import (
    NonStragglerSample,
    StragglerModel,
    brute_force_adversary,
    frc_adversary,
    num_nonstragglers,
    permute_columns,
    sample_uniform,
)

__all__ = [
    "AggregateRow",
    "AssignmentMatrix",
    "BoundReport",
    "CodeParams",
    "CodedGdTrace",
    "ConcentrationSummary",
    "DecodeOutcome",
    "DecoderConfig",
    "ExperimentConfig",
    "ExperimentResult",
    "GdTrace",
    "LossProblem",
    "NonStragglerSample",
    "SCHEMES",
    "SkippedCell",
    "SpectralReport",
    "StragglerModel",
    "TrialRecord",
    "aggregate",
    "aggregate_to_csv",
    "brute_force_adversary",
    "check_ebound",
    "check_u1_bound",
    "concentration_probe",
    "decode",
    "decode_iterative",
    "decode_one_step",
    "decode_optimal",
    "default_rho",
    "derive_seed",
    "deviation_norm",
    "expander_bound",
    "frc_adversary",
    "frc_expected_one_step",
    "frc_expected_optimal",
    "frc_tail_bound",
    "frc_threshold_s",
    "gen_bgc",
    "gen_frc",
    "gen_rbgc",
    "gen_sregular",
    "generate",
    "graph_second_eigen",
    "least_squares",
    "make_quadratic_problem",
    "make_rng",
    "num_nonstragglers",
    "parse_config",
    "parse_text",
    "permute_columns",
    "records_to_csv",
    "run_cell",
    "run_experiment",
    "run_gd_demo",
    "run_gd_exact",
    "sample_uniform",
    "spectral_norm",
    "to_text",
    "validate",
    "walk_count",
]
