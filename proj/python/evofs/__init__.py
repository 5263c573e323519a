"""Wrapper feature selection for intrusion-detection datasets.

Thin re-export of the compiled core: CSV preprocessing, from-scratch
classifiers, the two binary subset-search algorithms and the metrics suite.
"""

from ._core import (
    DataTable,
    TrainedModel,
    __version__,
    confusion,
    downsample,
    evaluate_mask,
    fit,
    hamming_distance,
    load_csv,
    relative_improvement,
    run_evo,
    run_experiment,
    run_gwo,
    schema_names,
    scores,
    select_features,
    split,
)

__all__ = [
    "DataTable",
    "TrainedModel",
    "__version__",
    "confusion",
    "downsample",
    "evaluate_mask",
    "fit",
    "hamming_distance",
    "load_csv",
    "relative_improvement",
    "run_evo",
    "run_experiment",
    "run_gwo",
    "schema_names",
    "scores",
    "select_features",
    "split",
]
