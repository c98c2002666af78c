"""Dissimilarity projection of variable-length geometric objects onto prototypes."""

__version__ = "0.1.0"

from .distance import Kernel, distance_matrix, euclidean, mam, mam_directed
from .embedding import EmbeddedDataset, delta, empirical_distortion, project, project_all
from .evaluation import (ExperimentReport, PairSampling, distance_correlation, pearson,
                         run_experiment)
from .geometry import Dataset, validate
from .selection import (Policy, PrototypeSet, SffParams, kcenter_cost, select, select_fft,
                        select_random, select_sff, sff_subset_size)

__all__ = [
    "Dataset", "EmbeddedDataset", "ExperimentReport", "Kernel", "PairSampling", "Policy",
    "PrototypeSet", "SffParams", "delta", "distance_correlation", "distance_matrix",
    "empirical_distortion", "euclidean", "kcenter_cost", "mam", "mam_directed", "pearson",
    "project", "project_all", "run_experiment", "select", "select_fft", "select_random",
    "select_sff", "sff_subset_size", "validate",
]
