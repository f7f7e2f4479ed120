"""Clustering under monotonicity and pairwise constraints."""

from ._core import (
    ClusteringOutcome,
    ConstraintSet,
    Dataset,
    EMConfig,
    Partition,
    SignTestResult,
    __version__,
    ari,
    bayesian_sign_test,
    cop_kmeans,
    dominates,
    generate_constraints,
    init_centroids,
    kmeans,
    knn_impute,
    load_constraints,
    load_csv,
    make_synthetic,
    mono_distance,
    mono_kmeans,
    nmi_index,
    nmi_pair_index,
    objective,
    order_clusters,
    pck_means,
    pckm_mono,
    preference,
    save_constraints,
    standardize,
    unsat,
    violation_count,
    weighted_l1,
    write_csv,
)

__all__ = [
    "ClusteringOutcome",
    "ConstraintSet",
    "Dataset",
    "EMConfig",
    "Partition",
    "SignTestResult",
    "__version__",
    "ari",
    "bayesian_sign_test",
    "cop_kmeans",
    "dominates",
    "generate_constraints",
    "init_centroids",
    "kmeans",
    "knn_impute",
    "load_constraints",
    "load_csv",
    "make_synthetic",
    "mono_distance",
    "mono_kmeans",
    "nmi_index",
    "nmi_pair_index",
    "objective",
    "order_clusters",
    "pck_means",
    "pckm_mono",
    "preference",
    "save_constraints",
    "standardize",
    "unsat",
    "violation_count",
    "weighted_l1",
    "write_csv",
]
