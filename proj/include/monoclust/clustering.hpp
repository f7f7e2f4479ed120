#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monoclust/constraints.hpp"
#include "monoclust/types.hpp"

namespace monoclust {

enum class InitStrategy { kRandomRows };

// Shared EM parameters. k is the number of clusters; tol is the
// convergence threshold on the mean Euclidean centroid displacement per
// iteration; penalty_weight multiplies each constraint violation in the
// soft-penalty assignment rules.
struct EMConfig {
    int k = 2;
    int max_iter = 100;
    double tol = 1e-4;
    double penalty_weight = 1.0;
    std::uint64_t seed = 0;
    InitStrategy init = InitStrategy::kRandomRows;

    void validate() const;
};

enum class ClusteringStatus { kSuccess, kDeadEnd };

// Result of one clustering run. partition is absent exactly when a
// hard-constrained run hit a dead-end; objective is then NaN.
struct ClusteringOutcome {
    std::optional<Partition> partition;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    ClusteringStatus status = ClusteringStatus::kSuccess;

    bool success() const { return status == ClusteringStatus::kSuccess; }
};

// Per-iteration diagnostics. assign_before/assign_after are the
// assignment-step objective (sum over instances of the assignment
// distance plus penalty_weight times the violated-pair count) evaluated
// against that iteration's centroids at the start and end of the E-step;
// in-place label updates make assign_after <= assign_before a hard
// guarantee, while full_objective (the algorithm's objective after the
// M-step) is monitoring only. assign_before is NaN on the first iteration,
// when instances are still unassigned.
struct EMTraceEntry {
    double assign_before = 0.0;
    double assign_after = 0.0;
    double full_objective = 0.0;
    double centroid_shift = 0.0;
};
using EMTrace = std::vector<EMTraceEntry>;

// k distinct instance rows sampled uniformly without replacement, in draw
// order. Errors when k > n.
Matrix init_centroids(const Dataset& d, int k, Rng& rng);

// EM under the hybrid objective: instances go to the cluster minimizing
// mono_distance(x, centroid, w) + penalty_weight * violated-constraint
// count, centroids are cluster means. Returns an ordinally ranked
// partition (see order_clusters) and the final hybrid objective value.
ClusteringOutcome pckm_mono(const Dataset& d, const ConstraintSet& cs,
                            const EMConfig& cfg, EMTrace* trace = nullptr);

// Purely monotonic EM: mono_distance assignment, no constraints.
// Equivalent to 1-D k-means on the weighted coordinate sum, so the ranked
// output partition is stratified and its non-monotonicity index is 0.
ClusteringOutcome mono_kmeans(const Dataset& d, const EMConfig& cfg,
                              EMTrace* trace = nullptr);

// Standard Lloyd iterations (squared Euclidean assignment, mean update).
ClusteringOutcome kmeans(const Dataset& d, const EMConfig& cfg,
                         EMTrace* trace = nullptr);

// Lloyd iterations under hard constraints: an instance may only join the
// nearest cluster where it violates no constraint against currently
// assigned instances. When no cluster is feasible the run stops with
// status kDeadEnd and no partition. Successful runs satisfy unsat == 0.
ClusteringOutcome cop_kmeans(const Dataset& d, const ConstraintSet& cs,
                             const EMConfig& cfg, EMTrace* trace = nullptr);

// Soft-penalty constrained Lloyd: squared Euclidean distance plus
// penalty_weight * violated-constraint count in the assignment rule.
ClusteringOutcome pck_means(const Dataset& d, const ConstraintSet& cs,
                            const EMConfig& cfg, EMTrace* trace = nullptr);

// Sorts clusters ascending by the weighted coordinate sum of their
// centroids (ties by original cluster id), rewrites labels to the ordinal
// positions, permutes centroid rows to match, and records the applied
// permutation in rank. Idempotent.
Partition order_clusters(const Partition& p, const Dataset& d);

// The hybrid objective of a labeled partition: mean over clusters of the
// summed mono_distance of members to their centroid, i.e.
// (1/k) * sum_h sum_{i in h} mono_distance(x_i, centroid_h, w), plus
// penalty_weight times the number of violated constraints.
double objective(const Dataset& d, const Partition& p,
                 const ConstraintSet& cs, double penalty_weight);

// JSON record with labels, centroids, rank, objective, iterations,
// converged, and status.
void save_outcome(const ClusteringOutcome& outcome, const std::string& path);
ClusteringOutcome load_outcome(const std::string& path);

}  // namespace monoclust
