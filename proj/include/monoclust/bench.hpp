#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monoclust/clustering.hpp"
#include "monoclust/dataset.hpp"

namespace monoclust {

inline constexpr const char* kVersion = "0.1.0";

// label_column value meaning "the file has no label column".
inline constexpr int kNoLabelColumn = -2;

// All method names the harness can dispatch, in their canonical order.
const std::vector<std::string>& all_methods();

// One experiment matrix: datasets x constraint fractions x methods x
// repeated runs. Run r uses seed base_seed + r for both centroid
// initialization and (unless fixed_constraints) its own constraint draw.
struct ExperimentConfig {
    std::vector<std::string> dataset_paths;
    int label_column = kLastColumn;
    bool has_header = true;
    std::vector<double> fractions = {0.10, 0.15, 0.20};
    std::vector<std::string> methods;
    int repeats = 50;
    std::uint64_t base_seed = 1;
    bool fixed_constraints = false;
    bool standardize_features = true;
    std::size_t impute_neighbors = 5;
    int k_override = 0;  // 0 = number of classes in the dataset
    int max_iter = 100;
    double tol = 1e-4;
    double penalty_weight = 1.0;
    std::size_t sign_test_samples = 100000;
    std::string out_dir = "results";

    ExperimentConfig();
    void validate() const;
};

ExperimentConfig load_experiment_config(const std::string& path);

// One cell of the run matrix. Dead-end runs carry the worst benchmark
// values (ari -1, nmi 1, unsat 1).
struct RunRecord {
    std::string dataset;
    double fraction = 0.0;
    std::string method;
    int run = 0;
    std::uint64_t seed = 0;
    double ari = 0.0;
    double nmi = 0.0;
    double unsat = 0.0;
    int iterations = 0;
    bool converged = false;
    bool dead_end = false;
    double wall_ms = 0.0;
};

struct ResultsTable {
    std::vector<RunRecord> rows;
};

struct SummaryRow {
    std::string dataset;
    double fraction = 0.0;
    std::string method;
    int runs = 0;
    int dead_ends = 0;
    bool no_result = false;  // every run dead-ended
    double ari_mean = 0.0, ari_std = 0.0;
    double nmi_mean = 0.0, nmi_std = 0.0;
    double unsat_mean = 0.0, unsat_std = 0.0;
};

// Per-method grand mean across datasets for one fraction, skipping
// no-result cells.
struct GrandMeanRow {
    double fraction = 0.0;
    std::string method;
    int datasets = 0;
    double ari_mean = 0.0;
    double nmi_mean = 0.0;
    double unsat_mean = 0.0;
};

struct Summary {
    std::vector<SummaryRow> cells;
    std::vector<GrandMeanRow> grand_means;
};

ResultsTable run_experiment(const ExperimentConfig& cfg);

// Mean and population standard deviation of every metric per
// (dataset, fraction, method) cell, plus the grand means.
Summary aggregate(const ResultsTable& t);

// Uniform points in [0,1]^u labeled by quantile bucket of their
// coordinate sum; with probability noise a label is shifted one bucket up
// or down (clamped). noise 0 gives a perfectly monotone labeling.
Dataset make_synthetic(std::size_t n, std::size_t u, int k, double noise,
                       Rng& rng);

// Writes the report suite under out_dir: the raw per-run CSV and summary
// tables, per-measure method-comparison tables, pairwise sign-test
// summaries and barycentric clouds against pckm_mono, wall-clock timings
// (kept out of the deterministic files), and a manifest that can be fed
// back to `run --config` to reproduce everything byte for byte.
void emit_report(const ExperimentConfig& cfg, const ResultsTable& table,
                 const Summary& summary, const std::string& out_dir);

}  // namespace monoclust
