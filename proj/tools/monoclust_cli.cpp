// monoclust command line: experiment runner, partition scoring, Bayesian
// sign test, and synthetic dataset generation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "monoclust/bench.hpp"
#include "monoclust/metrics.hpp"
#include "monoclust/sign_test.hpp"

namespace {

using namespace monoclust;

// Single-column (or last-column) numeric CSV used by the signtest command.
std::vector<double> read_result_column(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::vector<double> values;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::string cell = line;
        const auto pos = line.find_last_of(',');
        if (pos != std::string::npos) cell = line.substr(pos + 1);
        if (!cell.empty() && cell.back() == '\r') cell.pop_back();
        try {
            values.push_back(std::stod(cell));
        } catch (const std::exception&) {
            if (first) {
                first = false;
                continue;  // header row
            }
            throw std::runtime_error("non-numeric value '" + cell + "' in " +
                                     path);
        }
        first = false;
    }
    if (values.empty()) {
        throw std::runtime_error("no numeric values in " + path);
    }
    return values;
}

int cmd_run(const std::string& config_path,
            const std::vector<std::string>& datasets,
            const std::vector<double>& fractions,
            const std::vector<std::string>& methods,
            std::optional<int> repeats, std::optional<std::uint64_t> seed,
            std::optional<double> penalty_weight, bool fixed_constraints,
            const std::string& out_dir) {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = load_experiment_config(config_path);
    if (!datasets.empty()) cfg.dataset_paths = datasets;
    if (!fractions.empty()) cfg.fractions = fractions;
    if (!methods.empty()) cfg.methods = methods;
    if (repeats) cfg.repeats = *repeats;
    if (seed) cfg.base_seed = *seed;
    if (penalty_weight) cfg.penalty_weight = *penalty_weight;
    if (fixed_constraints) cfg.fixed_constraints = true;
    if (!out_dir.empty()) cfg.out_dir = out_dir;

    const ResultsTable table = run_experiment(cfg);
    const Summary summary = aggregate(table);
    emit_report(cfg, table, summary, cfg.out_dir);
    std::cout << "wrote " << table.rows.size() << " runs to " << cfg.out_dir
              << "\n";
    return 0;
}

int cmd_cluster(const std::string& dataset_path, int label_column,
                bool no_header, const std::string& method,
                const std::string& constraints_path, int k,
                std::uint64_t seed, double penalty_weight, int max_iter,
                double tol, bool no_standardize, const std::string& out_path) {
    Dataset d = load_csv(dataset_path,
                         label_column == kNoLabelColumn
                             ? std::nullopt
                             : std::optional<int>(label_column),
                         !no_header);
    if (d.has_missing()) d = knn_impute(d);
    if (!no_standardize) d = standardize(d);
    ConstraintSet cs;
    if (!constraints_path.empty()) cs = load_constraints(constraints_path);

    EMConfig em;
    em.k = k > 0 ? k : d.num_classes();
    if (em.k == 0) {
        throw std::runtime_error("--k required for unlabeled datasets");
    }
    em.seed = seed;
    em.penalty_weight = penalty_weight;
    em.max_iter = max_iter;
    em.tol = tol;

    ClusteringOutcome out;
    if (method == "pckm_mono") out = pckm_mono(d, cs, em);
    else if (method == "mono_kmeans") out = mono_kmeans(d, em);
    else if (method == "kmeans") out = kmeans(d, em);
    else if (method == "cop_kmeans") out = cop_kmeans(d, cs, em);
    else if (method == "pck_means") out = pck_means(d, cs, em);
    else throw std::runtime_error("unknown method: " + method);

    save_outcome(out, out_path);
    std::cout << (out.success() ? "success" : "dead-end") << " after "
              << out.iterations << " iterations, wrote " << out_path << "\n";
    return out.success() ? 0 : 2;
}

int cmd_metrics(const std::string& dataset_path, int label_column,
                bool no_header, const std::string& outcome_path,
                const std::string& constraints_path) {
    const Dataset d = load_csv(dataset_path, label_column, !no_header);
    const ClusteringOutcome outcome = load_outcome(outcome_path);
    nlohmann::json j;
    if (!outcome.success()) {
        j["status"] = "dead-end";
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    const auto& labels = outcome.partition->labels;
    j["status"] = "success";
    j["nmi"] = nmi_index(labels, d);
    if (d.labels) j["ari"] = ari(*d.labels, labels);
    if (!constraints_path.empty()) {
        j["unsat"] = unsat(labels, load_constraints(constraints_path));
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_signtest(const std::string& a_path, const std::string& b_path,
                 double rope_min, double rope_max, std::size_t samples,
                 double prior_weight, std::uint64_t seed,
                 const std::string& cloud_path) {
    const auto a = read_result_column(a_path);
    const auto b = read_result_column(b_path);
    Rng rng(seed);
    const SignTestResult res = bayesian_sign_test(
        a, b, RopeInterval(rope_min, rope_max), rng, samples, prior_weight);
    if (!cloud_path.empty()) write_sample_cloud_csv(res, cloud_path);
    std::cout << summary_json(res) << "\n";
    return 0;
}

int cmd_synth(std::size_t n, std::size_t dims, int classes, double noise,
              std::uint64_t seed, const std::string& out_path) {
    Rng rng(seed);
    const Dataset d = make_synthetic(n, dims, classes, noise, rng);
    write_csv(d, out_path);
    std::cout << "wrote " << d.n() << "x" << d.u() << " dataset with "
              << d.num_classes() << " classes to " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clustering under monotonicity and pairwise constraints"};
    app.require_subcommand(1);

    // run
    std::string config_path, run_out;
    std::vector<std::string> datasets, methods;
    std::vector<double> fractions;
    std::optional<int> repeats;
    std::optional<std::uint64_t> seed;
    std::optional<double> penalty_weight;
    bool fixed_constraints = false;
    auto* run = app.add_subcommand("run", "Run an experiment matrix");
    run->add_option("--config", config_path, "JSON config (or manifest) file");
    run->add_option("--datasets", datasets, "Labeled CSV dataset paths");
    run->add_option("--fractions", fractions, "Constraint fractions");
    run->add_option("--methods", methods, "Methods to run");
    run->add_option("--repeats", repeats, "Runs per cell");
    run->add_option("--seed", seed, "Base seed");
    run->add_option("--penalty-weight", penalty_weight,
                    "Soft constraint penalty weight");
    run->add_flag("--fixed-constraints", fixed_constraints,
                  "One constraint set per dataset/fraction for all runs");
    run->add_option("--out", run_out, "Output directory");

    // cluster
    std::string c_dataset, c_method = "pckm_mono", c_constraints, c_out;
    int c_label_column = monoclust::kLastColumn;
    int c_k = 0, c_max_iter = 100;
    bool c_no_header = false, c_no_standardize = false;
    double c_pw = 1.0, c_tol = 1e-4;
    std::uint64_t c_seed = 1;
    auto* cluster =
        app.add_subcommand("cluster", "Run one method once, store the outcome");
    cluster->add_option("--dataset", c_dataset, "CSV dataset")->required();
    cluster->add_option("--method", c_method, "Clustering method");
    cluster->add_option("--constraints", c_constraints, "Constraint CSV");
    cluster->add_option("--k", c_k, "Cluster count (0 = class count)");
    cluster->add_option("--seed", c_seed, "RNG seed");
    cluster->add_option("--penalty-weight", c_pw, "Soft penalty weight");
    cluster->add_option("--max-iter", c_max_iter, "Iteration cap");
    cluster->add_option("--tol", c_tol, "Centroid-shift tolerance");
    cluster->add_option("--label-col", c_label_column,
                        "Label column index (-1 = last, -2 = none)");
    cluster->add_flag("--no-header", c_no_header, "Dataset has no header row");
    cluster->add_flag("--no-standardize", c_no_standardize,
                      "Skip feature standardization");
    cluster->add_option("--out", c_out, "Outcome JSON path")->required();

    // metrics
    std::string m_dataset, m_outcome, m_constraints;
    int m_label_column = monoclust::kLastColumn;
    bool m_no_header = false;
    auto* metrics = app.add_subcommand("metrics", "Score a stored partition");
    metrics->add_option("--dataset", m_dataset, "Labeled CSV dataset")
        ->required();
    metrics->add_option("--outcome", m_outcome, "Outcome JSON file")
        ->required();
    metrics->add_option("--constraints", m_constraints,
                        "Constraint CSV for the unsat rate");
    metrics->add_option("--label-col", m_label_column,
                        "Label column index (-1 = last)");
    metrics->add_flag("--no-header", m_no_header, "Dataset has no header row");

    // signtest
    std::string st_a, st_b, st_cloud;
    std::pair<double, double> st_rope{-0.01, 0.01};
    double st_prior = 1.0;
    std::size_t st_samples = 100000;
    std::uint64_t st_seed = 1;
    auto* signtest =
        app.add_subcommand("signtest", "Bayesian sign test on paired results");
    signtest->add_option("a", st_a, "First result CSV")->required();
    signtest->add_option("b", st_b, "Second result CSV")->required();
    signtest->add_option("--rope", st_rope,
                         "Region of practical equivalence: MIN MAX");
    signtest->add_option("--samples", st_samples, "Posterior sample count");
    signtest->add_option("--prior-weight", st_prior,
                         "Prior pseudo-observation weight (on the rope)");
    signtest->add_option("--seed", st_seed, "RNG seed");
    signtest->add_option("--cloud", st_cloud,
                         "Write barycentric sample cloud CSV here");

    // synth
    std::size_t sy_n = 500, sy_dims = 4;
    int sy_classes = 4;
    double sy_noise = 0.1;
    std::uint64_t sy_seed = 1;
    std::string sy_out;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
    synth->add_option("--n", sy_n, "Instances");
    synth->add_option("--dims", sy_dims, "Features");
    synth->add_option("--classes", sy_classes, "Ordered classes");
    synth->add_option("--noise", sy_noise, "Label noise rate");
    synth->add_option("--seed", sy_seed, "RNG seed");
    synth->add_option("--out", sy_out, "Output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(config_path, datasets, fractions, methods, repeats,
                           seed, penalty_weight, fixed_constraints, run_out);
        }
        if (cluster->parsed()) {
            return cmd_cluster(c_dataset, c_label_column, c_no_header,
                               c_method, c_constraints, c_k, c_seed, c_pw,
                               c_max_iter, c_tol, c_no_standardize, c_out);
        }
        if (metrics->parsed()) {
            return cmd_metrics(m_dataset, m_label_column, m_no_header,
                               m_outcome, m_constraints);
        }
        if (signtest->parsed()) {
            return cmd_signtest(st_a, st_b, st_rope.first, st_rope.second,
                                st_samples, st_prior, st_seed, st_cloud);
        }
        if (synth->parsed()) {
            return cmd_synth(sy_n, sy_dims, sy_classes, sy_noise, sy_seed,
                             sy_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
