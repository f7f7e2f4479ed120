#include "monoclust/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "csv_util.hpp"
#include "json.hpp"
#include "monoclust/metrics.hpp"
#include "monoclust/preference.hpp"
#include "monoclust/sign_test.hpp"

namespace monoclust {

namespace {

constexpr const char* kReferenceMethod = "pckm_mono";

std::string dataset_name(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

std::string fraction_tag(double f) {
    return "f" + detail::format_double(f);
}

std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["datasets"] = cfg.dataset_paths;
    j["label_column"] = cfg.label_column;
    j["has_header"] = cfg.has_header;
    j["fractions"] = cfg.fractions;
    j["methods"] = cfg.methods;
    j["repeats"] = cfg.repeats;
    j["seed"] = cfg.base_seed;
    j["fixed_constraints"] = cfg.fixed_constraints;
    j["standardize"] = cfg.standardize_features;
    j["impute_neighbors"] = cfg.impute_neighbors;
    j["k"] = cfg.k_override;
    j["max_iter"] = cfg.max_iter;
    j["tol"] = cfg.tol;
    j["penalty_weight"] = cfg.penalty_weight;
    j["sign_test_samples"] = cfg.sign_test_samples;
    j["out_dir"] = cfg.out_dir;
    return j;
}

ExperimentConfig config_from_json(const nlohmann::json& in) {
    // A manifest wraps the effective config under "config"; accept both.
    const nlohmann::json& j = in.contains("config") ? in.at("config") : in;
    ExperimentConfig cfg;
    if (j.contains("datasets")) {
        cfg.dataset_paths = j.at("datasets").get<std::vector<std::string>>();
    }
    if (j.contains("label_column")) {
        cfg.label_column = j.at("label_column").is_null()
                               ? kNoLabelColumn
                               : j.at("label_column").get<int>();
    }
    if (j.contains("has_header")) cfg.has_header = j.at("has_header");
    if (j.contains("fractions")) {
        cfg.fractions = j.at("fractions").get<std::vector<double>>();
    }
    if (j.contains("methods")) {
        cfg.methods = j.at("methods").get<std::vector<std::string>>();
    }
    if (j.contains("repeats")) cfg.repeats = j.at("repeats");
    if (j.contains("seed")) cfg.base_seed = j.at("seed");
    if (j.contains("fixed_constraints")) {
        cfg.fixed_constraints = j.at("fixed_constraints");
    }
    if (j.contains("standardize")) {
        cfg.standardize_features = j.at("standardize");
    }
    if (j.contains("impute_neighbors")) {
        cfg.impute_neighbors = j.at("impute_neighbors");
    }
    if (j.contains("k")) cfg.k_override = j.at("k");
    if (j.contains("max_iter")) cfg.max_iter = j.at("max_iter");
    if (j.contains("tol")) cfg.tol = j.at("tol");
    if (j.contains("penalty_weight")) cfg.penalty_weight = j.at("penalty_weight");
    if (j.contains("sign_test_samples")) {
        cfg.sign_test_samples = j.at("sign_test_samples");
    }
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir");
    return cfg;
}

ClusteringOutcome dispatch(const std::string& method, const Dataset& d,
                           const ConstraintSet& cs, const EMConfig& em) {
    if (method == "pckm_mono") return pckm_mono(d, cs, em);
    if (method == "mono_kmeans") return mono_kmeans(d, em);
    if (method == "kmeans") return kmeans(d, em);
    if (method == "cop_kmeans") return cop_kmeans(d, cs, em);
    if (method == "pck_means") return pck_means(d, cs, em);
    throw std::invalid_argument("unknown method: " + method);
}

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
    MeanStd r;
    if (xs.empty()) return r;
    r.mean = std::accumulate(xs.begin(), xs.end(), 0.0) /
             static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - r.mean) * (x - r.mean);
    r.std = std::sqrt(var / static_cast<double>(xs.size()));
    return r;
}

}  // namespace

const std::vector<std::string>& all_methods() {
    static const std::vector<std::string> names = {
        "pckm_mono", "mono_kmeans", "kmeans", "cop_kmeans", "pck_means"};
    return names;
}

ExperimentConfig::ExperimentConfig() : methods(all_methods()) {}

void ExperimentConfig::validate() const {
    if (dataset_paths.empty()) {
        throw std::invalid_argument("ExperimentConfig: no datasets");
    }
    if (methods.empty()) {
        throw std::invalid_argument("ExperimentConfig: no methods");
    }
    for (const auto& m : methods) {
        if (std::find(all_methods().begin(), all_methods().end(), m) ==
            all_methods().end()) {
            throw std::invalid_argument("unknown method: " + m);
        }
    }
    if (repeats < 1) {
        throw std::invalid_argument("ExperimentConfig: repeats must be >= 1");
    }
    for (double f : fractions) {
        if (f <= 0.0 || f > 1.0) {
            throw std::invalid_argument(
                "ExperimentConfig: fractions must be in (0,1]");
        }
    }
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    nlohmann::json j;
    in >> j;
    return config_from_json(j);
}

ResultsTable run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ResultsTable table;

    for (std::size_t di = 0; di < cfg.dataset_paths.size(); ++di) {
        const std::string& path = cfg.dataset_paths[di];
        const std::optional<int> label_col =
            cfg.label_column == kNoLabelColumn
                ? std::nullopt
                : std::optional<int>(cfg.label_column);
        Dataset d = load_csv(path, label_col, cfg.has_header);
        if (!d.labels) {
            throw std::runtime_error("dataset lacks labels: " + path);
        }
        if (d.has_missing()) d = knn_impute(d, cfg.impute_neighbors);
        if (cfg.standardize_features) d = standardize(d);

        const std::string name = dataset_name(path);
        const std::vector<int>& truth = *d.labels;
        EMConfig em;
        em.k = cfg.k_override > 0 ? cfg.k_override : d.num_classes();
        em.max_iter = cfg.max_iter;
        em.tol = cfg.tol;
        em.penalty_weight = cfg.penalty_weight;

        for (std::size_t fi = 0; fi < cfg.fractions.size(); ++fi) {
            const double fraction = cfg.fractions[fi];
            const std::uint64_t cs_salt = (di + 1) * 1000 + fi;

            ConstraintSet fixed_cs;
            if (cfg.fixed_constraints) {
                Rng rng(derive_seed(cfg.base_seed, cs_salt));
                fixed_cs = generate_constraints(truth, fraction, rng);
            }

            for (int run = 0; run < cfg.repeats; ++run) {
                const std::uint64_t run_seed =
                    cfg.base_seed + static_cast<std::uint64_t>(run);
                ConstraintSet cs;
                if (cfg.fixed_constraints) {
                    cs = fixed_cs;
                } else {
                    Rng rng(derive_seed(run_seed, cs_salt));
                    cs = generate_constraints(truth, fraction, rng);
                }
                em.seed = run_seed;

                for (const auto& method : cfg.methods) {
                    RunRecord rec;
                    rec.dataset = name;
                    rec.fraction = fraction;
                    rec.method = method;
                    rec.run = run;
                    rec.seed = run_seed;

                    const auto t0 = std::chrono::steady_clock::now();
                    const ClusteringOutcome out = dispatch(method, d, cs, em);
                    const auto t1 = std::chrono::steady_clock::now();
                    rec.wall_ms =
                        std::chrono::duration<double, std::milli>(t1 - t0)
                            .count();
                    rec.iterations = out.iterations;
                    rec.converged = out.converged;
                    if (out.success()) {
                        const auto& labels = out.partition->labels;
                        rec.ari = ari(truth, labels);
                        rec.nmi = nmi_index(labels, d);
                        rec.unsat = unsat(labels, cs);
                    } else {
                        // Worst possible benchmark values for a dead-end.
                        rec.dead_end = true;
                        rec.ari = -1.0;
                        rec.nmi = 1.0;
                        rec.unsat = 1.0;
                    }
                    table.rows.push_back(std::move(rec));
                }
            }
        }
    }
    return table;
}

Summary aggregate(const ResultsTable& t) {
    if (t.rows.empty()) {
        throw std::invalid_argument("aggregate: empty results table");
    }
    Summary s;
    // Group rows in first-appearance order; the run matrix is emitted in a
    // deterministic order so the summary inherits it.
    for (const auto& row : t.rows) {
        auto it = std::find_if(s.cells.begin(), s.cells.end(),
                               [&](const SummaryRow& c) {
                                   return c.dataset == row.dataset &&
                                          c.fraction == row.fraction &&
                                          c.method == row.method;
                               });
        if (it == s.cells.end()) {
            SummaryRow cell;
            cell.dataset = row.dataset;
            cell.fraction = row.fraction;
            cell.method = row.method;
            s.cells.push_back(cell);
            it = std::prev(s.cells.end());
        }
        ++it->runs;
        if (row.dead_end) ++it->dead_ends;
    }

    for (auto& cell : s.cells) {
        std::vector<double> a, m, u;
        for (const auto& row : t.rows) {
            if (row.dataset != cell.dataset || row.fraction != cell.fraction ||
                row.method != cell.method) {
                continue;
            }
            a.push_back(row.ari);
            m.push_back(row.nmi);
            u.push_back(row.unsat);
        }
        cell.no_result = cell.dead_ends == cell.runs;
        const auto sa = mean_std(a);
        const auto sm = mean_std(m);
        const auto su = mean_std(u);
        cell.ari_mean = sa.mean;
        cell.ari_std = sa.std;
        cell.nmi_mean = sm.mean;
        cell.nmi_std = sm.std;
        cell.unsat_mean = su.mean;
        cell.unsat_std = su.std;
    }

    // Grand means per (fraction, method) over datasets with results.
    std::vector<std::pair<double, std::string>> keys;
    for (const auto& cell : s.cells) {
        const std::pair<double, std::string> key{cell.fraction, cell.method};
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            keys.push_back(key);
        }
    }
    for (const auto& [fraction, method] : keys) {
        GrandMeanRow g;
        g.fraction = fraction;
        g.method = method;
        for (const auto& cell : s.cells) {
            if (cell.fraction != fraction || cell.method != method ||
                cell.no_result) {
                continue;
            }
            ++g.datasets;
            g.ari_mean += cell.ari_mean;
            g.nmi_mean += cell.nmi_mean;
            g.unsat_mean += cell.unsat_mean;
        }
        if (g.datasets > 0) {
            g.ari_mean /= g.datasets;
            g.nmi_mean /= g.datasets;
            g.unsat_mean /= g.datasets;
        }
        s.grand_means.push_back(g);
    }
    return s;
}

Dataset make_synthetic(std::size_t n, std::size_t u, int k, double noise,
                       Rng& rng) {
    if (n < 1 || u < 1 || k < 1 || static_cast<std::size_t>(k) > n) {
        throw std::invalid_argument("make_synthetic: need n >= k >= 1, u >= 1");
    }
    if (noise < 0.0 || noise > 1.0) {
        throw std::invalid_argument("make_synthetic: noise must be in [0,1]");
    }

    Dataset d;
    d.features = Matrix(n, u);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < u; ++j) {
            d.features.at(i, j) = rng.uniform();
        }
    }
    d.weights.assign(u, 1.0);
    d.feature_names.reserve(u);
    for (std::size_t j = 0; j < u; ++j) {
        d.feature_names.push_back("f" + std::to_string(j + 1));
    }

    // Quantile buckets of the coordinate sum.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = std::accumulate(d.features.row(i).begin(),
                               d.features.row(i).end(), 0.0);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return s[a] < s[b]; });
    std::vector<int> labels(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        labels[order[pos]] =
            static_cast<int>(pos * static_cast<std::size_t>(k) / n);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (noise > 0.0 && rng.uniform() < noise) {
            const int shift = rng.uniform() < 0.5 ? -1 : 1;
            labels[i] = std::clamp(labels[i] + shift, 0, k - 1);
        }
    }
    d.labels = std::move(labels);
    d.label_names.reserve(static_cast<std::size_t>(k));
    for (int c = 1; c <= k; ++c) d.label_names.push_back(std::to_string(c));
    return d;
}

void emit_report(const ExperimentConfig& cfg, const ResultsTable& table,
                 const Summary& summary, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const auto file = [&](const std::string& name) {
        return (fs::path(out_dir) / name).string();
    };

    {
        std::ofstream raw(file("results_raw.csv"));
        if (!raw) throw std::runtime_error("cannot write results_raw.csv");
        raw << "dataset,fraction,method,run,seed,ari,nmi,unsat,iterations,"
               "converged,status\n";
        for (const auto& r : table.rows) {
            raw << r.dataset << ',' << detail::format_double(r.fraction) << ','
                << r.method << ',' << r.run << ',' << r.seed << ','
                << detail::format_double(r.ari) << ','
                << detail::format_double(r.nmi) << ','
                << detail::format_double(r.unsat) << ',' << r.iterations << ','
                << (r.converged ? 1 : 0) << ','
                << (r.dead_end ? "dead-end" : "success") << '\n';
        }
    }

    // Wall-clock lives in its own file; everything else is reproducible
    // byte for byte from (config, seed).
    {
        std::ofstream tm(file("timings.csv"));
        tm << "dataset,fraction,method,run,wall_ms\n";
        for (const auto& r : table.rows) {
            tm << r.dataset << ',' << detail::format_double(r.fraction) << ','
               << r.method << ',' << r.run << ','
               << detail::format_double(r.wall_ms) << '\n';
        }
    }

    {
        std::ofstream sum(file("summary.csv"));
        sum << "dataset,fraction,method,runs,dead_ends,no_result,"
               "ari_mean,ari_std,nmi_mean,nmi_std,unsat_mean,unsat_std\n";
        for (const auto& c : summary.cells) {
            sum << c.dataset << ',' << detail::format_double(c.fraction) << ','
                << c.method << ',' << c.runs << ',' << c.dead_ends << ','
                << (c.no_result ? 1 : 0) << ','
                << detail::format_double(c.ari_mean) << ','
                << detail::format_double(c.ari_std) << ','
                << detail::format_double(c.nmi_mean) << ','
                << detail::format_double(c.nmi_std) << ','
                << detail::format_double(c.unsat_mean) << ','
                << detail::format_double(c.unsat_std) << '\n';
        }
    }

    // Per-measure tables: datasets as rows, methods as columns, one file
    // per constraint fraction, with a grand-mean footer row.
    const std::vector<std::string> measures = {"ari", "nmi", "unsat"};
    std::vector<std::string> datasets;
    for (const auto& c : summary.cells) {
        if (std::find(datasets.begin(), datasets.end(), c.dataset) ==
            datasets.end()) {
            datasets.push_back(c.dataset);
        }
    }
    const auto cell_of = [&](const std::string& ds, double f,
                             const std::string& m) -> const SummaryRow* {
        for (const auto& c : summary.cells) {
            if (c.dataset == ds && c.fraction == f && c.method == m) return &c;
        }
        return nullptr;
    };
    const auto measure_mean = [](const SummaryRow& c,
                                 const std::string& measure) {
        if (measure == "ari") return c.ari_mean;
        if (measure == "nmi") return c.nmi_mean;
        return c.unsat_mean;
    };
    for (const auto& measure : measures) {
        for (double f : cfg.fractions) {
            std::ofstream tab(
                file("table_" + measure + "_" + fraction_tag(f) + ".csv"));
            tab << "dataset";
            for (const auto& m : cfg.methods) tab << ',' << m;
            tab << '\n';
            for (const auto& ds : datasets) {
                tab << ds;
                for (const auto& m : cfg.methods) {
                    const SummaryRow* c = cell_of(ds, f, m);
                    tab << ',';
                    if (!c || c->no_result) {
                        tab << '-';
                    } else {
                        tab << fmt3(measure_mean(*c, measure));
                    }
                }
                tab << '\n';
            }
            tab << "Mean";
            for (const auto& m : cfg.methods) {
                const auto it = std::find_if(
                    summary.grand_means.begin(), summary.grand_means.end(),
                    [&](const GrandMeanRow& g) {
                        return g.fraction == f && g.method == m;
                    });
                tab << ',';
                if (it == summary.grand_means.end() || it->datasets == 0) {
                    tab << '-';
                } else if (measure == "ari") {
                    tab << fmt3(it->ari_mean);
                } else if (measure == "nmi") {
                    tab << fmt3(it->nmi_mean);
                } else {
                    tab << fmt3(it->unsat_mean);
                }
            }
            tab << '\n';
        }
    }

    // Pairwise Bayesian sign tests against the reference method, paired
    // over (dataset, fraction) cell means.
    const bool have_ref = std::find(cfg.methods.begin(), cfg.methods.end(),
                                    kReferenceMethod) != cfg.methods.end();
    if (have_ref) {
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
            const std::string& other = cfg.methods[mi];
            if (other == kReferenceMethod) continue;
            for (std::size_t qi = 0; qi < measures.size(); ++qi) {
                const std::string& measure = measures[qi];
                std::vector<double> a, b;
                for (const auto& ds : datasets) {
                    for (double f : cfg.fractions) {
                        const SummaryRow* co = cell_of(ds, f, other);
                        const SummaryRow* cr =
                            cell_of(ds, f, kReferenceMethod);
                        if (!co || !cr || co->no_result || cr->no_result) {
                            continue;
                        }
                        a.push_back(measure_mean(*co, measure));
                        b.push_back(measure_mean(*cr, measure));
                    }
                }
                if (a.empty()) continue;
                Rng rng(derive_seed(cfg.base_seed, 900 + mi * 10 + qi));
                const SignTestResult res = bayesian_sign_test(
                    a, b, default_rope(measure), rng, cfg.sign_test_samples);
                const std::string stem =
                    "signtest_" + measure + "_pckm_mono_vs_" + other;
                std::ofstream js(file(stem + ".json"));
                js << summary_json(res) << '\n';
                write_sample_cloud_csv(res, file(stem + "_cloud.csv"));
            }
        }
    }

    {
        nlohmann::json manifest;
        manifest["version"] = kVersion;
        manifest["config"] = config_to_json(cfg);
        nlohmann::json seeds = nlohmann::json::array();
        for (int r = 0; r < cfg.repeats; ++r) {
            seeds.push_back(cfg.base_seed + static_cast<std::uint64_t>(r));
        }
        manifest["run_seeds"] = seeds;
        std::ofstream mf(file("manifest.json"));
        mf << manifest.dump(2) << '\n';
    }
}

}  // namespace monoclust
