#include "monoclust/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "monoclust/preference.hpp"

namespace monoclust {

void EMConfig::validate() const {
    if (k < 1) throw std::invalid_argument("EMConfig: k must be >= 1");
    if (max_iter < 1) {
        throw std::invalid_argument("EMConfig: max_iter must be >= 1");
    }
    if (tol <= 0.0) throw std::invalid_argument("EMConfig: tol must be > 0");
    if (penalty_weight < 0.0) {
        throw std::invalid_argument("EMConfig: penalty_weight must be >= 0");
    }
}

Matrix init_centroids(const Dataset& d, int k, Rng& rng) {
    if (k < 1) throw std::invalid_argument("init_centroids: k must be >= 1");
    if (static_cast<std::size_t>(k) > d.n()) {
        throw std::invalid_argument("init_centroids: k exceeds instance count");
    }
    const auto picks =
        rng.sample_without_replacement(d.n(), static_cast<std::size_t>(k));
    Matrix c(static_cast<std::size_t>(k), d.u());
    for (std::size_t h = 0; h < picks.size(); ++h) {
        const auto src = d.features.row(picks[h]);
        std::copy(src.begin(), src.end(), c.row(h).begin());
    }
    return c;
}

namespace {

enum class DistanceKind { kMono, kSquaredEuclidean };
enum class PenaltyMode { kNone, kSoft, kHard };

double point_distance(DistanceKind kind, std::span<const double> x,
                      std::span<const double> c, std::span<const double> w) {
    if (kind == DistanceKind::kMono) {
        return mono_distance(x, c, w);
    }
    double s = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
        const double diff = x[d] - c[d];
        s += diff * diff;
    }
    return s;
}

// Assignment-step objective: every instance's assignment distance plus
// penalty_weight times the violated-pair count, with centroids fixed.
double assignment_objective(const Dataset& d, const std::vector<int>& labels,
                            const Matrix& centroids, const ConstraintSet& cs,
                            double penalty_weight, DistanceKind kind) {
    double total = 0.0;
    for (std::size_t i = 0; i < d.n(); ++i) {
        total += point_distance(kind, d.features.row(i),
                                centroids.row(static_cast<std::size_t>(labels[i])),
                                d.weights);
    }
    std::size_t violated = 0;
    for (const auto& [a, b] : cs.ml) {
        if (labels[a] != labels[b]) ++violated;
    }
    for (const auto& [a, b] : cs.cl) {
        if (labels[a] == labels[b]) ++violated;
    }
    return total + penalty_weight * static_cast<double>(violated);
}

// Final reported objective. The mono-distance algorithms report the
// hybrid objective (cluster-mean scaling); the Euclidean ones report the
// within-cluster sum of squares plus soft penalties.
double reported_objective(const Dataset& d, const std::vector<int>& labels,
                          const Matrix& centroids, const ConstraintSet& cs,
                          double penalty_weight, DistanceKind kind,
                          PenaltyMode mode, int k) {
    if (kind == DistanceKind::kMono) {
        Partition p{labels, centroids, k, {}};
        return objective(d, p, cs,
                         mode == PenaltyMode::kSoft ? penalty_weight : 0.0);
    }
    double sse = 0.0;
    for (std::size_t i = 0; i < d.n(); ++i) {
        sse += point_distance(kind, d.features.row(i),
                              centroids.row(static_cast<std::size_t>(labels[i])),
                              d.weights);
    }
    if (mode == PenaltyMode::kSoft) {
        std::size_t violated = 0;
        for (const auto& [a, b] : cs.ml) {
            if (labels[a] != labels[b]) ++violated;
        }
        for (const auto& [a, b] : cs.cl) {
            if (labels[a] == labels[b]) ++violated;
        }
        sse += penalty_weight * static_cast<double>(violated);
    }
    return sse;
}

ClusteringOutcome run_em(const Dataset& d, const ConstraintSet& cs,
                         const EMConfig& cfg, DistanceKind kind,
                         PenaltyMode mode, EMTrace* trace) {
    cfg.validate();
    if (d.n() == 0) throw std::invalid_argument("empty dataset");
    if (d.has_missing()) {
        throw std::invalid_argument("dataset has missing values");
    }
    const std::size_t n = d.n();
    const std::size_t k = static_cast<std::size_t>(cfg.k);
    if (k > n) throw std::invalid_argument("k exceeds instance count");

    Rng rng(cfg.seed);
    Matrix centroids = init_centroids(d, cfg.k, rng);
    std::vector<int> labels(n, kUnassigned);
    const ConstraintIndex index(cs, n);
    const double pw = cfg.penalty_weight;

    int iter = 0;
    bool converged = false;
    while (iter < cfg.max_iter) {
        ++iter;
        EMTraceEntry entry;
        if (trace) {
            entry.assign_before =
                iter == 1 ? std::numeric_limits<double>::quiet_NaN()
                          : assignment_objective(d, labels, centroids, cs, pw,
                                                 kind);
        }

        // E-step: sweep in index order, updating labels in place so later
        // instances see the freshest assignments.
        for (std::size_t i = 0; i < n; ++i) {
            int best = -1;
            double best_cost = std::numeric_limits<double>::infinity();
            for (std::size_t h = 0; h < k; ++h) {
                int violations = 0;
                if (mode != PenaltyMode::kNone) {
                    violations = index.violation_count(
                        i, static_cast<int>(h), labels);
                    if (mode == PenaltyMode::kHard && violations > 0) continue;
                }
                double cost =
                    point_distance(kind, d.features.row(i), centroids.row(h),
                                   d.weights);
                if (mode == PenaltyMode::kSoft) {
                    cost += pw * static_cast<double>(violations);
                }
                if (cost < best_cost) {
                    best_cost = cost;
                    best = static_cast<int>(h);
                }
            }
            if (best < 0) {
                // Dead-end: no feasible cluster for instance i.
                if (trace) {
                    entry.assign_after =
                        std::numeric_limits<double>::quiet_NaN();
                    entry.full_objective =
                        std::numeric_limits<double>::quiet_NaN();
                    trace->push_back(entry);
                }
                ClusteringOutcome out;
                out.objective = std::numeric_limits<double>::quiet_NaN();
                out.iterations = iter;
                out.converged = false;
                out.status = ClusteringStatus::kDeadEnd;
                return out;
            }
            labels[i] = best;
        }
        if (trace) {
            entry.assign_after =
                assignment_objective(d, labels, centroids, cs, pw, kind);
        }

        // M-step: centroids become cluster means; a cluster that emptied
        // is reseeded with the instance farthest from its previous
        // centroid under the algorithm's own distance.
        Matrix next(k, d.u(), 0.0);
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto h = static_cast<std::size_t>(labels[i]);
            ++counts[h];
            auto row = next.row(h);
            const auto x = d.features.row(i);
            for (std::size_t j = 0; j < d.u(); ++j) row[j] += x[j];
        }
        std::vector<bool> reseed_used(n, false);
        for (std::size_t h = 0; h < k; ++h) {
            if (counts[h] > 0) {
                auto row = next.row(h);
                for (std::size_t j = 0; j < d.u(); ++j) {
                    row[j] /= static_cast<double>(counts[h]);
                }
                continue;
            }
            std::size_t farthest = n;
            double far_dist = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (reseed_used[i]) continue;
                const double dist = point_distance(
                    kind, d.features.row(i), centroids.row(h), d.weights);
                if (dist > far_dist) {
                    far_dist = dist;
                    farthest = i;
                }
            }
            reseed_used[farthest] = true;
            const auto src = d.features.row(farthest);
            std::copy(src.begin(), src.end(), next.row(h).begin());
        }

        double shift = 0.0;
        for (std::size_t h = 0; h < k; ++h) {
            double s2 = 0.0;
            for (std::size_t j = 0; j < d.u(); ++j) {
                const double diff = next.at(h, j) - centroids.at(h, j);
                s2 += diff * diff;
            }
            shift += std::sqrt(s2);
        }
        shift /= static_cast<double>(k);
        centroids = std::move(next);

        if (trace) {
            entry.full_objective = reported_objective(
                d, labels, centroids, cs, pw, kind, mode, cfg.k);
            entry.centroid_shift = shift;
            trace->push_back(entry);
        }
        if (shift < cfg.tol) {
            converged = true;
            break;
        }
    }

    Partition p;
    p.labels = std::move(labels);
    p.centroids = std::move(centroids);
    p.k = cfg.k;
    p.rank.resize(k);
    std::iota(p.rank.begin(), p.rank.end(), 0);

    ClusteringOutcome out;
    out.objective = reported_objective(d, p.labels, p.centroids, cs, pw, kind,
                                       mode, cfg.k);
    out.partition = order_clusters(p, d);
    out.iterations = iter;
    out.converged = converged;
    out.status = ClusteringStatus::kSuccess;
    return out;
}

}  // namespace

ClusteringOutcome pckm_mono(const Dataset& d, const ConstraintSet& cs,
                            const EMConfig& cfg, EMTrace* trace) {
    return run_em(d, cs, cfg, DistanceKind::kMono, PenaltyMode::kSoft, trace);
}

ClusteringOutcome mono_kmeans(const Dataset& d, const EMConfig& cfg,
                              EMTrace* trace) {
    return run_em(d, ConstraintSet{}, cfg, DistanceKind::kMono,
                  PenaltyMode::kNone, trace);
}

ClusteringOutcome kmeans(const Dataset& d, const EMConfig& cfg,
                         EMTrace* trace) {
    return run_em(d, ConstraintSet{}, cfg, DistanceKind::kSquaredEuclidean,
                  PenaltyMode::kNone, trace);
}

ClusteringOutcome cop_kmeans(const Dataset& d, const ConstraintSet& cs,
                             const EMConfig& cfg, EMTrace* trace) {
    return run_em(d, cs, cfg, DistanceKind::kSquaredEuclidean,
                  PenaltyMode::kHard, trace);
}

ClusteringOutcome pck_means(const Dataset& d, const ConstraintSet& cs,
                            const EMConfig& cfg, EMTrace* trace) {
    return run_em(d, cs, cfg, DistanceKind::kSquaredEuclidean,
                  PenaltyMode::kSoft, trace);
}

Partition order_clusters(const Partition& p, const Dataset& d) {
    const std::size_t k = static_cast<std::size_t>(p.k);
    if (p.centroids.rows != k) {
        throw std::invalid_argument("order_clusters: centroids missing");
    }
    std::vector<std::pair<double, int>> keyed(k);
    for (std::size_t h = 0; h < k; ++h) {
        keyed[h] = {projection(p.centroids.row(h), d.weights),
                    static_cast<int>(h)};
    }
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) {
                         return a.first < b.first;
                     });

    Partition out;
    out.k = p.k;
    out.rank.resize(k);
    std::vector<int> new_label(k);
    out.centroids = Matrix(k, p.centroids.cols);
    for (std::size_t pos = 0; pos < k; ++pos) {
        const int old = keyed[pos].second;
        out.rank[pos] = old;
        new_label[static_cast<std::size_t>(old)] = static_cast<int>(pos);
        const auto src = p.centroids.row(static_cast<std::size_t>(old));
        std::copy(src.begin(), src.end(), out.centroids.row(pos).begin());
    }
    out.labels.resize(p.labels.size());
    for (std::size_t i = 0; i < p.labels.size(); ++i) {
        out.labels[i] = new_label[static_cast<std::size_t>(p.labels[i])];
    }
    return out;
}

double objective(const Dataset& d, const Partition& p, const ConstraintSet& cs,
                 double penalty_weight) {
    double dist_sum = 0.0;
    for (std::size_t i = 0; i < d.n(); ++i) {
        dist_sum += mono_distance(
            d.features.row(i),
            p.centroids.row(static_cast<std::size_t>(p.labels[i])), d.weights);
    }
    std::size_t violated = 0;
    for (const auto& [a, b] : cs.ml) {
        if (p.labels[a] != p.labels[b]) ++violated;
    }
    for (const auto& [a, b] : cs.cl) {
        if (p.labels[a] == p.labels[b]) ++violated;
    }
    return dist_sum / static_cast<double>(p.k) +
           penalty_weight * static_cast<double>(violated);
}

void save_outcome(const ClusteringOutcome& outcome, const std::string& path) {
    nlohmann::json j;
    j["status"] = outcome.success() ? "success" : "dead-end";
    j["iterations"] = outcome.iterations;
    j["converged"] = outcome.converged;
    if (outcome.success()) {
        const Partition& p = *outcome.partition;
        j["objective"] = outcome.objective;
        j["k"] = p.k;
        j["labels"] = p.labels;
        j["rank"] = p.rank;
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t h = 0; h < p.centroids.rows; ++h) {
            rows.push_back(std::vector<double>(p.centroids.row(h).begin(),
                                               p.centroids.row(h).end()));
        }
        j["centroids"] = rows;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

ClusteringOutcome load_outcome(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    nlohmann::json j;
    in >> j;

    ClusteringOutcome out;
    out.iterations = j.at("iterations").get<int>();
    out.converged = j.at("converged").get<bool>();
    if (j.at("status").get<std::string>() == "dead-end") {
        out.status = ClusteringStatus::kDeadEnd;
        out.objective = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    out.status = ClusteringStatus::kSuccess;
    out.objective = j.at("objective").get<double>();
    Partition p;
    p.k = j.at("k").get<int>();
    p.labels = j.at("labels").get<std::vector<int>>();
    p.rank = j.at("rank").get<std::vector<int>>();
    const auto rows = j.at("centroids");
    const std::size_t k = rows.size();
    const std::size_t u = k > 0 ? rows[0].size() : 0;
    p.centroids = Matrix(k, u);
    for (std::size_t h = 0; h < k; ++h) {
        const auto row = rows[h].get<std::vector<double>>();
        std::copy(row.begin(), row.end(), p.centroids.row(h).begin());
    }
    out.partition = std::move(p);
    return out;
}

}  // namespace monoclust
