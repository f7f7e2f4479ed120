#include "monoclust/constraints.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "csv_util.hpp"
#include "json.hpp"

namespace monoclust {

ConstraintSet generate_constraints(const std::vector<int>& labels,
                                   double fraction, Rng& rng) {
    const std::size_t n = labels.size();
    if (fraction <= 0.0 || fraction > 1.0) {
        throw std::invalid_argument(
            "generate_constraints: fraction must be in (0,1]");
    }
    const std::size_t nf =
        static_cast<std::size_t>(fraction * static_cast<double>(n));
    if (nf < 2) {
        throw std::invalid_argument(
            "generate_constraints: fraction yields fewer than 2 instances");
    }
    const std::uint64_t want =
        static_cast<std::uint64_t>(nf) * (nf - 1) / 2;
    const std::uint64_t total =
        static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (want > total) {
        throw std::invalid_argument(
            "generate_constraints: requested pair count exceeds n(n-1)/2");
    }

    ConstraintSet cs;
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(want) * 2);
    while (seen.size() < want) {
        std::size_t a = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
        std::size_t b = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        const std::uint64_t key =
            static_cast<std::uint64_t>(a) * n + b;
        if (!seen.insert(key).second) continue;  // duplicate: redraw
        if (labels[a] == labels[b]) {
            cs.ml.emplace_back(a, b);
        } else {
            cs.cl.emplace_back(a, b);
        }
    }
    return cs;
}

int violation_count(std::size_t i, int candidate_label,
                    const std::vector<int>& current_labels,
                    const ConstraintSet& cs) {
    int v = 0;
    for (const auto& [a, b] : cs.ml) {
        if (a != i && b != i) continue;
        const std::size_t other = (a == i) ? b : a;
        const int l = current_labels[other];
        if (l != kUnassigned && l != candidate_label) ++v;
    }
    for (const auto& [a, b] : cs.cl) {
        if (a != i && b != i) continue;
        const std::size_t other = (a == i) ? b : a;
        const int l = current_labels[other];
        if (l != kUnassigned && l == candidate_label) ++v;
    }
    return v;
}

double unsat(const std::vector<int>& labels, const ConstraintSet& cs) {
    if (cs.empty()) return 0.0;
    std::size_t violated = 0;
    for (const auto& [a, b] : cs.ml) {
        if (labels.at(a) != labels.at(b)) ++violated;
    }
    for (const auto& [a, b] : cs.cl) {
        if (labels.at(a) == labels.at(b)) ++violated;
    }
    return static_cast<double>(violated) / static_cast<double>(cs.size());
}

ConstraintIndex::ConstraintIndex(const ConstraintSet& cs, std::size_t n)
    : ml_partners_(n), cl_partners_(n), empty_(cs.empty()) {
    for (const auto& [a, b] : cs.ml) {
        ml_partners_.at(a).push_back(b);
        ml_partners_.at(b).push_back(a);
    }
    for (const auto& [a, b] : cs.cl) {
        cl_partners_.at(a).push_back(b);
        cl_partners_.at(b).push_back(a);
    }
}

int ConstraintIndex::violation_count(
    std::size_t i, int candidate_label,
    const std::vector<int>& current_labels) const {
    int v = 0;
    for (std::size_t j : ml_partners_[i]) {
        const int l = current_labels[j];
        if (l != kUnassigned && l != candidate_label) ++v;
    }
    for (std::size_t j : cl_partners_[i]) {
        const int l = current_labels[j];
        if (l != kUnassigned && l == candidate_label) ++v;
    }
    return v;
}

void save_constraints(const ConstraintSet& cs, const std::string& path,
                      std::optional<std::uint64_t> seed) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    out << "type,i,j\n";
    for (const auto& [a, b] : cs.ml) out << "ML," << a << ',' << b << '\n';
    for (const auto& [a, b] : cs.cl) out << "CL," << a << ',' << b << '\n';
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
    if (seed) {
        nlohmann::json meta;
        meta["seed"] = *seed;
        meta["ml"] = cs.ml.size();
        meta["cl"] = cs.cl.size();
        std::ofstream ms(path + ".meta.json");
        ms << meta.dump(2) << '\n';
    }
}

ConstraintSet load_constraints(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path);
    }
    ConstraintSet cs;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = detail::split_csv_line(line);
        if (first && cells.size() == 3 && detail::trim(cells[0]) == "type") {
            first = false;
            continue;  // header
        }
        first = false;
        if (cells.size() != 3) {
            throw std::runtime_error("malformed constraint row in " + path);
        }
        const std::string tag = detail::trim(cells[0]);
        std::size_t a = std::stoul(detail::trim(cells[1]));
        std::size_t b = std::stoul(detail::trim(cells[2]));
        if (a == b) {
            throw std::runtime_error("self-pair in " + path);
        }
        if (a > b) std::swap(a, b);
        if (tag == "ML") {
            cs.ml.emplace_back(a, b);
        } else if (tag == "CL") {
            cs.cl.emplace_back(a, b);
        } else {
            throw std::runtime_error("unknown constraint tag '" + tag +
                                     "' in " + path);
        }
    }
    return cs;
}

}  // namespace monoclust
