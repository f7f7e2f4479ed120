#include "monoclust/metrics.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>

#include "monoclust/preference.hpp"

namespace monoclust {

namespace {

std::int64_t choose2(std::int64_t m) { return m * (m - 1) / 2; }

// Compacts arbitrary label values to 0..c-1.
std::vector<int> compact(const std::vector<int>& labels, std::size_t& count) {
    std::map<int, int> ids;
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, _] = ids.try_emplace(labels[i],
                                       static_cast<int>(ids.size()));
        out[i] = it->second;
    }
    count = ids.size();
    return out;
}

}  // namespace

double ari(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("ari: length mismatch");
    }
    const std::size_t n = a.size();
    if (n < 2) throw std::invalid_argument("ari: need at least 2 instances");

    std::size_t ca = 0;
    std::size_t cb = 0;
    const auto ia = compact(a, ca);
    const auto ib = compact(b, cb);

    std::vector<std::int64_t> table(ca * cb, 0);
    std::vector<std::int64_t> row(ca, 0);
    std::vector<std::int64_t> col(cb, 0);
    for (std::size_t i = 0; i < n; ++i) {
        ++table[static_cast<std::size_t>(ia[i]) * cb +
                static_cast<std::size_t>(ib[i])];
        ++row[static_cast<std::size_t>(ia[i])];
        ++col[static_cast<std::size_t>(ib[i])];
    }

    std::int64_t pairs_both = 0;
    for (std::int64_t v : table) pairs_both += choose2(v);
    std::int64_t pairs_a = 0;
    for (std::int64_t v : row) pairs_a += choose2(v);
    std::int64_t pairs_b = 0;
    for (std::int64_t v : col) pairs_b += choose2(v);
    const std::int64_t pairs_total = choose2(static_cast<std::int64_t>(n));

    const double expected = static_cast<double>(pairs_a) *
                            static_cast<double>(pairs_b) /
                            static_cast<double>(pairs_total);
    const double maximum =
        0.5 * (static_cast<double>(pairs_a) + static_cast<double>(pairs_b));
    if (maximum == expected) {
        // Both partitions degenerate the same way (all singletons or one
        // cluster each): total agreement.
        return 1.0;
    }
    return (static_cast<double>(pairs_both) - expected) /
           (maximum - expected);
}

double nmi_index(const std::vector<int>& labels, const Dataset& d) {
    if (labels.size() != d.n()) {
        throw std::invalid_argument("nmi_index: label count mismatch");
    }
    const std::size_t n = d.n();
    std::vector<bool> clashing(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool ij = dominates(d.features.row(i), d.features.row(j));
            const bool ji = dominates(d.features.row(j), d.features.row(i));
            if ((ij && labels[i] < labels[j]) ||
                (ji && labels[j] < labels[i])) {
                clashing[i] = true;
                clashing[j] = true;
            }
        }
    }
    std::size_t count = 0;
    for (bool c : clashing) count += c ? 1 : 0;
    return static_cast<double>(count) / static_cast<double>(n);
}

double nmi_pair_index(const std::vector<int>& labels, const Dataset& d) {
    if (labels.size() != d.n()) {
        throw std::invalid_argument("nmi_pair_index: label count mismatch");
    }
    const std::size_t n = d.n();
    std::size_t comparable = 0;
    std::size_t clashes = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool ij = dominates(d.features.row(i), d.features.row(j));
            const bool ji = dominates(d.features.row(j), d.features.row(i));
            if (!ij && !ji) continue;
            ++comparable;
            if ((ij && labels[i] < labels[j]) ||
                (ji && labels[j] < labels[i])) {
                ++clashes;
            }
        }
    }
    if (comparable == 0) return 0.0;
    return static_cast<double>(clashes) / static_cast<double>(comparable);
}

}  // namespace monoclust
