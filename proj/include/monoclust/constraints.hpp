#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "monoclust/rng.hpp"
#include "monoclust/types.hpp"

namespace monoclust {

// Label value marking a not-yet-assigned instance during an EM sweep.
inline constexpr int kUnassigned = -1;

// Must-link / cannot-link instance pairs. Pairs are stored with
// first < second, deduplicated, and never appear in both lists.
struct ConstraintSet {
    std::vector<std::pair<std::size_t, std::size_t>> ml;
    std::vector<std::pair<std::size_t, std::size_t>> cl;

    std::size_t size() const { return ml.size() + cl.size(); }
    bool empty() const { return ml.empty() && cl.empty(); }
};

// Draws floor(fraction*n)*(floor(fraction*n)-1)/2 distinct unordered
// instance pairs uniformly at random (duplicates are redrawn); a pair
// whose labels agree becomes must-link, otherwise cannot-link.
// Errors when floor(fraction*n) < 2 or the pair count exceeds n(n-1)/2.
ConstraintSet generate_constraints(const std::vector<int>& labels,
                                   double fraction, Rng& rng);

// Number of constraints on instance i that assigning it to candidate_label
// would violate given everyone's current labels: must-link partners
// assigned elsewhere plus cannot-link partners assigned there. Partners
// still marked kUnassigned contribute nothing.
int violation_count(std::size_t i, int candidate_label,
                    const std::vector<int>& current_labels,
                    const ConstraintSet& cs);

// Fraction of constraints the labeling violates; 0 for an empty set.
double unsat(const std::vector<int>& labels, const ConstraintSet& cs);

// Per-instance partner lists, the same accounting as violation_count but
// O(partners of i) per query. Used by the EM inner loop.
class ConstraintIndex {
public:
    ConstraintIndex(const ConstraintSet& cs, std::size_t n);

    int violation_count(std::size_t i, int candidate_label,
                        const std::vector<int>& current_labels) const;

    bool empty() const { return empty_; }

private:
    std::vector<std::vector<std::size_t>> ml_partners_;
    std::vector<std::vector<std::size_t>> cl_partners_;
    bool empty_ = true;
};

// CSV with one "ML,i,j" or "CL,i,j" row per constraint, plus a JSON
// sidecar (<path>.meta.json) recording the generator seed when given.
void save_constraints(const ConstraintSet& cs, const std::string& path,
                      std::optional<std::uint64_t> seed = std::nullopt);
ConstraintSet load_constraints(const std::string& path);

}  // namespace monoclust
