#pragma once

#include <vector>

#include "monoclust/types.hpp"

namespace monoclust {

// Hubert-Arabie adjusted Rand index between two labelings of the same
// instances. 1 means identical partitions up to label permutation; 0 is
// the chance level. Symmetric and invariant under relabeling either
// argument. Errors on length mismatch or fewer than 2 instances.
double ari(const std::vector<int>& a, const std::vector<int>& b);

// Non-monotonicity index at instance granularity: the fraction of
// instances involved in at least one dominance/label-order clash, i.e.
// some j with dominates(x_i, x_j) and label_i < label_j (or the mirror).
// Labels must be ordinal (class ranks for ground truth, order_clusters
// output for cluster partitions). Exhaustive O(n^2) pair scan.
double nmi_index(const std::vector<int>& labels, const Dataset& d);

// Pair-granularity variant: clashing comparable pairs divided by all
// comparable pairs (0 when nothing is comparable).
double nmi_pair_index(const std::vector<int>& labels, const Dataset& d);

}  // namespace monoclust
