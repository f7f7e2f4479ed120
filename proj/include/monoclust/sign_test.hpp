#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "monoclust/rng.hpp"

namespace monoclust {

// Region of practical equivalence; differences inside it count as "no
// practical difference". Must contain zero.
struct RopeInterval {
    double r_min = -0.01;
    double r_max = 0.01;

    RopeInterval() = default;
    RopeInterval(double lo, double hi);
};

// Default ropes per measure: [-0.02, 0.02] for ARI, [-0.01, 0.01] for the
// non-monotonicity index and Unsat.
RopeInterval default_rope(const std::string& measure);

// Posterior of the Bayesian sign test. p_* are the posterior component
// means; samples holds the (theta_left, theta_rope, theta_right)
// barycentric triplets, each summing to 1.
struct SignTestResult {
    double p_left = 0.0;
    double p_rope = 0.0;
    double p_right = 0.0;
    std::size_t n_left = 0;
    std::size_t n_rope = 0;
    std::size_t n_right = 0;
    std::vector<std::array<double, 3>> samples;
};

// Bayesian sign test on paired results. Differences a_i - b_i are counted
// against the rope boundaries, and n_samples triplets are drawn from
// Dirichlet(n_left, n_rope + prior_weight, n_right) — the prior
// pseudo-observation sits entirely on the rope component. Each observation
// contributes one unit-exponential gamma increment to its own component,
// which makes swapping a and b (with a symmetric rope) mirror the result
// exactly, sample by sample.
SignTestResult bayesian_sign_test(const std::vector<double>& a,
                                  const std::vector<double>& b,
                                  const RopeInterval& rope, Rng& rng,
                                  std::size_t n_samples = 100000,
                                  double prior_weight = 1.0);

// One "theta_left,theta_rope,theta_right" row per sample.
void write_sample_cloud_csv(const SignTestResult& r, const std::string& path);

// JSON record {p_left, p_rope, p_right, n_left, n_rope, n_right}.
std::string summary_json(const SignTestResult& r);

}  // namespace monoclust
