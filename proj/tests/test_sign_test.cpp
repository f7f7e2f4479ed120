#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "doctest.h"
#include "monoclust/sign_test.hpp"

using namespace monoclust;

TEST_CASE("rope must contain zero") {
    CHECK_THROWS_AS(RopeInterval(0.01, 0.02), std::invalid_argument);
    CHECK_THROWS_AS(RopeInterval(-0.02, -0.01), std::invalid_argument);
    CHECK_NOTHROW(RopeInterval(-0.01, 0.01));
    CHECK_NOTHROW(RopeInterval(0.0, 0.0));
}

TEST_CASE("default ropes per measure") {
    CHECK(default_rope("ari").r_min == -0.02);
    CHECK(default_rope("ari").r_max == 0.02);
    CHECK(default_rope("nmi").r_min == -0.01);
    CHECK(default_rope("unsat").r_max == 0.01);
    CHECK_THROWS_AS(default_rope("auc"), std::invalid_argument);
}

TEST_CASE("equal results concentrate the posterior on the rope") {
    std::vector<double> a(30, 0.5);
    Rng rng(1);
    const SignTestResult r =
        bayesian_sign_test(a, a, RopeInterval(-0.01, 0.01), rng, 20000);
    CHECK(r.n_rope == 30);
    CHECK(r.p_rope > 0.95);
    CHECK(r.p_left == 0.0);
    CHECK(r.p_right == 0.0);
}

TEST_CASE("a uniform shift pushes the posterior out of the rope") {
    std::vector<double> a(30), b(30);
    for (int i = 0; i < 30; ++i) {
        b[i] = 0.1 * i;
        a[i] = b[i] + 1.0;
    }
    Rng rng(2);
    const SignTestResult r =
        bayesian_sign_test(a, b, RopeInterval(-0.01, 0.01), rng, 50000);
    CHECK(r.n_right == 30);
    CHECK(r.p_right > 0.95);
}

TEST_CASE("posterior means match the closed-form Dirichlet means") {
    Rng data_rng(3);
    std::vector<double> a(40), b(40);
    for (int i = 0; i < 40; ++i) {
        a[i] = data_rng.uniform();
        b[i] = data_rng.uniform();
    }
    const RopeInterval rope(-0.05, 0.05);
    const double prior = 1.0;
    const std::size_t n_samples = 100000;
    Rng rng(4);
    const SignTestResult r =
        bayesian_sign_test(a, b, rope, rng, n_samples, prior);

    const double total = 40.0 + prior;
    const double tol = 3.0 / std::sqrt(static_cast<double>(n_samples));
    CHECK(std::abs(r.p_left - r.n_left / total) < tol);
    CHECK(std::abs(r.p_rope - (r.n_rope + prior) / total) < tol);
    CHECK(std::abs(r.p_right - r.n_right / total) < tol);
}

TEST_CASE("triplets are normalized barycentric coordinates") {
    Rng data_rng(5);
    std::vector<double> a(15), b(15);
    for (int i = 0; i < 15; ++i) {
        a[i] = data_rng.uniform();
        b[i] = data_rng.uniform();
    }
    Rng rng(6);
    const SignTestResult r =
        bayesian_sign_test(a, b, RopeInterval(-0.1, 0.1), rng, 5000, 0.5);
    REQUIRE(r.samples.size() == 5000);
    for (const auto& t : r.samples) {
        REQUIRE(t[0] >= 0.0);
        REQUIRE(t[1] >= 0.0);
        REQUIRE(t[2] >= 0.0);
        REQUIRE(std::abs(t[0] + t[1] + t[2] - 1.0) < 1e-9);
    }
    CHECK(std::abs(r.p_left + r.p_rope + r.p_right - 1.0) < 1e-9);
}

TEST_CASE("swapping the arguments mirrors the posterior exactly") {
    Rng data_rng(7);
    std::vector<double> a(25), b(25);
    for (int i = 0; i < 25; ++i) {
        a[i] = data_rng.uniform();
        b[i] = data_rng.uniform();
    }
    const RopeInterval rope(-0.05, 0.05);  // symmetric
    Rng r1(99), r2(99);
    const SignTestResult fwd = bayesian_sign_test(a, b, rope, r1, 20000);
    const SignTestResult rev = bayesian_sign_test(b, a, rope, r2, 20000);

    CHECK(fwd.n_left == rev.n_right);
    CHECK(fwd.n_rope == rev.n_rope);
    CHECK(fwd.p_left == rev.p_right);
    CHECK(fwd.p_right == rev.p_left);
    CHECK(fwd.p_rope == rev.p_rope);
    for (std::size_t s = 0; s < fwd.samples.size(); ++s) {
        REQUIRE(fwd.samples[s][0] == rev.samples[s][2]);
        REQUIRE(fwd.samples[s][1] == rev.samples[s][1]);
        REQUIRE(fwd.samples[s][2] == rev.samples[s][0]);
    }
}

TEST_CASE("shifting inside the rope leaves the counts unchanged") {
    std::vector<double> a(20), b(20);
    Rng data_rng(8);
    for (int i = 0; i < 20; ++i) {
        b[i] = data_rng.uniform();
        a[i] = b[i] + 0.002 * data_rng.uniform();  // diffs within [0, 0.002]
    }
    const RopeInterval rope(-0.01, 0.01);
    Rng r1(11), r2(11);
    const SignTestResult base = bayesian_sign_test(a, b, rope, r1, 1000);
    auto shifted = a;
    for (auto& v : shifted) v += 0.005;  // diffs now within [0.005, 0.007]
    const SignTestResult moved = bayesian_sign_test(shifted, b, rope, r2, 1000);
    CHECK(base.n_rope == 20);
    CHECK(moved.n_rope == 20);
    CHECK(base.n_left == moved.n_left);
    CHECK(base.n_right == moved.n_right);
}

TEST_CASE("bad inputs are rejected") {
    Rng rng(12);
    std::vector<double> a{1, 2, 3};
    std::vector<double> b{1, 2};
    CHECK_THROWS_AS(bayesian_sign_test(a, b, RopeInterval(-0.1, 0.1), rng),
                    std::invalid_argument);
    std::vector<double> empty;
    CHECK_THROWS_AS(
        bayesian_sign_test(empty, empty, RopeInterval(-0.1, 0.1), rng),
        std::invalid_argument);
    CHECK_THROWS_AS(
        bayesian_sign_test(a, a, RopeInterval(-0.1, 0.1), rng, 100, -1.0),
        std::invalid_argument);
}

TEST_CASE("sample cloud csv and summary json are written") {
    std::vector<double> a(10, 1.0), b(10, 0.0);
    Rng rng(13);
    const SignTestResult r =
        bayesian_sign_test(a, b, RopeInterval(-0.01, 0.01), rng, 50);
    const auto path =
        (std::filesystem::temp_directory_path() / "monoclust_cloud.csv")
            .string();
    write_sample_cloud_csv(r, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "theta_left,theta_rope,theta_right");
    int lines = 0;
    std::string line;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 50);
    std::filesystem::remove(path);

    const std::string json = summary_json(r);
    CHECK(json.find("\"p_right\"") != std::string::npos);
    CHECK(json.find("\"n_rope\"") != std::string::npos);
}
