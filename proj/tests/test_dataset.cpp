#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "monoclust/dataset.hpp"
#include "monoclust/rng.hpp"

using namespace monoclust;
namespace fs = std::filesystem;

namespace {

// Unique scratch file under the system temp dir, removed on destruction.
struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& name) {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("monoclust_" + std::to_string(counter++) + "_" + name);
    }
    ~TempFile() {
        std::error_code ec;
        fs::remove(path, ec);
        fs::remove(fs::path(path.string() + ".meta.json"), ec);
    }
    std::string str() const { return path.string(); }
};

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

}  // namespace

TEST_CASE("load_csv parses header, features, and labels") {
    TempFile f("basic.csv");
    write_text(f.path, "a,b,class\n1,2,pos\n3,4,neg\n5,6,pos\n");
    const Dataset d = load_csv(f.str(), kLastColumn, true);
    CHECK(d.n() == 3);
    CHECK(d.u() == 2);
    REQUIRE(d.labels.has_value());
    CHECK(d.num_classes() == 2);
    CHECK(d.features.at(2, 1) == 6.0);
    CHECK(d.feature_names == std::vector<std::string>{"a", "b"});
    // lexicographic order: neg < pos
    CHECK(d.label_names == std::vector<std::string>{"neg", "pos"});
    CHECK((*d.labels) == std::vector<int>{1, 0, 1});
}

TEST_CASE("load_csv without label column leaves labels empty") {
    TempFile f("nolabel.csv");
    write_text(f.path, "1,2\n3,4\n");
    const Dataset d = load_csv(f.str(), std::nullopt, false);
    CHECK(d.n() == 2);
    CHECK(d.u() == 2);
    CHECK_FALSE(d.labels.has_value());
    CHECK(d.weights == std::vector<double>{1.0, 1.0});
}

TEST_CASE("numeric class tokens are ordered numerically") {
    TempFile f("numlab.csv");
    write_text(f.path, "1,10\n2,2\n3,1\n");
    const Dataset d = load_csv(f.str(), kLastColumn, false);
    CHECK(d.label_names == std::vector<std::string>{"1", "2", "10"});
    CHECK((*d.labels) == std::vector<int>{2, 1, 0});
}

TEST_CASE("missing cells load as NaN") {
    TempFile f("missing.csv");
    write_text(f.path, "x,y\n1,?\n2,3\n,4\n");
    const Dataset d = load_csv(f.str(), std::nullopt, true);
    CHECK(d.has_missing());
    CHECK(std::isnan(d.features.at(0, 1)));
    CHECK(std::isnan(d.features.at(2, 0)));
    CHECK(d.features.at(1, 0) == 2.0);
    int missing = 0;
    for (double v : d.features.data) missing += std::isnan(v) ? 1 : 0;
    CHECK(missing == 2);
}

TEST_CASE("load_csv error paths") {
    CHECK_THROWS_AS(load_csv("/nonexistent/nowhere.csv"), std::runtime_error);

    TempFile ragged("ragged.csv");
    write_text(ragged.path, "1,2\n3\n");
    CHECK_THROWS_AS(load_csv(ragged.str(), std::nullopt, false),
                    std::runtime_error);

    TempFile bad("bad.csv");
    write_text(bad.path, "1,abc\n2,3\n");
    CHECK_THROWS_AS(load_csv(bad.str(), std::nullopt, false),
                    std::runtime_error);
}

TEST_CASE("standardize maps a column to zero mean and unit deviation") {
    Dataset d;
    d.features = Matrix(3, 1);
    d.features.at(0, 0) = 1;
    d.features.at(1, 0) = 2;
    d.features.at(2, 0) = 3;
    d.weights = {1.0};
    d.feature_names = {"f1"};
    const Dataset z = standardize(d);
    // z-scores with the population deviation sqrt(2/3)
    CHECK(z.features.at(0, 0) == doctest::Approx(-1.224744871391589).epsilon(1e-12));
    CHECK(z.features.at(1, 0) == doctest::Approx(0.0));
    CHECK(z.features.at(2, 0) == doctest::Approx(1.224744871391589).epsilon(1e-12));
}

TEST_CASE("standardize maps constant columns to zero") {
    Dataset d;
    d.features = Matrix(3, 2);
    for (int i = 0; i < 3; ++i) {
        d.features.at(i, 0) = 5.0;
        d.features.at(i, 1) = i;
    }
    d.weights = {1.0, 1.0};
    d.feature_names = {"f1", "f2"};
    const Dataset z = standardize(d);
    for (int i = 0; i < 3; ++i) CHECK(z.features.at(i, 0) == 0.0);
}

TEST_CASE("standardize is idempotent") {
    Rng rng(5);
    Dataset d;
    d.features = Matrix(40, 3);
    for (auto& v : d.features.data) v = 10 * rng.uniform() - 3;
    d.weights = {1, 1, 1};
    d.feature_names = {"a", "b", "c"};
    const Dataset once = standardize(d);
    const Dataset twice = standardize(once);
    for (std::size_t i = 0; i < once.features.data.size(); ++i) {
        REQUIRE(std::abs(once.features.data[i] - twice.features.data[i]) <
                1e-9);
    }
}

TEST_CASE("standardize rejects missing values") {
    Dataset d;
    d.features = Matrix(2, 1);
    d.features.at(0, 0) = std::numeric_limits<double>::quiet_NaN();
    d.features.at(1, 0) = 1.0;
    d.weights = {1.0};
    d.feature_names = {"f1"};
    CHECK_THROWS_AS(standardize(d), std::invalid_argument);
}

TEST_CASE("knn_impute fills a missing cell from the nearest donors") {
    Dataset d;
    d.features = Matrix(4, 2);
    const double rows[4][2] = {
        {std::numeric_limits<double>::quiet_NaN(), 2}, {1, 2}, {3, 2}, {5, 9}};
    for (int i = 0; i < 4; ++i) {
        d.features.at(i, 0) = rows[i][0];
        d.features.at(i, 1) = rows[i][1];
    }
    d.weights = {1, 1};
    d.feature_names = {"x", "y"};
    const Dataset filled = knn_impute(d, 2);
    // Nearest two donors on the observed feature are (1,2) and (3,2).
    CHECK(filled.features.at(0, 0) == doctest::Approx(2.0));
    CHECK_FALSE(filled.has_missing());
}

TEST_CASE("knn_impute leaves complete datasets unchanged") {
    Rng rng(7);
    Dataset d;
    d.features = Matrix(10, 3);
    for (auto& v : d.features.data) v = rng.uniform();
    d.weights = {1, 1, 1};
    d.feature_names = {"a", "b", "c"};
    CHECK(datasets_equal(knn_impute(d, 3), d));
}

TEST_CASE("knn_impute never modifies observed entries") {
    Rng rng(11);
    Dataset d;
    d.features = Matrix(30, 4);
    for (auto& v : d.features.data) v = rng.uniform();
    // Knock out ~15% of cells.
    std::vector<bool> missing(d.features.data.size(), false);
    for (std::size_t idx = 0; idx < d.features.data.size(); ++idx) {
        if (rng.uniform() < 0.15) {
            d.features.data[idx] = std::numeric_limits<double>::quiet_NaN();
            missing[idx] = true;
        }
    }
    d.weights.assign(4, 1.0);
    d.feature_names = {"a", "b", "c", "d"};
    const Dataset filled = knn_impute(d, 5);
    CHECK_FALSE(filled.has_missing());
    for (std::size_t idx = 0; idx < missing.size(); ++idx) {
        if (!missing[idx]) {
            REQUIRE(filled.features.data[idx] == d.features.data[idx]);
        }
    }
}

TEST_CASE("knn_impute rejects a feature missing everywhere") {
    Dataset d;
    d.features = Matrix(3, 2);
    for (int i = 0; i < 3; ++i) {
        d.features.at(i, 0) = std::numeric_limits<double>::quiet_NaN();
        d.features.at(i, 1) = i;
    }
    d.weights = {1, 1};
    d.feature_names = {"x", "y"};
    CHECK_THROWS_AS(knn_impute(d, 2), std::runtime_error);
}

TEST_CASE("csv round-trip reproduces the dataset exactly") {
    Rng rng(13);
    Dataset d;
    d.features = Matrix(25, 3);
    for (auto& v : d.features.data) v = 20 * rng.uniform() - 10;
    d.features.at(4, 1) = std::numeric_limits<double>::quiet_NaN();
    d.features.at(17, 2) = std::numeric_limits<double>::quiet_NaN();
    d.weights = {1, 1, 1};
    d.feature_names = {"a", "b", "c"};
    std::vector<int> labels(25);
    for (auto& l : labels) l = static_cast<int>(rng.uniform_int(0, 2));
    d.label_names = {"1", "2", "3"};
    d.labels = labels;

    TempFile f("roundtrip.csv");
    write_csv(d, f.str(), true);
    const Dataset back = load_csv(f.str(), kLastColumn, true);
    CHECK(datasets_equal(d, back));

    TempFile f2("roundtrip2.csv");
    write_csv(back, f2.str(), true);
    const Dataset again = load_csv(f2.str(), kLastColumn, true);
    CHECK(datasets_equal(back, again));
}
