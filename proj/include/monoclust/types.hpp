#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace monoclust {

// Dense row-major matrix; the only array shape the toolkit needs.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    std::span<const double> row(std::size_t i) const {
        return {data.data() + i * cols, cols};
    }
    std::span<double> row(std::size_t i) {
        return {data.data() + i * cols, cols};
    }
};

// A feature matrix with optional ground-truth labels and per-feature
// weights. Missing cells are stored as NaN until knn_impute fills them.
// Class labels are kept as 0-based ordinal ids; label_names maps an id
// back to the token found in the source file.
struct Dataset {
    Matrix features;  // n x u
    std::optional<std::vector<int>> labels;
    std::vector<std::string> label_names;
    std::vector<std::string> feature_names;
    std::vector<double> weights;  // w_d in [0,1], uniform 1.0 by default

    std::size_t n() const { return features.rows; }
    std::size_t u() const { return features.cols; }

    bool has_missing() const {
        for (double v : features.data) {
            if (std::isnan(v)) return true;
        }
        return false;
    }

    int num_classes() const {
        return static_cast<int>(label_names.size());
    }
};

// Cluster assignment for a dataset. Labels are 0-based cluster ids; row h
// of centroids is the representative of cluster h. rank lists the original
// cluster ids in ascending order of their weighted coordinate sum, i.e.
// rank[p] is the cluster that order_clusters mapped to ordinal label p;
// it is the identity for a partition that has not been ordered yet.
struct Partition {
    std::vector<int> labels;
    Matrix centroids;
    int k = 0;
    std::vector<int> rank;
};

}  // namespace monoclust
