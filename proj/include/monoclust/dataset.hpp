#pragma once

#include <optional>
#include <string>

#include "monoclust/types.hpp"

namespace monoclust {

// Column index used to mark "last column" when loading labeled CSV files.
inline constexpr int kLastColumn = -1;

// Reads a comma-separated file. Empty cells and the literal "?" are
// missing values and load as NaN. When label_column is given (kLastColumn
// selects the last column), that column is removed from the features and
// its tokens are mapped to 0-based ordinal class ids: numerically when
// every token parses as a number, lexicographically otherwise.
// Throws std::runtime_error on unreadable files, ragged rows, or feature
// cells that are neither numeric nor missing.
Dataset load_csv(const std::string& path,
                 std::optional<int> label_column = std::nullopt,
                 bool has_header = true);

// Writes a dataset back to CSV: features in column order, then the label
// column (original tokens) when labels are present. Missing cells are
// written as "?". Values use round-trip precision, so
// load_csv(write_csv(d)) reproduces d exactly.
void write_csv(const Dataset& d, const std::string& path,
               bool with_header = true);

// Maps each feature column to mean 0 and population standard deviation 1
// (divide by n). Constant columns become all-zero. Requires no missing
// values. Idempotent up to floating-point noise.
Dataset standardize(const Dataset& d);

// Replaces each missing cell with the mean of that feature over the
// k_neighbors nearest donor rows. Donors for a cell are the rows where the
// feature is observed; nearness is Euclidean distance over the features
// observed in both rows (ties broken by row index). Falls back to fewer
// donors when not enough exist; a feature missing in every row is an
// error. Observed entries are never modified.
Dataset knn_impute(const Dataset& d, std::size_t k_neighbors = 5);

// Structural equality, treating two NaN cells as equal. Used by tests and
// the round-trip contract.
bool datasets_equal(const Dataset& a, const Dataset& b);

}  // namespace monoclust
