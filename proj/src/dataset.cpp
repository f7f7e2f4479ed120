#include "monoclust/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "csv_util.hpp"

namespace monoclust {

namespace {

bool is_missing_token(const std::string& cell) {
    const std::string t = detail::trim(cell);
    return t.empty() || t == "?";
}

// Ordinal mapping of class tokens: numeric order when every token parses
// as a number (so "10" sorts after "2"), lexicographic otherwise.
std::vector<std::string> sorted_unique_labels(
    const std::vector<std::string>& tokens) {
    std::vector<std::string> uniq = tokens;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());

    bool all_numeric = true;
    std::vector<std::pair<double, std::string>> numeric;
    numeric.reserve(uniq.size());
    for (const auto& s : uniq) {
        double v = 0.0;
        if (!detail::parse_double(s, v)) {
            all_numeric = false;
            break;
        }
        numeric.emplace_back(v, s);
    }
    if (all_numeric) {
        std::sort(numeric.begin(), numeric.end());
        for (std::size_t i = 0; i < numeric.size(); ++i) {
            uniq[i] = numeric[i].second;
        }
    }
    return uniq;
}

}  // namespace

Dataset load_csv(const std::string& path, std::optional<int> label_column,
                 bool has_header) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path);
    }

    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() && in.peek() == std::ifstream::traits_type::eof()) {
            break;  // trailing newline
        }
        rows.push_back(detail::split_csv_line(line));
    }
    if (rows.empty()) {
        throw std::runtime_error("empty file: " + path);
    }

    std::vector<std::string> header;
    if (has_header) {
        header = rows.front();
        rows.erase(rows.begin());
        if (rows.empty()) {
            throw std::runtime_error("no data rows in " + path);
        }
    }

    const std::size_t ncols = rows.front().size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != ncols) {
            throw std::runtime_error("ragged row " + std::to_string(i + 1) +
                                     " in " + path);
        }
    }
    if (has_header && header.size() != ncols) {
        throw std::runtime_error("header width mismatch in " + path);
    }

    std::size_t label_idx = ncols;  // ncols = no label column
    if (label_column.has_value()) {
        int c = *label_column;
        if (c == kLastColumn) c = static_cast<int>(ncols) - 1;
        if (c < 0 || c >= static_cast<int>(ncols)) {
            throw std::runtime_error("label column out of range");
        }
        label_idx = static_cast<std::size_t>(c);
        if (ncols < 2) {
            throw std::runtime_error("dataset needs at least one feature");
        }
    }

    const std::size_t n = rows.size();
    const std::size_t u = label_column.has_value() ? ncols - 1 : ncols;

    Dataset d;
    d.features = Matrix(n, u);
    d.weights.assign(u, 1.0);

    std::vector<std::string> label_tokens;
    if (label_column.has_value()) label_tokens.reserve(n);

    for (std::size_t i = 0; i < n; ++i) {
        std::size_t fj = 0;
        for (std::size_t j = 0; j < ncols; ++j) {
            if (j == label_idx) {
                label_tokens.push_back(detail::trim(rows[i][j]));
                continue;
            }
            double v = 0.0;
            if (is_missing_token(rows[i][j])) {
                v = std::numeric_limits<double>::quiet_NaN();
            } else if (!detail::parse_double(rows[i][j], v)) {
                throw std::runtime_error("non-numeric cell '" + rows[i][j] +
                                         "' at row " + std::to_string(i + 1) +
                                         " in " + path);
            }
            d.features.at(i, fj++) = v;
        }
    }

    d.feature_names.reserve(u);
    if (has_header) {
        for (std::size_t j = 0; j < ncols; ++j) {
            if (j != label_idx) d.feature_names.push_back(detail::trim(header[j]));
        }
    } else {
        for (std::size_t j = 0; j < u; ++j) {
            d.feature_names.push_back("f" + std::to_string(j + 1));
        }
    }

    if (label_column.has_value()) {
        d.label_names = sorted_unique_labels(label_tokens);
        std::map<std::string, int> to_id;
        for (std::size_t i = 0; i < d.label_names.size(); ++i) {
            to_id[d.label_names[i]] = static_cast<int>(i);
        }
        std::vector<int> ids(n);
        for (std::size_t i = 0; i < n; ++i) ids[i] = to_id[label_tokens[i]];
        d.labels = std::move(ids);
    }

    return d;
}

void write_csv(const Dataset& d, const std::string& path, bool with_header) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    const bool labeled = d.labels.has_value();
    if (with_header) {
        for (std::size_t j = 0; j < d.u(); ++j) {
            if (j) out << ',';
            out << d.feature_names[j];
        }
        if (labeled) out << ",class";
        out << '\n';
    }
    for (std::size_t i = 0; i < d.n(); ++i) {
        for (std::size_t j = 0; j < d.u(); ++j) {
            if (j) out << ',';
            const double v = d.features.at(i, j);
            out << (std::isnan(v) ? "?" : detail::format_double(v));
        }
        if (labeled) out << ',' << d.label_names[(*d.labels)[i]];
        out << '\n';
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

Dataset standardize(const Dataset& d) {
    if (d.has_missing()) {
        throw std::invalid_argument("standardize: dataset has missing values");
    }
    Dataset out = d;
    const std::size_t n = d.n();
    for (std::size_t j = 0; j < d.u(); ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += d.features.at(i, j);
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dv = d.features.at(i, j) - mean;
            var += dv * dv;
        }
        var /= static_cast<double>(n);
        const double sd = std::sqrt(var);
        for (std::size_t i = 0; i < n; ++i) {
            out.features.at(i, j) =
                sd > 0.0 ? (d.features.at(i, j) - mean) / sd : 0.0;
        }
    }
    return out;
}

Dataset knn_impute(const Dataset& d, std::size_t k_neighbors) {
    if (k_neighbors == 0) {
        throw std::invalid_argument("knn_impute: k_neighbors must be >= 1");
    }
    Dataset out = d;
    const std::size_t n = d.n();
    const std::size_t u = d.u();

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < u; ++c) {
            if (!std::isnan(d.features.at(i, c))) continue;

            // Donor rows: feature c observed; distance over mutually
            // observed features, +inf when there are none.
            std::vector<std::pair<double, std::size_t>> donors;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || std::isnan(d.features.at(j, c))) continue;
                double dist2 = 0.0;
                bool any = false;
                for (std::size_t q = 0; q < u; ++q) {
                    const double a = d.features.at(i, q);
                    const double b = d.features.at(j, q);
                    if (std::isnan(a) || std::isnan(b)) continue;
                    dist2 += (a - b) * (a - b);
                    any = true;
                }
                donors.emplace_back(
                    any ? dist2 : std::numeric_limits<double>::infinity(), j);
            }
            if (donors.empty()) {
                throw std::runtime_error(
                    "knn_impute: feature " + std::to_string(c) +
                    " is missing in every row");
            }
            std::stable_sort(donors.begin(), donors.end(),
                             [](const auto& a, const auto& b) {
                                 return a.first < b.first;
                             });
            const std::size_t take = std::min(k_neighbors, donors.size());
            double sum = 0.0;
            for (std::size_t t = 0; t < take; ++t) {
                sum += d.features.at(donors[t].second, c);
            }
            out.features.at(i, c) = sum / static_cast<double>(take);
        }
    }
    return out;
}

bool datasets_equal(const Dataset& a, const Dataset& b) {
    if (a.n() != b.n() || a.u() != b.u()) return false;
    for (std::size_t idx = 0; idx < a.features.data.size(); ++idx) {
        const double x = a.features.data[idx];
        const double y = b.features.data[idx];
        if (std::isnan(x) != std::isnan(y)) return false;
        if (!std::isnan(x) && x != y) return false;
    }
    if (a.labels.has_value() != b.labels.has_value()) return false;
    if (a.labels && *a.labels != *b.labels) return false;
    return a.label_names == b.label_names &&
           a.feature_names == b.feature_names && a.weights == b.weights;
}

}  // namespace monoclust
