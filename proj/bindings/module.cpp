// Python bindings for the monoclust core. Matrices cross the boundary as
// numpy arrays (copied); everything else maps to plain Python types.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <map>
#include <optional>

#include "monoclust/bench.hpp"
#include "monoclust/metrics.hpp"
#include "monoclust/preference.hpp"
#include "monoclust/sign_test.hpp"

namespace py = pybind11;
using namespace monoclust;

namespace {

using NumpyMatrix =
    py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix matrix_from_numpy(const NumpyMatrix& arr) {
    if (arr.ndim() != 2) {
        throw std::invalid_argument("expected a 2-D array");
    }
    Matrix m(static_cast<std::size_t>(arr.shape(0)),
             static_cast<std::size_t>(arr.shape(1)));
    std::copy(arr.data(), arr.data() + m.data.size(), m.data.begin());
    return m;
}

py::array_t<double> matrix_to_numpy(const Matrix& m) {
    py::array_t<double> arr({m.rows, m.cols});
    std::copy(m.data.begin(), m.data.end(), arr.mutable_data());
    return arr;
}

Dataset dataset_from_python(const NumpyMatrix& features,
                            const std::optional<std::vector<int>>& labels,
                            const std::optional<std::vector<double>>& weights) {
    Dataset d;
    d.features = matrix_from_numpy(features);
    d.weights = weights.value_or(std::vector<double>(d.u(), 1.0));
    if (d.weights.size() != d.u()) {
        throw std::invalid_argument("weights length must match feature count");
    }
    for (std::size_t j = 0; j < d.u(); ++j) {
        d.feature_names.push_back("f" + std::to_string(j + 1));
    }
    if (labels) {
        if (labels->size() != d.n()) {
            throw std::invalid_argument("labels length must match row count");
        }
        // Remap arbitrary label values to ordinal ids by numeric order.
        std::map<int, int> ids;
        for (int v : *labels) ids.emplace(v, 0);
        int next = 0;
        for (auto& [value, id] : ids) {
            id = next++;
            d.label_names.push_back(std::to_string(value));
        }
        std::vector<int> mapped(d.n());
        for (std::size_t i = 0; i < d.n(); ++i) {
            mapped[i] = ids[(*labels)[i]];
        }
        d.labels = std::move(mapped);
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Clustering under monotonicity and pairwise constraints";
    m.attr("__version__") = kVersion;

    py::class_<Dataset>(m, "Dataset")
        .def(py::init(&dataset_from_python), py::arg("features"),
             py::arg("labels") = py::none(), py::arg("weights") = py::none())
        .def_property_readonly(
            "features",
            [](const Dataset& d) { return matrix_to_numpy(d.features); })
        .def_property_readonly("labels",
                               [](const Dataset& d) -> py::object {
                                   if (!d.labels) return py::none();
                                   return py::cast(*d.labels);
                               })
        .def_readonly("weights", &Dataset::weights)
        .def_readonly("feature_names", &Dataset::feature_names)
        .def_readonly("label_names", &Dataset::label_names)
        .def_property_readonly("n", &Dataset::n)
        .def_property_readonly("u", &Dataset::u)
        .def_property_readonly("num_classes", &Dataset::num_classes)
        .def("has_missing", &Dataset::has_missing)
        .def("__repr__", [](const Dataset& d) {
            return "Dataset(n=" + std::to_string(d.n()) +
                   ", u=" + std::to_string(d.u()) + ")";
        });

    py::class_<Partition>(m, "Partition")
        .def_readonly("labels", &Partition::labels)
        .def_readonly("k", &Partition::k)
        .def_readonly("rank", &Partition::rank)
        .def_property_readonly("centroids", [](const Partition& p) {
            return matrix_to_numpy(p.centroids);
        });

    py::class_<ConstraintSet>(m, "ConstraintSet")
        .def(py::init<>())
        .def_readwrite("ml", &ConstraintSet::ml)
        .def_readwrite("cl", &ConstraintSet::cl)
        .def("__len__", &ConstraintSet::size);

    py::class_<EMConfig>(m, "EMConfig")
        .def(py::init([](int k, int max_iter, double tol, double penalty_weight,
                         std::uint64_t seed) {
                 EMConfig cfg;
                 cfg.k = k;
                 cfg.max_iter = max_iter;
                 cfg.tol = tol;
                 cfg.penalty_weight = penalty_weight;
                 cfg.seed = seed;
                 cfg.validate();
                 return cfg;
             }),
             py::arg("k"), py::arg("max_iter") = 100, py::arg("tol") = 1e-4,
             py::arg("penalty_weight") = 1.0, py::arg("seed") = 0)
        .def_readwrite("k", &EMConfig::k)
        .def_readwrite("max_iter", &EMConfig::max_iter)
        .def_readwrite("tol", &EMConfig::tol)
        .def_readwrite("penalty_weight", &EMConfig::penalty_weight)
        .def_readwrite("seed", &EMConfig::seed);

    py::class_<ClusteringOutcome>(m, "ClusteringOutcome")
        .def_property_readonly("partition",
                               [](const ClusteringOutcome& o) -> py::object {
                                   if (!o.partition) return py::none();
                                   return py::cast(*o.partition);
                               })
        .def_property_readonly("labels",
                               [](const ClusteringOutcome& o) -> py::object {
                                   if (!o.partition) return py::none();
                                   return py::cast(o.partition->labels);
                               })
        .def_readonly("objective", &ClusteringOutcome::objective)
        .def_readonly("iterations", &ClusteringOutcome::iterations)
        .def_readonly("converged", &ClusteringOutcome::converged)
        .def_property_readonly("status", [](const ClusteringOutcome& o) {
            return o.success() ? "success" : "dead-end";
        });

    py::class_<SignTestResult>(m, "SignTestResult")
        .def_readonly("p_left", &SignTestResult::p_left)
        .def_readonly("p_rope", &SignTestResult::p_rope)
        .def_readonly("p_right", &SignTestResult::p_right)
        .def_readonly("n_left", &SignTestResult::n_left)
        .def_readonly("n_rope", &SignTestResult::n_rope)
        .def_readonly("n_right", &SignTestResult::n_right)
        .def_property_readonly("samples", [](const SignTestResult& r) {
            py::array_t<double> arr({r.samples.size(), std::size_t{3}});
            auto* out = arr.mutable_data();
            for (const auto& t : r.samples) {
                *out++ = t[0];
                *out++ = t[1];
                *out++ = t[2];
            }
            return arr;
        });

    // Dataset handling.
    m.def("load_csv", &load_csv, py::arg("path"),
          py::arg("label_column") = py::none(), py::arg("has_header") = true);
    m.def("write_csv", &write_csv, py::arg("dataset"), py::arg("path"),
          py::arg("with_header") = true);
    m.def("standardize", &standardize, py::arg("dataset"));
    m.def("knn_impute", &knn_impute, py::arg("dataset"),
          py::arg("k_neighbors") = 5);

    // Monotonic geometry over 1-D vectors.
    m.def(
        "preference",
        [](const std::vector<double>& x, const std::vector<double>& y,
           const std::vector<double>& w) { return preference(x, y, w); },
        py::arg("x"), py::arg("y"), py::arg("w"));
    m.def(
        "weighted_l1",
        [](const std::vector<double>& x, const std::vector<double>& y,
           const std::vector<double>& w) { return weighted_l1(x, y, w); },
        py::arg("x"), py::arg("y"), py::arg("w"));
    m.def(
        "mono_distance",
        [](const std::vector<double>& x, const std::vector<double>& y,
           const std::vector<double>& w) { return mono_distance(x, y, w); },
        py::arg("x"), py::arg("y"), py::arg("w"));
    m.def(
        "dominates",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            return dominates(x, y);
        },
        py::arg("x"), py::arg("y"));

    // Constraints.
    m.def(
        "generate_constraints",
        [](const std::vector<int>& labels, double fraction,
           std::uint64_t seed) {
            Rng rng(seed);
            return generate_constraints(labels, fraction, rng);
        },
        py::arg("labels"), py::arg("fraction"), py::arg("seed"));
    m.def("violation_count", &violation_count, py::arg("i"),
          py::arg("candidate_label"), py::arg("current_labels"),
          py::arg("constraints"));
    m.def("unsat", &unsat, py::arg("labels"), py::arg("constraints"));
    m.def("save_constraints", &save_constraints, py::arg("constraints"),
          py::arg("path"), py::arg("seed") = py::none());
    m.def("load_constraints", &load_constraints, py::arg("path"));

    // Clustering.
    m.def(
        "init_centroids",
        [](const Dataset& d, int k, std::uint64_t seed) {
            Rng rng(seed);
            return matrix_to_numpy(init_centroids(d, k, rng));
        },
        py::arg("dataset"), py::arg("k"), py::arg("seed"));
    m.def(
        "pckm_mono",
        [](const Dataset& d, const ConstraintSet& cs, const EMConfig& cfg) {
            return pckm_mono(d, cs, cfg);
        },
        py::arg("dataset"), py::arg("constraints"), py::arg("config"));
    m.def(
        "mono_kmeans",
        [](const Dataset& d, const EMConfig& cfg) {
            return mono_kmeans(d, cfg);
        },
        py::arg("dataset"), py::arg("config"));
    m.def(
        "kmeans",
        [](const Dataset& d, const EMConfig& cfg) { return kmeans(d, cfg); },
        py::arg("dataset"), py::arg("config"));
    m.def(
        "cop_kmeans",
        [](const Dataset& d, const ConstraintSet& cs, const EMConfig& cfg) {
            return cop_kmeans(d, cs, cfg);
        },
        py::arg("dataset"), py::arg("constraints"), py::arg("config"));
    m.def(
        "pck_means",
        [](const Dataset& d, const ConstraintSet& cs, const EMConfig& cfg) {
            return pck_means(d, cs, cfg);
        },
        py::arg("dataset"), py::arg("constraints"), py::arg("config"));
    m.def("order_clusters", &order_clusters, py::arg("partition"),
          py::arg("dataset"));
    m.def("objective", &objective, py::arg("dataset"), py::arg("partition"),
          py::arg("constraints"), py::arg("penalty_weight") = 1.0);

    // Metrics.
    m.def("ari", &ari, py::arg("a"), py::arg("b"));
    m.def("nmi_index", &nmi_index, py::arg("labels"), py::arg("dataset"));
    m.def("nmi_pair_index", &nmi_pair_index, py::arg("labels"),
          py::arg("dataset"));

    // Bayesian sign test.
    m.def(
        "bayesian_sign_test",
        [](const std::vector<double>& a, const std::vector<double>& b,
           std::pair<double, double> rope, std::size_t n_samples,
           double prior_weight, std::uint64_t seed) {
            Rng rng(seed);
            return bayesian_sign_test(a, b,
                                      RopeInterval(rope.first, rope.second),
                                      rng, n_samples, prior_weight);
        },
        py::arg("a"), py::arg("b"),
        py::arg("rope") = std::pair<double, double>(-0.01, 0.01),
        py::arg("n_samples") = 100000, py::arg("prior_weight") = 1.0,
        py::arg("seed") = 1);

    // Synthetic data.
    m.def(
        "make_synthetic",
        [](std::size_t n, std::size_t u, int k, double noise,
           std::uint64_t seed) {
            Rng rng(seed);
            return make_synthetic(n, u, k, noise, rng);
        },
        py::arg("n"), py::arg("u"), py::arg("k"), py::arg("noise") = 0.0,
        py::arg("seed") = 1);
}
