#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "helios/baselines.hpp"
#include "helios/dataset.hpp"
#include "helios/dsm.hpp"
#include "helios/error_bounds.hpp"
#include "helios/experiments.hpp"
#include "helios/operator_net.hpp"
#include "helios/special_fn.hpp"

namespace py = pybind11;
using namespace helios;

namespace {

using PyTrace = std::vector<std::pair<double, Complex>>;
using PySources = std::vector<std::tuple<double, double, double>>; // (x, y, amplitude)

SourceConfig to_config(const PySources& sources) {
    SourceConfig config;
    for (const auto& [x, y, amp] : sources) config.sources.push_back({{x, y}, amp});
    return config;
}

std::vector<TraceSample> to_trace(const PyTrace& trace) {
    std::vector<TraceSample> out;
    out.reserve(trace.size());
    for (const auto& [angle, value] : trace) out.push_back({angle, value});
    return out;
}

PyTrace from_trace(const std::vector<TraceSample>& trace) {
    PyTrace out;
    out.reserve(trace.size());
    for (const auto& s : trace) out.emplace_back(s.angle, s.value);
    return out;
}

TracesPerK to_traces(const std::map<double, PyTrace>& traces) {
    TracesPerK out;
    for (const auto& [k, trace] : traces) out[k] = to_trace(trace);
    return out;
}

InterpolantKind to_kind(const std::string& name) {
    if (name == "pl") return InterpolantKind::PiecewiseLinear;
    if (name == "pq") return InterpolantKind::PiecewiseQuadratic;
    if (name == "poly") return InterpolantKind::GlobalPolynomial;
    throw std::invalid_argument("interpolant must be pl, pq or poly");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Point-source localization from sparse partial-aperture Helmholtz measurements";

    // Special functions.
    m.def("bessel_j0", &bessel_j0, py::arg("x"));
    m.def("bessel_j1", &bessel_j1, py::arg("x"));
    m.def("bessel_y0", &bessel_y0, py::arg("x"));
    m.def("bessel_y1", &bessel_y1, py::arg("x"));
    m.def("hankel1_0", &hankel1_0, py::arg("x"));

    // Forward model.
    m.def(
        "field_at",
        [](const PySources& sources, double x, double y, double k) {
            return field_at(to_config(sources), {x, y}, k);
        },
        py::arg("sources"), py::arg("x"), py::arg("y"), py::arg("k"),
        "Field of point sources [(x, y, amplitude), ...] at one point.");
    m.def(
        "measure",
        [](const PySources& sources, double radius, double half_angle, int sensors, double k,
           double sigma, std::uint64_t seed) {
            return from_trace(measure(to_config(sources), {radius, half_angle, sensors}, k,
                                      NoiseModel{sigma, seed}));
        },
        py::arg("sources"), py::arg("radius"), py::arg("half_angle"), py::arg("sensors"),
        py::arg("k"), py::arg("sigma") = 0.0, py::arg("seed") = 0,
        "Noisy sensor trace [(angle, complex value), ...] on the aperture arc.");

    // Direct sampling method.
    m.def(
        "indicator_grid",
        [](const std::map<double, PyTrace>& traces, double radius, double half_angle,
           double spacing) {
            SamplingGrid grid;
            grid.spacing = spacing;
            const IndicatorField field =
                indicator_field(to_traces(traces), {radius, half_angle, 2}, grid);
            return py::make_tuple(field.grid.nx(), field.grid.ny(), field.values);
        },
        py::arg("traces"), py::arg("radius"), py::arg("half_angle"), py::arg("spacing") = 0.04,
        "Indicator values, row-major, as (nx, ny, values).");
    m.def(
        "localize",
        [](const std::map<double, PyTrace>& traces, double radius, double half_angle, int n_peaks,
           double spacing) {
            SamplingGrid grid;
            grid.spacing = spacing;
            const IndicatorField field =
                indicator_field(to_traces(traces), {radius, half_angle, 2}, grid);
            std::vector<std::pair<double, double>> out;
            for (const Point2& p : find_peaks(field, n_peaks)) out.emplace_back(p.x, p.y);
            return out;
        },
        py::arg("traces"), py::arg("radius"), py::arg("half_angle"), py::arg("n_peaks"),
        py::arg("spacing") = 0.04, "Peak positions of the sampling indicator.");
    m.def(
        "mae",
        [](const std::vector<std::pair<double, double>>& predicted,
           const std::vector<std::pair<double, double>>& truth) {
            std::vector<Point2> a, b;
            for (const auto& [x, y] : predicted) a.push_back({x, y});
            for (const auto& [x, y] : truth) b.push_back({x, y});
            return mae(a, b);
        },
        py::arg("predicted"), py::arg("truth"),
        "Optimal-assignment mean Euclidean localization error.");

    // Error bounds.
    m.def("prior_bound", &prior_bound, py::arg("k"));
    m.def(
        "posterior_root",
        [](double k, double xi, double theta, double lam, double tol) {
            return posterior_root({k, xi, theta, lam}, tol);
        },
        py::arg("k"), py::arg("xi"), py::arg("theta") = 0.0, py::arg("lam") = 1.0,
        py::arg("tol") = 1e-12);

    // Classical interpolation baselines.
    m.def(
        "densify",
        [](const std::string& kind, const PyTrace& nodes, const std::vector<double>& angles) {
            return from_trace(dense_trace(to_kind(kind), to_trace(nodes), angles));
        },
        py::arg("kind"), py::arg("nodes"), py::arg("angles"),
        "Interpolate a sparse trace onto query angles; kind is pl, pq or poly.");

    // Dataset generation and persistence.
    m.def(
        "generate_dataset",
        [](const std::string& path, double radius, double half_angle, int sensors, double k,
           int n_sources, int n_cfg, int n_aux, double sigma, std::uint64_t seed) {
            const Dataset ds = build_dataset({radius, half_angle, sensors}, k, n_sources, n_cfg,
                                             n_aux, sigma, seed);
            save_dataset(ds, path);
            return ds.size();
        },
        py::arg("path"), py::arg("radius"), py::arg("half_angle"), py::arg("sensors"),
        py::arg("k"), py::arg("n_sources"), py::arg("n_cfg"), py::arg("n_aux"), py::arg("sigma"),
        py::arg("seed"), "Write a dataset file; returns the number of triplets.");

    // Operator training and inference.
    m.def(
        "train_model",
        [](const std::string& dataset_path, const std::string& model_path, int hidden, int q,
           int batch, int iters, std::uint64_t seed) {
            const Dataset ds = load_dataset(dataset_path);
            TrainConfig cfg;
            cfg.batch_size = batch;
            cfg.max_iters = iters;
            cfg.seed = seed;
            const TrainResult result = train(ds, cfg, hidden, q);
            save_model(result.model, model_path);
            return result.loss_history;
        },
        py::arg("dataset_path"), py::arg("model_path"), py::arg("hidden") = 256,
        py::arg("q") = 256, py::arg("batch") = 50000, py::arg("iters") = 10000, py::arg("seed") = 0,
        "Train on a dataset file, save the model, return the loss history.");
    m.def(
        "predict_dense",
        [](const std::string& model_path, const PyTrace& sparse, int n_points) {
            const DeepOnetModel model = load_model(model_path);
            std::vector<Complex> u_sen;
            for (const auto& [angle, value] : sparse) u_sen.push_back(value);
            const auto angles = sensor_angles({6.5, model.half_angle, n_points});
            return from_trace(predict_dense(model, u_sen, angles));
        },
        py::arg("model_path"), py::arg("sparse"), py::arg("n_points") = 128,
        "Densify a sparse trace with a saved model.");
    m.def("model_info", [](const std::string& path) { return model_info(path); }, py::arg("path"));

    // Experiment reproductions.
    m.def(
        "run_example_2_1",
        [](std::uint64_t seed) {
            ExperimentReport report = run_example_2_1(seed);
            write_report(report);
            std::map<std::string, std::string> out;
            for (const auto& [k, v] : report.parameters) out[k] = v;
            return out;
        },
        py::arg("seed") = kCanonicalSeed,
        "Single-source study; writes the report directory and returns its parameters.");

    m.attr("CANONICAL_SEED") = kCanonicalSeed;
}
