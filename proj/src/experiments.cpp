#include "helios/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "helios/error_bounds.hpp"
#include "helios/rng.hpp"

namespace helios {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kWavenumber = 4.0;
constexpr double kNoiseSigma = 0.05;
constexpr int kDenseQueryPoints = 128;

// Stream identifiers for experiment-level randomness.
constexpr std::uint64_t kStreamAmplitudes = 21;
constexpr std::uint64_t kStreamMeasurementNoise = 22;

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string fmt(Point2 p) {
    // Two decimals: every reported point lives on the h = 0.04 grid, whose
    // nodes carry ~1e-17 representation noise worth hiding.
    auto snap = [](double v) { return std::round(v * 100.0) / 100.0 + 0.0; };
    std::ostringstream os;
    os << std::fixed;
    os.precision(2);
    os << '(' << snap(p.x) << ", " << snap(p.y) << ')';
    return os.str();
}

void add(ExperimentReport& report, const std::string& key, const std::string& value) {
    report.parameters.emplace_back(key, value);
}

std::string indicator_csv(const IndicatorField& field) {
    std::ostringstream os;
    write_indicator_csv(field, os);
    return os.str();
}

std::string trace_csv(const std::vector<TraceSample>& trace) {
    std::ostringstream os;
    os << "angle,re,im\n";
    os.precision(17);
    for (const auto& s : trace) os << s.angle << ',' << s.value.real() << ',' << s.value.imag() << '\n';
    return os.str();
}

std::vector<double> dense_angles(const Aperture& ap, int n) {
    return sensor_angles(Aperture{ap.radius, ap.half_angle, n});
}

std::uint64_t noise_seed(std::uint64_t seed, std::uint64_t index) {
    return CounterRng(seed, kStreamMeasurementNoise).bits(index);
}

std::vector<TraceSample> densify(DensifyMode mode, const std::vector<TraceSample>& sparse,
                                 const Aperture& ap, const DeepOnetModel* model) {
    if (mode == DensifyMode::Raw) return sparse;
    const std::vector<double> angles = dense_angles(ap, kDenseQueryPoints);
    if (mode == DensifyMode::DeepOnet) {
        if (!model) throw std::invalid_argument("densify: DeepOnet mode needs a model");
        std::vector<Complex> u_sen;
        u_sen.reserve(sparse.size());
        for (const auto& s : sparse) u_sen.push_back(s.value);
        return predict_dense(*model, u_sen, angles);
    }
    InterpolantKind kind;
    switch (mode) {
        case DensifyMode::PiecewiseLinear: kind = InterpolantKind::PiecewiseLinear; break;
        case DensifyMode::PiecewiseQuadratic: kind = InterpolantKind::PiecewiseQuadratic; break;
        case DensifyMode::GlobalPolynomial: kind = InterpolantKind::GlobalPolynomial; break;
        default: throw std::logic_error("densify: unreachable");
    }
    return dense_trace(kind, sparse, angles);
}

} // namespace

std::filesystem::path output_root() {
    if (const char* env = std::getenv("HELIOS_OUT_DIR"); env && *env) return env;
    return "out";
}

std::filesystem::path write_report(ExperimentReport& report) {
    const std::filesystem::path dir = output_root() / report.name / std::to_string(report.seed);
    std::filesystem::create_directories(dir);
    report.artifacts.clear();

    const std::filesystem::path report_path = dir / "report.txt";
    {
        std::ofstream os(report_path);
        if (!os) throw std::runtime_error("write_report: cannot open " + report_path.string());
        os << "experiment = " << report.name << '\n';
        os << "seed = " << report.seed << '\n';
        os << "wall_time_seconds = " << report.wall_time << '\n';
        for (const auto& [key, value] : report.parameters) os << key << " = " << value << '\n';
    }
    report.artifacts.push_back(report_path);

    for (const auto& [filename, blob] : report.tables) {
        const std::filesystem::path path = dir / filename;
        std::ofstream os(path);
        if (!os) throw std::runtime_error("write_report: cannot open " + path.string());
        os << blob;
        report.artifacts.push_back(path);
    }
    return dir;
}

DensifyMode parse_densify_mode(const std::string& name) {
    if (name == "raw") return DensifyMode::Raw;
    if (name == "deeponet") return DensifyMode::DeepOnet;
    if (name == "pl") return DensifyMode::PiecewiseLinear;
    if (name == "pq") return DensifyMode::PiecewiseQuadratic;
    if (name == "poly") return DensifyMode::GlobalPolynomial;
    throw std::invalid_argument("unknown densify mode: " + name);
}

std::string densify_mode_name(DensifyMode mode) {
    switch (mode) {
        case DensifyMode::Raw: return "raw";
        case DensifyMode::DeepOnet: return "deeponet";
        case DensifyMode::PiecewiseLinear: return "pl";
        case DensifyMode::PiecewiseQuadratic: return "pq";
        case DensifyMode::GlobalPolynomial: return "poly";
    }
    throw std::logic_error("densify_mode_name: unreachable");
}

Aperture standard_aperture(int index) {
    switch (index) {
        case 1: return {6.5, kPi / 2.0, 10};
        case 2: return {6.5, kPi / 3.0, 8};
        case 3: return {6.5, kPi / 4.0, 6};
        default: throw std::invalid_argument("standard_aperture: index must be 1, 2 or 3");
    }
}

SourceConfig test_config(int n_sources, int aperture_index, std::uint64_t seed) {
    static const Point2 two[3][2] = {
        {{1.37, -0.35}, {-0.83, -1.24}},
        {{-1.09, -1.91}, {-1.92, 0.08}},
        {{-0.26, -1.78}, {-1.18, 1.65}},
    };
    static const Point2 three[3][3] = {
        {{1.61, 1.59}, {0.64, -1.31}, {-1.26, 0.63}},
        {{1.20, -0.59}, {-0.69, 1.96}, {-1.43, -1.73}},
        {{1.05, 1.38}, {-0.66, -1.82}, {-1.65, 0.38}},
    };
    if (aperture_index < 1 || aperture_index > 3)
        throw std::invalid_argument("test_config: aperture index must be 1, 2 or 3");
    if (n_sources != 2 && n_sources != 3)
        throw std::invalid_argument("test_config: layouts exist for 2 or 3 sources");

    const CounterRng rng(seed, kStreamAmplitudes);
    SourceConfig config;
    for (int j = 0; j < n_sources; ++j) {
        const Point2 p = (n_sources == 2) ? two[aperture_index - 1][j] : three[aperture_index - 1][j];
        const std::uint64_t ctr = static_cast<std::uint64_t>(n_sources) * 16 +
                                  static_cast<std::uint64_t>(aperture_index) * 4 + j;
        config.sources.push_back({p, rng.uniform(ctr, 5.0, 7.0)});
    }
    return config;
}

ExperimentReport run_example_2_1(std::uint64_t seed) {
    const Stopwatch timer;
    ExperimentReport report;
    report.name = "example-2-1";
    report.seed = seed;

    const Point2 source{1.0, 0.0};
    const double amplitude = 5.0;
    const double radius = 7.0;
    const SourceConfig config{{{source, amplitude}}};
    add(report, "source", fmt(source));
    add(report, "amplitude", fmt(amplitude));
    add(report, "radius", fmt(radius));
    add(report, "k", fmt(kWavenumber));
    add(report, "sigma", fmt(kNoiseSigma));
    add(report, "sensors", "51");
    add(report, "grid_spacing", "0.04");

    const SamplingGrid grid;
    for (int n : {2, 3, 4}) {
        const Aperture ap{radius, kPi / n, 51};
        const NoiseModel noise{kNoiseSigma, noise_seed(seed, static_cast<std::uint64_t>(n))};
        const TracesPerK traces{{kWavenumber, measure(config, ap, kWavenumber, noise)}};
        const IndicatorField field = indicator_field(traces, ap, grid);
        const auto peaks = find_peaks(field, 1);
        add(report, "argmax_pi_over_" + std::to_string(n), fmt(peaks.at(0)));
        report.tables.emplace_back("indicator_pi_over_" + std::to_string(n) + ".csv",
                                   indicator_csv(field));
    }

    // Bound geometry: xi is the sensor-to-source distance, theta the distance
    // from the measurement circle to the sampling square.
    const double xi = radius - distance(source, {0.0, 0.0});
    const double theta = radius - std::sqrt(8.0);
    add(report, "xi", fmt(xi));
    add(report, "theta", fmt(theta));
    add(report, "prior_bound", fmt(prior_bound(kWavenumber)));
    add(report, "posterior_root",
        fmt(posterior_root({kWavenumber, xi, theta, amplitude}, 1e-12)));

    report.wall_time = timer.seconds();
    return report;
}

ExperimentReport run_example_2_2_2_3(int sensor_count, std::uint64_t seed) {
    const Stopwatch timer;
    ExperimentReport report;
    report.name = "table-1-m" + std::to_string(sensor_count);
    report.seed = seed;

    const std::vector<Point2> truth{{-1.40, 1.05}, {0.16, 1.56}, {1.97, -0.37}};
    SourceConfig config;
    for (const Point2& z : truth) config.sources.push_back({z, 6.0});
    const Aperture ap{6.5, kPi / 2.0, sensor_count};
    add(report, "sensors", std::to_string(sensor_count));
    add(report, "radius", "6.5");
    add(report, "sigma", fmt(kNoiseSigma));
    for (std::size_t j = 0; j < truth.size(); ++j)
        add(report, "source_" + std::to_string(j + 1), fmt(truth[j]));

    const SamplingGrid grid;
    std::ostringstream table;
    table << "set,n_wavenumbers,mae\n";
    for (int j = 1; j <= 6; ++j) {
        TracesPerK traces;
        for (int l = 0; l < j; ++l) {
            const double k = 4.0 + l;
            // One noise realization per (set, wavenumber), shared across
            // sensor counts so M = 10 and M = 128 runs are seed-matched.
            const NoiseModel noise{kNoiseSigma,
                                   noise_seed(seed, static_cast<std::uint64_t>(j) * 8 + l)};
            traces[k] = measure(config, ap, k, noise);
        }
        const IndicatorField field = indicator_field(traces, ap, grid);
        const double err = mae(find_peaks(field, 3), truth);
        table << 'A' << j << ',' << j << ',' << fmt(err) << '\n';
        add(report, "mae_A" + std::to_string(j), fmt(err));
        report.tables.emplace_back("indicator_A" + std::to_string(j) + ".csv", indicator_csv(field));
        report.tables.emplace_back("trace_A" + std::to_string(j) + "_k4.csv",
                                   trace_csv(traces.at(4.0)));
    }
    report.tables.emplace_back("mae_table.csv", table.str());

    report.wall_time = timer.seconds();
    return report;
}

ExperimentReport run_section_3(int n_sources, int aperture_index, DensifyMode mode,
                               std::uint64_t seed, const DeepOnetModel* model) {
    const Stopwatch timer;
    ExperimentReport report;
    report.name = "table-" + std::to_string(n_sources) + "-sources-s" +
                  std::to_string(aperture_index) + "-" + densify_mode_name(mode);
    report.seed = seed;

    if (mode == DensifyMode::DeepOnet && !model)
        throw std::invalid_argument("run_section_3: DeepOnet mode needs a trained model");

    const Aperture ap = standard_aperture(aperture_index);
    const SourceConfig config = test_config(n_sources, aperture_index, seed);
    std::vector<Point2> truth;
    for (const auto& s : config.sources) truth.push_back(s.position);

    add(report, "n_sources", std::to_string(n_sources));
    add(report, "aperture", "s" + std::to_string(aperture_index));
    add(report, "sensors", std::to_string(ap.sensor_count));
    add(report, "mode", densify_mode_name(mode));
    add(report, "k", fmt(kWavenumber));
    add(report, "sigma", fmt(kNoiseSigma));
    for (std::size_t j = 0; j < config.sources.size(); ++j) {
        add(report, "source_" + std::to_string(j + 1), fmt(truth[j]));
        add(report, "amplitude_" + std::to_string(j + 1), fmt(config.sources[j].amplitude));
    }

    const NoiseModel noise{kNoiseSigma, noise_seed(seed, static_cast<std::uint64_t>(n_sources) * 4 +
                                                             aperture_index)};
    const std::vector<TraceSample> sparse = measure(config, ap, kWavenumber, noise);
    const std::vector<TraceSample> dense = densify(mode, sparse, ap, model);

    const TracesPerK traces{{kWavenumber, dense}};
    const IndicatorField field = indicator_field(traces, ap, SamplingGrid{});
    const auto peaks = find_peaks(field, n_sources);
    const double err = mae(peaks, truth);
    for (std::size_t j = 0; j < peaks.size(); ++j)
        add(report, "predicted_" + std::to_string(j + 1), fmt(peaks[j]));
    add(report, "mae", fmt(err));

    report.tables.emplace_back("sparse_trace.csv", trace_csv(sparse));
    report.tables.emplace_back("dense_trace.csv", trace_csv(dense));
    report.tables.emplace_back("reference_trace.csv",
                               trace_csv(measure(config, Aperture{ap.radius, ap.half_angle,
                                                                  kDenseQueryPoints},
                                                 kWavenumber, NoiseModel{0.0, 0})));
    report.tables.emplace_back("indicator.csv", indicator_csv(field));

    report.wall_time = timer.seconds();
    return report;
}

ExperimentReport run_interp_sweep(const std::vector<int>& n_points, std::uint64_t seed,
                                  const DeepOnetModel& model) {
    const Stopwatch timer;
    ExperimentReport report;
    report.name = "interp-sweep";
    report.seed = seed;

    const int n_sources = 3, aperture_index = 1;
    const Aperture ap = standard_aperture(aperture_index);
    const SourceConfig config = test_config(n_sources, aperture_index, seed);
    std::vector<Point2> truth;
    for (const auto& s : config.sources) truth.push_back(s.position);
    add(report, "n_sources", std::to_string(n_sources));
    add(report, "aperture", "s1");
    add(report, "sigma", fmt(kNoiseSigma));

    const NoiseModel noise{kNoiseSigma, noise_seed(seed, static_cast<std::uint64_t>(n_sources) * 4 +
                                                             aperture_index)};
    const std::vector<TraceSample> sparse = measure(config, ap, kWavenumber, noise);
    std::vector<Complex> u_sen;
    for (const auto& s : sparse) u_sen.push_back(s.value);

    std::ostringstream table;
    table << "scheme,n_points,mae\n";
    for (const DensifyMode mode : {DensifyMode::DeepOnet, DensifyMode::PiecewiseLinear,
                                   DensifyMode::PiecewiseQuadratic, DensifyMode::GlobalPolynomial}) {
        for (int n : n_points) {
            if (n < 2) throw std::invalid_argument("run_interp_sweep: need at least 2 points");
            const std::vector<double> angles = dense_angles(ap, n);
            std::vector<TraceSample> dense;
            if (mode == DensifyMode::DeepOnet) {
                dense = predict_dense(model, u_sen, angles);
            } else {
                InterpolantKind kind = mode == DensifyMode::PiecewiseLinear
                                           ? InterpolantKind::PiecewiseLinear
                                           : mode == DensifyMode::PiecewiseQuadratic
                                                 ? InterpolantKind::PiecewiseQuadratic
                                                 : InterpolantKind::GlobalPolynomial;
                dense = dense_trace(kind, sparse, angles);
            }
            const TracesPerK traces{{kWavenumber, dense}};
            const double err =
                mae(find_peaks(indicator_field(traces, ap, SamplingGrid{}), n_sources), truth);
            table << densify_mode_name(mode) << ',' << n << ',' << fmt(err) << '\n';
            add(report, "mae_" + densify_mode_name(mode) + "_" + std::to_string(n), fmt(err));
        }
    }
    report.tables.emplace_back("sweep.csv", table.str());

    report.wall_time = timer.seconds();
    return report;
}

} // namespace helios
