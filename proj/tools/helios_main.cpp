#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "helios/dataset.hpp"
#include "helios/dsm.hpp"
#include "helios/error_bounds.hpp"
#include "helios/experiments.hpp"
#include "helios/operator_net.hpp"

namespace {

using namespace helios;

constexpr double kPi = 3.14159265358979323846;

struct ApertureFlags {
    std::string name;        // s1 / s2 / s3, or empty for explicit values
    double radius = 6.5;
    double half_angle = 0.0; // 0 = take from the named aperture
    int sensors = 0;

    Aperture resolve() const {
        Aperture ap = name.empty() ? Aperture{radius, kPi / 2.0, 10}
                                   : standard_aperture(name == "s1" ? 1 : name == "s2" ? 2 : 3);
        if (name.empty() || radius != 6.5) ap.radius = radius;
        if (half_angle > 0.0) ap.half_angle = half_angle;
        if (sensors > 0) ap.sensor_count = sensors;
        return ap;
    }
};

void add_aperture_flags(CLI::App* cmd, ApertureFlags& flags) {
    cmd->add_option("--aperture", flags.name, "Named aperture: s1 (pi/2, 10 sensors), s2 (pi/3, 8), s3 (pi/4, 6)")
        ->check(CLI::IsMember({"s1", "s2", "s3"}));
    cmd->add_option("--radius", flags.radius, "Measurement circle radius")->capture_default_str();
    cmd->add_option("--half-angle", flags.half_angle, "Aperture half-angle in radians (overrides --aperture)");
    cmd->add_option("--sensors", flags.sensors, "Sensor count (overrides --aperture)");
}

void log_line(const std::string& text) { std::cerr << text << '\n'; }

std::vector<TraceSample> read_trace_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open trace file: " + path);
    std::vector<TraceSample> trace;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("angle", 0) == 0) continue; // header
        std::istringstream row(line);
        TraceSample s;
        char comma;
        double re, im;
        if (!(row >> s.angle >> comma >> re >> comma >> im))
            throw std::runtime_error("malformed trace row in " + path + ": " + line);
        s.value = {re, im};
        trace.push_back(s);
    }
    if (trace.empty()) throw std::runtime_error("empty trace file: " + path);
    return trace;
}

void write_trace_csv(const std::vector<TraceSample>& trace, std::ostream& os) {
    os << "angle,re,im\n";
    os.precision(17);
    for (const auto& s : trace) os << s.angle << ',' << s.value.real() << ',' << s.value.imag() << '\n';
}

void print_report(const ExperimentReport& report) {
    std::filesystem::path dir;
    // write_report needs a mutable report to record artifacts
    ExperimentReport copy = report;
    dir = write_report(copy);
    std::cout << "report = " << dir.string() << '\n';
    for (const auto& [key, value] : copy.parameters)
        if (key.rfind("mae", 0) == 0 || key.rfind("argmax", 0) == 0 ||
            key.rfind("prior", 0) == 0 || key.rfind("posterior", 0) == 0 ||
            key.rfind("predicted", 0) == 0)
            std::cout << key << " = " << value << '\n';
}

const DeepOnetModel* model_for(int aperture_index, const std::string paths[3],
                               std::vector<DeepOnetModel>& storage) {
    const std::string& path = paths[aperture_index - 1];
    if (path.empty()) return nullptr;
    storage.push_back(load_model(path));
    return &storage.back();
}

int run(int argc, char** argv) {
    CLI::App app{"Point-source localization from sparse partial-aperture Helmholtz measurements"};
    app.require_subcommand(1);
    app.set_config("--config")->description("Flat key = value config file, # comments");

    std::uint64_t seed = kCanonicalSeed;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    app.add_option("--seed", seed, "Random seed (echoed in all outputs)")->capture_default_str();
    app.add_option("--threads", threads, "Worker-thread cap (results are thread-count independent)")
        ->capture_default_str();

    // ---- gen-data ----
    auto* gen = app.add_subcommand("gen-data", "Generate a training dataset file");
    ApertureFlags gen_ap;
    add_aperture_flags(gen, gen_ap);
    int gen_sources = 2, gen_cfg = 100, gen_aux = 128;
    double gen_k = 4.0, gen_sigma = 0.05;
    std::string gen_out;
    gen->add_option("--n-sources", gen_sources)->capture_default_str();
    gen->add_option("--n-cfg", gen_cfg, "Number of source configurations")->capture_default_str();
    gen->add_option("--n-aux", gen_aux, "Auxiliary samples per configuration")->capture_default_str();
    gen->add_option("--k", gen_k, "Wavenumber")->capture_default_str();
    gen->add_option("--sigma", gen_sigma, "Relative sensor noise level")->capture_default_str();
    gen->add_option("--out", gen_out, "Output dataset path")->required();

    // ---- train ----
    auto* train_cmd = app.add_subcommand("train", "Train the branch-trunk operator on a dataset");
    std::string train_data, train_out, train_loss_out;
    int train_hidden = 256, train_q = 256;
    TrainConfig tc;
    train_cmd->add_option("--data", train_data, "Dataset path")->required();
    train_cmd->add_option("--out", train_out, "Output model path")->required();
    train_cmd->add_option("--loss-out", train_loss_out, "Optional loss-history CSV path");
    train_cmd->add_option("--hidden", train_hidden)->capture_default_str();
    train_cmd->add_option("--q", train_q, "Embedding width")->capture_default_str();
    train_cmd->add_option("--batch", tc.batch_size)->capture_default_str();
    train_cmd->add_option("--iters", tc.max_iters)->capture_default_str();
    train_cmd->add_option("--lr-max", tc.lr_max)->capture_default_str();
    train_cmd->add_option("--lr-min", tc.lr_min)->capture_default_str();
    train_cmd->add_option("--weight-decay", tc.weight_decay)->capture_default_str();
    train_cmd->add_option("--t0", tc.t0, "First cosine period")->capture_default_str();
    train_cmd->add_option("--t-mult", tc.t_mult, "Period growth factor")->capture_default_str();

    // ---- predict ----
    auto* predict_cmd = app.add_subcommand("predict", "Densify a sparse trace with a trained model");
    std::string pred_model, pred_trace, pred_out;
    int pred_points = 128;
    predict_cmd->add_option("--model", pred_model)->required();
    predict_cmd->add_option("--trace", pred_trace, "Sparse trace CSV (angle,re,im)")->required();
    predict_cmd->add_option("--n-points", pred_points)->capture_default_str();
    predict_cmd->add_option("--out", pred_out, "Output CSV (default: standard output)");

    // ---- dsm ----
    auto* dsm_cmd = app.add_subcommand("dsm", "Run the sampling-grid indicator on measured traces");
    ApertureFlags dsm_ap;
    add_aperture_flags(dsm_cmd, dsm_ap);
    std::vector<std::string> dsm_traces;
    std::vector<double> dsm_ks;
    int dsm_peaks = 1;
    double dsm_h = 0.04;
    std::string dsm_indicator_out;
    dsm_cmd->add_option("--trace", dsm_traces, "Trace CSV per wavenumber")->required();
    dsm_cmd->add_option("--k", dsm_ks, "Wavenumber per trace")->required();
    dsm_cmd->add_option("--n-peaks", dsm_peaks)->capture_default_str();
    dsm_cmd->add_option("--grid-h", dsm_h, "Sampling-grid spacing")->capture_default_str();
    dsm_cmd->add_option("--indicator-out", dsm_indicator_out, "Optional indicator CSV path");

    // ---- bounds ----
    auto* bounds_cmd = app.add_subcommand("bounds", "Single-source localization error bounds");
    double b_k = 4.0, b_xi = 6.0, b_theta = 0.0, b_lambda = 1.0;
    bounds_cmd->add_option("--k", b_k, "Wavenumber")->required();
    bounds_cmd->add_option("--xi", b_xi, "Sensor-to-source distance")->required();
    bounds_cmd->add_option("--theta", b_theta, "Distance from measurement arc to sampling domain");
    bounds_cmd->add_option("--lambda", b_lambda, "Source amplitude")->capture_default_str();

    // ---- experiment reproductions ----
    auto* ex21 = app.add_subcommand("example-2-1", "Single-source study with error bounds");
    auto* table1 = app.add_subcommand("table-1", "Frequency-diversity MAE table (M = 10 and 128)");
    auto* table2 = app.add_subcommand("table-2", "Two-source sparse vs densified localization");
    auto* table3 = app.add_subcommand("table-3", "Three-source sparse vs densified localization");
    std::string t2_models[3], t3_models[3];
    for (int i = 0; i < 3; ++i) {
        const std::string flag = "--model-s" + std::to_string(i + 1);
        table2->add_option(flag, t2_models[i], "Trained model for aperture s" + std::to_string(i + 1));
        table3->add_option(flag, t3_models[i], "Trained model for aperture s" + std::to_string(i + 1));
    }

    auto* sweep = app.add_subcommand("interp-sweep", "MAE vs densification point count per scheme");
    std::string sweep_model;
    std::vector<int> sweep_points{16, 32, 48, 64, 80, 96, 112, 128};
    sweep->add_option("--model", sweep_model)->required();
    sweep->add_option("--points", sweep_points, "Point counts to sweep")->capture_default_str();

    auto* info = app.add_subcommand("model-info", "Print a model file's header");
    std::string info_path;
    info->add_option("model", info_path, "Model path")->required();

    // Let global flags (--seed, --threads, --config) appear after the
    // subcommand name as well.
    for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 1;
    }

    log_line("seed = " + std::to_string(seed));
    log_line("threads = " + std::to_string(threads));

    if (gen->parsed()) {
        const Aperture ap = gen_ap.resolve();
        log_line("gen-data: sources=" + std::to_string(gen_sources) + " cfg=" +
                 std::to_string(gen_cfg) + " aux=" + std::to_string(gen_aux) + " sensors=" +
                 std::to_string(ap.sensor_count));
        const Dataset ds = build_dataset(ap, gen_k, gen_sources, gen_cfg, gen_aux, gen_sigma, seed);
        save_dataset(ds, gen_out);
        log_line("wrote " + gen_out + " (" + std::to_string(ds.size()) + " triplets)");
    } else if (train_cmd->parsed()) {
        tc.seed = seed;
        const Dataset ds = load_dataset(train_data);
        log_line("train: " + std::to_string(ds.size()) + " triplets, hidden=" +
                 std::to_string(train_hidden) + " q=" + std::to_string(train_q) + " batch=" +
                 std::to_string(tc.batch_size) + " iters=" + std::to_string(tc.max_iters));
        const TrainResult result = train(ds, tc, train_hidden, train_q);
        save_model(result.model, train_out);
        log_line("final loss = " + std::to_string(result.loss_history.back()));
        log_line("wrote " + train_out);
        if (!train_loss_out.empty()) {
            std::ofstream os(train_loss_out);
            os << "iteration,loss\n";
            os.precision(17);
            for (std::size_t i = 0; i < result.loss_history.size(); ++i)
                os << i << ',' << result.loss_history[i] << '\n';
        }
    } else if (predict_cmd->parsed()) {
        const DeepOnetModel model = load_model(pred_model);
        const auto sparse = read_trace_csv(pred_trace);
        std::vector<Complex> u_sen;
        for (const auto& s : sparse) u_sen.push_back(s.value);
        const auto angles =
            sensor_angles(Aperture{6.5, model.half_angle, pred_points});
        const auto dense = predict_dense(model, u_sen, angles);
        if (pred_out.empty()) {
            write_trace_csv(dense, std::cout);
        } else {
            std::ofstream os(pred_out);
            if (!os) throw std::runtime_error("cannot open " + pred_out);
            write_trace_csv(dense, os);
            log_line("wrote " + pred_out);
        }
    } else if (dsm_cmd->parsed()) {
        if (dsm_traces.size() != dsm_ks.size())
            throw std::runtime_error("dsm: need one --k per --trace");
        TracesPerK traces;
        for (std::size_t i = 0; i < dsm_traces.size(); ++i)
            traces[dsm_ks[i]] = read_trace_csv(dsm_traces[i]);
        const Aperture ap = dsm_ap.resolve();
        SamplingGrid grid;
        grid.spacing = dsm_h;
        const IndicatorField field = indicator_field(traces, ap, grid);
        if (!dsm_indicator_out.empty()) {
            std::ofstream os(dsm_indicator_out);
            if (!os) throw std::runtime_error("cannot open " + dsm_indicator_out);
            write_indicator_csv(field, os);
            log_line("wrote " + dsm_indicator_out);
        }
        std::cout.precision(6);
        for (const Point2& p : find_peaks(field, dsm_peaks))
            std::cout << "peak = (" << p.x << ", " << p.y << ")\n";
    } else if (bounds_cmd->parsed()) {
        std::cout.precision(10);
        std::cout << "prior_bound = " << prior_bound(b_k) << '\n';
        std::cout << "posterior_root = "
                  << posterior_root({b_k, b_xi, b_theta, b_lambda}, 1e-12) << '\n';
    } else if (ex21->parsed()) {
        print_report(run_example_2_1(seed));
    } else if (table1->parsed()) {
        print_report(run_example_2_2_2_3(10, seed));
        print_report(run_example_2_2_2_3(128, seed));
    } else if (table2->parsed() || table3->parsed()) {
        const int n_sources = table2->parsed() ? 2 : 3;
        const std::string* paths = table2->parsed() ? t2_models : t3_models;
        for (int q = 1; q <= 3; ++q) {
            std::vector<DeepOnetModel> storage;
            print_report(run_section_3(n_sources, q, DensifyMode::Raw, seed, nullptr));
            if (const DeepOnetModel* model = model_for(q, paths, storage))
                print_report(run_section_3(n_sources, q, DensifyMode::DeepOnet, seed, model));
        }
    } else if (sweep->parsed()) {
        const DeepOnetModel model = load_model(sweep_model);
        print_report(run_interp_sweep(sweep_points, seed, model));
    } else if (info->parsed()) {
        std::cout << model_info(info_path);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
