#ifndef HELIOS_EXPERIMENTS_HPP
#define HELIOS_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "helios/baselines.hpp"
#include "helios/dsm.hpp"
#include "helios/operator_net.hpp"

// Scripted end-to-end studies: single-source localization with error bounds,
// frequency-diversity MAE tables, sparse-vs-densified DSM comparisons, and
// the interpolation-scheme sweep. Every report is a pure function of
// (experiment, parameters, seed).

namespace helios {

inline constexpr std::uint64_t kCanonicalSeed = 0xDEADBEEF;

struct ExperimentReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<std::pair<std::string, std::string>> tables; // filename -> CSV blob
    std::vector<std::filesystem::path> artifacts;            // filled by write_report
    std::uint64_t seed = 0;
    double wall_time = 0.0; // seconds
};

// $HELIOS_OUT_DIR when set, otherwise ./out
std::filesystem::path output_root();

// Writes out/<name>/<seed>/{report.txt, *.csv}; report.txt is flat
// `key = value` text. Returns the directory and records artifact paths.
std::filesystem::path write_report(ExperimentReport& report);

enum class DensifyMode {
    Raw,       // feed the sparse sensors straight into DSM
    DeepOnet,
    PiecewiseLinear,
    PiecewiseQuadratic,
    GlobalPolynomial,
};

DensifyMode parse_densify_mode(const std::string& name); // raw/deeponet/pl/pq/poly
std::string densify_mode_name(DensifyMode mode);

// The three partial apertures on the R = 6.5 circle with their bound sensor
// counts (10, 8, 6). index is 1-based.
Aperture standard_aperture(int index);

// Fixed two- and three-source test layouts per aperture; amplitudes drawn
// U(5, 7) from the seed.
SourceConfig test_config(int n_sources, int aperture_index, std::uint64_t seed);

// Single source at (1,0), amplitude 5, R = 7, 51 sensors, k = 4, 5% noise,
// apertures pi/2, pi/3, pi/4: DSM argmax plus both localization bounds.
ExperimentReport run_example_2_1(std::uint64_t seed);

// Three fixed sources, semicircle R = 6.5, M sensors, growing wavenumber
// sets {4}, {4,5}, ..., {4..9}: MAE per set.
ExperimentReport run_example_2_2_2_3(int sensor_count, std::uint64_t seed);

// Fixed test configuration, sparse noisy measurement at k = 4, optional
// densification to 128 query angles, DSM localization and MAE.
// model may be null unless mode == DeepOnet.
ExperimentReport run_section_3(int n_sources, int aperture_index, DensifyMode mode,
                               std::uint64_t seed, const DeepOnetModel* model);

// MAE after densifying the three-source S1 measurement to each point count,
// for every scheme (CSV columns scheme,n_points,mae).
ExperimentReport run_interp_sweep(const std::vector<int>& n_points, std::uint64_t seed,
                                  const DeepOnetModel& model);

} // namespace helios

#endif
