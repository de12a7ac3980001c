#ifndef HELIOS_DATASET_HPP
#define HELIOS_DATASET_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "helios/forward.hpp"

// Synthetic training data: random source configurations, noisy sparse sensor
// vectors and noiseless dense auxiliary samples, stored as
// (u_sen, phi_aux, u_aux) triplets grouped by configuration.

namespace helios {

struct Box {
    double x_min = -2.0, x_max = 2.0;
    double y_min = -2.0, y_max = 2.0;
};

// Generation constraints: sources keep 0.3 separation from each other and
// 0.05 from the domain boundary so indicator peaks stay resolvable at the
// h = 0.04 grid.
inline constexpr double kMinSourceSeparation = 0.3;
inline constexpr double kBoundaryMargin = 0.05;

struct Triplet {
    std::vector<Complex> u_sen;
    double phi = 0.0;
    Complex u_aux{0.0, 0.0};
};

struct DatasetHeader {
    Aperture aperture;
    double k = 4.0;
    int n_sources = 2;
    int n_cfg = 0;
    int n_aux = 0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    std::uint32_t format_version = 1;
};

struct Dataset {
    DatasetHeader header;
    std::vector<Complex> sensor_values; // n_cfg x M, config-major
    std::vector<double> aux_angles;     // n_cfg x n_aux
    std::vector<Complex> aux_values;    // n_cfg x n_aux

    std::size_t size() const { return aux_angles.size(); }
    int sensor_count() const { return header.aperture.sensor_count; }
    const Complex* config_sensors(std::size_t triplet_index) const {
        return sensor_values.data() + (triplet_index / header.n_aux) * sensor_count();
    }
    Triplet triplet(std::size_t i) const;
};

// N sources uniform in the domain (with separation rules, by rejection),
// amplitudes uniform in [5, 7]. Fully determined by (seed, config_index).
SourceConfig gen_config(std::uint64_t seed, std::uint64_t config_index, int n_sources,
                        const Box& domain = {});

Dataset build_dataset(const Aperture& ap, double k, int n_sources, int n_cfg, int n_aux,
                      double sigma, std::uint64_t seed);

// Single little-endian binary file, magic "HISD", CRC-32 protected payload.
void save_dataset(const Dataset& ds, const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);

// Inspection export: u_re_0,...,u_im_{M-1},phi,aux_re,aux_im
void export_dataset_csv(const Dataset& ds, std::ostream& os);

std::uint32_t crc32(const void* data, std::size_t len, std::uint32_t seed = 0);

} // namespace helios

#endif
