#ifndef HELIOS_FORWARD_HPP
#define HELIOS_FORWARD_HPP

#include <complex>
#include <cstdint>
#include <vector>

// Helmholtz point-source forward model: field evaluation, partial-aperture
// sensor placement, and seeded noisy measurement synthesis.

namespace helios {

using Complex = std::complex<double>;

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(Point2 a, Point2 b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

struct PointSource {
    Point2 position;
    double amplitude = 1.0; // > 0
};

struct SourceConfig {
    std::vector<PointSource> sources;
};

// Sensors on the arc {(R cos t, R sin t) : t in [-half_angle, half_angle]},
// equi-angular with both endpoints included.
struct Aperture {
    double radius = 6.5;
    double half_angle = 1.5707963267948966;
    int sensor_count = 10;

    Point2 sensor_position(double angle) const {
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }
};

struct TraceSample {
    double angle = 0.0;
    Complex value{0.0, 0.0};
};

// Relative circular complex Gaussian noise: eps ~ N_C(0, sigma^2 |u|^2),
// i.e. independent N(0, sigma^2 |u|^2 / 2) per component. sigma = 0 yields
// bit-identical noiseless output regardless of seed.
struct NoiseModel {
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

// Phi_k(x, y) = (i/4) H0^(1)(k |x - y|).
Complex fundamental_solution(Point2 x, Point2 y, double k);

// u(x, k) = -sum_j lambda_j Phi_k(x, z_j).
Complex field_at(const SourceConfig& config, Point2 x, double k);

// Equi-angular sensor angles, endpoints included, strictly increasing.
std::vector<double> sensor_angles(const Aperture& ap);

// One TraceSample per sensor; per-sensor noise is derived from
// (seed, wavenumber, sensor index) so evaluation order is irrelevant.
std::vector<TraceSample> measure(const SourceConfig& config, const Aperture& ap,
                                 double k, const NoiseModel& noise);

} // namespace helios

#endif
