#include "helios/forward.hpp"

#include <bit>
#include <stdexcept>

#include "helios/rng.hpp"
#include "helios/special_fn.hpp"

namespace helios {

Complex fundamental_solution(Point2 x, Point2 y, double k) {
    if (!(k > 0.0)) throw std::domain_error("fundamental_solution: k must be > 0");
    const double r = distance(x, y);
    if (r == 0.0) throw std::domain_error("fundamental_solution: evaluation point coincides with source");
    // (i/4)(J0 + i Y0) = -Y0/4 + i J0/4
    const Complex h = hankel1_0(k * r);
    return {-h.imag() / 4.0, h.real() / 4.0};
}

Complex field_at(const SourceConfig& config, Point2 x, double k) {
    Complex u{0.0, 0.0};
    for (const auto& s : config.sources)
        u -= s.amplitude * fundamental_solution(x, s.position, k);
    return u;
}

std::vector<double> sensor_angles(const Aperture& ap) {
    if (ap.sensor_count < 2) throw std::invalid_argument("sensor_angles: need at least 2 sensors");
    if (!(ap.radius > 0.0) || !(ap.half_angle > 0.0))
        throw std::invalid_argument("sensor_angles: invalid aperture geometry");
    std::vector<double> angles(ap.sensor_count);
    const int m = ap.sensor_count - 1;
    for (int i = 0; i <= m; ++i)
        angles[i] = -ap.half_angle + (2.0 * ap.half_angle * i) / m;
    angles.front() = -ap.half_angle;
    angles.back() = ap.half_angle;
    return angles;
}

std::vector<TraceSample> measure(const SourceConfig& config, const Aperture& ap,
                                 double k, const NoiseModel& noise) {
    for (const auto& s : config.sources)
        if (distance(s.position, Point2{0.0, 0.0}) >= ap.radius)
            throw std::invalid_argument("measure: source outside the aperture circle");

    const auto angles = sensor_angles(ap);
    std::vector<TraceSample> out(angles.size());
    const CounterRng rng(noise.seed, CounterRng::mix(std::bit_cast<std::uint64_t>(k)));
    for (std::size_t m = 0; m < angles.size(); ++m) {
        const Complex u = field_at(config, ap.sensor_position(angles[m]), k);
        Complex value = u;
        if (noise.sigma > 0.0) {
            double n_re = 0.0, n_im = 0.0;
            rng.normal_pair(m, n_re, n_im);
            const double s = noise.sigma * std::abs(u) / std::sqrt(2.0);
            value += Complex{s * n_re, s * n_im};
        }
        out[m] = TraceSample{angles[m], value};
    }
    return out;
}

} // namespace helios
