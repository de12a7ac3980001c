#include "helios/rng.hpp"

#include <cmath>

namespace helios {

void CounterRng::normal_pair(std::uint64_t counter, double& n0, double& n1) const {
    // u1 in (0, 1] so the log is finite.
    const double u1 = (static_cast<double>(bits(2 * counter) >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform(2 * counter + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double two_pi = 6.283185307179586476925286766559;
    n0 = r * std::cos(two_pi * u2);
    n1 = r * std::sin(two_pi * u2);
}

} // namespace helios
