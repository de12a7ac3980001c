#ifndef HELIOS_BASELINES_HPP
#define HELIOS_BASELINES_HPP

#include <vector>

#include "helios/forward.hpp"

// Classical sparse-to-dense interpolation baselines over angle; real and
// imaginary parts are interpolated independently. No extrapolation outside
// the node span.

namespace helios {

enum class InterpolantKind {
    PiecewiseLinear,
    PiecewiseQuadratic,
    GlobalPolynomial,
};

// nodes must be sorted by strictly increasing angle; >= 2 nodes for PL,
// >= 3 for PQ and the global polynomial. phi must lie inside the node span.
Complex interpolate(InterpolantKind kind, const std::vector<TraceSample>& nodes, double phi);

std::vector<TraceSample> dense_trace(InterpolantKind kind, const std::vector<TraceSample>& nodes,
                                     const std::vector<double>& query_angles);

} // namespace helios

#endif
