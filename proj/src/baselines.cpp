#include "helios/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace helios {

namespace {

void validate_nodes(InterpolantKind kind, const std::vector<TraceSample>& nodes, double phi) {
    const std::size_t min_nodes = (kind == InterpolantKind::PiecewiseLinear) ? 2 : 3;
    if (nodes.size() < min_nodes)
        throw std::invalid_argument("interpolate: not enough nodes");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i].angle > nodes[i - 1].angle))
            throw std::invalid_argument("interpolate: node angles must be strictly increasing");
    if (phi < nodes.front().angle || phi > nodes.back().angle)
        throw std::domain_error("interpolate: query angle outside the node span (no extrapolation)");
}

// Index j with nodes[j].angle <= phi <= nodes[j+1].angle.
std::size_t bracket(const std::vector<TraceSample>& nodes, double phi) {
    std::size_t j = 0;
    while (j + 2 < nodes.size() && phi > nodes[j + 1].angle) ++j;
    return j;
}

Complex lagrange3(const TraceSample& a, const TraceSample& b, const TraceSample& c, double phi) {
    const double xa = a.angle, xb = b.angle, xc = c.angle;
    const double la = (phi - xb) * (phi - xc) / ((xa - xb) * (xa - xc));
    const double lb = (phi - xa) * (phi - xc) / ((xb - xa) * (xb - xc));
    const double lc = (phi - xa) * (phi - xb) / ((xc - xa) * (xc - xb));
    return la * a.value + lb * b.value + lc * c.value;
}

// Barycentric Lagrange through all nodes (second form).
Complex global_polynomial(const std::vector<TraceSample>& nodes, double phi) {
    const std::size_t n = nodes.size();
    std::vector<double> w(n, 1.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (i != j) w[j] /= (nodes[j].angle - nodes[i].angle);

    Complex num{0.0, 0.0};
    double den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = phi - nodes[j].angle;
        if (d == 0.0) return nodes[j].value;
        const double c = w[j] / d;
        num += c * nodes[j].value;
        den += c;
    }
    return num / den;
}

} // namespace

Complex interpolate(InterpolantKind kind, const std::vector<TraceSample>& nodes, double phi) {
    validate_nodes(kind, nodes, phi);
    switch (kind) {
    case InterpolantKind::PiecewiseLinear: {
        const std::size_t j = bracket(nodes, phi);
        const double t = (phi - nodes[j].angle) / (nodes[j + 1].angle - nodes[j].angle);
        return (1.0 - t) * nodes[j].value + t * nodes[j + 1].value;
    }
    case InterpolantKind::PiecewiseQuadratic: {
        // Interval [j, j+1] uses nodes {j-1, j, j+1}; the leftmost interval
        // shifts to {0, 1, 2}.
        std::size_t j = bracket(nodes, phi);
        if (j == 0) j = 1;
        return lagrange3(nodes[j - 1], nodes[j], nodes[j + 1], phi);
    }
    case InterpolantKind::GlobalPolynomial:
        return global_polynomial(nodes, phi);
    }
    throw std::logic_error("interpolate: unknown kind");
}

std::vector<TraceSample> dense_trace(InterpolantKind kind, const std::vector<TraceSample>& nodes,
                                     const std::vector<double>& query_angles) {
    std::vector<TraceSample> out;
    out.reserve(query_angles.size());
    for (double phi : query_angles)
        out.push_back({phi, interpolate(kind, nodes, phi)});
    return out;
}

} // namespace helios
