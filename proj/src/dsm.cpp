#include "helios/dsm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace helios {

double indicator_at(const TracesPerK& traces, const Aperture& ap, Point2 z) {
    if (traces.empty()) throw std::invalid_argument("indicator_at: no traces");
    if (distance(z, Point2{0.0, 0.0}) >= ap.radius)
        throw std::domain_error("indicator_at: sampling point on or outside the measurement circle");

    Complex numerator{0.0, 0.0};
    double denominator = 0.0;
    for (const auto& [k, trace] : traces) {
        if (trace.empty()) throw std::invalid_argument("indicator_at: empty trace list");
        Complex inner{0.0, 0.0};
        double norm_u2 = 0.0, norm_phi2 = 0.0;
        for (const auto& sample : trace) {
            const Complex phi = fundamental_solution(ap.sensor_position(sample.angle), z, k);
            inner += sample.value * std::conj(phi);
            norm_u2 += std::norm(sample.value);
            norm_phi2 += std::norm(phi);
        }
        numerator += inner;
        denominator += std::sqrt(norm_u2) * std::sqrt(norm_phi2);
    }
    if (denominator < 1e-300) return 0.0;
    return std::abs(numerator) / denominator;
}

IndicatorField indicator_field(const TracesPerK& traces, const Aperture& ap,
                               const SamplingGrid& grid) {
    IndicatorField field;
    field.grid = grid;
    const int nx = grid.nx(), ny = grid.ny();
    field.values.resize(static_cast<std::size_t>(nx) * ny);
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix)
            field.values[static_cast<std::size_t>(iy) * nx + ix] =
                indicator_at(traces, ap, grid.node(ix, iy));
    return field;
}

std::vector<Point2> find_peaks(const IndicatorField& field, int n_peaks) {
    if (n_peaks < 1) throw std::invalid_argument("find_peaks: n_peaks must be >= 1");
    const int nx = field.grid.nx(), ny = field.grid.ny();
    if (nx < 3 || ny < 3) throw std::invalid_argument("find_peaks: field smaller than 3x3");

    struct Peak { int ix, iy; double value; };
    std::vector<Peak> candidates;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const double v = field.at(ix, iy);
            bool is_max = true;
            for (int dy = -1; dy <= 1 && is_max; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const int jx = ix + dx, jy = iy + dy;
                    if (jx < 0 || jx >= nx || jy < 0 || jy >= ny) continue;
                    if (field.at(jx, jy) >= v) { is_max = false; break; }
                }
            }
            if (is_max) candidates.push_back({ix, iy, v});
        }
    }

    std::sort(candidates.begin(), candidates.end(), [](const Peak& a, const Peak& b) {
        if (a.value != b.value) return a.value > b.value;
        if (a.ix != b.ix) return a.ix < b.ix;
        return a.iy < b.iy;
    });

    // Greedy minimum-separation suppression: 5 grid cells.
    std::vector<Peak> kept;
    for (const auto& c : candidates) {
        bool ok = true;
        for (const auto& k : kept) {
            const double dx = c.ix - k.ix, dy = c.iy - k.iy;
            if (std::sqrt(dx * dx + dy * dy) < 5.0) { ok = false; break; }
        }
        if (ok) kept.push_back(c);
        if (static_cast<int>(kept.size()) == n_peaks) break;
    }

    std::vector<Point2> out;
    out.reserve(kept.size());
    for (const auto& p : kept) out.push_back(field.grid.node(p.ix, p.iy));
    return out;
}

double mae(const std::vector<Point2>& predicted, const std::vector<Point2>& truth) {
    if (predicted.size() != truth.size() || predicted.empty())
        throw std::invalid_argument("mae: point lists must be nonempty and of equal length");
    if (predicted.size() > 6)
        throw std::invalid_argument("mae: brute-force assignment supports at most 6 points");

    std::vector<std::size_t> perm(predicted.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < perm.size(); ++i)
            total += distance(predicted[perm[i]], truth[i]);
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best / static_cast<double>(predicted.size());
}

void write_indicator_csv(const IndicatorField& field, std::ostream& os) {
    os << "x,y,value\n";
    os.precision(17);
    const int nx = field.grid.nx(), ny = field.grid.ny();
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const Point2 p = field.grid.node(ix, iy);
            os << p.x << ',' << p.y << ',' << field.at(ix, iy) << '\n';
        }
    }
}

} // namespace helios
