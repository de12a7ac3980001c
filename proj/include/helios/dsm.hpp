#ifndef HELIOS_DSM_HPP
#define HELIOS_DSM_HPP

#include <iosfwd>
#include <map>
#include <vector>

#include "helios/forward.hpp"

// Direct Sampling Method: normalized multi-frequency correlation indicator
// over a sampling grid, peak extraction, and the assignment-based mean
// absolute localization error.

namespace helios {

struct SamplingGrid {
    double x_min = -2.0, x_max = 2.0;
    double y_min = -2.0, y_max = 2.0;
    double spacing = 0.04;

    int nx() const { return static_cast<int>((x_max - x_min) / spacing + 1e-9) + 1; }
    int ny() const { return static_cast<int>((y_max - y_min) / spacing + 1e-9) + 1; }
    Point2 node(int ix, int iy) const { return {x_min + ix * spacing, y_min + iy * spacing}; }
};

struct IndicatorField {
    SamplingGrid grid;
    std::vector<double> values; // row-major: values[iy * nx + ix], all in [0, 1]

    double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * grid.nx() + ix]; }
};

// Measurements keyed by wavenumber; keys strictly increasing and positive.
using TracesPerK = std::map<double, std::vector<TraceSample>>;

// Indicator ratio at one sampling point:
//   |sum_k <u, Phi_k(., z)>| / sum_k ||u|| ||Phi_k(., z)||
// with plain unweighted sensor sums (the uniform arc weight cancels).
// Returns 0 when the denominator underflows (all-zero traces).
double indicator_at(const TracesPerK& traces, const Aperture& ap, Point2 z);

IndicatorField indicator_field(const TracesPerK& traces, const Aperture& ap,
                               const SamplingGrid& grid);

// Strict local maxima (8-neighborhood over existing neighbors), ordered by
// descending value, minimum mutual separation of 5 grid cells, at most
// n_peaks returned. Ties break lexicographically by (x, y).
std::vector<Point2> find_peaks(const IndicatorField& field, int n_peaks);

// Minimum over pairings of the mean Euclidean distance (optimal assignment,
// brute force; requires len <= 6).
double mae(const std::vector<Point2>& predicted, const std::vector<Point2>& truth);

// CSV export: header "x,y,value", row-major, 17 significant digits.
void write_indicator_csv(const IndicatorField& field, std::ostream& os);

} // namespace helios

#endif
