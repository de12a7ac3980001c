#ifndef HELIOS_SPECIAL_FN_HPP
#define HELIOS_SPECIAL_FN_HPP

#include <complex>

// Real Bessel functions of the first and second kind (orders 0 and 1) and
// the outgoing Hankel function H0^(1) = J0 + i*Y0.
//
// Accuracy contract: relative error <= 1e-10 against the slow series /
// asymptotic oracle in the test tree, for arguments up to 100. Internally
// an ascending series in long double is used for small arguments and the
// Hankel asymptotic expansion beyond the crossover.

namespace helios {

// J0(x), x >= 0.
double bessel_j0(double x);

// J1(x), x >= 0.
double bessel_j1(double x);

// Y0(x), x > 0 (logarithmic singularity at the origin).
double bessel_y0(double x);

// Y1(x), x > 0 (pole ~ -2/(pi x) at the origin).
double bessel_y1(double x);

// H0^(1)(x) = J0(x) + i Y0(x), x > 0.
std::complex<double> hankel1_0(double x);

} // namespace helios

#endif
