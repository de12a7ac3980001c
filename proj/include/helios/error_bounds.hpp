#ifndef HELIOS_ERROR_BOUNDS_HPP
#define HELIOS_ERROR_BOUNDS_HPP

// Single-source a-priori and a-posteriori DSM localization error estimates.
// The a-priori bound 1/(15k) holds whenever k*Theta >= 15; the a-posteriori
// estimate is the bisection root of g' on (0, 1/(15k)), which requires
// k*xi >= 15.

namespace helios {

struct SingleSourceSetup {
    double k = 4.0;          // wavenumber
    double xi = 6.0;         // inf sensor-to-source distance
    double theta_dist = 0.0; // dist(measurement arc, sampling domain)
    double lambda = 1.0;     // source amplitude (positive prefactor only)
};

// Derivative of the single-source indicator profile g(y):
//   g'(y) = -lambda J1(ky) sgn(J0(ky)) / K(ky + k xi)
//         +  lambda sgn(J0(ky)) J0(ky) [J0 J1 + Y0 Y1](ky + k xi) / K(ky + k xi)^3
// with K = |H0^(1)|.
double g_prime(double y, const SingleSourceSetup& setup);

// A(z) = -lambda J1(1/15)/K(z + 1/15) + lambda J0(1/15) G(z + 1/15)/K(z + 1/15)^3,
// the value of g'(1/(15k)) as a function of z = k*xi. Strictly negative and
// decreasing for z >= 15.
double appendix_value(double z, double lambda);

// A-priori bound 1/(15k). Callers are responsible for k*Theta >= 15.
double prior_bound(double k);

// Bisection root of g' on (0, 1/(15k)); throws if no sign change is found
// (signals the k*xi < 15 regime).
double posterior_root(const SingleSourceSetup& setup, double tol);

// G(x) = J0(x) J1(x) + Y0(x) Y1(x); positive for all x > 0.
double bessel_product_g(double x);

} // namespace helios

#endif
