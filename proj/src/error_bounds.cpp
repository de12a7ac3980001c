#include "helios/error_bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "helios/special_fn.hpp"

namespace helios {

namespace {

double hankel_modulus(double x) {
    const double j0 = bessel_j0(x), y0 = bessel_y0(x);
    return std::sqrt(j0 * j0 + y0 * y0);
}

} // namespace

double bessel_product_g(double x) {
    return bessel_j0(x) * bessel_j1(x) + bessel_y0(x) * bessel_y1(x);
}

double g_prime(double y, const SingleSourceSetup& setup) {
    if (y < 0.0) throw std::domain_error("g_prime: y must be >= 0");
    const double t0 = setup.k * y;
    const double t1 = setup.k * y + setup.k * setup.xi;
    if (!(t1 > 0.0)) throw std::domain_error("g_prime: ky + k*xi must be > 0");

    const double j0 = bessel_j0(t0);
    const double sgn = (j0 > 0.0) - (j0 < 0.0);
    const double kmod = hankel_modulus(t1);
    const double value = setup.lambda * (-bessel_j1(t0) * sgn / kmod
                        + sgn * j0 * bessel_product_g(t1) / (kmod * kmod * kmod));
    if (!std::isfinite(value)) throw std::runtime_error("g_prime: non-finite intermediate");
    return value;
}

double appendix_value(double z, double lambda) {
    const double x = z + 1.0 / 15.0;
    const double kmod = hankel_modulus(x);
    return -lambda * bessel_j1(1.0 / 15.0) / kmod
           + lambda * bessel_j0(1.0 / 15.0) * bessel_product_g(x) / (kmod * kmod * kmod);
}

double prior_bound(double k) {
    if (!(k > 0.0)) throw std::domain_error("prior_bound: k must be > 0");
    return 1.0 / (15.0 * k);
}

double posterior_root(const SingleSourceSetup& setup, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("posterior_root: tol must be > 0");
    double lo = 1e-12;
    double hi = prior_bound(setup.k) - 1e-12;
    double flo = g_prime(lo, setup);
    double fhi = g_prime(hi, setup);
    if (!(flo > 0.0 && fhi < 0.0))
        throw std::runtime_error("posterior_root: no sign change on (0, 1/(15k)); requires k*xi >= 15");
    for (int i = 0; i < 200 && (hi - lo) > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = g_prime(mid, setup);
        if (fmid > 0.0) { lo = mid; flo = fmid; }
        else            { hi = mid; fhi = fmid; }
    }
    return 0.5 * (lo + hi);
}

} // namespace helios
