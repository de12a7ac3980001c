#ifndef HELIOS_TEST_ORACLES_HPP
#define HELIOS_TEST_ORACLES_HPP

// Slow, independent reference evaluations of J0, J1, Y0, Y1 used only by the
// tests. Small arguments: 60-term ascending series in quad precision
// (__float128), accurate to ~1e-24 absolute for x <= 26 — this keeps the
// reference trustworthy even right next to the Bessel zeros, where relative
// comparisons are most demanding. Large arguments: amplitude-phase asymptotic
// form in long double with 10 explicit P/Q terms (truncation below 1e-22 at
// x = 26, smaller beyond).
// Kept deliberately separate from the library implementation: real P/Q sums
// with explicit coefficient products instead of the complex recursion, higher
// working precision, and a different series/asymptotic crossover.

#include <cmath>

namespace helios::oracle {

#if defined(__SIZEOF_FLOAT128__)
using Quad = __float128;
#else
using Quad = long double;
#endif

inline constexpr long double PI_L = 3.14159265358979323846264338327950288L;
inline constexpr long double GAMMA_L = 0.57721566490153286060651209008240243L;
// pi and Euler-Mascheroni split into high/low doubles so the quad-precision
// constants do not depend on quadmath literals.
inline const Quad PI_Q = Quad(3.141592653589793116e+00) + Quad(1.224646799147353207e-16);
inline const Quad GAMMA_Q = Quad(5.772156649015328655e-01) + Quad(-4.942915152430644124e-18);
inline constexpr double ORACLE_SPLIT = 26.0;
inline constexpr int SERIES_TERMS = 60;

// log(x/2) with quad-precision leading behavior: log2(hi) in long double plus
// a quad-evaluated log1p correction, good to ~1e-25 absolute on (0, 26].
inline Quad log_half_q(double x) {
    const long double lead = std::log(static_cast<long double>(x) / 2.0L);
    // Refine by one Newton step of exp: log(y) ≈ lead + (y - exp(lead))/exp(lead).
    const long double e = std::exp(lead);
    const Quad correction = (Quad(x) / Quad(2.0) - Quad(e)) / Quad(e);
    return Quad(lead) + correction;
}

inline Quad series_j0_q(Quad x) {
    const Quad q = x * x / Quad(4.0);
    Quad sum = 0, qpow = 1, fact = 1;
    for (int m = 0; m <= SERIES_TERMS; ++m) {
        if (m > 0) { fact *= Quad(m); qpow *= q; }
        const Quad sign = (m % 2 == 0) ? Quad(1) : Quad(-1);
        sum += sign * qpow / (fact * fact);
    }
    return sum;
}

inline Quad series_j1_q(Quad x) {
    const Quad q = x * x / Quad(4.0);
    Quad sum = 0, qpow = 1, fact = 1, fact1 = 1;
    for (int m = 0; m <= SERIES_TERMS; ++m) {
        if (m > 0) { fact *= Quad(m); qpow *= q; }
        fact1 = fact * Quad(m + 1);
        const Quad sign = (m % 2 == 0) ? Quad(1) : Quad(-1);
        sum += sign * qpow / (fact * fact1);
    }
    return (x / Quad(2.0)) * sum;
}

inline Quad harmonic_q(int m) {
    Quad h = 0;
    for (int j = 1; j <= m; ++j) h += Quad(1) / Quad(j);
    return h;
}

inline Quad series_y0_q(double xd) {
    const Quad x = Quad(xd);
    const Quad q = x * x / Quad(4.0);
    Quad sum = 0, qpow = 1, fact = 1;
    for (int m = 1; m <= SERIES_TERMS; ++m) {
        fact *= Quad(m); qpow *= q;
        const Quad sign = (m % 2 == 0) ? Quad(-1) : Quad(1);
        sum += sign * harmonic_q(m) * qpow / (fact * fact);
    }
    return (Quad(2) / PI_Q) * ((log_half_q(xd) + GAMMA_Q) * series_j0_q(x) + sum);
}

inline Quad series_y1_q(double xd) {
    const Quad x = Quad(xd);
    const Quad q = x * x / Quad(4.0);
    Quad sum = 0, qpow = x / Quad(2.0), fact = 1, fact1 = 1;
    for (int m = 0; m <= SERIES_TERMS; ++m) {
        if (m > 0) { fact *= Quad(m); fact1 *= Quad(m + 1); qpow *= q; }
        const Quad sign = (m % 2 == 0) ? Quad(1) : Quad(-1);
        sum += sign * (harmonic_q(m) + harmonic_q(m + 1)) * qpow / (fact * fact1);
    }
    return (Quad(2) / PI_Q) * (log_half_q(xd) + GAMMA_Q) * series_j1_q(x)
         - Quad(2) / (PI_Q * x) - sum / PI_Q;
}

// a_k(nu) = prod_{l=1..k} (4 nu^2 - (2l-1)^2) / (k! 8^k), computed with an
// explicit product.
inline long double hankel_coeff(int nu, int k) {
    long double num = 1.0L, den = 1.0L;
    for (int l = 1; l <= k; ++l) {
        num *= (4.0L * nu * nu - (2.0L * l - 1.0L) * (2.0L * l - 1.0L));
        den *= 8.0L * l;
    }
    return num / den;
}

// J_nu and Y_nu via P/Q amplitude-phase form, 10 terms in each of P and Q.
inline void asymptotic_jy(int nu, long double x, long double& j, long double& y) {
    long double p = 0.0L, qq = 0.0L;
    for (int m = 0; m < 10; ++m) {
        const long double sign = (m % 2 == 0) ? 1.0L : -1.0L;
        p += sign * hankel_coeff(nu, 2 * m) / std::pow(x, 2.0L * m);
        qq += sign * hankel_coeff(nu, 2 * m + 1) / std::pow(x, 2.0L * m + 1.0L);
    }
    const long double amp = std::sqrt(2.0L / (PI_L * x));
    const long double chi = x - nu * PI_L / 2.0L - PI_L / 4.0L;
    j = amp * (p * std::cos(chi) - qq * std::sin(chi));
    y = amp * (p * std::sin(chi) + qq * std::cos(chi));
}

inline double j0(double x) {
    if (x <= ORACLE_SPLIT) return static_cast<double>(series_j0_q(Quad(x)));
    long double j, y; asymptotic_jy(0, x, j, y); return static_cast<double>(j);
}

inline double j1(double x) {
    if (x <= ORACLE_SPLIT) return static_cast<double>(series_j1_q(Quad(x)));
    long double j, y; asymptotic_jy(1, x, j, y); return static_cast<double>(j);
}

inline double y0(double x) {
    if (x <= ORACLE_SPLIT) return static_cast<double>(series_y0_q(x));
    long double j, y; asymptotic_jy(0, x, j, y); return static_cast<double>(y);
}

inline double y1(double x) {
    if (x <= ORACLE_SPLIT) return static_cast<double>(series_y1_q(x));
    long double j, y; asymptotic_jy(1, x, j, y); return static_cast<double>(y);
}

// Bisection on an oracle function; assumes a sign change on [lo, hi].
template <typename F>
double bisect(F f, double lo, double hi, double tol = 1e-14) {
    double flo = f(lo);
    for (int i = 0; i < 200 && (hi - lo) > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) > 0.0) == (flo > 0.0)) { lo = mid; flo = f(mid); }
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace helios::oracle

#endif
