#pragma once

// Test-only brute-force oracles. These deliberately avoid the library's
// Euler-Maclaurin machinery: plain long-double summation with midpoint
// integral tails, trial-division arithmetic functions, and adaptive Simpson
// quadrature. Used to freeze expected values and to cross-check every
// closed form through an independent route.

#include <cmath>
#include <cstdint>
#include <functional>

namespace oracles {

// sum_{i=k0}^inf i^{-s}: n direct terms, then the midpoint integral tail
// int_{last+1/2}^inf x^{-s} dx (midpoint-rule error ~ s x^{-s-1}/24).
inline double zeta_direct(double s, std::uint64_t n, std::uint64_t k0 = 1) {
    long double acc = 0.0L;
    const std::uint64_t last = k0 + n - 1;
    for (std::uint64_t i = k0; i <= last; ++i)
        acc += powl(static_cast<long double>(i), -static_cast<long double>(s));
    const long double b = static_cast<long double>(last) + 0.5L;
    acc += powl(b, 1.0L - static_cast<long double>(s)) / (static_cast<long double>(s) - 1.0L);
    return static_cast<double>(acc);
}

// sum_{i=k0}^inf log(i) i^{-s} with the matching midpoint tail.
inline double log_weighted_direct(double s, std::uint64_t n, std::uint64_t k0 = 1) {
    long double acc = 0.0L;
    const std::uint64_t last = k0 + n - 1;
    for (std::uint64_t i = k0; i <= last; ++i) {
        const long double x = static_cast<long double>(i);
        acc += logl(x) * powl(x, -static_cast<long double>(s));
    }
    const long double b = static_cast<long double>(last) + 0.5L;
    const long double sm1 = static_cast<long double>(s) - 1.0L;
    acc += powl(b, -sm1) * (logl(b) / sm1 + 1.0L / (sm1 * sm1));
    return static_cast<double>(acc);
}

// Literal sum_{i<=n} Lambda(i)/i^s by trial division, independent of the
// library's prime sieve.
inline double mangoldt_sum_direct(double s, std::uint64_t n) {
    long double acc = 0.0L;
    for (std::uint64_t i = 2; i <= n; ++i) {
        std::uint64_t m = i;
        std::uint64_t base = 0;
        for (std::uint64_t p = 2; p <= m / p; ++p) {
            if (m % p == 0) {
                base = p;
                while (m % p == 0) m /= p;
                break;
            }
        }
        if (base == 0)
            base = m;  // i is prime
        else if (m != 1)
            continue;  // two distinct prime factors
        acc += logl(static_cast<long double>(base)) *
               powl(static_cast<long double>(i), -static_cast<long double>(s));
    }
    return static_cast<double>(acc);
}

// H[p_s] by literal PMF summation with n terms (no tail).
inline double zeta_entropy_direct(double s, std::uint64_t n, double zeta_value) {
    long double acc = 0.0L;
    for (std::uint64_t i = 1; i <= n; ++i) {
        const long double w =
            powl(static_cast<long double>(i), static_cast<long double>(s)) *
            static_cast<long double>(zeta_value);
        acc += logl(w) / w;
    }
    return static_cast<double>(acc);
}

// sum_i p1(i)^a p2(i)^(1-a) with n terms plus midpoint tail.
inline double bhattacharyya_direct(double s1, double s2, double alpha, double z1, double z2,
                                   std::uint64_t n, std::uint64_t k0 = 1) {
    const double m = alpha * s1 + (1.0 - alpha) * s2;
    const long double norm =
        powl(static_cast<long double>(z1), static_cast<long double>(alpha)) *
        powl(static_cast<long double>(z2), 1.0L - static_cast<long double>(alpha));
    long double acc = 0.0L;
    const std::uint64_t last = k0 + n - 1;
    for (std::uint64_t i = k0; i <= last; ++i)
        acc += powl(static_cast<long double>(i), -static_cast<long double>(m));
    const long double b = static_cast<long double>(last) + 0.5L;
    acc += powl(b, 1.0L - static_cast<long double>(m)) / (static_cast<long double>(m) - 1.0L);
    return static_cast<double>(acc / norm);
}

// sum_i p1(i) log(p1(i)/p2(i)) with n terms plus midpoint tails.
inline double kl_direct(double s1, double s2, double z1, double z2, std::uint64_t n,
                        std::uint64_t k0 = 1) {
    const long double a = static_cast<long double>(s2) - static_cast<long double>(s1);
    const long double k = logl(static_cast<long double>(z2) / static_cast<long double>(z1));
    long double acc = 0.0L;
    const std::uint64_t last = k0 + n - 1;
    for (std::uint64_t i = k0; i <= last; ++i) {
        const long double x = static_cast<long double>(i);
        acc += powl(x, -static_cast<long double>(s1)) * (a * logl(x) + k);
    }
    const long double b = static_cast<long double>(last) + 0.5L;
    const long double sm1 = static_cast<long double>(s1) - 1.0L;
    const long double tail_plain = powl(b, -sm1) / sm1;
    const long double tail_log = powl(b, -sm1) * (logl(b) / sm1 + 1.0L / (sm1 * sm1));
    acc += a * tail_log + k * tail_plain;
    return static_cast<double>(acc / static_cast<long double>(z1));
}

// Adaptive Simpson on [a, b].
inline double adaptive_simpson_impl(const std::function<double(double)>& f, double a, double b,
                                    double fa, double fm, double fb, double whole, double tol,
                                    int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_impl(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
           adaptive_simpson_impl(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 40) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_impl(f, a, b, fa, fm, fb, whole, tol, depth);
}

// int_1^inf g(x) dx for integrands decaying like x^{-s}, s > 1, via x = e^u.
// The support is open at 1, so the u grid starts a hair above 0; the skipped
// mass is below g(1) * 1e-13.
inline double pareto_integral(const std::function<double(double)>& g, double decay_rate,
                              double tol = 1e-12) {
    const double lo = 1e-13;
    const double hi = 50.0 / decay_rate;
    return adaptive_simpson([&](double u) { return g(std::exp(u)) * std::exp(u); }, lo, hi, tol);
}

}  // namespace oracles
