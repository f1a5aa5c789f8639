#pragma once

#include <cstdint>
#include <vector>

#include "zetadiv/exact.hpp"
#include "zetadiv/series.hpp"

namespace zetadiv {

inline constexpr int kBernoulliCap = 512;

/// Exact Bernoulli numbers B_0 .. B_n_max (convention B_1 = -1/2), computed
/// by the defining recurrence sum_{j=0}^{m} C(m+1,j) B_j = 0.
/// Throws ResourceLimitError when n_max exceeds cap.
std::vector<ExactRational> bernoulli_numbers(int n_max, int cap = kBernoulliCap);

/// zeta(2n) as an exact rational multiple of pi^(2n):
/// zeta(2n) = (-1)^(n+1) B_{2n} (2 pi)^(2n) / (2 (2n)!).
/// two_n must be even and >= 2.
PiPowerValue zeta_even_exact(int two_n);

/// Riemann zeta, s > 1. Euler-Maclaurin for s <= 60, direct summation with a
/// geometric tail bound above that.
SeriesValue zeta_real(double s, const SeriesPolicy& policy = {});

/// Hurwitz zeta zeta(s, k0) = sum_{i>=0} (i+k0)^{-s}, s > 1, integer k0 >= 1.
/// zeta(s, 1) follows the exact same evaluation path as zeta_real(s).
SeriesValue hurwitz_zeta(double s, std::uint64_t k0, const SeriesPolicy& policy = {});

/// zeta(a, k0) - zeta(b, k0) evaluated as a single differenced series, free of
/// the catastrophic cancellation a naive subtraction incurs when a is close
/// to b. Needed by the heavily skewed Jensen/Bhattacharyya evaluations where
/// the two arguments differ by as little as 1e-6.
SeriesValue zeta_difference(double a, double b, std::uint64_t k0 = 1,
                            const SeriesPolicy& policy = {});

/// L(s) = sum_{i>=1} log(i) / i^s = -zeta'(s), s > 1, with a certified
/// Euler-Maclaurin tail for f(x) = log(x) x^{-s}.
SeriesValue log_weighted_zeta_series(double s, const SeriesPolicy& policy = {});

/// Offset variant: sum_{i>=k0} log(i) / i^s.
SeriesValue log_weighted_zeta_series(double s, std::uint64_t k0, const SeriesPolicy& policy);

/// von Mangoldt function: log p when i = p^k for prime p and k >= 1, else 0.
double von_mangoldt(std::uint64_t i);

/// sum_{i>=1} Lambda(i) / i^s = -zeta'(s)/zeta(s), s > 1, summed over prime
/// powers with an integral-test tail bound. The certificate is honest but
/// wide for s close to 1 (the required term count grows super-polynomially),
/// in which case it is returned unmet rather than silently tightened.
SeriesValue von_mangoldt_series(double s, const SeriesPolicy& policy = {});

/// Literal truncation sum_{i=1}^{terms} Lambda(i)/i^s, no tail handling.
double von_mangoldt_series_literal(double s, std::uint64_t terms);

/// eta(s) = zeta'(s)/zeta(s) < 0 for s > 1. Uses the von Mangoldt series when
/// that route can certify the requested tolerance within max_terms, otherwise
/// falls back to -L(s)/zeta(s) built from certified primitives.
SeriesValue zeta_log_derivative(double s, const SeriesPolicy& policy = {});

/// Partial Euler product prod_{p <= prime_bound} (1 - p^{-s})^{-1}.
/// Cross-check oracle only: the reported bound is a prime-density estimate of
/// the missing tail, documented rather than certified.
SeriesValue euler_product_zeta(double s, std::uint64_t prime_bound);

namespace detail {
/// B_{2k}/(2k)! for k = 0..32 as doubles, derived from the exact recurrence.
const std::vector<double>& bernoulli_over_factorial();
std::vector<std::uint32_t> primes_up_to(std::uint64_t n);
}  // namespace detail

}  // namespace zetadiv
