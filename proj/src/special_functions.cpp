#include "zetadiv/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace zetadiv {

std::string to_string(SeriesMethod m) {
    switch (m) {
        case SeriesMethod::direct: return "direct";
        case SeriesMethod::euler_maclaurin: return "euler_maclaurin";
        case SeriesMethod::mangoldt: return "mangoldt";
        case SeriesMethod::integral_tail: return "integral_tail";
    }
    return "unknown";
}

namespace {

// Neumaier-compensated accumulator; keeps million-term partial sums at a few
// ulp regardless of term ordering.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

// int_N^inf x^{-sigma} dx
double integral_power(double N, double sigma) {
    return std::pow(N, 1.0 - sigma) / (sigma - 1.0);
}

// int_N^inf log(x) x^{-sigma} dx
double integral_powerlog(double N, double sigma) {
    const double sm1 = sigma - 1.0;
    return std::pow(N, 1.0 - sigma) * (std::log(N) / sm1 + 1.0 / (sm1 * sm1));
}

struct EmTail {
    double value;
    double bound;
};

int clamp_order(std::size_t requested) {
    // bernoulli_over_factorial holds B_{2k}/(2k)! up to k = 32; the bound
    // term needs index M+1.
    return static_cast<int>(std::min<std::size_t>(requested, 31));
}

// sum_{i=N}^inf i^{-s} for s > 1 via Euler-Maclaurin:
//   N^{1-s}/(s-1) + N^{-s}/2 + sum_{k=1}^{M} B_{2k}/(2k)! prod_{j=0}^{2k-2}(s+j) N^{-s-2k+1}
// The remainder after M pairs is bounded by the first omitted correction term
// (f = x^{-s} has fixed-sign monotone derivatives on [N, inf)).
EmTail em_power_tail(double s, double N, int M) {
    const auto& bf = detail::bernoulli_over_factorial();
    CompensatedSum acc;
    acc.add(integral_power(N, s));
    acc.add(0.5 * std::pow(N, -s));
    double prod = s;                       // prod_{j=0}^{2k-2}(s+j) at k=1
    double npow = std::pow(N, -s - 1.0);   // N^{-s-2k+1} at k=1
    for (int k = 1; k <= M; ++k) {
        acc.add(bf[static_cast<std::size_t>(k)] * prod * npow);
        prod *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
        npow /= N * N;
    }
    const double bound = std::abs(bf[static_cast<std::size_t>(M) + 1]) * prod * npow;
    return {acc.value(), bound};
}

// sum_{i=N}^inf log(i) i^{-s} for s > 1. Derivatives of f(x) = log(x) x^{-s}
// have the shape x^{-s-m} (a_m log x + b_m) with
//   a_{m+1} = -(s+m) a_m,   b_{m+1} = a_m - (s+m) b_m.
// Remainder bound: |R_M| <= 2 zeta(2M)/(2pi)^{2M} int_N^inf |f^{(2M)}|, with
// zeta(2M) <= 2 and |a log x + b| <= |a| log x + |b|.
EmTail em_powerlog_tail(double s, double N, int M) {
    const auto& bf = detail::bernoulli_over_factorial();
    const double lnN = std::log(N);
    CompensatedSum acc;
    acc.add(integral_powerlog(N, s));
    acc.add(0.5 * lnN * std::pow(N, -s));
    double a = 1.0, b = 0.0;  // coefficients of f^{(m)}, starting at m = 0
    int m = 0;
    double npow = std::pow(N, -s);  // N^{-s-m}
    for (int k = 1; k <= M; ++k) {
        while (m < 2 * k - 1) {
            const double a_next = -(s + m) * a;
            const double b_next = a - (s + m) * b;
            a = a_next;
            b = b_next;
            ++m;
            npow /= N;
        }
        acc.add(-bf[static_cast<std::size_t>(k)] * npow * (a * lnN + b));
    }
    while (m < 2 * M) {
        const double a_next = -(s + m) * a;
        const double b_next = a - (s + m) * b;
        a = a_next;
        b = b_next;
        ++m;
    }
    const double c = 4.0 / std::pow(2.0 * M_PI, 2.0 * M);
    const double bound =
        c * (std::abs(a) * integral_powerlog(N, s + 2.0 * M) +
             std::abs(b) * integral_power(N, s + 2.0 * M));
    return {acc.value(), bound};
}

// [sum_{i=N}^inf i^{-a}] - [sum_{i=N}^inf i^{-b}], every piece of the two
// Euler-Maclaurin tails differenced analytically through expm1/log1p so no
// significance is lost even when |a-b| ~ 1e-15.
EmTail em_power_tail_difference(double a, double b, double N, int M) {
    const auto& bf = detail::bernoulli_over_factorial();
    const double tau = a - b;
    const double lnN = std::log(N);
    const double E = std::expm1(-tau * lnN);  // N^{-tau} - 1
    const double nb1 = std::pow(N, 1.0 - b);
    const double nb = std::pow(N, -b);

    CompensatedSum acc;
    // N^{1-a}/(a-1) - N^{1-b}/(b-1)
    acc.add(nb1 * (E / (a - 1.0) - tau / ((a - 1.0) * (b - 1.0))));
    // (N^{-a} - N^{-b})/2
    acc.add(0.5 * nb * E);

    double prod_b = b;                        // prod_{j=0}^{2k-2}(b+j)
    double logratio = std::log1p(tau / b);    // log prod (a+j)/(b+j)
    double npow_b = std::pow(N, -b - 1.0);    // N^{-b-2k+1}
    for (int k = 1; k <= M; ++k) {
        const double prod_a = prod_b * std::exp(logratio);
        const double diff_prod = prod_b * std::expm1(logratio);  // prod_a - prod_b
        acc.add(bf[static_cast<std::size_t>(k)] * npow_b * (prod_a * E + diff_prod));
        prod_b *= (b + 2.0 * k - 1.0) * (b + 2.0 * k);
        logratio += std::log1p(tau / (b + 2.0 * k - 1.0)) + std::log1p(tau / (b + 2.0 * k));
        npow_b /= N * N;
    }
    const double prod_a = prod_b * std::exp(logratio);
    const double npow_a = npow_b * std::exp(-tau * lnN);
    const double bound =
        std::abs(bf[static_cast<std::size_t>(M) + 1]) * (prod_a * npow_a + prod_b * npow_b);
    return {acc.value(), bound};
}

void require_s_above_one(double s) {
    if (!(s > 1.0)) throw DomainError("s must exceed 1");
}

// Shared Riemann/Hurwitz evaluation; k0 = 1 is exactly zeta_real.
SeriesValue hurwitz_impl(double s, std::uint64_t k0, const SeriesPolicy& policy) {
    require_s_above_one(s);
    if (k0 < 1) throw DomainError("k0 must be a positive integer");
    policy.validate();

    if (s > 60.0) {
        // direct summation; terms decay faster than the geometric majorant
        // r = ((n+1)/(n+2))^s, so the truncated tail is certified by r.
        CompensatedSum acc;
        std::uint64_t i = k0;
        double bound = 0.0;
        for (;; ++i) {
            acc.add(std::pow(static_cast<double>(i), -s));
            const double t_next = std::pow(static_cast<double>(i + 1), -s);
            const double r = std::pow(static_cast<double>(i + 1) / static_cast<double>(i + 2), s);
            bound = t_next / (1.0 - r);
            if (bound <= policy.target_rel_error * std::abs(acc.value())) break;
            if (i - k0 + 1 >= policy.max_terms) break;
        }
        return {acc.value(), bound, i - k0 + 1, SeriesMethod::direct};
    }

    const int M = clamp_order(policy.euler_maclaurin_order);
    std::uint64_t N = k0 + policy.euler_maclaurin_cutoff;
    for (;;) {
        CompensatedSum acc;
        for (std::uint64_t i = k0; i < N; ++i) acc.add(std::pow(static_cast<double>(i), -s));
        const EmTail tail = em_power_tail(s, static_cast<double>(N), M);
        acc.add(tail.value);
        const double val = acc.value();
        if (tail.bound <= policy.target_rel_error * std::abs(val) || N >= policy.max_terms)
            return {val, tail.bound, N - k0, SeriesMethod::euler_maclaurin};
        N = std::min<std::uint64_t>(N * 2, policy.max_terms);
    }
}

}  // namespace

std::vector<ExactRational> bernoulli_numbers(int n_max, int cap) {
    if (n_max < 0) throw DomainError("bernoulli_numbers: n_max must be >= 0");
    if (n_max > cap)
        throw ResourceLimitError("bernoulli_numbers: n_max " + std::to_string(n_max) +
                                 " exceeds cap " + std::to_string(cap));
    std::vector<mpq_class> b(static_cast<std::size_t>(n_max) + 1);
    b[0] = 1;
    for (int m = 1; m <= n_max; ++m) {
        mpz_class binom = 1;  // C(m+1, j), updated incrementally
        mpq_class acc = 0;
        for (int j = 0; j < m; ++j) {
            if (j > 0) {
                binom *= m + 2 - j;
                binom /= j;
            }
            acc += mpq_class(binom) * b[static_cast<std::size_t>(j)];
        }
        mpq_class bm = -acc / mpq_class(m + 1);
        bm.canonicalize();
        b[static_cast<std::size_t>(m)] = bm;
    }
    std::vector<ExactRational> out;
    out.reserve(b.size());
    for (auto& q : b) out.emplace_back(std::move(q));
    return out;
}

PiPowerValue zeta_even_exact(int two_n) {
    if (two_n < 2 || two_n % 2 != 0)
        throw DomainError("zeta_even_exact: argument must be a positive even integer");
    if (two_n > kBernoulliCap)
        throw ResourceLimitError("zeta_even_exact: argument exceeds Bernoulli cap");
    const int n = two_n / 2;
    const ExactRational b2n = bernoulli_numbers(two_n).back();
    mpz_class two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(two_n));
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(two_n));
    // (-1)^{n+1} B_{2n} 2^{2n} / (2 (2n)!)
    mpz_class num = b2n.numerator() * two_pow;
    if (n % 2 == 0) num = -num;
    ExactRational coeff(num, b2n.denominator() * 2 * fact);
    return PiPowerValue(std::move(coeff), static_cast<unsigned>(two_n));
}

SeriesValue zeta_real(double s, const SeriesPolicy& policy) {
    return hurwitz_impl(s, 1, policy);
}

SeriesValue hurwitz_zeta(double s, std::uint64_t k0, const SeriesPolicy& policy) {
    return hurwitz_impl(s, k0, policy);
}

SeriesValue zeta_difference(double a, double b, std::uint64_t k0, const SeriesPolicy& policy) {
    require_s_above_one(a);
    require_s_above_one(b);
    if (k0 < 1) throw DomainError("k0 must be a positive integer");
    policy.validate();
    if (a == b) return {0.0, 0.0, 0, SeriesMethod::euler_maclaurin};

    const double tau = a - b;
    const int M = clamp_order(policy.euler_maclaurin_order);
    std::uint64_t N = k0 + policy.euler_maclaurin_cutoff;
    for (;;) {
        CompensatedSum acc;
        for (std::uint64_t i = k0; i < N; ++i) {
            const double x = static_cast<double>(i);
            // i^{-a} - i^{-b}, computed without cancellation
            acc.add(std::pow(x, -b) * std::expm1(-tau * std::log(x)));
        }
        const EmTail tail = em_power_tail_difference(a, b, static_cast<double>(N), M);
        acc.add(tail.value);
        const double val = acc.value();
        if (tail.bound <= policy.target_rel_error * std::abs(val) || N >= policy.max_terms)
            return {val, tail.bound, N - k0, SeriesMethod::euler_maclaurin};
        N = std::min<std::uint64_t>(N * 2, policy.max_terms);
    }
}

SeriesValue log_weighted_zeta_series(double s, const SeriesPolicy& policy) {
    return log_weighted_zeta_series(s, 1, policy);
}

SeriesValue log_weighted_zeta_series(double s, std::uint64_t k0, const SeriesPolicy& policy) {
    require_s_above_one(s);
    if (k0 < 1) throw DomainError("k0 must be a positive integer");
    policy.validate();

    if (s > 60.0) {
        // first term dominates; integral-test bound from the last summed index
        CompensatedSum acc;
        std::uint64_t i = k0;
        double bound;
        for (;; ++i) {
            const double x = static_cast<double>(i);
            acc.add(std::log(x) * std::pow(x, -s));
            bound = integral_powerlog(static_cast<double>(std::max<std::uint64_t>(i, 3)), s);
            if (bound <= policy.target_rel_error * std::abs(acc.value()) && i >= 3) break;
            if (i - k0 + 1 >= policy.max_terms) break;
        }
        return {acc.value(), bound, i - k0 + 1, SeriesMethod::direct};
    }

    const int M = clamp_order(policy.euler_maclaurin_order);
    std::uint64_t N = k0 + policy.euler_maclaurin_cutoff;
    for (;;) {
        CompensatedSum acc;
        for (std::uint64_t i = k0; i < N; ++i) {
            const double x = static_cast<double>(i);
            acc.add(std::log(x) * std::pow(x, -s));
        }
        const EmTail tail = em_powerlog_tail(s, static_cast<double>(N), M);
        acc.add(tail.value);
        const double val = acc.value();
        if (tail.bound <= policy.target_rel_error * std::abs(val) || N >= policy.max_terms)
            return {val, tail.bound, N - k0, SeriesMethod::euler_maclaurin};
        N = std::min<std::uint64_t>(N * 2, policy.max_terms);
    }
}

double von_mangoldt(std::uint64_t i) {
    if (i == 0) throw DomainError("von_mangoldt: argument must be >= 1");
    if (i == 1) return 0.0;
    std::uint64_t n = i;
    for (std::uint64_t p = 2; p <= n / p; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
        }
    }
    return std::log(static_cast<double>(n));  // i itself is prime
}

namespace {

// sum over prime powers p^k <= limit of log(p) p^{-ks}; also reports the
// number of prime powers visited.
double mangoldt_partial(double s, std::uint64_t limit, std::size_t* prime_powers) {
    const auto primes = detail::primes_up_to(limit);
    CompensatedSum acc;
    std::size_t count = 0;
    for (const std::uint32_t p : primes) {
        const double logp = std::log(static_cast<double>(p));
        for (std::uint64_t pw = p; pw <= limit; pw *= p) {
            acc.add(logp * std::pow(static_cast<double>(pw), -s));
            ++count;
            if (pw > limit / p) break;  // next power would overflow past limit
        }
    }
    if (prime_powers) *prime_powers = count;
    return acc.value();
}

}  // namespace

SeriesValue von_mangoldt_series(double s, const SeriesPolicy& policy) {
    require_s_above_one(s);
    policy.validate();
    std::uint64_t N = std::max<std::uint64_t>(policy.euler_maclaurin_cutoff, 64);
    for (;;) {
        std::size_t count = 0;
        const double partial = mangoldt_partial(s, N, &count);
        // Lambda(i) <= log i and log(x) x^{-s} decreases beyond x = 3
        const double bound = integral_powerlog(static_cast<double>(std::max<std::uint64_t>(N, 3)), s);
        if (bound <= policy.target_rel_error * partial || N >= policy.max_terms)
            return {partial, bound, count, SeriesMethod::mangoldt};
        N = std::min<std::uint64_t>(N * 2, policy.max_terms);
    }
}

double von_mangoldt_series_literal(double s, std::uint64_t terms) {
    require_s_above_one(s);
    if (terms < 1) throw DomainError("von_mangoldt_series_literal: terms must be >= 1");
    return mangoldt_partial(s, terms, nullptr);
}

SeriesValue zeta_log_derivative(double s, const SeriesPolicy& policy) {
    require_s_above_one(s);
    policy.validate();

    // Rough magnitude of eta(s) to decide whether the von Mangoldt route can
    // certify the target within max_terms.
    SeriesPolicy rough = policy;
    rough.target_rel_error = 1e-3;
    const SeriesValue l_rough = log_weighted_zeta_series(s, rough);
    const SeriesValue z_rough = zeta_real(s, rough);
    const double eta_est = l_rough.value / z_rough.value;
    const double feasible_bound =
        integral_powerlog(static_cast<double>(policy.max_terms), s);
    if (feasible_bound <= policy.target_rel_error * std::abs(eta_est)) {
        const SeriesValue m = von_mangoldt_series(s, policy);
        if (m.truncation_bound <= policy.target_rel_error * std::abs(m.value))
            return {-m.value, m.truncation_bound, m.terms_used, SeriesMethod::mangoldt};
    }

    // -L(s)/zeta(s) from certified primitives
    const SeriesPolicy tight = policy.tightened(4.0);
    const SeriesValue L = log_weighted_zeta_series(s, tight);
    const SeriesValue Z = zeta_real(s, tight);
    const double eta = -L.value / Z.value;
    const double bound =
        (L.truncation_bound + std::abs(eta) * Z.truncation_bound) / Z.value;
    return {eta, bound, L.terms_used + Z.terms_used, L.method};
}

SeriesValue euler_product_zeta(double s, std::uint64_t prime_bound) {
    require_s_above_one(s);
    if (prime_bound < 2) throw DomainError("euler_product_zeta: prime_bound must be >= 2");
    const auto primes = detail::primes_up_to(prime_bound);
    double prod = 1.0;
    for (const std::uint32_t p : primes)
        prod /= 1.0 - std::pow(static_cast<double>(p), -s);
    // tail estimate from the prime-density heuristic sum_{p>P} p^{-s}
    // ~ int_P^inf x^{-s}/log(x) dx; documented, not certified
    const double P = static_cast<double>(prime_bound);
    const double bound = prod * 2.0 * integral_power(P, s) / std::log(P);
    return {prod, bound, primes.size(), SeriesMethod::direct};
}

namespace detail {

const std::vector<double>& bernoulli_over_factorial() {
    static const std::vector<double> table = [] {
        const auto bern = bernoulli_numbers(64);
        std::vector<double> t;
        t.reserve(33);
        mpz_class fact = 1;
        for (int k = 0; k <= 32; ++k) {
            if (k > 0) fact *= mpz_class(2 * k - 1) * mpz_class(2 * k);
            const ExactRational& b = bern[static_cast<std::size_t>(2 * k)];
            t.push_back(ExactRational(b.numerator(), b.denominator() * fact).to_double());
        }
        return t;
    }();
    return table;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
    if (n > 100'000'000)
        throw ResourceLimitError("primes_up_to: sieve limit exceeds 1e8");
    if (n < 2) return {};
    std::vector<bool> composite(n + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        primes.push_back(static_cast<std::uint32_t>(p));
        for (std::uint64_t q = p * p; q <= n; q += p) composite[q] = true;
    }
    return primes;
}

}  // namespace detail

}  // namespace zetadiv
