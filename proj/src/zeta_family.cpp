#include "zetadiv/zeta_family.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <random>

namespace zetadiv {

std::string to_string(Family f) {
    return f == Family::zeta ? "zeta" : "pareto";
}

Family family_from_string(const std::string& name) {
    if (name == "zeta") return Family::zeta;
    if (name == "pareto") return Family::pareto;
    throw DomainError("unknown family '" + name + "' (expected zeta or pareto)");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

SampleSet load_sample_set(const std::string& path, Family family) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open sample file '" + path + "'", 0);
    SampleSet set;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string tok = trim(line);
        if (tok.empty()) continue;
        std::size_t pos = 0;
        double value = 0.0;
        try {
            value = std::stod(tok, &pos);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line_no) + ": not a number: '" + tok + "'",
                             line_no);
        }
        if (pos != tok.size())
            throw ParseError("line " + std::to_string(line_no) + ": trailing characters in '" +
                                 tok + "'",
                             line_no);
        if (family == Family::zeta) {
            if (!(value >= 1.0) || value != std::floor(value))
                throw ParseError("line " + std::to_string(line_no) +
                                     ": zeta observations must be positive integers, got '" + tok +
                                     "'",
                                 line_no);
        } else {
            if (!(value > 1.0))
                throw ParseError("line " + std::to_string(line_no) +
                                     ": pareto observations must exceed 1, got '" + tok + "'",
                                 line_no);
        }
        set.observations.push_back(value);
    }
    if (set.observations.empty())
        throw ParseError("sample file '" + path + "' contains no observations", line_no);
    return set;
}

double zeta_log_pmf(const GeneralizedZetaParam& p, std::uint64_t x, const SeriesPolicy& policy) {
    if (x < p.k0)
        throw DomainError("zeta_pmf: x must be >= the support offset k0");
    const SeriesValue z = hurwitz_zeta(p.s, p.k0, policy);
    return -p.s * std::log(static_cast<double>(x)) - std::log(z.value);
}

double zeta_pmf(const GeneralizedZetaParam& p, std::uint64_t x, const SeriesPolicy& policy) {
    return std::exp(zeta_log_pmf(p, x, policy));
}

double zeta_log_pmf(const ZetaParam& p, std::uint64_t x, const SeriesPolicy& policy) {
    return zeta_log_pmf(GeneralizedZetaParam(p.s, 1), x, policy);
}

double zeta_pmf(const ZetaParam& p, std::uint64_t x, const SeriesPolicy& policy) {
    return zeta_pmf(GeneralizedZetaParam(p.s, 1), x, policy);
}

double pareto_pdf(const ParetoParam& p, double x) {
    if (!(x > 1.0)) throw DomainError("pareto_pdf: x must exceed 1");
    return (p.s - 1.0) * std::pow(x, -p.s);
}

double cumulant(Family family, double theta, const SeriesPolicy& policy) {
    if (!(theta > 1.0)) throw DomainError("cumulant: theta must exceed 1");
    if (family == Family::pareto) return -std::log(theta - 1.0);
    return std::log(zeta_real(theta, policy).value);
}

double cumulant(double theta, std::uint64_t k0, const SeriesPolicy& policy) {
    if (!(theta > 1.0)) throw DomainError("cumulant: theta must exceed 1");
    return std::log(hurwitz_zeta(theta, k0, policy).value);
}

MomentParam moment_from_natural(Family family, double theta, const SeriesPolicy& policy) {
    if (!(theta > 1.0)) throw DomainError("moment_from_natural: theta must exceed 1");
    if (family == Family::pareto) return MomentParam(-1.0 / (theta - 1.0));
    return MomentParam(zeta_log_derivative(theta, policy).value);
}

namespace {

// Bisection for eta(theta) = target on the strictly increasing zeta moment
// map; the bracket expands from (1+delta, 64) as needed.
double invert_zeta_moment(double target, double tol, const SeriesPolicy& policy) {
    SeriesPolicy inner = policy;
    inner.target_rel_error = std::max(std::min(policy.target_rel_error, tol * 1e-2), 5e-16);

    const auto eta_at = [&](double theta) { return zeta_log_derivative(theta, inner).value; };

    double lo = 1.0 + 1e-6;
    double hi = 64.0;
    // eta(lo) must sit below the target
    while (eta_at(lo) > target) {
        const double delta = (lo - 1.0) / 16.0;
        if (delta < 1e-14)
            throw ConvergenceError("natural_from_moment: bracket exhausted near theta = 1");
        lo = 1.0 + delta;
    }
    // eta(hi) must sit above the target
    while (eta_at(hi) < target) {
        hi *= 2.0;
        if (hi > 1e9)
            throw ConvergenceError("natural_from_moment: bracket exhausted at large theta");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double e = eta_at(mid);
        if (std::abs(e - target) <= tol) return mid;
        if (e < target)
            lo = mid;
        else
            hi = mid;
    }
    throw ConvergenceError("natural_from_moment: bisection failed to reach tolerance");
}

}  // namespace

double natural_from_moment(Family family, const MomentParam& eta, double tol,
                           const SeriesPolicy& policy) {
    if (family == Family::pareto) return 1.0 - 1.0 / eta.eta;
    return invert_zeta_moment(eta.eta, tol, policy);
}

MleResult mle_fit(Family family, const SampleSet& data, double tol, const SeriesPolicy& policy) {
    if (data.size() == 0) throw DomainError("mle_fit: sample is empty");
    double sum_log = 0.0;
    for (const double x : data.observations) sum_log += std::log(x);
    const double eta_hat = -sum_log / static_cast<double>(data.size());
    if (!(eta_hat < 0.0))
        throw DegenerateSampleError(
            "degenerate sample: empirical moment is 0 (all observations equal 1), MLE diverges");
    const double theta = natural_from_moment(family, MomentParam(eta_hat), tol, policy);
    const double n = static_cast<double>(data.size());
    // log-likelihood = n (theta eta_hat - F(theta)), plus n log(theta-1)'s
    // worth already inside F for the pareto case
    const double loglik = n * (theta * eta_hat - cumulant(family, theta, policy));
    return {theta, eta_hat, data.size(), loglik};
}

SeriesValue zeta_entropy(const GeneralizedZetaParam& p, const SeriesPolicy& policy) {
    const SeriesPolicy tight = policy.tightened(4.0);
    const SeriesValue L = log_weighted_zeta_series(p.s, p.k0, tight);
    const SeriesValue Z = hurwitz_zeta(p.s, p.k0, tight);
    const double h = p.s * L.value / Z.value + std::log(Z.value);
    const double dz = (p.s * L.value / (Z.value * Z.value) + 1.0 / Z.value) * Z.truncation_bound;
    const double bound = p.s * L.truncation_bound / Z.value + dz;
    return {h, bound, L.terms_used + Z.terms_used, SeriesMethod::euler_maclaurin};
}

SeriesValue zeta_entropy(const ZetaParam& p, const SeriesPolicy& policy) {
    return zeta_entropy(GeneralizedZetaParam(p.s, 1), policy);
}

double zeta_entropy_literal(const ZetaParam& p, std::uint64_t terms) {
    if (terms < 1) throw DomainError("zeta_entropy_literal: terms must be >= 1");
    double z;
    const double rounded = std::nearbyint(p.s);
    if (p.s == rounded && rounded >= 2.0 && rounded <= 64.0 &&
        static_cast<long>(rounded) % 2 == 0) {
        z = zeta_even_exact(static_cast<int>(rounded)).to_double();
    } else {
        SeriesPolicy tight;
        tight.target_rel_error = 5e-16;
        z = zeta_real(p.s, tight).value;
    }
    double acc = 0.0;
    for (std::uint64_t i = 1; i <= terms; ++i) {
        const double xs = std::pow(static_cast<double>(i), p.s) * z;
        acc += std::log(xs) / xs;
    }
    return acc;
}

double pareto_entropy(const ParetoParam& p) {
    return 1.0 + 1.0 / (p.s - 1.0) - std::log(p.s - 1.0);
}

double conjugate_value(Family family, const MomentParam& eta, double tol,
                       const SeriesPolicy& policy) {
    if (family == Family::pareto) return eta.eta - 1.0 - std::log(-eta.eta);
    const double theta = natural_from_moment(Family::zeta, eta, tol, policy);
    return theta * eta.eta - cumulant(Family::zeta, theta, policy);
}

SampleSet sample_zeta(const ZetaParam& p, std::size_t count, std::uint64_t seed) {
    if (count < 1) throw DomainError("sample_zeta: count must be >= 1");
    std::mt19937_64 rng(seed);
    // 53-bit uniforms drawn by hand so the stream is identical on every
    // platform for a fixed seed
    const auto uniform = [&rng]() {
        return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    };
    const double a = p.s;
    const double b = std::pow(2.0, a - 1.0);
    SampleSet out;
    out.observations.reserve(count);
    while (out.observations.size() < count) {
        const double u = uniform();
        const double v = uniform();
        const double xr = std::floor(std::pow(u, -1.0 / (a - 1.0)));
        if (!(xr >= 1.0) || xr > 9.0e18) continue;  // proposal overflow: reject
        const double t = std::pow(1.0 + 1.0 / xr, a - 1.0);
        if (v * xr * (t - 1.0) / (b - 1.0) <= t / b)
            out.observations.push_back(xr);
    }
    return out;
}

}  // namespace zetadiv
