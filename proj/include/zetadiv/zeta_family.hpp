#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zetadiv/series.hpp"
#include "zetadiv/special_functions.hpp"

namespace zetadiv {

enum class Family { zeta, pareto };

std::string to_string(Family f);
Family family_from_string(const std::string& name);

/// Zeta distribution parameter: Pr[X=x] = x^{-s}/zeta(s) on x = 1, 2, ...
struct ZetaParam {
    double s;
    explicit ZetaParam(double shape) : s(shape) {
        if (!(s > 1.0)) throw DomainError("zeta shape s must exceed 1");
    }
};

/// Support offset k0 >= 1; Pr[X=x] = x^{-s}/zeta(s,k0) on x = k0, k0+1, ...
/// k0 = 1 reduces to ZetaParam.
struct GeneralizedZetaParam {
    double s;
    std::uint64_t k0;
    GeneralizedZetaParam(double shape, std::uint64_t offset) : s(shape), k0(offset) {
        if (!(s > 1.0)) throw DomainError("zeta shape s must exceed 1");
        if (k0 < 1) throw DomainError("support offset k0 must be >= 1");
    }
};

/// Pareto density q_s(x) = (s-1) x^{-s} on (1, inf); scale fixed at 1,
/// shape s-1.
struct ParetoParam {
    double s;
    explicit ParetoParam(double exponent) : s(exponent) {
        if (!(s > 1.0)) throw DomainError("pareto exponent s must exceed 1");
    }
};

/// Moment parameter eta = F'(theta) = E[-log X]; strictly negative for both
/// families.
struct MomentParam {
    double eta;
    explicit MomentParam(double e) : eta(e) {
        if (!(eta < 0.0)) throw DomainError("moment parameter eta must be negative");
    }
};

struct SampleSet {
    std::vector<double> observations;
    std::size_t size() const { return observations.size(); }
};

/// One observation per line, '#' starts a comment, blank lines skipped.
/// zeta: positive integers; pareto: reals > 1. Malformed lines raise
/// ParseError carrying the line number.
SampleSet load_sample_set(const std::string& path, Family family);

// --- probability mass / density ---------------------------------------------

double zeta_pmf(const ZetaParam& p, std::uint64_t x, const SeriesPolicy& policy = {});
double zeta_log_pmf(const ZetaParam& p, std::uint64_t x, const SeriesPolicy& policy = {});
double zeta_pmf(const GeneralizedZetaParam& p, std::uint64_t x, const SeriesPolicy& policy = {});
double zeta_log_pmf(const GeneralizedZetaParam& p, std::uint64_t x,
                    const SeriesPolicy& policy = {});
double pareto_pdf(const ParetoParam& p, double x);

// --- exponential-family structure --------------------------------------------

/// F(theta): log zeta(theta) (zeta) or -log(theta-1) (pareto); theta > 1.
double cumulant(Family family, double theta, const SeriesPolicy& policy = {});
/// Generalized-zeta cumulant log zeta(theta, k0).
double cumulant(double theta, std::uint64_t k0, const SeriesPolicy& policy = {});

/// eta(theta) = F'(theta).
MomentParam moment_from_natural(Family family, double theta, const SeriesPolicy& policy = {});

/// Inverse moment map. Pareto: closed form theta = 1 - 1/eta. Zeta: bracketed
/// bisection on the strictly increasing eta(theta), |eta(theta) - target| <= tol.
double natural_from_moment(Family family, const MomentParam& eta, double tol = 1e-10,
                           const SeriesPolicy& policy = {});

struct MleResult {
    double theta_hat;
    double eta_hat;
    std::size_t n;
    double log_likelihood;
};

/// Maximum likelihood: eta_hat = -(1/n) sum log x_i, then invert the moment
/// map. An all-ones zeta sample gives eta_hat = 0 which lies outside the
/// moment range; that raises DegenerateSampleError, not a convergence error.
MleResult mle_fit(Family family, const SampleSet& data, double tol = 1e-10,
                  const SeriesPolicy& policy = {});

// --- entropies and the convex conjugate --------------------------------------

/// Certified entropy H[p_s] = s L(s)/zeta(s) + log zeta(s).
SeriesValue zeta_entropy(const ZetaParam& p, const SeriesPolicy& policy = {});
SeriesValue zeta_entropy(const GeneralizedZetaParam& p, const SeriesPolicy& policy = {});

/// Literal truncation sum_{i=1}^{terms} (1/(i^s zeta)) log(i^s zeta); the
/// normalizer uses the exact pi-power value when s is an even integer.
double zeta_entropy_literal(const ZetaParam& p, std::uint64_t terms);

/// h[q_s] = 1 + 1/(s-1) - log(s-1).
double pareto_entropy(const ParetoParam& p);

/// Legendre conjugate F*(eta) = theta(eta) eta - F(theta(eta)); equals the
/// negentropy. Pareto: closed form eta - 1 - log(-eta). Zeta: numerical via
/// the inverse moment map.
double conjugate_value(Family family, const MomentParam& eta, double tol = 1e-10,
                       const SeriesPolicy& policy = {});

// --- sampling -----------------------------------------------------------------

/// iid draws by rejection with a Pareto-shaped proposal (acceptance bounded
/// away from zero for every s > 1). Deterministic for a fixed seed.
SampleSet sample_zeta(const ZetaParam& p, std::size_t count, std::uint64_t seed);

}  // namespace zetadiv
