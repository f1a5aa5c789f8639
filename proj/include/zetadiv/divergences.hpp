#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "zetadiv/exact.hpp"
#include "zetadiv/series.hpp"
#include "zetadiv/zeta_family.hpp"

namespace zetadiv {

/// Skew parameter; alpha-divergence needs alpha in (0,1), the Sharma-Mittal /
/// Renyi / Tsallis family needs alpha > 0, alpha != 1.
struct AlphaSpec {
    double alpha;
};

struct SharmaMittalSpec {
    double alpha;
    double beta;
    SharmaMittalSpec(double a, double b) : alpha(a), beta(b) {
        if (!(alpha > 0.0) || alpha == 1.0)
            throw DomainError("sharma-mittal: alpha must be positive and != 1");
        if (beta == 1.0) throw DomainError("sharma-mittal: beta must differ from 1");
    }
};

enum class KLMethodTag { log_series, entropy_form, mangoldt_form, fenchel_young, epsilon_approx };

/// Evaluation route for the Kullback-Leibler divergence. epsilon_approx
/// carries the interpolation weight placed on s1 (the alpha of the skewed
/// divergence that approximates KL as the weight approaches 1).
struct KLMethod {
    KLMethodTag tag = KLMethodTag::log_series;
    double s1_weight = 0.0;

    static KLMethod log_series() { return {KLMethodTag::log_series, 0.0}; }
    static KLMethod entropy_form() { return {KLMethodTag::entropy_form, 0.0}; }
    static KLMethod mangoldt_form() { return {KLMethodTag::mangoldt_form, 0.0}; }
    static KLMethod fenchel_young() { return {KLMethodTag::fenchel_young, 0.0}; }
    static KLMethod epsilon_approx(double weight_on_s1) {
        if (!(weight_on_s1 > 0.0 && weight_on_s1 < 1.0))
            throw DomainError("epsilon_approx: interpolation weight must lie in (0, 1)");
        return {KLMethodTag::epsilon_approx, weight_on_s1};
    }
};

std::string to_string(KLMethodTag tag);
KLMethodTag kl_method_from_string(const std::string& name);

/// Exact symbolic value prefactor * (1 - radicand^(1/root_index)), produced
/// when every zeta argument is an even integer; evaluated lazily.
struct ExactRootForm {
    ExactRational prefactor;
    ExactRational radicand;
    unsigned root_index;

    double value() const;
    std::string str() const;
};

struct DivergenceInputs {
    Family family = Family::zeta;
    double s1 = 0.0;
    double s2 = 0.0;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::uint64_t k0 = 1;
};

struct DivergenceResult {
    double value = 0.0;
    double certificate = 0.0;  // truncation bound; 0 when closed_form
    bool closed_form = false;
    std::string method;
    DivergenceInputs inputs;
    std::optional<ExactRootForm> exact;
};

// All operations accept k0 >= 1 for the generalized (Hurwitz) zeta family;
// the pareto family ignores k0.

/// J_{F,alpha}(s1:s2) = alpha F(s1) + (1-alpha) F(s2) - F(alpha s1 + (1-alpha) s2) >= 0.
double jensen_skewed(Family family, double s1, double s2, double alpha, std::uint64_t k0 = 1,
                     const SeriesPolicy& policy = {});

/// I_alpha = exp(-J_{F,alpha}) in (0, 1].
double bhattacharyya_coeff(Family family, double s1, double s2, double alpha,
                           std::uint64_t k0 = 1, const SeriesPolicy& policy = {});

/// D_alpha = (1 - I_alpha)/(alpha (1-alpha)) for alpha in (0,1). When s1, s2
/// and the interpolated argument are all even integers (zeta family, k0 = 1)
/// the result additionally carries the exact symbolic form.
DivergenceResult alpha_divergence(Family family, double s1, double s2, double alpha,
                                  std::uint64_t k0 = 1, const SeriesPolicy& policy = {});

/// alpha-divergence at alpha = 1/2.
DivergenceResult hellinger_squared(Family family, double s1, double s2, std::uint64_t k0 = 1,
                                   const SeriesPolicy& policy = {});

/// D_{alpha,beta} = (I_alpha^{(1-beta)/(1-alpha)} - 1)/(beta - 1).
DivergenceResult sharma_mittal(Family family, double s1, double s2, const SharmaMittalSpec& spec,
                               std::uint64_t k0 = 1, const SeriesPolicy& policy = {});

/// Renyi divergence J_{F,alpha}/(1-alpha); alpha > 0, alpha != 1, and the
/// interpolated argument must stay above 1.
DivergenceResult renyi(Family family, double s1, double s2, double alpha, std::uint64_t k0 = 1,
                       const SeriesPolicy& policy = {});

/// Tsallis divergence (I_alpha - 1)/(alpha - 1) = sharma_mittal at beta = alpha.
DivergenceResult tsallis(Family family, double s1, double s2, double alpha, std::uint64_t k0 = 1,
                         const SeriesPolicy& policy = {});

/// Kullback-Leibler divergence via the chosen route. The mangoldt_form and
/// fenchel_young routes are defined for the plain zeta family only (k0 = 1).
DivergenceResult kl_divergence(Family family, double s1, double s2,
                               const KLMethod& method = KLMethod::log_series(),
                               std::uint64_t k0 = 1, const SeriesPolicy& policy = {});

/// Independent oracle: literal PMF summation (zeta) or quadrature (pareto) of
/// sum p1^alpha p2^(1-alpha), with an integral tail correction and bound.
SeriesValue brute_force_bhattacharyya(Family family, double s1, double s2, double alpha,
                                      std::size_t terms, std::uint64_t k0 = 1);

/// Independent oracle for the KL definition sum p1 log(p1/p2).
SeriesValue brute_force_kl(Family family, double s1, double s2, std::size_t terms,
                           std::uint64_t k0 = 1);

}  // namespace zetadiv
