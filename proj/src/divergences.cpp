#include "zetadiv/divergences.hpp"

#include <cmath>
#include <functional>
#include <numeric>

namespace zetadiv {

std::string to_string(KLMethodTag tag) {
    switch (tag) {
        case KLMethodTag::log_series: return "log-series";
        case KLMethodTag::entropy_form: return "entropy";
        case KLMethodTag::mangoldt_form: return "mangoldt";
        case KLMethodTag::fenchel_young: return "fenchel-young";
        case KLMethodTag::epsilon_approx: return "epsilon";
    }
    return "unknown";
}

KLMethodTag kl_method_from_string(const std::string& name) {
    if (name == "log-series") return KLMethodTag::log_series;
    if (name == "entropy") return KLMethodTag::entropy_form;
    if (name == "mangoldt") return KLMethodTag::mangoldt_form;
    if (name == "fenchel-young") return KLMethodTag::fenchel_young;
    if (name == "epsilon") return KLMethodTag::epsilon_approx;
    throw DomainError("unknown KL method '" + name +
                      "' (expected log-series, entropy, mangoldt, fenchel-young or epsilon)");
}

double ExactRootForm::value() const {
    const double d = (radicand - ExactRational(1)).to_double();
    // prefactor * (1 - radicand^(1/root)); radicand is close to 1, so the
    // same expm1/log1p shape as the float path keeps full precision
    return prefactor.to_double() * -std::expm1(std::log1p(d) / static_cast<double>(root_index));
}

std::string ExactRootForm::str() const {
    return prefactor.str() + " * (1 - (" + radicand.str() + ")^(1/" +
           std::to_string(root_index) + "))";
}

namespace {

void require_shape(double s, const char* which) {
    if (!(s > 1.0)) throw DomainError(std::string(which) + " must exceed 1");
}

struct JensenParts {
    double j;
    double bound;
};

// J = alpha F(s1) + (1-alpha) F(s2) - F(m), m = alpha s1 + (1-alpha) s2,
// rewritten as alpha log1p((zeta(s1)-zeta(m))/zeta(m))
//            + (1-alpha) log1p((zeta(s2)-zeta(m))/zeta(m))
// so that skew weights within 1e-6 of an endpoint lose nothing to
// cancellation. Accepts any alpha for which m stays above 1.
JensenParts jensen_core_zeta(double s1, double s2, double alpha, std::uint64_t k0,
                             const SeriesPolicy& policy) {
    // s2 + alpha (s1 - s2) rather than the textbook mixture: bit-exact when
    // s1 == s2, so coinciding parameters give divergence exactly zero
    const double m = s2 + alpha * (s1 - s2);
    if (!(m > 1.0)) throw DomainError("interpolated exponent alpha s1 + (1-alpha) s2 must exceed 1");
    const SeriesPolicy tight = policy.tightened();
    const SeriesValue zm = hurwitz_zeta(m, k0, tight);
    const SeriesValue d1 = zeta_difference(s1, m, k0, tight);
    const SeriesValue d2 = zeta_difference(s2, m, k0, tight);
    const double del1 = d1.value / zm.value;
    const double del2 = d2.value / zm.value;
    const double j = alpha * std::log1p(del1) + (1.0 - alpha) * std::log1p(del2);
    const double b1 = (d1.truncation_bound + std::abs(del1) * zm.truncation_bound) / zm.value;
    const double b2 = (d2.truncation_bound + std::abs(del2) * zm.truncation_bound) / zm.value;
    const double bound =
        std::abs(alpha) * b1 / (1.0 + del1) + std::abs(1.0 - alpha) * b2 / (1.0 + del2);
    return {j, bound};
}

// Pareto cumulant F(theta) = -log(theta-1); J in the same cancellation-free
// shape. m - s1 = (1-alpha)(s2-s1) and m - s2 = alpha(s1-s2) are exact.
JensenParts jensen_core_pareto(double s1, double s2, double alpha) {
    const double m = s2 + alpha * (s1 - s2);
    if (!(m > 1.0)) throw DomainError("interpolated exponent alpha s1 + (1-alpha) s2 must exceed 1");
    const double j = alpha * std::log1p((1.0 - alpha) * (s2 - s1) / (s1 - 1.0)) +
                     (1.0 - alpha) * std::log1p(alpha * (s1 - s2) / (s2 - 1.0));
    return {j, 0.0};
}

JensenParts jensen_core(Family family, double s1, double s2, double alpha, std::uint64_t k0,
                        const SeriesPolicy& policy) {
    require_shape(s1, "s1");
    require_shape(s2, "s2");
    policy.validate();
    if (family == Family::pareto) return jensen_core_pareto(s1, s2, alpha);
    return jensen_core_zeta(s1, s2, alpha, k0, policy);
}

void require_interior_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie strictly in (0, 1)");
}

void require_general_alpha(double alpha) {
    if (!(alpha > 0.0) || alpha == 1.0) throw DomainError("alpha must be positive and != 1");
}

std::optional<int> as_even_int(double s) {
    const double r = std::nearbyint(s);
    if (std::abs(s - r) > 1e-9) return std::nullopt;
    const int v = static_cast<int>(r);
    if (v < 2 || v % 2 != 0 || v > 128) return std::nullopt;
    return v;
}

// Exact symbolic alpha-divergence when s1, s2 and the interpolated exponent
// are all even integers and alpha is a small-denominator rational.
std::optional<ExactRootForm> try_exact_alpha(double s1, double s2, double alpha) {
    const auto e1 = as_even_int(s1);
    const auto e2 = as_even_int(s2);
    if (!e1 || !e2) return std::nullopt;
    for (long q = 2; q <= 64; ++q) {
        const long p = std::lround(alpha * static_cast<double>(q));
        if (p <= 0 || p >= q) continue;
        if (std::abs(alpha * static_cast<double>(q) - static_cast<double>(p)) > 1e-9) continue;
        if (std::gcd(p, q) != 1) continue;
        const long mnum = p * *e1 + (q - p) * *e2;
        if (mnum % q != 0) return std::nullopt;
        const long m = mnum / q;
        if (m < 2 || m % 2 != 0 || m > 128) return std::nullopt;
        const PiPowerValue num = zeta_even_exact(static_cast<int>(m)).pow(static_cast<unsigned>(q));
        const PiPowerValue den =
            zeta_even_exact(*e1).pow(static_cast<unsigned>(p)) *
            zeta_even_exact(*e2).pow(static_cast<unsigned>(q - p));
        const PiPowerValue ratio = num / den;
        if (ratio.pi_exponent() != 0) return std::nullopt;  // cannot happen: q m = p s1 + (q-p) s2
        return ExactRootForm{ExactRational(q * q, p * (q - p)), ratio.coefficient(),
                             static_cast<unsigned>(q)};
    }
    return std::nullopt;
}

DivergenceInputs make_inputs(Family family, double s1, double s2, std::uint64_t k0) {
    DivergenceInputs in;
    in.family = family;
    in.s1 = s1;
    in.s2 = s2;
    in.k0 = k0;
    return in;
}

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

struct TailEst {
    double value;
    double bound;
};

// sum_{i=N+1}^inf i^{-m}: integral plus the half-term and first derivative
// corrections; the remainder is bounded by the first omitted correction.
TailEst power_tail_after(double N, double m) {
    const double v = std::pow(N, 1.0 - m) / (m - 1.0) - 0.5 * std::pow(N, -m) +
                     (m / 12.0) * std::pow(N, -m - 1.0);
    const double b = 2.0 * (m * (m + 1.0) * (m + 2.0) / 720.0) * std::pow(N, -m - 3.0);
    return {v, b};
}

// sum_{i=N+1}^inf log(i) i^{-m}, same construction for f(x) = log(x) x^{-m}.
TailEst powerlog_tail_after(double N, double m) {
    const double lnN = std::log(N);
    const double sm1 = m - 1.0;
    const double integral = std::pow(N, 1.0 - m) * (lnN / sm1 + 1.0 / (sm1 * sm1));
    const double g = lnN * std::pow(N, -m);
    const double gp = std::pow(N, -m - 1.0) * (1.0 - m * lnN);
    const double a3 = m * (m + 1.0) * (m + 2.0);
    const double b3 = m * (m + 1.0) + (m + 2.0) * (2.0 * m + 1.0);
    const double bound = 2.0 * (a3 * lnN + b3) * std::pow(N, -m - 3.0) / 720.0;
    return {integral - 0.5 * g - gp / 12.0, bound};
}

// Composite Simpson on [0, hi]; panels is forced even.
double simpson(const std::function<double(double)>& f, double hi, std::size_t panels) {
    if (panels % 2 != 0) ++panels;
    const double h = hi / static_cast<double>(panels);
    CompensatedSum acc;
    acc.add(f(0.0));
    acc.add(f(hi));
    for (std::size_t i = 1; i < panels; ++i)
        acc.add((i % 2 == 1 ? 4.0 : 2.0) * f(h * static_cast<double>(i)));
    return acc.value() * h / 3.0;
}

}  // namespace

double jensen_skewed(Family family, double s1, double s2, double alpha, std::uint64_t k0,
                     const SeriesPolicy& policy) {
    require_interior_alpha(alpha);
    return jensen_core(family, s1, s2, alpha, k0, policy).j;
}

double bhattacharyya_coeff(Family family, double s1, double s2, double alpha, std::uint64_t k0,
                           const SeriesPolicy& policy) {
    require_interior_alpha(alpha);
    return std::exp(-jensen_core(family, s1, s2, alpha, k0, policy).j);
}

DivergenceResult alpha_divergence(Family family, double s1, double s2, double alpha,
                                  std::uint64_t k0, const SeriesPolicy& policy) {
    require_interior_alpha(alpha);
    const JensenParts jp = jensen_core(family, s1, s2, alpha, k0, policy);
    const double scale = 1.0 / (alpha * (1.0 - alpha));
    DivergenceResult r;
    r.value = -std::expm1(-jp.j) * scale;
    r.certificate = std::exp(-jp.j) * jp.bound * scale;
    r.closed_form = family == Family::pareto;
    r.method = family == Family::pareto ? "closed-form" : "jensen-series";
    r.inputs = make_inputs(family, s1, s2, k0);
    r.inputs.alpha = alpha;
    if (family == Family::zeta && k0 == 1) {
        if (auto exact = try_exact_alpha(s1, s2, alpha)) r.exact = std::move(*exact);
    }
    return r;
}

DivergenceResult hellinger_squared(Family family, double s1, double s2, std::uint64_t k0,
                                   const SeriesPolicy& policy) {
    return alpha_divergence(family, s1, s2, 0.5, k0, policy);
}

DivergenceResult sharma_mittal(Family family, double s1, double s2, const SharmaMittalSpec& spec,
                               std::uint64_t k0, const SeriesPolicy& policy) {
    const JensenParts jp = jensen_core(family, s1, s2, spec.alpha, k0, policy);
    const double c = (1.0 - spec.beta) / (1.0 - spec.alpha);
    DivergenceResult r;
    // (I^c - 1)/(beta - 1) with I = exp(-J)
    r.value = std::expm1(-c * jp.j) / (spec.beta - 1.0);
    r.certificate = std::abs(c / (spec.beta - 1.0)) * std::exp(-c * jp.j) * jp.bound;
    r.closed_form = family == Family::pareto;
    r.method = family == Family::pareto ? "closed-form" : "jensen-series";
    r.inputs = make_inputs(family, s1, s2, k0);
    r.inputs.alpha = spec.alpha;
    r.inputs.beta = spec.beta;
    return r;
}

DivergenceResult renyi(Family family, double s1, double s2, double alpha, std::uint64_t k0,
                       const SeriesPolicy& policy) {
    require_general_alpha(alpha);
    const JensenParts jp = jensen_core(family, s1, s2, alpha, k0, policy);
    DivergenceResult r;
    r.value = jp.j / (1.0 - alpha);
    r.certificate = jp.bound / std::abs(1.0 - alpha);
    r.closed_form = family == Family::pareto;
    r.method = family == Family::pareto ? "closed-form" : "jensen-series";
    r.inputs = make_inputs(family, s1, s2, k0);
    r.inputs.alpha = alpha;
    return r;
}

DivergenceResult tsallis(Family family, double s1, double s2, double alpha, std::uint64_t k0,
                         const SeriesPolicy& policy) {
    require_general_alpha(alpha);
    const JensenParts jp = jensen_core(family, s1, s2, alpha, k0, policy);
    DivergenceResult r;
    // (I - 1)/(alpha - 1); identical expression to sharma_mittal at beta = alpha
    r.value = std::expm1(-jp.j) / (alpha - 1.0);
    r.certificate = std::exp(-jp.j) * jp.bound / std::abs(alpha - 1.0);
    r.closed_form = family == Family::pareto;
    r.method = family == Family::pareto ? "closed-form" : "jensen-series";
    r.inputs = make_inputs(family, s1, s2, k0);
    r.inputs.alpha = alpha;
    return r;
}

namespace {

DivergenceResult kl_pareto_closed(double s1, double s2) {
    DivergenceResult r;
    // log((s1-1)/(s2-1)) + (s2-s1)/(s1-1), stable when s1 ~ s2
    r.value = std::log1p((s1 - s2) / (s2 - 1.0)) + (s2 - s1) / (s1 - 1.0);
    r.certificate = 0.0;
    r.closed_form = true;
    r.method = "closed-form";
    r.inputs = make_inputs(Family::pareto, s1, s2, 1);
    return r;
}

}  // namespace

DivergenceResult kl_divergence(Family family, double s1, double s2, const KLMethod& method,
                               std::uint64_t k0, const SeriesPolicy& policy) {
    require_shape(s1, "s1");
    require_shape(s2, "s2");
    policy.validate();

    if (method.tag == KLMethodTag::epsilon_approx) {
        const double w = method.s1_weight;
        if (!(w > 0.0 && w < 1.0))
            throw DomainError("epsilon_approx: interpolation weight must lie in (0, 1)");
        const JensenParts jp = jensen_core(family, s1, s2, w, k0, policy);
        const double scale = 1.0 / (w * (1.0 - w));
        DivergenceResult r;
        r.value = -std::expm1(-jp.j) * scale;
        r.certificate = std::exp(-jp.j) * jp.bound * scale;
        r.closed_form = false;
        r.method = "epsilon";
        r.inputs = make_inputs(family, s1, s2, k0);
        r.inputs.alpha = w;
        return r;
    }

    if (family == Family::pareto) return kl_pareto_closed(s1, s2);

    const SeriesPolicy tight = policy.tightened();
    DivergenceResult r;
    r.inputs = make_inputs(Family::zeta, s1, s2, k0);
    r.method = to_string(method.tag);
    r.closed_form = false;

    switch (method.tag) {
        case KLMethodTag::log_series: {
            // log(zeta(s2)/zeta(s1)) + (s2-s1) L(s1)/zeta(s1)
            const SeriesValue z1 = hurwitz_zeta(s1, k0, tight);
            const SeriesValue d21 = zeta_difference(s2, s1, k0, tight);
            const SeriesValue L1 = log_weighted_zeta_series(s1, k0, tight);
            const double del = d21.value / z1.value;
            const double ratio = L1.value / z1.value;
            r.value = std::log1p(del) + (s2 - s1) * ratio;
            const double bdel =
                (d21.truncation_bound + std::abs(del) * z1.truncation_bound) / z1.value;
            const double bratio =
                (L1.truncation_bound + std::abs(ratio) * z1.truncation_bound) / z1.value;
            r.certificate = bdel / (1.0 + del) + std::abs(s2 - s1) * bratio;
            break;
        }
        case KLMethodTag::entropy_form: {
            // log zeta(s2) - H[p_{s1}] + s2 L(s1)/zeta(s1)
            const SeriesValue z1 = hurwitz_zeta(s1, k0, tight);
            const SeriesValue z2 = hurwitz_zeta(s2, k0, tight);
            const SeriesValue H = zeta_entropy(GeneralizedZetaParam(s1, k0), tight);
            const SeriesValue L1 = log_weighted_zeta_series(s1, k0, tight);
            const double ratio = L1.value / z1.value;
            r.value = std::log(z2.value) - H.value + s2 * ratio;
            const double bratio =
                (L1.truncation_bound + std::abs(ratio) * z1.truncation_bound) / z1.value;
            r.certificate =
                z2.truncation_bound / z2.value + H.truncation_bound + std::abs(s2) * bratio;
            break;
        }
        case KLMethodTag::mangoldt_form: {
            if (k0 != 1)
                throw DomainError("mangoldt KL form is defined for the plain zeta family (k0 = 1)");
            // log zeta(s2) - H[p_{s1}] + s2 sum Lambda(i)/i^{s1}
            const SeriesValue z2 = zeta_real(s2, tight);
            const SeriesValue H = zeta_entropy(ZetaParam(s1), tight);
            const SeriesValue eta = zeta_log_derivative(s1, tight);
            r.value = std::log(z2.value) - H.value - s2 * eta.value;
            r.certificate = z2.truncation_bound / z2.value + H.truncation_bound +
                            std::abs(s2) * eta.truncation_bound;
            break;
        }
        case KLMethodTag::fenchel_young: {
            if (k0 != 1)
                throw DomainError(
                    "fenchel-young KL form is defined for the plain zeta family (k0 = 1)");
            // F(s2) + F*(eta(s1)) - s2 eta(s1)
            const double tol = std::max(policy.target_rel_error * 1e-1, 1e-13);
            const SeriesValue z2 = zeta_real(s2, tight);
            const SeriesValue eta1 = zeta_log_derivative(s1, tight);
            const MomentParam m1(eta1.value);
            const double fstar = conjugate_value(Family::zeta, m1, tol, policy);
            r.value = std::log(z2.value) + fstar - s2 * eta1.value;
            // theta(eta) recovered to tol propagates first-order through
            // F*' = theta; the stationarity of the Legendre transform leaves
            // only the |s2 - theta| tol term plus series certificates
            r.certificate = z2.truncation_bound / z2.value +
                            (std::abs(s2 - s1) + 1.0) * (eta1.truncation_bound + tol);
            break;
        }
        case KLMethodTag::epsilon_approx:
            break;  // handled above
    }
    return r;
}

SeriesValue brute_force_bhattacharyya(Family family, double s1, double s2, double alpha,
                                      std::size_t terms, std::uint64_t k0) {
    require_shape(s1, "s1");
    require_shape(s2, "s2");
    if (terms < 1) throw DomainError("brute_force_bhattacharyya: terms must be >= 1");
    // any alpha is fine as long as the interpolated exponent converges
    const double m = s2 + alpha * (s1 - s2);
    if (!(m > 1.0)) throw DomainError("interpolated exponent alpha s1 + (1-alpha) s2 must exceed 1");

    if (family == Family::pareto) {
        // int_1^inf q1^a q2^(1-a) dx with x = exp(u): C int_0^inf e^{-(m-1)u} du
        const double c =
            std::pow(s1 - 1.0, alpha) * std::pow(s2 - 1.0, 1.0 - alpha);
        const double rate = m - 1.0;
        const double hi = 45.0 / rate;
        const auto f = [&](double u) { return c * std::exp(-rate * u); };
        const std::size_t panels = std::max<std::size_t>(terms, 8);
        const double coarse = simpson(f, hi, panels / 2);
        const double fine = simpson(f, hi, panels);
        const double tail = c * std::exp(-rate * hi) / rate;
        return {fine, std::abs(fine - coarse) + tail, panels, SeriesMethod::integral_tail};
    }

    SeriesPolicy tight;
    tight.target_rel_error = 5e-16;
    const SeriesValue z1 = hurwitz_zeta(s1, k0, tight);
    const SeriesValue z2 = hurwitz_zeta(s2, k0, tight);
    const double norm = std::pow(z1.value, alpha) * std::pow(z2.value, 1.0 - alpha);
    CompensatedSum acc;
    // the tail bound needs its start inside the monotone region, x >= 4
    const std::uint64_t last = std::max<std::uint64_t>(k0 + terms - 1, 4);
    for (std::uint64_t i = k0; i <= last; ++i)
        acc.add(std::pow(static_cast<double>(i), -m));
    const TailEst tail = power_tail_after(static_cast<double>(last), m);
    const double value = (acc.value() + tail.value) / norm;
    const double norm_rel =
        alpha * z1.truncation_bound / z1.value + (1.0 - alpha) * z2.truncation_bound / z2.value;
    const double bound = tail.bound / norm + std::abs(value) * norm_rel;
    return {value, bound, terms, SeriesMethod::integral_tail};
}

SeriesValue brute_force_kl(Family family, double s1, double s2, std::size_t terms,
                           std::uint64_t k0) {
    require_shape(s1, "s1");
    require_shape(s2, "s2");
    if (terms < 1) throw DomainError("brute_force_kl: terms must be >= 1");

    if (family == Family::pareto) {
        // int_1^inf q1 log(q1/q2) dx with x = exp(u):
        // (s1-1) int_0^inf e^{-(s1-1)u} (K + A u) du
        const double rate = s1 - 1.0;
        const double k = std::log((s1 - 1.0) / (s2 - 1.0));
        const double a = s2 - s1;
        const double hi = 45.0 / rate;
        const auto f = [&](double u) { return rate * std::exp(-rate * u) * (k + a * u); };
        const std::size_t panels = std::max<std::size_t>(terms, 8);
        const double coarse = simpson(f, hi, panels / 2);
        const double fine = simpson(f, hi, panels);
        const double tail =
            std::exp(-rate * hi) * (std::abs(k) + std::abs(a) * hi + std::abs(a) / rate);
        return {fine, std::abs(fine - coarse) + tail, panels, SeriesMethod::integral_tail};
    }

    SeriesPolicy tight;
    tight.target_rel_error = 5e-16;
    const SeriesValue z1 = hurwitz_zeta(s1, k0, tight);
    const SeriesValue z2 = hurwitz_zeta(s2, k0, tight);
    const double k = std::log(z2.value / z1.value);
    const double a = s2 - s1;
    CompensatedSum acc;
    const std::uint64_t last = std::max<std::uint64_t>(k0 + terms - 1, 4);
    for (std::uint64_t i = k0; i <= last; ++i) {
        const double x = static_cast<double>(i);
        acc.add(std::pow(x, -s1) * (a * std::log(x) + k));
    }
    const TailEst tp = power_tail_after(static_cast<double>(last), s1);
    const TailEst tl = powerlog_tail_after(static_cast<double>(last), s1);
    const double value = (acc.value() + a * tl.value + k * tp.value) / z1.value;
    const double zrel = z1.truncation_bound / z1.value + z2.truncation_bound / z2.value;
    const double bound = (std::abs(a) * tl.bound + std::abs(k) * tp.bound) / z1.value +
                         zrel * (1.0 + std::abs(value));
    return {value, bound, terms, SeriesMethod::integral_tail};
}

}  // namespace zetadiv
