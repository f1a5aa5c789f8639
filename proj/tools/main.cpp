#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "zetadiv/divergences.hpp"
#include "zetadiv/output_record.hpp"
#include "zetadiv/special_functions.hpp"
#include "zetadiv/zeta_family.hpp"

namespace {

using namespace zetadiv;

struct GlobalOpts {
    std::string format = "text";
    SeriesPolicy policy;
    int exit_code = 0;
};

void emit(const GlobalOpts& g, const OutputRecord& rec) {
    if (g.format == "machine")
        std::cout << rec.to_machine() << "\n";
    else
        std::cout << rec.to_text();
}

std::string fmt(double x) { return format_double(x); }

// ---------------------------------------------------------------- zeta ----

struct ZetaArgs {
    double s = 0.0;
    bool exact_even = false;
    std::uint64_t k0 = 1;
};

void run_zeta(GlobalOpts& g, const ZetaArgs& a) {
    OutputRecord rec;
    rec.command = "zeta";
    rec.inputs.emplace_back("s", fmt(a.s));
    if (a.k0 != 1) rec.inputs.emplace_back("k0", std::to_string(a.k0));

    if (a.exact_even) {
        const double r = std::nearbyint(a.s);
        if (a.k0 != 1) throw DomainError("--exact-even applies to the plain zeta function only");
        if (a.s != r || static_cast<long>(r) % 2 != 0 || r < 2.0)
            throw DomainError("--exact-even requires an even integer s >= 2");
        const PiPowerValue v = zeta_even_exact(static_cast<int>(r));
        rec.values.emplace_back("zeta", v.to_double());
        rec.notes.emplace_back("exact", v.str());
        rec.method = "exact-even";
        if (g.format == "text") {
            std::cout << v.str() << " = " << fmt(v.to_double()) << "\n";
            return;
        }
        emit(g, rec);
        return;
    }

    const SeriesValue v = hurwitz_zeta(a.s, a.k0, g.policy);
    rec.values.emplace_back("zeta", v.value);
    rec.certificate = v.truncation_bound;
    rec.method = to_string(v.method);
    rec.terms_used = v.terms_used;
    emit(g, rec);
}

// ---------------------------------------------------------- divergence ----

struct DivArgs {
    std::string family = "zeta";
    double s1 = 0.0;
    double s2 = 0.0;
    double alpha = 0.5;
    double beta = 0.5;
    double epsilon = 0.999;
    std::string kl_method = "log-series";
    std::uint64_t k0 = 1;
    bool oracle = false;
};

void check_oracle(const DivArgs& a, const DivergenceResult& r, OutputRecord& rec) {
    // Brute-force the matching Bhattacharyya/KL definition and require
    // agreement within combined certificates (plus rounding slack).
    const Family fam = family_from_string(a.family);
    double oracle_value = 0.0;
    double oracle_bound = 0.0;
    double closed = r.value;
    const std::size_t terms = 100000;
    if (rec.command == "kl") {
        const SeriesValue o = brute_force_kl(fam, a.s1, a.s2, terms, a.k0);
        oracle_value = o.value;
        oracle_bound = o.truncation_bound;
    } else {
        double alpha = a.alpha;
        if (rec.command == "hellinger2") alpha = 0.5;
        const SeriesValue o = brute_force_bhattacharyya(fam, a.s1, a.s2, alpha, terms, a.k0);
        // compare on the Bhattacharyya coefficient scale
        oracle_value = o.value;
        oracle_bound = o.truncation_bound;
        if (rec.command == "alpha" || rec.command == "hellinger2") {
            closed = 1.0 - r.value * alpha * (1.0 - alpha);
        } else if (rec.command == "renyi") {
            closed = std::exp((alpha - 1.0) * r.value);
        } else if (rec.command == "tsallis") {
            closed = 1.0 + r.value * (alpha - 1.0);
        } else if (rec.command == "sharma-mittal") {
            closed = std::pow(1.0 + r.value * (a.beta - 1.0), (1.0 - alpha) / (1.0 - a.beta));
        }
    }
    const double diff = std::abs(closed - oracle_value);
    const double allowed =
        r.certificate + oracle_bound + 1e-12 * std::max(1.0, std::abs(oracle_value));
    rec.values.emplace_back("oracle", oracle_value);
    rec.values.emplace_back("oracle_discrepancy", diff);
    if (diff > allowed)
        throw std::runtime_error("oracle discrepancy " + fmt(diff) + " exceeds certificate " +
                                 fmt(allowed));
}

void run_divergence(GlobalOpts& g, const DivArgs& a, const std::string& kind) {
    const Family fam = family_from_string(a.family);
    DivergenceResult r;
    if (kind == "alpha") {
        r = alpha_divergence(fam, a.s1, a.s2, a.alpha, a.k0, g.policy);
    } else if (kind == "hellinger2") {
        r = hellinger_squared(fam, a.s1, a.s2, a.k0, g.policy);
    } else if (kind == "sharma-mittal") {
        r = sharma_mittal(fam, a.s1, a.s2, SharmaMittalSpec(a.alpha, a.beta), a.k0, g.policy);
    } else if (kind == "renyi") {
        r = renyi(fam, a.s1, a.s2, a.alpha, a.k0, g.policy);
    } else if (kind == "tsallis") {
        r = tsallis(fam, a.s1, a.s2, a.alpha, a.k0, g.policy);
    } else {  // kl
        const KLMethodTag tag = kl_method_from_string(a.kl_method);
        KLMethod method;
        if (tag == KLMethodTag::epsilon_approx)
            method = KLMethod::epsilon_approx(a.epsilon);
        else
            method = KLMethod{tag, 0.0};
        r = kl_divergence(fam, a.s1, a.s2, method, a.k0, g.policy);
    }

    OutputRecord rec;
    rec.command = kind;
    rec.inputs.emplace_back("family", a.family);
    rec.inputs.emplace_back("s1", fmt(a.s1));
    rec.inputs.emplace_back("s2", fmt(a.s2));
    if (r.inputs.alpha) rec.inputs.emplace_back("alpha", fmt(*r.inputs.alpha));
    if (r.inputs.beta) rec.inputs.emplace_back("beta", fmt(*r.inputs.beta));
    if (a.k0 != 1) rec.inputs.emplace_back("k0", std::to_string(a.k0));
    rec.values.emplace_back("divergence", r.value);
    if (r.exact) rec.notes.emplace_back("exact", r.exact->str());
    rec.certificate = r.closed_form ? 0.0 : r.certificate;
    rec.method = r.closed_form ? "closed-form" : r.method;
    if (a.oracle) check_oracle(a, r, rec);
    emit(g, rec);
}

// ------------------------------------------------------------------ fit ----

struct FitArgs {
    std::string family = "zeta";
    std::string input;
    double tol = 1e-10;
};

void run_fit(GlobalOpts& g, const FitArgs& a) {
    const Family fam = family_from_string(a.family);
    const SampleSet data = load_sample_set(a.input, fam);
    const MleResult r = mle_fit(fam, data, a.tol, g.policy);
    OutputRecord rec;
    rec.command = "fit";
    rec.inputs.emplace_back("family", a.family);
    rec.inputs.emplace_back("input", a.input);
    rec.values.emplace_back("theta_hat", r.theta_hat);
    rec.values.emplace_back("eta_hat", r.eta_hat);
    rec.values.emplace_back("n", static_cast<double>(r.n));
    rec.values.emplace_back("log_likelihood", r.log_likelihood);
    rec.method = "mle";
    emit(g, rec);
}

// -------------------------------------------------------- plot-cumulant ----

struct PlotArgs {
    std::string family = "zeta";
    double min = 0.0;
    double max = 0.0;
    double step = 0.01;
    std::string out;
};

void run_plot(GlobalOpts& g, const PlotArgs& a) {
    if (!(a.min > 1.0)) throw DomainError("plot-cumulant: --min must exceed 1");
    if (!(a.max > a.min)) throw DomainError("plot-cumulant: --max must exceed --min");
    if (!(a.step > 0.0)) throw DomainError("plot-cumulant: --step must be positive");
    const Family fam = family_from_string(a.family);
    std::ofstream out(a.out);
    if (!out) throw ParseError("cannot open output file '" + a.out + "'", 0);
    std::size_t rows = 0;
    for (std::size_t i = 0;; ++i) {
        const double theta = a.min + static_cast<double>(i) * a.step;
        if (theta > a.max + a.step * 0.5) break;
        out << fmt(theta) << "," << fmt(cumulant(fam, theta, g.policy)) << "\n";
        ++rows;
    }
    OutputRecord rec;
    rec.command = "plot-cumulant";
    rec.inputs.emplace_back("family", a.family);
    rec.inputs.emplace_back("out", a.out);
    rec.values.emplace_back("rows", static_cast<double>(rows));
    emit(g, rec);
}

// ---------------------------------------------------------------- table ----

struct TableArgs {
    double s1 = 0.0;
    double s2 = 0.0;
    double alpha = 0.5;
};

void run_table(GlobalOpts& g, const TableArgs& a) {
    const SeriesPolicy& pol = g.policy;
    OutputRecord rec;
    rec.command = "table";
    rec.inputs.emplace_back("s1", fmt(a.s1));
    rec.inputs.emplace_back("s2", fmt(a.s2));
    rec.inputs.emplace_back("alpha", fmt(a.alpha));

    const double z_cumulant = cumulant(Family::zeta, a.s1, pol);
    const double p_cumulant = cumulant(Family::pareto, a.s1, pol);
    const MomentParam z_eta = moment_from_natural(Family::zeta, a.s1, pol);
    const MomentParam p_eta = moment_from_natural(Family::pareto, a.s1, pol);
    const double z_entropy = zeta_entropy(ZetaParam(a.s1), pol).value;
    const double p_entropy = pareto_entropy(ParetoParam(a.s1));
    const double z_conj = conjugate_value(Family::zeta, z_eta, 1e-11, pol);
    const double p_conj = conjugate_value(Family::pareto, p_eta, 1e-11, pol);
    const double z_bhatt = bhattacharyya_coeff(Family::zeta, a.s1, a.s2, a.alpha, 1, pol);
    const double p_bhatt = bhattacharyya_coeff(Family::pareto, a.s1, a.s2, a.alpha, 1, pol);
    const double z_kl = kl_divergence(Family::zeta, a.s1, a.s2, KLMethod::log_series(), 1, pol).value;
    const double p_kl = kl_divergence(Family::pareto, a.s1, a.s2, KLMethod::log_series(), 1, pol).value;

    rec.values.emplace_back("zeta_cumulant", z_cumulant);
    rec.values.emplace_back("pareto_cumulant", p_cumulant);
    rec.values.emplace_back("zeta_moment", z_eta.eta);
    rec.values.emplace_back("pareto_moment", p_eta.eta);
    rec.values.emplace_back("zeta_entropy", z_entropy);
    rec.values.emplace_back("pareto_entropy", p_entropy);
    rec.values.emplace_back("zeta_conjugate", z_conj);
    rec.values.emplace_back("pareto_conjugate", p_conj);
    rec.values.emplace_back("zeta_bhattacharyya", z_bhatt);
    rec.values.emplace_back("pareto_bhattacharyya", p_bhatt);
    rec.values.emplace_back("zeta_kl", z_kl);
    rec.values.emplace_back("pareto_kl", p_kl);
    rec.notes.emplace_back("zeta_conjugate_mode", "numeric");

    if (g.format == "machine") {
        emit(g, rec);
        return;
    }
    const auto row = [](const std::string& name, const std::string& z, const std::string& p,
                        const std::string& note = "") {
        std::printf("%-24s %24s %24s %s\n", name.c_str(), z.c_str(), p.c_str(), note.c_str());
    };
    std::printf("quantity at (s1=%s, s2=%s, alpha=%s)\n", fmt(a.s1).c_str(), fmt(a.s2).c_str(),
                fmt(a.alpha).c_str());
    row("", "zeta", "pareto");
    row("cumulant F(s1)", fmt(z_cumulant), fmt(p_cumulant));
    row("moment eta(s1)", fmt(z_eta.eta), fmt(p_eta.eta));
    row("entropy", fmt(z_entropy), fmt(p_entropy));
    row("conjugate F*(eta(s1))", fmt(z_conj), fmt(p_conj), "(zeta cell numeric)");
    row("bhattacharyya I_alpha", fmt(z_bhatt), fmt(p_bhatt));
    row("kullback-leibler", fmt(z_kl), fmt(p_kl));
}

// --------------------------------------------------------------- verify ----

struct VerifyArgs {
    std::string item;
    double perturb = 0.0;
};

struct GoldenItem {
    std::string name;
    double computed;
    double expected;
    double tol;
    std::string note;
};

std::vector<GoldenItem> golden_items(const SeriesPolicy& pol) {
    std::vector<GoldenItem> items;
    const auto add = [&](const std::string& name, double computed, double expected, double tol,
                         const std::string& note = "") {
        items.push_back({name, computed, expected, tol, note});
    };

    // exact even-argument zeta values
    add("zeta-even-2", zeta_even_exact(2).to_double(), 1.6449340668482264, 1e-12);
    add("zeta-even-4", zeta_even_exact(4).to_double(), 1.0823232337111382, 1e-12);
    add("zeta-even-6", zeta_even_exact(6).to_double(), 1.0173430619844491, 1e-12);
    add("zeta-even-12", zeta_even_exact(12).to_double(), 1.000246086553308, 1e-12);

    // squared Hellinger divergences
    add("hellinger-4-12", hellinger_squared(Family::zeta, 4, 12, 1, pol).value, 0.139929, 1e-6);
    add("hellinger-3-7", hellinger_squared(Family::zeta, 3, 7, 1, pol).value, 0.23261, 1e-5);
    add("bhatt-4-12", bhattacharyya_coeff(Family::zeta, 4, 12, 0.5, 1, pol),
        0.96501763966391728, 1e-9);

    // KL epsilon ladder; the reference constants carry rounding noise of the
    // system that produced them (up to ~4.1e-10), so the check runs at 2e-9
    const double ladder_tol = 2e-9;
    const double weights[5] = {0.99, 0.999, 0.9999, 0.99999, 0.999999};
    const double ladder[5] = {0.416336079049266, 0.429042455891143, 0.430348748348459,
                              0.430479743738878, 0.430492847305713};
    for (int i = 0; i < 5; ++i) {
        const double v =
            kl_divergence(Family::zeta, 4, 12, KLMethod::epsilon_approx(weights[i]), 1, pol).value;
        add("kl-eps-" + format_double(weights[i]), v, ladder[i], ladder_tol,
            "tolerance reflects reference-side rounding");
    }

    // 100-term literal reproductions
    const double eta100 = -von_mangoldt_series_literal(4, 100);
    add("eta-100", eta100, -0.06366938697034288, 1e-13);
    const double h100 = zeta_entropy_literal(ZetaParam(4), 100);
    add("entropy-100", h100, 0.3337829096182664, 1e-13);
    const double kl100 = std::log(zeta_even_exact(12).to_double()) - h100 - 12.0 * eta100;
    add("kl-mangoldt-100", kl100, 0.430495790304827, 1e-12);

    // Pareto KL
    add("kl-pareto-4-12", kl_divergence(Family::pareto, 4, 12).value, 1.367383682536406, 1e-12);
    return items;
}

void run_verify(GlobalOpts& g, const VerifyArgs& a) {
    const auto items = golden_items(g.policy);
    bool matched_any = false;
    int failures = 0;

    // exact rational renderings checked alongside the numeric items
    if (a.item.empty()) {
        const std::pair<int, std::string> exact_cases[] = {
            {2, "pi^2/6"}, {4, "pi^4/90"}, {6, "pi^6/945"}, {12, "691*pi^12/638512875"}};
        for (const auto& [n, expect] : exact_cases) {
            const std::string got = zeta_even_exact(n).str();
            const bool ok = got == expect;
            if (!ok) ++failures;
            std::printf("%s zeta-exact-form-%d got=%s expected=%s\n", ok ? "PASS" : "FAIL", n,
                        got.c_str(), expect.c_str());
        }
        matched_any = true;
    }

    for (const auto& item : items) {
        if (!a.item.empty() && item.name != a.item) continue;
        matched_any = true;
        const double computed = item.computed + a.perturb;
        const bool ok = std::abs(computed - item.expected) <= item.tol;
        if (!ok) ++failures;
        std::printf("%s %s computed=%s expected=%s tol=%s%s%s\n", ok ? "PASS" : "FAIL",
                    item.name.c_str(), format_double(computed).c_str(),
                    format_double(item.expected).c_str(), format_double(item.tol).c_str(),
                    item.note.empty() ? "" : "  # ", item.note.c_str());
    }
    if (!matched_any) throw DomainError("verify: no item named '" + a.item + "'");
    if (failures > 0) {
        std::printf("verify: %d item(s) failed\n", failures);
        g.exit_code = 1;
    } else {
        std::printf("verify: all items passed\n");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"closed-form divergences between zeta and Pareto power-law distributions"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may trail the subcommand

    GlobalOpts g;
    app.add_option("--format", g.format, "output format: text or machine")
        ->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--policy-rel-error", g.policy.target_rel_error,
                   "target relative error for series evaluations");
    app.add_option("--policy-max-terms", g.policy.max_terms, "series term budget");
    app.add_option("--policy-em-cutoff", g.policy.euler_maclaurin_cutoff,
                   "direct terms before the Euler-Maclaurin tail");
    app.add_option("--policy-em-order", g.policy.euler_maclaurin_order,
                   "Euler-Maclaurin correction pairs");

    ZetaArgs za;
    auto* zeta_cmd = app.add_subcommand("zeta", "evaluate the (Hurwitz) zeta function");
    zeta_cmd->add_option("--s", za.s, "argument, must exceed 1")->required();
    zeta_cmd->add_flag("--exact-even", za.exact_even, "exact pi-power form for even integer s");
    zeta_cmd->add_option("--hurwitz-k0", za.k0, "support offset k0 >= 1");
    zeta_cmd->callback([&] { run_zeta(g, za); });

    DivArgs da;
    auto* div_cmd = app.add_subcommand("divergence", "closed-form divergences");
    div_cmd->require_subcommand(1);
    const auto add_div_sub = [&](const std::string& name, const std::string& desc) {
        auto* sub = div_cmd->add_subcommand(name, desc);
        sub->add_option("--family", da.family, "zeta or pareto")->required();
        sub->add_option("--s1", da.s1, "first shape")->required();
        sub->add_option("--s2", da.s2, "second shape")->required();
        sub->add_option("--k0", da.k0, "zeta support offset (generalized family)");
        sub->add_flag("--oracle", da.oracle, "cross-check against the brute-force oracle");
        sub->callback([&, name] { run_divergence(g, da, name); });
        return sub;
    };
    add_div_sub("alpha", "alpha-divergence, alpha in (0,1)")
        ->add_option("--alpha", da.alpha, "skew parameter");
    add_div_sub("hellinger2", "squared Hellinger divergence (alpha = 1/2)");
    {
        auto* sm = add_div_sub("sharma-mittal", "Sharma-Mittal divergence");
        sm->add_option("--alpha", da.alpha, "alpha > 0, alpha != 1");
        sm->add_option("--beta", da.beta, "beta != 1");
    }
    add_div_sub("renyi", "Renyi divergence")->add_option("--alpha", da.alpha, "alpha > 0, != 1");
    add_div_sub("tsallis", "Tsallis divergence")
        ->add_option("--alpha", da.alpha, "alpha > 0, != 1");
    {
        auto* kl = add_div_sub("kl", "Kullback-Leibler divergence");
        kl->add_option("--kl-method", da.kl_method,
                       "log-series, entropy, mangoldt, fenchel-young or epsilon");
        kl->add_option("--alpha", da.epsilon,
                       "interpolation weight on s1 for the epsilon method");
        kl->add_option("--epsilon", da.epsilon, "alias for --alpha on the epsilon method");
    }

    FitArgs fa;
    auto* fit_cmd = app.add_subcommand("fit", "maximum-likelihood fit from a sample file");
    fit_cmd->add_option("--family", fa.family, "zeta or pareto")->required();
    fit_cmd->add_option("--input", fa.input, "one observation per line, # comments")->required();
    fit_cmd->add_option("--tol", fa.tol, "moment-match tolerance");
    fit_cmd->callback([&] { run_fit(g, fa); });

    PlotArgs pa;
    auto* plot_cmd = app.add_subcommand("plot-cumulant", "write theta,F(theta) rows as CSV");
    plot_cmd->add_option("--family", pa.family, "zeta or pareto");
    plot_cmd->add_option("--min", pa.min, "grid start, must exceed 1")->required();
    plot_cmd->add_option("--max", pa.max, "grid end")->required();
    plot_cmd->add_option("--step", pa.step, "grid step");
    plot_cmd->add_option("--out", pa.out, "output CSV path")->required();
    plot_cmd->callback([&] { run_plot(g, pa); });

    TableArgs ta;
    auto* table_cmd = app.add_subcommand("table", "zeta vs pareto family comparison");
    table_cmd->add_option("--s1", ta.s1, "first shape")->required();
    table_cmd->add_option("--s2", ta.s2, "second shape")->required();
    table_cmd->add_option("--alpha", ta.alpha, "Bhattacharyya skew (default 1/2)");
    table_cmd->callback([&] { run_table(g, ta); });

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify", "run the golden-value self checks");
    verify_cmd->add_option("--item", va.item, "run a single named check");
    verify_cmd->add_option("--perturb", va.perturb,
                           "add a bias to every computed value (mutation self-test)");
    verify_cmd->callback([&] { run_verify(g, va); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const zetadiv::DegenerateSampleError& e) {
        std::cerr << "degenerate sample: " << e.what() << "\n";
        return 3;
    } catch (const zetadiv::DomainError& e) {
        std::cerr << "domain: " << e.what() << "\n";
        return 2;
    } catch (const zetadiv::ParseError& e) {
        std::cerr << "input: " << e.what() << "\n";
        return 2;
    } catch (const zetadiv::ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 2;
    } catch (const zetadiv::ConvergenceError& e) {
        std::cerr << "convergence: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return g.exit_code;
}
