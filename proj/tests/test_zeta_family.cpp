#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "zetadiv/zeta_family.hpp"

using namespace zetadiv;

namespace {

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        path = (std::filesystem::temp_directory_path() /
                ("zetadiv_test_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++) + ".txt"))
                   .string();
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::filesystem::remove(path); }
    static inline int counter = 0;
};

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(ZetaParam(1.0), DomainError);
    CHECK_THROWS_AS(ZetaParam(0.5), DomainError);
    CHECK_THROWS_AS(GeneralizedZetaParam(2.0, 0), DomainError);
    CHECK_THROWS_AS(ParetoParam(1.0), DomainError);
    CHECK_THROWS_AS(MomentParam(0.0), DomainError);
    CHECK_THROWS_AS(MomentParam(0.5), DomainError);
    CHECK_NOTHROW(MomentParam(-0.5));
}

TEST_CASE("zeta pmf") {
    CHECK(rel_diff(zeta_pmf(ZetaParam(2.0), 1), 0.60792710185402663) < 1e-12);
    CHECK(rel_diff(zeta_pmf(ZetaParam(4.0), 2), 0.057746150182599385) < 1e-12);
    CHECK_THROWS_AS(zeta_pmf(ZetaParam(2.0), 0), DomainError);

    SUBCASE("normalization: partial sum plus midpoint tail reaches 1") {
        const double s = 2.0;
        long double acc = 0.0L;
        for (std::uint64_t x = 1; x <= 100'000; ++x)
            acc += static_cast<long double>(zeta_pmf(ZetaParam(s), x));
        const long double b = 100'000.5L;
        acc += powl(b, 1.0L - s) / ((s - 1.0L) * zeta_real(s).value);
        CHECK(std::abs(static_cast<double>(acc) - 1.0) < 1e-10);
    }

    SUBCASE("log-space variant survives where the pmf underflows") {
        const double lp = zeta_log_pmf(ZetaParam(12.0), 1'000'000);
        CHECK(lp == doctest::Approx(-12.0 * std::log(1e6) -
                                    std::log(zeta_real(12.0).value))
                        .epsilon(1e-13));
        CHECK(std::exp(zeta_log_pmf(ZetaParam(2.0), 7)) ==
              doctest::Approx(zeta_pmf(ZetaParam(2.0), 7)).epsilon(1e-14));
    }
}

TEST_CASE("generalized zeta pmf reduces at k0 = 1 and shifts support") {
    const GeneralizedZetaParam g1(2.5, 1);
    CHECK(zeta_pmf(g1, 3) == zeta_pmf(ZetaParam(2.5), 3));

    const GeneralizedZetaParam g4(2.5, 4);
    CHECK_THROWS_AS(zeta_pmf(g4, 3), DomainError);
    const double z = hurwitz_zeta(2.5, 4).value;
    CHECK(rel_diff(zeta_pmf(g4, 4), std::pow(4.0, -2.5) / z) < 1e-13);
}

TEST_CASE("exponential family identity: pmf = exp(theta t(x) - F(theta))") {
    for (const double s : {1.5, 2.0, 4.0, 12.0}) {
        const double F = cumulant(Family::zeta, s);
        for (const std::uint64_t x : {1ull, 2ull, 17ull, 400ull, 10000ull}) {
            const double direct = zeta_pmf(ZetaParam(s), x);
            const double ef = std::exp(-s * std::log(static_cast<double>(x)) - F);
            CHECK(rel_diff(direct, ef) < 1e-12);
        }
    }
}

TEST_CASE("cumulant values") {
    CHECK(rel_diff(cumulant(Family::zeta, 2.0), 0.49770030247074535) < 1e-12);
    CHECK(cumulant(Family::pareto, 2.0) == 0.0);
    const double f30 = cumulant(Family::zeta, 30.0);
    CHECK(f30 > 0.0);
    CHECK(f30 < 1e-9);
    CHECK_THROWS_AS(cumulant(Family::zeta, 1.0), DomainError);
    CHECK_THROWS_AS(cumulant(Family::pareto, 0.9), DomainError);
    CHECK(cumulant(2.0, 1, SeriesPolicy{}) == cumulant(Family::zeta, 2.0));
    CHECK(cumulant(2.0, 3, SeriesPolicy{}) ==
          doctest::Approx(std::log(hurwitz_zeta(2.0, 3).value)).epsilon(1e-15));
}

TEST_CASE("cumulant is strictly convex along a grid") {
    for (const Family fam : {Family::zeta, Family::pareto}) {
        const double step = 0.05;
        double f0 = cumulant(fam, 1.1);
        double f1 = cumulant(fam, 1.1 + step);
        for (double theta = 1.1 + 2 * step; theta < 6.0; theta += step) {
            const double f2 = cumulant(fam, theta);
            CHECK(f2 - 2 * f1 + f0 > 0.0);
            f0 = f1;
            f1 = f2;
        }
    }
}

TEST_CASE("moment map") {
    CHECK(rel_diff(moment_from_natural(Family::zeta, 4.0).eta, -0.063669764955371126) < 1e-11);
    CHECK(moment_from_natural(Family::pareto, 4.0).eta == doctest::Approx(-1.0 / 3.0).epsilon(1e-16));

    SUBCASE("finite-difference cross-check of eta = F'") {
        const double h = 1e-6;
        for (const double theta : {1.5, 2.5, 4.0}) {
            for (const Family fam : {Family::zeta, Family::pareto}) {
                const double fd =
                    (cumulant(fam, theta + h) - cumulant(fam, theta - h)) / (2.0 * h);
                CHECK(std::abs(moment_from_natural(fam, theta).eta - fd) < 1e-8);
            }
        }
    }

    SUBCASE("strictly increasing in theta (convexity of F)") {
        for (const Family fam : {Family::zeta, Family::pareto}) {
            double prev = moment_from_natural(fam, 1.2).eta;
            for (const double theta : {1.5, 2.0, 3.0, 5.0, 9.0}) {
                const double e = moment_from_natural(fam, theta).eta;
                CHECK(e > prev);
                prev = e;
            }
        }
    }
}

TEST_CASE("natural_from_moment") {
    SUBCASE("pareto closed-form inverse round-trips exactly") {
        for (const double theta : {1.5, 2.0, 4.0, 12.0}) {
            const MomentParam eta = moment_from_natural(Family::pareto, theta);
            CHECK(natural_from_moment(Family::pareto, eta) == doctest::Approx(theta).epsilon(1e-15));
        }
        CHECK(natural_from_moment(Family::pareto, MomentParam(-1.0 / 3.0)) ==
              doctest::Approx(4.0).epsilon(1e-15));
    }
    SUBCASE("zeta bisection inverts the true eta(4)") {
        const double theta = natural_from_moment(Family::zeta, MomentParam(-0.063669764955371126),
                                                 1e-10);
        CHECK(std::abs(theta - 4.0) < 1e-8);
    }
    SUBCASE("eta = -log 2 round-trips through the moment map") {
        const double theta = natural_from_moment(Family::zeta, MomentParam(-std::log(2.0)), 1e-10);
        CHECK(std::abs(moment_from_natural(Family::zeta, theta).eta + std::log(2.0)) < 1e-9);
        CHECK(std::abs(theta - 1.8791006722784632) < 1e-6);
    }
    SUBCASE("bracket expands past the initial (1+delta, 64) interval") {
        const double eta80 = moment_from_natural(Family::zeta, 80.0).eta;  // ~ -5.7e-25
        const double theta = natural_from_moment(Family::zeta, MomentParam(eta80), 1e-30);
        CHECK(std::abs(theta - 80.0) < 1e-3);
    }
}

TEST_CASE("mle_fit") {
    SUBCASE("constructed sample of twos solves eta(theta) = -log 2") {
        SampleSet data;
        data.observations = {2, 2, 2, 2};
        const MleResult r = mle_fit(Family::zeta, data, 1e-10);
        CHECK(r.n == 4);
        CHECK(r.eta_hat == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
        CHECK(std::abs(moment_from_natural(Family::zeta, r.theta_hat).eta - r.eta_hat) < 1e-9);
        // log-likelihood equals the direct sum of log pmfs
        double ll = 0.0;
        for (const double x : data.observations)
            ll += zeta_log_pmf(ZetaParam(r.theta_hat), static_cast<std::uint64_t>(x));
        CHECK(r.log_likelihood == doctest::Approx(ll).epsilon(1e-9));
    }
    SUBCASE("degenerate all-ones sample raises the typed error") {
        SampleSet ones;
        ones.observations = {1, 1, 1};
        CHECK_THROWS_AS(mle_fit(Family::zeta, ones, 1e-10), DegenerateSampleError);
    }
    SUBCASE("empty sample is a domain error") {
        CHECK_THROWS_AS(mle_fit(Family::zeta, SampleSet{}, 1e-10), DomainError);
    }
    SUBCASE("pareto fit matches the closed form") {
        SampleSet data;
        data.observations = {1.5, 2.0, 3.0, 8.0};
        double sum_log = 0.0;
        for (const double x : data.observations) sum_log += std::log(x);
        const double eta_hat = -sum_log / 4.0;
        const MleResult r = mle_fit(Family::pareto, data);
        CHECK(r.theta_hat == doctest::Approx(1.0 - 1.0 / eta_hat).epsilon(1e-15));
    }
    SUBCASE("statistical round trip at moderate sample size") {
        const SampleSet draws = sample_zeta(ZetaParam(2.5), 20'000, 20240817);
        const MleResult r = mle_fit(Family::zeta, draws, 1e-9);
        CHECK(r.theta_hat > 2.35);
        CHECK(r.theta_hat < 2.65);
    }
}

TEST_CASE("zeta entropy") {
    SUBCASE("literal 100-term sum reproduces the published value") {
        CHECK(std::abs(zeta_entropy_literal(ZetaParam(4.0), 100) - 0.3337829096182664) < 1e-13);
        // term-for-term against the long-double oracle
        const double z4 = 1.0823232337111382;
        CHECK(std::abs(zeta_entropy_literal(ZetaParam(4.0), 100) -
                       oracles::zeta_entropy_direct(4.0, 100, z4)) < 1e-14);
    }
    SUBCASE("certified decomposition matches a deep literal sum") {
        const SeriesValue h = zeta_entropy(ZetaParam(4.0));
        CHECK(rel_diff(h.value, 0.33378893288882014) < 1e-12);
        CHECK(std::abs(h.value - zeta_entropy_literal(ZetaParam(4.0), 100'000)) < 1e-10);
        CHECK(rel_diff(zeta_entropy(ZetaParam(2.0)).value, 1.637622288659811) < 1e-12);
    }
    SUBCASE("entropy is nonnegative") {
        for (const double s : {1.2, 1.5, 2.0, 4.0, 12.0, 25.0})
            CHECK(zeta_entropy(ZetaParam(s)).value >= 0.0);
    }
    SUBCASE("generalized entropy reduces at k0 = 1") {
        const SeriesValue a = zeta_entropy(ZetaParam(3.0));
        const SeriesValue b = zeta_entropy(GeneralizedZetaParam(3.0, 1));
        CHECK(a.value == b.value);
    }
}

TEST_CASE("pareto pdf and entropy") {
    CHECK(pareto_pdf(ParetoParam(2.0), 2.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(pareto_pdf(ParetoParam(4.0), 1.0 + 1e-12) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK_THROWS_AS(pareto_pdf(ParetoParam(2.0), 1.0), DomainError);
    CHECK_THROWS_AS(pareto_pdf(ParetoParam(2.0), 0.5), DomainError);

    SUBCASE("density integrates to one") {
        for (const double s : {2.0, 4.0, 12.0}) {
            const double mass = oracles::pareto_integral(
                [&](double x) { return pareto_pdf(ParetoParam(s), x); }, s - 1.0);
            CHECK(std::abs(mass - 1.0) < 1e-10);
        }
    }
    SUBCASE("closed-form entropy values") {
        CHECK(pareto_entropy(ParetoParam(2.0)) == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(rel_diff(pareto_entropy(ParetoParam(4.0)), 0.23472104466522364) < 1e-14);
    }
    SUBCASE("entropy matches quadrature of -integral q log q") {
        for (const double s : {4.0, 12.0}) {
            const double quad = oracles::pareto_integral(
                [&](double x) {
                    const double q = pareto_pdf(ParetoParam(s), x);
                    return -q * std::log(q);
                },
                s - 1.0);
            CHECK(std::abs(pareto_entropy(ParetoParam(s)) - quad) < 1e-10);
        }
    }
}

TEST_CASE("conjugate is the negentropy") {
    SUBCASE("pareto closed forms") {
        CHECK(conjugate_value(Family::pareto, MomentParam(-1.0)) ==
              doctest::Approx(-2.0).epsilon(1e-15));
        CHECK(conjugate_value(Family::pareto, MomentParam(-1.0 / 3.0)) ==
              doctest::Approx(-(4.0 / 3.0 - std::log(3.0))).epsilon(1e-14));
    }
    SUBCASE("negentropy identity on both families") {
        for (const double s : {2.0, 3.0, 4.0, 12.0}) {
            const MomentParam ez = moment_from_natural(Family::zeta, s);
            CHECK(std::abs(conjugate_value(Family::zeta, ez, 1e-11) +
                           zeta_entropy(ZetaParam(s)).value) < 1e-9);
            const MomentParam ep = moment_from_natural(Family::pareto, s);
            CHECK(std::abs(conjugate_value(Family::pareto, ep) + pareto_entropy(ParetoParam(s))) <
                  1e-12);
        }
    }
}

TEST_CASE("zeta sampler") {
    SUBCASE("fixed seed reproduces the identical sequence") {
        const SampleSet a = sample_zeta(ZetaParam(2.0), 1000, 42);
        const SampleSet b = sample_zeta(ZetaParam(2.0), 1000, 42);
        CHECK(a.observations == b.observations);
        const SampleSet c = sample_zeta(ZetaParam(2.0), 1000, 43);
        CHECK(a.observations != c.observations);
    }
    SUBCASE("empirical frequency of x = 1 under p_2 matches 6/pi^2") {
        const SampleSet draws = sample_zeta(ZetaParam(2.0), 1'000'000, 7);
        std::size_t ones = 0;
        for (const double x : draws.observations)
            if (x == 1.0) ++ones;
        const double freq = static_cast<double>(ones) / 1e6;
        CHECK(std::abs(freq - 0.60792710185402663) < 0.002);
    }
    SUBCASE("empirical mean of log x under p_4 matches -eta(4)") {
        const std::size_t n = 200'000;
        const SampleSet draws = sample_zeta(ZetaParam(4.0), n, 11);
        double mean = 0.0, m2 = 0.0;
        std::size_t k = 0;
        for (const double x : draws.observations) {
            ++k;
            const double lx = std::log(x);
            const double d = lx - mean;
            mean += d / static_cast<double>(k);
            m2 += d * (lx - mean);
        }
        const double sd = std::sqrt(m2 / static_cast<double>(n - 1));
        const double sigma_hat = sd / std::sqrt(static_cast<double>(n));
        CHECK(std::abs(mean - 0.063669764955371126) < 3.0 * sigma_hat + 1e-6);
    }
}

TEST_CASE("sample file ingestion") {
    SUBCASE("comments, blanks and valid values") {
        TempFile f("# header comment\n2\n3   \n\n5 # inline comment\n");
        const SampleSet s = load_sample_set(f.path, Family::zeta);
        CHECK(s.observations == std::vector<double>{2, 3, 5});
    }
    SUBCASE("malformed line reports its number") {
        TempFile f("2\n3\nnot_a_number\n");
        try {
            load_sample_set(f.path, Family::zeta);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 3);
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    SUBCASE("zeta observations must be positive integers") {
        TempFile f("2\n2.5\n");
        CHECK_THROWS_AS(load_sample_set(f.path, Family::zeta), ParseError);
        TempFile g("0\n");
        CHECK_THROWS_AS(load_sample_set(g.path, Family::zeta), ParseError);
    }
    SUBCASE("pareto observations must exceed 1") {
        TempFile f("1.5\n0.8\n");
        CHECK_THROWS_AS(load_sample_set(f.path, Family::pareto), ParseError);
        TempFile g("1.5\n8.25\n");
        const SampleSet s = load_sample_set(g.path, Family::pareto);
        CHECK(s.size() == 2);
    }
    SUBCASE("missing and empty files") {
        CHECK_THROWS_AS(load_sample_set("/nonexistent/zetadiv.txt", Family::zeta), ParseError);
        TempFile f("# only comments\n");
        CHECK_THROWS_AS(load_sample_set(f.path, Family::zeta), ParseError);
    }
    SUBCASE("trailing junk is a hard error") {
        TempFile f("2 3\n");
        CHECK_THROWS_AS(load_sample_set(f.path, Family::zeta), ParseError);
    }
}
