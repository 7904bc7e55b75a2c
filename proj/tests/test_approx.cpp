#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gshape/approx.hpp"
#include "gshape/quadrature.hpp"
#include "gshape/sampler.hpp"

using namespace gshape;

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;
constexpr double kPiSqOver6 = 1.6449340668482264365;

SufficientStats stats_of(std::vector<double> data, double mu) {
    return compute_stats(data, mu);
}

}  // namespace

TEST_CASE("init_stirling") {
    CHECK(init_stirling(SufficientStats(), GammaParams(2.0, 3.0)).shape == 2.0);
    CHECK(init_stirling(SufficientStats(), GammaParams(2.0, 3.0)).rate == 3.0);
    const SufficientStats s2(2, 0.0, 2.0, 0.0);
    const GammaParams g2 = init_stirling(s2, GammaParams(1.0, 1.0));
    CHECK(g2.shape == 2.0);
    CHECK(g2.rate == 1.0);
    const SufficientStats s100(100, 0.0, 100.0, 3.5);
    const GammaParams g100 = init_stirling(s100, GammaParams(0.1, 0.1));
    CHECK(g100.shape == doctest::Approx(50.1));
    CHECK(g100.rate == doctest::Approx(3.6));
}

TEST_CASE("init_small_a") {
    CHECK(init_small_a(SufficientStats(), GammaParams(2.0, 3.0)).shape == 2.0);
    const SufficientStats s1(1, 0.0, 1.0, 0.0);
    const GammaParams g1 = init_small_a(s1, GammaParams(1.0, 1.0));
    CHECK(g1.shape == 2.0);
    CHECK(g1.rate == 2.0);
    const SufficientStats s10(10, 0.0, 10.0, 2.0);
    const GammaParams g10 = init_small_a(s10, GammaParams(0.01, 0.01));
    CHECK(g10.shape == doctest::Approx(10.01));
    CHECK(g10.rate == doctest::Approx(12.01));
}

TEST_CASE("refine_once hand-checked cases") {
    // n = 0: every n-term vanishes regardless of a.
    for (double a : {0.01, 1.0, 500.0}) {
        const GammaParams g = refine_once(a, SufficientStats(), GammaParams(0.7, 1.3));
        CHECK(g.shape == 0.7);
        CHECK(g.rate == 1.3);
    }
    // n = 1, a0 = b0 = 1, T = 0, matched at a = 1.
    const SufficientStats s(1, 0.0, 1.0, 0.0);
    const GammaParams g = refine_once(1.0, s, GammaParams(1.0, 1.0));
    CHECK(g.shape == doctest::Approx(kPiSqOver6).epsilon(1e-13));
    CHECK(g.rate == doctest::Approx(kPiSqOver6 - kEulerGamma).epsilon(1e-13));
    CHECK_THROWS_AS(refine_once(0.0, s, GammaParams(1.0, 1.0)), std::domain_error);
}

TEST_CASE("approximate is exact for an empty dataset") {
    const ApproxResult res = approximate(SufficientStats(), GammaParams(2.0, 5.0), {});
    CHECK(res.params.shape == 2.0);
    CHECK(res.params.rate == 5.0);
    CHECK(res.converged);
    CHECK(res.iterations == 1);
    CHECK(res.residual == doctest::Approx(0.0));
}

TEST_CASE("approximate matches the quadrature posterior mean") {
    const SufficientStats s = stats_of({0.5, 1.5, 2.5}, 1.0);
    const GammaParams prior(1.0, 1.0);
    const ApproxResult res = approximate(s, prior, {});
    CHECK(res.converged);
    CHECK(res.iterations <= 4);
    // True posterior mean computed with an external high-precision
    // integrator: 1.452886579988997996.
    CHECK(std::fabs(res.params.mean() / 1.452886579988997996 - 1.0) < 0.02);
    // And against the in-tree quadrature at N = 1e5.
    const ShapePosterior post(s, prior, 1.0);
    const DiscrepancyReport rep = discrepancy(post, res.params, QuadConfig{100000});
    CHECK(std::fabs(res.params.mean() / rep.mean_f - 1.0) < 0.02);
}

TEST_CASE("converged runs sit at a fixed point of refine_once") {
    const SufficientStats s = stats_of({0.5, 1.5, 2.5}, 1.0);
    const GammaParams prior(1.0, 1.0);
    const ApproxResult res = approximate(s, prior, {});
    const double a = res.params.mean();
    const GammaParams next = refine_once(a, s, prior);
    CHECK(std::fabs(a / next.mean() - 1.0) < 1e-8);
}

TEST_CASE("fixed_point_residual hand-checked cases") {
    const ShapePosterior prior_only(SufficientStats(), GammaParams(1.0, 1.0), 1.0);
    CHECK(fixed_point_residual(GammaParams(1.0, 1.0), prior_only) ==
          doctest::Approx(0.0));
    CHECK(fixed_point_residual(GammaParams(2.0, 1.0), prior_only) ==
          doctest::Approx(-1.0));
}

TEST_CASE("residual is small after convergence on random cases") {
    std::mt19937_64 seeder(4242);
    std::uniform_real_distribution<double> logu(-3.0, 3.0);
    std::uniform_int_distribution<int> nn(1, 100);
    for (int rep = 0; rep < 300; ++rep) {
        const int n = nn(seeder);
        const double mu = std::pow(10.0, logu(seeder));
        RngState rng(seeder());
        std::vector<double> data(static_cast<std::size_t>(n));
        for (double& x : data) x = sample_gamma(rng, GammaParams(1.0, 1.0 / mu));
        const GammaParams prior(0.5, 0.5);
        const ApproxResult res = approximate(compute_stats(data, mu), prior, {});
        CHECK(res.converged);
        CHECK(std::fabs(res.residual) <= 1e-6);
    }
}

TEST_CASE("a fixed point exists: the residual changes sign over a wide scan") {
    std::mt19937_64 seeder(555);
    std::uniform_real_distribution<double> logu(-4.0, 4.0);
    std::uniform_int_distribution<int> nn(0, 30);
    for (int rep = 0; rep < 1000; ++rep) {
        const int n = nn(seeder);
        const double mu = std::pow(10.0, logu(seeder));
        RngState rng(seeder());
        std::vector<double> data(static_cast<std::size_t>(n));
        for (double& x : data) x = sample_gamma(rng, GammaParams(2.0, 2.0 / mu));
        const GammaParams prior(std::pow(10.0, 0.4 * logu(seeder)),
                                std::pow(10.0, 0.4 * logu(seeder)));
        const ShapePosterior post(compute_stats(data, mu), prior, mu);
        bool pos = false, neg = false;
        for (double e = -12.0; e <= 12.0; e += 0.1) {
            const double a = std::pow(10.0, e);
            const double v = a * dlog_f(a, post) + 1.0;
            (v >= 0.0 ? pos : neg) = true;
        }
        CHECK(pos);
        CHECK(neg);
    }
}

TEST_CASE("both initializations reach the same fixed point") {
    std::mt19937_64 seeder(808);
    std::uniform_real_distribution<double> logu(-2.0, 2.0);
    std::uniform_int_distribution<int> nn(1, 50);
    const AlgoConfig deep{1e-12, 100};
    for (int rep = 0; rep < 100; ++rep) {
        const int n = nn(seeder);
        const double mu = std::pow(10.0, logu(seeder));
        RngState rng(seeder());
        std::vector<double> data(static_cast<std::size_t>(n));
        for (double& x : data) x = sample_gamma(rng, GammaParams(1.5, 1.5 / mu));
        const SufficientStats s = compute_stats(data, mu);
        const GammaParams prior(1.0, 1.0);

        GammaParams fit = init_small_a(s, prior);
        for (int j = 0; j < deep.max_iters; ++j) {
            const double a = fit.mean();
            fit = refine_once(a, s, prior);
            if (std::fabs(a / fit.mean() - 1.0) < deep.epsilon) break;
        }
        const ApproxResult stirling = approximate(s, prior, deep);
        CHECK(std::fabs(stirling.params.mean() / fit.mean() - 1.0) < 1e-6);
    }
}

TEST_CASE("A exceeds a0 whenever data is present") {
    std::mt19937_64 seeder(9001);
    std::uniform_real_distribution<double> logu(-3.0, 3.0);
    for (int rep = 0; rep < 200; ++rep) {
        RngState rng(seeder());
        std::vector<double> data{sample_gamma(rng, GammaParams(1.0, 1.0))};
        const double a0 = std::pow(10.0, 0.5 * logu(seeder));
        const ApproxResult res = approximate(compute_stats(data, 1.0), GammaParams(a0, a0), {});
        CHECK(res.params.shape > a0);
    }
}

TEST_CASE("hitting max_iters reports converged=false without throwing") {
    const SufficientStats s = stats_of({0.5, 1.5, 2.5}, 1.0);
    const ApproxResult res = approximate(s, GammaParams(1.0, 1.0), AlgoConfig{1e-16, 1});
    CHECK_FALSE(res.converged);
    CHECK(res.iterations == 1);
    CHECK(res.params.shape > 0.0);
    CHECK(res.params.rate > 0.0);
}
