#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "patmix/lagrange.hpp"
#include "patmix/sts.hpp"

using namespace patmix;

namespace {

const double kRoot7 = std::sqrt(7.0);
const double kLambdaStar = 3.0 * (kRoot7 - 2.0) / 4.0;

std::vector<double> fd_gradient(const Pattern& p, const std::vector<double>& x, double h) {
    std::vector<double> g(p.m);
    for (int j = 0; j < p.m; ++j) {
        std::vector<double> hi = x, lo = x;
        hi[j] += h;
        lo[j] -= h;
        g[j] = (lagrange_poly(p, hi) - lagrange_poly(p, lo)) / (2 * h);
    }
    return g;
}

std::vector<Pattern> library() {
    return {bipartite_pattern(), k53_pattern(), b53_pattern(),
            pattern_from_sts(sts_generate(7))};
}

}  // namespace

TEST_CASE("simplex projection") {
    CHECK(project_to_simplex({2.0, 0.0}) == std::vector<double>{1.0, 0.0});
    auto p = project_to_simplex({0.3, 0.3, 0.3});
    for (double c : p) CHECK(c == doctest::Approx(1.0 / 3));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(5);
        for (double& c : v) c = u(rng);
        auto x = project_to_simplex(v);
        CHECK(is_simplex_point(x, 1e-9));
        auto again = project_to_simplex(x);
        for (int i = 0; i < 5; ++i) CHECK(again[i] == doctest::Approx(x[i]).epsilon(1e-12));
    }
}

TEST_CASE("lagrange polynomial values") {
    CHECK(lagrange_poly(bipartite_pattern(), {0.5, 0.5}) == doctest::Approx(0.5));

    Pattern k = k53_pattern();
    std::vector<double> uni(5, 0.2);
    CHECK(lagrange_poly(k, uni) == doctest::Approx(0.48));
    // the uniform blowup density approaches the polynomial value
    long long count = blowup_count(k, std::vector<long long>(5, 100));
    double density = static_cast<double>(count) / static_cast<double>(binom(500, 3));
    CHECK(std::abs(density - 0.48) < 0.01);

    CHECK(lagrange_poly(make_pattern(3, 1, {{3}}, {}), {1.0}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(lagrange_poly(k, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("gradients match closed forms") {
    Pattern k = k53_pattern();
    std::vector<double> uni(5, 0.2);
    for (double g : lagrange_grad(k, uni)) CHECK(g == doctest::Approx(1.44));

    Pattern bip = bipartite_pattern();
    auto g = lagrange_grad(bip, {0.3, 0.7});
    CHECK(g[0] == doctest::Approx(1.4));
    CHECK(g[1] == doctest::Approx(0.6));
    // at a simplex vertex only the link through that vertex survives
    auto gv = lagrange_grad(bip, {1.0, 0.0});
    CHECK(gv[0] == doctest::Approx(0.0));
    CHECK(gv[1] == doctest::Approx(2.0));
}

TEST_CASE("gradient versus central finite differences") {
    std::mt19937_64 rng(13);
    for (const Pattern& p : library()) {
        for (int trial = 0; trial < 100; ++trial) {
            auto x = oracles::random_simplex_point(p.m, rng);
            auto g = lagrange_grad(p, x);
            auto fd = fd_gradient(p, x, 1e-6);
            for (int j = 0; j < p.m; ++j) CHECK(std::abs(g[j] - fd[j]) <= 1e-6);
        }
    }
}

TEST_CASE("gradient Lipschitz bound on the simplex") {
    std::mt19937_64 rng(19);
    for (const Pattern& p : library()) {
        for (int trial = 0; trial < 100; ++trial) {
            auto u = oracles::random_simplex_point(p.m, rng);
            auto x = oracles::random_simplex_point(p.m, rng);
            double dist = 0.0;
            for (int j = 0; j < p.m; ++j) dist = std::max(dist, std::abs(u[j] - x[j]));
            auto gu = lagrange_grad(p, u);
            auto gx = lagrange_grad(p, x);
            for (int j = 0; j < p.m; ++j)
                CHECK(std::abs(gu[j] - gx[j]) <= p.r * p.m * dist + 1e-9);
        }
    }
}

TEST_CASE("maximize_f") {
    MaximizeOptions opt;
    MaximizeResult bip = maximize_f(bipartite_pattern(), opt);
    CHECK(bip.value == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(bip.x[0] == doctest::Approx(0.5).epsilon(1e-6));

    opt.lam = kLambdaStar;
    MaximizeResult p1 = maximize_f(k53_pattern(), opt);
    CHECK(p1.value == doctest::Approx(kLambdaStar).epsilon(1e-6));

    opt.lam = 0.7;
    MaximizeResult single = maximize_f(make_pattern(3, 1, {{3}}, {}), opt);
    CHECK(single.value == doctest::Approx(1.0));
    CHECK(single.x == std::vector<double>{1.0});

    opt.lam = 1.5;
    CHECK_THROWS_AS(maximize_f(k53_pattern(), opt), std::invalid_argument);
}

TEST_CASE("pattern Lagrangian fixed points") {
    OptimalVectorReport r1 = pattern_lagrangian(k53_pattern(), "K53");
    CHECK(std::abs(r1.lambda - kLambdaStar) < 1e-9);
    CHECK(r1.kkt_residual <= 1e-6);
    CHECK(r1.converged);
    CHECK_FALSE(r1.degenerate);
    std::vector<double> sorted1 = r1.vector;
    std::sort(sorted1.begin(), sorted1.end(), std::greater<double>());
    CHECK(std::abs(sorted1[0] - (kRoot7 - 2) / 3) < 1e-9);
    for (int i = 1; i < 5; ++i) CHECK(std::abs(sorted1[i] - (5 - kRoot7) / 12) < 1e-9);

    OptimalVectorReport r2 = pattern_lagrangian(b53_pattern(), "B53");
    CHECK(std::abs(r2.lambda - kLambdaStar) < 1e-9);
    CHECK(r2.kkt_residual <= 1e-6);
    std::vector<double> sorted2 = r2.vector;
    std::sort(sorted2.begin(), sorted2.end(), std::greater<double>());
    CHECK(std::abs(sorted2[0] - (kRoot7 - 2) / 3) < 1e-9);
    for (int i : {1, 2}) CHECK(std::abs(sorted2[i] - (5 - kRoot7) / 12) < 1e-9);
    for (int i : {3, 4, 5, 6}) CHECK(std::abs(sorted2[i] - (5 - kRoot7) / 24) < 1e-9);

    OptimalVectorReport rb = pattern_lagrangian(bipartite_pattern(), "bipartite");
    CHECK(std::abs(rb.lambda - 0.5) < 1e-12);
}

TEST_CASE("fixed-point history is monotone and bounded") {
    for (const Pattern& p : {k53_pattern(), b53_pattern()}) {
        auto rep = pattern_lagrangian(p, "x");
        for (std::size_t i = 1; i < rep.lambda_history.size(); ++i)
            CHECK(rep.lambda_history[i] >= rep.lambda_history[i - 1] - 1e-12);
        CHECK(rep.lambda_history.back() <= 1.0 + 1e-12);
    }
}

TEST_CASE("lambda equals one fast path") {
    auto ra = pattern_lagrangian(make_pattern(3, 1, {{3}}, {}), "a");
    CHECK(ra.lambda == 1.0);
    auto rb = pattern_lagrangian(make_pattern(3, 2, {{2, 1}}, {0}), "b");
    CHECK(rb.lambda == 1.0);
    CHECK(rb.degenerate);

    // numeric path stays clear of 1 for the library patterns
    for (const Pattern& p : library()) {
        CHECK_FALSE(lagrangian_is_one(p));
        CHECK(pattern_lagrangian(p, "x").lambda < 1.0 - 1e-6);
    }
}

TEST_CASE("optimal vectors of minimal patterns have full support") {
    for (const Pattern& p : {k53_pattern(), b53_pattern()}) {
        auto rep = pattern_lagrangian(p, "x");
        CHECK(rep.min_coordinate >= 1e-4);
    }
}

TEST_CASE("minimality") {
    Pattern redundant = make_pattern(2, 3, {{1, 1, 0}, {1, 0, 1}}, {});
    auto rr = is_minimal(redundant);
    CHECK_FALSE(rr.minimal);
    CHECK(rr.margins[2] < 1e-6);  // dropping the third index keeps lambda = 1/2

    auto r1 = is_minimal(k53_pattern());
    CHECK(r1.minimal);
    for (double m : r1.margins) CHECK(m > 1e-3);
    auto r2 = is_minimal(b53_pattern());
    CHECK(r2.minimal);

    // minimal patterns have nonempty links everywhere
    for (const Pattern& p : {k53_pattern(), b53_pattern()})
        for (int i = 0; i < p.m; ++i) CHECK_FALSE(link_multiset(p, i).empty());
}

TEST_CASE("stationarity for design complements at small t") {
    for (int t : {7, 9}) {
        Pattern pd = pattern_from_sts(sts_generate(t));
        auto rep = pattern_lagrangian(pd, "P_D");
        CHECK(std::abs(rep.lambda - (t - 3.0) / (t + 1.0)) < 1e-9);
        CHECK(rep.kkt_residual <= 1e-6);
        for (double c : rep.vector) CHECK(std::abs(c - 1.0 / t) < 1e-6);
    }
}

TEST_CASE("reports are reproducible for a fixed seed") {
    auto a = pattern_lagrangian(b53_pattern(), "B53", 9, 16);
    auto b = pattern_lagrangian(b53_pattern(), "B53", 9, 16);
    CHECK(a.lambda == b.lambda);
    CHECK(a.vector == b.vector);
    auto c = pattern_lagrangian(b53_pattern(), "B53", 10, 16);
    CHECK(std::abs(c.lambda - a.lambda) < 1e-12);
}

TEST_CASE("evaluator matches the free functions") {
    Pattern p = b53_pattern();
    LagrangeEvaluator ev(p);
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        auto x = oracles::random_simplex_point(p.m, rng);
        CHECK(ev.value(x) == doctest::Approx(lagrange_poly(p, x)).epsilon(1e-15));
        auto g1 = ev.grad(x);
        auto g2 = lagrange_grad(p, x);
        for (int j = 0; j < p.m; ++j) CHECK(g1[j] == doctest::Approx(g2[j]).epsilon(1e-15));
    }
}
