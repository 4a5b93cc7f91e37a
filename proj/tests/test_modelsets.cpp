#include "doctest.h"
#include "widom/errors.hpp"
#include "widom/mahler.hpp"
#include "widom/modelsets.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace widom;

namespace {

// Independent oracle: max over r in [0,1] of r^a1 (1 - r^2)^{a2/2} on a dense grid.
double grid_ball_norm(int a1, int a2) {
    const int n = 400000;
    double best = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double r = static_cast<double>(i) / n;
        best = std::max(best, std::pow(r, a1) * std::pow(std::max(0.0, 1.0 - r * r), a2 / 2.0));
    }
    return best;
}

// Random polynomial z^a + sum_{b < a} c_b z^b with complex coefficients.
SparsePolyND random_monic(const MultiIndex& a, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 0.5);
    SparsePolyND p = SparsePolyND::monomial(a);
    const int n = static_cast<int>(a.size());
    for (std::int64_t r = 0; r < order_rank(a); ++r) p.add(order_index(r, n), Complex(g(rng), g(rng)));
    return p;
}

}  // namespace

TEST_CASE("model set names") {
    CHECK(ModelSet::parse("polydisk:3") == ModelSet::polydisk(3));
    CHECK(ModelSet::parse("ball2") == ModelSet::ball2());
    CHECK(ModelSet::parse("realball2") == ModelSet::real_ball2());
    CHECK(ModelSet::parse("simplex:2") == ModelSet::simplex(2));
    for (const auto& s : {"polydisk:0", "simplex:x", "ball3", "simplex:2x", "polydisk"})
        CHECK_THROWS_AS((void)ModelSet::parse(s), InvalidInput);
    CHECK(ModelSet::simplex(4).name() == "simplex:4");
}

TEST_CASE("monomial sup norms") {
    CHECK(monomial_sup_norm(ModelSet::polydisk(3), {2, 0, 5}) == 1.0);
    for (int n = 0; n <= 6; ++n)
        CHECK(monomial_sup_norm(ModelSet::ball2(), {n, n}) == doctest::Approx(std::pow(2.0, -n)).epsilon(1e-14));
    CHECK(monomial_sup_norm(ModelSet::ball2(), {2, 3}) == doctest::Approx(0.1859032006).epsilon(1e-9));
    CHECK(monomial_sup_norm(ModelSet::ball2(), {0, 7}) == 1.0);
    for (int a1 = 0; a1 <= 12; ++a1)
        for (int a2 = 0; a1 + a2 <= 12; ++a2)
            CHECK(monomial_sup_norm(ModelSet::ball2(), {a1, a2}) == doctest::Approx(grid_ball_norm(a1, a2)).epsilon(1e-8));
    // Simplex in R^2: max of x^a y^b over x, y >= 0, x + y <= 1 on a grid.
    double best = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double x = i / 2000.0;
        best = std::max(best, x * x * (1.0 - x) * (1.0 - x) * (1.0 - x));
    }
    CHECK(monomial_sup_norm(ModelSet::simplex(2), {2, 3}) == doctest::Approx(best).epsilon(1e-6));
    CHECK_THROWS_AS((void)monomial_sup_norm(ModelSet::ball2(), {1, 1, 1}), InvalidInput);
}

TEST_CASE("directional constants") {
    const double half[2] = {0.5, 0.5};
    CHECK(directional_tau(ModelSet::ball2(), half) == doctest::Approx(std::numbers::sqrt2 / 2.0).epsilon(1e-15));
    const double e1[2] = {1.0, 0.0};
    const double e2[2] = {0.0, 1.0};
    CHECK(directional_tau(ModelSet::ball2(), e1) == 1.0);
    CHECK(directional_tau(ModelSet::real_ball2(), e1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(directional_tau(ModelSet::real_ball2(), e2) == doctest::Approx(0.5).epsilon(1e-15));
    const double crit[2] = {0.4, 0.6};
    CHECK(directional_tau(ModelSet::real_ball2(), crit) == doctest::Approx(0.4).epsilon(1e-14));
    const double bad[2] = {0.7, 0.7};
    CHECK_THROWS_AS((void)directional_tau(ModelSet::ball2(), bad), InvalidInput);
    const double neg[2] = {1.5, -0.5};
    CHECK_THROWS_AS((void)directional_tau(ModelSet::ball2(), neg), InvalidInput);
    CHECK_THROWS_AS((void)directional_tau(ModelSet::simplex(2), half), Unsupported);

    const auto ball = profile_minimum(ModelSet::ball2(), 101);
    CHECK(ball.tau_minus == doctest::Approx(std::numbers::sqrt2 / 2.0).epsilon(1e-12));
    CHECK(ball.theta_min[0] == doctest::Approx(0.5).epsilon(1e-6));
    const auto rb = profile_minimum(ModelSet::real_ball2(), 1001);
    CHECK(std::abs(rb.tau_minus - 0.4) < 1e-12);
    CHECK(std::abs(rb.theta_min[0] - 0.4) < 1e-6);
    CHECK(rb.values.size() == 1001);
    for (double v : rb.values) CHECK(v >= rb.tau_minus);
    const auto single = profile_minimum(ModelSet::ball2(), 1);
    CHECK(single.theta_grid[0] == std::vector<double>{1.0, 0.0});
    CHECK(single.tau_minus == 1.0);
    // A coarse grid that misses 2/5 still finds it.
    CHECK(std::abs(profile_minimum(ModelSet::real_ball2(), 8).tau_minus - 0.4) < 1e-12);
}

TEST_CASE("extremal functions") {
    const std::vector<Complex> inside{0.3, Complex(0.0, 0.4)};
    CHECK(extremal_function(ModelSet::ball2(), inside) == 0.0);
    CHECK(extremal_function(ModelSet::polydisk(2), inside) == 0.0);
    for (double t : {0.0, 0.3, 0.99}) {
        const std::vector<Complex> x{t, std::sqrt(1.0 - t * t) * 0.5};
        CHECK(extremal_function(ModelSet::real_ball2(), x) == doctest::Approx(0.0));
        const std::vector<Complex> s{t * 0.5, (1.0 - t) * 0.5};
        CHECK(extremal_function(ModelSet::simplex(2), s) == 0.0);
    }
    // Lundin along the real axis, where s = 2t^2 - 1.
    for (double t : {2.0, 10.0, 1e3}) {
        const std::vector<Complex> z{t, 0.0};
        const double s = 2.0 * t * t - 1.0;
        CHECK(extremal_function(ModelSet::real_ball2(), z) ==
              doctest::Approx(0.5 * std::log(s + std::sqrt(s * s - 1.0))).epsilon(1e-14));
    }
    const std::vector<Complex> far{1e6, 0.0};
    CHECK(extremal_function(ModelSet::real_ball2(), far) - std::log(1e6) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    const double r = 1e6 / std::numbers::sqrt2;
    const std::vector<Complex> diag{r, r};
    CHECK(extremal_function(ModelSet::simplex(2), diag) - std::log(1e6) ==
          doctest::Approx(std::log(4.0 * std::numbers::sqrt2)).epsilon(1e-6));
    // On the unit sphere V vanishes and grows like log|z| outside.
    const std::vector<Complex> out{Complex(3.0, 0.0), Complex(0.0, 4.0)};
    CHECK(extremal_function(ModelSet::ball2(), out) == doctest::Approx(std::log(5.0)));
}

TEST_CASE("capacities c and C") {
    const auto rb = capacities_cC(ModelSet::real_ball2());
    CHECK(rb.c == doctest::Approx(1.0 / (2.0 * std::numbers::sqrt2)).epsilon(1e-15));
    CHECK(rb.C == 0.5);
    const auto ball = capacities_cC(ModelSet::ball2());
    CHECK(ball.c == doctest::Approx(0.7071068).epsilon(1e-7));
    CHECK(ball.C == 1.0);
    CHECK(capacities_cC(ModelSet::simplex(2)).C == doctest::Approx(0.1767767).epsilon(1e-7));
    CHECK(capacities_cC(ModelSet::simplex(2)).c_numeric);

    const std::vector<ModelSet> sets{ModelSet::polydisk(2), ModelSet::polydisk(3), ModelSet::ball2(),
                                     ModelSet::real_ball2(), ModelSet::simplex(2), ModelSet::simplex(3)};
    for (const auto& k : sets) {
        CAPTURE(k.name());
        const auto closed = capacities_cC(k);
        const auto ray = ray_limit_capacities(k);
        CHECK(std::abs(std::log(ray.C) - std::log(closed.C)) < 1e-5);
        CHECK(std::abs(std::log(ray.c) - std::log(closed.c)) < 1e-5);
        CHECK(closed.c <= closed.C);
        const auto t = transfinite_interval(k);
        CHECK(t.lo <= t.hi + 1e-15);
        if (const auto tm = tau_minus_model(k)) {
            CHECK(closed.c <= *tm + 1e-9);
            CHECK(*tm <= closed.C + 1e-9);
        }
    }
    CHECK(rb.c < 0.4);
    CHECK(0.4 < rb.C);
    const auto tb = transfinite_interval(ModelSet::ball2());
    CHECK(tb.lo == doctest::Approx(tb.hi).epsilon(1e-15));
    // Max-norm rays of the simplex: V - log R -> log(4n).
    CHECK(capacities_cC(ModelSet::simplex(3)).c == doctest::Approx(1.0 / 12.0).epsilon(1e-5));
}

TEST_CASE("L2 floor on the ball") {
    // Oracle: dense grid minimum of (1 + r)^3 / (1 - r) log(1/r).
    double grid = 1e300;
    for (int i = 1; i < 1000000; ++i) {
        const double r = i * 1e-6;
        grid = std::min(grid, std::pow(1.0 + r, 3) / (1.0 - r) * -std::log(r));
    }
    const double inf = ball_radial_infimum(2);
    CHECK(inf == doctest::Approx(grid).epsilon(1e-9));
    CHECK(inf == doctest::Approx(3.383570932281).epsilon(1e-11));
    CHECK(ball_l2_floor(0, 0.7) == 0.7);
    for (int d = 0; d < 10; ++d) CHECK(ball_l2_floor(d + 1, 1.0) < ball_l2_floor(d, 1.0));
    CHECK(ball_l2_floor(1, 1.0) == doctest::Approx(1.0 / (2.0 * std::exp(2.0 * inf))));
    CHECK_THROWS_AS((void)ball_l2_floor(-1, 1.0), InvalidInput);
}

TEST_CASE("sphere quadrature and the Jensen bound on the ball") {
    const auto rule = sphere_rule(24, 24);
    double mass = 0.0;
    for (double w : rule.weights) mass += w;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
        const auto p = random_monic(order_index(3 + t, 2), rng);
        double q = 0.0;
        for (size_t i = 0; i < rule.nodes.size(); ++i) q += rule.weights[i] * std::norm(p(rule.nodes[i]));
        CHECK(q == doctest::Approx(sphere_l2_norm_squared(p)).epsilon(1e-12));
    }
    CHECK(sphere_l2_norm_squared(SparsePolyND::monomial({2, 1})) == doctest::Approx(1.0 / 12.0));

    for (int t = 0; t < 20; ++t) {
        const MultiIndex a = order_index(1 + t % 14, 2);
        const auto p = random_monic(a, rng);
        const double norm2 = sphere_l2_norm_squared(p);
        const auto lm = sphere_log_mean(p, 100000, 1000 + static_cast<std::uint64_t>(t));
        CHECK(norm2 >= std::exp(lm.mean - 3.0 * lm.std_error));
        CHECK(norm2 >= ball_l2_floor(total_degree(a), 1.0));
        CHECK(lm.mean + 3.0 * lm.std_error >= std::log(ball_l2_floor(total_degree(a), 1.0)));
    }
}

TEST_CASE("Mahler floor on the polydisk") {
    CHECK(mahler_polydisk_floor({1, 1}) == 0.25);
    CHECK(mahler_polydisk_floor({4, 0, 0}) == 1.0);
    CHECK(mahler_polydisk_floor({2, 1}) == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(mahler_polydisk_l2_floor({1, 1}, 2.0) == 0.125);
    std::mt19937_64 rng(9);
    for (int n = 1; n <= 3; ++n) {
        const auto torus = torus_rule(n, 8);
        for (const auto& a : indices_up_to(n, 4)) {
            CHECK(rule_mahler(SparsePolyND::monomial(a), torus) == doctest::Approx(1.0).epsilon(1e-14));
            const auto p = random_monic(a, rng);
            CHECK(torus_mahler(p, n == 3 ? 24 : 128) >= mahler_polydisk_floor(a) - 1e-6);
        }
    }
    // Jensen in z_1 makes the univariate case exact: roots inside the disk give M = 1.
    const auto inside = SparsePolyND::tensor({from_roots(std::vector<Complex>{0.9, Complex(0.0, -0.99)})});
    CHECK(torus_mahler(inside, 1) == doctest::Approx(1.0).epsilon(1e-14));
    // Against the adaptive recursive method on two variables.
    ProductSet torus2{{CompactSet1D::unit_circle(), CompactSet1D::unit_circle()}};
    for (int t = 0; t < 4; ++t) {
        const auto p = random_monic(order_index(5 + 2 * t, 2), rng);
        CHECK(torus_mahler(p, 512) == doctest::Approx(mahler_nd(p, torus2).value).epsilon(1e-4));
    }
}

TEST_CASE("Widom factors of model sets") {
    for (const auto& a : indices_up_to(3, 4)) {
        CHECK(model_widom_sup(ModelSet::polydisk(3), a) == 1.0);
        CHECK(model_tau_check(ModelSet::polydisk(3), a));
    }
    for (const auto& a : indices_up_to(2, 10)) {
        CHECK(model_widom_sup(ModelSet::ball2(), a) >= 1.0 - 1e-12);
        CHECK(model_tau_check(ModelSet::ball2(), a));
    }
    for (int n = 0; n <= 5; ++n) CHECK(model_widom_sup(ModelSet::ball2(), {n, n}) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS((void)model_widom_sup(ModelSet::real_ball2(), {1, 1}), Unsupported);
}
