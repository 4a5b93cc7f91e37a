#include "doctest.h"
#include "widom/errors.hpp"
#include "widom/sets1d.hpp"

#include <cmath>
#include <numbers>

using namespace widom;
using std::numbers::pi;

TEST_CASE("closed-form capacities") {
    CHECK(capacity(CompactSet1D::interval(-2.0, 2.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(capacity(CompactSet1D::unit_circle()) == 1.0);
    CHECK(capacity(CompactSet1D::circle({1.0, 2.0}, 0.3)) == 0.3);
    const auto pre = CompactSet1D::preimage(RealPolynomial({-2.0, 0.0, 1.0}));
    REQUIRE(pre.is_full_preimage());
    CHECK(capacity(pre) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    REQUIRE(pre.parts().size() == 2);
    CHECK(pre.parts()[0].lo == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-12));
    CHECK(pre.parts()[1].lo == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("degenerate and malformed sets are rejected") {
    CHECK_THROWS_AS(CompactSet1D::interval(1.0, 1.0), NonPolarError);
    CHECK_THROWS_AS(CompactSet1D::intervals({{0.0, 2.0}, {1.0, 3.0}}), InvalidInput);
    CHECK_THROWS_AS(CompactSet1D::preimage(RealPolynomial({5.0})), InvalidInput);
    CHECK_THROWS_AS(CompactSet1D::circle(0.0, 0.0), NonPolarError);
}

TEST_CASE("energy minimization reproduces closed-form capacities") {
    // Interval: Cap = (b-a)/4.
    CHECK(std::exp(-solve_cell_equilibrium({{-1.0, 1.0}}, 256).energy) == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(std::exp(-solve_cell_equilibrium({{-2.0, 2.0}}, 256).energy) == doctest::Approx(1.0).epsilon(1e-4));
    // Two symmetric intervals from x^2 - 2.
    const double r3 = std::sqrt(3.0);
    const auto two = solve_cell_equilibrium({{-r3, -1.0}, {1.0, r3}}, 256);
    CHECK(std::exp(-two.energy) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-4));
    // Constructed as a plain union, the generic route must agree as well.
    const auto generic = CompactSet1D::intervals({{-r3, -1.0}, {1.0, r3}});
    REQUIRE(generic.cell_equilibrium() != nullptr);
    CHECK(capacity(generic) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-4));
}

TEST_CASE("projected gradient agrees with the KKT solve") {
    const std::vector<Interval> parts{{-1.0, -0.2}, {0.4, 1.0}};
    const auto kkt = solve_cell_equilibrium(parts, 24);
    const auto pg = projected_gradient_equilibrium(parts, 24, 400000);
    CHECK(pg.discrete_energy == doctest::Approx(kkt.discrete_energy).epsilon(1e-5));
    double s = 0.0;
    for (double m : pg.mass) s += m;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("arcsine measure on [-1,1]") {
    const auto mu = equilibrium_measure(CompactSet1D::interval(-1.0, 1.0), 64);
    REQUIRE(mu.nodes.size() == 64);
    CHECK(mu.nodes[0].real() == doctest::Approx(std::cos(pi / 128.0)).epsilon(1e-15));
    CHECK(mu.weights[5] == doctest::Approx(1.0 / 64.0));
    // Exact for polynomials up to degree 127: int x^{2k} dmu = binom(2k,k)/4^k.
    for (int k = 0; k <= 63; k += 7) {
        double q = 0.0;
        for (size_t i = 0; i < mu.nodes.size(); ++i) q += mu.weights[i] * std::pow(mu.nodes[i].real(), 2 * k);
        CHECK(q == doctest::Approx(binomial(2 * k, k) / std::pow(4.0, k)).epsilon(1e-12));
    }
}

TEST_CASE("unit circle measure") {
    const auto mu = equilibrium_measure(CompactSet1D::unit_circle(), 32);
    CHECK(mu.nodes.size() == 32);
    CHECK(mu.total_mass == doctest::Approx(1.0));
    CHECK(log_potential(mu, 0.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(std::abs(log_potential_discrete(mu, 0.0)) < 1e-15);
}

TEST_CASE("pullback measure on the preimage of x^2-2") {
    const auto set = CompactSet1D::preimage(RealPolynomial({-2.0, 0.0, 1.0}));
    const auto mu = equilibrium_measure(set, 64);
    CHECK(mu.total_mass == doctest::Approx(1.0).epsilon(1e-12));
    double first = 0.0;
    for (size_t i = 0; i < mu.nodes.size(); ++i) first += mu.weights[i] * mu.nodes[i].real();
    CHECK(std::abs(first) < 1e-12);
    // Compare moments against the energy-minimization measure.
    const auto generic = CompactSet1D::intervals({{-std::sqrt(3.0), -1.0}, {1.0, std::sqrt(3.0)}});
    auto second = [](const CompactSet1D& s) {
        return integrate_equilibrium(s, [](Complex z) { return std::norm(z); });
    };
    CHECK(second(generic) == doctest::Approx(second(set)).epsilon(1e-4));
    // Pullback moment: E[x^2] = E[R + 2] = 2.
    CHECK(second(set) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("potentials") {
    const auto iv = CompactSet1D::interval(-1.0, 1.0);
    const auto mu = equilibrium_measure(iv, 256);
    CHECK(log_potential(mu, 0.3) == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
    CHECK(log_potential(mu, 2.0) == doctest::Approx(std::log(2.0 + std::sqrt(3.0)) - std::log(2.0)).epsilon(1e-12));
    // Discrete node sums off the support converge quickly.
    CHECK(log_potential_discrete(mu, 2.0) == doctest::Approx(log_potential(mu, 2.0)).epsilon(1e-10));
    // Frostman: U = log Cap on every computable support.
    const auto pre = CompactSet1D::preimage(RealPolynomial({-2.0, 0.0, 1.0}));
    CHECK(equilibrium_potential(pre, 1.3) == doctest::Approx(std::log(capacity(pre))).epsilon(1e-12));
    const auto gen = CompactSet1D::intervals({{-1.0, -0.2}, {0.4, 1.0}});
    for (double x : {-1.0, -0.9999, -0.9, -0.5, -0.2, 0.4, 0.45, 0.7, 0.99, 1.0})
        CHECK(std::abs(equilibrium_potential(gen, x) - std::log(capacity(gen))) <= 1e-8);
    // Off the set the potential exceeds log Cap, and grows like log|z|.
    for (Complex z : {Complex(0.1, 0.0), Complex(-0.5, 0.01), Complex(0.7, -0.3), Complex(3.0, 2.0)})
        CHECK(equilibrium_potential(gen, z) > std::log(capacity(gen)));
    CHECK(std::abs(equilibrium_potential(gen, 1e6) - std::log(1e6)) <= 1e-6);
    CHECK(equilibrium_potential(CompactSet1D::circle({1.0, 0.0}, 2.0), {4.0, 0.0}) == doctest::Approx(std::log(3.0)));
}

TEST_CASE("Szego values") {
    const auto iv = CompactSet1D::interval(-1.0, 1.0);
    CHECK(szego_value(iv, Weight1D::constant(1.0)) == 1.0);
    CHECK(szego_value(iv, Weight1D::constant(3.5)) == doctest::Approx(3.5));
    CHECK(szego_value(iv, Weight1D::abs_power(0.0, 1.0)) == doctest::Approx(0.5).epsilon(1e-14));
    // Quadrature oracle for int log|x| dmu = -log 2.
    const std::vector<Complex> sing{0.0};
    const double q = integrate_equilibrium(iv, [](Complex z) { return std::log(std::abs(z)); }, sing);
    CHECK(q == doctest::Approx(-std::log(2.0)).epsilon(1e-10));
    // Piecewise: weight 1 on x < 0 and 4 on x >= 0 has S = 2 by symmetry.
    const auto pc = Weight1D::piecewise_constant({0.0}, {1.0, 4.0});
    CHECK(szego_value(iv, pc) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS((void)szego_value(CompactSet1D::unit_circle(), pc), InvalidInput);
    CHECK_THROWS_AS(Weight1D::abs_power(0.0, -1.0), InvalidInput);
}

TEST_CASE("usc regularization") {
    const auto iv = CompactSet1D::interval(-1.0, 1.0);
    const auto pc = Weight1D::piecewise_constant({0.0, 1.0}, {1.0, 3.0, 7.0});
    const auto hat = usc_regularize(pc, iv);
    CHECK(hat.is_regularized());
    CHECK(hat(0.0) == 3.0);
    CHECK(hat(-0.5) == 1.0);
    // Breakpoint at the right endpoint: the outside piece does not count.
    CHECK(hat(1.0) == 7.0);
    const auto lower = Weight1D::piecewise_constant({0.0}, {5.0, 2.0});
    CHECK(usc_regularize(lower, iv)(0.0) == 5.0);
    CHECK(usc_regularize(lower, CompactSet1D::interval(0.0, 1.0))(0.0) == 2.0);
    CHECK_THROWS_AS((void)usc_regularize(Weight1D::abs_power(0.0, -0.5), iv), UnboundedWeight);
    const auto cont = usc_regularize(Weight1D::abs_power(0.0, 2.0), iv);
    CHECK(cont(0.5) == doctest::Approx(0.25));
}

TEST_CASE("non-full preimages fall back to energy minimization") {
    const auto set = CompactSet1D::preimage(RealPolynomial({0.0, 0.0, 0.5}));
    CHECK_FALSE(set.is_full_preimage());  // 0.5 x^2 never reaches -1
    const auto cubic = CompactSet1D::preimage(RealPolynomial({0.0, -3.0, 0.0, 4.0}));
    REQUIRE(cubic.is_full_preimage());
    CHECK(capacity(cubic) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(cubic.parts().size() == 1);
    CHECK(cubic.laps().size() == 3);
    // x^4 - x^2 - 1/2: the middle dip stops at -3/4, so the set is one interval.
    const auto partial = CompactSet1D::preimage(RealPolynomial({-0.5, 0.0, -1.0, 0.0, 1.0}));
    CHECK_FALSE(partial.is_full_preimage());
    CHECK(partial.cell_equilibrium() != nullptr);
    REQUIRE(partial.parts().size() == 1);
    const double edge = std::sqrt((1.0 + std::sqrt(7.0)) / 2.0);
    CHECK(capacity(partial) == doctest::Approx(edge / 2.0).epsilon(1e-4));
    CHECK(capacity(partial) < std::pow(2.0, -0.25));
}

TEST_CASE("chebyshev grid") {
    const auto set = CompactSet1D::intervals({{-1.0, 0.0}, {1.0, 2.0}});
    const std::vector<double> extra{0.5, 1.5, -0.25};
    const auto g = chebyshev_grid(set, 50, extra);
    CHECK(g.front() == -1.0);
    CHECK(g.back() == 2.0);
    CHECK(std::find(g.begin(), g.end(), 0.5) == g.end());
    CHECK(std::find(g.begin(), g.end(), -0.25) != g.end());
    CHECK(std::is_sorted(g.begin(), g.end()));
}
