#include "doctest.h"
#include "widom/errors.hpp"
#include "widom/mahler.hpp"

#include <cmath>
#include <random>

using namespace widom;

namespace {

const CompactSet1D& unit_interval() {
    static const auto s = CompactSet1D::interval(-1.0, 1.0);
    return s;
}

std::vector<CompactSet1D> test_sets() {
    return {CompactSet1D::interval(-1.0, 1.0), CompactSet1D::interval(-2.0, 2.0), CompactSet1D::unit_circle(),
            CompactSet1D::preimage(RealPolynomial({-2.0, 0.0, 1.0}))};
}

ComplexCoeffs random_poly(std::mt19937_64& rng, int d, double radius) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> rs;
    for (int i = 0; i < d; ++i) {
        Complex z;
        do z = Complex(radius * u(rng), radius * u(rng));
        while (std::abs(z) > radius);
        rs.push_back(z);
    }
    auto c = from_roots(rs);
    const Complex lead(1.0 + std::abs(u(rng)), u(rng));
    for (auto& v : c) v *= lead;
    return c;
}

// Plain midpoint rule of log|P| on the circle, with an offset avoiding roots on the nodes.
double circle_mahler_oracle(std::span<const Complex> c, int n = 200000) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += std::log(std::abs(horner(c, std::polar(1.0, 2.0 * M_PI * (k + 0.37) / n))));
    return std::exp(acc / n);
}

}  // namespace

TEST_CASE("univariate Mahler measures: closed forms") {
    const auto circle = CompactSet1D::unit_circle();
    const ComplexCoeffs zm2{-2.0, 1.0};
    CHECK(mahler_1d(zm2, circle).value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(mahler_1d(zm2, circle, MahlerMethod::Quadrature).value == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(circle_mahler_oracle(zm2) == doctest::Approx(2.0).epsilon(1e-10));

    const RealPolynomial p({-0.5, 0.0, 1.0});
    const auto r = mahler_1d(p, unit_interval());
    CHECK(r.value == doctest::Approx(0.25).epsilon(1e-13));
    REQUIRE(r.certified_floor.has_value());
    CHECK(*r.certified_floor == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(mahler_1d(p, unit_interval(), MahlerMethod::Quadrature).value == doctest::Approx(0.25).epsilon(1e-10));

    const ComplexCoeffs c{Complex(-3.0, 4.0)};
    CHECK(mahler_1d(c, circle).value == doctest::Approx(5.0));
    CHECK(mahler_1d(c, unit_interval()).value == doctest::Approx(5.0));
    CHECK_THROWS_AS((void)mahler_1d(ComplexCoeffs{0.0, 0.0}, circle), InvalidInput);
    CHECK(to_string(MahlerMethod::RootsPotential) == "roots_potential");
}

TEST_CASE("univariate Mahler: roots method agrees with quadrature") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> deg(1, 6);
    for (const auto& k : test_sets()) {
        for (int trial = 0; trial < 25; ++trial) {
            const auto c = random_poly(rng, deg(rng), 3.0);
            const double a = mahler_1d(c, k).value;
            const double b = mahler_1d(c, k, MahlerMethod::Quadrature).value;
            CHECK(a == doctest::Approx(b).epsilon(1e-6));
        }
    }
    // Independent oracle on the circle: Jensen's formula against a midpoint rule.
    for (int trial = 0; trial < 5; ++trial) {
        const auto c = random_poly(rng, 4, 1.8);
        CHECK(mahler_1d(c, CompactSet1D::unit_circle()).value == doctest::Approx(circle_mahler_oracle(c)).epsilon(1e-6));
    }
}

TEST_CASE("univariate Mahler: multiplicativity and Frostman floor") {
    std::mt19937_64 rng(11);
    for (const auto& k : test_sets()) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto p = random_poly(rng, 3, 2.5);
            const auto q = random_poly(rng, 2, 2.5);
            ComplexCoeffs pq(p.size() + q.size() - 1, 0.0);
            for (size_t i = 0; i < p.size(); ++i)
                for (size_t j = 0; j < q.size(); ++j) pq[i + j] += p[i] * q[j];
            CHECK(mahler_1d(pq, k).value ==
                  doctest::Approx(mahler_1d(p, k).value * mahler_1d(q, k).value).epsilon(1e-8));
            const auto r = mahler_1d(p, k);
            CHECK(r.value >= *r.certified_floor - 1e-9);
        }
    }
}

TEST_CASE("univariate coefficient bounds") {
    const ComplexCoeffs p{-0.5, 0.0, 1.0};
    const auto b = coeff_bound_1d(p, unit_interval(), 2);
    CHECK(b.bound == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.ratio() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(b.holds);
    const ComplexCoeffs x{0.0, 1.0};
    const auto z = coeff_bound_1d(x, CompactSet1D::interval(-2.0, 2.0), 0);
    CHECK(z.coeff == 0.0);
    CHECK(z.holds);
    CHECK_THROWS_AS((void)coeff_bound_1d(p, unit_interval(), 3), InvalidInput);

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> deg(1, 8);
    const auto circle = CompactSet1D::unit_circle();
    for (const auto& k : test_sets()) {
        for (int trial = 0; trial < 100; ++trial) {
            const auto c = random_poly(rng, deg(rng), 3.0);
            const int d = static_cast<int>(c.size()) - 1;
            for (int i = 0; i <= d; ++i) CHECK(coeff_bound_1d(c, k, i).holds);
        }
    }
    const auto c = random_poly(rng, 5, 3.0);
    CHECK(coeff_bound_1d(c, circle, 5).bound == doctest::Approx(mahler_1d(c, circle).value).epsilon(1e-12));
}

TEST_CASE("multivariate Mahler measures") {
    const ProductSet torus{{CompactSet1D::unit_circle(), CompactSet1D::unit_circle()}};
    const auto z1z2 = SparsePolyND::monomial({1, 1});
    CHECK(mahler_nd(z1z2, torus).value == doctest::Approx(1.0).epsilon(1e-12));
    const auto sum = SparsePolyND::monomial({1, 0}) + SparsePolyND::monomial({0, 1});
    CHECK(mahler_nd(sum, torus).value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(mahler_nd(sum, torus, MahlerMethod::Quadrature).value == doctest::Approx(1.0).epsilon(1e-5));

    const ProductSet sq{{unit_interval(), unit_interval()}};
    const auto f = SparsePolyND::tensor({{-0.5, 0.0, 1.0}, {-0.5, 0.0, 1.0}});
    CHECK(mahler_nd(f, sq).value == doctest::Approx(1.0 / 16).epsilon(1e-9));
    CHECK(mahler_nd(f, sq, MahlerMethod::Quadrature).value == doctest::Approx(1.0 / 16).epsilon(1e-5));
    CHECK_THROWS_AS((void)mahler_nd(SparsePolyND(2), sq), InvalidInput);

    // A polynomial that does not depend on the last variable.
    const auto x1 = SparsePolyND::tensor({{-0.5, 0.0, 1.0}, {1.0}});
    CHECK(mahler_nd(x1, sq).value == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("multivariate Mahler: recursive agrees with quadrature and is multiplicative") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> coef(-3, 3);
    const ProductSet k{{CompactSet1D::interval(-1.0, 1.0), CompactSet1D::interval(-2.0, 2.0)}};
    const ProductSet torus{{CompactSet1D::unit_circle(), CompactSet1D::unit_circle()}};
    for (int trial = 0; trial < 6; ++trial) {
        SparsePolyND p(2);
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; j <= 1; ++j) p.add({i, j}, Complex(coef(rng) + 0.31, 0.0));
        if (trial < 2) {
            for (const auto* kk : {&k, &torus}) {
                const double a = mahler_nd(p, *kk).value;
                const double b = mahler_nd(p, *kk, MahlerMethod::Quadrature, 1e-8).value;
                CHECK(a == doctest::Approx(b).epsilon(1e-5));
            }
        }
        SparsePolyND q(2);
        q.add({1, 0}, 1.0);
        q.add({0, 1}, Complex(coef(rng) + 0.5));
        CHECK(mahler_nd(p * q, k).value == doctest::Approx(mahler_nd(p, k).value * mahler_nd(q, k).value).epsilon(1e-8));
    }
}

TEST_CASE("multivariate coefficient bounds") {
    const ProductSet torus{{CompactSet1D::unit_circle(), CompactSet1D::unit_circle()}};
    const auto b = coeff_bound_nd(SparsePolyND::monomial({1, 1}), torus, {1, 1});
    CHECK(b.bound == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.holds);
    const ProductSet sq{{unit_interval(), unit_interval()}};
    const auto f = SparsePolyND::tensor({{-0.5, 0.0, 1.0}, {-0.5, 0.0, 1.0}});
    const auto e = coeff_bound_nd(f, sq, {2, 2});
    CHECK(e.ratio() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS((void)coeff_bound_nd(f, sq, {3, 0}), InvalidInput);

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        SparsePolyND p(2);
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; j <= 2; ++j) p.add({i, j}, Complex(u(rng), u(rng)));
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; j <= 2; ++j) {
                CHECK(coeff_bound_nd(p, sq, {i, j}).holds);
                CHECK(coeff_bound_nd(p, torus, {i, j}).holds);
            }
        CHECK(coeff_bound_nd(p, torus, {2, 2}).bound == doctest::Approx(mahler_nd(p, torus).value).epsilon(1e-12));
    }
}

TEST_CASE("integer floor sweep at small scale") {
    const ProductSet sq{{unit_interval(), unit_interval()}};
    const auto w = SparsePolyND::tensor({{-1.0, 0.0, 2.0}, {1.0}});
    CHECK(mahler_nd(w, sq).value == doctest::Approx(0.5).epsilon(1e-12));

    const auto rep = integer_floor_check(sq, {1, 1}, 1);
    CHECK(rep.candidates == 80);
    CHECK(rep.holds());
    CHECK(rep.min_ratio >= 1.0 - 1e-7);

    const ProductSet big{{CompactSet1D::interval(-2.0, 2.0), CompactSet1D::interval(-2.0, 2.0)}};
    const auto r2 = integer_floor_check(big, {1, 1}, 2);
    CHECK(r2.candidates == 625 - 1);
    CHECK(r2.holds());
    CHECK(r2.min_value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS((void)integer_floor_check(big, {3, 1}, 1), ScaleLimit);
}
