#include "doctest.h"
#include "widom/errors.hpp"
#include "widom/polynomial.hpp"

#include <algorithm>
#include <random>

using namespace widom;

TEST_CASE("real polynomial arithmetic and trimming") {
    RealPolynomial p({1.0, 2.0, 0.0, 0.0});
    CHECK(p.degree() == 1);
    CHECK(RealPolynomial().degree() == -1);
    const RealPolynomial q({-2.0, 0.0, 1.0});
    CHECK((p * q).degree() == 3);
    CHECK((p * q)(1.5) == doctest::Approx(p(1.5) * q(1.5)));
    CHECK(((q - q).is_zero()));
    CHECK(q.derivative() == RealPolynomial({0.0, 2.0}));
}

TEST_CASE("roots agree with from_roots reconstruction") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int d = 1; d <= 9; ++d) {
        std::vector<Complex> rs;
        for (int k = 0; k < d; ++k) rs.emplace_back(u(rng), u(rng));
        const auto c = from_roots(rs);
        auto found = roots(c);
        REQUIRE(found.size() == rs.size());
        for (const auto& r : rs) {
            double best = 1e9;
            for (const auto& f : found) best = std::min(best, std::abs(f - r));
            CHECK(best < 1e-8);
        }
    }
}

TEST_CASE("quadratic roots avoid cancellation") {
    const std::vector<Complex> c{1.0, 1e8, 1.0};
    const auto r = roots(c);
    std::vector<double> mags{std::abs(r[0]), std::abs(r[1])};
    std::sort(mags.begin(), mags.end());
    CHECK(mags[0] == doctest::Approx(1e-8).epsilon(1e-12));
}

TEST_CASE("real roots in an interval, including double roots") {
    const RealPolynomial p({-2.0, 0.0, 1.0});
    auto r = real_roots_in(p, -3.0, 3.0);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
    const RealPolynomial sq({1.0, -2.0, 1.0});  // (x-1)^2
    r = real_roots_in(sq, -3.0, 3.0);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(1.0));
    CHECK_THROWS_AS((void)roots(std::vector<Complex>{0.0}), InvalidInput);
}

TEST_CASE("binomial") {
    CHECK(binomial(5, 2) == 10.0);
    CHECK(binomial(3, 4) == 0.0);
    CHECK(binomial(12, 6) == 924.0);
}
