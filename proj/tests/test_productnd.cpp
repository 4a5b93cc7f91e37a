#include "doctest.h"
#include "widom/errors.hpp"
#include "widom/productnd.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace widom;

namespace {

ProductSet square(double a = 1.0, double b = 1.0) {
    return ProductSet{{CompactSet1D::interval(-a, a), CompactSet1D::interval(-b, b)}};
}

CompactSet1D lemniscate_pair() { return CompactSet1D::preimage(RealPolynomial({-2.0, 0.0, 1.0})); }

// Independent enumeration: all indices of degree d, sorted in reverse
// lexicographic order, concatenated by increasing d.
std::vector<MultiIndex> naive_order(int n, int max_degree) {
    std::vector<MultiIndex> out;
    for (int d = 0; d <= max_degree; ++d) {
        std::vector<MultiIndex> block;
        MultiIndex a(static_cast<size_t>(n), 0);
        std::function<void(int, int)> rec = [&](int j, int left) {
            if (j == n - 1) {
                a[static_cast<size_t>(j)] = left;
                block.push_back(a);
                return;
            }
            for (int v = 0; v <= left; ++v) {
                a[static_cast<size_t>(j)] = v;
                rec(j + 1, left - v);
            }
        };
        rec(0, d);
        std::sort(block.begin(), block.end(), std::greater<>());
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

}  // namespace

TEST_CASE("monomial order: first indices in two and three variables") {
    const std::vector<MultiIndex> want{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    for (int i = 0; i < 6; ++i) CHECK(order_index(i, 2) == want[static_cast<size_t>(i)]);
    CHECK(order_index(1, 3) == MultiIndex{1, 0, 0});
    CHECK(order_index(2, 3) == MultiIndex{0, 1, 0});
    CHECK(order_index(3, 3) == MultiIndex{0, 0, 1});
    CHECK(order_index(0, 4) == MultiIndex{0, 0, 0, 0});
}

TEST_CASE("monomial order: bijection and agreement with naive enumeration") {
    for (int n = 1; n <= 4; ++n) {
        for (std::int64_t i = 0; i < 10000; ++i) REQUIRE(order_rank(order_index(i, n)) == i);
        const auto naive = naive_order(n, 6);
        for (size_t i = 0; i < naive.size(); ++i) {
            REQUIRE(order_index(static_cast<std::int64_t>(i), n) == naive[i]);
            if (i > 0) REQUIRE(order_precedes(naive[i - 1], naive[i]));
        }
        CHECK(indices_up_to(n, 6) == naive);
    }
    CHECK_THROWS_AS((void)order_index(-1, 2), InvalidInput);
    CHECK_THROWS_AS((void)order_rank({1, -1}), InvalidInput);
}

TEST_CASE("sparse polynomials: arithmetic, leading term and evaluation") {
    const auto x = SparsePolyND::monomial({1, 0});
    const auto y = SparsePolyND::monomial({0, 1});
    const auto one = SparsePolyND::monomial({0, 0});
    const auto p = (x + Complex(-0.5) * one) * (y + one);
    CHECK(p.leading_index() == MultiIndex{1, 1});
    CHECK(p.total_degree() == 2);
    CHECK(p.degree_in(0) == 1);
    CHECK(p.coeff({0, 0}) == Complex(-0.5));
    const std::vector<Complex> z{Complex(0.3, 0.1), Complex(-1.2, 0.4)};
    CHECK(std::abs(p(z) - (z[0] - 0.5) * (z[1] + 1.0)) < 1e-14);
    const std::vector<double> xr{0.7, -0.2};
    CHECK(p.eval_real(xr) == doctest::Approx(0.2 * 0.8));
    const auto zero = p + Complex(-1.0) * p;
    CHECK(zero.is_zero());
    CHECK(zero.total_degree() == -1);
    CHECK_THROWS_AS((void)zero.leading_index(), InvalidInput);
    const auto t = SparsePolyND::tensor({{-0.5, 0.0, 1.0}, {0.0, 1.0}});
    CHECK(t.terms().size() == 2);
    CHECK(t.coeff({2, 1}) == Complex(1.0));
}

TEST_CASE("tau minus and Szego products") {
    CHECK(tau_minus_product(square(1.0, 2.0)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(tau_minus_product(square()) == doctest::Approx(0.5).epsilon(1e-12));
    const ProductSet torus{{CompactSet1D::unit_circle(), CompactSet1D::unit_circle()}};
    CHECK(tau_minus_product(torus) == doctest::Approx(1.0).epsilon(1e-12));

    const auto k = square();
    CHECK(szego_product(k, ProductWeight::unit(2)) == doctest::Approx(1.0));
    const ProductWeight w1{{Weight1D::abs_power(0.0, 1.0), Weight1D::constant(1.0)}};
    CHECK(szego_product(k, w1) == doctest::Approx(0.5).epsilon(1e-10));
    const ProductWeight w2{{Weight1D::abs_power(0.0, 1.0), Weight1D::abs_power(0.0, 1.0)}};
    CHECK(szego_product(k, w2) == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("Szego product equals exp of the tensor integral of log w") {
    const auto k = square(1.0, 2.0);
    const ProductWeight w{{Weight1D::piecewise_constant({0.0}, {1.0, 3.0}), Weight1D::abs_power(0.5, 0.5)}};
    // Nested adaptive integration of log w against the product measure.
    const std::vector<Complex> cut0{Complex(0.0)};
    const std::vector<Complex> cut1{Complex(0.5)};
    const double log_int = integrate_equilibrium(
        k.factors[1],
        [&](Complex y) {
            return integrate_equilibrium(
                k.factors[0], [&](Complex x) { return std::log(w.factors[0](x.real()) * w.factors[1](y.real())); },
                cut0, 1e-12);
        },
        cut1, 1e-12);
    const double tensor = std::exp(log_int);
    CHECK(tensor == doctest::Approx(std::sqrt(3.0)).epsilon(1e-8));
    CHECK(szego_product(k, w) == doctest::Approx(tensor).epsilon(1e-8));
}

TEST_CASE("product orthogonal polynomials on the square") {
    const auto k = square();
    const auto w = ProductWeight::unit(2);
    auto v = product_orthogonal(k, w, {2, 3});
    CHECK(v.norm * v.norm == doctest::Approx(std::pow(2.0, -8)).epsilon(1e-10));
    CHECK(v.poly.leading_index() == MultiIndex{2, 3});
    CHECK(std::abs(v.poly.coeff({2, 3}) - 1.0) < 1e-12);
    auto x1 = product_orthogonal(k, w, {1, 0});
    CHECK(x1.norm * x1.norm == doctest::Approx(0.5).epsilon(1e-12));
    auto c = product_orthogonal(k, w, {0, 0});
    CHECK(c.norm == doctest::Approx(1.0));
    CHECK(l2_norm_squared(v.poly, k, w) == doctest::Approx(std::pow(2.0, -8)).epsilon(1e-10));

    const ProductWeight bad{{Weight1D::constant(1e-310), Weight1D::constant(1.0)}};
    CHECK_THROWS_AS((void)product_orthogonal(k, bad, {1, 1}), SzegoFailure);
}

TEST_CASE("product orthogonal norms agree with full Gram-Schmidt") {
    const auto k = square();
    const auto w = ProductWeight::unit(2);
    const auto gs = bruteforce_gram_schmidt_nd(k, w, 14);
    REQUIRE(gs.size() == 15);
    CHECK(gs[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < 15; ++i) {
        const auto a = order_index(i, 2);
        double want = 1.0;
        for (int aj : a)
            if (aj > 0) want *= std::sqrt(std::pow(2.0, 1 - 2 * aj));
        CHECK(gs[static_cast<size_t>(i)] == doctest::Approx(want).epsilon(1e-8));
        CHECK(product_orthogonal(k, w, a).norm == doctest::Approx(gs[static_cast<size_t>(i)]).epsilon(1e-8));
    }

    const ProductSet mixed{{CompactSet1D::interval(-1.0, 1.0), CompactSet1D::unit_circle()}};
    const ProductWeight ww{{Weight1D::abs_power(0.3, 1.0), Weight1D::constant(2.0)}};
    const auto gm = bruteforce_gram_schmidt_nd(mixed, ww, 14);
    for (int i = 0; i < 15; ++i)
        CHECK(product_orthogonal(mixed, ww, order_index(i, 2)).norm ==
              doctest::Approx(gm[static_cast<size_t>(i)]).epsilon(1e-8));
}

TEST_CASE("product Chebyshev polynomials and their extreme grids") {
    const auto k = square();
    const auto w = ProductWeight::unit(2);
    auto q = product_chebyshev(k, w, {2, 3});
    CHECK(q.norm == doctest::Approx(0.125).epsilon(1e-10));
    CHECK(product_chebyshev(k, w, {0, 0}).norm == doctest::Approx(1.0));

    const ProductSet kp{{CompactSet1D::interval(-1.0, 1.0), lemniscate_pair()}};
    CHECK(product_chebyshev(kp, w, {1, 2}).norm == doctest::Approx(1.0).epsilon(1e-10));

    // Alternation on L = L1 x L2.
    const ProductWeight pw{{Weight1D::piecewise_constant({0.2}, {1.0, 1.5}), Weight1D::abs_power(-0.4, 0.5)}};
    const auto k2 = square(1.0, 2.0);
    auto qa = product_chebyshev(k2, pw, {2, 2});
    const auto& f0 = qa.factors[0];
    const auto& f1 = qa.factors[1];
    const Weight1D h0 = usc_regularize(pw.factors[0], k2.factors[0]);
    const Weight1D h1 = usc_regularize(pw.factors[1], k2.factors[1]);
    for (size_t i = 0; i < f0.extreme_points.size(); ++i) {
        for (size_t j = 0; j < f1.extreme_points.size(); ++j) {
            const double x = f0.extreme_points[i];
            const double y = f1.extreme_points[j];
            const std::vector<double> pt{x, y};
            const double v = qa.poly.eval_real(pt) * h0(x) * h1(y);
            CHECK(std::abs(v) == doctest::Approx(qa.norm).epsilon(1e-8));
            CHECK((v > 0 ? 1 : -1) == f0.signs[i] * f1.signs[j]);
        }
    }
    CHECK(f0.extreme_points.size() >= 3);
    CHECK(f1.extreme_points.size() >= 3);
}

TEST_CASE("product Chebyshev norms match brute-force minimax") {
    const auto w = ProductWeight::unit(2);
    auto check = [](const ProductSet& k, const ProductWeight& ww, const MultiIndex& a) {
        const double prod = product_chebyshev(k, ww, a).norm;
        const auto bf = bruteforce_chebyshev_nd(k, ww, a);
        CHECK(bf.level <= bf.upper * (1.0 + 1e-12));
        CHECK(bf.level == doctest::Approx(prod).epsilon(1e-4));
        CHECK(bf.upper == doctest::Approx(prod).epsilon(1e-4));
    };
    check(square(), w, {2, 1});
    check(square(), w, {1, 0});
    check(square(), w, {0, 0});
    check(square(1.0, 2.0), w, {1, 2});
    const ProductWeight pw{{Weight1D::piecewise_constant({0.0}, {1.0, 2.0}), Weight1D::constant(1.0)}};
    check(square(), pw, {2, 1});
    const ProductSet lp{{lemniscate_pair(), lemniscate_pair()}};
    check(lp, w, {1, 1});
    // Monic x has sup norm 1 on [-1, 1], so the product norm is 1/2 here.
    CHECK(bruteforce_chebyshev_nd(square(), w, {2, 1}).level == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(bruteforce_chebyshev_nd(square(), w, {1, 0}).level == doctest::Approx(1.0).epsilon(1e-4));
    CHECK_THROWS_AS((void)bruteforce_chebyshev_nd(square(), w, {4, 3}), ScaleLimit);
}

TEST_CASE("Widom factors on the square") {
    const auto k = square();
    const auto w = ProductWeight::unit(2);
    CHECK(widom_sup_nd(k, w, {2, 3}) == doctest::Approx(4.0).epsilon(1e-9));
    const double w2 = widom_l2_nd(k, w, {2, 3});
    CHECK(w2 * w2 == doctest::Approx(4.0).epsilon(1e-9));
    const ProductSet torus{{CompactSet1D::unit_circle(), CompactSet1D::unit_circle(), CompactSet1D::unit_circle()}};
    CHECK(widom_sup_nd(torus, ProductWeight::unit(3), {1, 2, 1}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Jensen lower bound") {
    const auto k = square();
    const auto w = ProductWeight::unit(2);
    const auto x1 = SparsePolyND::monomial({1, 0});
    CHECK(jensen_lower_bound(x1, k, w) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(l2_norm_squared(x1, k, w) == doctest::Approx(0.5).epsilon(1e-12));
    const auto c = SparsePolyND::monomial({0, 0}, 3.0);
    CHECK(jensen_lower_bound(c, k, w) == doctest::Approx(9.0).epsilon(1e-12));
    const auto v = product_orthogonal(k, w, {2, 3}).poly;
    CHECK(jensen_lower_bound(v, k, w) == doctest::Approx(std::pow(2.0, -10)).epsilon(1e-8));
    CHECK_THROWS_AS((void)jensen_lower_bound(SparsePolyND(2), k, w), InvalidInput);
}

TEST_CASE("equality flags and Widom reports") {
    CHECK(equality_case_flags(square(), {2, 3}) == std::vector{EqualityFlag::Unknown, EqualityFlag::Unknown});
    const ProductSet kp{{CompactSet1D::interval(-1.0, 1.0), lemniscate_pair()}};
    CHECK(equality_case_flags(kp, {0, 2}) == std::vector{EqualityFlag::ZeroIndex, EqualityFlag::InverseImage});
    CHECK(equality_case_flags(kp, {0, 1})[1] == EqualityFlag::None);
    const ProductSet two{{CompactSet1D::intervals({{-1.0, -0.2}, {0.3, 1.0}}), CompactSet1D::interval(0.0, 1.0)}};
    CHECK(equality_case_flags(two, {3, 0})[0] == EqualityFlag::None);
    const ProductSet tc{{CompactSet1D::unit_circle(), CompactSet1D::interval(-1.0, 1.0)}};
    CHECK(equality_case_flags(tc, {1, 0})[0] == EqualityFlag::NotReal);
    CHECK(to_string(EqualityFlag::InverseImage) == "inverse-image");

    const auto r = widom_report(square(1.0, 2.0), ProductWeight::unit(2), {2, 1});
    CHECK(r.tau_minus == doctest::Approx(0.5));
    CHECK(r.bounds_hold());
    REQUIRE(r.winf.has_value());
    REQUIRE(r.bounds.doubling_sup.has_value());
    // Capacity mismatch: W exceeds 2 strictly, the capacity-weighted bound is attained.
    CHECK(*r.winf > 2.0 + 1e-3);
    CHECK(*r.winf == doctest::Approx(*r.bounds.doubling_sup).epsilon(1e-8));
    const auto e = widom_report(square(), ProductWeight::unit(2), {2, 1});
    CHECK(*e.winf == doctest::Approx(*e.bounds.doubling_sup).epsilon(1e-8));
    CHECK(e.w2sq() == doctest::Approx(*e.bounds.doubling_l2).epsilon(1e-8));
}

TEST_CASE("randomized universal and doubling bounds") {
    std::mt19937_64 rng(20261018);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(0, 3);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = u(rng);
        const double b = a + 0.5 + std::abs(u(rng));
        const ProductSet k{{CompactSet1D::interval(a, b), CompactSet1D::intervals({{-1.0, -0.3 + 0.2 * u(rng)}, {0.4, 1.0}})}};
        const ProductWeight w{{Weight1D::piecewise_constant({0.5 * (a + b)}, {1.0 + std::abs(u(rng)), 1.0}),
                               Weight1D::abs_power(0.5 * u(rng), 0.5 + 0.5 * std::abs(u(rng)))}};
        const MultiIndex al{deg(rng), deg(rng)};
        const auto r = widom_report(k, w, al);
        CHECK(r.w2sq() >= r.bounds.universal_l2 - 1e-8);
        REQUIRE(r.winf.has_value());
        CHECK(*r.winf >= r.bounds.universal_sup - 1e-8);
        if (total_degree(al) >= 1) {
            const auto ru = widom_report(k, ProductWeight::unit(2), al);
            CHECK(ru.bounds_hold(1e-8));
            CHECK(ru.w2sq() >= 2.0 - 1e-6);
            CHECK(*ru.winf >= 2.0 - 1e-6);
        }
    }
}

TEST_CASE("tau minus equals the smallest factor capacity") {
    CHECK(theorem_tau_check(square(), {2, 3}));
    const ProductSet torus{{CompactSet1D::unit_circle(), CompactSet1D::unit_circle()}};
    CHECK(theorem_tau_check(torus, {3, 1}));
}
