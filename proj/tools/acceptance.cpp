#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "widom/extremal1d.hpp"
#include "widom/mahler.hpp"
#include "widom/modelsets.hpp"
#include "widom/productnd.hpp"

namespace {

using namespace widom;
using Rng = std::mt19937_64;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

CompactSet1D interval(double a, double b) { return CompactSet1D::interval(a, b); }

ProductSet square(double a = 1.0, double b = 1.0) { return {{interval(-a, a), interval(-b, b)}}; }

std::vector<MultiIndex> up_to(int n, int d) { return indices_up_to(n, d); }

SparsePolyND random_monic(const MultiIndex& a, Rng& rng, double scale = 0.5) {
    std::normal_distribution<double> g(0.0, scale);
    SparsePolyND p = SparsePolyND::monomial(a);
    const int n = static_cast<int>(a.size());
    for (std::int64_t r = 0; r < order_rank(a); ++r) p.add(order_index(r, n), Complex(g(rng), g(rng)));
    return p;
}

CompactSet1D random_real_set(Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0: {
            const double a = -2.0 + 2.0 * u(rng);
            return interval(a, a + 0.3 + 2.0 * u(rng));
        }
        case 1: {
            const double g = -0.5 + 0.5 * u(rng);
            return CompactSet1D::intervals({{-1.0 - u(rng), g}, {g + 0.1 + 0.4 * u(rng), 1.0 + u(rng)}}, 128);
        }
        case 2: return CompactSet1D::preimage(RealPolynomial({-1.5 - u(rng), 0.0, 1.0}));
        default: return CompactSet1D::preimage(RealPolynomial({0.2 * u(rng), -3.0, 0.0, 4.0}));
    }
}

Weight1D random_weight(const CompactSet1D& k, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double lo = k.parts().front().lo;
    const double hi = k.parts().back().hi;
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0: return Weight1D::constant(0.2 + 3.0 * u(rng));
        case 1: return Weight1D::abs_power(lo + (hi - lo) * u(rng), 3.0 * u(rng), 0.5 + u(rng));
        case 2:
            return Weight1D::piecewise_constant({lo + (hi - lo) * u(rng)}, {0.2 + 2.0 * u(rng), 0.2 + 2.0 * u(rng)});
        default:
            return Weight1D::product({Weight1D::abs_power(lo + (hi - lo) * u(rng), u(rng)),
                                      Weight1D::piecewise_constant({0.5 * (lo + hi)}, {1.0, 0.5 + u(rng)})});
    }
}

// 1. Unit torus: every W_inf equals 1.
Outcome polydisk_identity() {
    double worst = 0.0;
    int count = 0;
    for (int n = 1; n <= 3; ++n) {
        const ProductSet k{std::vector<CompactSet1D>(static_cast<size_t>(n), CompactSet1D::unit_circle())};
        for (const auto& a : up_to(n, 4)) {
            worst = std::max(worst, std::abs(widom_sup_nd(k, ProductWeight::unit(n), a) - 1.0));
            ++count;
        }
    }
    return {worst <= 1e-12, std::to_string(count) + " indices, max |W - 1| = " + num(worst) + " (tol 1e-12)"};
}

// 2. Euclidean ball.
Outcome ball_minimum() {
    const auto prof = profile_minimum(ModelSet::ball2(), 1001);
    const double dev = std::abs(prof.tau_minus - std::sqrt(0.5));
    const double norm = monomial_sup_norm(ModelSet::ball2(), {2, 3});
    // Independent: max over |z1| = r of r^2 (1 - r^2)^{3/2} on the sphere.
    double grid = 0.0;
    for (int i = 0; i <= 1000000; ++i) {
        const double r = i / 1e6;
        grid = std::max(grid, r * r * std::pow(1.0 - r * r, 1.5));
    }
    const bool ok = dev <= 1e-6 && std::abs(norm - grid) <= 1e-5 && std::abs(norm - 0.18590) <= 1e-5;
    return {ok, "tau- = " + num(prof.tau_minus) + " (|dev| " + num(dev) + " <= 1e-6); ||z^(2,3)|| = " + num(norm) +
                    ", grid " + num(grid) + " (tol 1e-5)"};
}

// 3. Real ball B2.
Outcome real_ball() {
    const auto k = ModelSet::real_ball2();
    const auto prof = profile_minimum(k, 1001);
    const auto ray = ray_limit_capacities(k, 1e6);
    const auto closed = capacities_cC(k);
    const bool ok = std::abs(prof.tau_minus - 0.4) <= 1e-6 && std::abs(prof.theta_min[0] - 0.4) <= 1e-3 &&
                    std::abs(ray.c - 0.35355) <= 1e-4 && std::abs(ray.C - 0.5) <= 1e-4 &&
                    std::abs(ray.c - closed.c) <= 1e-4 && std::abs(ray.C - closed.C) <= 1e-4 && ray.c < prof.tau_minus &&
                    prof.tau_minus < ray.C;
    return {ok, "tau- = " + num(prof.tau_minus) + " at theta1 = " + num(prof.theta_min[0]) + "; ray c = " + num(ray.c) +
                    ", C = " + num(ray.C) + "; chain c < tau- < C"};
}

// 4. Simplex.
Outcome simplex_capacity() {
    bool ok = true;
    std::string d;
    for (int n : {2, 3}) {
        const double got = ray_limit_capacities(ModelSet::simplex(n), 1e6).C;
        const double want = 1.0 / (4.0 * std::sqrt(n));
        ok = ok && std::abs(got - want) <= 1e-5;
        d += "n=" + std::to_string(n) + ": C = " + num(got) + " vs " + num(want) + "; ";
    }
    return {ok, d + "tol 1e-5"};
}

// 5. Doubling: equality on the square, strict excess on [-1,1]x[-2,2].
Outcome doubling() {
    double worst = 0.0;
    bool ok = true;
    int strict = 0;
    for (const auto& a : up_to(2, 6)) {
        double doubled = 1.0;
        for (int aj : a) doubled *= aj > 0 ? 2.0 : 1.0;
        const auto r = widom_report(square(), ProductWeight::unit(2), a);
        worst = std::max({worst, std::abs(*r.winf - doubled), std::abs(r.w2sq() - doubled)});

        const auto m = widom_report(square(1.0, 2.0), ProductWeight::unit(2), a);
        ok = ok && m.bounds_hold(1e-6) && *m.winf >= doubled - 1e-6 && m.w2sq() >= doubled - 1e-6;
        // Capacity 1 against tau- = 1/2 inflates every index that uses the wider factor.
        if (a[1] > 0) {
            ok = ok && *m.winf > doubled * (1.0 + 1e-3) && m.w2sq() > doubled * (1.0 + 1e-3);
            ++strict;
        }
    }
    ok = ok && worst <= 1e-6;
    return {ok, "square: max |W - prod 2^c| = " + num(worst) + " (tol 1e-6); mismatched: bounds hold, " +
                    std::to_string(strict) + " strict"};
}

// 6. Product Chebyshev polynomial against brute-force minimax.
Outcome chebyshev_optimality() {
    const auto lem = CompactSet1D::preimage(RealPolynomial({-2.0, 0.0, 1.0}));
    const std::vector<std::pair<ProductSet, ProductWeight>> cases{
        {square(), ProductWeight::unit(2)},
        {square(), {{Weight1D::piecewise_constant({0.0}, {1.0, 2.0}), Weight1D::constant(1.0)}}},
        {square(1.0, 2.0), ProductWeight::unit(2)},
        {square(1.0, 2.0), {{Weight1D::constant(1.0), Weight1D::piecewise_constant({-0.5, 1.0}, {2.0, 1.0, 0.5})}}},
        {{{lem, lem}}, ProductWeight::unit(2)},
        {{{lem, lem}}, {{Weight1D::piecewise_constant({0.0}, {0.5, 1.5}), Weight1D::constant(1.0)}}}};
    double worst = 0.0;
    double gap = 0.0;
    int count = 0;
    for (const auto& [k, w] : cases)
        for (const auto& a : up_to(2, 6)) {
            const double p = product_chebyshev(k, w, a).norm;
            const auto b = bruteforce_chebyshev_nd(k, w, a);
            // The discrete level never exceeds the true minimum, and p never falls below it.
            worst = std::max(worst, std::abs(b.level - p) / p);
            gap = std::max(gap, (b.upper - b.level) / p);
            ++count;
        }
    return {worst <= 1e-4, std::to_string(count) + " (set, weight, alpha), max |level - p|/p = " + num(worst) +
                               " (tol 1e-4); max refinement gap " + num(gap)};
}

// 7. Universal lower bounds on random instances.
Outcome universal_bounds() {
    Rng rng(20240701);
    std::uniform_int_distribution<int> dim(1, 3);
    double worst = std::numeric_limits<double>::infinity();
    for (int t = 0; t < 500; ++t) {
        const int n = dim(rng);
        ProductSet k;
        ProductWeight w;
        for (int j = 0; j < n; ++j) {
            k.factors.push_back(random_real_set(rng));
            w.factors.push_back(random_weight(k.factors.back(), rng));
        }
        MultiIndex a(static_cast<size_t>(n));
        std::uniform_int_distribution<int> deg(0, n == 3 ? 2 : 4);
        for (auto& aj : a) aj = deg(rng);
        const auto r = widom_report(k, w, a);
        worst = std::min({worst, r.w2sq() - r.bounds.universal_l2, *r.winf - r.bounds.universal_sup});
    }
    return {worst >= -1e-8, "500 instances, min (W - S) = " + num(worst) + " (tol -1e-8)"};
}

// 8. Jensen on the square and the ball.
Outcome jensen() {
    Rng rng(8);
    std::uniform_int_distribution<int> deg(0, 3);
    double worst = std::numeric_limits<double>::infinity();
    for (int t = 0; t < 200; ++t) {
        MultiIndex a{deg(rng), deg(rng)};
        if (total_degree(a) == 0) a[0] = 1;
        const auto p = random_monic(a, rng);
        const auto k = square();
        ProductWeight w = ProductWeight::unit(2);
        if (t % 2) w = {{random_weight(k.factors[0], rng), random_weight(k.factors[1], rng)}};
        worst = std::min(worst, l2_norm_squared(p, k, w) - jensen_lower_bound(p, k, w));
    }
    int ball_fail = 0;
    for (int t = 0; t < 200; ++t) {
        const auto p = random_monic(order_index(1 + t % 27, 2), rng);
        const auto lm = sphere_log_mean(p, 100000, 1000 + static_cast<std::uint64_t>(t));
        if (sphere_l2_norm_squared(p) < std::exp(lm.mean - 3.0 * lm.std_error) - 1e-8) ++ball_fail;
    }
    return {worst >= -1e-8 && ball_fail == 0,
            "square: min (||P||^2 - S M^2) = " + num(worst) + " (tol -1e-8); ball: " + std::to_string(ball_fail) +
                "/200 below the 3-sigma Monte Carlo floor"};
}

// 9. Mahler measure on the torus.
Outcome mahler_polydisk() {
    Rng rng(9);
    double worst = std::numeric_limits<double>::infinity();
    double witness = 0.0;
    int count = 0;
    for (int n = 1; n <= 3; ++n)
        for (const auto& a : up_to(n, 4)) {
            if (total_degree(a) == 0) continue;
            const int m = n == 3 ? 24 : 128;
            const double floor = mahler_polydisk_floor(a);
            for (int r = 0; r < (n == 3 ? 1 : 4); ++r) {
                worst = std::min(worst, torus_mahler(random_monic(a, rng), m) - floor);
                ++count;
            }
            // z^alpha: M = 1, which meets the floor when alpha lies on an axis.
            const double mono = torus_mahler(SparsePolyND::monomial(a), m);
            witness = std::max(witness, std::abs(mono - 1.0));
            if (std::count(a.begin(), a.end(), 0) == n - 1) witness = std::max(witness, std::abs(mono - floor));
        }
    return {worst >= -1e-6 && witness <= 1e-12, std::to_string(count) + " monic P, min (M - floor) = " + num(worst) +
                                                     " (tol -1e-6); z^alpha deviation " + num(witness)};
}

ComplexCoeffs random_poly(Rng& rng, int max_degree) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int d = std::uniform_int_distribution<int>(1, max_degree)(rng);
    std::vector<Complex> rs;
    for (int i = 0; i < d; ++i) rs.push_back(std::polar(3.0 * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng)));
    auto c = from_roots(rs);
    for (auto& v : c) v *= 0.5 + u(rng);
    return c;
}

// 10. Coefficient bounds.
Outcome coefficient_bounds() {
    Rng rng(10);
    const std::vector<CompactSet1D> sets{interval(-1.0, 1.0), interval(-2.0, 3.0), CompactSet1D::unit_circle(),
                                         CompactSet1D::circle({1.0, 1.0}, 0.5),
                                         CompactSet1D::preimage(RealPolynomial({-2.0, 0.0, 1.0}))};
    long long checks = 0;
    long long fails = 0;
    for (int t = 0; t < 10000; ++t) {
        const auto& k = sets[static_cast<size_t>(t) % sets.size()];
        const auto p = random_poly(rng, 8);
        for (int i = 0; i < static_cast<int>(p.size()); ++i, ++checks)
            if (!coeff_bound_1d(p, k, i).holds) ++fails;
    }
    const std::vector<ProductSet> psets{square(), square(1.0, 2.0), {{interval(-1.0, 1.0), CompactSet1D::unit_circle()}}};
    std::normal_distribution<double> g;
    std::uniform_int_distribution<int> deg(1, 2);
    for (int t = 0; t < 1000; ++t) {
        const auto& k = psets[static_cast<size_t>(t) % psets.size()];
        const int m1 = deg(rng);
        const int m2 = deg(rng);
        SparsePolyND p(2);
        for (int i = 0; i <= m1; ++i)
            for (int j = 0; j <= m2; ++j) p.add({i, j}, Complex(g(rng), g(rng)));
        for (int i = 0; i <= m1; ++i)
            for (int j = 0; j <= m2; ++j, ++checks)
                if (!coeff_bound_nd(p, k, {i, j}).holds) ++fails;
    }
    const std::vector<Complex> witness{-0.5, 0.0, 1.0};
    const double ratio = coeff_bound_1d(witness, interval(-1.0, 1.0), 2).ratio();
    return {fails == 0 && std::abs(ratio - 1.0) <= 1e-8, std::to_string(checks) + " coefficients, " +
                                                              std::to_string(fails) + " violations; x^2 - 1/2 ratio " +
                                                              num(ratio) + " (tol 1e-8)"};
}

// 11. Integer polynomials on [-2,2]^2.
Outcome integer_floor() {
    const auto rep = integer_floor_check(square(2.0, 2.0), {2, 2}, 2);
    return {rep.holds() && rep.min_value >= 1.0 - 1e-7,
            std::to_string(rep.candidates) + " polynomials, min M = " + num(rep.min_value) + " (tol 1 - 1e-7), " +
                std::to_string(rep.violations) + " violations"};
}

// 12. Oracle equivalences.
Outcome oracles() {
    double gs = 0.0;
    Rng rng(12);
    const std::vector<std::pair<ProductSet, ProductWeight>> cases{
        {square(), ProductWeight::unit(2)},
        {square(1.0, 2.0), {{Weight1D::abs_power(0.3, 1.0), Weight1D::constant(2.0)}}},
        {{{interval(-1.0, 1.0), CompactSet1D::unit_circle()}}, {{Weight1D::abs_power(-0.2, 2.0), Weight1D::constant(1.0)}}}};
    for (const auto& [k, w] : cases) {
        const auto ref = bruteforce_gram_schmidt_nd(k, w, 14);
        for (int i = 0; i < 15; ++i) {
            const double p = product_orthogonal(k, w, order_index(i, 2)).norm;
            gs = std::max(gs, std::abs(p - ref[static_cast<size_t>(i)]) / ref[static_cast<size_t>(i)]);
        }
    }
    double mq = 0.0;
    const std::vector<CompactSet1D> sets{interval(-1.0, 1.0), CompactSet1D::unit_circle(),
                                         CompactSet1D::intervals({{-1.0, -0.3}, {0.2, 1.0}}),
                                         CompactSet1D::preimage(RealPolynomial({-2.0, 0.0, 1.0}))};
    for (int t = 0; t < 200; ++t) {
        const auto& k = sets[static_cast<size_t>(t) % sets.size()];
        const auto p = random_poly(rng, 6);
        const double a = mahler_1d(p, k).value;
        const double b = mahler_1d(p, k, MahlerMethod::Quadrature).value;
        mq = std::max(mq, std::abs(a - b) / a);
    }
    double cap = 0.0;
    for (const auto& k : {interval(-1.0, 1.0), interval(0.5, 4.0), CompactSet1D::preimage(RealPolynomial({-2.0, 0.0, 1.0})),
                          CompactSet1D::preimage(RealPolynomial({0.0, -3.0, 0.0, 4.0}))}) {
        const double energy = solve_cell_equilibrium(k.parts(), 256).energy;
        cap = std::max(cap, std::abs(std::exp(-energy) - capacity(k)) / capacity(k));
    }
    return {gs <= 1e-8 && mq <= 1e-6 && cap <= 1e-4, "Gram-Schmidt " + num(gs) + " (tol 1e-8); Mahler roots/quad " +
                                                           num(mq) + " (tol 1e-6); capacity vs energy " + num(cap) +
                                                           " (tol 1e-4)"};
}

}  // namespace

int main() {
    std::setvbuf(stdout, nullptr, _IOLBF, 0);
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"polydisk identity", polydisk_identity},
        {"ball directional minimum", ball_minimum},
        {"real ball B2", real_ball},
        {"simplex capacity", simplex_capacity},
        {"doubling equality", doubling},
        {"product Chebyshev optimality", chebyshev_optimality},
        {"universal bounds", universal_bounds},
        {"Jensen bound", jensen},
        {"Mahler polydisk", mahler_polydisk},
        {"coefficient bounds", coefficient_bounds},
        {"integer floor", integer_floor},
        {"oracle equivalences", oracles}};
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        if (!o.pass) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
