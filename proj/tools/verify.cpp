#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "widom/cli.hpp"
#include "widom/extremal1d.hpp"
#include "widom/mahler.hpp"
#include "widom/minimax.hpp"

namespace widom::cli {

namespace {

using Rng = std::mt19937_64;

/// Accumulates checks of one invariant; keeps the first failing instance.
class Invariant {
public:
    Invariant(VerifyReport& rep, std::string suite, std::string name) : rep_(rep), index_(rep.invariants.size()) {
        rep.invariants.push_back({std::move(suite), std::move(name), 0, 0, {}});
    }

    void check(bool ok, const std::function<std::string()>& witness) {
        auto& r = rep_.invariants[index_];
        ++r.checks;
        if (ok) return;
        if (r.failures++ == 0) r.witness = witness();
    }

private:
    VerifyReport& rep_;
    size_t index_;
};

std::string str(double x) { return fmt::real(x); }

/// Capacity as seen by the Frostman checks, possibly corrupted on purpose.
struct Context {
    std::uint64_t seed = 42;
    std::string fault;
    [[nodiscard]] double frostman_cap(const CompactSet1D& k) const {
        return capacity(k) * (fault == "frostman" ? 1.25 : 1.0);
    }
    [[nodiscard]] Rng rng(std::uint64_t salt) const { return Rng(seed * 1000003ULL + salt); }
};

std::vector<CompactSet1D> reference_sets() {
    return {CompactSet1D::interval(-1.0, 1.0), CompactSet1D::interval(-2.0, 2.0),
            CompactSet1D::intervals({{-1.0, -0.3}, {0.2, 1.0}}), CompactSet1D::preimage(RealPolynomial({-2.0, 0.0, 1.0})),
            CompactSet1D::unit_circle(), CompactSet1D::circle({0.5, -0.25}, 2.0)};
}

CompactSet1D random_real_set(Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0: {
            const double a = -1.0 - u(rng);
            return CompactSet1D::interval(a, a + 0.5 + 2.0 * u(rng));
        }
        case 1: {
            const double g = -0.5 + 0.5 * u(rng);
            return CompactSet1D::intervals({{-1.0 - u(rng), g}, {g + 0.1 + 0.4 * u(rng), 1.0 + u(rng)}}, 128);
        }
        default: return CompactSet1D::preimage(RealPolynomial({-1.5 - u(rng), 0.0, 1.0}));
    }
}

/// Bounded product of an AbsPower and a two-piece step, centred near the set.
Weight1D random_weight(const CompactSet1D& k, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double lo = k.parts().front().lo;
    const double hi = k.parts().back().hi;
    const double x0 = lo + (hi - lo) * u(rng);
    return Weight1D::product({Weight1D::abs_power(x0, 2.0 * u(rng), 0.5 + u(rng)),
                              Weight1D::piecewise_constant({lo + (hi - lo) * u(rng)}, {0.5 + u(rng), 0.5 + u(rng)})});
}

double grid_minimax(const CompactSet1D& set, const Weight1D& w, int n, int per_interval) {
    const Weight1D hat = usc_regularize(w, set);
    std::vector<double> xs;
    for (const auto& p : set.parts())
        for (int i = 0; i < per_interval; ++i) xs.push_back(p.lo + p.length() * i / (per_interval - 1));
    for (double b : w.special_points())
        if (set.contains(b, 0.0)) xs.push_back(b);
    const auto np = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd a(np, n);
    Eigen::VectorXd f(np);
    const double mid = 0.5 * (set.parts().front().lo + set.parts().back().hi);
    const double half = 0.5 * (set.parts().back().hi - set.parts().front().lo);
    for (Eigen::Index i = 0; i < np; ++i) {
        const double x = xs[static_cast<size_t>(i)];
        const double t = (x - mid) / half;
        const double wx = hat(x);
        for (int j = 0; j < n; ++j) a(i, j) = -wx * std::pow(t, j);
        f(i) = wx * std::pow(t, n);
    }
    return discrete_minimax(a, f).level * std::pow(half, n);
}

void suite_sets1d(VerifyReport& rep, const Context& ctx) {
    const std::string s = "sets1d";
    auto rng = ctx.rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    {
        Invariant inv(rep, s, "monotonicity");
        for (int t = 0; t < 8; ++t) {
            const double a = -1.0 - u(rng);
            const double b = a + 0.5 + u(rng);
            const auto k1 = CompactSet1D::interval(a, b);
            const auto k2 = CompactSet1D::interval(a - u(rng), b + u(rng));
            inv.check(capacity(k1) <= capacity(k2) + 1e-8, [&] { return k1.describe() + " vs " + k2.describe(); });
            const auto k3 = CompactSet1D::intervals({{a, b}, {b + 0.2 + u(rng), b + 1.0 + u(rng)}}, 128);
            inv.check(capacity(k1) <= capacity(k3) + 1e-8, [&] { return k1.describe() + " vs " + k3.describe(); });
        }
        const auto gap = CompactSet1D::intervals({{-1.0, -0.3}, {0.2, 1.0}});
        inv.check(capacity(gap) <= capacity(CompactSet1D::interval(-1.0, 1.0)) + 1e-8, [&] { return gap.describe(); });
    }
    {
        Invariant inv(rep, s, "frostman");
        for (const auto& k : reference_sets()) {
            const auto mu = equilibrium_measure(k);
            const double logcap = std::log(ctx.frostman_cap(k));
            const double rmax = k.max_modulus() + 1.0;
            for (int i = 0; i < 200; ++i) {
                Complex z;
                bool on_set = i % 2 == 0;
                if (on_set && k.is_real()) {
                    const auto& p = k.parts()[static_cast<size_t>(i / 2) % k.parts().size()];
                    z = p.lo + p.length() * (0.01 + 0.98 * u(rng));
                } else if (on_set) {
                    z = k.center() + std::polar(k.radius(), 2.0 * std::numbers::pi * u(rng));
                } else {
                    z = Complex(rmax * (2.0 * u(rng) - 1.0), rmax * (2.0 * u(rng) - 1.0));
                    on_set = k.contains(z, 0.0);
                }
                const double v = log_potential(mu, z);
                inv.check(v >= logcap - 1e-6 && (!on_set || std::abs(v - logcap) <= 1e-6), [&] {
                    return k.describe() + " z=" + str(z.real()) + "+" + str(z.imag()) + "i U=" + str(v) +
                           " logCap=" + str(logcap);
                });
            }
        }
    }
    {
        Invariant inv(rep, s, "mass");
        for (const auto& k : reference_sets())
            for (int n : {8, 33, 128, 256}) {
                const auto mu = equilibrium_measure(k, n);
                double sum = 0.0;
                for (double w : mu.weights) sum += w;
                inv.check(std::abs(mu.total_mass - 1.0) <= 1e-12 && std::abs(sum - 1.0) <= 1e-12,
                          [&] { return k.describe() + " n=" + std::to_string(n) + " mass=" + str(sum); });
            }
    }
    {
        Invariant scaling(rep, s, "scaling");
        Invariant jensen(rep, s, "jensen");
        Invariant usc(rep, s, "usc_dominance");
        for (int t = 0; t < 12; ++t) {
            const auto k = random_real_set(rng);
            const auto w = random_weight(k, rng);
            const double c = 0.1 + 3.0 * u(rng);
            const double sw = szego_value(k, w);
            const double scw = szego_value(k, w.scaled(c));
            scaling.check(std::abs(scw - c * sw) <= 1e-10 * c * sw, [&] { return k.describe() + " " + w.describe(); });
            const double mass = weight_mass(k, w);
            jensen.check(mass >= sw - 1e-10, [&] { return k.describe() + " " + w.describe() + " mass=" + str(mass); });
            const auto hat = usc_regularize(w, k);
            std::vector<double> xs = chebyshev_grid(k, 200);
            for (double b : w.special_points())
                if (k.contains(b, 0.0)) xs.push_back(b);
            for (double x : xs) usc.check(hat(x) >= w(x), [&] { return w.describe() + " x=" + str(x); });
        }
    }
}

void suite_extremal1d(VerifyReport& rep, const Context& ctx) {
    const std::string s = "extremal1d";
    auto rng = ctx.rng(2);
    {
        Invariant l2(rep, s, "universal_l2");
        Invariant sup(rep, s, "universal_sup");
        Invariant alt(rep, s, "alternation");
        for (int t = 0; t < 16; ++t) {
            const auto k = random_real_set(rng);
            const auto w = random_weight(k, rng);
            const double sv = szego_value(k, w);
            const int n = 1 + t % 5;
            const auto witness = [&] { return k.describe() + " " + w.describe() + " n=" + std::to_string(n); };
            const double w2 = widom_l2_1d(k, w, n);
            l2.check(w2 * w2 >= sv - 1e-8, witness);
            const auto sol = weighted_chebyshev(k, w, n);
            sup.check(sol.norm / std::pow(capacity(k), n) >= sv - 1e-8, witness);
            bool ok = sol.extreme_points.size() >= static_cast<size_t>(n + 1);
            for (size_t i = 1; ok && i < sol.extreme_points.size(); ++i)
                ok = sol.extreme_points[i] < sol.extreme_points[i - 1] && sol.signs[i] == -sol.signs[i - 1];
            alt.check(ok, witness);
        }
    }
    {
        Invariant inv(rep, s, "real_doubling");
        const auto one = Weight1D::constant(1.0);
        for (const auto& k : reference_sets()) {
            if (!k.is_real()) continue;
            for (int n = 1; n <= 6; ++n) {
                const double w2 = widom_l2_1d(k, one, n);
                const double wi = widom_sup_1d(k, one, n);
                inv.check(w2 * w2 >= 2.0 - 1e-6 && wi >= 2.0 - 1e-6,
                          [&] { return k.describe() + " n=" + std::to_string(n) + " W2sq=" + str(w2 * w2) + " Winf=" + str(wi); });
            }
        }
    }
    {
        Invariant inv(rep, s, "oracle_equivalence");
        const std::vector<std::pair<CompactSet1D, Weight1D>> cases{
            {CompactSet1D::interval(-1.0, 1.0), Weight1D::abs_power(0.3, 1.5)},
            {CompactSet1D::intervals({{-1.0, -0.3}, {0.2, 1.0}}), Weight1D::piecewise_constant({0.0, 0.5}, {1.0, 2.0, 0.5})},
            {CompactSet1D::preimage(RealPolynomial({-2.0, 0.0, 1.0})), Weight1D::constant(1.0)}};
        for (const auto& [k, w] : cases)
            for (int n = 1; n <= 6; ++n) {
                const double a = weighted_chebyshev(k, w, n).norm;
                const double b = grid_minimax(k, w, n, 3000);
                inv.check(std::abs(a - b) <= 1e-4 * b,
                          [&] { return k.describe() + " n=" + std::to_string(n) + " exchange=" + str(a) + " grid=" + str(b); });
            }
    }
    {
        Diagnostic d{"root_limit_two_intervals", {}, ""};
        const auto k = CompactSet1D::intervals({{-1.0, -0.3}, {0.2, 1.0}});
        for (int n = 1; n <= 12; ++n)
            d.values.push_back(std::pow(weighted_chebyshev(k, Weight1D::constant(1.0), n).norm, 1.0 / n));
        d.note = "||T_n||^(1/n) for n = 1..12; Cap = " + str(capacity(k));
        rep.diagnostics.push_back(d);
        Diagnostic e{"widom_l2_ratio_weighted_interval", {}, ""};
        const auto one = CompactSet1D::interval(-1.0, 1.0);
        const auto w = Weight1D::abs_power(0.2, 1.0, 2.0);
        const double sv = szego_value(one, w);
        for (int n = 1; n <= 12; ++n) {
            const double w2 = widom_l2_1d(one, w, n);
            e.values.push_back(w2 * w2 / sv);
        }
        e.note = "W2_n^2 / S(K,w) for n = 1..12 on [-1,1]";
        rep.diagnostics.push_back(e);
        Diagnostic f{"widom_sup_two_intervals", {}, ""};
        for (int n = 1; n <= 12; ++n) f.values.push_back(widom_sup_1d(k, Weight1D::constant(1.0), n));
        f.note = "W_inf,n for n = 1..12; bounded along the sequence";
        rep.diagnostics.push_back(f);
    }
}

void suite_productnd(VerifyReport& rep, const Context& ctx) {
    const std::string s = "productnd";
    auto rng = ctx.rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> deg(0, 3);
    {
        Invariant l2(rep, s, "unif_l2");
        Invariant sup(rep, s, "hat_wid");
        for (int t = 0; t < 20; ++t) {
            ProductSet k{{random_real_set(rng), random_real_set(rng)}};
            ProductWeight w{{random_weight(k.factors[0], rng), random_weight(k.factors[1], rng)}};
            const MultiIndex a{deg(rng), deg(rng)};
            const auto r = widom_report(k, w, a);
            const auto witness = [&] {
                return k.factors[0].describe() + " x " + k.factors[1].describe() + " alpha=" + fmt::alpha_text(a);
            };
            l2.check(r.w2sq() >= r.bounds.universal_l2 - 1e-8, witness);
            sup.check(r.winf && *r.winf >= r.bounds.universal_sup - 1e-8, witness);
        }
    }
    {
        Invariant dl2(rep, s, "doubling_l2");
        Invariant dsup(rep, s, "doubling_sup");
        Invariant eq(rep, s, "doubling_equality");
        const auto one = CompactSet1D::interval(-1.0, 1.0);
        const auto two = CompactSet1D::interval(-2.0, 2.0);
        const auto gap = CompactSet1D::intervals({{-1.0, -0.3}, {0.2, 1.0}});
        const auto pre = CompactSet1D::preimage(RealPolynomial({-2.0, 0.0, 1.0}));
        const std::vector<ProductSet> sets{{{one, one}}, {{one, two}}, {{gap, one}}, {{pre, pre}}, {{pre, two}}};
        for (const auto& k : sets)
            for (const auto& a : indices_up_to(2, 4)) {
                if (total_degree(a) == 0) continue;
                const auto r = widom_report(k, ProductWeight::unit(2), a);
                const auto witness = [&] {
                    return k.factors[0].describe() + " x " + k.factors[1].describe() + " alpha=" + fmt::alpha_text(a);
                };
                const double norm2 = r.w2sq() * std::pow(r.tau_minus, 2 * total_degree(a));
                double floor2 = 1.0;
                for (int j = 0; j < 2; ++j)
                    floor2 *= (a[static_cast<size_t>(j)] > 0 ? 2.0 : 1.0) *
                              std::pow(capacity(k.factors[static_cast<size_t>(j)]), 2 * a[static_cast<size_t>(j)]);
                dl2.check(r.w2sq() >= 2.0 - 1e-6 && norm2 >= floor2 - 1e-8, witness);
                dsup.check(r.winf && *r.winf >= 2.0 - 1e-6 && r.bounds_hold(1e-6), witness);
                bool certified = true;
                bool refuted = false;
                for (auto f : r.flags) {
                    certified = certified && (f == EqualityFlag::ZeroIndex || f == EqualityFlag::InverseImage);
                    refuted = refuted || f == EqualityFlag::None;
                }
                const double gap_sup = *r.winf - *r.bounds.doubling_sup;
                if (certified) eq.check(std::abs(gap_sup) <= 1e-6 * *r.bounds.doubling_sup, witness);
                if (refuted) eq.check(gap_sup > 1e-6 * *r.bounds.doubling_sup, witness);
            }
    }
    {
        Invariant inv(rep, s, "bruteforce_oracle");
        const ProductSet k{{CompactSet1D::interval(-1.0, 1.0), CompactSet1D::interval(-2.0, 2.0)}};
        const ProductWeight w{{Weight1D::constant(1.0), Weight1D::piecewise_constant({0.5}, {1.0, 2.0})}};
        for (const auto& a : indices_up_to(2, 3)) {
            const double p = product_chebyshev(k, w, a).norm;
            const auto b = bruteforce_chebyshev_nd(k, w, a);
            inv.check(std::abs(p - b.upper) <= 1e-4 * p,
                      [&] { return "alpha=" + fmt::alpha_text(a) + " product=" + str(p) + " brute=" + str(b.upper); });
        }
    }
    {
        Invariant inv(rep, s, "product_alternation");
        const ProductSet k{{CompactSet1D::intervals({{-1.0, -0.3}, {0.2, 1.0}}), CompactSet1D::interval(-1.0, 2.0)}};
        const ProductWeight w{{Weight1D::abs_power(0.1, 1.0), Weight1D::constant(1.5)}};
        for (const auto& a : indices_up_to(2, 3)) {
            const auto q = product_chebyshev(k, w, a);
            const auto& l1 = q.factors[0];
            const auto& l2 = q.factors[1];
            const Weight1D h1 = usc_regularize(w.factors[0], k.factors[0]);
            const Weight1D h2 = usc_regularize(w.factors[1], k.factors[1]);
            const double s0 = l1.signs.front() * l2.signs.front();
            for (size_t i = 0; i < l1.extreme_points.size(); ++i)
                for (size_t j = 0; j < l2.extreme_points.size(); ++j) {
                    const double x = l1.extreme_points[i];
                    const double y = l2.extreme_points[j];
                    const double xy[2] = {x, y};
                    const double v = h1(x) * h2(y) * q.poly.eval_real(xy);
                    const double want = s0 * ((i + j) % 2 == 0 ? 1.0 : -1.0) * q.norm;
                    inv.check(std::abs(v - want) <= 1e-8 * std::max(1.0, q.norm),
                              [&] { return "alpha=" + fmt::alpha_text(a) + " x=" + str(x) + " y=" + str(y); });
                }
        }
    }
    {
        Invariant inv(rep, s, "fubini");
        for (int t = 0; t < 3; ++t) {
            ProductSet k{{random_real_set(rng), random_real_set(rng)}};
            ProductWeight w{{random_weight(k.factors[0], rng), random_weight(k.factors[1], rng)}};
            std::vector<Complex> sing0, sing1;
            for (double b : w.factors[0].special_points()) sing0.emplace_back(b);
            for (double b : w.factors[1].special_points()) sing1.emplace_back(b);
            // Nested integration of log w(x, y) against mu_1 x mu_2.
            const double v = integrate_equilibrium(
                k.factors[0],
                [&](Complex x) {
                    return integrate_equilibrium(
                        k.factors[1], [&](Complex y) { return std::log(w.factors[0](x) * w.factors[1](y)); }, sing1,
                        1e-11);
                },
                sing0, 1e-11);
            const double sp = szego_product(k, w);
            inv.check(std::abs(std::exp(v) - sp) <= 1e-8 * sp,
                      [&] { return "nested=" + str(std::exp(v)) + " product=" + str(sp); });
        }
    }
    {
        Invariant inv(rep, s, "order_bijection");
        for (int n = 1; n <= 4; ++n)
            for (std::int64_t i = 0; i < 10000; ++i)
                inv.check(order_rank(order_index(i, n)) == i,
                          [&] { return "n=" + std::to_string(n) + " i=" + std::to_string(i); });
    }
}

SparsePolyND random_monic(const MultiIndex& a, Rng& rng) {
    std::normal_distribution<double> g(0.0, 0.5);
    SparsePolyND p = SparsePolyND::monomial(a);
    const int n = static_cast<int>(a.size());
    for (std::int64_t r = 0; r < order_rank(a); ++r) p.add(order_index(r, n), Complex(g(rng), g(rng)));
    return p;
}

void suite_modelsets(VerifyReport& rep, const Context& ctx) {
    const std::string s = "modelsets";
    auto rng = ctx.rng(4);
    const std::vector<ModelSet> sets{ModelSet::polydisk(2), ModelSet::polydisk(3), ModelSet::ball2(),
                                     ModelSet::real_ball2(), ModelSet::simplex(2), ModelSet::simplex(3)};
    {
        Invariant inv(rep, s, "capacity_chain");
        for (const auto& k : sets) {
            const auto cc = capacities_cC(k);
            const auto tm = tau_minus_model(k);
            inv.check(cc.c <= cc.C + 1e-9 && (!tm || (cc.c <= *tm + 1e-9 && *tm <= cc.C + 1e-9)),
                      [&] { return k.name(); });
        }
        const auto rb = capacities_cC(ModelSet::real_ball2());
        const double tm = *tau_minus_model(ModelSet::real_ball2());
        inv.check(rb.c < tm && tm < rb.C, [] { return std::string("realball2 strict chain"); });
    }
    {
        Invariant inv(rep, s, "ray_limits");
        for (const auto& k : sets) {
            const auto closed = capacities_cC(k);
            const auto ray = ray_limit_capacities(k, 1e6);
            inv.check(std::abs(std::log(ray.C / closed.C)) <= 1e-5 && std::abs(std::log(ray.c / closed.c)) <= 1e-5,
                      [&] { return k.name() + " ray C=" + str(ray.C) + " c=" + str(ray.c); });
        }
    }
    {
        Invariant inv(rep, s, "ball_monomial_norms");
        const int grid = 400000;
        for (int a1 = 0; a1 <= 12; ++a1)
            for (int a2 = 0; a1 + a2 <= 12; ++a2) {
                double best = 0.0;
                for (int i = 0; i <= grid; ++i) {
                    const double r = static_cast<double>(i) / grid;
                    best = std::max(best, std::pow(r, a1) * std::pow(std::max(0.0, 1.0 - r * r), a2 / 2.0));
                }
                const double v = monomial_sup_norm(ModelSet::ball2(), {a1, a2});
                inv.check(std::abs(v - best) <= 1e-8 * best,
                          [&] { return "alpha=" + std::to_string(a1) + ";" + std::to_string(a2); });
            }
    }
    {
        Invariant inv(rep, s, "ball_jensen");
        for (int t = 0; t < 20; ++t) {
            const MultiIndex a = order_index(1 + t % 14, 2);
            const auto p = random_monic(a, rng);
            const double norm2 = sphere_l2_norm_squared(p);
            const auto lm = sphere_log_mean(p, 100000, ctx.seed + static_cast<std::uint64_t>(t));
            const double floor = ball_l2_floor(total_degree(a), 1.0);
            inv.check(norm2 >= std::exp(lm.mean - 3.0 * lm.std_error) && norm2 >= floor &&
                          lm.mean + 3.0 * lm.std_error >= std::log(floor),
                      [&] { return "alpha=" + fmt::alpha_text(a) + " norm2=" + str(norm2) + " floor=" + str(floor); });
        }
    }
    {
        Invariant inv(rep, s, "polydisk_mahler");
        for (int n = 1; n <= 2; ++n)
            for (const auto& a : indices_up_to(n, 4)) {
                const auto p = random_monic(a, rng);
                const double m = torus_mahler(p, 128);
                inv.check(m >= mahler_polydisk_floor(a) - 1e-6,
                          [&] { return "alpha=" + fmt::alpha_text(a) + " M=" + str(m); });
            }
    }
}

ComplexCoeffs random_poly(Rng& rng, double radius, int max_degree) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int d = std::uniform_int_distribution<int>(1, max_degree)(rng);
    std::vector<Complex> rs;
    for (int i = 0; i < d; ++i) rs.push_back(std::polar(radius * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng)));
    auto c = from_roots(rs);
    const double lead = 0.5 + u(rng);
    for (auto& v : c) v *= lead;
    return c;
}

void suite_mahler(VerifyReport& rep, const Context& ctx) {
    const std::string s = "mahler";
    auto rng = ctx.rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<CompactSet1D> sets{CompactSet1D::interval(-1.0, 1.0), CompactSet1D::interval(-2.0, 2.0),
                                         CompactSet1D::unit_circle(),
                                         CompactSet1D::preimage(RealPolynomial({-2.0, 0.0, 1.0}))};
    {
        Invariant agree(rep, s, "method_agreement");
        Invariant mult(rep, s, "multiplicativity");
        for (int t = 0; t < 40; ++t) {
            const auto& k = sets[static_cast<size_t>(t) % sets.size()];
            const auto p = random_poly(rng, 3.0, 5);
            const auto q = random_poly(rng, 3.0, 3);
            const double mr = mahler_1d(p, k).value;
            const double mq = mahler_1d(p, k, MahlerMethod::Quadrature).value;
            agree.check(std::abs(mr - mq) <= 1e-6 * mr, [&] { return k.describe() + " roots=" + str(mr) + " quad=" + str(mq); });
            ComplexCoeffs pq(p.size() + q.size() - 1, 0.0);
            for (size_t i = 0; i < p.size(); ++i)
                for (size_t j = 0; j < q.size(); ++j) pq[i + j] += p[i] * q[j];
            const double a = mahler_1d(pq, k).value;
            const double b = mr * mahler_1d(q, k).value;
            mult.check(std::abs(a - b) <= 1e-8 * b, [&] { return k.describe() + " M(PQ)=" + str(a) + " M(P)M(Q)=" + str(b); });
        }
    }
    {
        Invariant inv(rep, s, "coeff_bound");
        for (int t = 0; t < 10000; ++t) {
            const auto& k = sets[static_cast<size_t>(t) % sets.size()];
            const auto p = random_poly(rng, 3.0, 8);
            for (int i = 0; i < static_cast<int>(p.size()); ++i) {
                const auto b = coeff_bound_1d(p, k, i);
                inv.check(b.holds, [&] { return k.describe() + " k=" + std::to_string(i) + " ratio=" + str(b.ratio()); });
            }
        }
    }
    {
        Invariant inv(rep, s, "frostman");
        for (int t = 0; t < 200; ++t) {
            const auto& k = sets[static_cast<size_t>(t) % sets.size()];
            ComplexCoeffs p;
            if (t % 2 == 0 && k.is_real()) {
                // Roots on the set, where the floor is attained.
                std::vector<Complex> rs;
                const int d = 1 + t % 4;
                for (int i = 0; i < d; ++i) {
                    const auto& part = k.parts()[static_cast<size_t>(i) % k.parts().size()];
                    rs.emplace_back(part.lo + part.length() * u(rng));
                }
                p = from_roots(rs);
            } else {
                p = random_poly(rng, 3.0, 6);
            }
            const int d = effective_degree(p);
            const double m = mahler_1d(p, k).value;
            const double floor = std::abs(p[static_cast<size_t>(d)]) * std::pow(ctx.frostman_cap(k), d);
            inv.check(m >= floor - 1e-9, [&] { return k.describe() + " M=" + str(m) + " floor=" + str(floor); });
        }
    }
    {
        Invariant inv(rep, s, "nd_agreement");
        const ProductSet k{{CompactSet1D::interval(-1.0, 1.0), CompactSet1D::interval(-2.0, 2.0)}};
        for (int t = 0; t < 2; ++t) {
            std::normal_distribution<double> g;
            SparsePolyND p(2);
            for (const auto& a : indices_up_to(2, 2)) p.add(a, Complex(g(rng), 0.0));
            const double r = mahler_nd(p, k).value;
            const double q = mahler_nd(p, k, MahlerMethod::Quadrature, 1e-8).value;
            inv.check(std::abs(r - q) <= 1e-5 * r, [&] { return "recursive=" + str(r) + " quadrature=" + str(q); });
        }
    }
}

}  // namespace

bool VerifyReport::passed() const {
    return std::all_of(invariants.begin(), invariants.end(), [](const InvariantResult& r) { return r.failures == 0; });
}

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json inv = nlohmann::json::array();
    nlohmann::json failed = nlohmann::json::array();
    for (const auto& r : invariants) {
        inv.push_back({{"suite", r.suite}, {"name", r.name}, {"checks", r.checks}, {"failures", r.failures},
                       {"witness", r.witness}});
        if (r.failures) failed.push_back(r.name);
    }
    nlohmann::json diag = nlohmann::json::array();
    for (const auto& d : diagnostics) diag.push_back({{"name", d.name}, {"values", d.values}, {"note", d.note}});
    return {{"pass", passed()}, {"failed", failed}, {"invariants", inv}, {"diagnostics", diag}};
}

VerifyReport verify(const std::vector<std::string>& suites, std::uint64_t seed, const std::string& fault) {
    const Context ctx{seed, fault};
    const auto want = [&](const std::string& s) {
        return suites.empty() || std::find(suites.begin(), suites.end(), s) != suites.end();
    };
    VerifyReport rep;
    if (want("sets1d")) suite_sets1d(rep, ctx);
    if (want("extremal1d")) suite_extremal1d(rep, ctx);
    if (want("productnd")) suite_productnd(rep, ctx);
    if (want("modelsets")) suite_modelsets(rep, ctx);
    if (want("mahler")) suite_mahler(rep, ctx);
    return rep;
}

}  // namespace widom::cli
