#include "widom/modelsets.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "widom/errors.hpp"
#include "widom/mahler.hpp"

namespace widom {

namespace {

constexpr double kLogFloor = -745.0;
constexpr double kSimplexTol = 1e-12;

double h_map(double t) { return t <= 1.0 ? 1.0 : t + std::sqrt((t - 1.0) * (t + 1.0)); }

void check_alpha(const ModelSet& k, const MultiIndex& a) {
    if (static_cast<int>(a.size()) != k.n) throw InvalidInput("multi-index length does not match the set dimension");
    for (int v : a)
        if (v < 0) throw InvalidInput("negative multi-index entry");
}

/// prod_j (alpha_j / |alpha|)^{alpha_j}, with 0^0 = 1.
double entropy_product(const MultiIndex& a) {
    const int d = total_degree(a);
    if (d == 0) return 1.0;
    double acc = 0.0;
    for (int v : a)
        if (v > 0) acc += v * std::log(static_cast<double>(v) / d);
    return std::exp(acc);
}

/// Golden-section minimum of a unimodal f on [lo, hi] down to width tol.
std::pair<double, double> golden_min(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    const double x = 0.5 * (lo + hi);
    return {x, f(x)};
}

/// Gauss-Legendre nodes and weights on [-1, 1] by the Golub-Welsch method.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int m) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(m, m);
    for (int k = 1; k < m; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        j(k, k - 1) = b;
        j(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    std::vector<double> x(static_cast<size_t>(m));
    std::vector<double> w(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k) {
        x[static_cast<size_t>(k)] = es.eigenvalues()(k);
        const double v = es.eigenvectors()(0, k);
        w[static_cast<size_t>(k)] = 2.0 * v * v;
    }
    return {x, w};
}

double log_abs(Complex v) {
    const double a = std::abs(v);
    return a > 0.0 ? std::log(a) : kLogFloor;
}

}  // namespace

ModelSet ModelSet::polydisk(int n) {
    if (n < 1) throw InvalidInput("polydisk dimension must be >= 1");
    return {Kind::Polydisk, n};
}

ModelSet ModelSet::simplex(int n) {
    if (n < 1) throw InvalidInput("simplex dimension must be >= 1");
    return {Kind::Simplex, n};
}

ModelSet ModelSet::parse(const std::string& name) {
    if (name == "ball2") return ball2();
    if (name == "realball2") return real_ball2();
    const auto colon = name.find(':');
    if (colon != std::string::npos) {
        const std::string head = name.substr(0, colon);
        const std::string tail = name.substr(colon + 1);
        int n = 0;
        try {
            size_t used = 0;
            n = std::stoi(tail, &used);
            if (used != tail.size()) n = 0;
        } catch (const std::exception&) {
            n = 0;
        }
        if (n >= 1 && head == "polydisk") return polydisk(n);
        if (n >= 1 && head == "simplex") return simplex(n);
    }
    throw InvalidInput("unknown model set '" + name + "'");
}

std::string ModelSet::name() const {
    switch (kind) {
        case Kind::Polydisk: return "polydisk:" + std::to_string(n);
        case Kind::EuclideanBall2: return "ball2";
        case Kind::RealBall2: return "realball2";
        case Kind::Simplex: return "simplex:" + std::to_string(n);
    }
    return {};
}

double monomial_sup_norm(const ModelSet& k, const MultiIndex& a) {
    check_alpha(k, a);
    switch (k.kind) {
        case ModelSet::Kind::Polydisk: return 1.0;
        case ModelSet::Kind::EuclideanBall2:
        case ModelSet::Kind::RealBall2: return std::sqrt(entropy_product(a));
        case ModelSet::Kind::Simplex: return entropy_product(a);
    }
    return 0.0;
}

double directional_tau(const ModelSet& k, std::span<const double> theta) {
    if (static_cast<int>(theta.size()) != k.n) throw InvalidInput("direction length does not match the set dimension");
    double sum = 0.0;
    for (double t : theta) {
        if (!(t >= 0.0)) throw InvalidInput("direction outside the simplex");
        sum += t;
    }
    if (std::abs(sum - 1.0) > kSimplexTol) throw InvalidInput("direction outside the simplex");
    switch (k.kind) {
        case ModelSet::Kind::Polydisk: return 1.0;
        case ModelSet::Kind::EuclideanBall2:
            return std::pow(theta[0], theta[0] / 2.0) * std::pow(theta[1], theta[1] / 2.0);
        case ModelSet::Kind::RealBall2: {
            const double t = theta[0];
            return std::sqrt(std::pow(t, t) * std::pow(2.0 - t, 2.0 - t) / std::pow(4.0, 2.0 - t));
        }
        case ModelSet::Kind::Simplex: throw Unsupported("no closed form for tau on the simplex");
    }
    return 0.0;
}

std::optional<double> tau_minus_model(const ModelSet& k) {
    switch (k.kind) {
        case ModelSet::Kind::Polydisk: return 1.0;
        case ModelSet::Kind::EuclideanBall2: return std::numbers::sqrt2 / 2.0;
        case ModelSet::Kind::RealBall2: return 0.4;
        case ModelSet::Kind::Simplex: return std::nullopt;
    }
    return std::nullopt;
}

DirectionalProfile profile_minimum(const ModelSet& k, int points) {
    if (k.n != 2) throw Unsupported("directional profiles need a two-dimensional set");
    if (points < 1) throw InvalidInput("profile needs at least one grid point");
    DirectionalProfile out;
    const auto tau_at = [&](double t) {
        const double th[2] = {t, 1.0 - t};
        return directional_tau(k, th);
    };
    size_t best = 0;
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? 1.0 : 1.0 - static_cast<double>(i) / (points - 1);
        out.theta_grid.push_back({t, 1.0 - t});
        out.values.push_back(tau_at(t));
        if (out.values.back() < out.values[best]) best = out.values.size() - 1;
    }
    double t_best = out.theta_grid[best][0];
    double v_best = out.values[best];
    if (points > 2) {
        const double step = 1.0 / (points - 1);
        const auto [t, v] = golden_min(tau_at, std::max(0.0, t_best - step), std::min(1.0, t_best + step), 1e-10);
        if (v < v_best) {
            t_best = t;
            v_best = v;
        }
    }
    out.theta_min = {t_best, 1.0 - t_best};
    out.tau_minus = v_best;
    return out;
}

double extremal_function(const ModelSet& k, std::span<const Complex> z) {
    if (static_cast<int>(z.size()) != k.n) throw InvalidInput("point dimension does not match the set");
    switch (k.kind) {
        case ModelSet::Kind::Polydisk: {
            double m = 0.0;
            for (Complex v : z) m = std::max(m, std::abs(v));
            return m > 1.0 ? std::log(m) : 0.0;
        }
        case ModelSet::Kind::EuclideanBall2: {
            const double r2 = std::norm(z[0]) + std::norm(z[1]);
            return r2 > 1.0 ? 0.5 * std::log(r2) : 0.0;
        }
        case ModelSet::Kind::RealBall2: {
            const double s = std::norm(z[0]) + std::norm(z[1]) + std::abs(z[0] * z[0] + z[1] * z[1] - 1.0);
            return 0.5 * std::log(h_map(s));
        }
        case ModelSet::Kind::Simplex: {
            double s = 0.0;
            Complex total = -1.0;
            for (Complex v : z) {
                s += std::abs(v);
                total += v;
            }
            return std::log(h_map(s + std::abs(total)));
        }
    }
    return 0.0;
}

CapacityPair ray_limit_capacities(const ModelSet& k, double radius, int random_dirs, std::uint64_t seed) {
    const int n = k.n;
    std::vector<std::vector<Complex>> dirs;
    const Complex units[5] = {0.0, 1.0, -1.0, Complex(0.0, 1.0), Complex(0.0, -1.0)};
    int total = 1;
    for (int j = 0; j < n; ++j) total *= 5;
    for (int code = 1; code < total; ++code) {
        std::vector<Complex> u(static_cast<size_t>(n));
        int c = code;
        for (int j = 0; j < n; ++j, c /= 5) u[static_cast<size_t>(j)] = units[c % 5];
        dirs.push_back(std::move(u));
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    for (int i = 0; i < random_dirs; ++i) {
        std::vector<Complex> u(static_cast<size_t>(n));
        for (auto& v : u) v = Complex(g(rng), g(rng));
        dirs.push_back(std::move(u));
    }
    double best_max = -std::numeric_limits<double>::infinity();
    double best_euc = -std::numeric_limits<double>::infinity();
    std::vector<Complex> z(static_cast<size_t>(n));
    for (const auto& u : dirs) {
        double mx = 0.0;
        double e2 = 0.0;
        for (Complex v : u) {
            mx = std::max(mx, std::abs(v));
            e2 += std::norm(v);
        }
        const double scales[2] = {radius / mx, radius / std::sqrt(e2)};
        for (int which = 0; which < 2; ++which) {
            for (int j = 0; j < n; ++j) z[static_cast<size_t>(j)] = scales[which] * u[static_cast<size_t>(j)];
            const double g_val = extremal_function(k, z) - std::log(radius);
            (which == 0 ? best_max : best_euc) = std::max(which == 0 ? best_max : best_euc, g_val);
        }
    }
    return {std::exp(-best_max), std::exp(-best_euc), true};
}

CapacityPair capacities_cC(const ModelSet& k) {
    switch (k.kind) {
        case ModelSet::Kind::Polydisk: return {1.0, 1.0, false};
        case ModelSet::Kind::EuclideanBall2: return {std::numbers::sqrt2 / 2.0, 1.0, false};
        case ModelSet::Kind::RealBall2: return {std::numbers::sqrt2 / 4.0, 0.5, false};
        case ModelSet::Kind::Simplex: {
            const double c = ray_limit_capacities(k).c;
            return {c, 1.0 / (4.0 * std::sqrt(static_cast<double>(k.n))), true};
        }
    }
    return {};
}

TInterval transfinite_interval(const ModelSet& k) {
    const auto cc = capacities_cC(k);
    const auto tm = tau_minus_model(k);
    return {cc.c, tm ? std::min(*tm, cc.C) : cc.C};
}

double ball_radial_infimum(int n) {
    if (n < 1) throw InvalidInput("dimension must be >= 1");
    const auto f = [n](double r) { return std::pow(1.0 + r, 2 * n - 1) / (1.0 - r) * -std::log(r); };
    return golden_min(f, 1e-12, 1.0 - 1e-12, 1e-10).second;
}

double ball_l2_floor(int d, double szego) {
    if (d < 0) throw InvalidInput("degree must be >= 0");
    if (d == 0) return szego;
    static const double inf2 = ball_radial_infimum(2);
    return szego / (std::pow(2.0, d) * std::exp(2.0 * d * inf2));
}

double mahler_polydisk_floor(const MultiIndex& a) {
    const int d = total_degree(a);
    double prod = 1.0;
    for (int v : a) {
        if (v < 0) throw InvalidInput("negative multi-index entry");
        prod *= binomial(d, v);
    }
    return 1.0 / prod;
}

double mahler_polydisk_l2_floor(const MultiIndex& a, double szego) {
    const double f = mahler_polydisk_floor(a);
    return szego * f * f;
}

double model_widom_sup(const ModelSet& k, const MultiIndex& a) {
    if (k.kind != ModelSet::Kind::Polydisk && k.kind != ModelSet::Kind::EuclideanBall2)
        throw Unsupported("Chebyshev polynomials of " + k.name() + " are not monomials");
    return monomial_sup_norm(k, a) / std::pow(*tau_minus_model(k), total_degree(a));
}

bool model_tau_check(const ModelSet& k, const MultiIndex& a) {
    if (k.kind != ModelSet::Kind::Polydisk && k.kind != ModelSet::Kind::EuclideanBall2)
        throw Unsupported("Chebyshev polynomials of " + k.name() + " are not monomials");
    return monomial_sup_norm(k, a) >= std::pow(*tau_minus_model(k), total_degree(a)) - 1e-12;
}

ProductRule torus_rule(int n, int m) {
    if (n < 1 || m < 1) throw InvalidInput("torus rule needs n >= 1 and m >= 1");
    ProductRule rule;
    std::vector<Complex> roots(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) roots[static_cast<size_t>(i)] = std::polar(1.0, 2.0 * std::numbers::pi * i / m);
    long long total = 1;
    for (int j = 0; j < n; ++j) total *= m;
    const double w = 1.0 / static_cast<double>(total);
    for (long long code = 0; code < total; ++code) {
        std::vector<Complex> z(static_cast<size_t>(n));
        long long c = code;
        for (int j = 0; j < n; ++j, c /= m) z[static_cast<size_t>(j)] = roots[static_cast<size_t>(c % m)];
        rule.nodes.push_back(std::move(z));
        rule.weights.push_back(w);
    }
    return rule;
}

ProductRule sphere_rule(int n_phi, int m) {
    if (n_phi < 1 || m < 1) throw InvalidInput("sphere rule needs positive sizes");
    const auto [x, wx] = gauss_legendre(n_phi);
    ProductRule rule;
    const double half = std::numbers::pi / 4.0;
    for (size_t p = 0; p < x.size(); ++p) {
        const double phi = half * (x[p] + 1.0);
        // |z_1|^2 = cos^2 phi is uniform on [0, 1] under sigma.
        const double wp = wx[p] * half * std::sin(2.0 * phi) / (static_cast<double>(m) * m);
        for (int s = 0; s < m; ++s)
            for (int t = 0; t < m; ++t) {
                rule.nodes.push_back({std::polar(std::cos(phi), 2.0 * std::numbers::pi * s / m),
                                      std::polar(std::sin(phi), 2.0 * std::numbers::pi * t / m)});
                rule.weights.push_back(wp);
            }
    }
    return rule;
}

std::vector<std::vector<Complex>> sphere_samples(int n_points, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<std::vector<Complex>> out;
    out.reserve(static_cast<size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        Complex a(g(rng), g(rng));
        Complex b(g(rng), g(rng));
        const double r = std::sqrt(std::norm(a) + std::norm(b));
        out.push_back({a / r, b / r});
    }
    return out;
}

double sphere_l2_norm_squared(const SparsePolyND& p) {
    if (p.dim() != 2) throw InvalidInput("sphere norms need a polynomial in two variables");
    double acc = 0.0;
    for (const auto& [a, c] : p.terms())
        acc += std::norm(c) *
               std::exp(std::lgamma(a[0] + 1.0) + std::lgamma(a[1] + 1.0) - std::lgamma(a[0] + a[1] + 2.0));
    return acc;
}

MeanEstimate sphere_log_mean(const SparsePolyND& p, int n_points, std::uint64_t seed) {
    if (p.dim() != 2) throw InvalidInput("sphere integrals need a polynomial in two variables");
    if (n_points < 2) throw InvalidInput("Monte-Carlo estimate needs at least two points");
    double sum = 0.0;
    double sum2 = 0.0;
    for (const auto& z : sphere_samples(n_points, seed)) {
        const double v = 2.0 * log_abs(p(z));
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / n_points;
    const double var = std::max(0.0, (sum2 - n_points * mean * mean) / (n_points - 1));
    return {mean, std::sqrt(var / n_points)};
}

double rule_mahler(const SparsePolyND& p, const ProductRule& rule) {
    double acc = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * log_abs(p(rule.nodes[i]));
    return std::exp(acc);
}

double torus_mahler(const SparsePolyND& p, int m) {
    if (p.is_zero()) throw InvalidInput("Mahler measure of the zero polynomial");
    if (m < 1) throw InvalidInput("torus rule needs m >= 1");
    const int n = p.dim();
    const auto circle = CompactSet1D::unit_circle();
    const int deg1 = p.degree_in(0);
    long long total = 1;
    for (int j = 1; j < n; ++j) total *= m;
    std::vector<Complex> roots(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) roots[static_cast<size_t>(i)] = std::polar(1.0, 2.0 * std::numbers::pi * i / m);
    double acc = 0.0;
    ComplexCoeffs slice(static_cast<size_t>(deg1 + 1));
    std::vector<int> digit(static_cast<size_t>(n), 0);
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int j = 1; j < n; ++j, c /= m) digit[static_cast<size_t>(j)] = static_cast<int>(c % m);
        std::fill(slice.begin(), slice.end(), Complex(0.0));
        for (const auto& [a, coef] : p.terms()) {
            Complex v = coef;
            for (int j = 1; j < n; ++j)
                v *= roots[static_cast<size_t>((static_cast<long long>(a[static_cast<size_t>(j)]) * digit[static_cast<size_t>(j)]) % m)];
            slice[static_cast<size_t>(a[0])] += v;
        }
        bool zero = true;
        for (Complex v : slice) zero = zero && v == Complex(0.0);
        acc += zero ? kLogFloor : std::log(mahler_1d(slice, circle).value);
    }
    return std::exp(acc / static_cast<double>(total));
}

}  // namespace widom
