#include "widom/extremal1d.hpp"

#include <algorithm>
#include <cmath>

#include "widom/errors.hpp"
#include "widom/minimax.hpp"

namespace widom {

namespace {

constexpr double kGolden = 0.6180339887498949;

// Values T_0(u)..T_{n}(u).
void chebyshev_values(double u, int n, double* out) {
    out[0] = 1.0;
    if (n >= 1) out[1] = u;
    for (int j = 2; j <= n; ++j) out[j] = 2.0 * u * out[j - 1] - out[j - 2];
}

// Maximizer of f on [lo, hi] by golden-section search, assuming one hump.
double golden_max(const std::function<double(double)>& f, double lo, double hi, double& best) {
    double a = lo;
    double b = hi;
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 80 && (b - a) > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = f(d);
        }
    }
    const double x = fc > fd ? c : d;
    best = std::max(fc, fd);
    return x;
}

ComplexCoeffs to_complex(const RealPolynomial& p) {
    return ComplexCoeffs(p.coeffs().begin(), p.coeffs().end());
}

// Coefficients of q(alpha x + beta) from those of q(u).
ComplexCoeffs compose_affine(const ComplexCoeffs& q, Complex alpha, Complex beta) {
    ComplexCoeffs out{0.0};
    for (auto it = q.rbegin(); it != q.rend(); ++it) {
        ComplexCoeffs next(out.size() + 1, 0.0);
        for (size_t k = 0; k < out.size(); ++k) {
            next[k + 1] += alpha * out[k];
            next[k] += beta * out[k];
        }
        next[0] += *it;
        out = std::move(next);
    }
    while (out.size() > 1 && out.back() == 0.0) out.pop_back();
    return out;
}

ChebyshevSolution circle_chebyshev(const CompactSet1D& set, const Weight1D& w, int n) {
    if (!w.is_constant())
        throw Unsupported("weighted Chebyshev polynomials on circles are available for constant weights only");
    const double cw = w(set.center() + set.radius());
    ChebyshevSolution sol;
    // (z - c)^n
    ComplexCoeffs c{1.0};
    for (int k = 0; k < n; ++k) {
        ComplexCoeffs next(c.size() + 1, 0.0);
        for (size_t j = 0; j < c.size(); ++j) {
            next[j + 1] += c[j];
            next[j] -= set.center() * c[j];
        }
        c = std::move(next);
    }
    sol.coeffs = c;
    if (set.center().imag() == 0.0) {
        std::vector<double> re;
        for (const auto& v : c) re.push_back(v.real());
        sol.poly = RealPolynomial(re);
    }
    sol.norm = cw * std::pow(set.radius(), n);
    return sol;
}

}  // namespace

ChebyshevSolution weighted_chebyshev(const CompactSet1D& set, const Weight1D& w, int n, const ChebyshevOptions& opt) {
    if (n < 0) throw InvalidInput("weighted_chebyshev: degree must be nonnegative");
    if (set.is_circle()) return circle_chebyshev(set, w, n);

    const Weight1D hat = w.is_regularized() ? w : usc_regularize(w, set);
    const auto special = hat.special_points();
    std::vector<double> grid = chebyshev_grid(set, opt.grid_per_interval, special);
    if (static_cast<int>(grid.size()) <= n + 1) throw ResolutionError("weighted_chebyshev: grid too coarse for degree");

    const double lo = set.parts().front().lo;
    const double hi = set.parts().back().hi;
    const double alpha = 2.0 / (hi - lo);
    const double beta = -(hi + lo) / (hi - lo);

    auto part_of = [&](double x) {
        const auto& parts = set.parts();
        for (size_t k = 0; k < parts.size(); ++k)
            if (x >= parts[k].lo && x <= parts[k].hi) return static_cast<int>(k);
        return -1;
    };

    // Q(u) = T_n(u) - sum_j d_j T_j(u); stored as Chebyshev coefficients.
    std::vector<double> q(static_cast<size_t>(n) + 1, 0.0);
    q[static_cast<size_t>(n)] = 1.0;
    std::vector<double> tv(static_cast<size_t>(n) + 1);
    auto q_at = [&](double x) {
        chebyshev_values(alpha * x + beta, n, tv.data());
        double s = 0.0;
        for (int j = 0; j <= n; ++j) s += q[static_cast<size_t>(j)] * tv[static_cast<size_t>(j)];
        return s;
    };
    auto err = [&](double x) {
        const double wx = hat(x);
        return wx == 0.0 ? 0.0 : wx * std::abs(q_at(x));
    };

    std::vector<double> pts = grid;
    double level = 0.0;
    double sup = 0.0;
    ChebyshevSolution sol;
    for (int round = 0; round < opt.max_rounds; ++round) {
        sol.exchange_rounds = round + 1;
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        const auto np = static_cast<Eigen::Index>(pts.size());
        Eigen::VectorXd wv(np);
        for (Eigen::Index i = 0; i < np; ++i) wv(i) = hat(pts[static_cast<size_t>(i)]);
        if (wv.maxCoeff() <= 0.0) throw NonPolarError("weight vanishes identically on the set");

        if (n > 0) {
            Eigen::MatrixXd a(np, n);
            Eigen::VectorXd f(np);
            for (Eigen::Index i = 0; i < np; ++i) {
                chebyshev_values(alpha * pts[static_cast<size_t>(i)] + beta, n, tv.data());
                for (int j = 0; j < n; ++j) a(i, j) = wv(i) * tv[static_cast<size_t>(j)];
                f(i) = wv(i) * tv[static_cast<size_t>(n)];
            }
            const auto lp = discrete_minimax(a, f);
            for (int j = 0; j < n; ++j) q[static_cast<size_t>(j)] = -lp.coeffs(j);
            level = lp.level;
        }

        // Continuous maxima near discrete local maxima.
        std::vector<double> vals(pts.size());
        for (size_t i = 0; i < pts.size(); ++i) vals[i] = err(pts[i]);
        if (n == 0) level = *std::max_element(vals.begin(), vals.end());
        sup = *std::max_element(vals.begin(), vals.end());
        std::vector<double> added;
        for (size_t i = 0; i < pts.size(); ++i) {
            if (vals[i] < 0.5 * level) continue;
            const int pi = part_of(pts[i]);
            const bool has_l = i > 0 && part_of(pts[i - 1]) == pi;
            const bool has_r = i + 1 < pts.size() && part_of(pts[i + 1]) == pi;
            if ((has_l && vals[i - 1] > vals[i]) || (has_r && vals[i + 1] > vals[i])) continue;
            const double a = has_l ? pts[i - 1] : pts[i];
            const double b = has_r ? pts[i + 1] : pts[i];
            if (!(b > a)) continue;
            double best = 0.0;
            const double x = golden_max(err, a, b, best);
            if (best > vals[i]) {
                sup = std::max(sup, best);
                if (best > level * (1.0 + opt.rel_tol)) added.push_back(x);
            }
        }
        if (added.empty() || n == 0) break;
        pts.insert(pts.end(), added.begin(), added.end());
    }
    sol.norm = std::max(sup, level);

    // Monomial form: Q(u(x)) divided by its leading coefficient.
    ComplexCoeffs tcoef{0.0};
    {
        // Chebyshev series to monomials in u.
        std::vector<std::vector<double>> t{{1.0}, {0.0, 1.0}};
        for (int j = 2; j <= n; ++j) {
            std::vector<double> next(static_cast<size_t>(j) + 1, 0.0);
            for (size_t k = 0; k < t[static_cast<size_t>(j - 1)].size(); ++k) next[k + 1] += 2.0 * t[static_cast<size_t>(j - 1)][k];
            for (size_t k = 0; k < t[static_cast<size_t>(j - 2)].size(); ++k) next[k] -= t[static_cast<size_t>(j - 2)][k];
            t.push_back(std::move(next));
        }
        tcoef.assign(static_cast<size_t>(n) + 1, 0.0);
        for (int j = 0; j <= n; ++j)
            for (size_t k = 0; k < t[static_cast<size_t>(j)].size(); ++k) tcoef[k] += q[static_cast<size_t>(j)] * t[static_cast<size_t>(j)][k];
    }
    ComplexCoeffs px = compose_affine(tcoef, alpha, beta);
    const double lead = px.back().real();
    std::vector<double> re;
    for (const auto& v : px) re.push_back(v.real() / lead);
    re.back() = 1.0;
    sol.poly = RealPolynomial(re);
    sol.coeffs = to_complex(sol.poly);
    sol.norm /= lead;

    // Alternation sequence: one representative per run of equal sign among
    // near-extremal points.
    std::vector<std::pair<double, double>> near;
    for (double x : pts) {
        const double v = hat(x) * q_at(x) / lead;
        if (std::abs(v) >= sol.norm * (1.0 - 1e-6) && v != 0.0) near.emplace_back(x, v);
    }
    std::vector<std::pair<double, double>> runs;
    for (const auto& pv : near) {
        if (!runs.empty() && (runs.back().second > 0) == (pv.second > 0)) {
            if (std::abs(pv.second) > std::abs(runs.back().second)) runs.back() = pv;
        } else {
            runs.push_back(pv);
        }
    }
    for (auto it = runs.rbegin(); it != runs.rend(); ++it) {
        sol.extreme_points.push_back(it->first);
        sol.signs.push_back(it->second > 0 ? 1 : -1);
    }
    return sol;
}

OrthoBasis monic_orthogonal(const CompactSet1D& set, const Weight1D& w, int max_degree, int n_nodes) {
    if (max_degree < 0) throw InvalidInput("monic_orthogonal: degree must be nonnegative");
    if (n_nodes == 0) n_nodes = std::max(kDefaultNodes, 2 * max_degree + 8);
    if (n_nodes < max_degree + 2)
        throw ResolutionError("monic_orthogonal: quadrature cannot integrate degree 2N+2 exactly; raise n_nodes");
    const QuadratureMeasure mu = weighted_measure(set, w, n_nodes);
    const size_t m = mu.nodes.size();
    OrthoBasis out;

    if (set.is_real()) {
        std::vector<double> x(m);
        for (size_t i = 0; i < m; ++i) x[i] = mu.nodes[i].real();
        std::vector<double> prev(m, 0.0);
        std::vector<double> cur(m, 1.0);
        ComplexCoeffs pprev;
        ComplexCoeffs pcur{1.0};
        double prev_norm2 = 0.0;
        for (int k = 0; k <= max_degree; ++k) {
            double n2 = 0.0;
            double xn2 = 0.0;
            for (size_t i = 0; i < m; ++i) {
                n2 += mu.weights[i] * cur[i] * cur[i];
                xn2 += mu.weights[i] * x[i] * cur[i] * cur[i];
            }
            if (!(n2 > 0.0)) throw ResolutionError("monic_orthogonal: discrete measure exhausted before the requested degree");
            out.monic_norms.push_back(std::sqrt(n2));
            out.polys.push_back(pcur);
            if (k > 0) out.a2.push_back(n2 / prev_norm2);
            if (k == max_degree) break;
            const double bk = xn2 / n2;
            out.b.push_back(bk);
            const double ak2 = k > 0 ? out.a2.back() : 0.0;
            std::vector<double> next(m);
            for (size_t i = 0; i < m; ++i) next[i] = (x[i] - bk) * cur[i] - ak2 * prev[i];
            ComplexCoeffs pnext(pcur.size() + 1, 0.0);
            for (size_t j = 0; j < pcur.size(); ++j) {
                pnext[j + 1] += pcur[j];
                pnext[j] -= bk * pcur[j];
            }
            for (size_t j = 0; j < pprev.size(); ++j) pnext[j] -= ak2 * pprev[j];
            prev = std::move(cur);
            cur = std::move(next);
            pprev = std::move(pcur);
            pcur = std::move(pnext);
            prev_norm2 = n2;
        }
        return out;
    }

    // Szego recursion in zeta = (z - c)/r.
    const Complex c = set.center();
    const double r = set.radius();
    std::vector<Complex> zeta(m);
    for (size_t i = 0; i < m; ++i) zeta[i] = (mu.nodes[i] - c) / r;
    std::vector<Complex> phi(m, 1.0);
    std::vector<Complex> phis(m, 1.0);
    ComplexCoeffs coef{1.0};
    for (int k = 0; k <= max_degree; ++k) {
        double n2 = 0.0;
        for (size_t i = 0; i < m; ++i) n2 += mu.weights[i] * std::norm(phi[i]);
        if (!(n2 > 0.0)) throw ResolutionError("monic_orthogonal: discrete measure exhausted before the requested degree");
        out.monic_norms.push_back(std::pow(r, k) * std::sqrt(n2));
        // P_k(z) = r^k Phi_k((z - c)/r)
        ComplexCoeffs scaled = coef;
        for (size_t j = 0; j < scaled.size(); ++j) scaled[j] *= std::pow(r, k - static_cast<int>(j));
        out.polys.push_back(compose_affine(scaled, 1.0, -c));
        if (k == max_degree) break;
        Complex num = 0.0;
        Complex den = 0.0;
        for (size_t i = 0; i < m; ++i) {
            num += mu.weights[i] * zeta[i] * phi[i];
            den += mu.weights[i] * phis[i];
        }
        const Complex gamma = num / den;
        out.verblunsky.push_back(std::conj(gamma));
        for (size_t i = 0; i < m; ++i) {
            const Complex zp = zeta[i] * phi[i];
            phi[i] = zp - gamma * phis[i];
            phis[i] = phis[i] - std::conj(gamma) * zp;
        }
        ComplexCoeffs next(coef.size() + 1, 0.0);
        for (size_t j = 0; j < coef.size(); ++j) {
            next[j + 1] += coef[j];
            next[coef.size() - 1 - j] -= gamma * std::conj(coef[j]);
        }
        coef = std::move(next);
    }
    return out;
}

double widom_l2_1d(const CompactSet1D& set, const Weight1D& w, int i) {
    const auto basis = monic_orthogonal(set, w, i);
    return basis.monic_norms[static_cast<size_t>(i)] / std::pow(capacity(set), i);
}

double widom_sup_1d(const CompactSet1D& set, const Weight1D& w, int i) {
    return weighted_chebyshev(set, w, i).norm / std::pow(capacity(set), i);
}

}  // namespace widom
