#include "widom/productnd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "widom/errors.hpp"
#include "widom/mahler.hpp"
#include "widom/minimax.hpp"

namespace widom {

namespace {

std::int64_t binom64(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Number of multi-indices in n variables with total degree exactly d.
std::int64_t compositions(std::int64_t d, int n) {
    if (n == 0) return d == 0 ? 1 : 0;
    return binom64(d + n - 1, n - 1);
}

// Number of multi-indices with total degree < d.
std::int64_t below_degree(std::int64_t d, int n) { return d <= 0 ? 0 : binom64(d - 1 + n, n); }

}  // namespace

int total_degree(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

bool order_precedes(const MultiIndex& b, const MultiIndex& a) {
    const int db = total_degree(b);
    const int da = total_degree(a);
    if (db != da) return db < da;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiIndex order_index(std::int64_t i, int n) {
    if (n < 1) throw InvalidInput("order_index: dimension must be >= 1");
    if (i < 0) throw InvalidInput("order_index: index must be >= 0");
    std::int64_t d = 0;
    while (below_degree(d + 1, n) <= i) ++d;
    std::int64_t r = i - below_degree(d, n);
    MultiIndex a(static_cast<size_t>(n), 0);
    std::int64_t left = d;
    for (int k = 0; k + 1 < n; ++k) {
        for (std::int64_t v = left; v >= 0; --v) {
            const std::int64_t cnt = compositions(left - v, n - k - 1);
            if (r < cnt) {
                a[static_cast<size_t>(k)] = static_cast<int>(v);
                left -= v;
                break;
            }
            r -= cnt;
        }
    }
    a[static_cast<size_t>(n - 1)] = static_cast<int>(left);
    return a;
}

std::int64_t order_rank(const MultiIndex& a) {
    const int n = static_cast<int>(a.size());
    if (n < 1) throw InvalidInput("order_rank: empty multi-index");
    for (int v : a)
        if (v < 0) throw InvalidInput("order_rank: negative component");
    const std::int64_t d = total_degree(a);
    std::int64_t r = below_degree(d, n);
    std::int64_t left = d;
    for (int k = 0; k + 1 < n; ++k) {
        for (std::int64_t v = left; v > a[static_cast<size_t>(k)]; --v) r += compositions(left - v, n - k - 1);
        left -= a[static_cast<size_t>(k)];
    }
    return r;
}

std::vector<MultiIndex> indices_up_to(int n, int d) {
    std::vector<MultiIndex> out;
    const std::int64_t count = below_degree(d + 1, n);
    out.reserve(static_cast<size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) out.push_back(order_index(i, n));
    return out;
}

// ---------------------------------------------------------------------------
// SparsePolyND

SparsePolyND SparsePolyND::monomial(const MultiIndex& a, Complex c) {
    SparsePolyND p(static_cast<int>(a.size()));
    p.add(a, c);
    return p;
}

SparsePolyND SparsePolyND::tensor(const std::vector<ComplexCoeffs>& factors) {
    const int n = static_cast<int>(factors.size());
    SparsePolyND p(n);
    MultiIndex idx(static_cast<size_t>(n), 0);
    std::function<void(int, Complex)> rec = [&](int j, Complex c) {
        if (j == n) {
            p.add(idx, c);
            return;
        }
        const auto& f = factors[static_cast<size_t>(j)];
        for (size_t k = 0; k < f.size(); ++k) {
            if (f[k] == 0.0) continue;
            idx[static_cast<size_t>(j)] = static_cast<int>(k);
            rec(j + 1, c * f[k]);
        }
    };
    rec(0, 1.0);
    return p;
}

Complex SparsePolyND::coeff(const MultiIndex& a) const {
    const auto it = terms_.find(a);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

const MultiIndex& SparsePolyND::leading_index() const {
    if (terms_.empty()) throw InvalidInput("zero polynomial has no leading term");
    return terms_.rbegin()->first;
}

int SparsePolyND::total_degree() const { return terms_.empty() ? -1 : widom::total_degree(leading_index()); }

int SparsePolyND::degree_in(int j) const {
    int d = -1;
    for (const auto& [a, c] : terms_) d = std::max(d, a[static_cast<size_t>(j)]);
    return d;
}

void SparsePolyND::add(const MultiIndex& a, Complex c) {
    if (static_cast<int>(a.size()) != n_) throw InvalidInput("multi-index dimension mismatch");
    if (c == 0.0) return;
    auto [it, inserted] = terms_.emplace(a, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

Complex SparsePolyND::operator()(std::span<const Complex> z) const {
    Complex acc = 0.0;
    for (const auto& [a, c] : terms_) {
        Complex t = c;
        for (int j = 0; j < n_; ++j) t *= std::pow(z[static_cast<size_t>(j)], a[static_cast<size_t>(j)]);
        acc += t;
    }
    return acc;
}

double SparsePolyND::eval_real(std::span<const double> x) const {
    double acc = 0.0;
    for (const auto& [a, c] : terms_) {
        double t = c.real();
        for (int j = 0; j < n_; ++j)
            for (int e = 0; e < a[static_cast<size_t>(j)]; ++e) t *= x[static_cast<size_t>(j)];
        acc += t;
    }
    return acc;
}

SparsePolyND operator*(const SparsePolyND& p, const SparsePolyND& q) {
    if (p.n_ != q.n_) throw InvalidInput("polynomial dimension mismatch");
    SparsePolyND r(p.n_);
    for (const auto& [a, c] : p.terms_) {
        for (const auto& [b, d] : q.terms_) {
            MultiIndex s(a.size());
            for (size_t j = 0; j < a.size(); ++j) s[j] = a[j] + b[j];
            r.add(s, c * d);
        }
    }
    return r;
}

SparsePolyND operator+(const SparsePolyND& p, const SparsePolyND& q) {
    if (p.n_ != q.n_) throw InvalidInput("polynomial dimension mismatch");
    SparsePolyND r = p;
    for (const auto& [b, d] : q.terms_) r.add(b, d);
    return r;
}

SparsePolyND operator*(Complex s, const SparsePolyND& p) {
    SparsePolyND r(p.n_);
    for (const auto& [a, c] : p.terms_) r.add(a, s * c);
    return r;
}

// ---------------------------------------------------------------------------
// Product sets and weights

bool ProductSet::all_real() const {
    return std::all_of(factors.begin(), factors.end(), [](const CompactSet1D& s) { return s.is_real(); });
}

bool ProductSet::all_circles() const {
    return std::all_of(factors.begin(), factors.end(), [](const CompactSet1D& s) { return s.is_circle(); });
}

ProductWeight ProductWeight::unit(int n) {
    return ProductWeight{std::vector<Weight1D>(static_cast<size_t>(n), Weight1D::constant(1.0))};
}

bool ProductWeight::is_unit() const {
    return std::all_of(factors.begin(), factors.end(), [](const Weight1D& w) { return w.is_unit(); });
}

double ProductWeight::operator()(std::span<const Complex> z) const {
    double v = 1.0;
    for (size_t j = 0; j < factors.size(); ++j) v *= factors[j](z[j]);
    return v;
}

namespace {

void check_dims(const ProductSet& k, const ProductWeight& w, const MultiIndex& a) {
    if (k.dim() < 1) throw InvalidInput("product set needs at least one factor");
    if (w.dim() != k.dim()) throw InvalidInput("weight and set dimensions differ");
    if (static_cast<int>(a.size()) != k.dim()) throw InvalidInput("multi-index and set dimensions differ");
    for (int v : a)
        if (v < 0) throw InvalidInput("multi-index components must be nonnegative");
}

void check_szego(const ProductSet& k, const ProductWeight& w) {
    for (int j = 0; j < k.dim(); ++j) {
        const double s = szego_value(k.factors[static_cast<size_t>(j)], w.factors[static_cast<size_t>(j)]);
        if (!(s > 1e-300) || !std::isfinite(s))
            throw SzegoFailure("Szego condition fails on factor " + std::to_string(j + 1));
    }
}

}  // namespace

double tau_minus_product(const ProductSet& k) {
    if (k.factors.empty()) throw InvalidInput("product set needs at least one factor");
    double t = std::numeric_limits<double>::infinity();
    for (const auto& f : k.factors) t = std::min(t, capacity(f));
    return t;
}

double szego_product(const ProductSet& k, const ProductWeight& w) {
    if (w.dim() != k.dim()) throw InvalidInput("weight and set dimensions differ");
    double s = 1.0;
    for (int j = 0; j < k.dim(); ++j) s *= szego_value(k.factors[static_cast<size_t>(j)], w.factors[static_cast<size_t>(j)]);
    return s;
}

ProductOrthogonal product_orthogonal(const ProductSet& k, const ProductWeight& w, const MultiIndex& a) {
    check_dims(k, w, a);
    check_szego(k, w);
    ProductOrthogonal out;
    out.norm = 1.0;
    std::vector<ComplexCoeffs> factors;
    for (int j = 0; j < k.dim(); ++j) {
        const int aj = a[static_cast<size_t>(j)];
        const auto basis = monic_orthogonal(k.factors[static_cast<size_t>(j)], w.factors[static_cast<size_t>(j)], aj);
        out.norm *= basis.monic_norms[static_cast<size_t>(aj)];
        factors.push_back(basis.polys[static_cast<size_t>(aj)]);
    }
    out.poly = SparsePolyND::tensor(factors);
    return out;
}

ProductChebyshev product_chebyshev(const ProductSet& k, const ProductWeight& w, const MultiIndex& a,
                                   const ChebyshevOptions& opt) {
    check_dims(k, w, a);
    if (!k.all_real() && !k.all_circles())
        throw Unsupported("product Chebyshev polynomials need all factors real or all factors circles");
    ProductChebyshev out;
    out.norm = 1.0;
    std::vector<ComplexCoeffs> factors;
    for (int j = 0; j < k.dim(); ++j) {
        auto sol = weighted_chebyshev(k.factors[static_cast<size_t>(j)], w.factors[static_cast<size_t>(j)],
                                      a[static_cast<size_t>(j)], opt);
        out.norm *= sol.norm;
        factors.push_back(sol.coeffs);
        out.factors.push_back(std::move(sol));
    }
    out.poly = SparsePolyND::tensor(factors);
    return out;
}

double widom_l2_nd(const ProductSet& k, const ProductWeight& w, const MultiIndex& a) {
    return product_orthogonal(k, w, a).norm / std::pow(tau_minus_product(k), total_degree(a));
}

double widom_sup_nd(const ProductSet& k, const ProductWeight& w, const MultiIndex& a) {
    return product_chebyshev(k, w, a).norm / std::pow(tau_minus_product(k), total_degree(a));
}

double l2_norm_squared(const SparsePolyND& p, const ProductSet& k, const ProductWeight& w, int n_nodes) {
    if (p.dim() != k.dim() || w.dim() != k.dim()) throw InvalidInput("dimension mismatch");
    const int n = k.dim();
    std::vector<QuadratureMeasure> mus;
    for (int j = 0; j < n; ++j)
        mus.push_back(weighted_measure(k.factors[static_cast<size_t>(j)], w.factors[static_cast<size_t>(j)], n_nodes));
    std::vector<Complex> z(static_cast<size_t>(n));
    double acc = 0.0;
    std::function<void(int, double)> rec = [&](int j, double wt) {
        if (j == n) {
            acc += wt * std::norm(p(z));
            return;
        }
        const auto& mu = mus[static_cast<size_t>(j)];
        for (size_t i = 0; i < mu.nodes.size(); ++i) {
            z[static_cast<size_t>(j)] = mu.nodes[i];
            rec(j + 1, wt * mu.weights[i]);
        }
    };
    rec(0, 1.0);
    return acc;
}

double jensen_lower_bound(const SparsePolyND& p, const ProductSet& k, const ProductWeight& w) {
    if (p.is_zero()) throw InvalidInput("Jensen bound: zero polynomial");
    const double s = szego_product(k, w);
    if (!(s > 0.0)) throw SzegoFailure("Jensen bound needs S(K, w) > 0");
    const double m = mahler_nd(p, k).value;
    return s * m * m;
}

// ---------------------------------------------------------------------------
// Brute-force oracles

namespace {

struct AxisGrid {
    std::vector<double> x;
    std::vector<int> part;  // index of the interval containing x
    double mid = 0.0;
    double half = 1.0;
};

}  // namespace

BruteForceResult bruteforce_chebyshev_nd(const ProductSet& k, const ProductWeight& w, const MultiIndex& a,
                                         int grid_density) {
    check_dims(k, w, a);
    const int n = k.dim();
    const int d = total_degree(a);
    if (n > 3 || d > 6) throw ScaleLimit("brute-force minimax is limited to n <= 3 and total degree <= 6");
    if (!k.all_real()) throw Unsupported("brute-force minimax needs real factors");
    if (grid_density <= 0) grid_density = n == 1 ? 400 : (n == 2 ? 41 : 15);

    std::vector<Weight1D> hat;
    std::vector<AxisGrid> axes;
    for (int j = 0; j < n; ++j) {
        const auto& set = k.factors[static_cast<size_t>(j)];
        hat.push_back(usc_regularize(w.factors[static_cast<size_t>(j)], set));
        AxisGrid g;
        g.x = chebyshev_grid(set, grid_density, hat.back().special_points());
        for (double x : g.x) {
            int pi = 0;
            for (size_t q = 0; q < set.parts().size(); ++q)
                if (x >= set.parts()[q].lo && x <= set.parts()[q].hi) pi = static_cast<int>(q);
            g.part.push_back(pi);
        }
        g.mid = 0.5 * (set.parts().front().lo + set.parts().back().hi);
        g.half = 0.5 * (set.parts().back().hi - set.parts().front().lo);
        axes.push_back(std::move(g));
    }

    // Basis: products of Chebyshev polynomials in the hull variables for all
    // beta preceding alpha; same span as the monomials because that index set
    // is closed under decreasing any component.
    const std::int64_t rank = order_rank(a);
    std::vector<MultiIndex> lower;
    for (std::int64_t i = 0; i < rank; ++i) lower.push_back(order_index(i, n));
    // x^alpha = prod half^a_j 2^{1-a_j} T_alpha(u) + lower terms.
    double scale = 1.0;
    for (int j = 0; j < n; ++j) {
        const int aj = a[static_cast<size_t>(j)];
        scale *= std::pow(axes[static_cast<size_t>(j)].half, aj) * (aj > 0 ? std::pow(2.0, 1 - aj) : 1.0);
    }

    auto basis_row = [&](const std::vector<double>& x, double wx, double* row, double& target) {
        std::vector<std::vector<double>> tv(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            const double u = (x[static_cast<size_t>(j)] - axes[static_cast<size_t>(j)].mid) / axes[static_cast<size_t>(j)].half;
            auto& t = tv[static_cast<size_t>(j)];
            t.resize(static_cast<size_t>(d) + 1);
            t[0] = 1.0;
            if (d >= 1) t[1] = u;
            for (int q = 2; q <= d; ++q) t[static_cast<size_t>(q)] = 2.0 * u * t[static_cast<size_t>(q - 1)] - t[static_cast<size_t>(q - 2)];
        }
        for (size_t b = 0; b < lower.size(); ++b) {
            double v = wx;
            for (int j = 0; j < n; ++j) v *= tv[static_cast<size_t>(j)][static_cast<size_t>(lower[b][static_cast<size_t>(j)])];
            row[b] = v;
        }
        target = wx;
        for (int j = 0; j < n; ++j) target *= tv[static_cast<size_t>(j)][static_cast<size_t>(a[static_cast<size_t>(j)])];
    };
    auto weight_at = [&](const std::vector<double>& x) {
        double v = 1.0;
        for (int j = 0; j < n; ++j) v *= hat[static_cast<size_t>(j)](x[static_cast<size_t>(j)]);
        return v;
    };

    std::vector<std::vector<double>> pts;
    std::vector<std::vector<int>> grid_idx;
    {
        std::vector<int> idx(static_cast<size_t>(n), 0);
        std::function<void(int)> rec = [&](int j) {
            if (j == n) {
                std::vector<double> x(static_cast<size_t>(n));
                for (int q = 0; q < n; ++q) x[static_cast<size_t>(q)] = axes[static_cast<size_t>(q)].x[static_cast<size_t>(idx[static_cast<size_t>(q)])];
                pts.push_back(std::move(x));
                grid_idx.push_back(idx);
                return;
            }
            for (size_t i = 0; i < axes[static_cast<size_t>(j)].x.size(); ++i) {
                idx[static_cast<size_t>(j)] = static_cast<int>(i);
                rec(j + 1);
            }
        };
        rec(0);
    }
    const size_t grid_count = pts.size();

    BruteForceResult out;
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lower.size()));
    std::vector<double> row(lower.size());
    auto residual = [&](const std::vector<double>& x) {
        const double wx = weight_at(x);
        if (wx == 0.0) return 0.0;
        double target = 0.0;
        basis_row(x, wx, row.data(), target);
        double s = target;
        for (size_t b = 0; b < lower.size(); ++b) s -= coeffs(static_cast<Eigen::Index>(b)) * row[b];
        return s;
    };

    for (int round = 0; round < 40; ++round) {
        out.rounds = round + 1;
        const auto np = static_cast<Eigen::Index>(pts.size());
        if (lower.empty()) {
            double m = 0.0;
            for (const auto& x : pts) m = std::max(m, std::abs(residual(x)));
            out.level = m;
        } else {
            Eigen::MatrixXd am(np, static_cast<Eigen::Index>(lower.size()));
            Eigen::VectorXd f(np);
            for (Eigen::Index i = 0; i < np; ++i) {
                double target = 0.0;
                basis_row(pts[static_cast<size_t>(i)], weight_at(pts[static_cast<size_t>(i)]), row.data(), target);
                for (size_t b = 0; b < lower.size(); ++b) am(i, static_cast<Eigen::Index>(b)) = row[b];
                f(i) = target;
            }
            const auto lp = discrete_minimax(am, f);
            coeffs = lp.coeffs;
            out.level = lp.level;
        }

        // Coordinate-wise golden-section ascent from discrete local maxima.
        std::vector<double> vals(grid_count);
        for (size_t i = 0; i < grid_count; ++i) vals[i] = std::abs(residual(pts[i]));
        double upper = *std::max_element(vals.begin(), vals.end());
        for (size_t i = grid_count; i < pts.size(); ++i) upper = std::max(upper, std::abs(residual(pts[i])));
        std::vector<std::vector<double>> added;
        std::vector<int> stride(static_cast<size_t>(n), 1);
        for (int j = n - 2; j >= 0; --j)
            stride[static_cast<size_t>(j)] = stride[static_cast<size_t>(j + 1)] * static_cast<int>(axes[static_cast<size_t>(j + 1)].x.size());
        for (size_t i = 0; i < grid_count; ++i) {
            if (vals[i] < 0.5 * out.level || vals[i] == 0.0) continue;
            bool local = true;
            for (int j = 0; j < n && local; ++j) {
                const auto& ax = axes[static_cast<size_t>(j)];
                const int gi = grid_idx[i][static_cast<size_t>(j)];
                for (int s : {-1, 1}) {
                    const int nb = gi + s;
                    if (nb < 0 || nb >= static_cast<int>(ax.x.size()) || ax.part[static_cast<size_t>(nb)] != ax.part[static_cast<size_t>(gi)]) continue;
                    if (vals[i + static_cast<size_t>(s * stride[static_cast<size_t>(j)])] > vals[i]) local = false;
                }
            }
            if (!local) continue;
            std::vector<double> x = pts[i];
            double best = vals[i];
            for (int sweep = 0; sweep < 4; ++sweep) {
                for (int j = 0; j < n; ++j) {
                    const auto& ax = axes[static_cast<size_t>(j)];
                    const int gi = grid_idx[i][static_cast<size_t>(j)];
                    const int lo_i = (gi > 0 && ax.part[static_cast<size_t>(gi - 1)] == ax.part[static_cast<size_t>(gi)]) ? gi - 1 : gi;
                    const int hi_i = (gi + 1 < static_cast<int>(ax.x.size()) && ax.part[static_cast<size_t>(gi + 1)] == ax.part[static_cast<size_t>(gi)]) ? gi + 1 : gi;
                    double lo = ax.x[static_cast<size_t>(lo_i)];
                    double hi = ax.x[static_cast<size_t>(hi_i)];
                    if (!(hi > lo)) continue;
                    auto f1 = [&](double t) {
                        std::vector<double> y = x;
                        y[static_cast<size_t>(j)] = t;
                        return std::abs(residual(y));
                    };
                    constexpr double g = 0.6180339887498949;
                    double c = hi - g * (hi - lo);
                    double dd = lo + g * (hi - lo);
                    double fc = f1(c);
                    double fd = f1(dd);
                    for (int it = 0; it < 70; ++it) {
                        if (fc > fd) {
                            hi = dd;
                            dd = c;
                            fd = fc;
                            c = hi - g * (hi - lo);
                            fc = f1(c);
                        } else {
                            lo = c;
                            c = dd;
                            fc = fd;
                            dd = lo + g * (hi - lo);
                            fd = f1(dd);
                        }
                    }
                    const double t = fc > fd ? c : dd;
                    const double ft = std::max(fc, fd);
                    if (ft > best) {
                        best = ft;
                        x[static_cast<size_t>(j)] = t;
                    }
                }
            }
            upper = std::max(upper, best);
            if (best > out.level * (1.0 + 1e-10)) added.push_back(x);
        }
        out.upper = upper;
        if (added.empty() || lower.empty()) break;
        pts.insert(pts.end(), added.begin(), added.end());
    }
    out.level *= scale;
    out.upper *= scale;
    out.points = static_cast<int>(pts.size());
    return out;
}

std::vector<double> bruteforce_gram_schmidt_nd(const ProductSet& k, const ProductWeight& w, int up_to_rank,
                                               int n_nodes) {
    if (w.dim() != k.dim()) throw InvalidInput("weight and set dimensions differ");
    if (up_to_rank < 0) throw InvalidInput("rank must be nonnegative");
    const int n = k.dim();
    std::vector<MultiIndex> idx;
    int maxdeg = 0;
    for (int i = 0; i <= up_to_rank; ++i) {
        idx.push_back(order_index(i, n));
        for (int v : idx.back()) maxdeg = std::max(maxdeg, v);
    }
    // Per-factor moments m_j(p, q) = int z^p conj(z)^q w_j d mu_j.
    std::vector<Eigen::MatrixXcd> mom;
    for (int j = 0; j < n; ++j) {
        const auto mu = weighted_measure(k.factors[static_cast<size_t>(j)], w.factors[static_cast<size_t>(j)], n_nodes);
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(maxdeg + 1, maxdeg + 1);
        for (size_t i = 0; i < mu.nodes.size(); ++i) {
            std::vector<Complex> pw(static_cast<size_t>(maxdeg) + 1, 1.0);
            for (int p = 1; p <= maxdeg; ++p) pw[static_cast<size_t>(p)] = pw[static_cast<size_t>(p - 1)] * mu.nodes[i];
            for (int p = 0; p <= maxdeg; ++p)
                for (int q = 0; q <= maxdeg; ++q) m(p, q) += mu.weights[i] * pw[static_cast<size_t>(p)] * std::conj(pw[static_cast<size_t>(q)]);
        }
        mom.push_back(std::move(m));
    }
    const auto r = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd g(r, r);
    for (Eigen::Index a = 0; a < r; ++a)
        for (Eigen::Index b = 0; b < r; ++b) {
            Complex v = 1.0;
            for (int j = 0; j < n; ++j) v *= mom[static_cast<size_t>(j)](idx[static_cast<size_t>(a)][static_cast<size_t>(j)], idx[static_cast<size_t>(b)][static_cast<size_t>(j)]);
            g(a, b) = v;
        }
    // G = L L^*: ||e_k - proj_{<k} e_k|| = L_kk.
    Eigen::LLT<Eigen::MatrixXcd> llt(g);
    if (llt.info() != Eigen::Success) throw ResolutionError("Gram matrix is not positive definite at this rank");
    const Eigen::MatrixXcd l = llt.matrixL();
    std::vector<double> out;
    for (Eigen::Index a = 0; a < r; ++a) out.push_back(l(a, a).real());
    return out;
}

bool theorem_tau_check(const ProductSet& k, const MultiIndex& a) {
    const double norm = product_chebyshev(k, ProductWeight::unit(k.dim()), a).norm;
    return norm >= std::pow(tau_minus_product(k), total_degree(a)) - 1e-8;
}

std::string to_string(EqualityFlag f) {
    switch (f) {
        case EqualityFlag::ZeroIndex: return "zero";
        case EqualityFlag::InverseImage: return "inverse-image";
        case EqualityFlag::Unknown: return "unknown";
        case EqualityFlag::None: return "none";
        case EqualityFlag::NotReal: return "not-real";
    }
    return "none";
}

std::vector<EqualityFlag> equality_case_flags(const ProductSet& k, const MultiIndex& a) {
    if (static_cast<int>(a.size()) != k.dim()) throw InvalidInput("multi-index and set dimensions differ");
    std::vector<EqualityFlag> out;
    for (int j = 0; j < k.dim(); ++j) {
        const auto& s = k.factors[static_cast<size_t>(j)];
        const int aj = a[static_cast<size_t>(j)];
        if (aj == 0) out.push_back(EqualityFlag::ZeroIndex);
        else if (!s.is_real()) out.push_back(EqualityFlag::NotReal);
        else if (s.kind() == CompactSet1D::Kind::Preimage && s.is_full_preimage() && s.generator().degree() == aj)
            out.push_back(EqualityFlag::InverseImage);
        else {
            const double ratio = weighted_chebyshev(s, Weight1D::constant(1.0), aj).norm / (2.0 * std::pow(capacity(s), aj));
            out.push_back(std::abs(ratio - 1.0) <= 1e-6 ? EqualityFlag::Unknown : EqualityFlag::None);
        }
    }
    return out;
}

bool WidomReport::bounds_hold(double tol) const {
    bool ok = w2sq() >= bounds.universal_l2 - tol;
    if (winf) ok = ok && *winf >= bounds.universal_sup - tol;
    if (bounds.doubling_l2) ok = ok && w2sq() >= *bounds.doubling_l2 - tol;
    if (bounds.doubling_sup && winf) ok = ok && *winf >= *bounds.doubling_sup - tol;
    return ok;
}

WidomReport widom_report(const ProductSet& k, const ProductWeight& w, const MultiIndex& a) {
    check_dims(k, w, a);
    WidomReport r;
    r.alpha = a;
    r.tau_minus = tau_minus_product(k);
    const int d = total_degree(a);
    r.szego = szego_product(k, w);
    r.w2 = product_orthogonal(k, w, a).norm / std::pow(r.tau_minus, d);
    bool sup_ok = k.all_real();
    if (k.all_circles())
        sup_ok = std::all_of(w.factors.begin(), w.factors.end(), [](const Weight1D& f) { return f.is_constant(); });
    if (sup_ok) {
        bool bounded = std::all_of(w.factors.begin(), w.factors.end(), [](const Weight1D& f) { return f.bounded(); });
        if (bounded) r.winf = product_chebyshev(k, w, a).norm / std::pow(r.tau_minus, d);
    }
    r.bounds.universal_l2 = r.szego;
    r.bounds.universal_sup = r.szego;
    if (k.all_real() && w.is_unit()) {
        double dl2 = 1.0;
        double dsup = 1.0;
        for (int j = 0; j < k.dim(); ++j) {
            const int aj = a[static_cast<size_t>(j)];
            const double cj = aj > 0 ? 2.0 : 1.0;
            const double cap = capacity(k.factors[static_cast<size_t>(j)]);
            dl2 *= cj * std::pow(cap / r.tau_minus, 2 * aj);
            dsup *= cj * std::pow(cap / r.tau_minus, aj);
        }
        r.bounds.doubling_l2 = dl2;
        r.bounds.doubling_sup = dsup;
        r.flags = equality_case_flags(k, a);
    } else {
        for (int j = 0; j < k.dim(); ++j)
            r.flags.push_back(a[static_cast<size_t>(j)] == 0 ? EqualityFlag::ZeroIndex
                                                              : (k.factors[static_cast<size_t>(j)].is_real() ? EqualityFlag::None : EqualityFlag::NotReal));
    }
    return r;
}

}  // namespace widom
