#include "widom/mahler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "widom/errors.hpp"

namespace widom {

std::string to_string(MahlerMethod m) {
    switch (m) {
        case MahlerMethod::RootsPotential: return "roots_potential";
        case MahlerMethod::Quadrature: return "quadrature";
        case MahlerMethod::Recursive: return "recursive";
    }
    return "recursive";
}

namespace {

// log|P| is clamped here where P vanishes at a node.
constexpr double kLogFloor = -745.0;

// Quadrature tolerance of the integer sweep; the checked margin is 1e-7.
constexpr double kSweepTol = 1e-10;

double max_modulus_of(const CompactSet1D& k) { return k.max_modulus(); }

// Closest point of the set to z, or nothing when z is farther than `reach`.
std::optional<Complex> project_onto(const CompactSet1D& k, Complex z, double reach) {
    if (k.is_circle()) {
        const Complex c = k.center();
        const double r = k.radius();
        const double d = std::abs(z - c);
        if (d == 0.0 || std::abs(d - r) > reach * r) return std::nullopt;
        return c + r * (z - c) / d;
    }
    if (std::abs(z.imag()) > reach) return std::nullopt;
    for (const auto& part : k.parts())
        if (z.real() >= part.lo - reach && z.real() <= part.hi + reach)
            return Complex(std::clamp(z.real(), part.lo, part.hi), 0.0);
    return std::nullopt;
}

std::vector<Complex> breakpoints_for(const CompactSet1D& k, std::span<const Complex> pts) {
    std::vector<Complex> out;
    const double scale = std::max(1.0, k.max_modulus());
    for (const Complex& z : pts)
        if (auto p = project_onto(k, z, 1e-3 * scale)) out.push_back(*p);
    return out;
}

double log_mahler_roots(std::span<const Complex> coeffs, const CompactSet1D& k) {
    const int d = effective_degree(coeffs);
    if (d < 0) return -std::numeric_limits<double>::infinity();
    double acc = std::log(std::abs(coeffs[static_cast<size_t>(d)]));
    if (d == 0) return acc;
    for (const Complex& c : roots(coeffs.first(static_cast<size_t>(d) + 1))) acc += equilibrium_potential(k, c);
    return acc;
}

double log_mahler_quadrature(std::span<const Complex> coeffs, const CompactSet1D& k, double tol) {
    const int d = effective_degree(coeffs);
    if (d < 0) return -std::numeric_limits<double>::infinity();
    if (d == 0) return std::log(std::abs(coeffs[0]));
    const auto rs = roots(coeffs.first(static_cast<size_t>(d) + 1));
    const auto cuts = breakpoints_for(k, rs);
    auto f = [&](Complex z) {
        const double v = std::abs(horner(coeffs, z));
        return v > 0.0 ? std::log(v) : kLogFloor;
    };
    return integrate_equilibrium(k, f, cuts, tol);
}

// Terms grouped by the indices of all variables but the last; each group is a
// univariate polynomial in the last variable.
using Slices = std::map<MultiIndex, ComplexCoeffs, OrderLess>;

Slices slices_of(const SparsePolyND& p) {
    Slices s;
    const int n = p.dim();
    for (const auto& [a, c] : p.terms()) {
        MultiIndex head(a.begin(), a.end() - 1);
        auto& coeffs = s[head];
        const auto e = static_cast<size_t>(a[static_cast<size_t>(n - 1)]);
        if (coeffs.size() <= e) coeffs.resize(e + 1, 0.0);
        coeffs[e] += c;
    }
    return s;
}

ComplexCoeffs univariate(const SparsePolyND& p) {
    ComplexCoeffs c;
    for (const auto& [a, v] : p.terms()) {
        const auto e = static_cast<size_t>(a[0]);
        if (c.size() <= e) c.resize(e + 1, 0.0);
        c[e] += v;
    }
    return c;
}

// Multiplicity (up to `cap`) of r as a root of c, by successive derivatives.
int multiplicity_at(std::span<const Complex> c, Complex r, int cap) {
    ComplexCoeffs d(c.begin(), c.end());
    int m = 0;
    while (m < cap && effective_degree(d) >= 1) {
        double scale = 0.0;
        double pw = 1.0;
        for (const Complex& v : d) {
            scale += std::abs(v) * pw;
            pw *= std::max(1.0, std::abs(r));
        }
        if (std::abs(horner(d, r)) > 1e-7 * scale) break;
        ++m;
        ComplexCoeffs next(d.size() > 1 ? d.size() - 1 : 1, 0.0);
        for (size_t i = 1; i < d.size(); ++i) next[i - 1] = d[i] * static_cast<double>(i);
        d = std::move(next);
    }
    return m;
}

// Common roots (with multiplicity) of all slices: the content of P in the
// last variable, up to a constant.
std::vector<Complex> content_roots(const std::map<MultiIndex, ComplexCoeffs, OrderLess>& slices) {
    const ComplexCoeffs* shortest = nullptr;
    int best = std::numeric_limits<int>::max();
    for (const auto& [head, c] : slices) {
        const int d = effective_degree(c);
        if (d >= 0 && d < best) {
            best = d;
            shortest = &c;
        }
    }
    std::vector<Complex> out;
    if (shortest == nullptr || best == 0) return out;
    auto rs = roots(std::span<const Complex>(*shortest).first(static_cast<size_t>(best) + 1));
    std::vector<bool> used(rs.size(), false);
    for (size_t i = 0; i < rs.size(); ++i) {
        if (used[i]) continue;
        // Cluster numerically split multiple roots.
        Complex centre = 0.0;
        int m0 = 0;
        for (size_t j = i; j < rs.size(); ++j)
            if (!used[j] && std::abs(rs[j] - rs[i]) <= 1e-5 * std::max(1.0, std::abs(rs[i]))) {
                used[j] = true;
                centre += rs[j];
                ++m0;
            }
        centre /= static_cast<double>(m0);
        int m = m0;
        for (const auto& [head, c] : slices) {
            if (effective_degree(c) < 0) continue;
            m = std::min(m, multiplicity_at(c, centre, m));
            if (m == 0) break;
        }
        for (int k = 0; k < m; ++k) out.push_back(centre);
    }
    return out;
}

double log_mahler_nd(const SparsePolyND& p, std::span<const CompactSet1D> sets, MahlerMethod method, double tol) {
    const int n = p.dim();
    if (p.is_zero()) return kLogFloor;
    if (n == 1) {
        const auto c = univariate(p);
        return method == MahlerMethod::Quadrature ? log_mahler_quadrature(c, sets[0], tol)
                                                  : log_mahler_roots(c, sets[0]);
    }
    Slices slices = slices_of(p);
    const CompactSet1D& last = sets[static_cast<size_t>(n - 1)];
    const auto inner_sets = sets.first(static_cast<size_t>(n - 1));

    // P = C(z) P~ with C the content in the last variable. M(C) is exact, and
    // P~ has no factor vanishing identically in the inner variables.
    double log_mc = 0.0;
    if (method != MahlerMethod::Quadrature) {
        const auto content = content_roots(slices);
        if (!content.empty()) {
            log_mc = log_mahler_roots(from_roots(content), last);
            for (auto& [head, c] : slices) {
                c.resize(static_cast<size_t>(std::max(0, effective_degree(c))) + 1);
                for (const Complex& r : content) {
                    // Synthetic division by (z - r); the remainder is dropped.
                    const size_t d = c.size() - 1;
                    if (d == 0) break;
                    ComplexCoeffs q(d, 0.0);
                    q[d - 1] = c[d];
                    for (size_t k = d - 1; k >= 1; --k) q[k - 1] = c[k] + r * q[k];
                    c = std::move(q);
                }
            }
        }
    }

    bool depends_on_last = false;
    for (const auto& [head, c] : slices)
        if (effective_degree(c) > 0) depends_on_last = true;

    auto restricted = [&](Complex z) {
        SparsePolyND q(n - 1);
        for (const auto& [head, c] : slices) q.add(head, horner(c, z));
        return q;
    };
    if (!depends_on_last) return log_mc + log_mahler_nd(restricted(0.0), inner_sets, method, tol);

    // The integrand is log-singular where the top slice vanishes and has
    // kinks where a root of the restriction meets the inner set; zeros of
    // every slice and of P with an inner coordinate pinned at a boundary
    // point become panel boundaries.
    std::vector<Complex> marks;
    for (const auto& [head, c] : slices)
        if (effective_degree(c) > 0) {
            const int d = effective_degree(c);
            const auto r = roots(std::span<const Complex>(c).first(static_cast<size_t>(d) + 1));
            marks.insert(marks.end(), r.begin(), r.end());
        }
    if (n == 2 && sets[0].is_real()) {
        for (const auto& part : sets[0].parts()) {
            for (double e : {part.lo, part.hi}) {
                ComplexCoeffs pin;
                for (const auto& [head, c] : slices) {
                    const Complex s = std::pow(Complex(e, 0.0), head[0]);
                    if (pin.size() < c.size()) pin.resize(c.size(), 0.0);
                    for (size_t i = 0; i < c.size(); ++i) pin[i] += s * c[i];
                }
                const int d = effective_degree(pin);
                if (d > 0) {
                    const auto r = roots(std::span<const Complex>(pin).first(static_cast<size_t>(d) + 1));
                    marks.insert(marks.end(), r.begin(), r.end());
                }
            }
        }
    }
    if (n == 2 && sets[0].is_real()) {
        // A real inner quadratic has a double root where c1^2 - 4 c2 c0 vanishes.
        std::vector<ComplexCoeffs> c(3);
        bool quadratic = true;
        for (const auto& [head, v] : slices) {
            if (head[0] > 2) quadratic = false;
            else c[static_cast<size_t>(head[0])] = v;
        }
        if (quadratic && effective_degree(c[2]) >= 0) {
            auto mul = [](const ComplexCoeffs& a, const ComplexCoeffs& b) {
                ComplexCoeffs r(a.size() + b.size() > 0 ? a.size() + b.size() : 1, 0.0);
                for (size_t i = 0; i < a.size(); ++i)
                    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
                return r;
            };
            ComplexCoeffs disc = mul(c[1], c[1]);
            const ComplexCoeffs c20 = mul(c[2], c[0]);
            if (disc.size() < c20.size()) disc.resize(c20.size(), 0.0);
            for (size_t i = 0; i < c20.size(); ++i) disc[i] -= 4.0 * c20[i];
            const int d = effective_degree(disc);
            if (d > 0) {
                const auto r = roots(std::span<const Complex>(disc).first(static_cast<size_t>(d) + 1));
                marks.insert(marks.end(), r.begin(), r.end());
            }
        }
    }
    const auto cuts = breakpoints_for(last, marks);
    if (method == MahlerMethod::Quadrature) {
        auto f = [&](Complex z) {
            const SparsePolyND q = restricted(z);
            if (q.is_zero()) return kLogFloor;
            return std::max(kLogFloor, log_mahler_nd(q, inner_sets, method, tol));
        };
        return integrate_equilibrium(last, f, cuts, tol);
    }
    // Two variables: the restriction is a univariate coefficient vector.
    std::vector<const ComplexCoeffs*> by_power;
    if (n == 2) {
        for (const auto& [head, c] : slices) {
            const auto e = static_cast<size_t>(head[0]);
            if (by_power.size() <= e) by_power.resize(e + 1, nullptr);
            by_power[e] = &c;
        }
    }
    ComplexCoeffs q2(by_power.size());
    auto f = [&](Complex z) {
        if (n == 2) {
            for (size_t e = 0; e < by_power.size(); ++e) q2[e] = by_power[e] ? horner(*by_power[e], z) : Complex(0.0);
            if (effective_degree(q2) < 0) return 0.0;
            return log_mahler_roots(q2, sets[0]);
        }
        const SparsePolyND q = restricted(z);
        if (q.is_zero()) return 0.0;
        return log_mahler_nd(q, inner_sets, method, tol);
    };
    return log_mc + integrate_equilibrium(last, f, cuts, tol);
}

}  // namespace

MahlerResult mahler_1d(std::span<const Complex> coeffs, const CompactSet1D& k, MahlerMethod method, double tol) {
    const int d = effective_degree(coeffs);
    if (d < 0) throw InvalidInput("Mahler measure of the zero polynomial");
    MahlerResult r;
    r.method = method == MahlerMethod::Quadrature ? MahlerMethod::Quadrature : MahlerMethod::RootsPotential;
    r.value = std::exp(r.method == MahlerMethod::Quadrature ? log_mahler_quadrature(coeffs, k, tol)
                                                            : log_mahler_roots(coeffs, k));
    r.certified_floor = std::abs(coeffs[static_cast<size_t>(d)]) * std::pow(capacity(k), d);
    return r;
}

MahlerResult mahler_1d(const RealPolynomial& p, const CompactSet1D& k, MahlerMethod method, double tol) {
    ComplexCoeffs c(p.coeffs().begin(), p.coeffs().end());
    return mahler_1d(c, k, method, tol);
}

CoeffBound coeff_bound_1d(std::span<const Complex> coeffs, const CompactSet1D& k, int index) {
    const int d = effective_degree(coeffs);
    if (d < 0) throw InvalidInput("coefficient bound of the zero polynomial");
    if (index < 0 || index > d) throw InvalidInput("coefficient index outside 0..deg P");
    CoeffBound b;
    b.coeff = std::abs(coeffs[static_cast<size_t>(index)]);
    const double m = mahler_1d(coeffs, k).value;
    b.bound = binomial(d, index) * m * std::pow(max_modulus_of(k), d - index) / std::pow(capacity(k), d);
    b.holds = b.coeff <= b.bound + 1e-9;
    return b;
}

MahlerResult mahler_nd(const SparsePolyND& p, const ProductSet& k, MahlerMethod method, double tol) {
    if (p.is_zero()) throw InvalidInput("Mahler measure of the zero polynomial");
    if (p.dim() != k.dim()) throw InvalidInput("polynomial and set dimensions differ");
    MahlerResult r;
    r.method = method == MahlerMethod::Quadrature ? MahlerMethod::Quadrature : MahlerMethod::Recursive;
    r.value = std::exp(log_mahler_nd(p, k.factors, r.method, tol));
    return r;
}

CoeffBound coeff_bound_nd(const SparsePolyND& p, const ProductSet& k, const MultiIndex& index) {
    if (p.is_zero()) throw InvalidInput("coefficient bound of the zero polynomial");
    if (static_cast<int>(index.size()) != k.dim()) throw InvalidInput("multi-index and set dimensions differ");
    CoeffBound b;
    b.coeff = std::abs(p.coeff(index));
    double factor = mahler_nd(p, k).value;
    for (int j = 0; j < k.dim(); ++j) {
        const int m = std::max(0, p.degree_in(j));
        const int kj = index[static_cast<size_t>(j)];
        if (kj < 0 || kj > m) throw InvalidInput("coefficient index exceeds the degree of P");
        const auto& s = k.factors[static_cast<size_t>(j)];
        factor *= binomial(m, kj) * std::pow(max_modulus_of(s), m - kj) / std::pow(capacity(s), m);
    }
    b.bound = factor;
    b.holds = b.coeff <= b.bound + 1e-9;
    return b;
}

namespace {

bool symmetric_about_zero(const CompactSet1D& k) {
    if (k.is_circle()) return k.center() == Complex(0.0);
    const auto& parts = k.parts();
    for (size_t i = 0; i < parts.size(); ++i)
        if (parts[i].lo != -parts[parts.size() - 1 - i].hi) return false;
    return true;
}

// A symmetry of the sweep: coefficient i moves to target[i] with factor sign[i].
struct CoeffMap {
    std::vector<int> target;
    std::vector<int> sign;
};

}  // namespace

IntegerFloorReport integer_floor_check(const ProductSet& k, const std::vector<int>& caps, int range) {
    const int n = k.dim();
    if (n < 1 || n > 2 || static_cast<int>(caps.size()) != n || range < 1 || range > 2)
        throw ScaleLimit("integer sweep is limited to n <= 2, degree caps <= 2 and |coefficients| <= 2");
    for (int c : caps)
        if (c < 0 || c > 2) throw ScaleLimit("integer sweep is limited to degree caps <= 2");

    std::vector<double> caps_k;
    for (const auto& f : k.factors) caps_k.push_back(capacity(f));
    std::vector<MultiIndex> monos;
    if (n == 1) {
        for (int i = 0; i <= caps[0]; ++i) monos.push_back({i});
    } else {
        for (int i = 0; i <= caps[0]; ++i)
            for (int j = 0; j <= caps[1]; ++j) monos.push_back({i, j});
    }
    const int m = static_cast<int>(monos.size());
    const int base = 2 * range + 1;
    auto position = [&](const MultiIndex& a) {
        return static_cast<int>(std::find(monos.begin(), monos.end(), a) - monos.begin());
    };

    // M(P) is invariant under P -> -P, under z_j -> -z_j on factors symmetric
    // about 0, and under swapping equal factors with equal caps. Each orbit is
    // evaluated once at its smallest code and weighted by its size.
    std::vector<CoeffMap> group;
    const bool can_swap = n == 2 && caps[0] == caps[1] && k.factors[0].describe() == k.factors[1].describe();
    for (int neg = 0; neg < 2; ++neg)
        for (int r0 = 0; r0 < 2; ++r0)
            for (int r1 = 0; r1 < (n == 2 ? 2 : 1); ++r1)
                for (int sw = 0; sw < (can_swap ? 2 : 1); ++sw) {
                    if (r0 && !symmetric_about_zero(k.factors[0])) continue;
                    if (r1 && !symmetric_about_zero(k.factors[1])) continue;
                    CoeffMap g{std::vector<int>(static_cast<size_t>(m)), std::vector<int>(static_cast<size_t>(m))};
                    for (int i = 0; i < m; ++i) {
                        MultiIndex a = monos[static_cast<size_t>(i)];
                        int sg = neg ? -1 : 1;
                        if (r0 && a[0] % 2) sg = -sg;
                        if (n == 2 && r1 && a[1] % 2) sg = -sg;
                        if (sw) std::swap(a[0], a[1]);
                        g.target[static_cast<size_t>(i)] = position(a);
                        g.sign[static_cast<size_t>(i)] = sg;
                    }
                    group.push_back(std::move(g));
                }

    IntegerFloorReport rep;
    rep.min_ratio = std::numeric_limits<double>::infinity();
    rep.min_value = std::numeric_limits<double>::infinity();
    std::vector<int> digits(static_cast<size_t>(m));
    std::vector<long long> pow_base(static_cast<size_t>(m), 1);
    for (int i = 1; i < m; ++i) pow_base[static_cast<size_t>(i)] = pow_base[static_cast<size_t>(i - 1)] * base;
    const long long total = pow_base.back() * base;
    const long long zero_code = (total - 1) / 2;  // every digit equal to 0
    std::vector<long long> images;
    for (long long code = 0; code < total; ++code) {
        if (code == zero_code) continue;
        long long c = code;
        for (int i = 0; i < m; ++i) {
            digits[static_cast<size_t>(i)] = static_cast<int>(c % base) - range;
            c /= base;
        }
        images.clear();
        bool canonical = true;
        for (const auto& g : group) {
            long long img = 0;
            for (int i = 0; i < m; ++i)
                img += (g.sign[static_cast<size_t>(i)] * digits[static_cast<size_t>(i)] + range) *
                       pow_base[static_cast<size_t>(g.target[static_cast<size_t>(i)])];
            if (img < code) {
                canonical = false;
                break;
            }
            images.push_back(img);
        }
        if (!canonical) continue;
        std::sort(images.begin(), images.end());
        const auto orbit = static_cast<long long>(std::unique(images.begin(), images.end()) - images.begin());

        SparsePolyND p(n);
        for (int i = 0; i < m; ++i) p.add(monos[static_cast<size_t>(i)], static_cast<double>(digits[static_cast<size_t>(i)]));
        double floor = 1.0;
        for (int j = 0; j < n; ++j) floor *= std::min(1.0, std::pow(caps_k[static_cast<size_t>(j)], std::max(0, p.degree_in(j))));
        const double mv = mahler_nd(p, k, MahlerMethod::Recursive, kSweepTol).value;
        rep.candidates += orbit;
        if (mv < floor - 1e-7) rep.violations += orbit;
        if (mv < rep.min_value) rep.min_value = mv;
        const double ratio = mv / floor;
        if (ratio < rep.min_ratio) {
            rep.min_ratio = ratio;
            rep.argmin_ratio = p;
        }
    }
    return rep;
}

}  // namespace widom
