#include "widom/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "widom/errors.hpp"

namespace widom {

RealPolynomial::RealPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

RealPolynomial RealPolynomial::monomial(int degree, double coeff) {
    std::vector<double> c(static_cast<size_t>(degree) + 1, 0.0);
    c.back() = coeff;
    return RealPolynomial(std::move(c));
}

void RealPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double RealPolynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
    return coeffs_[static_cast<size_t>(k)];
}

double RealPolynomial::operator()(double x) const { return horner(coeffs_, x); }

Complex RealPolynomial::operator()(Complex z) const {
    Complex acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

RealPolynomial RealPolynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<double> d(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return RealPolynomial(std::move(d));
}

RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b) {
    std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
    for (size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
    return RealPolynomial(std::move(c));
}

RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b) { return a + (-1.0) * b; }

RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
        for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return RealPolynomial(std::move(c));
}

RealPolynomial operator*(double s, const RealPolynomial& a) {
    std::vector<double> c = a.coeffs_;
    for (auto& v : c) v *= s;
    return RealPolynomial(std::move(c));
}

Complex horner(std::span<const Complex> coeffs, Complex z) {
    Complex acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double horner(std::span<const double> coeffs, double x) {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int effective_degree(std::span<const Complex> coeffs) {
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
        if (coeffs[static_cast<size_t>(k)] != 0.0) return k;
    return -1;
}

namespace {

// Parlett-Reinsch diagonal balancing, in place.
void balance(Eigen::MatrixXcd& a) {
    const Eigen::Index n = a.rows();
    constexpr double radix = 2.0;
    bool done = false;
    while (!done) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double r = 0.0;
            double c = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix * radix;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

}  // namespace

std::vector<Complex> roots(std::span<const Complex> coeffs) {
    const int d = effective_degree(coeffs);
    if (d < 0) throw InvalidInput("roots: zero polynomial");
    if (d == 0) return {};
    const Complex lead = coeffs[static_cast<size_t>(d)];
    if (d == 1) return {-coeffs[0] / lead};
    if (d == 2) {
        const Complex a = lead;
        const Complex b = coeffs[1];
        const Complex c = coeffs[0];
        const Complex disc = std::sqrt(b * b - 4.0 * a * c);
        // Avoid cancellation: pick the sign that makes |q| large.
        const Complex q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc) : -0.5 * (b - disc);
        if (q == 0.0) return {0.0, 0.0};
        return {q / a, c / q};
    }
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -coeffs[static_cast<size_t>(i)] / lead;
    balance(comp);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Complex> out(es.eigenvalues().begin(), es.eigenvalues().end());

    std::vector<Complex> dcoef(static_cast<size_t>(d));
    for (int k = 1; k <= d; ++k) dcoef[static_cast<size_t>(k - 1)] = static_cast<double>(k) * coeffs[static_cast<size_t>(k)];
    const std::span<const Complex> pc(coeffs.data(), static_cast<size_t>(d) + 1);
    for (auto& r : out) {
        for (int it = 0; it < 2; ++it) {
            const Complex pv = horner(pc, r);
            const Complex dv = horner(dcoef, r);
            if (dv == 0.0) break;
            const Complex step = pv / dv;
            const Complex cand = r - step;
            if (std::abs(horner(pc, cand)) < std::abs(pv)) r = cand;
            else break;
        }
    }
    return out;
}

std::vector<Complex> roots(const RealPolynomial& p) {
    std::vector<Complex> c(p.coeffs().begin(), p.coeffs().end());
    return roots(c);
}

std::vector<double> real_roots_in(const RealPolynomial& p, double lo, double hi, double tol) {
    if (p.is_zero()) throw InvalidInput("real_roots_in: zero polynomial");
    if (p.degree() == 0) return {};
    std::vector<double> knots{lo};
    if (p.degree() >= 2) {
        for (double c : real_roots_in(p.derivative(), lo, hi, tol))
            if (c > lo && c < hi) knots.push_back(c);
    }
    knots.push_back(hi);

    double scale = 0.0;
    for (double c : p.coeffs()) scale = std::max(scale, std::abs(c));
    const double zero_tol = 1e-12 * scale * std::pow(std::max(1.0, std::max(std::abs(lo), std::abs(hi))), p.degree());

    std::vector<double> out;
    auto push = [&](double x) {
        if (out.empty() || x - out.back() > 10 * tol) out.push_back(x);
    };
    for (size_t i = 0; i + 1 < knots.size(); ++i) {
        double a = knots[i];
        double b = knots[i + 1];
        double fa = p(a);
        const double fb = p(b);
        if (std::abs(fa) <= zero_tol) {
            push(a);
            continue;
        }
        if (std::abs(fb) <= zero_tol) continue;  // picked up as the next left end
        if ((fa < 0) == (fb < 0)) continue;
        while (b - a > tol) {
            const double m = 0.5 * (a + b);
            const double fm = p(m);
            if (fm == 0.0) {
                a = b = m;
                break;
            }
            if ((fm < 0) == (fa < 0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        push(0.5 * (a + b));
    }
    if (std::abs(p(hi)) <= zero_tol) push(hi);
    return out;
}

ComplexCoeffs from_roots(std::span<const Complex> rs) {
    ComplexCoeffs c{1.0};
    for (const Complex& r : rs) {
        ComplexCoeffs next(c.size() + 1, 0.0);
        for (size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = std::move(next);
    }
    return c;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return std::round(r);
}

}  // namespace widom
