#pragma once

#include <complex>
#include <span>
#include <vector>

namespace widom {

using Complex = std::complex<double>;

/// Dense univariate polynomial with real coefficients in ascending degree.
///
/// Canonical form has a nonzero leading coefficient; the zero polynomial is an
/// empty coefficient vector and reports degree -1.
class RealPolynomial {
public:
    RealPolynomial() = default;
    explicit RealPolynomial(std::vector<double> coeffs);

    static RealPolynomial monomial(int degree, double coeff = 1.0);

    [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
    [[nodiscard]] const std::vector<double>& coeffs() const { return coeffs_; }
    [[nodiscard]] double coeff(int k) const;
    [[nodiscard]] double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }

    [[nodiscard]] double operator()(double x) const;
    [[nodiscard]] Complex operator()(Complex z) const;

    [[nodiscard]] RealPolynomial derivative() const;

    friend RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b);
    friend RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b);
    friend RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b);
    friend RealPolynomial operator*(double s, const RealPolynomial& a);
    friend bool operator==(const RealPolynomial&, const RealPolynomial&) = default;

private:
    void trim();
    std::vector<double> coeffs_;
};

/// Ascending complex coefficients; trailing zeros are allowed and ignored by
/// the helpers below.
using ComplexCoeffs = std::vector<Complex>;

[[nodiscard]] Complex horner(std::span<const Complex> coeffs, Complex z);
[[nodiscard]] double horner(std::span<const double> coeffs, double x);

/// Index of the highest nonzero coefficient, or -1 for the zero polynomial.
[[nodiscard]] int effective_degree(std::span<const Complex> coeffs);

/// All complex roots (with multiplicity) of a nonzero polynomial.
///
/// Degrees 1 and 2 use closed forms; higher degrees use eigenvalues of the
/// balanced companion matrix followed by two Newton polishing steps.
[[nodiscard]] std::vector<Complex> roots(std::span<const Complex> coeffs);
[[nodiscard]] std::vector<Complex> roots(const RealPolynomial& p);

/// Real roots of p inside [lo, hi], found by locating sign changes between
/// consecutive critical points and bisecting to `tol`. Roots of even
/// multiplicity that do not change sign are found through the critical points.
[[nodiscard]] std::vector<double> real_roots_in(const RealPolynomial& p, double lo, double hi,
                                                double tol = 1e-13);

/// Monomial coefficients of the product prod_j (x - r_j).
[[nodiscard]] ComplexCoeffs from_roots(std::span<const Complex> rs);

[[nodiscard]] double binomial(int n, int k);

}  // namespace widom
