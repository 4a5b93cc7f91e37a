#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "widom/productnd.hpp"

namespace widom {

enum class MahlerMethod { RootsPotential, Quadrature, Recursive };

[[nodiscard]] std::string to_string(MahlerMethod m);

struct MahlerResult {
    double value = 0.0;
    MahlerMethod method = MahlerMethod::RootsPotential;
    std::optional<double> certified_floor;  ///< |a_d| Cap(K)^d for univariate P
};

/// M(P) = exp int log|P| d mu_K for a nonzero univariate polynomial.
/// RootsPotential: |a_d| exp sum_j U(c_j) with exact equilibrium potentials.
/// Quadrature: adaptive integration of log|P| with the roots as breakpoints.
[[nodiscard]] MahlerResult mahler_1d(std::span<const Complex> coeffs, const CompactSet1D& k,
                                     MahlerMethod method = MahlerMethod::RootsPotential, double tol = 1e-12);
[[nodiscard]] MahlerResult mahler_1d(const RealPolynomial& p, const CompactSet1D& k,
                                     MahlerMethod method = MahlerMethod::RootsPotential, double tol = 1e-12);

struct CoeffBound {
    double coeff = 0.0;  ///< |a_k|
    double bound = 0.0;
    bool holds = false;  ///< coeff <= bound + 1e-9
    [[nodiscard]] double ratio() const { return bound > 0.0 ? coeff / bound : 0.0; }
};

/// |a_k| <= binom(d,k) M(P) (max_K |z|)^{d-k} / Cap(K)^d.
[[nodiscard]] CoeffBound coeff_bound_1d(std::span<const Complex> coeffs, const CompactSet1D& k, int index);

/// Mahler measure relative to nu_K = prod mu_{K_j}. Recursive: the first
/// variable is handled by roots and potentials, the rest by nested adaptive
/// quadrature whose breakpoints are the roots of the coefficient slices.
/// Quadrature: every level is adaptive quadrature of log|P|.
[[nodiscard]] MahlerResult mahler_nd(const SparsePolyND& p, const ProductSet& k,
                                     MahlerMethod method = MahlerMethod::Recursive, double tol = 1e-11);

/// |a_k| <= M(P) prod_N binom(m_N, k_N) (max |z_N|)^{m_N - k_N} / Cap(K_N)^{m_N}.
[[nodiscard]] CoeffBound coeff_bound_nd(const SparsePolyND& p, const ProductSet& k, const MultiIndex& index);

struct IntegerFloorReport {
    long long candidates = 0;
    long long violations = 0;
    double min_ratio = 0.0;  ///< min over P of M(P) / floor(P)
    double min_value = 0.0;  ///< min over P of M(P)
    SparsePolyND argmin_ratio;
    [[nodiscard]] bool holds() const { return violations == 0; }
};

/// Exhaustive sweep over nonzero integer polynomials with per-variable degree
/// <= caps[N] and coefficients in [-range, range], checking
/// M(P) >= prod_N min(1, Cap(K_N)^{m_N(P)}) - 1e-7 with P's own degrees.
/// Polynomials related by sign changes, reflections of symmetric factors or
/// swaps of equal factors share M; one per orbit is evaluated and `candidates`
/// counts every polynomial. n <= 2, caps <= 2, range <= 2.
[[nodiscard]] IntegerFloorReport integer_floor_check(const ProductSet& k, const std::vector<int>& caps, int range);

}  // namespace widom
