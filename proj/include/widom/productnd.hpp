#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "widom/extremal1d.hpp"
#include "widom/polynomial.hpp"
#include "widom/sets1d.hpp"

namespace widom {

using MultiIndex = std::vector<int>;

[[nodiscard]] int total_degree(const MultiIndex& a);

/// Graded order on monomials: lower total degree first; within a degree,
/// b precedes a iff b is larger at the first coordinate where they differ.
[[nodiscard]] bool order_precedes(const MultiIndex& b, const MultiIndex& a);

struct OrderLess {
    bool operator()(const MultiIndex& b, const MultiIndex& a) const { return order_precedes(b, a); }
};

/// alpha(i) in dimension n; inverse of order_rank.
[[nodiscard]] MultiIndex order_index(std::int64_t i, int n);
[[nodiscard]] std::int64_t order_rank(const MultiIndex& a);
/// All multi-indices of total degree <= d, in order.
[[nodiscard]] std::vector<MultiIndex> indices_up_to(int n, int d);

/// Sparse polynomial in n complex variables; zero coefficients are never stored.
class SparsePolyND {
public:
    explicit SparsePolyND(int n = 1) : n_(n) {}

    static SparsePolyND monomial(const MultiIndex& a, Complex c = 1.0);
    /// prod_j p_j(z_j) for univariate coefficient vectors.
    static SparsePolyND tensor(const std::vector<ComplexCoeffs>& factors);

    [[nodiscard]] int dim() const { return n_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] const std::map<MultiIndex, Complex, OrderLess>& terms() const { return terms_; }
    [[nodiscard]] Complex coeff(const MultiIndex& a) const;
    /// Largest multi-index in the order; the polynomial must be nonzero.
    [[nodiscard]] const MultiIndex& leading_index() const;
    [[nodiscard]] int total_degree() const;
    /// Degree in variable j.
    [[nodiscard]] int degree_in(int j) const;

    void add(const MultiIndex& a, Complex c);
    [[nodiscard]] Complex operator()(std::span<const Complex> z) const;
    [[nodiscard]] double eval_real(std::span<const double> x) const;

    friend SparsePolyND operator*(const SparsePolyND& p, const SparsePolyND& q);
    friend SparsePolyND operator+(const SparsePolyND& p, const SparsePolyND& q);
    friend SparsePolyND operator*(Complex s, const SparsePolyND& p);

private:
    int n_;
    std::map<MultiIndex, Complex, OrderLess> terms_;
};

struct ProductSet {
    std::vector<CompactSet1D> factors;
    [[nodiscard]] int dim() const { return static_cast<int>(factors.size()); }
    [[nodiscard]] bool all_real() const;
    [[nodiscard]] bool all_circles() const;
};

struct ProductWeight {
    std::vector<Weight1D> factors;
    static ProductWeight unit(int n);
    [[nodiscard]] int dim() const { return static_cast<int>(factors.size()); }
    [[nodiscard]] bool is_unit() const;
    [[nodiscard]] double operator()(std::span<const Complex> z) const;
};

/// min_j Cap(K_j).
[[nodiscard]] double tau_minus_product(const ProductSet& k);

/// prod_j S(K_j, w_j).
[[nodiscard]] double szego_product(const ProductSet& k, const ProductWeight& w);

struct ProductOrthogonal {
    SparsePolyND poly;
    double norm = 0.0;  ///< ||V_alpha||_{L^2(w d nu_K)}
};

/// V_alpha = prod_j P_{alpha_j}^{(j)}. Throws SzegoFailure when some factor
/// has S(K_j, w_j) = 0 numerically.
[[nodiscard]] ProductOrthogonal product_orthogonal(const ProductSet& k, const ProductWeight& w, const MultiIndex& a);

struct ProductChebyshev {
    SparsePolyND poly;
    double norm = 0.0;                      ///< prod_j ||w_hat_j T_j||
    std::vector<ChebyshevSolution> factors; ///< extreme sets L_j live here
};

/// Q_alpha = prod_j T_{alpha_j, w_hat_j}^{(K_j)}. All factors real, or all
/// circles with constant weights; mixed products are Unsupported.
[[nodiscard]] ProductChebyshev product_chebyshev(const ProductSet& k, const ProductWeight& w, const MultiIndex& a,
                                                 const ChebyshevOptions& opt = {});

[[nodiscard]] double widom_l2_nd(const ProductSet& k, const ProductWeight& w, const MultiIndex& a);
[[nodiscard]] double widom_sup_nd(const ProductSet& k, const ProductWeight& w, const MultiIndex& a);

/// ||P||^2 in L^2(w d nu_K) by tensor quadrature.
[[nodiscard]] double l2_norm_squared(const SparsePolyND& p, const ProductSet& k, const ProductWeight& w,
                                     int n_nodes = 128);

/// S(K, w) exp int log|P|^2 d nu_K = S(K, w) M(P)^2; never exceeds ||P||^2.
[[nodiscard]] double jensen_lower_bound(const SparsePolyND& p, const ProductSet& k, const ProductWeight& w);

struct BruteForceResult {
    double level = 0.0;   ///< discrete minimax level (lower bound for the continuous problem)
    double upper = 0.0;   ///< largest residual found on K (upper bound)
    int points = 0;
    int rounds = 0;
};

/// Minimax of w_hat (x^alpha - sum_{beta < alpha} c_beta x^beta) over a product
/// Chebyshev grid with coordinate-wise continuous refinement. Real factors,
/// total degree <= 6 and n <= 3 only (ScaleLimit otherwise).
[[nodiscard]] BruteForceResult bruteforce_chebyshev_nd(const ProductSet& k, const ProductWeight& w,
                                                       const MultiIndex& a, int grid_density = 0);

/// Norms of the monic orthogonal polynomials for ranks 0..up_to_rank by
/// Cholesky factorization of the monomial Gram matrix.
[[nodiscard]] std::vector<double> bruteforce_gram_schmidt_nd(const ProductSet& k, const ProductWeight& w,
                                                             int up_to_rank, int n_nodes = 96);

/// ||T_{alpha,1}||_K >= tau^-(K)^{|alpha|} - 1e-8 on a product set.
[[nodiscard]] bool theorem_tau_check(const ProductSet& k, const MultiIndex& a);

enum class EqualityFlag {
    ZeroIndex,     ///< alpha_j = 0
    InverseImage,  ///< K_j given as R^{-1}([-1,1]) with deg R = alpha_j
    Unknown,       ///< no certificate, yet the factor attains the bound numerically
    None,
    NotReal,       ///< factor is not a subset of R
};

[[nodiscard]] std::string to_string(EqualityFlag f);

/// Per-factor equality certificates for the real doubling bounds.
[[nodiscard]] std::vector<EqualityFlag> equality_case_flags(const ProductSet& k, const MultiIndex& a);

struct WidomBounds {
    double universal_l2 = 0.0;   ///< S(K, w), compared with W2^2
    double universal_sup = 0.0;  ///< S(K, w_hat), compared with W_inf
    std::optional<double> doubling_l2;   ///< prod 2^{c_j} Cap_j^{2 a_j} / tau^{2|a|} (real, w = 1)
    std::optional<double> doubling_sup;  ///< prod 2^{c_j} Cap_j^{a_j} / tau^{|a|} (real, w = 1)
};

struct WidomReport {
    MultiIndex alpha;
    double w2 = 0.0;
    std::optional<double> winf;
    double szego = 0.0;
    double tau_minus = 0.0;
    WidomBounds bounds;
    std::vector<EqualityFlag> flags;

    [[nodiscard]] double w2sq() const { return w2 * w2; }
    /// Every recorded bound is below its factor value up to `tol`.
    [[nodiscard]] bool bounds_hold(double tol = 1e-6) const;
};

[[nodiscard]] WidomReport widom_report(const ProductSet& k, const ProductWeight& w, const MultiIndex& a);

}  // namespace widom
