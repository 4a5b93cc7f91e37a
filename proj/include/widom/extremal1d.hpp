#pragma once

#include <vector>

#include "widom/polynomial.hpp"
#include "widom/sets1d.hpp"

namespace widom {

/// Monic minimizer of the weighted sup-norm ||w P||_K over degree-n polynomials.
struct ChebyshevSolution {
    RealPolynomial poly;                ///< monic; zero when the coefficients are not real
    ComplexCoeffs coeffs;               ///< same polynomial, always filled
    double norm = 0.0;                  ///< ||w_hat P||_K
    std::vector<double> extreme_points; ///< strictly decreasing, real sets only
    std::vector<int> signs;             ///< sign of w_hat P at each extreme point, alternating
    int exchange_rounds = 0;
};

struct ChebyshevOptions {
    int grid_per_interval = 2000;
    double rel_tol = 1e-10;   ///< stop once the continuous maximum exceeds the discrete level by less
    int max_rounds = 40;
};

/// Weighted Chebyshev polynomial. Real sets: discrete minimax on a
/// Chebyshev-clustered grid, refined by adding continuous local maxima until
/// the relative gap falls below `rel_tol`. Circles: constant weights only,
/// where (z - c)^n is extremal. The weight is usc-regularized first.
[[nodiscard]] ChebyshevSolution weighted_chebyshev(const CompactSet1D& set, const Weight1D& w, int n,
                                                   const ChebyshevOptions& opt = {});

/// Monic orthogonal polynomials of w dmu_K up to a fixed degree.
struct OrthoBasis {
    std::vector<double> b;            ///< b_0..b_{N-1} (real sets)
    std::vector<double> a2;           ///< a_1^2..a_N^2 (a2[k-1] = a_k^2), real sets
    std::vector<Complex> verblunsky;  ///< alpha_0..alpha_{N-1} in the unit-circle variable (circles)
    std::vector<double> monic_norms;  ///< ||P_k||, k = 0..N
    std::vector<ComplexCoeffs> polys; ///< monomial coefficients of P_k in z
};

/// Stieltjes procedure on real sets, Szego recursion on circles, both run on
/// the discrete measure from `weighted_measure`. Throws ResolutionError when
/// n_nodes cannot resolve degree 2N + 2.
[[nodiscard]] OrthoBasis monic_orthogonal(const CompactSet1D& set, const Weight1D& w, int max_degree,
                                          int n_nodes = 0);

/// ||P_i||_{L^2(w dmu_K)} / Cap(K)^i.
[[nodiscard]] double widom_l2_1d(const CompactSet1D& set, const Weight1D& w, int i);
/// ||w_hat T_{i,w}||_K / Cap(K)^i.
[[nodiscard]] double widom_sup_1d(const CompactSet1D& set, const Weight1D& w, int i);

}  // namespace widom
