#pragma once

#include <Eigen/Dense>
#include <vector>

namespace widom {

/// Solution of min_c max_i |f_i - (A c)_i| over a finite point set.
struct MinimaxResult {
    Eigen::VectorXd coeffs;     ///< minimizing c
    double level = 0.0;         ///< optimal max residual h
    std::vector<int> active;    ///< rows carrying positive dual mass
    std::vector<int> signs;     ///< sign of f - A c on each active row (+1 / -1)
    int iterations = 0;
};

/// Discrete linear Chebyshev approximation solved through its dual LP
/// (maximize sum y_i f_i subject to A^T y = 0 and sum |y_i| = 1) with a
/// revised simplex: each pivot swaps one reference point, which is the
/// classical exchange step. A must have full column rank on the rows.
[[nodiscard]] MinimaxResult discrete_minimax(const Eigen::MatrixXd& a, const Eigen::VectorXd& f);

}  // namespace widom
