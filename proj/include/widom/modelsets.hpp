#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "widom/polynomial.hpp"
#include "widom/productnd.hpp"

namespace widom {

/// Compact sets in C^n whose extremal data are known in closed form.
struct ModelSet {
    enum class Kind {
        Polydisk,        ///< {max |z_j| <= 1} in C^n
        EuclideanBall2,  ///< {|z_1|^2 + |z_2|^2 <= 1}
        RealBall2,       ///< {x in R^2 : x_1^2 + x_2^2 <= 1}
        Simplex,         ///< {x in R^n : x_j >= 0, sum x_j <= 1}
    };

    Kind kind = Kind::Polydisk;
    int n = 1;

    static ModelSet polydisk(int n);
    static ModelSet ball2() { return {Kind::EuclideanBall2, 2}; }
    static ModelSet real_ball2() { return {Kind::RealBall2, 2}; }
    static ModelSet simplex(int n);
    /// Accepts "polydisk:n", "ball2", "realball2" and "simplex:n".
    static ModelSet parse(const std::string& name);

    [[nodiscard]] int dim() const { return n; }
    [[nodiscard]] std::string name() const;
    friend bool operator==(const ModelSet&, const ModelSet&) = default;
};

/// ||z^alpha||_K. Closed forms exist on all four sets (0^0 = 1).
[[nodiscard]] double monomial_sup_norm(const ModelSet& k, const MultiIndex& a);

/// tau(K, theta) for theta in the closed simplex; boundary points take the
/// limiting values. Throws InvalidInput when theta is not a probability vector
/// of the right length and Unsupported on the simplex.
[[nodiscard]] double directional_tau(const ModelSet& k, std::span<const double> theta);

/// inf over theta of tau(K, theta); nullopt where no closed form is known.
[[nodiscard]] std::optional<double> tau_minus_model(const ModelSet& k);

struct DirectionalProfile {
    std::vector<std::vector<double>> theta_grid;
    std::vector<double> values;
    std::vector<double> theta_min;  ///< minimizer, refined beyond the grid
    double tau_minus = 0.0;
};

/// tau(K, theta) on `points` equispaced directions theta = (t, 1 - t),
/// t from 1 down to 0; a single point means theta = (1, 0). The minimum is
/// refined by golden section between the neighbours of the best grid point.
/// Two-dimensional sets only.
[[nodiscard]] DirectionalProfile profile_minimum(const ModelSet& k, int points);

/// V_K^*(z) in closed form; zero on K.
[[nodiscard]] double extremal_function(const ModelSet& k, std::span<const Complex> z);

struct CapacityPair {
    double c = 0.0;  ///< max-norm growth capacity
    double C = 0.0;  ///< Euclidean-norm growth capacity
    bool c_numeric = false;  ///< c obtained by ray estimation, not a closed form
};

/// c(K) and C(K): closed forms where known; c of the simplex by ray estimation.
[[nodiscard]] CapacityPair capacities_cC(const ModelSet& k);

/// exp(-max over directions u of (V(R u) - log R)) for unit u in the max norm
/// (c) and in the Euclidean norm (C). Directions: every nonzero vector with
/// entries in {0, 1, -1, i, -i} plus `random_dirs` seeded random complex ones.
[[nodiscard]] CapacityPair ray_limit_capacities(const ModelSet& k, double radius = 1e6, int random_dirs = 256,
                                                std::uint64_t seed = 7);

/// Interval known to contain T(K): [c, min(tau^-, C)].
struct TInterval {
    double lo = 0.0;
    double hi = 0.0;
};
[[nodiscard]] TInterval transfinite_interval(const ModelSet& k);

/// inf over 0 < r < 1 of (1 + r)^{2n-1} / (1 - r) log(1/r), by golden section.
[[nodiscard]] double ball_radial_infimum(int n = 2);

/// S / (2^d exp(2 d inf)): lower bound for ||P||^2 in L^2(w d sigma) over
/// monic P of degree d on the Euclidean ball of C^2 with S = S(K, w).
[[nodiscard]] double ball_l2_floor(int d, double szego);

/// 1 / prod_j binom(|alpha|, alpha_j): floor for exp int log|P| over the torus.
[[nodiscard]] double mahler_polydisk_floor(const MultiIndex& a);
/// S / (prod_j binom(|alpha|, alpha_j))^2.
[[nodiscard]] double mahler_polydisk_l2_floor(const MultiIndex& a, double szego);

/// W_inf for w = 1 where monomials are Chebyshev polynomials (polydisk, ball2).
[[nodiscard]] double model_widom_sup(const ModelSet& k, const MultiIndex& a);

/// ||z^alpha||_K >= tau^-(K)^{|alpha|} - 1e-12 on polydisk and ball2.
[[nodiscard]] bool model_tau_check(const ModelSet& k, const MultiIndex& a);

/// Discrete rule in C^n: sum_i weights[i] f(nodes[i]).
struct ProductRule {
    std::vector<std::vector<Complex>> nodes;
    std::vector<double> weights;
};

/// Normalized Haar measure on the torus (dtheta / 2 pi)^n with m equispaced
/// angles per coordinate; exact for trigonometric polynomials of degree < m.
[[nodiscard]] ProductRule torus_rule(int n, int m);

/// Normalized surface measure on the unit sphere of C^2: z_1 = cos(phi) e^{i s},
/// z_2 = sin(phi) e^{i t}, Gauss-Legendre in phi, m equispaced angles in s, t.
[[nodiscard]] ProductRule sphere_rule(int n_phi, int m);

/// n_points uniform samples on the unit sphere of C^2.
[[nodiscard]] std::vector<std::vector<Complex>> sphere_samples(int n_points, std::uint64_t seed);

/// Exact int |P|^2 d sigma on the unit sphere of C^2 from orthogonality of
/// monomials: ||z^alpha||^2 = alpha_1! alpha_2! / (|alpha| + 1)!.
[[nodiscard]] double sphere_l2_norm_squared(const SparsePolyND& p);

struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Monte-Carlo estimate of int log|P|^2 d sigma on the sphere of C^2.
[[nodiscard]] MeanEstimate sphere_log_mean(const SparsePolyND& p, int n_points, std::uint64_t seed);

/// exp int log|P| over a product rule.
[[nodiscard]] double rule_mahler(const SparsePolyND& p, const ProductRule& rule);

/// Classical Mahler measure on the torus: Jensen's formula in z_1 (roots of
/// each slice) and an m-point trapezoid rule in each remaining angle.
[[nodiscard]] double torus_mahler(const SparsePolyND& p, int m);

}  // namespace widom
