#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "widom/polynomial.hpp"

namespace widom {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    [[nodiscard]] double length() const { return hi - lo; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Equilibrium measure of a generic interval union, discretized as a piecewise
/// constant density on a graded grid of cells and obtained by minimizing the
/// discrete logarithmic energy.
struct CellEquilibrium {
    std::vector<Interval> cells;  ///< ascending, grouped by interval
    std::vector<double> mass;     ///< probability mass of each cell
    double energy = 0.0;          ///< -log Cap, extrapolated from N and N/2 cells
    double discrete_energy = 0.0; ///< minimum of the discrete energy on N cells
    int cells_per_interval = 0;
    int iterations = 0;           ///< projected-gradient steps (0 when the KKT solve sufficed)
};

/// Lap of a polynomial preimage: a maximal subinterval on which the generator
/// is monotone and sweeps [-1, 1] exactly once.
struct PreimageLap {
    double lo = 0.0;
    double hi = 0.0;
    bool increasing = true;
};

/// Closed-form equilibrium density of a finite union of intervals.
struct UnionDensity;

/// A non-polar compact subset of the complex plane drawn from four computable
/// classes. Instances are immutable; copies share any precomputed data.
class CompactSet1D {
public:
    enum class Kind { Intervals, UnitCircle, Circle, Preimage };

    /// Union of closed intervals; input is sorted and validated (disjoint,
    /// positive length).
    static CompactSet1D intervals(std::vector<Interval> parts, int cells_per_interval = 512);
    static CompactSet1D interval(double lo, double hi) { return intervals({{lo, hi}}); }
    static CompactSet1D unit_circle();
    static CompactSet1D circle(Complex center, double radius);
    /// {x real : |R(x)| <= 1}, resolved into intervals by bisection.
    static CompactSet1D preimage(RealPolynomial generator, int cells_per_interval = 512);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] bool is_real() const { return kind_ == Kind::Intervals || kind_ == Kind::Preimage; }
    [[nodiscard]] bool is_circle() const { return !is_real(); }
    /// Resolved interval form (empty for circles).
    [[nodiscard]] const std::vector<Interval>& parts() const { return parts_; }
    [[nodiscard]] Complex center() const { return center_; }
    [[nodiscard]] double radius() const { return radius_; }
    [[nodiscard]] const RealPolynomial& generator() const { return generator_; }
    /// True when the set equals R^{-1}([-1,1]), i.e. every t in [-1,1] has
    /// deg R real preimages. Only then are the preimage closed forms valid.
    [[nodiscard]] bool is_full_preimage() const { return !laps_.empty(); }
    [[nodiscard]] const std::vector<PreimageLap>& laps() const { return laps_; }
    /// Present exactly for sets with no closed-form equilibrium measure.
    [[nodiscard]] const CellEquilibrium* cell_equilibrium() const { return cells_.get(); }
    /// Present exactly when cell_equilibrium() is.
    [[nodiscard]] const UnionDensity* union_density() const { return density_.get(); }

    [[nodiscard]] double max_modulus() const;
    [[nodiscard]] bool contains(Complex z, double tol = 1e-12) const;
    [[nodiscard]] std::string describe() const;

    friend bool operator==(const CompactSet1D& a, const CompactSet1D& b);

private:
    CompactSet1D() = default;
    void solve_generic(int cells_per_interval);

    Kind kind_ = Kind::Intervals;
    std::vector<Interval> parts_;
    Complex center_{0.0, 0.0};
    double radius_ = 0.0;
    RealPolynomial generator_;
    std::vector<PreimageLap> laps_;
    std::shared_ptr<const CellEquilibrium> cells_;
    std::shared_ptr<const UnionDensity> density_;
};

/// Weight function on a compact subset of C.
///
/// PiecewiseConstant pieces are [b_{k-1}, b_k) on the real line (right
/// continuous); regularization replaces breakpoint values by the local max.
class Weight1D {
public:
    enum class Kind { Constant, AbsPower, PiecewiseConstant, Product };

    static Weight1D constant(double c);
    /// s * |x - x0|^p with p > -1 and s > 0.
    static Weight1D abs_power(double x0, double p, double s = 1.0);
    /// values.size() == breakpoints.size() + 1, breakpoints strictly ascending.
    static Weight1D piecewise_constant(std::vector<double> breakpoints, std::vector<double> values);
    static Weight1D product(std::vector<Weight1D> factors);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] double operator()(Complex z) const;
    [[nodiscard]] double operator()(double x) const { return (*this)(Complex(x, 0.0)); }
    [[nodiscard]] double left_limit(double x) const;
    [[nodiscard]] double right_limit(double x) const;

    [[nodiscard]] bool bounded() const;
    [[nodiscard]] bool is_regularized() const { return regularized_; }
    /// True when the weight is constant 1 (or a product of such).
    [[nodiscard]] bool is_unit() const;
    /// True when every factor is Constant.
    [[nodiscard]] bool is_constant() const;
    [[nodiscard]] bool needs_real_set() const;
    /// Points where the weight may jump or vanish (breakpoints, AbsPower centres).
    [[nodiscard]] std::vector<double> special_points() const;

    [[nodiscard]] double constant_value() const { return c_; }
    [[nodiscard]] double center() const { return x0_; }
    [[nodiscard]] double exponent() const { return p_; }
    [[nodiscard]] double scale() const { return s_; }
    [[nodiscard]] const std::vector<double>& breakpoints() const { return breaks_; }
    [[nodiscard]] const std::vector<double>& values() const { return values_; }
    [[nodiscard]] const std::vector<Weight1D>& factors() const { return factors_; }

    /// Multiply by a positive constant.
    [[nodiscard]] Weight1D scaled(double c) const;

    [[nodiscard]] std::string describe() const;

    friend Weight1D usc_regularize(const Weight1D& w, const CompactSet1D& set);

private:
    Weight1D() = default;

    Kind kind_ = Kind::Constant;
    double c_ = 1.0;
    double x0_ = 0.0;
    double p_ = 0.0;
    double s_ = 1.0;
    std::vector<double> breaks_;
    std::vector<double> values_;
    std::vector<Weight1D> factors_;
    bool regularized_ = false;
    std::vector<std::pair<double, double>> point_values_;  // usc overrides
};

/// Discrete probability (or finite) measure. When it is the equilibrium
/// measure of a set, `equilibrium_of` records that set so potentials can be
/// evaluated exactly.
struct QuadratureMeasure {
    std::vector<Complex> nodes;
    std::vector<double> weights;
    double total_mass = 0.0;
    std::shared_ptr<const CompactSet1D> equilibrium_of;
};

[[nodiscard]] double capacity(const CompactSet1D& set);

/// Default number of arcsine / circle nodes per interval.
inline constexpr int kDefaultNodes = 256;

[[nodiscard]] QuadratureMeasure equilibrium_measure(const CompactSet1D& set, int n_nodes = kDefaultNodes);

/// Exact logarithmic potential of the equilibrium measure, U(z) = int log|z-t| dmu_K(t).
[[nodiscard]] double equilibrium_potential(const CompactSet1D& set, Complex z);

/// Potential of a quadrature measure. Measures that know their set use the
/// exact form; otherwise the node sum with terms below 1e-14 clamped.
[[nodiscard]] double log_potential(const QuadratureMeasure& mu, Complex z);
[[nodiscard]] double log_potential_discrete(const QuadratureMeasure& mu, Complex z);

/// mu_K((-inf, x]) for real sets.
[[nodiscard]] double equilibrium_cdf(const CompactSet1D& set, double x);

/// int log w dmu_K (may be -inf).
[[nodiscard]] double log_weight_integral(const CompactSet1D& set, const Weight1D& w);

/// S(K, w) = exp int log w dmu_K.
[[nodiscard]] double szego_value(const CompactSet1D& set, const Weight1D& w);

/// Quadrature for w dmu_K. Without kinks the equilibrium rule is reused
/// (exact for polynomials up to degree 2 n_nodes - 1 on closed-form sets);
/// otherwise composite Gauss-Legendre panels in the angle variable, split at
/// breakpoints and graded towards AbsPower centres.
[[nodiscard]] QuadratureMeasure weighted_measure(const CompactSet1D& set, const Weight1D& w,
                                                 int n_nodes = kDefaultNodes);

/// int w dmu_K.
[[nodiscard]] double weight_mass(const CompactSet1D& set, const Weight1D& w, int n_nodes = kDefaultNodes);

/// Smallest usc majorant of w on the set. Throws UnboundedWeight for weights
/// that are unbounded on the set.
[[nodiscard]] Weight1D usc_regularize(const Weight1D& w, const CompactSet1D& set);

/// Integrate f against mu_K with adaptive Gauss-Kronrod on the natural angle
/// parametrization; `singular` lists points of the set where f may blow up
/// (they become panel boundaries).
[[nodiscard]] double integrate_equilibrium(const CompactSet1D& set, const std::function<double(Complex)>& f,
                                           std::span<const Complex> singular = {}, double tol = 1e-12);

/// Energy minimization used for generic unions, exposed for cross-checks on
/// arbitrary interval lists (including single intervals).
[[nodiscard]] CellEquilibrium solve_cell_equilibrium(const std::vector<Interval>& parts, int cells_per_interval);

/// Projected-gradient minimization of the same discrete energy; returns the
/// cell masses and energy. Used when the KKT solve yields negative masses.
[[nodiscard]] CellEquilibrium projected_gradient_equilibrium(const std::vector<Interval>& parts, int cells_per_interval,
                                                             int max_iter = 200000);

/// Chebyshev-clustered grid on the real set with `per_interval` points per
/// interval, endpoints included, plus the given extra points lying in the set.
[[nodiscard]] std::vector<double> chebyshev_grid(const CompactSet1D& set, int per_interval,
                                                 std::span<const double> extra = {});

}  // namespace widom
