#include "widom/sets1d.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "widom/errors.hpp"

namespace widom {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLogClamp = -32.236191301916641;  // log(1e-14)

std::vector<Interval> canonical_parts(std::vector<Interval> parts) {
    if (parts.empty()) throw InvalidInput("interval union: no intervals given");
    for (const auto& p : parts) {
        if (!(std::isfinite(p.lo) && std::isfinite(p.hi))) throw InvalidInput("interval union: non-finite endpoint");
        if (!(p.hi > p.lo)) throw NonPolarError("interval union: degenerate interval (a >= b) is polar");
    }
    std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (size_t i = 1; i < parts.size(); ++i)
        if (parts[i].lo <= parts[i - 1].hi) throw InvalidInput("interval union: intervals must be pairwise disjoint");
    return parts;
}

// Branch of log|w + sqrt(w^2 - 1)| that is >= 0: the Green function of [-1,1].
double green_unit_interval(Complex w) {
    const Complex s = std::sqrt(w - 1.0) * std::sqrt(w + 1.0);
    return std::max(std::log(std::abs(w + s)), std::log(std::abs(w - s)));
}

double arcsine_cdf(double t) {
    t = std::clamp(t, -1.0, 1.0);
    return 1.0 - std::acos(t) / kPi;
}

double invert_on_lap(const RealPolynomial& r, const PreimageLap& lap, double t) {
    double lo = lap.lo;
    double hi = lap.hi;
    const double sgn = lap.increasing ? 1.0 : -1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
        const double m = 0.5 * (lo + hi);
        if (sgn * (r(m) - t) < 0.0) lo = m;
        else hi = m;
    }
    double x = 0.5 * (lo + hi);
    const RealPolynomial dr = r.derivative();
    for (int it = 0; it < 2; ++it) {
        const double d = dr(x);
        if (d == 0.0) break;
        const double cand = x - (r(x) - t) / d;
        if (cand >= lap.lo && cand <= lap.hi && std::abs(r(cand) - t) < std::abs(r(x) - t)) x = cand;
    }
    return x;
}

// G with G'' = log|t| and G(0) = 0.
double g2(double t) {
    if (t == 0.0) return 0.0;
    return 0.5 * t * t * std::log(std::abs(t)) - 0.75 * t * t;
}

std::vector<Interval> graded_cells(const std::vector<Interval>& parts, int per_interval) {
    std::vector<Interval> cells;
    cells.reserve(parts.size() * static_cast<size_t>(per_interval));
    for (const auto& p : parts) {
        double prev = p.lo;
        for (int k = 1; k <= per_interval; ++k) {
            const double e = (k == per_interval)
                                 ? p.hi
                                 : p.lo + p.length() * 0.5 * (1.0 - std::cos(kPi * k / per_interval));
            cells.push_back({prev, e});
            prev = e;
        }
    }
    return cells;
}

Eigen::MatrixXd energy_matrix(const std::vector<Interval>& cells) {
    const auto m = static_cast<Eigen::Index>(cells.size());
    Eigen::MatrixXd e(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const Interval& ci = cells[static_cast<size_t>(i)];
        const double hi = ci.length();
        e(i, i) = -(std::log(hi) - 1.5);
        for (Eigen::Index j = i + 1; j < m; ++j) {
            const Interval& cj = cells[static_cast<size_t>(j)];
            const double hj = cj.length();
            const double delta = std::abs(0.5 * (ci.lo + ci.hi) - 0.5 * (cj.lo + cj.hi));
            double v;
            if (delta > 40.0 * std::max(hi, hj)) {
                v = -(std::log(delta) - (hi * hi + hj * hj) / (24.0 * delta * delta));
            } else {
                const double integral = g2(ci.hi - cj.lo) - g2(ci.lo - cj.lo) - g2(ci.hi - cj.hi) + g2(ci.lo - cj.hi);
                v = -integral / (hi * hj);
            }
            e(i, j) = v;
            e(j, i) = v;
        }
    }
    return e;
}

struct Rescale {
    double mid;
    double factor;  // scaled = (x - mid) * factor
};

Rescale rescale_for(const std::vector<Interval>& parts) {
    const double lo = parts.front().lo;
    const double hi = parts.back().hi;
    return {0.5 * (lo + hi), 1.5 / (hi - lo)};
}

std::vector<Interval> apply(const Rescale& r, const std::vector<Interval>& parts) {
    std::vector<Interval> out;
    out.reserve(parts.size());
    for (const auto& p : parts) out.push_back({(p.lo - r.mid) * r.factor, (p.hi - r.mid) * r.factor});
    return out;
}

Eigen::VectorXd project_simplex(Eigen::VectorXd v) {
    std::vector<double> u(v.begin(), v.end());
    std::sort(u.begin(), u.end(), std::greater<>());
    double css = 0.0;
    double theta = 0.0;
    for (size_t k = 0; k < u.size(); ++k) {
        css += u[k];
        const double t = (css - 1.0) / static_cast<double>(k + 1);
        if (u[k] - t > 0.0) theta = t;
    }
    return (v.array() - theta).max(0.0).matrix();
}

}  // namespace

CellEquilibrium projected_gradient_equilibrium(const std::vector<Interval>& parts_in, int cells_per_interval,
                                               int max_iter) {
    const auto parts = canonical_parts(parts_in);
    const Rescale rs = rescale_for(parts);
    const auto scaled_cells = graded_cells(apply(rs, parts), cells_per_interval);
    const Eigen::MatrixXd e = energy_matrix(scaled_cells);
    const auto m = e.rows();

    // Lipschitz constant of the gradient 2 E w via power iteration.
    Eigen::VectorXd v = Eigen::VectorXd::Ones(m).normalized();
    double lmax = 0.0;
    for (int it = 0; it < 200; ++it) {
        Eigen::VectorXd nv = e * v;
        lmax = nv.norm();
        v = nv / lmax;
    }
    const double step = 1.0 / (2.0 * lmax);

    Eigen::VectorXd w = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
    double energy = w.dot(e * w);
    int it = 0;
    for (; it < max_iter; ++it) {
        w = project_simplex(w - step * 2.0 * (e * w));
        const double ne = w.dot(e * w);
        const double dec = energy - ne;
        energy = ne;
        if (dec >= 0.0 && dec < 1e-10) break;
    }

    CellEquilibrium out;
    out.cells = graded_cells(parts, cells_per_interval);
    out.mass.assign(w.begin(), w.end());
    out.energy = energy + std::log(rs.factor);
    out.discrete_energy = out.energy;
    out.cells_per_interval = cells_per_interval;
    out.iterations = it + 1;
    return out;
}

namespace {

CellEquilibrium kkt_equilibrium(const std::vector<Interval>& parts, int cells_per_interval) {
    const Rescale rs = rescale_for(parts);
    const auto scaled_cells = graded_cells(apply(rs, parts), cells_per_interval);
    const Eigen::MatrixXd e = energy_matrix(scaled_cells);
    const auto m = e.rows();

    // On a set of diameter < 1 the log kernel is positive definite, so the
    // constrained minimizer solves E w = lambda 1 with sum w = 1.
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(m);
    Eigen::LLT<Eigen::MatrixXd> llt(e);
    Eigen::VectorXd v;
    if (llt.info() == Eigen::Success) v = llt.solve(ones);
    else v = e.partialPivLu().solve(ones);
    const double total = v.sum();

    CellEquilibrium out;
    out.cells = graded_cells(parts, cells_per_interval);
    out.cells_per_interval = cells_per_interval;
    bool positive = total > 0.0;
    for (Eigen::Index i = 0; i < m && positive; ++i) positive = v(i) > 0.0;
    if (!positive) return projected_gradient_equilibrium(parts, cells_per_interval);
    out.mass.resize(static_cast<size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) out.mass[static_cast<size_t>(i)] = v(i) / total;
    out.energy = 1.0 / total + std::log(rs.factor);
    out.discrete_energy = out.energy;
    return out;
}

}  // namespace

CellEquilibrium solve_cell_equilibrium(const std::vector<Interval>& parts_in, int cells_per_interval) {
    if (cells_per_interval < 4) throw InvalidInput("energy minimization: need at least 4 cells per interval");
    const auto parts = canonical_parts(parts_in);
    CellEquilibrium fine = kkt_equilibrium(parts, cells_per_interval);
    // The discrete energy converges like N^-2; one halving step removes that term.
    if (cells_per_interval >= 8) {
        const CellEquilibrium coarse = kkt_equilibrium(parts, cells_per_interval / 2);
        const double ratio = std::pow(static_cast<double>(cells_per_interval) / (cells_per_interval / 2), 2);
        fine.energy = (ratio * fine.discrete_energy - coarse.discrete_energy) / (ratio - 1.0);
    }
    return fine;
}

// ---------------------------------------------------------------------------
// Equilibrium density of a union of intervals
//
// On K = union of [l_j, r_j], j = 0..g, the equilibrium density is
// |q(t)| / (pi sqrt|R(t)|) with R = prod (t - l_j)(t - r_j) and q monic of
// degree g, fixed by requiring q / sqrt|R| to integrate to zero over each gap.

struct UnionDensity {
    double mid = 0.0;
    double factor = 1.0;          // scaled = (x - mid) * factor
    std::vector<Interval> parts;  // scaled
    std::vector<double> q;        // monic, ascending powers, scaled variable
    double mass = 1.0;
};

namespace {

// prod |t - e|^{-1/2} over all endpoints except those of [a, b].
double other_factor(const UnionDensity& d, double t, double a, double b) {
    double v = 1.0;
    for (const auto& p : d.parts)
        for (double e : {p.lo, p.hi})
            if (e != a && e != b) v /= std::sqrt(std::abs(t - e));
    return v;
}

double eval_q(const std::vector<double>& q, double t) {
    double v = 0.0;
    for (auto it = q.rbegin(); it != q.rend(); ++it) v = v * t + *it;
    return v;
}

// Density in the angle variable t = m + h cos(theta) on a scaled part.
double angle_density(const UnionDensity& d, const Interval& p, double theta) {
    const double t = 0.5 * (p.lo + p.hi) + 0.5 * p.length() * std::cos(theta);
    return std::abs(eval_q(d.q, t)) * other_factor(d, t, p.lo, p.hi) / (kPi * d.mass);
}

std::shared_ptr<const UnionDensity> build_union_density(const std::vector<Interval>& parts) {
    constexpr int kNodes = 512;
    auto d = std::make_shared<UnionDensity>();
    const Rescale rs = rescale_for(parts);
    d->mid = rs.mid;
    d->factor = rs.factor;
    d->parts = apply(rs, parts);
    const auto g = static_cast<Eigen::Index>(parts.size()) - 1;

    // Gauss-Chebyshev in the angle variable absorbs both endpoint singularities.
    auto chebyshev_integral = [&](double a, double b, const std::function<double(double)>& f) {
        double acc = 0.0;
        for (int i = 0; i < kNodes; ++i) {
            const double t = 0.5 * (a + b) + 0.5 * (b - a) * std::cos((i + 0.5) * kPi / kNodes);
            acc += f(t) * other_factor(*d, t, a, b);
        }
        return acc * kPi / kNodes;
    };
    Eigen::MatrixXd a(g, g);
    Eigen::VectorXd rhs(g);
    for (Eigen::Index j = 0; j < g; ++j) {
        const double lo = d->parts[static_cast<size_t>(j)].hi;
        const double hi = d->parts[static_cast<size_t>(j + 1)].lo;
        for (Eigen::Index k = 0; k < g; ++k)
            a(j, k) = chebyshev_integral(lo, hi, [k](double t) { return std::pow(t, static_cast<double>(k)); });
        rhs(j) = -chebyshev_integral(lo, hi, [g](double t) { return std::pow(t, static_cast<double>(g)); });
    }
    const Eigen::VectorXd c = g > 0 ? Eigen::VectorXd(a.fullPivLu().solve(rhs)) : Eigen::VectorXd();
    d->q.assign(c.begin(), c.end());
    d->q.push_back(1.0);

    double mass = 0.0;
    for (const auto& p : d->parts)
        mass += chebyshev_integral(p.lo, p.hi, [&](double t) { return std::abs(eval_q(d->q, t)); }) / kPi;
    d->mass = mass;
    return d;
}

// Mass of the part p (scaled) lying left of the angle theta's abscissa.
double angle_mass(const UnionDensity& d, const Interval& p, double theta) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    return GK::integrate([&](double t) { return angle_density(d, p, t); }, theta, kPi, 15, 1e-13);
}

double union_potential(const UnionDensity& d, Complex z) {
    static thread_local boost::math::quadrature::tanh_sinh<double> ts;
    const Complex w = (z - d.mid) * d.factor;
    double u = 0.0;
    for (const auto& p : d.parts) {
        const double m = 0.5 * (p.lo + p.hi);
        const double h = 0.5 * p.length();
        if (w.imag() == 0.0 && w.real() >= p.lo && w.real() <= p.hi) {
            // w = m + h cos(t0), so w - t(theta) = 2h sin((theta + t0)/2) sin((t0 - theta)/2);
            // `gap` is theta - t0, taken from the integrator's endpoint distance near t0.
            const double t0 = std::acos(std::clamp((w.real() - m) / h, -1.0, 1.0));
            auto kernel = [&](double theta, double gap) {
                const double v = std::log(std::abs(2.0 * h * std::sin(0.5 * (theta + t0)) * std::sin(0.5 * gap))) *
                                 angle_density(d, p, theta);
                return std::isfinite(v) ? v : 0.0;
            };
            if (t0 > 0.0)
                u += ts.integrate([&](double x, double xc) { return kernel(x, xc > 0.0 ? -xc : x - t0); }, 0.0, t0, 1e-14);
            if (t0 < kPi)
                u += ts.integrate([&](double x, double xc) { return kernel(x, xc < 0.0 ? -xc : x - t0); }, t0, kPi, 1e-14);
            continue;
        }
        auto f = [&](double theta) {
            // Measured from the nearer endpoint to avoid cancellation there.
            const double s = std::sin(0.5 * theta);
            const double c = std::cos(0.5 * theta);
            const Complex diff = theta < 0.5 * kPi ? (w - p.hi) + 2.0 * h * s * s : (w - p.lo) - 2.0 * h * c * c;
            const double v = std::log(std::abs(diff)) * angle_density(d, p, theta);
            return std::isfinite(v) ? v : 0.0;
        };
        const double cut = std::acos(std::clamp((w.real() - m) / h, -1.0, 1.0));
        if (cut > 0.0 && cut < kPi) u += ts.integrate(f, 0.0, cut, 1e-14) + ts.integrate(f, cut, kPi, 1e-14);
        else u += ts.integrate(f, 0.0, kPi, 1e-14);
    }
    return u - std::log(d.factor);
}

}  // namespace

// ---------------------------------------------------------------------------
// CompactSet1D

CompactSet1D CompactSet1D::intervals(std::vector<Interval> parts, int cells_per_interval) {
    CompactSet1D s;
    s.kind_ = Kind::Intervals;
    s.parts_ = canonical_parts(std::move(parts));
    if (s.parts_.size() > 1) s.solve_generic(cells_per_interval);
    return s;
}

CompactSet1D CompactSet1D::unit_circle() {
    CompactSet1D s;
    s.kind_ = Kind::UnitCircle;
    s.center_ = 0.0;
    s.radius_ = 1.0;
    return s;
}

CompactSet1D CompactSet1D::circle(Complex center, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw NonPolarError("circle: radius must be positive");
    CompactSet1D s;
    s.kind_ = Kind::Circle;
    s.center_ = center;
    s.radius_ = radius;
    return s;
}

CompactSet1D CompactSet1D::preimage(RealPolynomial generator, int cells_per_interval) {
    if (generator.degree() < 1) throw InvalidInput("preimage: generator must have degree >= 1");
    CompactSet1D s;
    s.kind_ = Kind::Preimage;
    s.generator_ = std::move(generator);
    const RealPolynomial& r = s.generator_;
    const int m = r.degree();

    double bound = 0.0;
    for (int k = 0; k < m; ++k) {
        const double ck = std::abs(r.coeff(k)) + (k == 0 ? 1.0 : 0.0);
        bound = std::max(bound, ck / std::abs(r.leading()));
    }
    bound = 1.0 + bound;

    std::vector<double> pts;
    for (double shift : {1.0, -1.0}) {
        const RealPolynomial q = r - RealPolynomial({shift});
        for (double x : real_roots_in(q, -bound, bound, 1e-13)) pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    std::vector<Interval> segs;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1] - pts[i] <= 1e-13) continue;
        const double mid = 0.5 * (pts[i] + pts[i + 1]);
        if (std::abs(r(mid)) <= 1.0) {
            if (!segs.empty() && pts[i] - segs.back().hi <= 1e-12) segs.back().hi = pts[i + 1];
            else segs.push_back({pts[i], pts[i + 1]});
        }
    }
    if (segs.empty()) throw NonPolarError("preimage: {|R| <= 1} contains no interval (polar set)");
    s.parts_ = segs;

    // Laps: split at interior critical points; the set is a full inverse
    // image iff there are exactly m laps, each sweeping [-1, 1].
    std::vector<PreimageLap> laps;
    const RealPolynomial dr = r.derivative();
    bool full = true;
    for (const auto& seg : segs) {
        std::vector<double> knots{seg.lo};
        if (dr.degree() >= 1)
            for (double c : real_roots_in(dr, seg.lo, seg.hi, 1e-14))
                if (c - seg.lo > 1e-12 && seg.hi - c > 1e-12) knots.push_back(c);
        knots.push_back(seg.hi);
        for (size_t k = 0; k + 1 < knots.size(); ++k) {
            const double ra = r(knots[k]);
            const double rb = r(knots[k + 1]);
            if (std::abs(std::abs(ra) - 1.0) > 1e-9 || std::abs(std::abs(rb) - 1.0) > 1e-9 || ra * rb > 0.0)
                full = false;
            laps.push_back({knots[k], knots[k + 1], rb > ra});
        }
    }
    if (full && static_cast<int>(laps.size()) == m) s.laps_ = std::move(laps);
    else s.solve_generic(cells_per_interval);
    return s;
}

void CompactSet1D::solve_generic(int cells_per_interval) {
    cells_ = std::make_shared<const CellEquilibrium>(solve_cell_equilibrium(parts_, cells_per_interval));
    density_ = build_union_density(parts_);
}

double CompactSet1D::max_modulus() const {
    if (is_circle()) return std::abs(center_) + radius_;
    return std::max(std::abs(parts_.front().lo), std::abs(parts_.back().hi));
}

bool CompactSet1D::contains(Complex z, double tol) const {
    if (is_circle()) return std::abs(std::abs(z - center_) - radius_) <= tol;
    if (std::abs(z.imag()) > tol) return false;
    for (const auto& p : parts_)
        if (z.real() >= p.lo - tol && z.real() <= p.hi + tol) return true;
    return false;
}

std::string CompactSet1D::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
        case Kind::UnitCircle: os << "unit_circle"; break;
        case Kind::Circle: os << "circle(" << center_.real() << "," << center_.imag() << ";" << radius_ << ")"; break;
        case Kind::Preimage: {
            os << "preimage[";
            for (size_t k = 0; k < generator_.coeffs().size(); ++k) os << (k ? "," : "") << generator_.coeffs()[k];
            os << "]";
            break;
        }
        case Kind::Intervals: {
            for (size_t k = 0; k < parts_.size(); ++k) os << (k ? "U" : "") << "[" << parts_[k].lo << "," << parts_[k].hi << "]";
            break;
        }
    }
    return os.str();
}

bool operator==(const CompactSet1D& a, const CompactSet1D& b) {
    return a.kind_ == b.kind_ && a.parts_ == b.parts_ && a.center_ == b.center_ && a.radius_ == b.radius_ &&
           a.generator_ == b.generator_;
}

// ---------------------------------------------------------------------------
// Weight1D

Weight1D Weight1D::constant(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidInput("constant weight must be positive");
    Weight1D w;
    w.kind_ = Kind::Constant;
    w.c_ = c;
    return w;
}

Weight1D Weight1D::abs_power(double x0, double p, double s) {
    if (!(p > -1.0)) throw InvalidInput("abs_power weight: exponent must exceed -1 (log-integrability)");
    if (!(s > 0.0)) throw InvalidInput("abs_power weight: scale must be positive");
    Weight1D w;
    w.kind_ = Kind::AbsPower;
    w.x0_ = x0;
    w.p_ = p;
    w.s_ = s;
    return w;
}

Weight1D Weight1D::piecewise_constant(std::vector<double> breakpoints, std::vector<double> values) {
    if (values.size() != breakpoints.size() + 1)
        throw InvalidInput("piecewise weight: need exactly one more value than breakpoints");
    for (size_t k = 1; k < breakpoints.size(); ++k)
        if (!(breakpoints[k] > breakpoints[k - 1])) throw InvalidInput("piecewise weight: breakpoints must ascend");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput("piecewise weight: values must be positive");
    Weight1D w;
    w.kind_ = Kind::PiecewiseConstant;
    w.breaks_ = std::move(breakpoints);
    w.values_ = std::move(values);
    return w;
}

Weight1D Weight1D::product(std::vector<Weight1D> factors) {
    if (factors.empty()) return constant(1.0);
    Weight1D w;
    w.kind_ = Kind::Product;
    w.factors_ = std::move(factors);
    return w;
}

double Weight1D::operator()(Complex z) const {
    if (regularized_ && z.imag() == 0.0) {
        for (const auto& [x, v] : point_values_)
            if (x == z.real()) return v;
    }
    switch (kind_) {
        case Kind::Constant: return c_;
        case Kind::AbsPower: {
            const double d = std::abs(z - x0_);
            if (d == 0.0) return p_ > 0.0 ? 0.0 : (p_ == 0.0 ? s_ : std::numeric_limits<double>::infinity());
            return s_ * std::pow(d, p_);
        }
        case Kind::PiecewiseConstant: {
            const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), z.real());
            return values_[static_cast<size_t>(it - breaks_.begin())];
        }
        case Kind::Product: {
            double v = 1.0;
            for (const auto& f : factors_) v *= f(z);
            return v;
        }
    }
    return 0.0;
}

double Weight1D::left_limit(double x) const {
    switch (kind_) {
        case Kind::PiecewiseConstant: {
            const auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x);
            return values_[static_cast<size_t>(it - breaks_.begin())];
        }
        case Kind::Product: {
            double v = 1.0;
            for (const auto& f : factors_) v *= f.left_limit(x);
            return v;
        }
        default: {
            Weight1D raw = *this;
            raw.regularized_ = false;
            return raw(Complex(x, 0.0));
        }
    }
}

double Weight1D::right_limit(double x) const {
    switch (kind_) {
        case Kind::PiecewiseConstant: {
            const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
            return values_[static_cast<size_t>(it - breaks_.begin())];
        }
        case Kind::Product: {
            double v = 1.0;
            for (const auto& f : factors_) v *= f.right_limit(x);
            return v;
        }
        default: {
            Weight1D raw = *this;
            raw.regularized_ = false;
            return raw(Complex(x, 0.0));
        }
    }
}

bool Weight1D::bounded() const {
    switch (kind_) {
        case Kind::AbsPower: return p_ >= 0.0;
        case Kind::Product:
            return std::all_of(factors_.begin(), factors_.end(), [](const Weight1D& f) { return f.bounded(); });
        default: return true;
    }
}

bool Weight1D::is_unit() const {
    switch (kind_) {
        case Kind::Constant: return c_ == 1.0;
        case Kind::Product:
            return std::all_of(factors_.begin(), factors_.end(), [](const Weight1D& f) { return f.is_unit(); });
        default: return false;
    }
}

bool Weight1D::is_constant() const {
    switch (kind_) {
        case Kind::Constant: return true;
        case Kind::Product:
            return std::all_of(factors_.begin(), factors_.end(), [](const Weight1D& f) { return f.is_constant(); });
        default: return false;
    }
}

bool Weight1D::needs_real_set() const {
    switch (kind_) {
        case Kind::PiecewiseConstant: return true;
        case Kind::Product:
            return std::any_of(factors_.begin(), factors_.end(), [](const Weight1D& f) { return f.needs_real_set(); });
        default: return false;
    }
}

std::vector<double> Weight1D::special_points() const {
    std::vector<double> out;
    switch (kind_) {
        case Kind::AbsPower: out.push_back(x0_); break;
        case Kind::PiecewiseConstant: out = breaks_; break;
        case Kind::Product:
            for (const auto& f : factors_) {
                auto sp = f.special_points();
                out.insert(out.end(), sp.begin(), sp.end());
            }
            break;
        default: break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Weight1D Weight1D::scaled(double c) const {
    if (!(c > 0.0)) throw InvalidInput("weight scaling must be positive");
    Weight1D out = product({*this, constant(c)});
    if (regularized_) {
        out.regularized_ = true;
        out.point_values_ = point_values_;
        for (auto& [x, v] : out.point_values_) v *= c;
    }
    return out;
}

std::string Weight1D::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
        case Kind::Constant: os << "const(" << c_ << ")"; break;
        case Kind::AbsPower: os << "abs_power(x0=" << x0_ << ",p=" << p_ << ",s=" << s_ << ")"; break;
        case Kind::PiecewiseConstant: {
            os << "piecewise(";
            for (size_t k = 0; k < values_.size(); ++k) {
                os << values_[k];
                if (k < breaks_.size()) os << "|" << breaks_[k] << "|";
            }
            os << ")";
            break;
        }
        case Kind::Product: {
            os << "product(";
            for (size_t k = 0; k < factors_.size(); ++k) os << (k ? "*" : "") << factors_[k].describe();
            os << ")";
            break;
        }
    }
    return os.str();
}

Weight1D usc_regularize(const Weight1D& w, const CompactSet1D& set) {
    if (!w.bounded()) throw UnboundedWeight("weight is unbounded on the set; sup-norm problems need a bounded weight");
    Weight1D out = w;
    out.regularized_ = true;
    out.point_values_.clear();
    if (set.is_circle()) {
        if (w.needs_real_set()) throw InvalidInput("piecewise weights are only defined on real sets");
        return out;
    }
    for (double x : w.special_points()) {
        bool left_ok = false;
        bool right_ok = false;
        bool inside = false;
        for (const auto& p : set.parts()) {
            if (x >= p.lo && x <= p.hi) {
                inside = true;
                left_ok = x > p.lo;
                right_ok = x < p.hi;
            }
        }
        if (!inside) continue;
        Weight1D raw = w;
        raw.regularized_ = false;
        double v = raw(Complex(x, 0.0));
        if (left_ok) v = std::max(v, w.left_limit(x));
        if (right_ok) v = std::max(v, w.right_limit(x));
        out.point_values_.emplace_back(x, v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Capacity, equilibrium measure, potentials

double capacity(const CompactSet1D& set) {
    if (set.is_circle()) return set.radius();
    if (const auto* ce = set.cell_equilibrium()) return std::exp(-ce->energy);
    if (set.kind() == CompactSet1D::Kind::Preimage) {
        const RealPolynomial& r = set.generator();
        return std::pow(2.0 * std::abs(r.leading()), -1.0 / r.degree());
    }
    return set.parts().front().length() / 4.0;
}

QuadratureMeasure equilibrium_measure(const CompactSet1D& set, int n_nodes) {
    if (n_nodes < 8) throw InvalidInput("equilibrium_measure: need at least 8 nodes");
    QuadratureMeasure mu;
    mu.equilibrium_of = std::make_shared<const CompactSet1D>(set);
    if (set.is_circle()) {
        for (int k = 0; k < n_nodes; ++k) {
            const double th = 2.0 * kPi * (k + 0.5) / n_nodes;
            mu.nodes.push_back(set.center() + set.radius() * std::polar(1.0, th));
            mu.weights.push_back(1.0 / n_nodes);
        }
    } else if (const auto* d = set.union_density()) {
        // Gauss-Chebyshev in the angle variable of each part, weighted by the density.
        double total = 0.0;
        for (size_t j = 0; j < set.parts().size(); ++j) {
            const Interval& p = set.parts()[j];
            for (int k = 1; k <= n_nodes; ++k) {
                const double th = (2.0 * k - 1.0) * kPi / (2.0 * n_nodes);
                mu.nodes.emplace_back(0.5 * (p.lo + p.hi) + 0.5 * p.length() * std::cos(th), 0.0);
                mu.weights.push_back(kPi / n_nodes * angle_density(*d, d->parts[j], th));
                total += mu.weights.back();
            }
        }
        for (double& w : mu.weights) w /= total;
    } else if (set.is_full_preimage()) {
        const auto& laps = set.laps();
        const double w = 1.0 / (static_cast<double>(laps.size()) * n_nodes);
        for (int k = 1; k <= n_nodes; ++k) {
            const double t = std::cos((2.0 * k - 1.0) * kPi / (2.0 * n_nodes));
            for (const auto& lap : laps) {
                mu.nodes.emplace_back(invert_on_lap(set.generator(), lap, t), 0.0);
                mu.weights.push_back(w);
            }
        }
    } else {
        const Interval p = set.parts().front();
        const double mid = 0.5 * (p.lo + p.hi);
        const double half = 0.5 * p.length();
        for (int k = 1; k <= n_nodes; ++k) {
            mu.nodes.emplace_back(mid + half * std::cos((2.0 * k - 1.0) * kPi / (2.0 * n_nodes)), 0.0);
            mu.weights.push_back(1.0 / n_nodes);
        }
    }
    mu.total_mass = 0.0;
    for (double w : mu.weights) mu.total_mass += w;
    return mu;
}

double equilibrium_potential(const CompactSet1D& set, Complex z) {
    if (set.is_circle()) return std::log(std::max(set.radius(), std::abs(z - set.center())));
    if (const auto* d = set.union_density()) return union_potential(*d, z);
    const double log_cap = std::log(capacity(set));
    if (set.is_full_preimage()) {
        const RealPolynomial& r = set.generator();
        return log_cap + green_unit_interval(r(z)) / r.degree();
    }
    const Interval p = set.parts().front();
    const Complex w = (2.0 * z - (p.lo + p.hi)) / p.length();
    return log_cap + green_unit_interval(w);
}

double log_potential_discrete(const QuadratureMeasure& mu, Complex z) {
    double u = 0.0;
    for (size_t k = 0; k < mu.nodes.size(); ++k) {
        const double d = std::abs(z - mu.nodes[k]);
        u += mu.weights[k] * (d < 1e-14 ? kLogClamp : std::log(d));
    }
    return u;
}

double log_potential(const QuadratureMeasure& mu, Complex z) {
    if (mu.equilibrium_of) return equilibrium_potential(*mu.equilibrium_of, z);
    return log_potential_discrete(mu, z);
}

double equilibrium_cdf(const CompactSet1D& set, double x) {
    if (set.is_circle()) throw InvalidInput("equilibrium_cdf: only defined for real sets");
    if (const auto* d = set.union_density()) {
        double acc = 0.0;
        for (size_t j = 0; j < set.parts().size(); ++j) {
            const Interval& p = set.parts()[j];
            if (x <= p.lo) break;
            const double th = x >= p.hi ? 0.0 : std::acos(std::clamp((2.0 * x - p.lo - p.hi) / p.length(), -1.0, 1.0));
            acc += angle_mass(*d, d->parts[j], th);
        }
        return std::clamp(acc, 0.0, 1.0);
    }
    if (set.is_full_preimage()) {
        const auto& laps = set.laps();
        const double m = static_cast<double>(laps.size());
        double acc = 0.0;
        for (const auto& lap : laps) {
            if (x >= lap.hi) acc += 1.0 / m;
            else if (x > lap.lo) {
                const double f = arcsine_cdf(set.generator()(x));
                acc += (lap.increasing ? f : 1.0 - f) / m;
            }
        }
        return std::min(acc, 1.0);
    }
    const Interval p = set.parts().front();
    return arcsine_cdf((2.0 * x - p.lo - p.hi) / p.length());
}

double log_weight_integral(const CompactSet1D& set, const Weight1D& w) {
    switch (w.kind()) {
        case Weight1D::Kind::Constant: return std::log(w.constant_value());
        case Weight1D::Kind::AbsPower:
            return std::log(w.scale()) + w.exponent() * equilibrium_potential(set, Complex(w.center(), 0.0));
        case Weight1D::Kind::PiecewiseConstant: {
            if (set.is_circle()) throw InvalidInput("piecewise weights are only defined on real sets");
            const auto& br = w.breakpoints();
            const auto& vals = w.values();
            double acc = 0.0;
            double prev = 0.0;
            for (size_t k = 0; k < vals.size(); ++k) {
                const double cur = (k < br.size()) ? equilibrium_cdf(set, br[k]) : 1.0;
                const double mass = cur - prev;
                if (mass > 0.0) acc += mass * std::log(vals[k]);
                prev = cur;
            }
            return acc;
        }
        case Weight1D::Kind::Product: {
            double acc = 0.0;
            for (const auto& f : w.factors()) acc += log_weight_integral(set, f);
            return acc;
        }
    }
    return 0.0;
}

double szego_value(const CompactSet1D& set, const Weight1D& w) {
    if (w.needs_real_set() && set.is_circle()) throw InvalidInput("piecewise weights are only defined on real sets");
    return std::exp(log_weight_integral(set, w));
}

namespace {

// Gauss-Legendre rule of order 20 on [lo, hi], appended as (parameter, weight).
void gl_panel(double lo, double hi, std::vector<std::pair<double, double>>& out) {
    using GL = boost::math::quadrature::gauss<double, 20>;
    const auto& x = GL::abscissa();
    const auto& wt = GL::weights();
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (size_t k = 0; k < x.size(); ++k) {
        if (x[k] == 0.0) {
            out.emplace_back(mid, half * wt[k]);
            continue;
        }
        out.emplace_back(mid - half * x[k], half * wt[k]);
        out.emplace_back(mid + half * x[k], half * wt[k]);
    }
}

// Panels refined geometrically towards `at` (one of lo, hi).
void graded_panels(double lo, double hi, double at, double exponent, std::vector<std::pair<double, double>>& out) {
    constexpr double sigma = 0.15;
    const int levels = std::clamp(static_cast<int>(std::ceil(37.0 / ((1.0 + exponent) * 1.897))), 4, 400);
    double len = hi - lo;
    const double dir = (at == lo) ? 1.0 : -1.0;
    for (int k = 0; k < levels; ++k) {
        const double near = len * sigma;
        const double a = at + dir * near;
        const double b = at + dir * len;
        gl_panel(std::min(a, b), std::max(a, b), out);
        len = near;
    }
}

// Most negative AbsPower exponent in the weight (0 when none is negative),
// and whether any AbsPower factor is present.
double singular_exponent(const Weight1D& w) {
    switch (w.kind()) {
        case Weight1D::Kind::AbsPower: return std::min(0.0, w.exponent());
        case Weight1D::Kind::Product: {
            double e = 0.0;
            for (const auto& f : w.factors()) e = std::min(e, singular_exponent(f));
            return e;
        }
        default: return 0.0;
    }
}

bool has_abs_power(const Weight1D& w) {
    if (w.kind() == Weight1D::Kind::AbsPower) return true;
    if (w.kind() == Weight1D::Kind::Product)
        return std::any_of(w.factors().begin(), w.factors().end(), has_abs_power);
    return false;
}

// Rule on [a, b] for a parameter interval; `cuts` are interior kinks of the
// integrand. Kinks coming from AbsPower factors get graded panels.
std::vector<std::pair<double, double>> panel_rule(double a, double b, int n_nodes, std::vector<double> cuts,
                                                  bool grade, double exponent, bool endpoint_kinks = false) {
    const int base = std::max(1, (n_nodes + 19) / 20);
    std::vector<double> knots;
    for (int k = 0; k <= base; ++k) knots.push_back(a + (b - a) * k / base);
    std::vector<double> singular;
    for (double c : cuts) {
        if (c < a || c > b) continue;
        knots.push_back(c);
        singular.push_back(c);
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    auto is_sing = [&](double x) {
        if (!endpoint_kinks && (x == a || x == b) && std::find(singular.begin(), singular.end(), x) == singular.end())
            return false;
        return std::find(singular.begin(), singular.end(), x) != singular.end();
    };
    std::vector<std::pair<double, double>> out;
    for (size_t k = 0; k + 1 < knots.size(); ++k) {
        const double lo = knots[k];
        const double hi = knots[k + 1];
        const bool sl = grade && is_sing(lo);
        const bool sh = grade && is_sing(hi);
        if (sl && sh) {
            const double mid = 0.5 * (lo + hi);
            graded_panels(lo, mid, lo, exponent, out);
            graded_panels(mid, hi, hi, exponent, out);
        } else if (sl) {
            graded_panels(lo, hi, lo, exponent, out);
        } else if (sh) {
            graded_panels(lo, hi, hi, exponent, out);
        } else {
            gl_panel(lo, hi, out);
        }
    }
    return out;
}

}  // namespace

QuadratureMeasure weighted_measure(const CompactSet1D& set, const Weight1D& w, int n_nodes) {
    if (w.needs_real_set() && set.is_circle()) throw InvalidInput("piecewise weights are only defined on real sets");
    const auto special = w.special_points();
    QuadratureMeasure mu;
    auto finish = [&]() {
        mu.total_mass = 0.0;
        for (double x : mu.weights) mu.total_mass += x;
        if (!(mu.total_mass > 0.0)) throw NonPolarError("weight vanishes on the set");
        return mu;
    };
    if (special.empty()) {
        mu = equilibrium_measure(set, n_nodes);
        mu.equilibrium_of.reset();
        for (size_t k = 0; k < mu.nodes.size(); ++k) mu.weights[k] *= w(mu.nodes[k]);
        return finish();
    }
    const bool grade = has_abs_power(w);
    const double expo = singular_exponent(w);

    if (set.is_circle()) {
        const Complex c = set.center();
        const double r = set.radius();
        std::vector<double> cuts;
        for (double x : special) {
            if (std::abs(std::abs(Complex(x, 0.0) - c) - r) <= 1e-12 * r) {
                double th = std::arg(Complex(x, 0.0) - c);
                if (th < 0) th += 2.0 * kPi;
                cuts.push_back(th);
            }
        }
        // Rotate so that a singular angle sits at both ends of [0, 2 pi].
        const double shift = cuts.empty() ? 0.0 : cuts.front();
        for (auto& t : cuts) t = std::fmod(t - shift + 2.0 * kPi, 2.0 * kPi);
        if (!cuts.empty()) cuts.push_back(2.0 * kPi);
        for (const auto& [th, wt] : panel_rule(0.0, 2.0 * kPi, n_nodes, cuts, grade, expo, true)) {
            const Complex z = c + r * std::polar(1.0, th + shift);
            mu.nodes.push_back(z);
            mu.weights.push_back(wt / (2.0 * kPi) * w(z));
        }
        return finish();
    }

    auto check_endpoint = [&](double x, double lo, double hi) {
        if ((x == lo || x == hi) && expo <= -0.5)
            throw InvalidInput("weight singularity at a set endpoint is not integrable against the equilibrium measure");
    };

    if (const auto* d = set.union_density()) {
        for (size_t j = 0; j < set.parts().size(); ++j) {
            const Interval& p = set.parts()[j];
            const double mid = 0.5 * (p.lo + p.hi);
            const double half = 0.5 * p.length();
            std::vector<double> cuts;
            double e = expo;
            for (double x : special) {
                if (x < p.lo || x > p.hi) continue;
                check_endpoint(x, p.lo, p.hi);
                if (x == p.lo || x == p.hi) e = 2.0 * expo;
                cuts.push_back(std::acos(std::clamp((x - mid) / half, -1.0, 1.0)));
            }
            for (const auto& [th, wt] : panel_rule(0.0, kPi, std::max(20, n_nodes), cuts, grade, e)) {
                const double x = mid + half * std::cos(th);
                mu.nodes.emplace_back(x, 0.0);
                mu.weights.push_back(wt * angle_density(*d, d->parts[j], th) * w(x));
            }
        }
        return finish();
    }

    if (set.is_full_preimage()) {
        const RealPolynomial& r = set.generator();
        const auto& laps = set.laps();
        const double scale = 1.0 / (kPi * static_cast<double>(laps.size()));
        const int per_lap = std::max(20, n_nodes);
        for (const auto& lap : laps) {
            std::vector<double> cuts;
            double e = expo;
            for (double x : special) {
                if (x < lap.lo || x > lap.hi) continue;
                check_endpoint(x, set.parts().front().lo, set.parts().back().hi);
                const double rx = std::clamp(r(x), -1.0, 1.0);
                if (std::abs(rx) == 1.0) e = 2.0 * expo;  // |x - x0|^p behaves like theta^{2p} there
                cuts.push_back(std::acos(rx));
            }
            for (const auto& [th, wt] : panel_rule(0.0, kPi, per_lap, cuts, grade, e)) {
                const double x = invert_on_lap(r, lap, std::cos(th));
                mu.nodes.emplace_back(x, 0.0);
                mu.weights.push_back(scale * wt * w(x));
            }
        }
        return finish();
    }

    const Interval p = set.parts().front();
    const double mid = 0.5 * (p.lo + p.hi);
    const double half = 0.5 * p.length();
    std::vector<double> cuts;
    double e = expo;
    for (double x : special) {
        if (x < p.lo || x > p.hi) continue;
        check_endpoint(x, p.lo, p.hi);
        if (x == p.lo || x == p.hi) e = 2.0 * expo;
        cuts.push_back(std::acos(std::clamp((x - mid) / half, -1.0, 1.0)));
    }
    for (const auto& [th, wt] : panel_rule(0.0, kPi, std::max(20, n_nodes), cuts, grade, e)) {
        const double x = mid + half * std::cos(th);
        mu.nodes.emplace_back(x, 0.0);
        mu.weights.push_back(wt / kPi * w(x));
    }
    return finish();
}

double weight_mass(const CompactSet1D& set, const Weight1D& w, int n_nodes) {
    return weighted_measure(set, w, n_nodes).total_mass;
}

double integrate_equilibrium(const CompactSet1D& set, const std::function<double(Complex)>& f,
                             std::span<const Complex> singular, double tol) {
    // Panels are integrated on [0, 1]; the library's error floor misbehaves on
    // very short intervals. Panels ending at a singular point use tanh-sinh.
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    static thread_local boost::math::quadrature::tanh_sinh<double> ts;
    auto panels = [&](const std::function<double(double)>& g, std::vector<double> cuts, double a, double b) {
        // Knots closer than `merge` collapse into one; the merged knot is
        // singular when any of its members is.
        const double merge = 1e-10 * (b - a);
        std::vector<std::pair<double, bool>> raw{{a, false}, {b, false}};
        for (double c : cuts)
            if (c >= a && c <= b) raw.emplace_back(c, true);
        std::sort(raw.begin(), raw.end());
        std::vector<std::pair<double, bool>> knots;
        for (const auto& [x, sing] : raw) {
            if (!knots.empty() && x - knots.back().first <= merge) knots.back().second = knots.back().second || sing;
            else knots.emplace_back(x, sing);
        }
        knots.front().first = a;
        knots.back().first = b;
        double acc = 0.0;
        for (size_t k = 0; k + 1 < knots.size(); ++k) {
            const double lo = knots[k].first;
            const double hi = knots[k + 1].first;
            const double h = hi - lo;
            // The mapped integrand is shifted by 1 so the relative stopping
            // rule of both integrators also bounds the absolute error.
            if (knots[k].second || knots[k + 1].second) {
                // Abscissae that round onto the singular point carry negligible weight.
                auto mapped = [&](double, double tc) {
                    const double v = g(tc < 0.0 ? lo - h * tc : hi - h * tc);
                    return 1.0 + (std::isfinite(v) ? v : 0.0);
                };
                acc += h * (ts.integrate(mapped, 0.0, 1.0, tol) - 1.0);
            } else {
                auto mapped = [&](double t) { return 1.0 + g(lo + h * t); };
                acc += h * (GK::integrate(mapped, 0.0, 1.0, 15, tol) - 1.0);
            }
        }
        return acc;
    };

    if (set.is_circle()) {
        const Complex c = set.center();
        const double r = set.radius();
        std::vector<double> cuts;
        for (const Complex& s : singular) {
            if (std::abs(std::abs(s - c) - r) <= 1e-9 * r) {
                double th = std::arg(s - c);
                if (th < 0) th += 2.0 * kPi;
                cuts.push_back(th);
            }
        }
        // Rotate so a cut (if any) sits at 0; the integrand is periodic.
        const double shift = cuts.empty() ? 0.0 : cuts.front();
        for (auto& t : cuts) t = std::fmod(t - shift + 2.0 * kPi, 2.0 * kPi);
        if (!cuts.empty()) cuts.push_back(2.0 * kPi);
        auto g = [&](double th) { return f(c + r * std::polar(1.0, th + shift)); };
        return panels(g, cuts, 0.0, 2.0 * kPi) / (2.0 * kPi);
    }

    std::vector<double> real_sing;
    for (const Complex& s : singular)
        if (std::abs(s.imag()) <= 1e-9) real_sing.push_back(s.real());

    if (const auto* d = set.union_density()) {
        double acc = 0.0;
        for (size_t j = 0; j < set.parts().size(); ++j) {
            const Interval& p = set.parts()[j];
            const double mid = 0.5 * (p.lo + p.hi);
            const double half = 0.5 * p.length();
            std::vector<double> cuts;
            for (double s : real_sing)
                if (s >= p.lo && s <= p.hi) cuts.push_back(std::acos(std::clamp((s - mid) / half, -1.0, 1.0)));
            auto g = [&](double th) {
                return f(Complex(mid + half * std::cos(th), 0.0)) * angle_density(*d, d->parts[j], th);
            };
            acc += panels(g, cuts, 0.0, kPi);
        }
        return acc;
    }

    if (set.is_full_preimage()) {
        const RealPolynomial& r = set.generator();
        const auto& laps = set.laps();
        double acc = 0.0;
        for (const auto& lap : laps) {
            std::vector<double> cuts;
            for (double s : real_sing)
                if (s >= lap.lo && s <= lap.hi) cuts.push_back(std::acos(std::clamp(r(s), -1.0, 1.0)));
            auto g = [&](double th) { return f(Complex(invert_on_lap(r, lap, std::cos(th)), 0.0)); };
            acc += panels(g, cuts, 0.0, kPi);
        }
        return acc / (kPi * static_cast<double>(laps.size()));
    }

    const Interval p = set.parts().front();
    const double mid = 0.5 * (p.lo + p.hi);
    const double half = 0.5 * p.length();
    std::vector<double> cuts;
    for (double s : real_sing)
        if (s >= p.lo && s <= p.hi) cuts.push_back(std::acos(std::clamp((s - mid) / half, -1.0, 1.0)));
    auto g = [&](double th) { return f(Complex(mid + half * std::cos(th), 0.0)); };
    return panels(g, cuts, 0.0, kPi) / kPi;
}

std::vector<double> chebyshev_grid(const CompactSet1D& set, int per_interval, std::span<const double> extra) {
    if (!set.is_real()) throw InvalidInput("chebyshev_grid: real sets only");
    if (per_interval < 2) throw InvalidInput("chebyshev_grid: need at least 2 points per interval");
    std::vector<double> g;
    for (const auto& p : set.parts()) {
        for (int k = 0; k < per_interval; ++k) {
            const double x = (k == per_interval - 1)
                                 ? p.hi
                                 : p.lo + p.length() * 0.5 * (1.0 - std::cos(kPi * k / (per_interval - 1)));
            g.push_back(x);
        }
    }
    for (double x : extra)
        if (set.contains(Complex(x, 0.0), 0.0)) g.push_back(x);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

}  // namespace widom
