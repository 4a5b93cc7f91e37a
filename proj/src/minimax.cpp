#include "widom/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "widom/errors.hpp"

namespace widom {

namespace {

// Column k of the standard-form dual: y+_i for k < N, y-_i for N <= k < 2N,
// artificials afterwards.
class DualLp {
public:
    DualLp(const Eigen::MatrixXd& a, const Eigen::VectorXd& f) : a_(a), f_(f), n_(a.rows()), m_(a.cols()) {}

    [[nodiscard]] Eigen::Index rows() const { return m_ + 1; }
    [[nodiscard]] Eigen::Index structural() const { return 2 * n_; }
    [[nodiscard]] bool artificial(Eigen::Index k) const { return k >= 2 * n_; }

    [[nodiscard]] Eigen::VectorXd column(Eigen::Index k) const {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(rows());
        if (artificial(k)) {
            c(k - 2 * n_) = 1.0;
            return c;
        }
        const Eigen::Index i = k % n_;
        const double s = k < n_ ? 1.0 : -1.0;
        c.head(m_) = s * a_.row(i).transpose();
        c(m_) = 1.0;
        return c;
    }

    [[nodiscard]] double cost(Eigen::Index k, bool phase_one) const {
        if (phase_one) return artificial(k) ? -1.0 : 0.0;
        if (artificial(k)) return 0.0;
        return k < n_ ? f_(k) : -f_(k - n_);
    }

    // Residuals f - A c for the multipliers pi = (c, h).
    [[nodiscard]] Eigen::VectorXd residual(const Eigen::VectorXd& pi) const { return f_ - a_ * pi.head(m_); }

    [[nodiscard]] Eigen::Index n() const { return n_; }

private:
    const Eigen::MatrixXd& a_;
    const Eigen::VectorXd& f_;
    Eigen::Index n_;
    Eigen::Index m_;
};

class IterationLimit : public ResolutionError {
public:
    IterationLimit() : ResolutionError("minimax: simplex iteration limit reached") {}
};

// Raised when the unperturbed run stops making progress or loses its basis.
class Degenerate : public ResolutionError {
public:
    Degenerate() : ResolutionError("minimax: degenerate simplex run") {}
};

constexpr int kStallLimit = 500;

// One two-phase simplex run. With `perturb` the right-hand side gets tiny
// distinct positive offsets, which removes primal degeneracy. The multipliers
// depend on the basis alone; basic values are recomputed for the exact one.
MinimaxResult solve_dual(const Eigen::MatrixXd& a, const Eigen::VectorXd& f, bool perturb, int max_iter) {
    const Eigen::Index n = a.rows();
    const Eigen::Index m = a.cols();
    const DualLp lp(a, f);
    const Eigen::Index r = lp.rows();
    const double fscale = std::max(1.0, f.cwiseAbs().maxCoeff());
    const double ascale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double dtol = 1e-13 * fscale * ascale;

    std::vector<Eigen::Index> basis(static_cast<size_t>(r));
    for (Eigen::Index k = 0; k < r; ++k) basis[static_cast<size_t>(k)] = 2 * n + k;
    Eigen::VectorXd exact_rhs = Eigen::VectorXd::Zero(r);
    exact_rhs(m) = 1.0;
    Eigen::VectorXd rhs = exact_rhs;
    if (perturb)
        for (Eigen::Index k = 0; k < r; ++k) rhs(k) += 1e-9 * (1.0 + std::fmod(0.6180339887498949 * (k + 1), 1.0));

    MinimaxResult out;
    Eigen::VectorXd pi;
    Eigen::VectorXd xb;

    for (int phase = 1; phase <= 2; ++phase) {
        const bool phase_one = phase == 1;
        int stall = 0;
        double last_obj = -std::numeric_limits<double>::infinity();
        for (;;) {
            if (++out.iterations > max_iter) throw IterationLimit();
            Eigen::MatrixXd bm(r, r);
            Eigen::VectorXd cb(r);
            for (Eigen::Index j = 0; j < r; ++j) {
                bm.col(j) = lp.column(basis[static_cast<size_t>(j)]);
                cb(j) = lp.cost(basis[static_cast<size_t>(j)], phase_one);
            }
            const Eigen::PartialPivLU<Eigen::MatrixXd> lu(bm);
            xb = lu.solve(rhs);
            pi = lu.transpose().solve(cb);
            if (!xb.allFinite() || !pi.allFinite()) {
                if (!perturb) throw Degenerate();
                throw ResolutionError("minimax: singular simplex basis");
            }
            const double obj = cb.dot(xb);
            stall = (obj > last_obj + 1e-15 * fscale) ? 0 : stall + 1;
            last_obj = std::max(last_obj, obj);
            const bool bland = stall > 30;
            if (!perturb && stall > kStallLimit) throw Degenerate();

            // Pricing. Reduced cost of y+-_i is +-(f - A c)_i - h (phase two).
            Eigen::Index enter = -1;
            double best = dtol;
            std::vector<char> in_basis(static_cast<size_t>(2 * n), 0);
            for (auto k : basis)
                if (!lp.artificial(k)) in_basis[static_cast<size_t>(k)] = 1;
            Eigen::VectorXd proj = a * pi.head(m);
            for (Eigen::Index k = 0; k < 2 * n; ++k) {
                if (in_basis[static_cast<size_t>(k)]) continue;
                const Eigen::Index i = k % n;
                const double s = k < n ? 1.0 : -1.0;
                const double d = lp.cost(k, phase_one) - s * proj(i) - pi(m);
                if (d > best) {
                    enter = k;
                    if (bland) break;
                    best = d;
                }
            }
            if (enter < 0) break;

            const Eigen::VectorXd u = lu.solve(lp.column(enter));
            const double ptol = 1e-11 * std::max(1.0, u.cwiseAbs().maxCoeff());
            Eigen::Index leave = -1;
            double ratio = std::numeric_limits<double>::infinity();
            for (Eigen::Index j = 0; j < r; ++j) {
                const Eigen::Index bk = basis[static_cast<size_t>(j)];
                double cand;
                if (lp.artificial(bk) && !phase_one && std::abs(u(j)) > ptol) cand = 0.0;
                else if (u(j) > ptol) cand = std::max(0.0, xb(j)) / u(j);
                else continue;
                if (cand < ratio - 1e-15 ||
                    (cand <= ratio + 1e-15 && leave >= 0 && bk < basis[static_cast<size_t>(leave)])) {
                    ratio = cand;
                    leave = j;
                }
            }
            if (leave < 0) throw ResolutionError("minimax: dual LP unbounded (rank-deficient basis)");
            basis[static_cast<size_t>(leave)] = enter;
        }
        if (phase_one && std::abs(last_obj) > 1e-9) throw ResolutionError("minimax: dual LP infeasible");
    }

    if (perturb) {
        Eigen::MatrixXd bm(r, r);
        for (Eigen::Index j = 0; j < r; ++j) bm.col(j) = lp.column(basis[static_cast<size_t>(j)]);
        xb = bm.partialPivLu().solve(exact_rhs);
    }
    out.coeffs = pi.head(m);
    const Eigen::VectorXd res = lp.residual(pi);
    out.level = res.cwiseAbs().maxCoeff();
    for (Eigen::Index j = 0; j < r; ++j) {
        const Eigen::Index k = basis[static_cast<size_t>(j)];
        if (lp.artificial(k) || xb(j) <= 0.0) continue;
        out.active.push_back(static_cast<int>(k % n));
        out.signs.push_back(k < n ? 1 : -1);
    }
    return out;
}

}  // namespace

MinimaxResult discrete_minimax(const Eigen::MatrixXd& a, const Eigen::VectorXd& f) {
    if (a.rows() != f.size()) throw InvalidInput("minimax: row count mismatch");
    if (a.rows() <= a.cols()) throw ResolutionError("minimax: need more points than basis functions");
    const int budget = 50 * static_cast<int>(a.cols() + 1) + 20000;
    try {
        return solve_dual(a, f, false, budget);
    } catch (const IterationLimit&) {
        return solve_dual(a, f, true, budget);
    } catch (const Degenerate&) {
        return solve_dual(a, f, true, budget);
    }
}

}  // namespace widom
