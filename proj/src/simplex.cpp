#include "bellkit/simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace bellkit {

namespace {

constexpr int kNoVariable = -1;

// Revised simplex working state on the shifted problem (x >= 0, b >= 0 via
// row signs). Artificial variable for row i has index num_cols + i.
class SimplexState {
  public:
    SimplexState(const LinearProgram& lp, const LpOptions& options)
        : lp_(lp), opt_(options), m_(lp.num_rows), n_(static_cast<int>(lp.columns.size())) {
        row_active_.assign(m_, true);
        row_map_.resize(m_);
        for (int i = 0; i < m_; ++i) row_map_[i] = i;

        shifted_rhs_ = lp.rhs;
        if (!lp.lower_bounds.empty()) {
            for (int j = 0; j < n_; ++j) {
                const double lb = lp.lower_bounds[j];
                if (lb == 0.0) continue;
                for (const auto& [r, v] : lp.columns[j].entries) shifted_rhs_[r] -= v * lb;
            }
        }
        row_sign_.assign(m_, 1.0);
        for (int i = 0; i < m_; ++i)
            if (shifted_rhs_[i] < 0.0) {
                row_sign_[i] = -1.0;
                shifted_rhs_[i] = -shifted_rhs_[i];
            }
        scale_ = 1.0;
        for (double b : shifted_rhs_) scale_ = std::max(scale_, std::abs(b));

        basis_.resize(m_);
        for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;  // artificials
        binv_ = Eigen::MatrixXd::Identity(m_, m_);
        beta_ = Eigen::Map<const Eigen::VectorXd>(shifted_rhs_.data(), m_);
        in_basis_.assign(n_ + m_, false);
        for (int b : basis_) in_basis_[b] = true;
    }

    // column j of the sign-normalized constraint matrix applied to a callback
    template <typename F>
    void for_column(int j, F&& f) const {
        if (j < n_) {
            for (const auto& [r, v] : lp_.columns[j].entries)
                if (row_active_[r]) f(row_map_[r], row_sign_[r] * v);
        } else {
            const int r = artificial_row_[j - n_];
            if (r >= 0) f(r, 1.0);
        }
    }

    LpSolution run() {
        // phase 1: minimize the artificial sum
        artificial_row_.resize(m_);
        for (int i = 0; i < m_; ++i) artificial_row_[i] = i;
        cost_.assign(n_ + m_, 0.0);
        for (int i = 0; i < m_; ++i) cost_[n_ + i] = 1.0;
        phase1_ = true;

        LpSolution sol;
        if (!iterate(sol)) return sol;

        const double residual = artificial_sum();
        if (residual > opt_.feasibility_tol * scale_ * 10.0) {
            sol.status = LpStatus::Infeasible;
            sol.infeasibility = residual;
            return sol;
        }
        remove_artificials();

        // phase 2 on the active rows
        phase1_ = false;
        cost_.assign(n_ + m_, 0.0);
        for (int j = 0; j < n_; ++j)
            cost_[j] = lp_.maximize ? -lp_.objective[j] : lp_.objective[j];
        refactorize();
        if (!iterate(sol)) return sol;

        sol.status = LpStatus::Optimal;
        sol.x.assign(n_, 0.0);
        for (int i = 0; i < active_rows_; ++i)
            if (basis_[i] < n_) sol.x[basis_[i]] = beta_[i];
        if (!lp_.lower_bounds.empty())
            for (int j = 0; j < n_; ++j) sol.x[j] += lp_.lower_bounds[j];
        sol.value = 0.0;
        for (int j = 0; j < n_; ++j) sol.value += lp_.objective[j] * sol.x[j];
        sol.iterations = iterations_;
        return sol;
    }

  private:
    double artificial_sum() const {
        double s = 0.0;
        for (int i = 0; i < active_rows(); ++i)
            if (basis_[i] >= n_) s += std::max(0.0, beta_[i]);
        return s;
    }

    int active_rows() const { return phase1_ ? m_ : active_rows_; }

    // Rebuild binv_ and beta_ from the current basis by dense factorization.
    void refactorize() {
        const int rows = active_rows();
        Eigen::MatrixXd b = Eigen::MatrixXd::Zero(rows, rows);
        for (int k = 0; k < rows; ++k)
            for_column(basis_[k], [&](int r, double v) { b(r, k) = v; });
        binv_ = b.partialPivLu().solve(Eigen::MatrixXd::Identity(rows, rows));
        Eigen::VectorXd rhs(rows);
        int idx = 0;
        for (int i = 0; i < m_; ++i)
            if (row_active_[i]) rhs[idx++] = shifted_rhs_[i];
        beta_ = binv_ * rhs;
        pivots_since_refactor_ = 0;
        if (std::getenv("BELLKIT_LP_DEBUG") != nullptr) {
            const double err = (b * binv_ - Eigen::MatrixXd::Identity(rows, rows))
                                   .cwiseAbs()
                                   .maxCoeff();
            std::fprintf(stderr, "[lp] refactor phase%d rows=%d inverse err=%.3e\n",
                         phase1_ ? 1 : 2, rows, err);
        }
    }

    // B^-1 a_j using column sparsity.
    Eigen::VectorXd ftran(int j) const {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(active_rows());
        for_column(j, [&](int r, double v) { w += v * binv_.col(r); });
        return w;
    }

    // Reduced costs of all eligible nonbasic columns; returns entering index.
    int price(bool bland) const {
        const int rows = active_rows();
        Eigen::VectorXd y = Eigen::VectorXd::Zero(rows);
        for (int i = 0; i < rows; ++i)
            if (cost_[basis_[i]] != 0.0) y += cost_[basis_[i]] * binv_.row(i).transpose();

        int entering = kNoVariable;
        double best = -opt_.pivot_tol * 10.0;
        for (int j = 0; j < n_; ++j) {  // artificials never re-enter
            if (in_basis_[j] || banned_[j]) continue;
            double d = cost_[j];
            for_column(j, [&](int r, double v) { d -= y[r] * v; });
            if (d < best) {
                entering = j;
                if (bland) break;
                best = d;
            }
        }
        return entering;
    }

    bool iterate(LpSolution& sol) {
        int degenerate_streak = 0;
        bool bland = false;
        banned_.assign(n_, false);
        while (true) {
            if (iterations_ >= opt_.max_iterations) {
                sol.status = LpStatus::IterationLimit;
                sol.iterations = iterations_;
                return false;
            }
            int entering = price(bland);
            if (entering == kNoVariable) {
                // confirm against a fresh factorization before declaring the
                // phase finished; accumulated eta updates can fake optimality
                if (pivots_since_refactor_ > 0) {
                    refactorize();
                    entering = price(bland);
                }
                if (entering == kNoVariable) return true;
            }

            Eigen::VectorXd w = ftran(entering);
            int leave = ratio_test(w, bland);
            if (leave == kTinyPivots) {
                if (pivots_since_refactor_ > 0) {
                    refactorize();  // w may be polluted; retry on a fresh inverse
                    w = ftran(entering);
                    leave = ratio_test(w, bland);
                }
                if (leave == kTinyPivots) {
                    // the direction only meets the basis at noise level; shelve
                    // the column until the basis changes
                    banned_[entering] = true;
                    ++iterations_;
                    continue;
                }
            }
            if (leave < 0) {
                if (phase1_) {  // cannot happen: artificial sum bounded below
                    sol.status = LpStatus::Infeasible;
                    sol.infeasibility = artificial_sum();
                } else {
                    sol.status = LpStatus::Unbounded;
                }
                sol.iterations = iterations_;
                return false;
            }

            const double ratio = std::max(0.0, beta_[leave]) / w[leave];
            pivot(entering, leave, w, ratio);
            std::fill(banned_.begin(), banned_.end(), false);
            ++iterations_;
            degenerate_streak = ratio < 1e-12 ? degenerate_streak + 1 : 0;
            if (degenerate_streak > 2 * active_rows() + 100) bland = true;
            if (degenerate_streak == 0) bland = false;
        }
    }

    static constexpr int kNoRow = -1;
    static constexpr int kTinyPivots = -2;
    // Pivot elements below this are numerical noise at the problem scales
    // handled here; dividing by them destroys the maintained inverse.
    static constexpr double kRatioPivotTol = 1e-7;

    // Two-pass ratio test: establish the minimum ratio within the feasibility
    // tolerance, then take the numerically best pivot among the near-ties
    // (largest pivot element; artificials first so they leave the basis).
    int ratio_test(const Eigen::VectorXd& w, bool bland) const {
        const int rows = active_rows();
        double bound = std::numeric_limits<double>::infinity();
        double wmax = 0.0;
        for (int i = 0; i < rows; ++i) {
            wmax = std::max(wmax, w[i]);
            if (w[i] > kRatioPivotTol)
                bound = std::min(bound, (std::max(0.0, beta_[i]) + opt_.feasibility_tol) / w[i]);
        }
        if (!std::isfinite(bound)) return wmax > opt_.pivot_tol ? kTinyPivots : kNoRow;

        int leave = -1;
        for (int i = 0; i < rows; ++i) {
            if (w[i] <= kRatioPivotTol) continue;
            if (std::max(0.0, beta_[i]) / w[i] > bound) continue;
            if (leave < 0) {
                leave = i;
                continue;
            }
            if (bland) {
                if (basis_[i] < basis_[leave]) leave = i;
                continue;
            }
            const bool cand_art = basis_[i] >= n_;
            const bool cur_art = basis_[leave] >= n_;
            if (cand_art != cur_art) {
                if (cand_art) leave = i;
                continue;
            }
            if (w[i] > w[leave]) leave = i;
        }
        return leave;
    }

    void pivot(int entering, int leave, const Eigen::VectorXd& w, double ratio) {
        const int rows = active_rows();
        const double wl = w[leave];
        binv_.row(leave) /= wl;
        for (int i = 0; i < rows; ++i)
            if (i != leave && w[i] != 0.0) binv_.row(i) -= w[i] * binv_.row(leave);
        beta_ -= ratio * w;
        beta_[leave] = ratio;
        for (int i = 0; i < rows; ++i) beta_[i] = std::max(beta_[i], -1e-11);
        in_basis_[basis_[leave]] = false;
        in_basis_[entering] = true;
        basis_[leave] = entering;
        if (std::getenv("BELLKIT_LP_DEBUG2") != nullptr) {
            Eigen::MatrixXd b = Eigen::MatrixXd::Zero(rows, rows);
            for (int k = 0; k < rows; ++k)
                for_column(basis_[k], [&](int r, double v) { b(r, k) = v; });
            const double err =
                (b * binv_ - Eigen::MatrixXd::Identity(rows, rows)).cwiseAbs().maxCoeff();
            if (err > 1e-6)
                std::fprintf(stderr,
                             "[lp] DESYNC iter=%d enter=%d leave_pos=%d wl=%.3e err=%.3e\n",
                             iterations_, entering, leave, wl, err);
        }
        if (++pivots_since_refactor_ >=
            (rows > 600 ? 4 * opt_.refactor_interval : opt_.refactor_interval))
            refactorize();
    }

    // After phase 1: pivot remaining artificials out where possible, then
    // drop rows whose artificial cannot leave (linearly dependent rows).
    void remove_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            bool pivoted = false;
            for (int j = 0; j < n_ && !pivoted; ++j) {
                if (in_basis_[j]) continue;
                const Eigen::VectorXd w = ftran(j);
                if (std::abs(w[i]) > 1e-7) {
                    // degenerate exchange; the artificial sits at ~0
                    Eigen::VectorXd wf = w;
                    binv_.row(i) /= wf[i];
                    for (int r = 0; r < m_; ++r)
                        if (r != i && wf[r] != 0.0) binv_.row(r) -= wf[r] * binv_.row(i);
                    const double bi = std::max(beta_[i], 0.0) / wf[i];
                    beta_ -= bi * wf;
                    beta_[i] = bi;
                    in_basis_[basis_[i]] = false;
                    in_basis_[j] = true;
                    basis_[i] = j;
                    pivoted = true;
                }
            }
        }

        // collect rows still owned by artificials
        std::vector<bool> drop(m_, false);
        bool any = false;
        for (int i = 0; i < m_; ++i)
            if (basis_[i] >= n_) {
                drop[i] = true;
                any = true;
            }
        if (std::getenv("BELLKIT_LP_DEBUG") != nullptr) {
            int nd = 0;
            for (int i = 0; i < m_; ++i) nd += drop[i];
            std::fprintf(stderr, "[lp] phase1 done: residual=%.3e dropped=%d iters=%d\n",
                         artificial_sum(), nd, iterations_);
            for (int i = 0; i < m_; ++i) {
                if (!drop[i]) continue;
                double maxw = 0.0;
                for (int j = 0; j < n_; ++j) {
                    if (in_basis_[j]) continue;
                    const Eigen::VectorXd w = ftran(j);
                    maxw = std::max(maxw, std::abs(w[i]));
                }
                std::fprintf(stderr, "[lp]   drop pos=%d artificial=%d origrow=%d beta=%.3e maxpivot=%.3e\n",
                             i, basis_[i] - n_, artificial_row_[basis_[i] - n_], beta_[i], maxw);
            }
        }
        active_rows_ = m_;
        if (!any) {
            for (auto& r : artificial_row_) r = -1;
            return;
        }

        // compact the surviving rows; positions here are basis positions,
        // which coincide with original rows only through row_map_, so rebuild
        // the mapping by marking original rows of dropped basis positions.
        std::vector<int> surviving_basis;
        for (int i = 0; i < m_; ++i)
            if (!drop[i]) surviving_basis.push_back(basis_[i]);

        // A dropped basis position i corresponds to artificial basis_[i]-n_,
        // whose original row is artificial_row_[basis_[i]-n_].
        for (int i = 0; i < m_; ++i)
            if (drop[i]) row_active_[artificial_row_[basis_[i] - n_]] = false;

        int idx = 0;
        for (int r = 0; r < m_; ++r) row_map_[r] = row_active_[r] ? idx++ : -1;
        active_rows_ = idx;

        basis_ = surviving_basis;
        std::fill(in_basis_.begin(), in_basis_.end(), false);
        for (int b : basis_) in_basis_[b] = true;
        for (auto& r : artificial_row_) r = -1;
        binv_.resize(active_rows_, active_rows_);
        beta_.resize(active_rows_);
    }

    const LinearProgram& lp_;
    const LpOptions& opt_;
    int m_;
    int n_;
    bool phase1_ = true;
    int active_rows_ = 0;
    int iterations_ = 0;
    int pivots_since_refactor_ = 0;
    double scale_ = 1.0;

    std::vector<double> shifted_rhs_;
    std::vector<double> row_sign_;
    std::vector<bool> row_active_;
    std::vector<int> row_map_;
    std::vector<int> artificial_row_;
    std::vector<double> cost_;
    std::vector<int> basis_;
    std::vector<bool> in_basis_;
    std::vector<bool> banned_;
    Eigen::MatrixXd binv_;
    Eigen::VectorXd beta_;
};

// Residual of A x - b over all rows of the original (unshifted) problem.
double solution_residual(const LinearProgram& lp, const std::vector<double>& x) {
    std::vector<double> resid(lp.rhs);
    for (std::size_t j = 0; j < lp.columns.size(); ++j)
        for (const auto& [r, v] : lp.columns[j].entries) resid[r] -= v * x[j];
    double worst = 0.0;
    for (double r : resid) worst = std::max(worst, std::abs(r));
    return worst;
}

}  // namespace

LpSolution lp_solve(const LinearProgram& lp, const LpOptions& options) {
    const int n = static_cast<int>(lp.columns.size());
    if (static_cast<int>(lp.rhs.size()) != lp.num_rows)
        throw std::invalid_argument("rhs length does not match row count");
    if (static_cast<int>(lp.objective.size()) != n)
        throw std::invalid_argument("objective length does not match column count");
    if (!lp.lower_bounds.empty() && static_cast<int>(lp.lower_bounds.size()) != n)
        throw std::invalid_argument("lower bound length does not match column count");
    for (const auto& col : lp.columns)
        for (const auto& [r, v] : col.entries)
            if (r < 0 || r >= lp.num_rows)
                throw std::invalid_argument("column entry row index out of range");

    SimplexState state(lp, options);
    LpSolution sol = state.run();
    if (sol.status == LpStatus::Optimal) {
        double scale = 1.0;
        for (double b : lp.rhs) scale = std::max(scale, std::abs(b));
        if (solution_residual(lp, sol.x) > 1e-6 * scale) {
            // numerical trouble; one strict retry with frequent refactorization
            LpOptions strict = options;
            strict.refactor_interval = 8;
            SimplexState retry(lp, strict);
            sol = retry.run();
            if (sol.status == LpStatus::Optimal &&
                solution_residual(lp, sol.x) > 1e-6 * scale) {
                sol.status = LpStatus::IterationLimit;  // do not report a bad point
            }
        }
    }
    return sol;
}

}  // namespace bellkit
