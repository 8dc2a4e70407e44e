#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "bellkit/simplex.hpp"

using namespace bellkit;

namespace {

LinearProgram dense_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                       const Eigen::VectorXd& c, bool maximize) {
    LinearProgram lp;
    lp.num_rows = static_cast<int>(a.rows());
    lp.maximize = maximize;
    lp.rhs.assign(b.data(), b.data() + b.size());
    lp.objective.assign(c.data(), c.data() + c.size());
    lp.columns.resize(a.cols());
    for (int j = 0; j < a.cols(); ++j)
        for (int i = 0; i < a.rows(); ++i)
            if (a(i, j) != 0.0) lp.columns[j].entries.emplace_back(i, a(i, j));
    return lp;
}

// Exact oracle for tiny LPs: enumerate all basic solutions of A x = b, x >= 0.
double brute_force_max(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                       const Eigen::VectorXd& c, bool& feasible) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    double best = -1e300;
    feasible = false;
    std::vector<int> pick(m);
    // iterate all m-subsets of columns
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    auto advance = [&]() {
        int i = m - 1;
        while (i >= 0 && idx[i] == n - m + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int k = i + 1; k < m; ++k) idx[k] = idx[k - 1] + 1;
        return true;
    };
    do {
        Eigen::MatrixXd basis(m, m);
        for (int k = 0; k < m; ++k) basis.col(k) = a.col(idx[k]);
        const Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
        if (!lu.isInvertible()) continue;
        const Eigen::VectorXd x = lu.solve(b);
        if ((x.array() < -1e-9).any()) continue;
        feasible = true;
        double v = 0.0;
        for (int k = 0; k < m; ++k) v += c[idx[k]] * std::max(0.0, x[k]);
        best = std::max(best, v);
    } while (advance());
    return best;
}

}  // namespace

TEST_CASE("bounded single variable") {
    // max v subject to v + s = 0.7
    Eigen::MatrixXd a(1, 2);
    a << 1, 1;
    Eigen::VectorXd b(1), c(2);
    b << 0.7;
    c << 1, 0;
    const LpSolution sol = lp_solve(dense_lp(a, b, c, true));
    CHECK(sol.status == LpStatus::Optimal);
    CHECK(sol.value == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(sol.x[0] == doctest::Approx(0.7));
}

TEST_CASE("infeasible system is certified") {
    // x1 + x2 = 1 and x1 + x2 = 2 cannot both hold
    Eigen::MatrixXd a(2, 2);
    a << 1, 1, 1, 1;
    Eigen::VectorXd b(2), c(2);
    b << 1, 2;
    c << 1, 0;
    const LpSolution sol = lp_solve(dense_lp(a, b, c, true));
    CHECK(sol.status == LpStatus::Infeasible);
    CHECK(sol.infeasibility > 0.1);
}

TEST_CASE("unbounded problem is reported distinctly") {
    // max x1 with x1 - x2 = 0: the ray x1 = x2 -> inf
    Eigen::MatrixXd a(1, 2);
    a << 1, -1;
    Eigen::VectorXd b(1), c(2);
    b << 0;
    c << 1, 0;
    const LpSolution sol = lp_solve(dense_lp(a, b, c, true));
    CHECK(sol.status == LpStatus::Unbounded);
}

TEST_CASE("redundant equality rows are tolerated") {
    // the same constraint three times plus a proper one
    Eigen::MatrixXd a(4, 3);
    a << 1, 1, 0,
         1, 1, 0,
         1, 1, 0,
         0, 1, 1;
    Eigen::VectorXd b(4), c(3);
    b << 1, 1, 1, 0.5;
    c << 1, 0, 0;
    const LpSolution sol = lp_solve(dense_lp(a, b, c, true));
    CHECK(sol.status == LpStatus::Optimal);
    CHECK(sol.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("lower bounds shift the feasible box") {
    // max x1 + x2 with x1 + x2 + s = 4, x1 >= 1, x2 >= 0.5
    Eigen::MatrixXd a(1, 3);
    a << 1, 1, 1;
    Eigen::VectorXd b(1), c(3);
    b << 4;
    c << 1, 1, 0;
    LinearProgram lp = dense_lp(a, b, c, true);
    lp.lower_bounds = {1.0, 0.5, 0.0};
    const LpSolution sol = lp_solve(lp);
    CHECK(sol.status == LpStatus::Optimal);
    CHECK(sol.value == doctest::Approx(4.0));
    CHECK(sol.x[0] >= 1.0 - 1e-12);
    CHECK(sol.x[1] >= 0.5 - 1e-12);
}

TEST_CASE("minimization works") {
    Eigen::MatrixXd a(1, 2);
    a << 1, 1;
    Eigen::VectorXd b(1), c(2);
    b << 1;
    c << 3, 5;
    const LpSolution sol = lp_solve(dense_lp(a, b, c, false));
    CHECK(sol.status == LpStatus::Optimal);
    CHECK(sol.value == doctest::Approx(3.0));
}

TEST_CASE("random instances against exhaustive basic-solution search") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_int_distribution<int> rows(1, 4);
    std::uniform_int_distribution<int> extra(1, 4);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int m = rows(rng);
        const int n = m + extra(rng);
        Eigen::MatrixXd a(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = uni(rng);
        // guarantee feasibility of some instances by constructing b = A x0
        Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
        if (trial % 2 == 0)
            for (int j = 0; j < n; ++j) x0[j] = std::max(0.0, uni(rng));
        Eigen::VectorXd b = trial % 2 == 0
                                ? Eigen::VectorXd(a * x0)
                                : Eigen::VectorXd::NullaryExpr(m, [&](int) { return uni(rng); });
        Eigen::VectorXd c(n);
        for (int j = 0; j < n; ++j) c[j] = uni(rng);
        // keep the objective bounded: add a row tying total mass down
        Eigen::MatrixXd a2(m + 1, n + 1);
        a2.setZero();
        a2.topLeftCorner(m, n) = a;
        a2.row(m).head(n).setOnes();
        a2(m, n) = 1.0;
        Eigen::VectorXd b2(m + 1);
        b2.head(m) = b;
        b2[m] = 5.0;
        Eigen::VectorXd c2(n + 1);
        c2.head(n) = c;
        c2[n] = 0.0;

        bool feasible = false;
        const double oracle = brute_force_max(a2, b2, c2, feasible);
        const LpSolution sol = lp_solve(dense_lp(a2, b2, c2, true));
        if (feasible) {
            REQUIRE(sol.status == LpStatus::Optimal);
            CHECK(sol.value == doctest::Approx(oracle).epsilon(1e-7).scale(1.0));
            ++checked;
        } else {
            CHECK(sol.status == LpStatus::Infeasible);
        }
    }
    CHECK(checked > 100);
}
