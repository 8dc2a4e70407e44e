#pragma once

#include <cstdint>
#include <utility>
#include <vector>

// Self-contained revised simplex for equality-constrained problems
//
//     optimize c . x   subject to   A x = b,  x >= lb,
//
// with sparse columns and a dense maintained basis inverse. Handles
// rank-deficient equality systems (redundant rows are detected after phase 1
// and dropped) and degenerate pivots.

namespace bellkit {

struct SparseColumn {
    std::vector<std::pair<int, double>> entries;  // (row, value)
};

struct LinearProgram {
    int num_rows = 0;
    std::vector<SparseColumn> columns;
    std::vector<double> rhs;
    std::vector<double> objective;
    // Optional per-variable lower bounds; empty means all zero. Upper bounds
    // are expressed by the caller through explicit slack variables.
    std::vector<double> lower_bounds;
    bool maximize = false;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
    LpStatus status = LpStatus::Optimal;
    double value = 0.0;
    std::vector<double> x;
    // Phase-1 residual left when the constraints cannot be met.
    double infeasibility = 0.0;
    int iterations = 0;
};

struct LpOptions {
    double feasibility_tol = 1e-9;
    double pivot_tol = 1e-9;
    int max_iterations = 50000;
    int refactor_interval = 32;
};

LpSolution lp_solve(const LinearProgram& lp, const LpOptions& options = {});

}  // namespace bellkit
