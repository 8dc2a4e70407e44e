#pragma once

#include <cstdint>
#include <vector>

#include "bellkit/settings.hpp"
#include "bellkit/tensor.hpp"

// Correlation Bell expressions with terms of mixed order, their exact LHV
// bounds by enumeration of deterministic strategies, and quantum evaluation.

namespace bellkit {

struct CorrelationTerm {
    // Per party: 0 = not measured, s >= 1 = setting index.
    std::vector<int> pattern;
    double coefficient = 1.0;

    int order() const;
};

struct BellExpression {
    int num_parties = 0;
    int num_settings = 0;
    std::vector<CorrelationTerm> terms;

    void validate() const;  // patterns unique and in range, at least one slot each
};

// Outcomes in {-1, +1}, outcomes[party][setting] (0-based).
struct DeterministicStrategy {
    std::vector<std::vector<int>> outcomes;
};

struct LhvBoundResult {
    double max_value = 0.0;
    double min_value = 0.0;
    std::vector<double> value_set;  // sorted distinct values attained
    DeterministicStrategy argmax;
};

// One term per distinct permutation of the multiset `base_pattern`, all with
// the same coefficient.
std::vector<CorrelationTerm> permutation_sum(const std::vector<int>& base_pattern,
                                             double coefficient);

// The five-party two-setting mixed-order inequality with LHV bound 6:
// permutation sums over 11110, 22220 and 12220 minus those over 21110,
// 11000 and 22000 (70 terms: 20 bipartite, 50 four-partite).
BellExpression build_ineq5();

// Two-party CHSH: E11 + E12 + E21 - E22.
BellExpression build_chsh();

double evaluate_deterministic(const BellExpression& expr,
                              const DeterministicStrategy& strategy);

// Exact enumeration of all 2^(N*S) deterministic strategies.
// Integer coefficients are accumulated in integer arithmetic; otherwise the
// value set is deduplicated at tolerance 1e-9.
LhvBoundResult lhv_bound(const BellExpression& expr);

// Born-rule value: sum of coefficient * contraction of the state tensor at
// the term's setting directions (identity slots for unmeasured parties).
double evaluate_quantum(const BellExpression& expr, const CorrelationTensor& tensor,
                        const SettingsAssignment& settings);

}  // namespace bellkit
