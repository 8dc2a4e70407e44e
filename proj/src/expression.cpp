#include "bellkit/expression.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace bellkit {

namespace {

bool coefficients_integral(const BellExpression& expr) {
    for (const auto& t : expr.terms)
        if (t.coefficient != std::floor(t.coefficient) ||
            std::abs(t.coefficient) > (1LL << 40))
            return false;
    return true;
}

}  // namespace

int CorrelationTerm::order() const {
    return static_cast<int>(std::count_if(pattern.begin(), pattern.end(),
                                          [](int s) { return s > 0; }));
}

void BellExpression::validate() const {
    if (num_parties < 1) throw std::invalid_argument("expression needs at least one party");
    if (num_settings < 1) throw std::invalid_argument("expression needs at least one setting");
    std::set<std::vector<int>> seen;
    for (const auto& t : terms) {
        if (static_cast<int>(t.pattern.size()) != num_parties)
            throw std::invalid_argument("term pattern length does not match party count");
        if (t.order() == 0)
            throw std::invalid_argument("term measures no party");
        for (int s : t.pattern)
            if (s < 0 || s > num_settings)
                throw std::invalid_argument("setting index " + std::to_string(s) +
                                            " outside [0, " + std::to_string(num_settings) + "]");
        if (!seen.insert(t.pattern).second)
            throw std::invalid_argument("duplicate term pattern");
    }
}

std::vector<CorrelationTerm> permutation_sum(const std::vector<int>& base_pattern,
                                             double coefficient) {
    std::vector<int> p = base_pattern;
    std::sort(p.begin(), p.end());
    std::vector<CorrelationTerm> terms;
    do {
        terms.push_back({p, coefficient});
    } while (std::next_permutation(p.begin(), p.end()));
    return terms;
}

BellExpression build_ineq5() {
    BellExpression expr;
    expr.num_parties = 5;
    expr.num_settings = 2;
    const std::vector<std::pair<std::vector<int>, double>> groups = {
        {{1, 1, 1, 1, 0}, 1.0},  {{2, 2, 2, 2, 0}, 1.0}, {{1, 2, 2, 2, 0}, 1.0},
        {{2, 1, 1, 1, 0}, -1.0}, {{1, 1, 0, 0, 0}, -1.0}, {{2, 2, 0, 0, 0}, -1.0}};
    for (const auto& [pat, coeff] : groups) {
        auto terms = permutation_sum(pat, coeff);
        expr.terms.insert(expr.terms.end(), terms.begin(), terms.end());
    }
    expr.validate();
    return expr;
}

BellExpression build_chsh() {
    BellExpression expr;
    expr.num_parties = 2;
    expr.num_settings = 2;
    expr.terms = {{{1, 1}, 1.0}, {{1, 2}, 1.0}, {{2, 1}, 1.0}, {{2, 2}, -1.0}};
    return expr;
}

double evaluate_deterministic(const BellExpression& expr,
                              const DeterministicStrategy& strategy) {
    if (static_cast<int>(strategy.outcomes.size()) != expr.num_parties)
        throw std::invalid_argument("strategy party count does not match expression");
    for (const auto& row : strategy.outcomes) {
        if (static_cast<int>(row.size()) != expr.num_settings)
            throw std::invalid_argument("strategy setting count does not match expression");
        for (int o : row)
            if (o != 1 && o != -1) throw std::invalid_argument("outcomes must be +-1");
    }
    double value = 0.0;
    for (const auto& t : expr.terms) {
        int sign = 1;
        for (int n = 0; n < expr.num_parties; ++n)
            if (t.pattern[n] > 0) sign *= strategy.outcomes[n][t.pattern[n] - 1];
        value += t.coefficient * sign;
    }
    return value;
}

LhvBoundResult lhv_bound(const BellExpression& expr) {
    expr.validate();
    const int slots = expr.num_parties * expr.num_settings;
    if (slots > 30)
        throw std::invalid_argument("enumeration over 2^" + std::to_string(slots) +
                                    " strategies exceeds the 2^30 cap");

    // Slot bit (party, setting): bit = 1 encodes outcome -1. A term's value
    // under a strategy is coeff * (-1)^popcount(strategy & term_mask).
    std::vector<std::uint32_t> masks;
    std::vector<double> coeffs;
    masks.reserve(expr.terms.size());
    for (const auto& t : expr.terms) {
        std::uint32_t m = 0;
        for (int n = 0; n < expr.num_parties; ++n)
            if (t.pattern[n] > 0)
                m |= 1u << (n * expr.num_settings + (t.pattern[n] - 1));
        masks.push_back(m);
        coeffs.push_back(t.coefficient);
    }

    const bool integral = coefficients_integral(expr);
    const std::uint64_t total = std::uint64_t{1} << slots;

    double best = 0.0, worst = 0.0;
    std::uint32_t best_bits = 0;
    std::set<long long> int_values;
    std::set<double> raw_values;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        double value = 0.0;
        long long ivalue = 0;
        for (std::size_t t = 0; t < masks.size(); ++t) {
            const int sign =
                std::popcount(static_cast<std::uint32_t>(bits) & masks[t]) % 2 == 0 ? 1 : -1;
            if (integral)
                ivalue += static_cast<long long>(coeffs[t]) * sign;
            else
                value += coeffs[t] * sign;
        }
        if (integral) {
            int_values.insert(ivalue);
            value = static_cast<double>(ivalue);
        } else {
            raw_values.insert(value);
        }
        if (bits == 0 || value > best) {
            best = value;
            best_bits = static_cast<std::uint32_t>(bits);
        }
        if (bits == 0 || value < worst) worst = value;
    }

    LhvBoundResult result;
    result.max_value = best;
    result.min_value = worst;
    if (integral) {
        result.value_set.assign(int_values.begin(), int_values.end());
    } else {
        // collapse values closer than 1e-9
        for (double v : raw_values)
            if (result.value_set.empty() || v - result.value_set.back() > 1e-9)
                result.value_set.push_back(v);
    }
    result.argmax.outcomes.assign(expr.num_parties,
                                  std::vector<int>(expr.num_settings, 1));
    for (int n = 0; n < expr.num_parties; ++n)
        for (int s = 0; s < expr.num_settings; ++s)
            if ((best_bits >> (n * expr.num_settings + s)) & 1)
                result.argmax.outcomes[n][s] = -1;
    return result;
}

double evaluate_quantum(const BellExpression& expr, const CorrelationTensor& tensor,
                        const SettingsAssignment& settings) {
    if (tensor.num_qubits() != expr.num_parties)
        throw std::invalid_argument("tensor party count does not match expression");
    if (settings.num_parties() != expr.num_parties ||
        settings.num_settings() < expr.num_settings)
        throw std::invalid_argument("settings do not cover the expression");
    double value = 0.0;
    DirectionTuple dirs(expr.num_parties);
    for (const auto& t : expr.terms) {
        for (int n = 0; n < expr.num_parties; ++n) {
            if (t.pattern[n] > 0)
                dirs[n] = settings.at(n + 1, t.pattern[n]);
            else
                dirs[n] = std::nullopt;
        }
        value += t.coefficient * contract(tensor, dirs);
    }
    return value;
}

}  // namespace bellkit
