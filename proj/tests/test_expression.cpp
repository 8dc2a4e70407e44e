#include <doctest.h>

#include <random>
#include <set>

#include "bellkit/expression.hpp"
#include "bellkit/json_io.hpp"
#include "bellkit/seesaw.hpp"
#include "bellkit/states.hpp"
#include "test_helpers.hpp"

using namespace bellkit;

namespace {

long factorial(int n) {
    long out = 1;
    for (int i = 2; i <= n; ++i) out *= i;
    return out;
}

// distinct permutations of a multiset
long multiset_permutations(std::vector<int> pattern) {
    long denom = 1;
    std::sort(pattern.begin(), pattern.end());
    int run = 1;
    for (std::size_t i = 1; i <= pattern.size(); ++i) {
        if (i < pattern.size() && pattern[i] == pattern[i - 1]) {
            ++run;
        } else {
            denom *= factorial(run);
            run = 1;
        }
    }
    return factorial(static_cast<int>(pattern.size())) / denom;
}

}  // namespace

TEST_CASE("permutation_sum term counts") {
    CHECK(permutation_sum({1, 1, 1, 1, 0}, 1.0).size() == 5);
    CHECK(permutation_sum({1, 2, 2, 2, 0}, 1.0).size() == 20);
    CHECK(permutation_sum({1, 2, 2, 2, 0}, 1.0).size() ==
          static_cast<std::size_t>(multiset_permutations({1, 2, 2, 2, 0})));
    CHECK(permutation_sum({1, 1, 0, 0, 0}, 1.0).size() == 10);
    CHECK(permutation_sum({1, 1, 0, 0, 0}, 1.0).size() ==
          static_cast<std::size_t>(multiset_permutations({1, 1, 0, 0, 0})));
    // patterns are distinct and coefficients uniform
    const auto terms = permutation_sum({1, 2, 2, 2, 0}, -2.5);
    std::set<std::vector<int>> seen;
    for (const auto& t : terms) {
        CHECK(t.coefficient == -2.5);
        CHECK(seen.insert(t.pattern).second);
    }
}

TEST_CASE("build_ineq5 structure") {
    const BellExpression expr = build_ineq5();
    CHECK(expr.num_parties == 5);
    CHECK(expr.num_settings == 2);
    CHECK(expr.terms.size() == 70);
    int bipartite = 0, fourpartite = 0;
    for (const auto& t : expr.terms) {
        if (t.order() == 2) ++bipartite;
        if (t.order() == 4) ++fourpartite;
    }
    CHECK(bipartite == 20);
    CHECK(fourpartite == 50);
    CHECK_NOTHROW(expr.validate());
}

TEST_CASE("evaluate_deterministic") {
    const BellExpression expr = build_ineq5();
    SUBCASE("all outcomes +1") {
        DeterministicStrategy s;
        s.outcomes.assign(5, {1, 1});
        // 5 + 5 + 20 - 20 - 10 - 10
        CHECK(evaluate_deterministic(expr, s) == -10.0);
    }
    SUBCASE("single term") {
        BellExpression single;
        single.num_parties = 2;
        single.num_settings = 1;
        single.terms = {{{1, 1}, 1.0}};
        DeterministicStrategy s;
        s.outcomes = {{-1}, {1}};
        CHECK(evaluate_deterministic(single, s) == -1.0);
    }
    SUBCASE("integer coefficients give exact integers") {
        std::mt19937_64 rng(5);
        DeterministicStrategy s;
        s.outcomes.assign(5, {1, 1});
        for (auto& row : s.outcomes)
            for (auto& o : row) o = rng() % 2 == 0 ? 1 : -1;
        const double v = evaluate_deterministic(expr, s);
        CHECK(v == std::floor(v));
    }
    SUBCASE("shape mismatch") {
        DeterministicStrategy s;
        s.outcomes.assign(4, {1, 1});
        CHECK_THROWS_AS(evaluate_deterministic(expr, s), std::invalid_argument);
    }
}

TEST_CASE("lhv_bound") {
    SUBCASE("the 70-term inequality attains exactly three values") {
        const LhvBoundResult res = lhv_bound(build_ineq5());
        CHECK(res.max_value == 6.0);
        CHECK(res.min_value == -26.0);
        CHECK(res.value_set == std::vector<double>{-26.0, -10.0, 6.0});
        // the argmax reproduces the maximum exactly
        CHECK(evaluate_deterministic(build_ineq5(), res.argmax) == 6.0);
    }
    SUBCASE("CHSH bound") {
        CHECK(lhv_bound(build_chsh()).max_value == 2.0);
    }
    SUBCASE("single term") {
        BellExpression single;
        single.num_parties = 5;
        single.num_settings = 2;
        single.terms = {{{1, 1, 0, 0, 0}, 1.0}};
        const LhvBoundResult res = lhv_bound(single);
        CHECK(res.max_value == 1.0);
        CHECK(res.value_set == std::vector<double>{-1.0, 1.0});
    }
    SUBCASE("negation swaps max and min") {
        BellExpression neg = build_ineq5();
        for (auto& t : neg.terms) t.coefficient = -t.coefficient;
        const LhvBoundResult a = lhv_bound(build_ineq5());
        const LhvBoundResult b = lhv_bound(neg);
        CHECK(b.max_value == -a.min_value);
        CHECK(b.min_value == -a.max_value);
    }
    SUBCASE("non-integer coefficients deduplicate at tolerance") {
        BellExpression expr;
        expr.num_parties = 2;
        expr.num_settings = 1;
        expr.terms = {{{1, 0}, 0.5}, {{0, 1}, 0.5}, {{1, 1}, 1.0}};
        // 0.5a + 0.5b + ab over a,b = +-1 attains {2, -1, 0}
        const LhvBoundResult res = lhv_bound(expr);
        CHECK(res.max_value == doctest::Approx(2.0));
        REQUIRE(res.value_set.size() == 3);
        CHECK(res.value_set[0] == doctest::Approx(-1.0));
        CHECK(res.value_set[1] == doctest::Approx(0.0));
        CHECK(res.value_set[2] == doctest::Approx(2.0));
    }
    SUBCASE("enumeration cap") {
        BellExpression big;
        big.num_parties = 8;
        big.num_settings = 4;
        big.terms = {{{1, 1, 1, 1, 1, 1, 1, 1}, 1.0}};
        CHECK_THROWS_AS(lhv_bound(big), std::invalid_argument);
    }
}

TEST_CASE("evaluate_quantum") {
    const BellExpression expr = build_ineq5();
    const CorrelationTensor t = full_tensor(dicke_mixture(5, 2));
    SUBCASE("value at the shared near-optimal settings") {
        CHECK(evaluate_quantum(expr, t, paper_settings()) ==
              doctest::Approx(7.7831).epsilon(1e-4 / 7.7831));
    }
    SUBCASE("white noise gives zero") {
        CHECK(evaluate_quantum(expr, full_tensor(white_noise(5)), paper_settings()) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("linear in the noise admixture") {
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        const double pure = evaluate_quantum(expr, t, paper_settings());
        for (int trial = 0; trial < 5; ++trial) {
            const double p = uni(rng);
            const CorrelationTensor tp =
                full_tensor(mix_with_white_noise(dicke_mixture(5, 2), p));
            CHECK(evaluate_quantum(expr, tp, paper_settings()) ==
                  doctest::Approx(p * pure).epsilon(1e-10));
        }
    }
    SUBCASE("coordinate-axis settings agree with summed components") {
        // two evaluation routes: term contraction vs direct component sums
        const SettingsAssignment axes = shared_settings(
            5, {Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(1, 0, 0)});
        double direct = 0.0;
        for (const auto& term : expr.terms) {
            PauliIndexTuple tup(5, 0);
            for (int n = 0; n < 5; ++n) {
                if (term.pattern[n] == 1) tup[n] = 3;  // z
                if (term.pattern[n] == 2) tup[n] = 1;  // x
            }
            direct += term.coefficient * t.at(tup);
        }
        CHECK(evaluate_quantum(expr, t, axes) == doctest::Approx(direct).epsilon(1e-12));
    }
    SUBCASE("missing settings") {
        const SettingsAssignment one = shared_settings(5, {Eigen::Vector3d(0, 0, 1)});
        CHECK_THROWS_AS(evaluate_quantum(expr, t, one), std::invalid_argument);
    }
}

TEST_CASE("expression validation") {
    BellExpression expr;
    expr.num_parties = 2;
    expr.num_settings = 2;
    expr.terms = {{{1, 1}, 1.0}, {{1, 1}, 2.0}};
    CHECK_THROWS_AS(expr.validate(), std::invalid_argument);  // duplicate pattern
    expr.terms = {{{1, 3}, 1.0}};
    CHECK_THROWS_AS(expr.validate(), std::invalid_argument);  // setting out of range
    expr.terms = {{{0, 0}, 1.0}};
    CHECK_THROWS_AS(expr.validate(), std::invalid_argument);  // measures nobody
    expr.terms = {{{1}, 1.0}};
    CHECK_THROWS_AS(expr.validate(), std::invalid_argument);  // wrong length
}

TEST_CASE("expression JSON round trip") {
    const BellExpression expr = build_ineq5();
    const Json j = expression_to_json(expr);
    CHECK(j["parties"] == 5);
    CHECK(j["settings"] == 2);
    CHECK(j["terms"].size() == 70);
    // canonical ordering: patterns lexicographically sorted
    for (std::size_t i = 1; i < j["terms"].size(); ++i)
        CHECK(j["terms"][i - 1]["pattern"].get<std::vector<int>>() <
              j["terms"][i]["pattern"].get<std::vector<int>>());
    const BellExpression back = expression_from_json(j);
    CHECK(back.terms.size() == expr.terms.size());
    CHECK(expression_to_json(back) == j);  // bit-exact emission
    CHECK(lhv_bound(back).max_value == 6.0);
}
