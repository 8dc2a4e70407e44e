#pragma once

#include <cstdint>
#include <vector>

#include "bellkit/settings.hpp"
#include "bellkit/states.hpp"

// Joint outcome-probability tables P(a|j) over all setting combinations, the
// objects whose local-polytope membership the visibility analysis decides.

namespace bellkit {

// Dense table indexed by (settings tuple, outcomes tuple). Settings tuples
// run over {1..S}^N, outcomes over {+1,-1}^N with bit 0 = +1; both are packed
// with party 1 as the most significant digit/bit.
class Behavior {
  public:
    Behavior() = default;
    Behavior(int num_parties, int num_settings);

    int num_parties() const { return num_parties_; }
    int num_settings() const { return num_settings_; }
    int num_setting_tuples() const { return setting_tuples_; }
    int num_outcome_tuples() const { return 1 << num_parties_; }
    int size() const { return static_cast<int>(p_.size()); }

    // j entries 1-based ({1..S}), outcome entries +-1
    double& at(const std::vector<int>& j, const std::vector<int>& outcomes);
    double at(const std::vector<int>& j, const std::vector<int>& outcomes) const;

    double& entry(int j_index, int a_index) { return p_[index(j_index, a_index)]; }
    double entry(int j_index, int a_index) const { return p_[index(j_index, a_index)]; }
    int index(int j_index, int a_index) const {
        return j_index * num_outcome_tuples() + a_index;
    }

    const std::vector<double>& raw() const { return p_; }
    std::vector<double>& raw() { return p_; }

    // outcome probabilities sum to 1 per settings tuple; entries in [0,1]
    void validate(double tol = 1e-10) const;
    // marginals of any party subset independent of the other parties' settings
    double no_signaling_deviation() const;
    // max deviation under simultaneous permutation of parties (checked on the
    // generating transposition and cycle)
    double permutation_symmetry_deviation() const;

  private:
    int num_parties_ = 0;
    int num_settings_ = 0;
    int setting_tuples_ = 0;
    std::vector<double> p_;
};

// Born rule with projectors (I + a s.sigma)/2 per party.
Behavior quantum_behavior(const DensityMatrix& state, const SettingsAssignment& settings);

Behavior white_noise_behavior(int num_parties, int num_settings);

// Local deterministic strategy of one party: bit s of the code is the
// outcome for setting s+1, with bit value 0 = +1.
struct DeterministicBehaviorIndex {
    std::vector<int> strategies;  // per party, in [0, 2^S)
};

Behavior deterministic_behavior(const DeterministicBehaviorIndex& index, int num_settings);

// All (2^S)^N vertices of the local polytope (capped at 2^20).
std::vector<DeterministicBehaviorIndex> deterministic_behaviors(int num_parties,
                                                                int num_settings);

// Correlation of a party subset from behavior marginals:
//   sum_a P(a|j) prod_{n in parties} a_n
// (j 1-based per party; parties 1-based). Independent route to the tensor
// contraction and used to cross-check it.
double behavior_correlation(const Behavior& behavior, const std::vector<int>& j,
                            const std::vector<int>& parties);

}  // namespace bellkit
