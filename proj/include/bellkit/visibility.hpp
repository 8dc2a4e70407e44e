#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "bellkit/behavior.hpp"
#include "bellkit/settings.hpp"
#include "bellkit/simplex.hpp"
#include "bellkit/states.hpp"
#include "bellkit/tensor.hpp"

// Critical white-noise visibility: the largest p at which
// p * rho + (1 - p) * I/2^N still has a local model for the chosen
// measurements, decided by linear programming over the local polytope, plus
// the outer minimization over measurement settings.

namespace bellkit {

// Party-permutation reduction of the membership LP. The states and shared
// settings probed here are permutation-symmetric, so vertices can be
// averaged over party-permutation orbits: columns become multisets of local
// strategies and rows orbit representatives of (settings, outcomes) pairs.
struct SymmetricReduction {
    int num_parties = 0;
    int num_settings = 0;
    // representative (setting tuple index, outcome index) per orbit
    std::vector<std::pair<int, int>> representatives;
    // columns[c] = sorted multiset of local strategy codes
    std::vector<std::vector<int>> column_multisets;
    // dense column values: value[c][r] = fraction of the multiset's distinct
    // orderings consistent with representative r
    std::vector<std::vector<double>> column_values;
    // distinct orderings of each multiset (orbit size of the vertex)
    std::vector<long> orbit_sizes;
};

SymmetricReduction build_symmetric_reduction(int num_parties, int num_settings);

struct VertexWeight {
    DeterministicBehaviorIndex vertex;
    double weight = 0.0;
};

struct VisibilityResult {
    double p_crit = 0.0;
    std::vector<VertexWeight> weights;  // convex decomposition at p_crit
    SettingsAssignment settings;
    bool reduced = false;  // solved on the orbit-reduced LP
    LpStatus status = LpStatus::Optimal;
};

struct VisibilityOptions {
    enum class Reduction { Auto, On, Off };
    Reduction reduction = Reduction::Auto;
    LpOptions lp;
    double symmetry_tol = 1e-9;
    // reused across solves when many LPs share (N, S); optional
    const SymmetricReduction* cached_reduction = nullptr;
    // caller-certified permutation symmetry of the state: Auto skips the
    // behavior-level symmetry check when settings are shared
    bool assume_symmetric = false;
    // correlation tensor of the state; with the reduction active, orbit
    // representative probabilities are contracted from it directly instead
    // of materializing the full behavior table
    const CorrelationTensor* cached_tensor = nullptr;
};

// max v s.t. v P_state + (1-v) P_noise = sum_i lambda_i D_i, lambda >= 0,
// sum lambda = 1, 0 <= v <= 1.
VisibilityResult visibility_for_settings(const DensityMatrix& state,
                                         const SettingsAssignment& settings,
                                         const VisibilityOptions& options = {});

struct CriticalVisibilityOptions {
    int restarts = 50;
    std::uint64_t seed = 0;
    bool shared_settings = true;  // all parties use the same setting vectors
    double angle_tol = 1e-5;
    VisibilityOptions vis;
};

// Minimize visibility_for_settings over measurement settings by multi-start
// pattern search on Bloch angles (planar symmetric start always included).
VisibilityResult critical_visibility(const DensityMatrix& state, int num_settings,
                                     const CriticalVisibilityOptions& options = {});

// Convex recombination of vertices; used to verify certificates.
Behavior weights_to_behavior(const std::vector<VertexWeight>& weights, int num_parties,
                             int num_settings);

}  // namespace bellkit
