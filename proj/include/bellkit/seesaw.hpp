#pragma once

#include <cstdint>

#include "bellkit/expression.hpp"
#include "bellkit/settings.hpp"

// Coordinate-ascent maximization of a correlation Bell expression over local
// measurement directions: each (party, setting) Bloch vector is replaced in
// turn by its normalized effective vector, which is the exact block optimum
// of the multilinear objective.

namespace bellkit {

struct SeesawResult {
    double value = 0.0;
    SettingsAssignment settings;
    int sweeps = 0;
    int restarts_used = 0;
    bool converged = false;
};

struct SeesawOptions {
    int restarts = 100;
    std::uint64_t seed = 0;
    int max_sweeps = 10000;
    double sweep_tolerance = 1e-12;
    // Optional warm start, tried in addition to the symmetric and random starts.
    const SettingsAssignment* initial = nullptr;
};

// The shared near-optimal pair of settings for the five-party mixed-order
// inequality: both vectors lie in the xz plane, at polar angles
// pi - 2*(-pi/5) and pi - 2*(pi/20) from +z.
SettingsAssignment paper_settings();

// Gradient of the objective with respect to the (party, setting) vector:
// the expression value equals v . s + (terms not involving this slot).
// Indices are 1-based.
Eigen::Vector3d effective_vector(const BellExpression& expr,
                                 const CorrelationTensor& tensor,
                                 const SettingsAssignment& settings, int party,
                                 int setting);

SeesawResult seesaw_maximize(const BellExpression& expr, const CorrelationTensor& tensor,
                             const SeesawOptions& options = {});

}  // namespace bellkit
