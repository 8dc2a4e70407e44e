#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "bellkit/tensor.hpp"

// Two-setting sufficiency criterion for k-party correlations: maximize the
// sum of squared correlation components over one measurement plane per
// observer. A maximum <= 1 certifies a local model for those correlations.

namespace bellkit {

// Per party an orthonormal pair (u, v) spanning the measurement plane.
struct PlaneBasis {
    std::vector<std::pair<Eigen::Vector3d, Eigen::Vector3d>> planes;

    int size() const { return static_cast<int>(planes.size()); }
};

void validate_plane_basis(const PlaneBasis& basis, double tol = 1e-10);

struct WwzbResult {
    double value = 0.0;
    PlaneBasis planes;
    bool admits_model = false;  // value <= 1 + 1e-9
    int restarts_used = 0;
};

// Exact rational, reduced.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Sum over the 2^k direction choices (u or v per party) of the squared
// contraction of the order-k sector on `parties`.
double sum_squares_in_planes(const CorrelationTensor& tensor,
                             const std::vector<int>& parties, const PlaneBasis& planes);

double sum_squares_in_planes(const CorrelationSector& sec, const PlaneBasis& planes);

struct WwzbOptions {
    int restarts = 200;
    std::uint64_t seed = 0;
};

// Multi-start pattern search over per-party plane orientations; parties
// 1..k are used (the states of interest have identical sectors on every
// party subset). The symmetric all-parties-share-one-plane start is always
// included alongside the random restarts.
WwzbResult maximize_ck(const CorrelationTensor& tensor, int k,
                       const WwzbOptions& options = {});

// 8 e^2 (N-e)^2 / ((N-1)^2 N^2), the planar two-party value of the Dicke
// mixtures. Note this is not always the plane optimum: for (7,1) the
// optimizing plane contains the z axis and maximize_ck returns 13/49 instead.
Fraction closed_form_c2(int num_qubits, int excitations);

}  // namespace bellkit
