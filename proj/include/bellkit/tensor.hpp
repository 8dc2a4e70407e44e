#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "bellkit/states.hpp"

// Extended correlation tensor T_{mu_1...mu_N} = Tr[rho sigma_mu1 x ... x sigma_muN]
// with mu in {0 = I, 1 = X, 2 = Y, 3 = Z} per party.

namespace bellkit {

using PauliIndexTuple = std::vector<int>;

// Per-party measurement direction for contractions: nullopt marks an identity
// slot (party not measured), otherwise a Bloch 3-vector (unit norm for
// physical settings; contraction itself is linear so any vector is accepted).
using DirectionTuple = std::vector<std::optional<Eigen::Vector3d>>;

class CorrelationTensor {
  public:
    CorrelationTensor() = default;
    explicit CorrelationTensor(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    int size() const { return static_cast<int>(values_.size()); }

    // Base-4 encoding with party 1 as the most significant digit.
    int encode(const PauliIndexTuple& tuple) const;
    PauliIndexTuple decode(int index) const;

    double operator[](int index) const { return values_[index]; }
    double& operator[](int index) { return values_[index]; }
    double at(const PauliIndexTuple& tuple) const { return values_[encode(tuple)]; }
    double& at(const PauliIndexTuple& tuple) { return values_[encode(tuple)]; }

    const std::vector<double>& values() const { return values_; }

  private:
    int num_qubits_ = 0;
    std::vector<double> values_;
};

// Order-k restriction of a tensor: the components whose non-identity indices
// sit exactly on `parties`, reindexed over {x, y, z}^k. Stored dense in base-3.
struct CorrelationSector {
    std::vector<int> parties;   // 1-based, strictly increasing
    std::vector<double> values; // size 3^k

    int order() const { return static_cast<int>(parties.size()); }
    // axes: per-party indices in {1, 2, 3}
    double at(const std::vector<int>& axes) const;
};

// Single component Tr[rho P]; throws if the imaginary part of the trace
// exceeds 1e-10 (it vanishes identically for Hermitian inputs).
double tensor_component(const DensityMatrix& state, const PauliIndexTuple& tuple);

// All 4^N components.
CorrelationTensor full_tensor(const DensityMatrix& state);

CorrelationSector sector(const CorrelationTensor& tensor, int k,
                         const std::vector<int>& parties);

// Multilinear contraction: sum over mu of T_mu * prod_n w_n(mu_n) with
// w_n = (1,0,0,0) for identity slots and (0, sx, sy, sz) for directions.
double contract(const CorrelationTensor& tensor, const DirectionTuple& directions);

// Inverse of full_tensor: rho = 2^-N sum_mu T_mu sigma_mu1 x ... x sigma_muN.
DensityMatrix reconstruct_state(const CorrelationTensor& tensor);

}  // namespace bellkit
