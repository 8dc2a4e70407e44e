#pragma once

#include <Eigen/Dense>
#include <complex>

// N-qubit pure and mixed states: Dicke states, their even mixtures with
// anti-Dicke states, white-noise admixtures and partial traces.
//
// Conventions used throughout the library:
//   * qubit 1 is the most significant bit of a basis index (big-endian),
//     so basis index b stores qubit n in bit (N - n) counted from the LSB;
//   * bit value 0 is |0>, the +1 eigenstate of sigma_z.

namespace bellkit {

using Complex = std::complex<double>;

// Dense storage keeps everything trivial up to this size; the largest state
// the toolkit needs is the six-qubit Dicke state.
inline constexpr int kMaxQubits = 8;

struct StateVector {
    int num_qubits = 0;
    Eigen::VectorXcd amplitudes;

    int dim() const { return 1 << num_qubits; }
};

struct DensityMatrix {
    int num_qubits = 0;
    Eigen::MatrixXcd entries;

    int dim() const { return 1 << num_qubits; }
};

// Mixture parameters for (|D_N^e><D_N^e| + |D_N^{N-e}><D_N^{N-e}|) / 2.
// N must be odd so the two projectors are always distinct.
struct DickeSpec {
    int num_qubits = 0;
    int excitations = 0;
};

// Pauli labels; the index doubles as the correlation-tensor index value.
enum class Pauli : int { I = 0, X = 1, Y = 2, Z = 3 };

Eigen::Matrix2cd pauli_matrix(Pauli p);

// Equal superposition of all basis states with exactly e excitations,
// each with amplitude 1/sqrt(C(N, e)).
StateVector dicke_state(int num_qubits, int excitations);

// sigma_x on every qubit; maps dicke_state(N, e) to dicke_state(N, N - e).
StateVector flip_all(const StateVector& state);

DensityMatrix projector(const StateVector& state);

void validate_dicke_spec(const DickeSpec& spec);

DensityMatrix dicke_mixture(const DickeSpec& spec);
DensityMatrix dicke_mixture(int num_qubits, int excitations);

// Maximally mixed state I / 2^N.
DensityMatrix white_noise(int num_qubits);

// p * state + (1 - p) * I / 2^N.
DensityMatrix mix_with_white_noise(const DensityMatrix& state, double p);

// Trace out one qubit (1-based index); returns the (N-1)-qubit state.
DensityMatrix partial_trace(const DensityMatrix& state, int qubit);

// Invariant checks for states built or loaded from outside.
bool is_valid_state(const StateVector& state, double tol = 1e-12);
void validate_density_matrix(const DensityMatrix& rho, double tol = 1e-12);

// Swap two qubits of a density matrix (used by permutation-symmetry checks).
DensityMatrix swap_qubits(const DensityMatrix& rho, int qubit_a, int qubit_b);

}  // namespace bellkit
