#include "bellkit/states.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bellkit {

namespace {

double binomial(int n, int k) {
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out *= static_cast<double>(n - k + i) / i;
    return out;
}

void check_qubit_count(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
        throw std::invalid_argument("qubit count " + std::to_string(num_qubits) +
                                    " outside [1, " + std::to_string(kMaxQubits) + "]");
}

}  // namespace

Eigen::Matrix2cd pauli_matrix(Pauli p) {
    Eigen::Matrix2cd m;
    const Complex i(0.0, 1.0);
    switch (p) {
        case Pauli::I: m << 1, 0, 0, 1; break;
        case Pauli::X: m << 0, 1, 1, 0; break;
        case Pauli::Y: m << 0, -i, i, 0; break;
        case Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

StateVector dicke_state(int num_qubits, int excitations) {
    check_qubit_count(num_qubits);
    if (excitations < 0 || excitations > num_qubits)
        throw std::invalid_argument("excitations " + std::to_string(excitations) +
                                    " outside [0, " + std::to_string(num_qubits) + "]");
    StateVector s;
    s.num_qubits = num_qubits;
    s.amplitudes = Eigen::VectorXcd::Zero(1 << num_qubits);
    const double amp = 1.0 / std::sqrt(binomial(num_qubits, excitations));
    for (int b = 0; b < (1 << num_qubits); ++b)
        if (std::popcount(static_cast<unsigned>(b)) == excitations) s.amplitudes[b] = amp;
    return s;
}

StateVector flip_all(const StateVector& state) {
    StateVector out;
    out.num_qubits = state.num_qubits;
    out.amplitudes = Eigen::VectorXcd::Zero(state.dim());
    const int mask = state.dim() - 1;
    for (int b = 0; b < state.dim(); ++b) out.amplitudes[b ^ mask] = state.amplitudes[b];
    return out;
}

DensityMatrix projector(const StateVector& state) {
    DensityMatrix rho;
    rho.num_qubits = state.num_qubits;
    rho.entries = state.amplitudes * state.amplitudes.adjoint();
    return rho;
}

void validate_dicke_spec(const DickeSpec& spec) {
    check_qubit_count(spec.num_qubits);
    if (spec.num_qubits % 2 == 0)
        throw std::invalid_argument("mixture requires an odd qubit count");
    if (spec.excitations < 1 || spec.excitations > (spec.num_qubits - 1) / 2)
        throw std::invalid_argument("excitations " + std::to_string(spec.excitations) +
                                    " outside [1, (N-1)/2]");
}

DensityMatrix dicke_mixture(const DickeSpec& spec) {
    validate_dicke_spec(spec);
    const DensityMatrix a = projector(dicke_state(spec.num_qubits, spec.excitations));
    const DensityMatrix b =
        projector(dicke_state(spec.num_qubits, spec.num_qubits - spec.excitations));
    DensityMatrix rho;
    rho.num_qubits = spec.num_qubits;
    rho.entries = 0.5 * (a.entries + b.entries);
    return rho;
}

DensityMatrix dicke_mixture(int num_qubits, int excitations) {
    return dicke_mixture(DickeSpec{num_qubits, excitations});
}

DensityMatrix white_noise(int num_qubits) {
    check_qubit_count(num_qubits);
    DensityMatrix rho;
    rho.num_qubits = num_qubits;
    const int d = 1 << num_qubits;
    rho.entries = Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d);
    return rho;
}

DensityMatrix mix_with_white_noise(const DensityMatrix& state, double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("mixing weight " + std::to_string(p) + " outside [0, 1]");
    DensityMatrix rho;
    rho.num_qubits = state.num_qubits;
    const int d = state.dim();
    rho.entries = p * state.entries +
                  ((1.0 - p) / d) * Eigen::MatrixXcd::Identity(d, d);
    return rho;
}

DensityMatrix partial_trace(const DensityMatrix& state, int qubit) {
    const int n = state.num_qubits;
    if (qubit < 1 || qubit > n) throw std::out_of_range("qubit index out of range");
    if (n < 2) throw std::invalid_argument("cannot trace out the only qubit");

    const int pos = n - qubit;  // bit position of the traced qubit
    const int dout = 1 << (n - 1);
    const int low_mask = (1 << pos) - 1;

    auto embed = [&](int r, int t) {
        return ((r & ~low_mask) << 1) | (t << pos) | (r & low_mask);
    };

    DensityMatrix out;
    out.num_qubits = n - 1;
    out.entries = Eigen::MatrixXcd::Zero(dout, dout);
    for (int r = 0; r < dout; ++r)
        for (int c = 0; c < dout; ++c)
            for (int t = 0; t < 2; ++t)
                out.entries(r, c) += state.entries(embed(r, t), embed(c, t));
    return out;
}

bool is_valid_state(const StateVector& state, double tol) {
    if (state.num_qubits < 1 || state.amplitudes.size() != state.dim()) return false;
    return std::abs(state.amplitudes.squaredNorm() - 1.0) <= tol;
}

void validate_density_matrix(const DensityMatrix& rho, double tol) {
    check_qubit_count(rho.num_qubits);
    if (rho.entries.rows() != rho.dim() || rho.entries.cols() != rho.dim())
        throw std::invalid_argument("density matrix dimension does not match qubit count");
    if ((rho.entries - rho.entries.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(rho.entries.trace().real() - 1.0) > tol ||
        std::abs(rho.entries.trace().imag()) > tol)
        throw std::invalid_argument("density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.entries, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw std::invalid_argument("density matrix has a negative eigenvalue");
}

DensityMatrix swap_qubits(const DensityMatrix& rho, int qubit_a, int qubit_b) {
    const int n = rho.num_qubits;
    if (qubit_a < 1 || qubit_a > n || qubit_b < 1 || qubit_b > n)
        throw std::out_of_range("qubit index out of range");
    const int pa = n - qubit_a;
    const int pb = n - qubit_b;
    auto perm = [&](int b) {
        const int ba = (b >> pa) & 1;
        const int bb = (b >> pb) & 1;
        int out = b & ~((1 << pa) | (1 << pb));
        return out | (bb << pa) | (ba << pb);
    };
    DensityMatrix out;
    out.num_qubits = n;
    out.entries.resize(rho.dim(), rho.dim());
    for (int r = 0; r < rho.dim(); ++r)
        for (int c = 0; c < rho.dim(); ++c) out.entries(perm(r), perm(c)) = rho.entries(r, c);
    return out;
}

}  // namespace bellkit
