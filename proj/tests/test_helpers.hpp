#pragma once

#include <random>

#include "bellkit/settings.hpp"
#include "bellkit/states.hpp"

namespace bellkit::test {

inline StateVector random_state(int num_qubits, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    StateVector s;
    s.num_qubits = num_qubits;
    s.amplitudes.resize(1 << num_qubits);
    for (int i = 0; i < s.dim(); ++i) s.amplitudes[i] = Complex(gauss(rng), gauss(rng));
    s.amplitudes.normalize();
    return s;
}

// Ginibre construction: G G^dag / tr, full rank almost surely.
inline DensityMatrix random_density_matrix(int num_qubits, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int d = 1 << num_qubits;
    Eigen::MatrixXcd g(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
    DensityMatrix rho;
    rho.num_qubits = num_qubits;
    rho.entries = g * g.adjoint();
    rho.entries /= rho.entries.trace().real();
    return rho;
}

inline Eigen::Vector3d random_unit3(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Vector3d v;
    do {
        v = {gauss(rng), gauss(rng), gauss(rng)};
    } while (v.norm() < 1e-9);
    return v.normalized();
}

inline StateVector singlet() {
    StateVector s;
    s.num_qubits = 2;
    s.amplitudes = Eigen::VectorXcd::Zero(4);
    s.amplitudes[1] = 1.0 / std::sqrt(2.0);
    s.amplitudes[2] = -1.0 / std::sqrt(2.0);
    return s;
}

// Alice {z, x}, Bob the diagonal pair: the settings with CHSH value 2*sqrt(2)
// on the singlet.
inline SettingsAssignment chsh_optimal_settings() {
    const double r = 1.0 / std::sqrt(2.0);
    SettingsAssignment st;
    st.vectors = {
        {Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(1, 0, 0)},
        {Eigen::Vector3d(-r, 0, -r), Eigen::Vector3d(-r, 0, r)},
    };
    return st;
}

}  // namespace bellkit::test
