#include "bellkit/tensor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bellkit {

namespace {

// A Pauli tensor product has exactly one nonzero entry per row. For row r the
// nonzero sits at column `col(r)` with value `val(r)`; both factor over qubits.
struct PauliRow {
    int col;
    Complex val;
};

PauliRow pauli_row(const PauliIndexTuple& tuple, int num_qubits, int row) {
    int col = 0;
    Complex val(1.0, 0.0);
    for (int n = 0; n < num_qubits; ++n) {
        const int pos = num_qubits - 1 - n;
        const int b = (row >> pos) & 1;
        switch (tuple[n]) {
            case 0: col |= b << pos; break;
            case 1: col |= (1 - b) << pos; break;
            case 2:
                col |= (1 - b) << pos;
                val *= b == 0 ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
                break;
            case 3:
                col |= b << pos;
                if (b == 1) val = -val;
                break;
            default:
                throw std::invalid_argument("Pauli index outside {0,1,2,3}");
        }
    }
    return {col, val};
}

}  // namespace

CorrelationTensor::CorrelationTensor(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
        throw std::invalid_argument("tensor qubit count outside [1, 8]");
    values_.assign(std::size_t{1} << (2 * num_qubits), 0.0);
}

int CorrelationTensor::encode(const PauliIndexTuple& tuple) const {
    if (static_cast<int>(tuple.size()) != num_qubits_)
        throw std::invalid_argument("index tuple length does not match qubit count");
    int idx = 0;
    for (int v : tuple) {
        if (v < 0 || v > 3) throw std::invalid_argument("Pauli index outside {0,1,2,3}");
        idx = idx * 4 + v;
    }
    return idx;
}

PauliIndexTuple CorrelationTensor::decode(int index) const {
    PauliIndexTuple tuple(num_qubits_);
    for (int n = num_qubits_ - 1; n >= 0; --n) {
        tuple[n] = index & 3;
        index >>= 2;
    }
    return tuple;
}

double CorrelationSector::at(const std::vector<int>& axes) const {
    if (axes.size() != parties.size())
        throw std::invalid_argument("sector index length mismatch");
    int idx = 0;
    for (int a : axes) {
        if (a < 1 || a > 3) throw std::invalid_argument("sector index outside {1,2,3}");
        idx = idx * 3 + (a - 1);
    }
    return values[idx];
}

double tensor_component(const DensityMatrix& state, const PauliIndexTuple& tuple) {
    const int n = state.num_qubits;
    if (static_cast<int>(tuple.size()) != n)
        throw std::invalid_argument("index tuple length does not match state");
    Complex sum(0.0, 0.0);
    for (int row = 0; row < state.dim(); ++row) {
        const PauliRow pr = pauli_row(tuple, n, row);
        sum += pr.val * state.entries(pr.col, row);
    }
    if (std::abs(sum.imag()) >= 1e-10)
        throw std::runtime_error("correlation component has imaginary part " +
                                 std::to_string(sum.imag()));
    return sum.real();
}

CorrelationTensor full_tensor(const DensityMatrix& state) {
    CorrelationTensor t(state.num_qubits);
    PauliIndexTuple tuple(state.num_qubits, 0);
    for (int idx = 0; idx < t.size(); ++idx)
        t[idx] = tensor_component(state, t.decode(idx));
    return t;
}

CorrelationSector sector(const CorrelationTensor& tensor, int k,
                         const std::vector<int>& parties) {
    const int n = tensor.num_qubits();
    if (k < 1 || k > n) throw std::invalid_argument("sector order outside [1, N]");
    if (static_cast<int>(parties.size()) != k)
        throw std::invalid_argument("party set size does not match sector order");
    std::vector<bool> seen(n + 1, false);
    for (int p : parties) {
        if (p < 1 || p > n || seen[p]) throw std::invalid_argument("bad party index set");
        seen[p] = true;
    }

    CorrelationSector s;
    s.parties = parties;
    std::sort(s.parties.begin(), s.parties.end());
    s.values.resize(static_cast<std::size_t>(std::pow(3, k)));
    PauliIndexTuple tuple(n, 0);
    std::vector<int> axes(k, 1);
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        std::size_t rem = i;
        for (int j = k - 1; j >= 0; --j) {
            axes[j] = static_cast<int>(rem % 3) + 1;
            rem /= 3;
        }
        std::fill(tuple.begin(), tuple.end(), 0);
        for (int j = 0; j < k; ++j) tuple[s.parties[j] - 1] = axes[j];
        s.values[i] = tensor.at(tuple);
    }
    return s;
}

double contract(const CorrelationTensor& tensor, const DirectionTuple& directions) {
    const int n = tensor.num_qubits();
    if (static_cast<int>(directions.size()) != n)
        throw std::invalid_argument("direction tuple length does not match tensor");

    // Per-party weights over mu = 0..3; contraction is a plain weighted sum.
    std::vector<std::array<double, 4>> w(n);
    for (int i = 0; i < n; ++i) {
        if (directions[i].has_value()) {
            const Eigen::Vector3d& d = *directions[i];
            w[i] = {0.0, d.x(), d.y(), d.z()};
        } else {
            w[i] = {1.0, 0.0, 0.0, 0.0};
        }
    }

    double total = 0.0;
    const int size = tensor.size();
    for (int idx = 0; idx < size; ++idx) {
        const double t = tensor[idx];
        if (t == 0.0) continue;
        double prod = t;
        int rem = idx;
        for (int i = n - 1; i >= 0 && prod != 0.0; --i) {
            prod *= w[i][rem & 3];
            rem >>= 2;
        }
        total += prod;
    }
    return total;
}

DensityMatrix reconstruct_state(const CorrelationTensor& tensor) {
    const int n = tensor.num_qubits();
    DensityMatrix rho;
    rho.num_qubits = n;
    const int d = 1 << n;
    rho.entries = Eigen::MatrixXcd::Zero(d, d);
    for (int idx = 0; idx < tensor.size(); ++idx) {
        const double t = tensor[idx];
        if (t == 0.0) continue;
        const PauliIndexTuple tuple = tensor.decode(idx);
        for (int row = 0; row < d; ++row) {
            const auto pr = pauli_row(tuple, n, row);
            // adds t * P, using that P_{row, col} = val and P is the only
            // nonzero in that row
            rho.entries(row, pr.col) += t * pr.val;
        }
    }
    rho.entries /= static_cast<double>(d);
    return rho;
}

}  // namespace bellkit
