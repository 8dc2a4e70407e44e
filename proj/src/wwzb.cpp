#include "bellkit/wwzb.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "bellkit/states.hpp"

namespace bellkit {

namespace {

Eigen::Matrix3d rotation_zyz(double a, double b, double c) {
    return (Eigen::AngleAxisd(a, Eigen::Vector3d::UnitZ()) *
            Eigen::AngleAxisd(b, Eigen::Vector3d::UnitY()) *
            Eigen::AngleAxisd(c, Eigen::Vector3d::UnitZ()))
        .toRotationMatrix();
}

PlaneBasis planes_from_angles(const std::vector<double>& angles, int k) {
    PlaneBasis basis;
    basis.planes.reserve(k);
    for (int p = 0; p < k; ++p) {
        const Eigen::Matrix3d r =
            rotation_zyz(angles[3 * p], angles[3 * p + 1], angles[3 * p + 2]);
        basis.planes.emplace_back(r.col(0), r.col(1));
    }
    return basis;
}

// Contract the sector with the 2x3 per-party plane matrices axis by axis,
// then sum the squares of the 2^k results. Scratch buffers are reused across
// calls by the optimizer.
double sum_squares_impl(const CorrelationSector& sec, const PlaneBasis& planes,
                        std::vector<double>& buf_a, std::vector<double>& buf_b) {
    const int k = sec.order();
    buf_a.assign(sec.values.begin(), sec.values.end());
    std::vector<double>* cur = &buf_a;
    std::vector<double>* next = &buf_b;
    std::size_t lead = 1;  // product of already-contracted axes (size 2 each)
    for (int p = 0; p < k; ++p) {
        const auto& [u, v] = planes.planes[p];
        const std::size_t tail = cur->size() / (lead * 3);
        next->resize(lead * 2 * tail);
        for (std::size_t l = 0; l < lead; ++l) {
            const double* block = cur->data() + l * 3 * tail;
            double* out0 = next->data() + (l * 2 + 0) * tail;
            double* out1 = next->data() + (l * 2 + 1) * tail;
            for (std::size_t t = 0; t < tail; ++t) {
                const double a = block[t], b = block[tail + t], c = block[2 * tail + t];
                out0[t] = u.x() * a + u.y() * b + u.z() * c;
                out1[t] = v.x() * a + v.y() * b + v.z() * c;
            }
        }
        std::swap(cur, next);
        lead *= 2;
    }
    double total = 0.0;
    for (double x : *cur) total += x * x;
    return total;
}

double sum_squares_impl(const CorrelationSector& sec, const PlaneBasis& planes) {
    std::vector<double> a, b;
    return sum_squares_impl(sec, planes, a, b);
}

}  // namespace

void validate_plane_basis(const PlaneBasis& basis, double tol) {
    for (const auto& [u, v] : basis.planes) {
        if (std::abs(u.norm() - 1.0) > tol || std::abs(v.norm() - 1.0) > tol ||
            std::abs(u.dot(v)) > tol)
            throw std::invalid_argument("plane basis is not orthonormal");
    }
}

double sum_squares_in_planes(const CorrelationSector& sec, const PlaneBasis& planes) {
    if (planes.size() != sec.order())
        throw std::invalid_argument("plane count does not match sector order");
    validate_plane_basis(planes);
    return sum_squares_impl(sec, planes);
}

double sum_squares_in_planes(const CorrelationTensor& tensor,
                             const std::vector<int>& parties, const PlaneBasis& planes) {
    return sum_squares_in_planes(
        sector(tensor, static_cast<int>(parties.size()), parties), planes);
}

WwzbResult maximize_ck(const CorrelationTensor& tensor, int k, const WwzbOptions& options) {
    if (k < 1 || k > tensor.num_qubits())
        throw std::invalid_argument("sector order outside [1, N]");
    std::vector<int> parties(k);
    std::iota(parties.begin(), parties.end(), 1);
    const CorrelationSector sec = sector(tensor, k, parties);

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * M_PI);

    WwzbResult best;
    best.value = -1.0;
    std::vector<double> buf_a, buf_b;
    const int total_starts = std::max(1, options.restarts);
    for (int r = 0; r < total_starts; ++r) {
        std::vector<double> angles(3 * k, 0.0);
        if (r > 0)
            for (double& a : angles) a = uni(rng);
        // r == 0: the symmetric start, every party measuring in the xy plane.

        PlaneBasis basis = planes_from_angles(angles, k);
        auto update_party = [&](std::size_t angle_index) {
            const int p = static_cast<int>(angle_index) / 3;
            const Eigen::Matrix3d rot =
                rotation_zyz(angles[3 * p], angles[3 * p + 1], angles[3 * p + 2]);
            basis.planes[p] = {rot.col(0), rot.col(1)};
        };

        double cur = sum_squares_impl(sec, basis, buf_a, buf_b);
        double step = 0.5;
        while (step > 1e-7) {
            bool improved = false;
            for (std::size_t i = 0; i < angles.size(); ++i) {
                for (double d : {step, -step}) {
                    // keep stepping while the move pays off
                    bool moved = false;
                    for (;;) {
                        angles[i] += d;
                        update_party(i);
                        const double trial = sum_squares_impl(sec, basis, buf_a, buf_b);
                        if (trial > cur + 1e-13) {
                            cur = trial;
                            moved = true;
                        } else {
                            angles[i] -= d;
                            update_party(i);
                            break;
                        }
                    }
                    if (moved) {
                        improved = true;
                        break;  // direction exhausted; try next angle
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        if (cur > best.value) {
            best.value = cur;
            best.planes = basis;
            best.restarts_used = r + 1;
        }
    }
    best.admits_model = best.value <= 1.0 + 1e-9;
    return best;
}

Fraction closed_form_c2(int num_qubits, int excitations) {
    // pure arithmetic: no state is built, so no qubit-count cap applies
    if (num_qubits < 3 || num_qubits % 2 == 0)
        throw std::invalid_argument("mixture requires an odd qubit count >= 3");
    if (excitations < 1 || excitations > (num_qubits - 1) / 2)
        throw std::invalid_argument("excitations outside [1, (N-1)/2]");
    const std::int64_t n = num_qubits;
    const std::int64_t e = excitations;
    Fraction f;
    f.num = 8 * e * e * (n - e) * (n - e);
    f.den = (n - 1) * (n - 1) * n * n;
    const std::int64_t g = std::gcd(f.num, f.den);
    f.num /= g;
    f.den /= g;
    return f;
}

}  // namespace bellkit
