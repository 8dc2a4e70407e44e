#include "bellkit/seesaw.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace bellkit {

namespace {

Eigen::Vector3d random_unit_vector(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Vector3d v;
    do {
        v = {gauss(rng), gauss(rng), gauss(rng)};
    } while (v.norm() < 1e-12);
    return v.normalized();
}

}  // namespace

SettingsAssignment paper_settings() {
    const double a1 = M_PI - 2.0 * (-M_PI / 5.0);
    const double a2 = M_PI - 2.0 * (M_PI / 20.0);
    const Eigen::Vector3d s1(std::sin(a1), 0.0, std::cos(a1));
    const Eigen::Vector3d s2(std::sin(a2), 0.0, std::cos(a2));
    return shared_settings(5, {s1, s2});
}

Eigen::Vector3d effective_vector(const BellExpression& expr,
                                 const CorrelationTensor& tensor,
                                 const SettingsAssignment& settings, int party,
                                 int setting) {
    if (party < 1 || party > expr.num_parties || setting < 1 ||
        setting > expr.num_settings)
        throw std::invalid_argument("party or setting index out of range");

    const int n = expr.num_parties;
    Eigen::Vector3d grad = Eigen::Vector3d::Zero();
    for (const auto& t : expr.terms) {
        if (t.pattern[party - 1] != setting) continue;
        // walk only the term's support: measured slots range over {1,2,3},
        // unmeasured are pinned to 0
        std::vector<int> other;  // measured parties except `party` (0-based)
        for (int i = 0; i < n; ++i)
            if (i != party - 1 && t.pattern[i] > 0) other.push_back(i);
        const int m = static_cast<int>(other.size());
        const long combos = static_cast<long>(std::pow(3, m));
        std::vector<int> mu(n, 0);
        for (long c = 0; c < combos; ++c) {
            long rem = c;
            double prod = 1.0;
            for (int j = 0; j < m; ++j) {
                const int axis = static_cast<int>(rem % 3);
                rem /= 3;
                mu[other[j]] = axis + 1;
                prod *= settings.at(other[j] + 1, t.pattern[other[j]])[axis];
            }
            for (int axis = 0; axis < 3; ++axis) {
                mu[party - 1] = axis + 1;
                grad[axis] += t.coefficient * prod * tensor.at(mu);
            }
        }
    }
    return grad;
}

SeesawResult seesaw_maximize(const BellExpression& expr, const CorrelationTensor& tensor,
                             const SeesawOptions& options) {
    if (options.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    std::mt19937_64 rng(options.seed);

    const int n = expr.num_parties;
    const int s = expr.num_settings;

    SeesawResult best;
    best.value = -std::numeric_limits<double>::infinity();

    const int extra = options.initial != nullptr ? 1 : 0;
    for (int r = 0; r < options.restarts + 1 + extra; ++r) {
        SettingsAssignment cur;
        if (r == 0) {
            // symmetric planar start: all parties share xy-plane vectors
            std::vector<Eigen::Vector3d> shared;
            for (int j = 0; j < s; ++j) {
                const double a = M_PI * j / std::max(1, s);
                shared.emplace_back(std::cos(a), std::sin(a), 0.0);
            }
            cur = shared_settings(n, shared);
        } else if (options.initial != nullptr && r == 1) {
            cur = *options.initial;
            validate_settings(cur);
        } else {
            cur.vectors.assign(n, {});
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < s; ++j) cur.vectors[i].push_back(random_unit_vector(rng));
        }

        double value = evaluate_quantum(expr, tensor, cur);
        int sweeps = 0;
        bool converged = false;
        while (sweeps < options.max_sweeps) {
            const double sweep_start = value;
            for (int p = 1; p <= n; ++p) {
                for (int j = 1; j <= s; ++j) {
                    const Eigen::Vector3d g = effective_vector(expr, tensor, cur, p, j);
                    if (g.norm() < 1e-12) continue;  // degenerate slot: keep old direction
                    // value = g . s + rest, so replacing s by g/|g| raises the
                    // objective by |g| - g . s_old >= 0
                    const double before = g.dot(cur.vectors[p - 1][j - 1]);
                    const double after = g.norm();
                    if (after < before - 1e-12)
                        throw std::logic_error("seesaw objective decreased during update");
                    cur.vectors[p - 1][j - 1] = g.normalized();
                    value += after - before;
                }
            }
            ++sweeps;
            if (value - sweep_start < options.sweep_tolerance) {
                converged = true;
                break;
            }
        }
        value = evaluate_quantum(expr, tensor, cur);

        if (value > best.value) {
            best.value = value;
            best.settings = cur;
            best.sweeps = sweeps;
            best.converged = converged;
            best.restarts_used = r + 1;
        }
    }
    return best;
}

}  // namespace bellkit
