#include "bellkit/behavior.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace bellkit {

namespace {

int int_pow(int base, int exp) {
    int out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

}  // namespace

Behavior::Behavior(int num_parties, int num_settings)
    : num_parties_(num_parties), num_settings_(num_settings) {
    if (num_parties < 1 || num_parties > kMaxQubits)
        throw std::invalid_argument("party count outside [1, 8]");
    if (num_settings < 1 || num_settings > 4)
        throw std::invalid_argument("settings count outside [1, 4]");
    setting_tuples_ = int_pow(num_settings, num_parties);
    p_.assign(static_cast<std::size_t>(setting_tuples_) * (1 << num_parties), 0.0);
}

namespace {

std::pair<int, int> pack_indices(const std::vector<int>& j, const std::vector<int>& outcomes,
                                 int num_parties, int num_settings) {
    if (static_cast<int>(j.size()) != num_parties ||
        static_cast<int>(outcomes.size()) != num_parties)
        throw std::invalid_argument("tuple length does not match party count");
    int ji = 0, ai = 0;
    for (int n = 0; n < num_parties; ++n) {
        if (j[n] < 1 || j[n] > num_settings)
            throw std::invalid_argument("setting index out of range");
        ji = ji * num_settings + (j[n] - 1);
        if (outcomes[n] != 1 && outcomes[n] != -1)
            throw std::invalid_argument("outcomes must be +-1");
        ai = (ai << 1) | (outcomes[n] == 1 ? 0 : 1);
    }
    return {ji, ai};
}

}  // namespace

double& Behavior::at(const std::vector<int>& j, const std::vector<int>& outcomes) {
    const auto [ji, ai] = pack_indices(j, outcomes, num_parties_, num_settings_);
    return p_[index(ji, ai)];
}

double Behavior::at(const std::vector<int>& j, const std::vector<int>& outcomes) const {
    const auto [ji, ai] = pack_indices(j, outcomes, num_parties_, num_settings_);
    return p_[index(ji, ai)];
}

void Behavior::validate(double tol) const {
    for (int ji = 0; ji < setting_tuples_; ++ji) {
        double sum = 0.0;
        for (int ai = 0; ai < num_outcome_tuples(); ++ai) {
            const double v = entry(ji, ai);
            if (v < -tol || v > 1.0 + tol)
                throw std::invalid_argument("probability outside [0, 1]: " +
                                            std::to_string(v));
            sum += v;
        }
        if (std::abs(sum - 1.0) > tol)
            throw std::invalid_argument("outcome probabilities sum to " +
                                        std::to_string(sum));
    }
}

double Behavior::no_signaling_deviation() const {
    // For every party subset marginal, compare across the remaining parties'
    // settings. It is enough to check single-party-removed marginals: fix all
    // parties but one, sum that party's outcomes, and vary its setting.
    double worst = 0.0;
    const int n = num_parties_;
    for (int fixed = 0; fixed < n; ++fixed) {
        const int pos = n - 1 - fixed;  // bit position of the summed party
        std::vector<int> j(n, 1);
        // iterate all settings tuples of the other parties
        const int other_tuples = int_pow(num_settings_, n - 1);
        for (int ot = 0; ot < other_tuples; ++ot) {
            int rem = ot;
            for (int i = n - 1; i >= 0; --i) {
                if (i == fixed) continue;
                j[i] = rem % num_settings_ + 1;
                rem /= num_settings_;
            }
            // marginal over the fixed party's outcomes for each of its settings
            for (int a_rest = 0; a_rest < (1 << (n - 1)); ++a_rest) {
                // expand a_rest to a full outcome index with a hole at `fixed`
                const int high = (a_rest >> pos) << (pos + 1);
                const int low = a_rest & ((1 << pos) - 1);
                double ref = 0.0;
                for (int s = 1; s <= num_settings_; ++s) {
                    j[fixed] = s;
                    int ji = 0;
                    for (int i = 0; i < n; ++i) ji = ji * num_settings_ + (j[i] - 1);
                    double sum = 0.0;
                    for (int b = 0; b < 2; ++b) sum += entry(ji, high | (b << pos) | low);
                    if (s == 1)
                        ref = sum;
                    else
                        worst = std::max(worst, std::abs(sum - ref));
                }
            }
        }
    }
    return worst;
}

double Behavior::permutation_symmetry_deviation() const {
    // Invariance under the transposition (1 2) and the full cycle implies
    // invariance under every permutation; checking the two generators keeps
    // this cheap enough for inner loops.
    const int n = num_parties_;
    std::vector<std::vector<int>> perms;
    std::vector<int> tr(n);
    std::iota(tr.begin(), tr.end(), 0);
    if (n > 1) std::swap(tr[0], tr[1]);
    perms.push_back(tr);
    std::vector<int> cyc(n);
    for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
    if (n > 2) perms.push_back(cyc);

    double worst = 0.0;
    std::vector<int> j(n), jp(n);
    for (const auto& perm : perms) {
        for (int ji = 0; ji < setting_tuples_; ++ji) {
            int rem = ji;
            for (int i = n - 1; i >= 0; --i) {
                j[i] = rem % num_settings_;
                rem /= num_settings_;
            }
            for (int i = 0; i < n; ++i) jp[i] = j[perm[i]];
            int jpi = 0;
            for (int i = 0; i < n; ++i) jpi = jpi * num_settings_ + jp[i];
            for (int ai = 0; ai < num_outcome_tuples(); ++ai) {
                int api = 0;
                for (int i = 0; i < n; ++i)
                    api = (api << 1) | ((ai >> (n - 1 - perm[i])) & 1);
                worst = std::max(worst, std::abs(entry(ji, ai) - entry(jpi, api)));
            }
        }
    }
    return worst;
}

Behavior quantum_behavior(const DensityMatrix& state, const SettingsAssignment& settings) {
    const int n = state.num_qubits;
    if (settings.num_parties() != n)
        throw std::invalid_argument("settings party count does not match state");
    validate_settings(settings);
    const int s = settings.num_settings();

    Behavior beh(n, s);
    const int d = state.dim();
    std::vector<int> j(n);
    Eigen::MatrixXcd work(d, d);
    for (int ji = 0; ji < beh.num_setting_tuples(); ++ji) {
        int rem = ji;
        for (int i = n - 1; i >= 0; --i) {
            j[i] = rem % s + 1;
            rem /= s;
        }
        // rotate each qubit into the eigenbasis of its chosen observable and
        // read the diagonal
        work = state.entries;
        for (int q = 0; q < n; ++q) {
            const Eigen::Vector3d& v = settings.at(q + 1, j[q]);
            // rows of u are the +1 and -1 eigenvectors of v . sigma
            Eigen::Matrix2cd u;
            const double vz = std::clamp(v.z(), -1.0, 1.0);
            const double ct = std::sqrt((1.0 + vz) / 2.0);  // cos(theta/2)
            const double st = std::sqrt((1.0 - vz) / 2.0);  // sin(theta/2)
            const double phi = std::atan2(v.y(), v.x());
            const Complex eip = std::polar(1.0, phi);
            u << ct, st * std::conj(eip), -st, ct * std::conj(eip);

            // apply u (rows) on the left and u^dag on the right, qubit q
            const int pos = n - 1 - q;
            const int stride = 1 << pos;
            for (int base = 0; base < d; ++base) {
                if (base & stride) continue;
                for (int col = 0; col < d; ++col) {
                    const Complex a = work(base, col);
                    const Complex b = work(base | stride, col);
                    work(base, col) = u(0, 0) * a + u(0, 1) * b;
                    work(base | stride, col) = u(1, 0) * a + u(1, 1) * b;
                }
            }
            for (int base = 0; base < d; ++base) {
                if (base & stride) continue;
                for (int row = 0; row < d; ++row) {
                    const Complex a = work(row, base);
                    const Complex b = work(row, base | stride);
                    work(row, base) = a * std::conj(u(0, 0)) + b * std::conj(u(0, 1));
                    work(row, base | stride) = a * std::conj(u(1, 0)) + b * std::conj(u(1, 1));
                }
            }
        }
        for (int ai = 0; ai < beh.num_outcome_tuples(); ++ai)
            beh.entry(ji, ai) = work(ai, ai).real();
    }
    return beh;
}

Behavior white_noise_behavior(int num_parties, int num_settings) {
    Behavior beh(num_parties, num_settings);
    const double p = 1.0 / (1 << num_parties);
    std::fill(beh.raw().begin(), beh.raw().end(), p);
    return beh;
}

Behavior deterministic_behavior(const DeterministicBehaviorIndex& index, int num_settings) {
    const int n = static_cast<int>(index.strategies.size());
    Behavior beh(n, num_settings);
    std::vector<int> j(n);
    for (int ji = 0; ji < beh.num_setting_tuples(); ++ji) {
        int rem = ji;
        for (int i = n - 1; i >= 0; --i) {
            j[i] = rem % num_settings;
            rem /= num_settings;
        }
        int ai = 0;
        for (int i = 0; i < n; ++i)
            ai = (ai << 1) | ((index.strategies[i] >> j[i]) & 1);
        beh.entry(ji, ai) = 1.0;
    }
    return beh;
}

std::vector<DeterministicBehaviorIndex> deterministic_behaviors(int num_parties,
                                                                int num_settings) {
    const int local = 1 << num_settings;
    double total = std::pow(static_cast<double>(local), num_parties);
    if (total > static_cast<double>(1 << 20))
        throw std::invalid_argument("vertex count " + std::to_string(total) +
                                    " exceeds the 2^20 cap");
    const int count = static_cast<int>(total);
    std::vector<DeterministicBehaviorIndex> out;
    out.reserve(count);
    for (int v = 0; v < count; ++v) {
        DeterministicBehaviorIndex idx;
        idx.strategies.resize(num_parties);
        int rem = v;
        for (int i = num_parties - 1; i >= 0; --i) {
            idx.strategies[i] = rem % local;
            rem /= local;
        }
        out.push_back(std::move(idx));
    }
    return out;
}

double behavior_correlation(const Behavior& behavior, const std::vector<int>& j,
                            const std::vector<int>& parties) {
    const int n = behavior.num_parties();
    if (static_cast<int>(j.size()) != n)
        throw std::invalid_argument("setting tuple length does not match behavior");
    int ji = 0;
    for (int i = 0; i < n; ++i) {
        if (j[i] < 1 || j[i] > behavior.num_settings())
            throw std::invalid_argument("setting index out of range");
        ji = ji * behavior.num_settings() + (j[i] - 1);
    }
    int mask = 0;
    for (int p : parties) {
        if (p < 1 || p > n) throw std::invalid_argument("party index out of range");
        mask |= 1 << (n - p);
    }
    double sum = 0.0;
    for (int ai = 0; ai < behavior.num_outcome_tuples(); ++ai) {
        const int sign = std::popcount(static_cast<unsigned>(ai & mask)) % 2 == 0 ? 1 : -1;
        sum += sign * behavior.entry(ji, ai);
    }
    return sum;
}

}  // namespace bellkit
