#include "bellkit/visibility.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

namespace bellkit {

namespace {

int int_pow(int base, int exp) {
    int out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

// Orbit key of a (setting tuple, outcome tuple) pair under simultaneous
// party permutation: the sorted multiset of per-party (setting, outcome)
// pairs, packed into small integers.
std::vector<int> orbit_key(int ji, int ai, int n, int s) {
    std::vector<int> key(n);
    for (int i = n - 1; i >= 0; --i) {
        const int setting = ji % s;
        ji /= s;
        const int outcome = (ai >> (n - 1 - i)) & 1;
        key[i] = setting * 2 + outcome;
    }
    std::sort(key.begin(), key.end());
    return key;
}

bool settings_are_shared(const SettingsAssignment& settings, double tol) {
    for (std::size_t p = 1; p < settings.vectors.size(); ++p)
        for (std::size_t j = 0; j < settings.vectors[p].size(); ++j)
            if ((settings.vectors[p][j] - settings.vectors[0][j]).norm() > tol)
                return false;
    return true;
}

struct LpBuild {
    LinearProgram lp;
    int v_column = 0;
};

// Rows: one per behavior coordinate (or orbit representative), then the
// convex-weight normalization, then v + slack = 1.
LpBuild build_membership_lp(const std::vector<double>& state_coords,
                            const std::vector<double>& noise_coords,
                            const std::vector<std::vector<double>>& columns_dense,
                            const std::vector<const SparseColumn*>& columns_sparse) {
    const int rows = static_cast<int>(state_coords.size());
    const int ncols =
        static_cast<int>(columns_dense.empty() ? columns_sparse.size() : columns_dense.size());
    LpBuild out;
    LinearProgram& lp = out.lp;
    lp.num_rows = rows + 2;
    lp.maximize = true;
    lp.rhs.assign(rows + 2, 0.0);
    for (int r = 0; r < rows; ++r) lp.rhs[r] = noise_coords[r];
    lp.rhs[rows] = 1.0;      // sum lambda = 1
    lp.rhs[rows + 1] = 1.0;  // v + slack = 1

    lp.columns.reserve(ncols + 2);
    for (int c = 0; c < ncols; ++c) {
        SparseColumn col;
        if (!columns_dense.empty()) {
            for (int r = 0; r < rows; ++r)
                if (columns_dense[c][r] != 0.0) col.entries.emplace_back(r, columns_dense[c][r]);
        } else {
            col = *columns_sparse[c];
        }
        col.entries.emplace_back(rows, 1.0);
        lp.columns.push_back(std::move(col));
    }
    SparseColumn vcol;
    for (int r = 0; r < rows; ++r) {
        const double d = state_coords[r] - noise_coords[r];
        if (d != 0.0) vcol.entries.emplace_back(r, -d);
    }
    vcol.entries.emplace_back(rows + 1, 1.0);
    lp.columns.push_back(std::move(vcol));
    SparseColumn slack;
    slack.entries.emplace_back(rows + 1, 1.0);
    lp.columns.push_back(std::move(slack));

    lp.objective.assign(lp.columns.size(), 0.0);
    out.v_column = ncols;
    lp.objective[out.v_column] = 1.0;
    return out;
}

}  // namespace

SymmetricReduction build_symmetric_reduction(int num_parties, int num_settings) {
    SymmetricReduction red;
    red.num_parties = num_parties;
    red.num_settings = num_settings;
    const int n = num_parties;
    const int s = num_settings;
    const int tuples = int_pow(s, n);
    const int outcomes = 1 << n;

    std::map<std::vector<int>, std::pair<int, int>> reps;
    for (int ji = 0; ji < tuples; ++ji)
        for (int ai = 0; ai < outcomes; ++ai)
            reps.try_emplace(orbit_key(ji, ai, n, s), ji, ai);
    red.representatives.reserve(reps.size());
    std::vector<std::vector<int>> rep_keys;
    for (const auto& [key, rep] : reps) {
        red.representatives.push_back(rep);
        rep_keys.push_back(key);
    }

    // columns: multisets of local strategies, enumerated in nondecreasing order
    const int local = 1 << s;
    std::vector<int> ms(n, 0);
    for (;;) {
        red.column_multisets.push_back(ms);
        int i = n - 1;
        while (i >= 0 && ms[i] == local - 1) --i;
        if (i < 0) break;
        const int v = ms[i] + 1;
        for (int k = i; k < n; ++k) ms[k] = v;
    }

    const int ncols = static_cast<int>(red.column_multisets.size());
    const int nreps = static_cast<int>(red.representatives.size());
    red.column_values.assign(ncols, std::vector<double>(nreps, 0.0));
    red.orbit_sizes.assign(ncols, 0);

    std::vector<int> jvec(n), avec(n);
    for (int c = 0; c < ncols; ++c) {
        std::vector<int> perm = red.column_multisets[c];
        long orderings = 0;
        do {
            ++orderings;
            for (int r = 0; r < nreps; ++r) {
                auto [ji, ai] = red.representatives[r];
                int rem = ji;
                for (int i = n - 1; i >= 0; --i) {
                    jvec[i] = rem % s;
                    rem /= s;
                }
                bool ok = true;
                for (int i = 0; i < n && ok; ++i) {
                    const int want = (ai >> (n - 1 - i)) & 1;
                    ok = ((perm[i] >> jvec[i]) & 1) == want;
                }
                if (ok) red.column_values[c][r] += 1.0;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        red.orbit_sizes[c] = orderings;
        for (double& v : red.column_values[c]) v /= static_cast<double>(orderings);
    }
    return red;
}

Behavior weights_to_behavior(const std::vector<VertexWeight>& weights, int num_parties,
                             int num_settings) {
    Behavior out(num_parties, num_settings);
    for (const auto& [vertex, weight] : weights) {
        const Behavior d = deterministic_behavior(vertex, num_settings);
        for (int i = 0; i < out.size(); ++i) out.raw()[i] += weight * d.raw()[i];
    }
    return out;
}

namespace {

// P(a|j) at one (settings tuple, outcomes) pair from the correlation tensor:
// (1/2^N) sum_mu T_mu prod_n w_n(mu_n) with w_n = (1, a_n s_x, a_n s_y, a_n s_z).
// The nonzero tensor entries are pre-listed by the caller (the mixtures have
// a few hundred of 4^N).
double probability_from_tensor(const std::vector<std::pair<int, double>>& nonzeros,
                               int num_qubits, const SettingsAssignment& settings,
                               int ji, int ai, int num_settings) {
    const int n = num_qubits;
    std::array<std::array<double, 4>, kMaxQubits> w;
    int rem = ji;
    for (int i = n - 1; i >= 0; --i) {
        const int setting = rem % num_settings + 1;
        rem /= num_settings;
        const double sign = ((ai >> (n - 1 - i)) & 1) == 0 ? 1.0 : -1.0;
        const Eigen::Vector3d& v = settings.at(i + 1, setting);
        w[i] = {1.0, sign * v.x(), sign * v.y(), sign * v.z()};
    }
    double total = 0.0;
    for (const auto& [idx, t] : nonzeros) {
        double prod = t;
        int r = idx;
        for (int i = n - 1; i >= 0 && prod != 0.0; --i) {
            prod *= w[i][r & 3];
            r >>= 2;
        }
        total += prod;
    }
    return total / (1 << n);
}

}  // namespace

VisibilityResult visibility_for_settings(const DensityMatrix& state,
                                         const SettingsAssignment& settings,
                                         const VisibilityOptions& options) {
    const int n = state.num_qubits;
    const int s = settings.num_settings();

    bool reduce = false;
    const bool shared = settings_are_shared(settings, 1e-12);
    const bool use_tensor = options.cached_tensor != nullptr &&
                            options.cached_tensor->num_qubits() == n;
    Behavior pq;
    const bool need_full_behavior =
        !use_tensor || options.reduction == VisibilityOptions::Reduction::Off ||
        (options.reduction == VisibilityOptions::Reduction::Auto &&
         !options.assume_symmetric);
    if (need_full_behavior) pq = quantum_behavior(state, settings);

    switch (options.reduction) {
        case VisibilityOptions::Reduction::On: reduce = true; break;
        case VisibilityOptions::Reduction::Off: reduce = false; break;
        case VisibilityOptions::Reduction::Auto:
            reduce = shared && (options.assume_symmetric ||
                                pq.permutation_symmetry_deviation() < options.symmetry_tol);
            break;
    }

    VisibilityResult result;
    result.settings = settings;
    result.reduced = reduce;

    if (reduce) {
        SymmetricReduction local;
        const SymmetricReduction* red = options.cached_reduction;
        if (red == nullptr || red->num_parties != n || red->num_settings != s) {
            local = build_symmetric_reduction(n, s);
            red = &local;
        }
        const int nreps = static_cast<int>(red->representatives.size());
        std::vector<double> qs(nreps), ws(nreps, 1.0 / (1 << n));
        std::vector<std::pair<int, double>> nonzeros;
        if (use_tensor) {
            const CorrelationTensor& t = *options.cached_tensor;
            for (int idx = 0; idx < t.size(); ++idx)
                if (std::abs(t[idx]) > 1e-15) nonzeros.emplace_back(idx, t[idx]);
        }
        for (int r = 0; r < nreps; ++r) {
            const auto [ji, ai] = red->representatives[r];
            qs[r] = use_tensor ? probability_from_tensor(nonzeros, n, settings, ji, ai, s)
                               : pq.entry(ji, ai);
        }
        LpBuild build = build_membership_lp(qs, ws, red->column_values, {});
        const LpSolution sol = lp_solve(build.lp, options.lp);
        result.status = sol.status;
        if (sol.status != LpStatus::Optimal) return result;
        result.p_crit = sol.x[build.v_column];
        for (std::size_t c = 0; c < red->column_multisets.size(); ++c) {
            const double w = sol.x[c];
            if (w <= 1e-12) continue;
            // spread the orbit weight uniformly over its distinct orderings
            std::vector<int> perm = red->column_multisets[c];
            const double each = w / static_cast<double>(red->orbit_sizes[c]);
            do {
                result.weights.push_back({DeterministicBehaviorIndex{perm}, each});
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        return result;
    }

    // full vertex enumeration
    if (pq.num_parties() == 0) pq = quantum_behavior(state, settings);
    const Behavior pw = white_noise_behavior(n, s);
    const auto vertices = deterministic_behaviors(n, s);
    std::vector<SparseColumn> cols(vertices.size());
    std::vector<const SparseColumn*> col_ptrs(vertices.size());
    std::vector<int> jvec(n);
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        const auto& g = vertices[v].strategies;
        for (int ji = 0; ji < pq.num_setting_tuples(); ++ji) {
            int rem = ji;
            for (int i = n - 1; i >= 0; --i) {
                jvec[i] = rem % s;
                rem /= s;
            }
            int ai = 0;
            for (int i = 0; i < n; ++i) ai = (ai << 1) | ((g[i] >> jvec[i]) & 1);
            cols[v].entries.emplace_back(pq.index(ji, ai), 1.0);
        }
        col_ptrs[v] = &cols[v];
    }
    LpBuild build = build_membership_lp(pq.raw(), pw.raw(), {}, col_ptrs);
    const LpSolution sol = lp_solve(build.lp, options.lp);
    result.status = sol.status;
    if (sol.status != LpStatus::Optimal) return result;
    result.p_crit = sol.x[build.v_column];
    for (std::size_t v = 0; v < vertices.size(); ++v)
        if (sol.x[v] > 1e-12) result.weights.push_back({vertices[v], sol.x[v]});
    return result;
}

VisibilityResult critical_visibility(const DensityMatrix& state, int num_settings,
                                     const CriticalVisibilityOptions& options) {
    const int n = state.num_qubits;
    const int s = num_settings;
    if (s < 2 || s > 3) throw std::invalid_argument("settings count must be 2 or 3");

    SymmetricReduction red;
    VisibilityOptions vis = options.vis;
    CorrelationTensor tensor;
    if (options.shared_settings) {
        red = build_symmetric_reduction(n, s);
        vis.cached_reduction = &red;
        // one-time symmetry certificate: with shared settings, a state that
        // is invariant under adjacent swaps yields symmetric behaviors
        bool symmetric = true;
        for (int q = 1; q < n && symmetric; ++q)
            symmetric = (swap_qubits(state, q, q + 1).entries - state.entries)
                            .cwiseAbs()
                            .maxCoeff() < 1e-10;
        if (symmetric) {
            vis.assume_symmetric = true;
            tensor = full_tensor(state);
            vis.cached_tensor = &tensor;
        }
    }

    // angles: per setting (theta, phi), phi of setting 1 gauge-fixed by the
    // state's symmetry under global z rotations; for non-shared searches the
    // same layout repeats per party.
    const int blocks = options.shared_settings ? 1 : n;
    const int nang = blocks * 2 * s;

    auto settings_from_angles = [&](const std::vector<double>& ang) {
        std::vector<std::vector<Eigen::Vector3d>> vecs(blocks);
        for (int b = 0; b < blocks; ++b) {
            for (int j = 0; j < s; ++j) {
                const double th = ang[b * 2 * s + 2 * j];
                const double ph = ang[b * 2 * s + 2 * j + 1];
                vecs[b].emplace_back(std::sin(th) * std::cos(ph),
                                     std::sin(th) * std::sin(ph), std::cos(th));
            }
        }
        if (options.shared_settings) return shared_settings(n, vecs[0]);
        SettingsAssignment out;
        out.vectors = std::move(vecs);
        return out;
    };

    auto evaluate = [&](const std::vector<double>& ang) {
        const VisibilityResult r = visibility_for_settings(state, settings_from_angles(ang), vis);
        return r.status == LpStatus::Optimal ? r.p_crit
                                             : std::numeric_limits<double>::infinity();
    };

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> uth(0.0, M_PI);
    std::uniform_real_distribution<double> uph(0.0, 2.0 * M_PI);

    VisibilityResult best;
    best.p_crit = std::numeric_limits<double>::infinity();
    best.status = LpStatus::Infeasible;

    for (int r = 0; r < std::max(1, options.restarts); ++r) {
        std::vector<double> ang(nang);
        if (r == 0) {
            for (int b = 0; b < blocks; ++b)
                for (int j = 0; j < s; ++j) {
                    ang[b * 2 * s + 2 * j] = M_PI / 2.0;  // planar start
                    ang[b * 2 * s + 2 * j + 1] = M_PI * j / s;
                }
        } else {
            for (int b = 0; b < blocks; ++b)
                for (int j = 0; j < s; ++j) {
                    ang[b * 2 * s + 2 * j] = uth(rng);
                    ang[b * 2 * s + 2 * j + 1] = uph(rng);
                }
        }

        double cur = evaluate(ang);
        double step = 0.4;
        while (step > options.angle_tol) {
            bool improved = false;
            for (int i = 0; i < nang; ++i) {
                if (i == 1) continue;  // gauge: azimuth of setting 1 (first block)
                for (double d : {step, -step}) {
                    bool moved = false;
                    for (;;) {
                        ang[i] += d;
                        const double trial = evaluate(ang);
                        if (trial < cur - 1e-12) {
                            cur = trial;
                            moved = true;
                        } else {
                            ang[i] -= d;
                            break;
                        }
                    }
                    if (moved) {
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }

        if (cur < best.p_crit) {
            // re-solve the winner through the plain behavior route
            VisibilityOptions final_vis = vis;
            final_vis.cached_tensor = nullptr;
            const VisibilityResult full =
                visibility_for_settings(state, settings_from_angles(ang), final_vis);
            if (full.status == LpStatus::Optimal) best = full;
        }
    }
    return best;
}

}  // namespace bellkit
