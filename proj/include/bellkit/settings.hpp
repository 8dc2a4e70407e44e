#pragma once

#include <Eigen/Dense>
#include <vector>

namespace bellkit {

// Per party, per setting index, a Bloch unit vector defining the dichotomic
// observable s . sigma.
struct SettingsAssignment {
    // vectors[party][setting], both 0-based internally; setting indices in
    // expressions and on the CLI are 1-based.
    std::vector<std::vector<Eigen::Vector3d>> vectors;

    int num_parties() const { return static_cast<int>(vectors.size()); }
    int num_settings() const {
        return vectors.empty() ? 0 : static_cast<int>(vectors.front().size());
    }
    const Eigen::Vector3d& at(int party, int setting) const {
        return vectors.at(party - 1).at(setting - 1);
    }
};

void validate_settings(const SettingsAssignment& settings, double tol = 1e-12);

// All parties use the same list of setting vectors.
SettingsAssignment shared_settings(int num_parties,
                                   const std::vector<Eigen::Vector3d>& vectors);

}  // namespace bellkit
