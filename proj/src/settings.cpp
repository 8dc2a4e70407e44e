#include "bellkit/settings.hpp"

#include <cmath>
#include <stdexcept>

namespace bellkit {

void validate_settings(const SettingsAssignment& settings, double tol) {
    if (settings.vectors.empty())
        throw std::invalid_argument("settings assignment is empty");
    const std::size_t per_party = settings.vectors.front().size();
    for (const auto& party : settings.vectors) {
        if (party.size() != per_party)
            throw std::invalid_argument("parties have differing setting counts");
        for (const auto& v : party)
            if (std::abs(v.norm() - 1.0) > tol)
                throw std::invalid_argument("setting vector is not unit norm");
    }
}

SettingsAssignment shared_settings(int num_parties,
                                   const std::vector<Eigen::Vector3d>& vectors) {
    SettingsAssignment s;
    s.vectors.assign(num_parties, vectors);
    return s;
}

}  // namespace bellkit
