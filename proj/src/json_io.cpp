#include "bellkit/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellkit {

Json tensor_to_json(const CorrelationTensor& tensor) {
    Json out = Json::array();
    // base-4 index order is already lexicographic in the tuple
    for (int idx = 0; idx < tensor.size(); ++idx) {
        const double v = tensor[idx];
        if (std::abs(v) <= 1e-12) continue;
        out.push_back({{"indices", tensor.decode(idx)}, {"value", v}});
    }
    return out;
}

Json expression_to_json(const BellExpression& expr) {
    std::vector<CorrelationTerm> terms = expr.terms;
    std::sort(terms.begin(), terms.end(),
              [](const CorrelationTerm& a, const CorrelationTerm& b) {
                  return a.pattern < b.pattern;
              });
    Json jterms = Json::array();
    for (const auto& t : terms)
        jterms.push_back({{"pattern", t.pattern}, {"coeff", t.coefficient}});
    return {{"parties", expr.num_parties},
            {"settings", expr.num_settings},
            {"terms", std::move(jterms)}};
}

BellExpression expression_from_json(const Json& j) {
    BellExpression expr;
    expr.num_parties = j.at("parties").get<int>();
    expr.num_settings = j.at("settings").get<int>();
    std::size_t index = 0;
    for (const auto& t : j.at("terms")) {
        CorrelationTerm term;
        term.pattern = t.at("pattern").get<std::vector<int>>();
        term.coefficient = t.at("coeff").get<double>();
        if (static_cast<int>(term.pattern.size()) != expr.num_parties)
            throw std::invalid_argument(
                "term " + std::to_string(index) + " (pattern " + t.at("pattern").dump() +
                "): length does not match the declared party count");
        expr.terms.push_back(std::move(term));
        ++index;
    }
    expr.validate();
    return expr;
}

Json settings_to_json(const SettingsAssignment& settings) {
    Json parties = Json::array();
    for (const auto& party : settings.vectors) {
        Json vecs = Json::array();
        for (const auto& v : party) vecs.push_back({v.x(), v.y(), v.z()});
        parties.push_back(std::move(vecs));
    }
    return {{"num_parties", settings.num_parties()},
            {"num_settings", settings.num_settings()},
            {"vectors", std::move(parties)}};
}

SettingsAssignment settings_from_json(const Json& j) {
    SettingsAssignment out;
    for (const auto& party : j.at("vectors")) {
        std::vector<Eigen::Vector3d> vecs;
        for (const auto& v : party) {
            if (v.size() != 3) throw std::invalid_argument("setting vector needs 3 components");
            vecs.emplace_back(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
        }
        out.vectors.push_back(std::move(vecs));
    }
    if (j.contains("num_parties") && j.at("num_parties").get<int>() != out.num_parties())
        throw std::invalid_argument("num_parties does not match vectors");
    if (j.contains("num_settings") && j.at("num_settings").get<int>() != out.num_settings())
        throw std::invalid_argument("num_settings does not match vectors");
    validate_settings(out);
    return out;
}

Json wwzb_result_to_json(const WwzbResult& result, int k) {
    Json planes = Json::array();
    for (const auto& [u, v] : result.planes.planes)
        planes.push_back({{u.x(), u.y(), u.z()}, {v.x(), v.y(), v.z()}});
    return {{"k", k},
            {"value", result.value},
            {"admits_model", result.admits_model},
            {"planes", std::move(planes)}};
}

Json seesaw_result_to_json(const SeesawResult& result) {
    return {{"value", result.value},
            {"settings", settings_to_json(result.settings)},
            {"sweeps", result.sweeps},
            {"restarts_used", result.restarts_used},
            {"converged", result.converged}};
}

Json visibility_result_to_json(const VisibilityResult& result) {
    Json weights = Json::array();
    for (const auto& [vertex, weight] : result.weights)
        weights.push_back({{"vertex", vertex.strategies}, {"weight", weight}});
    return {{"p_crit", result.p_crit},
            {"settings", settings_to_json(result.settings)},
            {"reduced", result.reduced},
            {"weights", std::move(weights)}};
}

Json density_matrix_to_json(const DensityMatrix& rho) {
    Json entries = Json::array();
    for (int r = 0; r < rho.dim(); ++r)
        for (int c = 0; c < rho.dim(); ++c)
            entries.push_back({rho.entries(r, c).real(), rho.entries(r, c).imag()});
    return {{"num_qubits", rho.num_qubits}, {"entries", std::move(entries)}};
}

DensityMatrix density_matrix_from_json(const Json& j) {
    DensityMatrix rho;
    rho.num_qubits = j.at("num_qubits").get<int>();
    if (rho.num_qubits < 1 || rho.num_qubits > kMaxQubits)
        throw std::invalid_argument("num_qubits outside [1, 8]");
    const int d = rho.dim();
    const auto& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != d * d)
        throw std::invalid_argument("entries length must be 4^num_qubits");
    rho.entries.resize(d, d);
    int i = 0;
    for (const auto& e : entries) {
        if (e.size() != 2) throw std::invalid_argument("entry must be [re, im]");
        rho.entries(i / d, i % d) = Complex(e[0].get<double>(), e[1].get<double>());
        ++i;
    }
    validate_density_matrix(rho, 1e-9);
    return rho;
}

}  // namespace bellkit
