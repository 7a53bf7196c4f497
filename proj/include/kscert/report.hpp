#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kscert/certify.hpp"
#include "kscert/simulate.hpp"

namespace kscert {

inline constexpr const char* kSchemaVersion = "1";

inline nlohmann::json checks_to_json(const std::vector<Check>& checks) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Check& c : checks) {
        nlohmann::json j{{"name", c.name}, {"pass", c.pass}, {"tolerance", c.tolerance}};
        if (!c.detail.empty()) j["detail"] = c.detail;
        arr.push_back(j);
    }
    return arr;
}

inline nlohmann::json report_to_json(const CertificationReport& rep) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["scenario"] = rep.scenario;
    j["state_descriptor"] = rep.state_descriptor;
    j["inequality"] = {{"name", rep.inequality_name},
                       {"quantum_value", rep.delta_or_beta},
                       {"classical_bound", rep.classical_bound}};
    j["win_probability"] = rep.win_probability;
    j["guessing_probability"] = rep.guess.g;
    j["guessing_argmax"] = {{"inputs", rep.guess.argmax_inputs},
                            {"outcomes", rep.guess.argmax_outcomes}};
    j["min_entropy_bits"] = rep.min_entropy_bits;
    j["checks"] = checks_to_json(rep.checks);
    return j;
}

inline nlohmann::json empirical_to_json(const EmpiricalReport& rep) {
    nlohmann::json j;
    j["rounds"] = rep.rounds;
    j["win_rate"] = rep.win_rate;
    j["win_rate_std_error"] = rep.win_rate_se;
    j[rep.scenario == Scenario::Square ? "delta_hat" : "beta_hat"] = rep.inequality_hat;
    j["inequality_std_error"] = rep.inequality_se;
    j["guessing_probability_hat"] = rep.g_hat;
    j["guessing_probability_std_error"] = rep.g_hat_se;
    j["min_entropy_hat_bits"] = rep.min_entropy_hat_bits;
    j["guessing_argmax"] = {{"inputs", rep.g_argmax_inputs}, {"outcomes", rep.g_argmax_outcomes}};
    j["forbidden_parity_count"] = rep.forbidden_parity_count;

    nlohmann::json correlators = nlohmann::json::array();
    for (const auto& c : rep.correlators)
        correlators.push_back({{"inputs", c.inputs},
                               {"count", c.count},
                               {"value", c.value},
                               {"std_error", c.std_error}});
    j["correlators"] = correlators;

    nlohmann::json freqs = nlohmann::json::array();
    for (const auto& f : rep.frequencies)
        freqs.push_back({{"inputs", f.inputs},
                         {"outcomes", f.outcomes},
                         {"count", f.count},
                         {"frequency", f.frequency},
                         {"std_error", f.std_error}});
    j["frequencies"] = freqs;
    return j;
}

inline nlohmann::json tables_to_json(const MagicSquare& sq, const MagicStar& star) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;

    nlohmann::json grid = nlohmann::json::array();
    for (const auto& row : sq.grid) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& o : row) r.push_back({{"label", o.label}, {"factors", o.factor_string()}});
        grid.push_back(r);
    }
    nlohmann::json square_contexts = nlohmann::json::array();
    for (const auto* ctx : sq.all_contexts()) {
        std::vector<std::string> members;
        for (const auto& m : ctx->members) members.push_back(m.label);
        square_contexts.push_back({{"label", ctx->label},
                                   {"members", members},
                                   {"expected_product_sign", ctx->expected_product_sign}});
    }
    j["square"] = {{"grid", grid}, {"contexts", square_contexts}};

    nlohmann::json star_obs = nlohmann::json::array();
    for (const auto& o : star.observables)
        star_obs.push_back({{"label", o.label},
                            {"factors", o.factor_string()},
                            {"edges", star.edges_of(o.label)}});
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : star.edges) {
        std::vector<std::string> members;
        for (const auto& m : e.members) members.push_back(m.label);
        edges.push_back({{"label", e.label},
                         {"members", members},
                         {"expected_product_sign", e.expected_product_sign}});
    }
    j["star"] = {{"observables", star_obs}, {"edges", edges}};
    return j;
}

// State file format: {"dim": n, "entries": [[re, im], ...]} with n*n entries
// in row-major order. Validated against the density-state invariants.
inline DensityState parse_state_json(const nlohmann::json& j, double tol = kDefaultTol) {
    if (!j.contains("dim") || !j.contains("entries"))
        throw std::invalid_argument("state file: need 'dim' and 'entries'");
    const std::size_t dim = j.at("dim").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != dim * dim)
        throw std::invalid_argument("state file: 'entries' must hold dim*dim [re, im] pairs");
    ComplexMatrix m(dim);
    for (std::size_t k = 0; k < dim * dim; ++k) {
        const auto& pair = entries.at(k);
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("state file: entry " + std::to_string(k) +
                                        " is not an [re, im] pair");
        m.at(k / dim, k % dim) = Complex(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
    return DensityState::from_matrix(std::move(m), tol);
}

inline DensityState load_state_file(const std::string& path, double tol = kDefaultTol) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("state file: cannot open " + path);
    nlohmann::json j;
    in >> j;
    return parse_state_json(j, tol);
}

}  // namespace kscert
