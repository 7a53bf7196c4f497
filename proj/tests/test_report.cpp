#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "kscert/report.hpp"

using namespace kscert;
using nlohmann::json;

TEST_CASE("certification report carries the schema fields", "[report]") {
    const MagicSquare sq = magic_square();
    const CertificationReport rep =
        certify_square(sq, DensityState::maximally_mixed(2), "maximally-mixed");
    const json j = report_to_json(rep);

    REQUIRE(j.at("schema_version") == kSchemaVersion);
    REQUIRE(j.at("scenario") == "square");
    REQUIRE(j.at("state_descriptor") == "maximally-mixed");
    REQUIRE(j.at("inequality").at("name") == "magic-square-delta");
    REQUIRE(std::abs(j.at("inequality").at("quantum_value").get<double>() - 6.0) <= 1e-9);
    REQUIRE(j.at("inequality").at("classical_bound").get<double>() == 4.0);
    REQUIRE(std::abs(j.at("win_probability").get<double>() - 1.0) <= 1e-9);
    REQUIRE(std::abs(j.at("guessing_probability").get<double>() - 0.25) <= 1e-12);
    REQUIRE(std::abs(j.at("min_entropy_bits").get<double>() - 2.0) <= 1e-9);
    REQUIRE(j.at("checks").is_array());
    for (const auto& c : j.at("checks")) {
        REQUIRE(c.contains("name"));
        REQUIRE(c.contains("pass"));
        REQUIRE(c.contains("tolerance"));
        REQUIRE(c.at("pass").get<bool>());
    }
    // Report invariant: min-entropy and guessing probability are consistent.
    REQUIRE(std::abs(j.at("min_entropy_bits").get<double>() +
                     std::log2(j.at("guessing_probability").get<double>())) <= 1e-9);
}

TEST_CASE("star certification reports three bits", "[report]") {
    const MagicStar star = magic_star();
    const CertificationReport rep =
        certify_star(star, DensityState::maximally_mixed(3), "maximally-mixed");
    const json j = report_to_json(rep);
    REQUIRE(j.at("scenario") == "star");
    REQUIRE(std::abs(j.at("inequality").at("quantum_value").get<double>() - 5.0) <= 1e-9);
    REQUIRE(j.at("inequality").at("classical_bound").get<double>() == 3.0);
    REQUIRE(std::abs(j.at("guessing_probability").get<double>() - 0.125) <= 1e-12);
    REQUIRE(std::abs(j.at("min_entropy_bits").get<double>() - 3.0) <= 1e-9);
    REQUIRE(all_pass(rep.checks));
}

TEST_CASE("observable tables serialize with membership info", "[report]") {
    const json j = tables_to_json(magic_square(), magic_star());
    REQUIRE(j.at("square").at("grid").size() == 3);
    REQUIRE(j.at("square").at("grid").at(0).size() == 3);
    REQUIRE(j.at("square").at("grid").at(0).at(2).at("label") == "A1");
    REQUIRE(j.at("square").at("grid").at(0).at(2).at("factors") == "xx");
    REQUIRE(j.at("square").at("contexts").size() == 6);

    REQUIRE(j.at("star").at("observables").size() == 10);
    REQUIRE(j.at("star").at("edges").size() == 5);
    for (const auto& o : j.at("star").at("observables"))
        REQUIRE(o.at("edges").size() == 2);
    REQUIRE(j.at("star").at("edges").at(0).at("expected_product_sign") == -1);
}

TEST_CASE("empirical report serializes the estimate fields", "[report]") {
    const SimulationConfig cfg{Scenario::Square, DensityState::maximally_mixed(2),
                               "maximally-mixed", 600, 12};
    const EmpiricalReport rep = estimate(run_trials(cfg), Scenario::Square);
    const json j = empirical_to_json(rep);
    REQUIRE(j.at("rounds") == 600);
    REQUIRE(j.at("win_rate").get<double>() == 1.0);
    REQUIRE(j.contains("delta_hat"));
    REQUIRE(j.at("forbidden_parity_count") == 0);
    REQUIRE(j.at("frequencies").size() == 48);
    REQUIRE(j.at("correlators").size() == 6);
}

TEST_CASE("state json parsing validates the density matrix", "[report]") {
    json good;
    good["dim"] = 4;
    good["entries"] = json::array();
    for (int k = 0; k < 16; ++k)
        good["entries"].push_back({k % 5 == 0 ? 0.25 : 0.0, 0.0});
    const DensityState rho = parse_state_json(good);
    REQUIRE(approx_eq(rho.matrix(), 0.25 * ComplexMatrix::identity(4), 0.0));

    json bad_trace = good;
    bad_trace["entries"][0] = {1.0, 0.0};
    REQUIRE_THROWS_AS(parse_state_json(bad_trace), std::invalid_argument);

    json bad_shape = good;
    bad_shape["entries"].erase(15);
    REQUIRE_THROWS_AS(parse_state_json(bad_shape), std::invalid_argument);

    json not_hermitian = good;
    not_hermitian["entries"][1] = {0.1, 0.0};
    REQUIRE_THROWS_AS(parse_state_json(not_hermitian), std::invalid_argument);

    json not_psd;
    not_psd["dim"] = 2;
    not_psd["entries"] = {{1.5, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {-0.5, 0.0}};
    REQUIRE_THROWS_AS(parse_state_json(not_psd), std::invalid_argument);

    REQUIRE_THROWS_AS(parse_state_json(json::object()), std::invalid_argument);
}

TEST_CASE("state files round-trip through disk", "[report]") {
    const std::string path = "kscert_test_state.json";
    {
        json j;
        j["dim"] = 2;
        j["entries"] = {{0.5, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.5, 0.0}};
        std::ofstream out(path);
        out << j.dump();
    }
    const DensityState rho = load_state_file(path);
    REQUIRE(approx_eq(rho.matrix(), 0.5 * ComplexMatrix::identity(2), 0.0));
    std::remove(path.c_str());
    REQUIRE_THROWS_AS(load_state_file("no_such_file.json"), std::invalid_argument);
}
