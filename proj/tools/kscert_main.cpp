// Command-line front end: observable tables, invariant verification,
// certification reports, and Monte-Carlo trial simulation with
// machine-readable output.
//
// Exit codes: 0 all checks pass, 1 some check failed (report still emitted),
// 2 usage or configuration error.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kscert/report.hpp"

namespace {

using nlohmann::json;

struct CommonOptions {
    std::string scenario = "square";
    std::string state = "maximally-mixed";
    std::string state_file;
    std::uint64_t rounds = 100000;
    std::uint64_t seed = 20240915;
    double tolerance = kscert::kDefaultTol;
    std::string format = "json";
    std::string out_path;
    std::string csv_path;
    std::size_t search_restarts = 0;
    bool deterministic = false;
};

std::string iso_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&now));
    return buf;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open output path " + out_path);
        out << text;
    }
}

kscert::Scenario parse_scenario(const std::string& s) {
    if (s == "square") return kscert::Scenario::Square;
    if (s == "star") return kscert::Scenario::Star;
    throw std::invalid_argument("unknown scenario: " + s);
}

kscert::DensityState resolve_state(const CommonOptions& opt, const kscert::MagicSquare& sq,
                                   const kscert::MagicStar& star, std::string& descriptor) {
    if (!opt.state_file.empty()) {
        descriptor = "file:" + opt.state_file;
        return kscert::load_state_file(opt.state_file, opt.tolerance);
    }
    descriptor = opt.state;
    const bool square = parse_scenario(opt.scenario) == kscert::Scenario::Square;
    if (opt.state == "maximally-mixed")
        return kscert::DensityState::maximally_mixed(square ? 2 : 3);
    if (opt.state == "common-eigenstate") {
        if (square)
            return kscert::common_positive_eigenstate({sq.a(1), sq.b(1), sq.c(1)}, opt.tolerance);
        return kscert::common_positive_eigenstate(
            {star.observable("X1"), star.observable("X2"), star.observable("X3")}, opt.tolerance);
    }
    throw std::invalid_argument("unknown state '" + opt.state +
                                "' (use maximally-mixed, common-eigenstate, or --state-file)");
}

std::string checks_text(const std::vector<kscert::Check>& checks) {
    std::ostringstream out;
    for (const auto& c : checks) {
        out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " (tol " << c.tolerance << ")";
        if (!c.detail.empty()) out << "  " << c.detail;
        out << '\n';
    }
    return out.str();
}

int run_tables(const CommonOptions& opt) {
    const kscert::MagicSquare sq = kscert::magic_square();
    const kscert::MagicStar star = kscert::magic_star();
    if (opt.format == "json") {
        json j = kscert::tables_to_json(sq, star);
        if (!opt.deterministic) j["timestamp"] = iso_timestamp();
        emit(j.dump(2), opt.out_path);
        return 0;
    }
    std::ostringstream out;
    out << "magic square (rows multiply to +I, columns to -I):\n";
    for (const auto& row : sq.grid) {
        for (const auto& o : row) out << "  " << o.label << "=" << o.factor_string();
        out << '\n';
    }
    out << "magic star edges (E1 multiplies to -I, E2..E5 to +I):\n";
    for (const auto& e : star.edges) {
        out << "  " << e.label << ":";
        for (const auto& m : e.members) out << " " << m.label;
        out << '\n';
    }
    emit(out.str(), opt.out_path);
    return 0;
}

int run_verify(const CommonOptions& opt, bool square) {
    const std::vector<kscert::Check> checks =
        square ? kscert::verify_square_checks(opt.seed, opt.tolerance)
               : kscert::verify_star_checks(opt.seed, opt.tolerance);
    const bool ok = kscert::all_pass(checks);
    if (opt.format == "json") {
        json j;
        j["schema_version"] = kscert::kSchemaVersion;
        j["command"] = square ? "verify-square" : "verify-star";
        j["seed"] = opt.seed;
        j["tolerance"] = opt.tolerance;
        j["checks"] = kscert::checks_to_json(checks);
        j["all_pass"] = ok;
        if (!opt.deterministic) j["timestamp"] = iso_timestamp();
        emit(j.dump(2), opt.out_path);
    } else {
        emit(checks_text(checks) + (ok ? "all checks passed\n" : "SOME CHECKS FAILED\n"),
             opt.out_path);
    }
    return ok ? 0 : 1;
}

json certification_json(const kscert::CertificationReport& rep, const CommonOptions& opt) {
    json j = kscert::report_to_json(rep);
    if (opt.search_restarts > 0) {
        const bool square = rep.scenario == "square";
        const kscert::GuessingSearchResult search =
            square ? kscert::search_min_guessing_square(kscert::magic_square(),
                                                        opt.search_restarts, opt.seed,
                                                        opt.tolerance)
                   : kscert::search_min_guessing_star(kscert::magic_star(), opt.search_restarts,
                                                      opt.seed, opt.tolerance);
        j["search"] = {{"restarts", search.restarts},
                       {"seed", search.seed},
                       {"min_guessing_probability", search.min_g},
                       {"argmin_state_index", search.argmin_index}};
    }
    if (!opt.deterministic) j["timestamp"] = iso_timestamp();
    return j;
}

std::string certification_text(const kscert::CertificationReport& rep) {
    std::ostringstream out;
    out << "scenario:             " << rep.scenario << '\n'
        << "state:                " << rep.state_descriptor << '\n'
        << "inequality:           " << rep.inequality_name << " = " << rep.delta_or_beta
        << " (classical bound " << rep.classical_bound << ")\n"
        << "win probability:      " << rep.win_probability << '\n'
        << "guessing probability: " << rep.guess.g << '\n'
        << "min-entropy:          " << rep.min_entropy_bits << " bits\n"
        << checks_text(rep.checks);
    return out.str();
}

int run_certify(const CommonOptions& opt) {
    const kscert::MagicSquare sq = kscert::magic_square();
    const kscert::MagicStar star = kscert::magic_star();
    std::string descriptor;
    const kscert::DensityState rho = resolve_state(opt, sq, star, descriptor);

    const kscert::CertificationReport rep =
        parse_scenario(opt.scenario) == kscert::Scenario::Square
            ? kscert::certify_square(sq, rho, descriptor, opt.tolerance)
            : kscert::certify_star(star, rho, descriptor, opt.tolerance);

    if (opt.format == "json")
        emit(certification_json(rep, opt).dump(2), opt.out_path);
    else
        emit(certification_text(rep), opt.out_path);
    return kscert::all_pass(rep.checks) ? 0 : 1;
}

int run_simulate(const CommonOptions& opt) {
    const kscert::MagicSquare sq = kscert::magic_square();
    const kscert::MagicStar star = kscert::magic_star();
    std::string descriptor;
    const kscert::DensityState rho = resolve_state(opt, sq, star, descriptor);
    const kscert::Scenario scenario = parse_scenario(opt.scenario);

    const kscert::SimulationConfig cfg{scenario, rho, descriptor, opt.rounds, opt.seed,
                                       opt.tolerance};
    const std::vector<kscert::TrialRecord> records = kscert::run_trials(cfg);
    const kscert::EmpiricalReport emp = kscert::estimate(records, scenario);

    if (!opt.csv_path.empty()) emit(kscert::records_to_csv(records, scenario), opt.csv_path);

    kscert::CertificationReport rep = scenario == kscert::Scenario::Square
                                          ? kscert::certify_square(sq, rho, descriptor, opt.tolerance)
                                          : kscert::certify_star(star, rho, descriptor, opt.tolerance);

    // Empirical-vs-theory agreement at five binomial standard errors; the
    // seed is fixed, so these are reproducible assertions, not flaky ones.
    auto five_sigma = [](double se) { return std::max(5.0 * se, 1e-9); };
    rep.checks.push_back({"empirical-win-rate-5-sigma",
                          std::abs(emp.win_rate - rep.win_probability) <=
                              five_sigma(emp.win_rate_se),
                          five_sigma(emp.win_rate_se), ""});
    rep.checks.push_back({"empirical-inequality-5-sigma",
                          std::abs(emp.inequality_hat - rep.delta_or_beta) <=
                              five_sigma(emp.inequality_se),
                          five_sigma(emp.inequality_se), ""});

    if (opt.format == "json") {
        json j = certification_json(rep, opt);
        j["simulation"] = {{"rounds", opt.rounds},
                           {"seed", opt.seed},
                           {"empirical", kscert::empirical_to_json(emp)}};
        emit(j.dump(2), opt.out_path);
    } else {
        std::ostringstream out;
        out << certification_text(rep) << "rounds:               " << opt.rounds << '\n'
            << "seed:                 " << opt.seed << '\n'
            << "empirical win rate:   " << emp.win_rate << " (se " << emp.win_rate_se << ")\n"
            << "empirical inequality: " << emp.inequality_hat << " (se " << emp.inequality_se
            << ")\n"
            << "empirical G:          " << emp.g_hat << " (se " << emp.g_hat_se << ")\n"
            << "empirical H_inf:      " << emp.min_entropy_hat_bits << " bits\n"
            << "forbidden outcomes:   " << emp.forbidden_parity_count << '\n';
        emit(out.str(), opt.out_path);
    }
    return kscert::all_pass(rep.checks) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Contextuality-certified randomness: magic-square and magic-star games"};
    app.require_subcommand(1);

    CommonOptions opt;
    auto add_output_flags = [&opt](CLI::App* cmd) {
        cmd->add_option("--format", opt.format, "Output format")
            ->check(CLI::IsMember({"json", "text"}));
        cmd->add_option("--out", opt.out_path, "Write the report to this path instead of stdout");
        cmd->add_flag("--deterministic", opt.deterministic,
                      "Omit the timestamp so identical runs emit identical bytes");
    };
    auto add_state_flags = [&opt](CLI::App* cmd) {
        cmd->add_option("--scenario", opt.scenario, "square or star")
            ->check(CLI::IsMember({"square", "star"}));
        cmd->add_option("--state", opt.state,
                        "Named state: maximally-mixed or common-eigenstate");
        cmd->add_option("--state-file", opt.state_file,
                        "JSON file {dim, entries: [[re,im],...]} row-major");
        cmd->add_option("--tolerance", opt.tolerance, "Numeric tolerance for checks");
    };

    CLI::App* tables = app.add_subcommand("tables", "Dump the observable tables");
    add_output_flags(tables);

    CLI::App* verify_square = app.add_subcommand("verify-square", "Run the square invariant suite");
    verify_square->add_option("--seed", opt.seed, "Seed for the random-state bank");
    verify_square->add_option("--tolerance", opt.tolerance, "Numeric tolerance");
    add_output_flags(verify_square);

    CLI::App* verify_star = app.add_subcommand("verify-star", "Run the star invariant suite");
    verify_star->add_option("--seed", opt.seed, "Seed for the random-state bank");
    verify_star->add_option("--tolerance", opt.tolerance, "Numeric tolerance");
    add_output_flags(verify_star);

    CLI::App* certify = app.add_subcommand("certify", "Certify randomness for a state");
    add_state_flags(certify);
    certify->add_option("--seed", opt.seed, "Seed for the optional state search");
    certify->add_option("--search-restarts", opt.search_restarts,
                        "Random-restart count for the min-G evidence search (0 = off)");
    add_output_flags(certify);

    CLI::App* simulate = app.add_subcommand("simulate", "Run the trial loop and estimate");
    add_state_flags(simulate);
    simulate->add_option("--rounds", opt.rounds, "Number of rounds")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", opt.seed, "Simulation seed");
    simulate->add_option("--csv", opt.csv_path, "Write the per-round bit records to this path");
    add_output_flags(simulate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (tables->parsed()) return run_tables(opt);
        if (verify_square->parsed()) return run_verify(opt, true);
        if (verify_star->parsed()) return run_verify(opt, false);
        if (certify->parsed()) return run_certify(opt);
        if (simulate->parsed()) return run_simulate(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
