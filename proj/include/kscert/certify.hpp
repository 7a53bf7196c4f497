#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "kscert/verify.hpp"

namespace kscert {

// Everything the certification of one state boils down to: the inequality
// value against its exhaustively computed classical bound, the game win
// probability, the guessing probability with its argmax, and min-entropy.
struct CertificationReport {
    std::string scenario;  // "square" or "star"
    std::string state_descriptor;
    std::string inequality_name;
    double delta_or_beta;
    double quantum_target;  // 6 (square) or 5 (star)
    double classical_bound;
    double win_probability;
    GuessingOptimum guess;
    double min_entropy_bits;
    std::vector<Check> checks;
};

inline CertificationReport certify_square(const MagicSquare& sq, const DensityState& rho,
                                          const std::string& state_descriptor,
                                          double tol = kDefaultTol) {
    CertificationReport rep;
    rep.scenario = "square";
    rep.state_descriptor = state_descriptor;
    rep.inequality_name = "magic-square-delta";
    rep.quantum_target = 6.0;
    rep.delta_or_beta = delta(sq, rho, tol);
    rep.classical_bound = max_delta_noncontextual(sq).max_value;
    rep.win_probability = win_probability(sq, rho, tol);
    rep.guess = guessing_probability_square(sq, rho, tol);
    rep.min_entropy_bits = min_entropy(rep.guess.g);

    rep.checks.push_back({"delta-equals-quantum-value",
                          std::abs(rep.delta_or_beta - rep.quantum_target) <= 1e-9, 1e-9, ""});
    rep.checks.push_back(
        {"delta-constraint-for-guessing", rep.guess.constraint_satisfied, rep.guess.constraint_tol,
         "delta " + std::to_string(rep.guess.constraint_value)});
    rep.checks.push_back(
        {"win-identity",
         std::abs(rep.win_probability - 0.5 * (1.0 + rep.delta_or_beta / 6.0)) <= 1e-9, 1e-9, ""});
    rep.checks.push_back({"min-entropy-identity",
                          std::abs(rep.min_entropy_bits + std::log2(std::min(rep.guess.g, 1.0))) <=
                              1e-9,
                          1e-9, ""});
    rep.checks.push_back({"violates-classical-bound",
                          rep.delta_or_beta > rep.classical_bound + 1e-9, 1e-9, ""});
    return rep;
}

inline CertificationReport certify_star(const MagicStar& star, const DensityState& rho,
                                        const std::string& state_descriptor,
                                        double tol = kDefaultTol) {
    CertificationReport rep;
    rep.scenario = "star";
    rep.state_descriptor = state_descriptor;
    rep.inequality_name = "magic-star-beta";
    rep.quantum_target = 5.0;
    rep.delta_or_beta = beta(star, rho, tol);
    rep.classical_bound = max_beta_noncontextual(star).max_value;
    rep.win_probability = win_probability_star(star, rho, tol);
    rep.guess = guessing_probability_star(star, rho, tol);
    rep.min_entropy_bits = min_entropy(rep.guess.g);

    rep.checks.push_back({"beta-equals-quantum-value",
                          std::abs(rep.delta_or_beta - rep.quantum_target) <= 1e-9, 1e-9, ""});
    rep.checks.push_back(
        {"beta-constraint-for-guessing", rep.guess.constraint_satisfied, rep.guess.constraint_tol,
         "beta " + std::to_string(rep.guess.constraint_value)});
    rep.checks.push_back(
        {"win-identity",
         std::abs(rep.win_probability - 0.5 * (1.0 + rep.delta_or_beta / 5.0)) <= 1e-9, 1e-9, ""});
    rep.checks.push_back({"min-entropy-identity",
                          std::abs(rep.min_entropy_bits + std::log2(std::min(rep.guess.g, 1.0))) <=
                              1e-9,
                          1e-9, ""});
    rep.checks.push_back({"violates-classical-bound",
                          rep.delta_or_beta > rep.classical_bound + 1e-9, 1e-9, ""});
    return rep;
}

}  // namespace kscert
