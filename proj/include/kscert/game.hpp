#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "kscert/oracle.hpp"
#include "kscert/quantum.hpp"

namespace kscert {

// Inputs of one game round. x picks A_x, y picks B_y, z picks C_z from the
// square. Valid rounds are x=y=z (row-type triple, product +I) and the
// cyclic pattern y=x(+)1, z=x(+)2 (column-type triple, product -I); all
// other triples are rejected.
struct GameInputs {
    int x;
    int y;
    int z;
};

// Cyclic successor on {1,2,3}: ((x-1+k) mod 3)+1.
inline int mod3_next(int x, int k) {
    if (x < 1 || x > 3) throw std::invalid_argument("mod3_next: input must be in {1,2,3}");
    return ((x - 1 + k) % 3 + 3) % 3 + 1;
}

inline bool is_valid_round(const GameInputs& in) {
    if (in.x < 1 || in.x > 3 || in.y < 1 || in.y > 3 || in.z < 1 || in.z > 3) return false;
    if (in.x == in.y && in.y == in.z) return true;
    return in.y == mod3_next(in.x, 1) && in.z == mod3_next(in.x, 2);
}

inline bool is_row_round(const GameInputs& in) { return in.x == in.y && in.y == in.z; }

// The six valid rounds in lexicographic (x,y,z) order; this order fixes
// argmax tie-breaking everywhere.
inline std::vector<GameInputs> valid_rounds() {
    return {{1, 1, 1}, {1, 2, 3}, {2, 2, 2}, {2, 3, 1}, {3, 1, 2}, {3, 3, 3}};
}

// Win rule: equal inputs need outcome parity 0, cyclic inputs parity 1.
inline bool winning_condition(const GameInputs& in, int a, int b, int c) {
    if (!is_valid_round(in)) throw std::invalid_argument("winning_condition: invalid round");
    const int parity = (a ^ b ^ c) & 1;
    return is_row_round(in) ? parity == 0 : parity == 1;
}

// Measurement context realized by a round: members ordered (A_x, B_y, C_z),
// which is the sequential order Alice then Charlie measure in.
inline MeasurementContext context_for(const MagicSquare& sq, const GameInputs& in) {
    if (!is_valid_round(in)) throw std::invalid_argument("context_for: invalid round");
    return MeasurementContext{
        sq.a(in.x).label + sq.b(in.y).label + sq.c(in.z).label,
        {sq.a(in.x), sq.b(in.y), sq.c(in.z)},
        is_row_round(in) ? +1 : -1};
}

// <R1>+<R2>+<R3>-<L1>-<L2>-<L3>. Equals 6 for every two-qubit state: the
// operator sum of the six signed context products is 6*I4.
inline double delta(const MagicSquare& sq, const DensityState& rho, double tol = kDefaultTol) {
    double d = 0.0;
    for (const auto& r : sq.rows) d += expectation_product(rho, r, tol);
    for (const auto& l : sq.columns) d -= expectation_product(rho, l, tol);
    return d;
}

// -<E1>+<E2>+<E3>+<E4>+<E5>. Equals 5 for every three-qubit state.
inline double beta(const MagicStar& star, const DensityState& rho, double tol = kDefaultTol) {
    double b = -expectation_product(rho, star.edges[0], tol);
    for (std::size_t j = 1; j < star.edges.size(); ++j)
        b += expectation_product(rho, star.edges[j], tol);
    return b;
}

// Uniform-round win probability, summed from sequential joint probabilities.
// Identity with the inequality value, P_w = (1 + delta/6)/2, is a tested
// property of the two computations.
inline double win_probability(const MagicSquare& sq, const DensityState& rho,
                              double tol = kDefaultTol) {
    double total = 0.0;
    int n_rounds = 0;
    for (const GameInputs& in : valid_rounds()) {
        const MeasurementContext ctx = context_for(sq, in);
        for (int mask = 0; mask < 8; ++mask) {
            const int a = (mask >> 2) & 1, b = (mask >> 1) & 1, c = mask & 1;
            if (!winning_condition(in, a, b, c)) continue;
            total += sequential_probability(rho, ctx, {a, b, c}, tol);
        }
        ++n_rounds;
    }
    return total / static_cast<double>(n_rounds);
}

// Star analog of the win rate: the parity condition per edge is odd on E1
// (product -I) and even elsewhere, so the success rate is (1 + beta/5)/2.
inline double win_probability_star(const MagicStar& star, const DensityState& rho,
                                   double tol = kDefaultTol) {
    double total = 0.0;
    for (const auto& edge : star.edges) {
        const int want_parity = edge.expected_product_sign == -1 ? 1 : 0;
        for (int mask = 0; mask < 16; ++mask) {
            std::vector<int> outcomes = {(mask >> 3) & 1, (mask >> 2) & 1, (mask >> 1) & 1,
                                         mask & 1};
            const int parity = (outcomes[0] ^ outcomes[1] ^ outcomes[2] ^ outcomes[3]) & 1;
            if (parity != want_parity) continue;
            total += sequential_probability(rho, edge, outcomes, tol);
        }
    }
    return total / static_cast<double>(star.edges.size());
}

// Sign of a joint probability's contribution to the inequality:
// (-1)^(a^b^c) on equal-input rounds, the negative of that on cyclic rounds.
// Summing alpha * P over all rounds and outcomes reproduces delta.
inline int alpha_coefficient(const GameInputs& in, int a, int b, int c) {
    if (!is_valid_round(in)) throw std::invalid_argument("alpha_coefficient: invalid round");
    const int parity_sign = ((a ^ b ^ c) & 1) == 0 ? +1 : -1;
    return is_row_round(in) ? parity_sign : -parity_sign;
}

// -log2(G) in bits. G must lie in (0, 1]; a whisker of numerical overshoot
// above 1 is clamped.
inline double min_entropy(double g) {
    if (!(g > 0.0) || g > 1.0 + 1e-9)
        throw std::domain_error("min_entropy: guessing probability out of (0, 1]");
    return -std::log2(std::min(g, 1.0));
}

// Result of the exhaustive max-probability scan for a given state. The
// inequality constraint (delta = 6, resp. beta = 5) is evaluated at a loose
// physical tolerance and reported as a flag rather than as an error.
struct GuessingOptimum {
    double g;
    double constraint_value;      // measured delta or beta
    bool constraint_satisfied;    // within constraint_tol of the quantum value
    double constraint_tol;
    std::vector<int> argmax_inputs;    // square: {x,y,z}; star: {edge index}
    std::vector<int> argmax_outcomes;  // 3 or 4 bits
};

inline constexpr double kConstraintTol = 1e-6;

inline GuessingOptimum guessing_probability_square(const MagicSquare& sq, const DensityState& rho,
                                                   double tol = kDefaultTol,
                                                   double constraint_tol = kConstraintTol) {
    if (rho.dim() != 4)
        throw std::invalid_argument("guessing_probability_square: need a two-qubit state");
    GuessingOptimum opt{-1.0, delta(sq, rho, tol), false, constraint_tol, {}, {}};
    opt.constraint_satisfied = std::abs(opt.constraint_value - 6.0) <= constraint_tol;
    for (const GameInputs& in : valid_rounds()) {
        const MeasurementContext ctx = context_for(sq, in);
        for (int mask = 0; mask < 8; ++mask) {
            const int a = (mask >> 2) & 1, b = (mask >> 1) & 1, c = mask & 1;
            const double p = sequential_probability(rho, ctx, {a, b, c}, tol);
            if (p > opt.g) {
                opt.g = p;
                opt.argmax_inputs = {in.x, in.y, in.z};
                opt.argmax_outcomes = {a, b, c};
            }
        }
    }
    return opt;
}

inline GuessingOptimum guessing_probability_star(const MagicStar& star, const DensityState& rho,
                                                 double tol = kDefaultTol,
                                                 double constraint_tol = kConstraintTol) {
    if (rho.dim() != 8)
        throw std::invalid_argument("guessing_probability_star: need a three-qubit state");
    GuessingOptimum opt{-1.0, beta(star, rho, tol), false, constraint_tol, {}, {}};
    opt.constraint_satisfied = std::abs(opt.constraint_value - 5.0) <= constraint_tol;
    for (std::size_t j = 0; j < star.edges.size(); ++j) {
        for (int mask = 0; mask < 16; ++mask) {
            const std::vector<int> outcomes = {(mask >> 3) & 1, (mask >> 2) & 1, (mask >> 1) & 1,
                                               mask & 1};
            const double p = sequential_probability(rho, star.edges[j], outcomes, tol);
            if (p > opt.g) {
                opt.g = p;
                opt.argmax_inputs = {static_cast<int>(j + 1)};
                opt.argmax_outcomes = outcomes;
            }
        }
    }
    return opt;
}

// One preparation procedure of the preparation-equivalence check: measure a
// commuting (A_x, B_y) pair sequentially on I4/4 and collect the four
// Lueders branches.
struct PreparationBranch {
    int a;
    int b;
    double probability;
    DensityState state;
};

struct PreparationProcedure {
    std::string label;
    std::vector<PreparationBranch> branches;
    double max_mixture_deviation;  // entrywise, from I4/4
    bool mixture_matches;
    bool branches_pure;  // Tr[state^2] = 1 for every branch
};

struct PreparationEquivalenceReport {
    std::vector<PreparationProcedure> procedures;
    bool all_mixtures_match;
    bool decompositions_differ;  // >= two procedures with different branch-state sets
    double mixture_tol;
    double match_tol;
};

namespace detail {
inline bool same_state_set(const PreparationProcedure& p1, const PreparationProcedure& p2,
                           double match_tol) {
    if (p1.branches.size() != p2.branches.size()) return false;
    std::vector<bool> used(p2.branches.size(), false);
    for (const auto& b1 : p1.branches) {
        bool matched = false;
        for (std::size_t i = 0; i < p2.branches.size(); ++i) {
            if (used[i]) continue;
            if (approx_eq(b1.state.matrix(), p2.branches[i].state.matrix(), match_tol) &&
                std::abs(b1.probability - p2.branches[i].probability) <= match_tol) {
                used[i] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}
}  // namespace detail

// For each of the six (A_x, B_y) pairs the game uses, sequentially measure
// the pair on I4/4, mix the branch states with their probabilities and test
// that the mixture is again I4/4. Distinct procedures reach the same mixed
// state through different pure-state decompositions; the report records both
// facts.
inline PreparationEquivalenceReport preparation_equivalence_check(const MagicSquare& sq,
                                                                  double mixture_tol = 1e-12,
                                                                  double match_tol = 1e-9,
                                                                  double tol = kDefaultTol) {
    const DensityState rho = DensityState::maximally_mixed(2);
    const ComplexMatrix target = 0.25 * ComplexMatrix::identity(4);

    PreparationEquivalenceReport report{{}, true, false, mixture_tol, match_tol};
    for (const GameInputs& in : valid_rounds()) {
        const Observable& first = sq.a(in.x);
        const Observable& second = sq.b(in.y);
        PreparationProcedure proc{first.label + "," + second.label, {}, 0.0, false, true};

        ComplexMatrix mixture(4);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                const MeasurementBranch s1 = post_measurement_state(rho, first, a, tol);
                const MeasurementBranch s2 = post_measurement_state(s1.state, second, b, tol);
                const double p = s1.probability * s2.probability;
                mixture = mixture + p * s2.state.matrix();
                const double purity =
                    detail::real_trace_checked(mul(s2.state.matrix(), s2.state.matrix()), tol,
                                               "preparation_equivalence_check");
                if (std::abs(purity - 1.0) > tol) proc.branches_pure = false;
                proc.branches.push_back({a, b, p, s2.state});
            }
        }
        proc.max_mixture_deviation = max_abs_diff(mixture, target);
        proc.mixture_matches = proc.max_mixture_deviation <= mixture_tol;
        if (!proc.mixture_matches) report.all_mixtures_match = false;
        report.procedures.push_back(std::move(proc));
    }

    for (std::size_t i = 0; i < report.procedures.size() && !report.decompositions_differ; ++i)
        for (std::size_t j = i + 1; j < report.procedures.size(); ++j)
            if (!detail::same_state_set(report.procedures[i], report.procedures[j], match_tol)) {
                report.decompositions_differ = true;
                break;
            }
    return report;
}

// Random-restart evidence scan for the minimum of G over states (the
// inequality constraint holds automatically for every valid state). Reports
// the empirical minimum; it is evidence, not a bound.
struct GuessingSearchResult {
    std::size_t restarts;
    std::uint64_t seed;
    double min_g;
    std::size_t argmin_index;
};

inline GuessingSearchResult search_min_guessing_square(const MagicSquare& sq, std::size_t restarts,
                                                       std::uint64_t seed,
                                                       double tol = kDefaultTol) {
    GuessingSearchResult res{restarts, seed, 2.0, 0};
    for (std::size_t i = 0; i < restarts; ++i) {
        SplitMix64 rng = SplitMix64::substream(seed, i);
        const DensityState rho = random_density_state(2, static_cast<int>(i % 4) + 1, rng);
        const double g = guessing_probability_square(sq, rho, tol).g;
        if (g < res.min_g) {
            res.min_g = g;
            res.argmin_index = i;
        }
    }
    return res;
}

inline GuessingSearchResult search_min_guessing_star(const MagicStar& star, std::size_t restarts,
                                                     std::uint64_t seed, double tol = kDefaultTol) {
    GuessingSearchResult res{restarts, seed, 2.0, 0};
    for (std::size_t i = 0; i < restarts; ++i) {
        SplitMix64 rng = SplitMix64::substream(seed, i);
        const DensityState rho = random_density_state(3, static_cast<int>(i % 8) + 1, rng);
        const double g = guessing_probability_star(star, rho, tol).g;
        if (g < res.min_g) {
            res.min_g = g;
            res.argmin_index = i;
        }
    }
    return res;
}

}  // namespace kscert
