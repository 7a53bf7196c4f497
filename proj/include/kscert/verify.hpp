#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "kscert/game.hpp"

namespace kscert {

// One named pass/fail result with the tolerance it was checked at.
struct Check {
    std::string name;
    bool pass;
    double tolerance;
    std::string detail;
};

inline bool all_pass(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace detail {

inline Check bounded(const std::string& name, double worst, double tol) {
    return Check{name, worst <= tol, tol, "max deviation " + std::to_string(worst)};
}

inline std::vector<std::vector<int>> bit_tuples(std::size_t k) {
    std::vector<std::vector<int>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        std::vector<int> t(k);
        for (std::size_t i = 0; i < k; ++i) t[i] = (mask >> (k - 1 - i)) & 1;
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace detail

// The square invariant suite: structure of the nine observables and six
// contexts, state independence of delta, the exhaustive classical bounds,
// the win identity, the moment/sequential agreement, the parity laws, and
// the preparation-equivalence statement.
inline std::vector<Check> verify_square_checks(std::uint64_t seed, double tol = kDefaultTol) {
    const MagicSquare sq = magic_square();
    std::vector<Check> checks;

    {
        bool ok = true;
        for (const auto* o : sq.all_observables()) {
            ok = ok && observable_is_valid(*o, 1e-12);
            ok = ok && std::abs(trace(o->matrix)) <= 1e-12;
        }
        checks.push_back({"square-observables-hermitian-involution-traceless", ok, 1e-12, ""});
    }
    {
        bool ok = true;
        for (const auto* ctx : sq.all_contexts()) ok = ok && context_is_valid(*ctx, 1e-12);
        checks.push_back({"square-context-products-signed-identity", ok, 1e-12, ""});
    }

    const std::vector<DensityState> states100 = random_density_states(2, 100, seed);
    {
        double worst = 0.0;
        for (const auto& rho : states100) worst = std::max(worst, std::abs(delta(sq, rho, tol) - 6.0));
        checks.push_back(detail::bounded("square-delta-6-on-100-random-states", worst, 1e-9));
    }

    {
        const OracleResult oracle = max_delta_noncontextual(sq);
        const bool ok = oracle.max_value == 4.0 && oracle.assignments_visited == 512;
        checks.push_back({"square-oracle-bound-4-over-512", ok, 0.0,
                          "max " + std::to_string(oracle.max_value)});
    }
    {
        const WinOracleResult win = max_win_noncontextual(sq);
        const bool rational_ok = win.best_satisfied == 5 && win.condition_count == 6;
        // Win identity at the deterministic level: 2*(6*maxwin) - 6 = maxdelta,
        // evaluated in integers since 6*maxwin = best_satisfied exactly.
        const bool eq6_ok = 2 * win.best_satisfied - 6 == 4;
        checks.push_back({"square-oracle-max-win-5-of-6", rational_ok && eq6_ok, 0.0,
                          std::to_string(win.best_satisfied) + "/" +
                              std::to_string(win.condition_count)});
    }

    {
        double worst = 0.0;
        for (std::size_t i = 0; i < 50; ++i) {
            const DensityState& rho = states100[i];
            worst = std::max(worst, std::abs(win_probability(sq, rho, tol) -
                                             0.5 * (1.0 + delta(sq, rho, tol) / 6.0)));
        }
        checks.push_back(detail::bounded("square-win-identity-50-states", worst, 1e-9));
    }

    {
        double worst = 0.0;
        for (std::size_t i = 0; i < 50; ++i) {
            const DensityState& rho = states100[i];
            for (const auto* ctx : sq.all_contexts()) {
                for (const auto& outcomes : detail::bit_tuples(3)) {
                    const double ps = sequential_probability(rho, *ctx, outcomes, tol);
                    const double pm =
                        moment_probability(rho, ctx->members[0], ctx->members[1], ctx->members[2],
                                           outcomes[0], outcomes[1], outcomes[2], tol);
                    worst = std::max(worst, std::abs(ps - pm));
                }
            }
        }
        checks.push_back(detail::bounded("square-moment-vs-sequential-50-states", worst, 1e-9));
    }

    {
        double worst = 0.0;
        for (std::size_t i = 0; i < 50; ++i) {
            const DensityState& rho = states100[i];
            for (const GameInputs& in : valid_rounds()) {
                const MeasurementContext ctx = context_for(sq, in);
                for (const auto& o : detail::bit_tuples(3)) {
                    const int parity = (o[0] ^ o[1] ^ o[2]) & 1;
                    const int forbidden_parity = is_row_round(in) ? 1 : 0;
                    if (parity != forbidden_parity) continue;
                    worst = std::max(worst, std::abs(sequential_probability(rho, ctx, o, tol)));
                }
            }
        }
        checks.push_back(detail::bounded("square-parity-laws-50-states", worst, 1e-12));
    }

    {
        const DensityState mm = DensityState::maximally_mixed(2);
        double worst = 0.0;
        for (const GameInputs& in : valid_rounds()) {
            const MeasurementContext ctx = context_for(sq, in);
            for (const auto& o : detail::bit_tuples(3)) {
                const int parity = (o[0] ^ o[1] ^ o[2]) & 1;
                const int allowed_parity = is_row_round(in) ? 0 : 1;
                if (parity != allowed_parity) continue;
                worst = std::max(worst,
                                 std::abs(sequential_probability(mm, ctx, o, tol) - 0.25));
            }
        }
        checks.push_back(detail::bounded("square-maximally-mixed-quarter-law", worst, 1e-12));
    }

    {
        double worst = 0.0;
        for (std::size_t i = 0; i < 20; ++i) {
            const DensityState& rho = states100[i];
            double total = 0.0;
            for (const GameInputs& in : valid_rounds()) {
                const MeasurementContext ctx = context_for(sq, in);
                for (const auto& o : detail::bit_tuples(3))
                    total += alpha_coefficient(in, o[0], o[1], o[2]) *
                             sequential_probability(rho, ctx, o, tol);
            }
            worst = std::max(worst, std::abs(total - delta(sq, rho, tol)));
        }
        checks.push_back(detail::bounded("square-alpha-decomposition-identity", worst, 1e-9));
    }

    {
        // Order invariance of commuting sequences, all 6 permutations.
        const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        double worst = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
            const DensityState& rho = states100[i];
            for (const auto* ctx : sq.all_contexts()) {
                for (const auto& o : detail::bit_tuples(3)) {
                    const double base = sequential_probability(rho, *ctx, o, tol);
                    for (const auto& perm : perms) {
                        std::vector<MeasurementStep> seq;
                        for (int k : {0, 1, 2})
                            seq.push_back({ctx->members[perm[k]], o[perm[k]]});
                        worst = std::max(worst,
                                         std::abs(sequential_probability(rho, seq, tol) - base));
                    }
                }
            }
        }
        checks.push_back(detail::bounded("square-order-invariance", worst, 1e-9));
    }

    {
        const PreparationEquivalenceReport prep = preparation_equivalence_check(sq);
        checks.push_back({"square-preparation-mixtures-maximally-mixed", prep.all_mixtures_match,
                          prep.mixture_tol, ""});
        checks.push_back({"square-preparation-decompositions-differ", prep.decompositions_differ,
                          prep.match_tol, ""});
    }

    {
        const DensityState mm = DensityState::maximally_mixed(2);
        const GuessingOptimum mm_opt = guessing_probability_square(sq, mm, tol);
        const DensityState eig =
            common_positive_eigenstate({sq.a(1), sq.b(1), sq.c(1)}, tol);
        const GuessingOptimum eig_opt = guessing_probability_square(sq, eig, tol);
        const bool ok = std::abs(mm_opt.g - 0.25) <= 1e-12 &&
                        std::abs(min_entropy(mm_opt.g) - 2.0) <= 1e-9 &&
                        std::abs(eig_opt.g - 1.0) <= 1e-12;
        checks.push_back({"square-guessing-quarter-and-eigenstate-one", ok, 1e-12,
                          "G(mm)=" + std::to_string(mm_opt.g) +
                              " G(eig)=" + std::to_string(eig_opt.g)});
    }

    return checks;
}

// The star invariant suite.
inline std::vector<Check> verify_star_checks(std::uint64_t seed, double tol = kDefaultTol) {
    const MagicStar star = magic_star();
    std::vector<Check> checks;

    {
        bool ok = true;
        for (const auto& o : star.observables) {
            ok = ok && observable_is_valid(o, 1e-12);
            ok = ok && std::abs(trace(o.matrix)) <= 1e-12;
            ok = ok && star.edges_of(o.label).size() == 2;
        }
        for (const auto& e : star.edges) ok = ok && context_is_valid(e, 1e-12);
        checks.push_back({"star-structure-ten-observables-five-edges", ok, 1e-12, ""});
    }

    const std::vector<DensityState> states100 = random_density_states(3, 100, seed);
    {
        double worst = 0.0;
        for (const auto& rho : states100)
            worst = std::max(worst, std::abs(beta(star, rho, tol) - 5.0));
        checks.push_back(detail::bounded("star-beta-5-on-100-random-states", worst, 1e-9));
    }

    {
        const OracleResult oracle = max_beta_noncontextual(star);
        const bool ok = oracle.max_value == 3.0 && oracle.assignments_visited == 1024;
        checks.push_back(
            {"star-oracle-bound-3-over-1024", ok, 0.0, "max " + std::to_string(oracle.max_value)});
    }

    {
        const DensityState mm = DensityState::maximally_mixed(3);
        double worst_allowed = 0.0, worst_forbidden = 0.0;
        for (const auto& edge : star.edges) {
            const int want = edge.expected_product_sign == -1 ? 1 : 0;
            for (const auto& o : detail::bit_tuples(4)) {
                const int parity = (o[0] ^ o[1] ^ o[2] ^ o[3]) & 1;
                const double p = sequential_probability(mm, edge, o, tol);
                if (parity == want)
                    worst_allowed = std::max(worst_allowed, std::abs(p - 0.125));
                else
                    worst_forbidden = std::max(worst_forbidden, std::abs(p));
            }
        }
        checks.push_back(
            detail::bounded("star-maximally-mixed-eighth-law", worst_allowed, 1e-12));
        checks.push_back(detail::bounded("star-forbidden-parity-zero", worst_forbidden, 1e-12));
    }

    {
        const DensityState mm = DensityState::maximally_mixed(3);
        const GuessingOptimum opt = guessing_probability_star(star, mm, tol);
        const bool ok =
            std::abs(opt.g - 0.125) <= 1e-12 && std::abs(min_entropy(opt.g) - 3.0) <= 1e-9;
        checks.push_back({"star-guessing-eighth-three-bits", ok, 1e-12, "G=" + std::to_string(opt.g)});
    }

    {
        double worst = 0.0;
        for (std::size_t i = 0; i < 25; ++i) {
            const DensityState& rho = states100[i];
            worst = std::max(worst, std::abs(win_probability_star(star, rho, tol) -
                                             0.5 * (1.0 + beta(star, rho, tol) / 5.0)));
        }
        checks.push_back(detail::bounded("star-win-identity-25-states", worst, 1e-9));
    }

    return checks;
}

}  // namespace kscert
