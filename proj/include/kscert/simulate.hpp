#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kscert/game.hpp"
#include "kscert/rng.hpp"

namespace kscert {

enum class Scenario { Square, Star };

inline std::string scenario_name(Scenario s) { return s == Scenario::Square ? "square" : "star"; }

struct SimulationConfig {
    Scenario scenario;
    DensityState state;
    std::string state_descriptor;
    std::uint64_t rounds;
    std::uint64_t seed;
    double tol = kDefaultTol;
};

struct TrialRecord {
    std::uint64_t round_index;
    std::vector<int> inputs;    // square: {x,y,z}; star: {edge 1..5}
    std::vector<int> outcomes;  // 3 bits (square) or 4 bits (star)
    bool won;
};

namespace detail {

inline int edge_want_parity(const MeasurementContext& edge) {
    return edge.expected_product_sign == -1 ? 1 : 0;
}

// Branch on each member in sequence: probability of outcome 0 from the
// current state, then Lueders collapse on the drawn outcome. Consumes one
// uniform per member.
inline std::vector<int> sample_sequential(const DensityState& start,
                                          const MeasurementContext& ctx, SplitMix64& rng,
                                          double tol) {
    std::vector<int> outcomes;
    outcomes.reserve(ctx.members.size());
    DensityState state = start;
    for (const Observable& member : ctx.members) {
        const double p0 = expectation(state, projector(member, 0), tol);
        const int outcome = rng.next_unit() < p0 ? 0 : 1;
        state = post_measurement_state(state, member, outcome, tol, /*branch_tol=*/0.0).state;
        outcomes.push_back(outcome);
    }
    return outcomes;
}

}  // namespace detail

// Round-by-round protocol simulation. Round i draws its inputs and outcomes
// from substream(seed, i), so the record list is a pure function of the
// config and identical under any execution order.
inline std::vector<TrialRecord> run_trials(const SimulationConfig& cfg) {
    if (cfg.rounds < 1) throw std::invalid_argument("run_trials: rounds must be >= 1");
    const std::size_t want_dim = cfg.scenario == Scenario::Square ? 4 : 8;
    if (cfg.state.dim() != want_dim)
        throw std::invalid_argument("run_trials: state dimension does not match scenario");

    const MagicSquare sq = magic_square();
    const MagicStar star = magic_star();
    const std::vector<GameInputs> rounds = valid_rounds();

    std::vector<TrialRecord> records;
    records.reserve(cfg.rounds);
    for (std::uint64_t i = 0; i < cfg.rounds; ++i) {
        SplitMix64 rng = SplitMix64::substream(cfg.seed, i);
        TrialRecord rec{i, {}, {}, false};
        if (cfg.scenario == Scenario::Square) {
            const GameInputs in = rounds[rng.next_below(rounds.size())];
            const MeasurementContext ctx = context_for(sq, in);
            rec.inputs = {in.x, in.y, in.z};
            rec.outcomes = detail::sample_sequential(cfg.state, ctx, rng, cfg.tol);
            rec.won = winning_condition(in, rec.outcomes[0], rec.outcomes[1], rec.outcomes[2]);
        } else {
            const std::size_t e = rng.next_below(star.edges.size());
            const MeasurementContext& edge = star.edges[e];
            rec.inputs = {static_cast<int>(e + 1)};
            rec.outcomes = detail::sample_sequential(cfg.state, edge, rng, cfg.tol);
            const int parity =
                (rec.outcomes[0] ^ rec.outcomes[1] ^ rec.outcomes[2] ^ rec.outcomes[3]) & 1;
            rec.won = parity == detail::edge_want_parity(edge);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

// Cross-check path: outcomes drawn from the precomputed joint distribution
// of each context instead of branch-by-branch collapse. Statistically
// equivalent to run_trials, not record-identical (different draw layout).
inline std::vector<TrialRecord> run_trials_joint(const SimulationConfig& cfg) {
    if (cfg.rounds < 1) throw std::invalid_argument("run_trials_joint: rounds must be >= 1");
    const std::size_t want_dim = cfg.scenario == Scenario::Square ? 4 : 8;
    if (cfg.state.dim() != want_dim)
        throw std::invalid_argument("run_trials_joint: state dimension does not match scenario");

    const MagicSquare sq = magic_square();
    const MagicStar star = magic_star();
    const std::vector<GameInputs> rounds = valid_rounds();

    // Joint distributions per round type, computed once.
    std::vector<OutcomeDistribution> dists;
    if (cfg.scenario == Scenario::Square) {
        for (const GameInputs& in : rounds)
            dists.push_back(outcome_distribution(cfg.state, context_for(sq, in), cfg.tol));
    } else {
        for (const auto& edge : star.edges)
            dists.push_back(outcome_distribution(cfg.state, edge, cfg.tol));
    }

    std::vector<TrialRecord> records;
    records.reserve(cfg.rounds);
    for (std::uint64_t i = 0; i < cfg.rounds; ++i) {
        SplitMix64 rng = SplitMix64::substream(cfg.seed, i);
        TrialRecord rec{i, {}, {}, false};
        const std::size_t type = rng.next_below(dists.size());
        const OutcomeDistribution& dist = dists[type];
        double u = rng.next_unit();
        std::size_t pick = dist.probs.size() - 1;
        for (std::size_t k = 0; k < dist.probs.size(); ++k) {
            u -= dist.probs[k].second;
            if (u < 0.0) {
                pick = k;
                break;
            }
        }
        rec.outcomes = dist.probs[pick].first;
        if (cfg.scenario == Scenario::Square) {
            const GameInputs in = rounds[type];
            rec.inputs = {in.x, in.y, in.z};
            rec.won = winning_condition(in, rec.outcomes[0], rec.outcomes[1], rec.outcomes[2]);
        } else {
            rec.inputs = {static_cast<int>(type + 1)};
            const int parity =
                (rec.outcomes[0] ^ rec.outcomes[1] ^ rec.outcomes[2] ^ rec.outcomes[3]) & 1;
            rec.won = parity == detail::edge_want_parity(star.edges[type]);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

struct EmpiricalFrequency {
    std::vector<int> inputs;
    std::vector<int> outcomes;
    std::uint64_t count;
    double frequency;  // conditional on the round type
    double std_error;  // sqrt(f(1-f)/N_type)
};

struct EmpiricalCorrelator {
    std::vector<int> inputs;
    std::uint64_t count;
    double value;      // sum over outcomes of (-1)^parity * frequency
    double std_error;  // sqrt((1-value^2)/N_type)
};

struct EmpiricalReport {
    Scenario scenario;
    std::uint64_t rounds;
    double win_rate;
    double win_rate_se;
    double inequality_hat;  // delta-hat (square) or beta-hat (star)
    double inequality_se;
    double g_hat;
    double g_hat_se;
    double min_entropy_hat_bits;
    std::vector<int> g_argmax_inputs;
    std::vector<int> g_argmax_outcomes;
    std::uint64_t forbidden_parity_count;  // rounds violating the parity law
    std::vector<EmpiricalCorrelator> correlators;
    std::vector<EmpiricalFrequency> frequencies;
};

// Empirical estimates from a record list: per-(inputs, outcomes) frequency
// table, the inequality value from the signed correlators, the largest
// conditional frequency as G-hat, and binomial standard errors throughout.
inline EmpiricalReport estimate(const std::vector<TrialRecord>& records, Scenario scenario) {
    if (records.empty()) throw std::invalid_argument("estimate: no records");

    const std::size_t n_outcome_bits = scenario == Scenario::Square ? 3 : 4;
    const std::size_t n_masks = std::size_t{1} << n_outcome_bits;

    // Round types in deterministic order.
    std::vector<std::vector<int>> type_inputs;
    if (scenario == Scenario::Square) {
        for (const GameInputs& in : valid_rounds()) type_inputs.push_back({in.x, in.y, in.z});
    } else {
        for (int e = 1; e <= 5; ++e) type_inputs.push_back({e});
    }

    std::map<std::vector<int>, std::size_t> type_index;
    for (std::size_t t = 0; t < type_inputs.size(); ++t) type_index[type_inputs[t]] = t;

    std::vector<std::uint64_t> type_counts(type_inputs.size(), 0);
    std::vector<std::vector<std::uint64_t>> counts(type_inputs.size(),
                                                   std::vector<std::uint64_t>(n_masks, 0));
    std::uint64_t wins = 0, forbidden = 0;

    for (const TrialRecord& rec : records) {
        auto it = type_index.find(rec.inputs);
        if (it == type_index.end() || rec.outcomes.size() != n_outcome_bits)
            throw std::invalid_argument("estimate: record does not match scenario");
        std::size_t mask = 0;
        for (int bit : rec.outcomes) mask = (mask << 1) | (bit & 1);
        ++type_counts[it->second];
        ++counts[it->second][mask];
        if (rec.won) ++wins;
        else ++forbidden;
    }

    const double n = static_cast<double>(records.size());
    EmpiricalReport rep{scenario,
                        records.size(),
                        static_cast<double>(wins) / n,
                        0.0,
                        0.0,
                        0.0,
                        -1.0,
                        0.0,
                        0.0,
                        {},
                        {},
                        forbidden,
                        {},
                        {}};
    rep.win_rate_se = std::sqrt(rep.win_rate * (1.0 - rep.win_rate) / n);

    double inequality = 0.0, inequality_var = 0.0;
    for (std::size_t t = 0; t < type_inputs.size(); ++t) {
        const double nt = static_cast<double>(type_counts[t]);
        EmpiricalCorrelator corr{type_inputs[t], type_counts[t], 0.0, 0.0};
        for (std::size_t mask = 0; mask < n_masks; ++mask) {
            std::vector<int> outcomes(n_outcome_bits);
            int parity = 0;
            for (std::size_t i = 0; i < n_outcome_bits; ++i) {
                outcomes[i] = (mask >> (n_outcome_bits - 1 - i)) & 1;
                parity ^= outcomes[i];
            }
            const double f = nt > 0.0 ? static_cast<double>(counts[t][mask]) / nt : 0.0;
            const double se = nt > 0.0 ? std::sqrt(f * (1.0 - f) / nt) : 0.0;
            rep.frequencies.push_back({type_inputs[t], outcomes, counts[t][mask], f, se});
            corr.value += (parity == 0 ? 1.0 : -1.0) * f;
            if (nt > 0.0 && f > rep.g_hat) {
                rep.g_hat = f;
                rep.g_hat_se = se;
                rep.g_argmax_inputs = type_inputs[t];
                rep.g_argmax_outcomes = outcomes;
            }
        }
        corr.std_error =
            nt > 0.0 ? std::sqrt(std::max(0.0, 1.0 - corr.value * corr.value) / nt) : 0.0;
        rep.correlators.push_back(corr);

        // Sign pattern of the inequality: + on equal-input/plus-sign types,
        // - on cyclic types; for the star, - on E1 and + elsewhere.
        double sign;
        if (scenario == Scenario::Square) {
            sign = (type_inputs[t][0] == type_inputs[t][1] && type_inputs[t][1] == type_inputs[t][2])
                       ? 1.0
                       : -1.0;
        } else {
            sign = type_inputs[t][0] == 1 ? -1.0 : 1.0;
        }
        inequality += sign * corr.value;
        inequality_var += corr.std_error * corr.std_error;
    }
    rep.inequality_hat = inequality;
    rep.inequality_se = std::sqrt(inequality_var);
    rep.min_entropy_hat_bits = rep.g_hat > 0.0 ? -std::log2(std::min(rep.g_hat, 1.0)) : 0.0;
    return rep;
}

// One CSV row per round: round_index,x,y,z,a,b,c,won (square) or
// round_index,edge,a,b,c,d,won (star).
inline std::string records_to_csv(const std::vector<TrialRecord>& records, Scenario scenario) {
    std::ostringstream out;
    out << (scenario == Scenario::Square ? "round_index,x,y,z,a,b,c,won"
                                         : "round_index,edge,a,b,c,d,won")
        << '\n';
    for (const TrialRecord& rec : records) {
        out << rec.round_index;
        for (int v : rec.inputs) out << ',' << v;
        for (int v : rec.outcomes) out << ',' << v;
        out << ',' << (rec.won ? 1 : 0) << '\n';
    }
    return out.str();
}

}  // namespace kscert
