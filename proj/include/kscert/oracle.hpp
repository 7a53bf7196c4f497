#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kscert/observables.hpp"

namespace kscert {

// A deterministic value assignment: one +1/-1 value per observable label,
// independent of the context the observable is measured in. This is the
// classical model class the inequalities bound; the enumeration below never
// touches any matrix, only labels and context membership.
struct ValueAssignment {
    std::map<std::string, int> values;

    int value_of(const std::string& label) const {
        auto it = values.find(label);
        if (it == values.end())
            throw std::invalid_argument("ValueAssignment: no value for label " + label);
        return it->second;
    }
};

// Product of assigned values over a context's members.
inline int context_value(const ValueAssignment& v, const MeasurementContext& ctx) {
    int prod = 1;
    for (const auto& m : ctx.members) prod *= v.value_of(m.label);
    return prod;
}

namespace detail {
// Assignments enumerated over the label list in table order; bit i of the
// enumeration index flips label i. Witnesses therefore come out in a fixed,
// reproducible order.
inline ValueAssignment assignment_from_bits(const std::vector<std::string>& labels,
                                            std::size_t bits) {
    ValueAssignment v;
    for (std::size_t i = 0; i < labels.size(); ++i)
        v.values[labels[i]] = (bits >> i) & 1 ? -1 : +1;
    return v;
}

inline std::vector<std::string> square_labels(const MagicSquare& sq) {
    std::vector<std::string> labels;
    for (const auto* o : sq.all_observables()) labels.push_back(o->label);
    return labels;
}

inline std::vector<std::string> star_labels(const MagicStar& star) {
    std::vector<std::string> labels;
    for (const auto& o : star.observables) labels.push_back(o.label);
    return labels;
}
}  // namespace detail

struct OracleResult {
    double max_value;
    ValueAssignment witness;
    std::size_t assignments_visited;
};

// Exhaustive maximum of <R1>+<R2>+<R3>-<L1>-<L2>-<L3> over all 2^9
// deterministic assignments. Convex mixtures of assignments cannot beat the
// deterministic maximum (the objective is linear in the assignment), so this
// is the full noncontextual-model bound.
inline OracleResult max_delta_noncontextual(const MagicSquare& sq) {
    const auto labels = detail::square_labels(sq);
    OracleResult best{-1e300, {}, 0};
    for (std::size_t bits = 0; bits < (std::size_t{1} << labels.size()); ++bits) {
        const ValueAssignment v = detail::assignment_from_bits(labels, bits);
        double delta = 0.0;
        for (const auto& r : sq.rows) delta += context_value(v, r);
        for (const auto& l : sq.columns) delta -= context_value(v, l);
        if (delta > best.max_value) {
            best.max_value = delta;
            best.witness = v;
        }
        ++best.assignments_visited;
    }
    return best;
}

inline OracleResult max_delta_noncontextual() { return max_delta_noncontextual(magic_square()); }

// Exhaustive maximum of -<E1>+<E2>+<E3>+<E4>+<E5> over all 2^10 assignments.
inline OracleResult max_beta_noncontextual(const MagicStar& star) {
    const auto labels = detail::star_labels(star);
    OracleResult best{-1e300, {}, 0};
    for (std::size_t bits = 0; bits < (std::size_t{1} << labels.size()); ++bits) {
        const ValueAssignment v = detail::assignment_from_bits(labels, bits);
        double beta = -context_value(v, star.edges[0]);
        for (std::size_t j = 1; j < star.edges.size(); ++j)
            beta += context_value(v, star.edges[j]);
        if (beta > best.max_value) {
            best.max_value = beta;
            best.witness = v;
        }
        ++best.assignments_visited;
    }
    return best;
}

inline OracleResult max_beta_noncontextual() { return max_beta_noncontextual(magic_star()); }

// A deterministic assignment satisfies a row round when its row product is
// +1 and a cyclic round when the corresponding column product is -1 (outcome
// parity equals the sign of the value product). The game win rate is then
// (#satisfied conditions)/6, reported as an exact rational.
struct WinOracleResult {
    int best_satisfied;
    int condition_count;
    ValueAssignment witness;
    std::size_t assignments_visited;

    double max_win() const {
        return static_cast<double>(best_satisfied) / static_cast<double>(condition_count);
    }
};

inline int satisfied_conditions(const ValueAssignment& v, const MagicSquare& sq) {
    int satisfied = 0;
    for (const auto& r : sq.rows)
        if (context_value(v, r) == +1) ++satisfied;
    for (const auto& l : sq.columns)
        if (context_value(v, l) == -1) ++satisfied;
    return satisfied;
}

inline WinOracleResult max_win_noncontextual(const MagicSquare& sq) {
    const auto labels = detail::square_labels(sq);
    WinOracleResult best{-1, 6, {}, 0};
    for (std::size_t bits = 0; bits < (std::size_t{1} << labels.size()); ++bits) {
        const ValueAssignment v = detail::assignment_from_bits(labels, bits);
        const int satisfied = satisfied_conditions(v, sq);
        if (satisfied > best.best_satisfied) {
            best.best_satisfied = satisfied;
            best.witness = v;
        }
        ++best.assignments_visited;
    }
    return best;
}

inline WinOracleResult max_win_noncontextual() { return max_win_noncontextual(magic_square()); }

// Star analog: edge condition is value product -1 on E1 and +1 elsewhere.
inline int satisfied_edge_conditions(const ValueAssignment& v, const MagicStar& star) {
    int satisfied = 0;
    for (const auto& e : star.edges)
        if (context_value(v, e) == e.expected_product_sign) ++satisfied;
    return satisfied;
}

}  // namespace kscert
