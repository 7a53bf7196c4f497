#include <catch2/catch_amalgamated.hpp>

#include "kscert/oracle.hpp"

using namespace kscert;

namespace {

ValueAssignment all_plus(const MagicSquare& sq) {
    ValueAssignment v;
    for (const Observable* o : sq.all_observables()) v.values[o->label] = +1;
    return v;
}

double assignment_delta(const ValueAssignment& v, const MagicSquare& sq) {
    double d = 0.0;
    for (const auto& r : sq.rows) d += context_value(v, r);
    for (const auto& l : sq.columns) d -= context_value(v, l);
    return d;
}

double assignment_beta(const ValueAssignment& v, const MagicStar& star) {
    double b = -context_value(v, star.edges[0]);
    for (std::size_t j = 1; j < 5; ++j) b += context_value(v, star.edges[j]);
    return b;
}

}  // namespace

TEST_CASE("context value is the product of assigned values", "[oracle]") {
    const MagicSquare sq = magic_square();
    ValueAssignment v = all_plus(sq);
    REQUIRE(context_value(v, sq.rows[0]) == +1);
    v.values["B1"] = -1;
    REQUIRE(context_value(v, sq.rows[0]) == -1);

    ValueAssignment empty;
    REQUIRE_THROWS_AS(context_value(empty, sq.rows[0]), std::invalid_argument);
}

TEST_CASE("product of all six context values is +1 for every assignment", "[oracle][property]") {
    const MagicSquare sq = magic_square();
    std::vector<std::string> labels;
    for (const Observable* o : sq.all_observables()) labels.push_back(o->label);
    for (std::size_t bits = 0; bits < 512; ++bits) {
        ValueAssignment v;
        for (std::size_t i = 0; i < labels.size(); ++i)
            v.values[labels[i]] = (bits >> i) & 1 ? -1 : +1;
        int prod = 1;
        for (const MeasurementContext* ctx : sq.all_contexts()) prod *= context_value(v, *ctx);
        REQUIRE(prod == +1);  // each label appears in exactly two contexts
    }
}

TEST_CASE("exhaustive square bound is 4 over 512 assignments", "[oracle]") {
    const OracleResult res = max_delta_noncontextual();
    REQUIRE(res.max_value == 4.0);
    REQUIRE(res.assignments_visited == 512);
    REQUIRE(res.witness.values.size() == 9);
    REQUIRE(assignment_delta(res.witness, magic_square()) == 4.0);
}

TEST_CASE("no assignment reaches the quantum square value", "[oracle]") {
    const OracleResult res = max_delta_noncontextual();
    REQUIRE(res.max_value < 6.0);
}

TEST_CASE("exhaustive star bound is 3 over 1024 assignments", "[oracle]") {
    const OracleResult res = max_beta_noncontextual();
    REQUIRE(res.max_value == 3.0);
    REQUIRE(res.assignments_visited == 1024);
    REQUIRE(res.witness.values.size() == 10);
    REQUIRE(assignment_beta(res.witness, magic_star()) == 3.0);
    REQUIRE(res.max_value < 5.0);
}

TEST_CASE("max win over assignments is exactly five of six", "[oracle]") {
    const MagicSquare sq = magic_square();
    const WinOracleResult res = max_win_noncontextual(sq);
    REQUIRE(res.best_satisfied == 5);
    REQUIRE(res.condition_count == 6);
    REQUIRE(satisfied_conditions(res.witness, sq) == 5);
    // Deterministic win identity: 2*(6*maxwin) - 6 equals the delta bound.
    REQUIRE(2 * res.best_satisfied - 6 == 4);
    REQUIRE(res.max_win() == Catch::Approx(5.0 / 6.0).margin(1e-15));
}

TEST_CASE("no assignment satisfies all six square conditions", "[oracle][property]") {
    const MagicSquare sq = magic_square();
    std::vector<std::string> labels;
    for (const Observable* o : sq.all_observables()) labels.push_back(o->label);
    bool five_reached = false;
    for (std::size_t bits = 0; bits < 512; ++bits) {
        ValueAssignment v;
        for (std::size_t i = 0; i < labels.size(); ++i)
            v.values[labels[i]] = (bits >> i) & 1 ? -1 : +1;
        const int satisfied = satisfied_conditions(v, sq);
        REQUIRE(satisfied <= 5);
        five_reached = five_reached || satisfied == 5;
    }
    REQUIRE(five_reached);
}

TEST_CASE("no assignment satisfies all five star edges", "[oracle][property]") {
    const MagicStar star = magic_star();
    std::vector<std::string> labels;
    for (const Observable& o : star.observables) labels.push_back(o.label);
    bool four_reached = false;
    for (std::size_t bits = 0; bits < 1024; ++bits) {
        ValueAssignment v;
        for (std::size_t i = 0; i < labels.size(); ++i)
            v.values[labels[i]] = (bits >> i) & 1 ? -1 : +1;
        const int satisfied = satisfied_edge_conditions(v, star);
        REQUIRE(satisfied <= 4);
        four_reached = four_reached || satisfied == 4;
    }
    REQUIRE(four_reached);
}

TEST_CASE("oracle results are deterministic", "[oracle]") {
    const OracleResult a = max_delta_noncontextual();
    const OracleResult b = max_delta_noncontextual();
    REQUIRE(a.witness.values == b.witness.values);
}
