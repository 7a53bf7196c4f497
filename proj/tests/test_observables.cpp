#include <catch2/catch_amalgamated.hpp>

#include "kscert/observables.hpp"
#include "test_support.hpp"

using namespace kscert;

TEST_CASE("pauli matrices have their textbook entries", "[observables]") {
    const Complex i(0.0, 1.0);
    REQUIRE(max_abs_diff(pauli(PauliAxis::Z), ComplexMatrix::from_rows({{1, 0}, {0, -1}})) == 0.0);
    REQUIRE(max_abs_diff(pauli(PauliAxis::X), ComplexMatrix::from_rows({{0, 1}, {1, 0}})) == 0.0);
    REQUIRE(max_abs_diff(pauli(PauliAxis::Y), ComplexMatrix::from_rows({{0, -i}, {i, 0}})) == 0.0);
    REQUIRE(max_abs_diff(pauli(PauliAxis::Id), ComplexMatrix::identity(2)) == 0.0);
}

TEST_CASE("square grid layout and factor strings", "[observables]") {
    const MagicSquare sq = magic_square();
    const char* expected[3][3][2] = {
        {{"C1", "yz"}, {"B1", "zy"}, {"A1", "xx"}},
        {{"A2", "zx"}, {"C2", "xz"}, {"B2", "yy"}},
        {{"B3", "xy"}, {"A3", "yx"}, {"C3", "zz"}},
    };
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            REQUIRE(sq.grid[r][c].label == expected[r][c][0]);
            REQUIRE(sq.grid[r][c].factor_string() == expected[r][c][1]);
        }
}

TEST_CASE("grid entries match hand-expanded Kronecker products", "[observables]") {
    const MagicSquare sq = magic_square();
    REQUIRE(max_abs_diff(sq.grid[0][0].matrix, test_support::frozen_c1()) == 0.0);
    REQUIRE(max_abs_diff(sq.grid[0][1].matrix, test_support::frozen_b1()) == 0.0);
    REQUIRE(max_abs_diff(sq.grid[0][2].matrix, test_support::frozen_a1()) == 0.0);
    REQUIRE(max_abs_diff(sq.grid[1][2].matrix, test_support::frozen_b2()) == 0.0);
}

TEST_CASE("row product is +I and column product is -I", "[observables]") {
    const MagicSquare sq = magic_square();
    const ComplexMatrix id4 = ComplexMatrix::identity(4);
    for (const auto& r : sq.rows) REQUIRE(approx_eq(context_product(r), id4, 1e-12));
    for (const auto& l : sq.columns)
        REQUIRE(approx_eq(context_product(l), Complex(-1.0, 0.0) * id4, 1e-12));

    // Same two products from the frozen hand-expanded matrices, so the check
    // does not lean on the library's tensor construction.
    const ComplexMatrix r1 =
        mul(mul(test_support::frozen_c1(), test_support::frozen_b1()), test_support::frozen_a1());
    REQUIRE(approx_eq(r1, id4, 1e-12));
    const ComplexMatrix l1 =
        mul(mul(test_support::frozen_c1(), test_support::frozen_a2()), test_support::frozen_b3());
    REQUIRE(approx_eq(l1, Complex(-1.0, 0.0) * id4, 1e-12));
}

TEST_CASE("square observables are Hermitian traceless involutions", "[observables]") {
    const MagicSquare sq = magic_square();
    for (const Observable* o : sq.all_observables()) {
        REQUIRE(is_hermitian(o->matrix, 1e-12));
        REQUIRE(std::abs(trace(o->matrix)) <= 1e-12);
        REQUIRE(approx_eq(mul(o->matrix, o->matrix), ComplexMatrix::identity(4), 1e-12));
        REQUIRE(observable_is_valid(*o, 1e-12));
    }
}

TEST_CASE("context members commute pairwise", "[observables]") {
    const MagicSquare sq = magic_square();
    for (const MeasurementContext* ctx : sq.all_contexts()) {
        REQUIRE(context_is_valid(*ctx, 1e-12));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j)
                REQUIRE(max_abs_diff(mul(ctx->members[i].matrix, ctx->members[j].matrix),
                                     mul(ctx->members[j].matrix, ctx->members[i].matrix)) == 0.0);
    }
}

TEST_CASE("context member order follows the grid layout", "[observables]") {
    const MagicSquare sq = magic_square();
    REQUIRE(sq.rows[0].members[0].label == "C1");
    REQUIRE(sq.rows[0].members[1].label == "B1");
    REQUIRE(sq.rows[0].members[2].label == "A1");
    REQUIRE(sq.columns[0].members[0].label == "C1");
    REQUIRE(sq.columns[0].members[1].label == "A2");
    REQUIRE(sq.columns[0].members[2].label == "B3");
}

TEST_CASE("star edges multiply to the expected signed identity", "[observables]") {
    const MagicStar star = magic_star();
    const ComplexMatrix id8 = ComplexMatrix::identity(8);
    REQUIRE(star.edges[0].label == "E1");
    REQUIRE(approx_eq(context_product(star.edges[0]), Complex(-1.0, 0.0) * id8, 1e-12));
    for (std::size_t j = 1; j < 5; ++j)
        REQUIRE(approx_eq(context_product(star.edges[j]), id8, 1e-12));
}

TEST_CASE("every star observable sits on exactly two edges", "[observables]") {
    const MagicStar star = magic_star();
    REQUIRE(star.observables.size() == 10);
    for (const Observable& o : star.observables) REQUIRE(star.edges_of(o.label).size() == 2);
}

TEST_CASE("star edge members mutually commute and are involutions", "[observables]") {
    const MagicStar star = magic_star();
    for (const MeasurementContext& e : star.edges) {
        REQUIRE(e.members.size() == 4);
        REQUIRE(context_is_valid(e, 1e-12));
    }
    for (const Observable& o : star.observables) {
        REQUIRE(observable_is_valid(o, 1e-12));
        REQUIRE(std::abs(trace(o.matrix)) <= 1e-12);
    }
}

TEST_CASE("star compound observables factor into the single-qubit ones", "[observables]") {
    const MagicStar star = magic_star();
    auto prod3 = [&star](const char* a, const char* b, const char* c) {
        return mul(mul(star.observable(a).matrix, star.observable(b).matrix),
                   star.observable(c).matrix);
    };
    REQUIRE(max_abs_diff(prod3("X1", "X2", "X3"), star.observable("XXX").matrix) == 0.0);
    REQUIRE(max_abs_diff(prod3("X1", "Y2", "Y3"), star.observable("XYY").matrix) == 0.0);
    REQUIRE(max_abs_diff(prod3("Y1", "X2", "Y3"), star.observable("YXY").matrix) == 0.0);
    REQUIRE(max_abs_diff(prod3("Y1", "Y2", "X3"), star.observable("YYX").matrix) == 0.0);
}

TEST_CASE("projector selects the signed eigenspace", "[observables]") {
    const Observable z = make_observable("Z", {PauliAxis::Z});
    REQUIRE(max_abs_diff(projector(z, 0), ComplexMatrix::from_rows({{1, 0}, {0, 0}})) == 0.0);
    REQUIRE(max_abs_diff(projector(z, 1), ComplexMatrix::from_rows({{0, 0}, {0, 1}})) == 0.0);

    const MagicSquare sq = magic_square();
    const Observable& a1 = sq.a(1);
    REQUIRE(approx_eq(projector(a1, 0) + projector(a1, 1), ComplexMatrix::identity(4), 1e-12));
    REQUIRE(max_abs_diff(mul(projector(a1, 0), projector(a1, 1)), ComplexMatrix::zero(4)) <=
            1e-12);
    for (int outcome : {0, 1}) {
        const ComplexMatrix p = projector(a1, outcome);
        REQUIRE(is_hermitian(p, 1e-12));
        REQUIRE(approx_eq(mul(p, p), p, 1e-12));
    }
    REQUIRE_THROWS_AS(projector(z, 2), std::invalid_argument);
}

TEST_CASE("make_observable rejects an empty factor list", "[observables]") {
    REQUIRE_THROWS_AS(make_observable("bad", {}), std::invalid_argument);
}

TEST_CASE("square selectors map inputs to the labeled observables", "[observables]") {
    const MagicSquare sq = magic_square();
    REQUIRE(sq.a(1).factor_string() == "xx");
    REQUIRE(sq.a(2).factor_string() == "zx");
    REQUIRE(sq.a(3).factor_string() == "yx");
    REQUIRE(sq.b(2).factor_string() == "yy");
    REQUIRE(sq.c(3).factor_string() == "zz");
    REQUIRE_THROWS_AS(sq.a(0), std::invalid_argument);
    REQUIRE_THROWS_AS(sq.c(4), std::invalid_argument);
}
