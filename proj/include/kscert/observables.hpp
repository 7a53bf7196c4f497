#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kscert/complex_matrix.hpp"

namespace kscert {

enum class PauliAxis { X, Y, Z, Id };

inline char axis_char(PauliAxis a) {
    switch (a) {
        case PauliAxis::X: return 'x';
        case PauliAxis::Y: return 'y';
        case PauliAxis::Z: return 'z';
        case PauliAxis::Id: return '1';
    }
    throw std::invalid_argument("axis_char: unknown axis");
}

inline ComplexMatrix pauli(PauliAxis axis) {
    const Complex i(0.0, 1.0);
    switch (axis) {
        case PauliAxis::X: return ComplexMatrix::from_rows({{0, 1}, {1, 0}});
        case PauliAxis::Y: return ComplexMatrix::from_rows({{0, -i}, {i, 0}});
        case PauliAxis::Z: return ComplexMatrix::from_rows({{1, 0}, {0, -1}});
        case PauliAxis::Id: return ComplexMatrix::identity(2);
    }
    throw std::invalid_argument("pauli: unknown axis");
}

// A labeled dichotomic (+1/-1) observable: a Hermitian involution built as a
// tensor product of single-qubit Paulis, one factor per qubit slot.
struct Observable {
    std::string label;
    std::vector<PauliAxis> factors;
    ComplexMatrix matrix;

    std::string factor_string() const {
        std::string s;
        for (PauliAxis a : factors) s.push_back(axis_char(a));
        return s;
    }
};

inline Observable make_observable(std::string label, std::vector<PauliAxis> factors) {
    if (factors.empty()) throw std::invalid_argument("make_observable: no factors");
    ComplexMatrix m = pauli(factors[0]);
    for (std::size_t i = 1; i < factors.size(); ++i) m = tensor(m, pauli(factors[i]));
    return Observable{std::move(label), std::move(factors), std::move(m)};
}

// Spectral projector onto the (-1)^outcome eigenspace: (I + (-1)^outcome M)/2.
// Outcome bit 0 <-> eigenvalue +1.
inline ComplexMatrix projector(const Observable& o, int outcome) {
    if (outcome != 0 && outcome != 1)
        throw std::invalid_argument("projector: outcome must be 0 or 1");
    const double sign = outcome == 0 ? 1.0 : -1.0;
    return 0.5 * (ComplexMatrix::identity(o.matrix.dim()) + sign * o.matrix);
}

// An ordered list of mutually commuting observables whose ordered matrix
// product is expected_product_sign * I. Member order is the sequential
// measurement order used downstream.
struct MeasurementContext {
    std::string label;
    std::vector<Observable> members;
    int expected_product_sign;  // +1 or -1
};

inline ComplexMatrix context_product(const MeasurementContext& ctx) {
    ComplexMatrix p = ctx.members.front().matrix;
    for (std::size_t i = 1; i < ctx.members.size(); ++i) p = mul(p, ctx.members[i].matrix);
    return p;
}

inline bool observable_is_valid(const Observable& o, double tol = kDefaultTol) {
    const auto& m = o.matrix;
    if (!is_hermitian(m, tol)) return false;
    if (!approx_eq(mul(m, m), ComplexMatrix::identity(m.dim()), tol)) return false;
    ComplexMatrix t = pauli(o.factors.at(0));
    for (std::size_t i = 1; i < o.factors.size(); ++i) t = tensor(t, pauli(o.factors[i]));
    return max_abs_diff(t, m) == 0.0;
}

inline bool context_is_valid(const MeasurementContext& ctx, double tol = kDefaultTol) {
    for (std::size_t i = 0; i < ctx.members.size(); ++i)
        for (std::size_t j = i + 1; j < ctx.members.size(); ++j)
            if (!commutes(ctx.members[i].matrix, ctx.members[j].matrix, tol)) return false;
    const std::size_t dim = ctx.members.front().matrix.dim();
    const ComplexMatrix expected =
        Complex(static_cast<double>(ctx.expected_product_sign), 0.0) * ComplexMatrix::identity(dim);
    return approx_eq(context_product(ctx), expected, tol);
}

// The nine-observable square. Layout (grid[row][col], rows and columns
// 0-indexed here, labels 1-indexed):
//
//     C1 = y(x)z   B1 = z(x)y   A1 = x(x)x
//     A2 = z(x)x   C2 = x(x)z   B2 = y(x)y
//     B3 = x(x)y   A3 = y(x)x   C3 = z(x)z
//
// Each row's ordered product is +I4, each column's is -I4. Row contexts
// R1..R3 run left to right, column contexts L1..L3 top to bottom.
struct MagicSquare {
    std::array<std::array<Observable, 3>, 3> grid;
    std::array<MeasurementContext, 3> rows;     // R1, R2, R3 (+1)
    std::array<MeasurementContext, 3> columns;  // L1, L2, L3 (-1)

    // Observable selectors by game input, 1-indexed.
    const Observable& a(int x) const { return pick('A', x); }
    const Observable& b(int y) const { return pick('B', y); }
    const Observable& c(int z) const { return pick('C', z); }

    std::vector<const MeasurementContext*> all_contexts() const {
        std::vector<const MeasurementContext*> out;
        for (const auto& r : rows) out.push_back(&r);
        for (const auto& l : columns) out.push_back(&l);
        return out;
    }

    std::vector<const Observable*> all_observables() const {
        std::vector<const Observable*> out;
        for (const auto& row : grid)
            for (const auto& o : row) out.push_back(&o);
        return out;
    }

private:
    const Observable& pick(char family, int idx) const {
        if (idx < 1 || idx > 3)
            throw std::invalid_argument("MagicSquare: observable index must be in {1,2,3}");
        const std::string want = std::string(1, family) + std::to_string(idx);
        for (const auto& row : grid)
            for (const auto& o : row)
                if (o.label == want) return o;
        throw std::logic_error("MagicSquare: label not found: " + want);
    }
};

inline MagicSquare magic_square() {
    using P = PauliAxis;
    MagicSquare sq{
        {{
            {{make_observable("C1", {P::Y, P::Z}), make_observable("B1", {P::Z, P::Y}),
              make_observable("A1", {P::X, P::X})}},
            {{make_observable("A2", {P::Z, P::X}), make_observable("C2", {P::X, P::Z}),
              make_observable("B2", {P::Y, P::Y})}},
            {{make_observable("B3", {P::X, P::Y}), make_observable("A3", {P::Y, P::X}),
              make_observable("C3", {P::Z, P::Z})}},
        }},
        {},
        {}};

    for (int i = 0; i < 3; ++i) {
        sq.rows[i] = MeasurementContext{"R" + std::to_string(i + 1),
                                        {sq.grid[i][0], sq.grid[i][1], sq.grid[i][2]},
                                        +1};
        sq.columns[i] = MeasurementContext{"L" + std::to_string(i + 1),
                                           {sq.grid[0][i], sq.grid[1][i], sq.grid[2][i]},
                                           -1};
    }

    for (const auto& row : sq.grid)
        for (const auto& o : row)
            if (!observable_is_valid(o, 1e-12))
                throw std::logic_error("magic_square: observable invariant violated: " + o.label);
    for (const auto* ctx : sq.all_contexts())
        if (!context_is_valid(*ctx, 1e-12))
            throw std::logic_error("magic_square: context invariant violated: " + ctx->label);
    return sq;
}

// The ten-observable pentagram on three qubits: six single-qubit operators
// and four triple products, arranged on five edges of four mutually
// commuting observables each. Every observable sits on exactly two edges;
// E1's ordered product is -I8, the other four are +I8.
struct MagicStar {
    std::array<Observable, 10> observables;
    std::array<MeasurementContext, 5> edges;  // E1..E5

    const Observable& observable(std::string_view label) const {
        for (const auto& o : observables)
            if (o.label == label) return o;
        throw std::invalid_argument("MagicStar: label not found: " + std::string(label));
    }

    std::vector<std::string> edges_of(std::string_view label) const {
        std::vector<std::string> out;
        for (const auto& e : edges)
            for (const auto& m : e.members)
                if (m.label == label) out.push_back(e.label);
        return out;
    }
};

inline MagicStar magic_star() {
    using P = PauliAxis;
    auto obs = std::array<Observable, 10>{
        make_observable("X1", {P::X, P::Id, P::Id}), make_observable("X2", {P::Id, P::X, P::Id}),
        make_observable("X3", {P::Id, P::Id, P::X}), make_observable("Y1", {P::Y, P::Id, P::Id}),
        make_observable("Y2", {P::Id, P::Y, P::Id}), make_observable("Y3", {P::Id, P::Id, P::Y}),
        make_observable("XXX", {P::X, P::X, P::X}),  make_observable("XYY", {P::X, P::Y, P::Y}),
        make_observable("YXY", {P::Y, P::X, P::Y}),  make_observable("YYX", {P::Y, P::Y, P::X}),
    };

    auto find = [&obs](std::string_view label) -> const Observable& {
        for (const auto& o : obs)
            if (o.label == label) return o;
        throw std::logic_error("magic_star: missing " + std::string(label));
    };

    std::array<MeasurementContext, 5> edges{
        MeasurementContext{"E1", {find("XXX"), find("XYY"), find("YXY"), find("YYX")}, -1},
        MeasurementContext{"E2", {find("X1"), find("X2"), find("X3"), find("XXX")}, +1},
        MeasurementContext{"E3", {find("X1"), find("Y2"), find("Y3"), find("XYY")}, +1},
        MeasurementContext{"E4", {find("Y1"), find("X2"), find("Y3"), find("YXY")}, +1},
        MeasurementContext{"E5", {find("Y1"), find("Y2"), find("X3"), find("YYX")}, +1}};

    MagicStar star{std::move(obs), std::move(edges)};

    for (const auto& o : star.observables)
        if (!observable_is_valid(o, 1e-12))
            throw std::logic_error("magic_star: observable invariant violated: " + o.label);
    for (const auto& e : star.edges)
        if (!context_is_valid(e, 1e-12))
            throw std::logic_error("magic_star: edge invariant violated: " + e.label);
    for (const auto& o : star.observables)
        if (star.edges_of(o.label).size() != 2)
            throw std::logic_error("magic_star: observable not on exactly two edges: " + o.label);
    return star;
}

}  // namespace kscert
