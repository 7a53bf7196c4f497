#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kscert/complex_matrix.hpp"
#include "kscert/observables.hpp"
#include "kscert/rng.hpp"

namespace kscert {

// Thrown when a Lueders branch has (numerically) no weight; callers must not
// see an unnormalized state come back silently.
class ZeroProbabilityBranch : public std::runtime_error {
public:
    explicit ZeroProbabilityBranch(const std::string& what) : std::runtime_error(what) {}
};

// Trace-one positive-semidefinite Hermitian matrix. `from_matrix` validates
// all three invariants; `trusted` skips validation and is reserved for
// outputs that hold the invariants by construction (Lueders collapse of an
// already valid state, normalized psi psi^dagger sums).
class DensityState {
public:
    static DensityState from_matrix(ComplexMatrix m, double tol = kDefaultTol) {
        if (!is_hermitian(m, tol))
            throw std::invalid_argument("DensityState: matrix is not Hermitian within tol");
        if (std::abs(trace(m) - Complex(1.0, 0.0)) > tol)
            throw std::invalid_argument("DensityState: trace is not 1 within tol");
        if (min_eigenvalue_hermitian(m, tol) < -tol)
            throw std::invalid_argument("DensityState: matrix is not positive semidefinite");
        return DensityState(std::move(m));
    }

    static DensityState trusted(ComplexMatrix m) { return DensityState(std::move(m)); }

    // I / 2^n for n qubits; the square scenario uses n=2, the star n=3.
    static DensityState maximally_mixed(int n_qubits) {
        if (n_qubits != 2 && n_qubits != 3)
            throw std::invalid_argument("maximally_mixed: n_qubits must be 2 or 3");
        const std::size_t dim = std::size_t{1} << n_qubits;
        return DensityState((1.0 / static_cast<double>(dim)) * ComplexMatrix::identity(dim));
    }

    const ComplexMatrix& matrix() const { return matrix_; }
    std::size_t dim() const { return matrix_.dim(); }

private:
    explicit DensityState(ComplexMatrix m) : matrix_(std::move(m)) {}
    ComplexMatrix matrix_;
};

namespace detail {
inline double real_trace_checked(const ComplexMatrix& m, double tol, const char* who) {
    const Complex t = trace(m);
    if (std::abs(t.imag()) > tol)
        throw std::runtime_error(std::string(who) + ": trace has imaginary part " +
                                 std::to_string(t.imag()) + " beyond tol");
    return t.real();
}
}  // namespace detail

// Tr[rho M] for Hermitian M, with an imaginary-part consistency check.
inline double expectation(const DensityState& rho, const ComplexMatrix& m,
                          double tol = kDefaultTol) {
    return detail::real_trace_checked(mul(rho.matrix(), m), tol, "expectation");
}

// Tr[rho * (ordered product of ctx members)].
inline double expectation_product(const DensityState& rho, const MeasurementContext& ctx,
                                  double tol = kDefaultTol) {
    return expectation(rho, context_product(ctx), tol);
}

// One step of measurement on (observable, outcome bit).
struct MeasurementStep {
    Observable observable;
    int outcome;
};

// Joint probability of an ordered sequence of projective outcomes:
// all projectors but the last sandwich the state, the last enters by trace:
//   Tr[P_{k-1} ... P_1 rho P_1 ... P_{k-1} P_k].
// For mutually commuting sequences this equals the fully sandwiched form;
// that equivalence is a tested property, not an assumption here.
inline double sequential_probability(const DensityState& rho,
                                     const std::vector<MeasurementStep>& seq,
                                     double tol = kDefaultTol) {
    if (seq.empty()) throw std::invalid_argument("sequential_probability: empty sequence");
    ComplexMatrix m = rho.matrix();
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        if (seq[i].observable.matrix.dim() != rho.dim())
            throw std::invalid_argument("sequential_probability: dimension mismatch at step " +
                                        std::to_string(i));
        const ComplexMatrix p = projector(seq[i].observable, seq[i].outcome);
        m = mul(p, mul(m, p));
    }
    const auto& last = seq.back();
    if (last.observable.matrix.dim() != rho.dim())
        throw std::invalid_argument("sequential_probability: dimension mismatch at last step");
    return detail::real_trace_checked(mul(m, projector(last.observable, last.outcome)), tol,
                                      "sequential_probability");
}

// Convenience: probability of an outcome tuple over a context's members in
// their stored (sequential) order.
inline double sequential_probability(const DensityState& rho, const MeasurementContext& ctx,
                                     const std::vector<int>& outcomes, double tol = kDefaultTol) {
    if (outcomes.size() != ctx.members.size())
        throw std::invalid_argument("sequential_probability: outcome count mismatch");
    std::vector<MeasurementStep> seq;
    seq.reserve(ctx.members.size());
    for (std::size_t i = 0; i < ctx.members.size(); ++i)
        seq.push_back({ctx.members[i], outcomes[i]});
    return sequential_probability(rho, seq, tol);
}

struct MeasurementBranch {
    double probability;
    DensityState state;
};

// Lueders rule: p = Tr[P rho P], state -> P rho P / p. A branch with
// p <= branch_tol raises ZeroProbabilityBranch instead of returning an
// unnormalized state.
inline MeasurementBranch post_measurement_state(const DensityState& rho, const Observable& o,
                                                int outcome, double tol = kDefaultTol,
                                                double branch_tol = kDefaultTol) {
    if (o.matrix.dim() != rho.dim())
        throw std::invalid_argument("post_measurement_state: dimension mismatch");
    const ComplexMatrix p = projector(o, outcome);
    ComplexMatrix collapsed = mul(p, mul(rho.matrix(), p));
    const double prob = detail::real_trace_checked(collapsed, tol, "post_measurement_state");
    if (prob <= branch_tol)
        throw ZeroProbabilityBranch("post_measurement_state: branch " + o.label + "=" +
                                    std::to_string(outcome) + " has probability " +
                                    std::to_string(prob));
    return MeasurementBranch{prob, DensityState::trusted((1.0 / prob) * collapsed)};
}

// Joint probability of a commuting triple by the moment expansion:
//   P(a,b,c) = 1/8 [ 1 + (-1)^a <A> + (-1)^b <B> + (-1)^c <C>
//                    + (-1)^(a^b) <AB> + (-1)^(b^c) <BC> + (-1)^(a^c) <AC>
//                    + (-1)^(a^b^c) <ABC> ].
inline double moment_probability(const DensityState& rho, const Observable& a_obs,
                                 const Observable& b_obs, const Observable& c_obs, int a, int b,
                                 int c, double tol = kDefaultTol) {
    const ComplexMatrix& am = a_obs.matrix;
    const ComplexMatrix& bm = b_obs.matrix;
    const ComplexMatrix& cm = c_obs.matrix;
    if (!commutes(am, bm, tol) || !commutes(bm, cm, tol) || !commutes(am, cm, tol))
        throw std::invalid_argument("moment_probability: observables do not mutually commute");

    auto sign = [](int bit) { return bit % 2 == 0 ? 1.0 : -1.0; };
    const double ea = expectation(rho, am, tol);
    const double eb = expectation(rho, bm, tol);
    const double ec = expectation(rho, cm, tol);
    const double eab = expectation(rho, mul(am, bm), tol);
    const double ebc = expectation(rho, mul(bm, cm), tol);
    const double eac = expectation(rho, mul(am, cm), tol);
    const double eabc = expectation(rho, mul(am, mul(bm, cm)), tol);

    return (1.0 / 8.0) *
           (1.0 + sign(a) * ea + sign(b) * eb + sign(c) * ec + sign(a ^ b) * eab +
            sign(b ^ c) * ebc + sign(a ^ c) * eac + sign(a ^ b ^ c) * eabc);
}

// Full outcome distribution of a context under sequential measurement.
struct OutcomeDistribution {
    std::string context_label;
    // Outcome bit-tuples in lexicographic order with their probabilities.
    std::vector<std::pair<std::vector<int>, double>> probs;
};

inline OutcomeDistribution outcome_distribution(const DensityState& rho,
                                                const MeasurementContext& ctx,
                                                double tol = kDefaultTol) {
    const std::size_t k = ctx.members.size();
    OutcomeDistribution dist{ctx.label, {}};
    dist.probs.reserve(std::size_t{1} << k);
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        std::vector<int> outcomes(k);
        for (std::size_t i = 0; i < k; ++i) outcomes[i] = (mask >> (k - 1 - i)) & 1;
        const double p = sequential_probability(rho, ctx, outcomes, tol);
        dist.probs.emplace_back(std::move(outcomes), p);
    }
    return dist;
}

inline bool distribution_is_valid(const OutcomeDistribution& dist, double tol = kDefaultTol) {
    double sum = 0.0;
    for (const auto& [outcomes, p] : dist.probs) {
        if (p < -tol || p > 1.0 + tol) return false;
        sum += p;
    }
    return std::abs(sum - 1.0) <= tol * static_cast<double>(dist.probs.size());
}

// Random density state as a normalized sum of k Gaussian-vector dyads
// psi psi^dagger (k = rank; k = 1 gives a Haar-like pure state).
inline DensityState random_density_state(int n_qubits, int rank, SplitMix64& rng) {
    if (n_qubits != 2 && n_qubits != 3)
        throw std::invalid_argument("random_density_state: n_qubits must be 2 or 3");
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (rank < 1 || static_cast<std::size_t>(rank) > dim)
        throw std::invalid_argument("random_density_state: rank out of range");

    ComplexMatrix m(dim);
    for (int r = 0; r < rank; ++r) {
        std::vector<Complex> psi(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            double re, im;
            rng.next_gaussian_pair(re, im);
            psi[i] = Complex(re, im);
        }
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) m.at(i, j) += psi[i] * std::conj(psi[j]);
    }
    const double tr = trace(m).real();
    return DensityState::trusted((1.0 / tr) * m);
}

// Deterministic bank of test states, ranks cycling 1..dim so the set mixes
// pure and mixed states. State i depends only on (seed, i).
inline std::vector<DensityState> random_density_states(int n_qubits, std::size_t count,
                                                       std::uint64_t seed) {
    const int dim = 1 << n_qubits;
    std::vector<DensityState> states;
    states.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        SplitMix64 rng = SplitMix64::substream(seed, i);
        states.push_back(random_density_state(n_qubits, static_cast<int>(i % dim) + 1, rng));
    }
    return states;
}

// Rank-one state spanned by the joint +1 eigenspace of the given commuting
// observables (product of their outcome-0 projectors, trace-normalized).
inline DensityState common_positive_eigenstate(const std::vector<Observable>& observables,
                                               double tol = kDefaultTol) {
    if (observables.empty())
        throw std::invalid_argument("common_positive_eigenstate: no observables");
    ComplexMatrix p = projector(observables[0], 0);
    for (std::size_t i = 1; i < observables.size(); ++i)
        p = mul(p, projector(observables[i], 0));
    const double tr = detail::real_trace_checked(p, tol, "common_positive_eigenstate");
    if (tr <= tol)
        throw std::invalid_argument(
            "common_positive_eigenstate: joint +1 eigenspace is empty");
    return DensityState::trusted((1.0 / tr) * p);
}

}  // namespace kscert
