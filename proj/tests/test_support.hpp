#pragma once

#include "kscert/complex_matrix.hpp"
#include "kscert/rng.hpp"

namespace test_support {

using kscert::Complex;
using kscert::ComplexMatrix;

// Dense matrix with independent complex-Gaussian entries.
inline ComplexMatrix random_matrix(std::size_t dim, kscert::SplitMix64& rng) {
    ComplexMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            double re, im;
            rng.next_gaussian_pair(re, im);
            m.at(r, c) = Complex(re, im);
        }
    return m;
}

// Hand-expanded Kronecker products of the square's first-row and
// first-column observables, frozen as literal entries so the context
// product checks do not depend on the library's tensor().
inline ComplexMatrix frozen_c1() {  // y (x) z
    const Complex i(0.0, 1.0);
    return ComplexMatrix::from_rows({{0, 0, -i, 0}, {0, 0, 0, i}, {i, 0, 0, 0}, {0, -i, 0, 0}});
}

inline ComplexMatrix frozen_b1() {  // z (x) y
    const Complex i(0.0, 1.0);
    return ComplexMatrix::from_rows({{0, -i, 0, 0}, {i, 0, 0, 0}, {0, 0, 0, i}, {0, 0, -i, 0}});
}

inline ComplexMatrix frozen_a1() {  // x (x) x
    return ComplexMatrix::from_rows({{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}});
}

inline ComplexMatrix frozen_a2() {  // z (x) x
    return ComplexMatrix::from_rows({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, -1, 0}});
}

inline ComplexMatrix frozen_b3() {  // x (x) y
    const Complex i(0.0, 1.0);
    return ComplexMatrix::from_rows({{0, 0, 0, -i}, {0, 0, i, 0}, {0, -i, 0, 0}, {i, 0, 0, 0}});
}

inline ComplexMatrix frozen_b2() {  // y (x) y
    return ComplexMatrix::from_rows({{0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}});
}

}  // namespace test_support
