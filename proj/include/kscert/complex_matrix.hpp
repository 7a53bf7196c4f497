#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kscert {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;

// Dense square complex matrix. The only carrier used in this library;
// dimensions in practice are 2, 4 and 8, so everything is plain O(n^3)
// arithmetic on row-major storage. Values are immutable by convention:
// every operation returns a fresh matrix.
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t dim)
        : dim_(dim), entries_(dim * dim, Complex(0.0, 0.0)) {
        if (dim == 0) throw std::invalid_argument("ComplexMatrix: dim must be positive");
    }

    static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = Complex(1.0, 0.0);
        return m;
    }

    // Row-major construction from nested braces; rows must be square.
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
        const std::size_t n = rows.size();
        ComplexMatrix m(n);
        std::size_t r = 0;
        for (const auto& row : rows) {
            if (row.size() != n)
                throw std::invalid_argument("ComplexMatrix::from_rows: ragged rows");
            std::size_t c = 0;
            for (const Complex& v : row) m.at(r, c++) = v;
            ++r;
        }
        return m;
    }

    std::size_t dim() const { return dim_; }

    Complex& at(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
    const Complex& at(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }

    const std::vector<Complex>& entries() const { return entries_; }

private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

namespace detail {
inline void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.dim() != b.dim())
        throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}
}  // namespace detail

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::require_same_dim(a, b, "operator+");
    ComplexMatrix out(a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c) out.at(r, c) = a.at(r, c) + b.at(r, c);
    return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::require_same_dim(a, b, "operator-");
    ComplexMatrix out(a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c) out.at(r, c) = a.at(r, c) - b.at(r, c);
    return out;
}

inline ComplexMatrix operator*(const Complex& s, const ComplexMatrix& a) {
    ComplexMatrix out(a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c) out.at(r, c) = s * a.at(r, c);
    return out;
}

inline ComplexMatrix operator*(double s, const ComplexMatrix& a) { return Complex(s, 0.0) * a; }

// Standard matrix product.
inline ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::require_same_dim(a, b, "mul");
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex ark = a.at(r, k);
            if (ark == Complex(0.0, 0.0)) continue;
            for (std::size_t c = 0; c < n; ++c) out.at(r, c) += ark * b.at(k, c);
        }
    }
    return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return mul(a, b); }

// Kronecker product: out[(i*db+k),(j*db+l)] = a[i,j] * b[k,l].
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t da = a.dim(), db = b.dim();
    ComplexMatrix out(da * db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = 0; l < db; ++l)
                    out.at(i * db + k, j * db + l) = a.at(i, j) * b.at(k, l);
    return out;
}

inline Complex trace(const ComplexMatrix& a) {
    Complex t(0.0, 0.0);
    for (std::size_t i = 0; i < a.dim(); ++i) t += a.at(i, i);
    return t;
}

// Conjugate transpose.
inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix out(a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c) out.at(r, c) = std::conj(a.at(c, r));
    return out;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    detail::require_same_dim(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            m = std::max(m, std::abs(a.at(r, c) - b.at(r, c)));
    return m;
}

// True iff max entrywise |a-b| <= tol. Throws on dimension mismatch.
inline bool approx_eq(const ComplexMatrix& a, const ComplexMatrix& b, double tol = kDefaultTol) {
    return max_abs_diff(a, b) <= tol;
}

inline bool is_hermitian(const ComplexMatrix& a, double tol = kDefaultTol) {
    return approx_eq(a, adjoint(a), tol);
}

inline bool commutes(const ComplexMatrix& a, const ComplexMatrix& b, double tol = kDefaultTol) {
    return approx_eq(mul(a, b), mul(b, a), tol);
}

// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
// Adequate for dim <= 8; returns the diagonal after off-diagonal mass has
// been annihilated below ~1e-14 of scale, sorted ascending.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double tol = kDefaultTol) {
    if (!is_hermitian(a, tol))
        throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian within tol");
    const std::size_t n = a.dim();
    ComplexMatrix m = a;

    auto off_norm = [&m, n]() {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (r != c) s += std::norm(m.at(r, c));
        return std::sqrt(s);
    };

    double scale = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) scale = std::max(scale, std::abs(m.at(r, c)));
    if (scale == 0.0) scale = 1.0;

    for (int sweep = 0; sweep < 64 && off_norm() > 1e-14 * scale; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = m.at(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                const Complex phase = apq / r;
                const double app = m.at(p, p).real();
                const double aqq = m.at(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double sg = tau >= 0.0 ? 1.0 : -1.0;
                const double t = sg / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                ComplexMatrix g = ComplexMatrix::identity(n);
                g.at(p, p) = Complex(c, 0.0);
                g.at(q, q) = Complex(c, 0.0);
                g.at(p, q) = s * phase;
                g.at(q, p) = -s * std::conj(phase);
                m = mul(adjoint(g), mul(m, g));
            }
        }
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = m.at(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

inline double min_eigenvalue_hermitian(const ComplexMatrix& a, double tol = kDefaultTol) {
    return hermitian_eigenvalues(a, tol).front();
}

// Positive semidefinite within tolerance: Hermitian and min eigenvalue >= -tol.
inline bool is_psd(const ComplexMatrix& a, double tol = kDefaultTol) {
    if (!is_hermitian(a, tol)) return false;
    return min_eigenvalue_hermitian(a, tol) >= -tol;
}

}  // namespace kscert
