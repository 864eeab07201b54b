#ifndef ORBITENT_MATCORE_HPP
#define ORBITENT_MATCORE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "orbitent/errors.hpp"
#include "orbitent/random.hpp"
#include "orbitent/spectrum.hpp"

namespace orbitent {

using Complex = std::complex<double>;

inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kPositiveDefiniteEps = 1e-12;

// Dense square complex matrix, row-major. All entries are kept finite.
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {
        if (dim == 0) throw ParameterOutOfRange("matrix dimension must be >= 1");
    }

    ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
        : dim_(dim), a_(std::move(entries)) {
        if (dim == 0) throw ParameterOutOfRange("matrix dimension must be >= 1");
        if (a_.size() != dim * dim) throw DimensionMismatch(a_.size(), dim * dim);
        for (const auto& z : a_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw NonFiniteEntry();
        }
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(const std::vector<double>& d) {
        ComplexMatrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    ComplexMatrix adjoint() const {
        ComplexMatrix r(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        if (o.dim_ != dim_) throw DimensionMismatch(dim_, o.dim_);
        for (std::size_t n = 0; n < a_.size(); ++n) a_[n] += o.a_[n];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        if (o.dim_ != dim_) throw DimensionMismatch(dim_, o.dim_);
        for (std::size_t n = 0; n < a_.size(); ++n) a_[n] -= o.a_[n];
        return *this;
    }

    ComplexMatrix& operator*=(double s) {
        for (auto& z : a_) z *= s;
        return *this;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
        if (x.dim_ != y.dim_) throw DimensionMismatch(x.dim_, y.dim_);
        const std::size_t d = x.dim_;
        ComplexMatrix r(d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t k = 0; k < d; ++k) {
                const Complex xik = x(i, k);
                if (xik == Complex{}) continue;
                for (std::size_t j = 0; j < d; ++j) r(i, j) += xik * y(k, j);
            }
        }
        return r;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : a_) m = std::max(m, std::abs(z));
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : a_) s += std::norm(z);
        return std::sqrt(s);
    }

    Complex trace() const {
        Complex t = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

private:
    std::size_t dim_;
    std::vector<Complex> a_;
};

// Re(Tr(A B)) without forming the product.
inline double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
    Complex t = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) t += a(i, j) * b(j, i);
    return t.real();
}

inline double unitarity_residual(const ComplexMatrix& u) {
    ComplexMatrix g = u * u.adjoint();
    for (std::size_t i = 0; i < u.dim(); ++i) g(i, i) -= 1.0;
    return g.max_abs();
}

inline double hermiticity_residual(const ComplexMatrix& m) {
    double r = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = i; j < m.dim(); ++j)
            r = std::max(r, std::abs(m(i, j) - std::conj(m(j, i))));
    return r;
}

// Self-adjoint operator; entry (i,j) equals conj(entry (j,i)) exactly, enforced
// by symmetrization at construction.
class HermitianMatrix {
public:
    static HermitianMatrix symmetrized(const ComplexMatrix& m) {
        ComplexMatrix h(m.dim());
        for (std::size_t i = 0; i < m.dim(); ++i) {
            h(i, i) = m(i, i).real();
            for (std::size_t j = i + 1; j < m.dim(); ++j) {
                const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
                h(i, j) = v;
                h(j, i) = std::conj(v);
            }
        }
        return HermitianMatrix(std::move(h));
    }

    // Rejects inputs whose Hermitian residual exceeds tol instead of silently
    // fixing them.
    static HermitianMatrix checked(const ComplexMatrix& m, double tol) {
        const double r = hermiticity_residual(m);
        if (r > tol) throw NonHermitianInput(r);
        return symmetrized(m);
    }

    static HermitianMatrix diagonal(const std::vector<double>& d) {
        return HermitianMatrix(ComplexMatrix::diagonal(d));
    }

    static HermitianMatrix zero(std::size_t dim) { return HermitianMatrix(ComplexMatrix(dim)); }

    const ComplexMatrix& mat() const { return m_; }
    std::size_t dim() const { return m_.dim(); }
    double trace() const { return m_.trace().real(); }

private:
    explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

// Operator with ||UU* - I||_max within kUnitarityTol, checked at construction.
class UnitaryMatrix {
public:
    explicit UnitaryMatrix(ComplexMatrix m, double tol = kUnitarityTol) : m_(std::move(m)) {
        const double r = unitarity_residual(m_);
        if (r > tol) throw NotUnitary(r);
    }

    static UnitaryMatrix identity(std::size_t dim) {
        return UnitaryMatrix(ComplexMatrix::identity(dim));
    }

    const ComplexMatrix& mat() const { return m_; }
    std::size_t dim() const { return m_.dim(); }

    UnitaryMatrix adjoint() const { return UnitaryMatrix(m_.adjoint()); }

private:
    ComplexMatrix m_;
};

// U A U*, re-symmetrized so the result satisfies the Hermitian invariant
// exactly.
inline HermitianMatrix conjugate(const UnitaryMatrix& u, const HermitianMatrix& a) {
    return HermitianMatrix::symmetrized(u.mat() * a.mat() * u.mat().adjoint());
}

struct EigenDecomposition {
    Spectrum values;        // descending
    UnitaryMatrix vectors;  // column j is the eigenvector for values[j]
};

namespace detail {

// One cyclic sweep of complex Jacobi rotations applied in place.
// For each pivot (p,q) the phase of a_pq is absorbed first, then a real
// Givens rotation annihilates the pivot.
inline void jacobi_sweep(ComplexMatrix& w, ComplexMatrix& v) {
    const std::size_t d = w.dim();
    for (std::size_t p = 0; p + 1 < d; ++p) {
        for (std::size_t q = p + 1; q < d; ++q) {
            const Complex apq = w(p, q);
            const double m = std::abs(apq);
            if (m == 0.0) continue;

            const Complex u = apq / m;  // e^{i phi}
            const double app = w(p, p).real();
            const double aqq = w(q, q).real();
            const double tau = (aqq - app) / (2.0 * m);
            const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                             (std::abs(tau) + std::sqrt(1.0 + tau * tau));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;

            // plane rotation R: R(p,p)=c, R(p,q)=s, R(q,p)=-s*conj(u),
            // R(q,q)=c*conj(u); W <- R* W R, V <- V R
            const Complex rqp = -s * std::conj(u);
            const Complex rqq = c * std::conj(u);

            for (std::size_t i = 0; i < d; ++i) {  // columns: W <- W R
                const Complex wp = w(i, p), wq = w(i, q);
                w(i, p) = c * wp + rqp * wq;
                w(i, q) = s * wp + rqq * wq;
            }
            for (std::size_t j = 0; j < d; ++j) {  // rows: W <- R* W
                const Complex wp = w(p, j), wq = w(q, j);
                w(p, j) = c * wp + std::conj(rqp) * wq;
                w(q, j) = s * wp + std::conj(rqq) * wq;
            }
            for (std::size_t i = 0; i < d; ++i) {
                const Complex vp = v(i, p), vq = v(i, q);
                v(i, p) = c * vp + rqp * vq;
                v(i, q) = s * vp + rqq * vq;
            }

            // clamp what the rotation made zero/real by construction
            w(p, q) = 0.0;
            w(q, p) = 0.0;
            w(p, p) = w(p, p).real();
            w(q, q) = w(q, q).real();
        }
    }
}

inline double off_diagonal_frobenius(const ComplexMatrix& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.dim(); ++i)
        for (std::size_t j = 0; j < w.dim(); ++j)
            if (i != j) s += std::norm(w(i, j));
    return std::sqrt(s);
}

}  // namespace detail

// Cyclic Jacobi diagonalization of a complex Hermitian matrix.
// Stops when the off-diagonal Frobenius norm drops below 1e-14 * ||A||_F;
// sweep cap 100. Eigenvalues are sorted non-increasing; ties keep the solver's
// output order, so results are deterministic.
inline EigenDecomposition hermitian_eig(const HermitianMatrix& a) {
    constexpr double kOffTol = 1e-14;
    constexpr std::size_t kSweepCap = 100;

    const std::size_t d = a.dim();
    ComplexMatrix w = a.mat();
    ComplexMatrix v = ComplexMatrix::identity(d);
    const double threshold = kOffTol * w.frobenius_norm();

    std::size_t sweep = 0;
    while (detail::off_diagonal_frobenius(w) > threshold) {
        if (sweep++ >= kSweepCap) throw EigNonConvergence(kSweepCap);
        detail::jacobi_sweep(w, v);
    }

    std::vector<double> vals(d);
    for (std::size_t i = 0; i < d; ++i) vals[i] = w(i, i).real();

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return vals[x] > vals[y]; });

    std::vector<double> sorted(d);
    ComplexMatrix q(d);
    for (std::size_t j = 0; j < d; ++j) {
        sorted[j] = vals[order[j]];
        for (std::size_t i = 0; i < d; ++i) q(i, j) = v(i, order[j]);
    }
    return EigenDecomposition{Spectrum(std::move(sorted)), UnitaryMatrix(std::move(q))};
}

// Descending spectrum of A provided every eigenvalue exceeds eps.
inline Spectrum assert_positive_definite(const HermitianMatrix& a,
                                         double eps = kPositiveDefiniteEps) {
    if (!(eps > 0.0)) throw ParameterOutOfRange("eps must be > 0");
    Spectrum s = hermitian_eig(a).values;
    if (!(s.min() > eps)) throw NotPositiveDefinite(s.min());
    return s;
}

namespace detail {

inline EigenDecomposition eig_positive_definite(const HermitianMatrix& a,
                                                double eps = kPositiveDefiniteEps) {
    EigenDecomposition e = hermitian_eig(a);
    if (!(e.values.min() > eps)) throw NotPositiveDefinite(e.values.min());
    return e;
}

}  // namespace detail

// Haar-distributed random unitary: a matrix of independent standard complex
// Gaussians is orthonormalized column by column (modified Gram-Schmidt, one
// re-orthogonalization pass). The residual norms that divide each column are
// the triangular factor's diagonal, real and positive, which pins the phase
// convention. Deterministic per seed.
inline UnitaryMatrix haar_random_unitary(std::size_t dim, Rng& rng) {
    if (dim == 0) throw ParameterOutOfRange("dimension must be >= 1");
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());

    for (std::size_t j = 0; j < dim; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                Complex r = 0.0;
                for (std::size_t n = 0; n < dim; ++n) r += std::conj(g(n, i)) * g(n, j);
                for (std::size_t n = 0; n < dim; ++n) g(n, j) -= r * g(n, i);
            }
        }
        double norm = 0.0;
        for (std::size_t n = 0; n < dim; ++n) norm += std::norm(g(n, j));
        norm = std::sqrt(norm);
        if (norm == 0.0) throw Error("degenerate Gaussian sample in Haar construction");
        for (std::size_t n = 0; n < dim; ++n) g(n, j) /= norm;
    }
    return UnitaryMatrix(std::move(g));
}

inline UnitaryMatrix haar_random_unitary(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    return haar_random_unitary(dim, rng);
}

// Identity except on the (a,b) plane, where it acts as
//   [  sqrt(k)    sqrt(1-k) ]
//   [ sqrt(1-k)   -sqrt(k)  ]
// k=1 leaves diagonal weights in place under conjugation, k=0 swaps them.
inline UnitaryMatrix two_level_rotation(std::size_t dim, std::size_t a, std::size_t b, double k) {
    if (!(k >= 0.0 && k <= 1.0)) throw ParameterOutOfRange("k must lie in [0, 1]");
    if (a == b || a >= dim || b >= dim)
        throw ParameterOutOfRange("plane indices must be distinct and below dim");
    ComplexMatrix m = ComplexMatrix::identity(dim);
    const double rk = std::sqrt(k);
    const double rj = std::sqrt(1.0 - k);
    m(a, a) = rk;
    m(a, b) = rj;
    m(b, a) = rj;
    m(b, b) = -rk;
    return UnitaryMatrix(std::move(m));
}

}  // namespace orbitent

#endif
