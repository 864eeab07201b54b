#ifndef ORBITENT_ENTROPY_HPP
#define ORBITENT_ENTROPY_HPP

#include <cmath>
#include <limits>

#include "orbitent/matcore.hpp"

namespace orbitent {

// All logarithms are base 2; entropies are reported in bits. Natural-log
// output is a display conversion, never a separate computation path.
inline constexpr double kLog2E = 1.4426950408889634;

// Eigenvalues at or below this fraction of the largest one count as zero when
// deciding support membership.
inline constexpr double kSupportRelTol = 1e-12;

// Extended-real entropy in bits; +infinity marks a support failure.
struct EntropyValue {
    double bits;

    bool finite() const { return std::isfinite(bits); }
    static EntropyValue infinite() { return {std::numeric_limits<double>::infinity()}; }
};

namespace detail {

// Re(y* A y) for y = column `col` of vecs.
inline double real_quadratic_form(const ComplexMatrix& a, const ComplexMatrix& vecs,
                                  std::size_t col) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Complex ay = 0.0;
        for (std::size_t j = 0; j < a.dim(); ++j) ay += a(i, j) * vecs(j, col);
        acc += std::conj(vecs(i, col)) * ay;
    }
    return acc.real();
}

inline double sum_plog2(const Spectrum& s) {
    double acc = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) acc += s[j] * std::log2(s[j]);
    return acc;
}

}  // namespace detail

// The trace functional Tr(P log2 P) over the spectrum of P. Note: no minus
// sign, so density operators give negative values. Basis independent.
inline double trace_plog(const HermitianMatrix& p) {
    return detail::sum_plog2(assert_positive_definite(p));
}

// Tr(P log2 P) - Tr(P log2 Q), with log Q assembled in Q's eigenbasis.
// Accepts positive semidefinite inputs; returns the +infinity sentinel when
// P's support is not contained in Q's.
inline EntropyValue relative_entropy(const HermitianMatrix& p, const HermitianMatrix& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch(p.dim(), q.dim());
    const EigenDecomposition ep = hermitian_eig(p);
    const EigenDecomposition eq = hermitian_eig(q);

    const double pmax = ep.values.max();
    const double qmax = eq.values.max();
    const double pcut = kSupportRelTol * std::max(pmax, 0.0);
    const double qcut = kSupportRelTol * std::max(qmax, 0.0);
    if (ep.values.min() < -1e-9 * std::max(pmax, 1.0))
        throw NotPositiveDefinite(ep.values.min());
    if (eq.values.min() < -1e-9 * std::max(qmax, 1.0))
        throw NotPositiveDefinite(eq.values.min());
    const double trace_p = p.trace();
    if (!(trace_p > 0.0)) throw PreconditionFailed("Tr(P) must be > 0");

    double plogp = 0.0;
    for (std::size_t i = 0; i < ep.values.size(); ++i) {
        const double lam = ep.values[i];
        if (lam > pcut) plogp += lam * std::log2(lam);
    }

    double plogq = 0.0;
    double kernel_mass = 0.0;
    for (std::size_t j = 0; j < eq.values.size(); ++j) {
        const double mu = eq.values[j];
        const double weight = detail::real_quadratic_form(p.mat(), eq.vectors.mat(), j);
        if (mu > qcut)
            plogq += weight * std::log2(mu);
        else
            kernel_mass += weight;
    }
    if (kernel_mass > kSupportRelTol * trace_p) return EntropyValue::infinite();
    return EntropyValue{plogp - plogq};
}

// Tr(A log2 sigma) for positive definite sigma; linear in A.
inline double trace_against_log(const HermitianMatrix& a, const HermitianMatrix& sigma) {
    if (a.dim() != sigma.dim()) throw DimensionMismatch(a.dim(), sigma.dim());
    const EigenDecomposition es = detail::eig_positive_definite(sigma);
    double acc = 0.0;
    for (std::size_t j = 0; j < es.values.size(); ++j)
        acc += std::log2(es.values[j]) *
               detail::real_quadratic_form(a.mat(), es.vectors.mat(), j);
    return acc;
}

}  // namespace orbitent

#endif
