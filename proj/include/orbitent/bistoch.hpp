#ifndef ORBITENT_BISTOCH_HPP
#define ORBITENT_BISTOCH_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "orbitent/orbit.hpp"

namespace orbitent {

// Nonnegative matrix with unit row and column sums, validated at construction.
class BiStochasticMatrix {
public:
    static constexpr double kEntryTol = 1e-12;
    static constexpr double kSumTol = 1e-10;

    BiStochasticMatrix(std::size_t dim, std::vector<double> entries)
        : dim_(dim), a_(std::move(entries)) {
        if (dim == 0) throw ParameterOutOfRange("dimension must be >= 1");
        if (a_.size() != dim * dim) throw DimensionMismatch(a_.size(), dim * dim);
        for (double x : a_) {
            if (!std::isfinite(x)) throw NonFiniteEntry();
            if (x < -kEntryTol) throw NotBiStochastic("negative entry " + detail::num(x));
        }
        for (std::size_t i = 0; i < dim_; ++i) {
            double row = 0.0, col = 0.0;
            for (std::size_t j = 0; j < dim_; ++j) {
                row += (*this)(i, j);
                col += (*this)(j, i);
            }
            if (std::abs(row - 1.0) > kSumTol)
                throw NotBiStochastic("row " + std::to_string(i) + " sums to " + detail::num(row));
            if (std::abs(col - 1.0) > kSumTol)
                throw NotBiStochastic("column " + std::to_string(i) + " sums to " +
                                      detail::num(col));
        }
    }

    static BiStochasticMatrix identity(std::size_t dim) {
        std::vector<double> e(dim * dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
        return BiStochasticMatrix(dim, std::move(e));
    }

    std::size_t dim() const { return dim_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

private:
    std::size_t dim_;
    std::vector<double> a_;
};

// Witness for y majorized by x: all descending prefix sums of y dominated by
// those of x and equal totals, each to 1e-10.
struct MajorizationCertificate {
    static constexpr double kTol = 1e-10;

    bool holds;
    std::optional<std::size_t> first_violated_prefix;  // 1-based prefix length
    std::vector<double> prefix_sums_x;
    std::vector<double> prefix_sums_y;
};

// Checks y majorized by x (the certificate for "x majorizes y").
inline MajorizationCertificate majorizes(const Spectrum& x, const Spectrum& y) {
    if (x.size() != y.size()) throw LengthMismatch(x.size(), y.size());
    const std::size_t d = x.size();
    MajorizationCertificate cert{true, std::nullopt, std::vector<double>(d),
                                 std::vector<double>(d)};
    double sx = 0.0, sy = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        sx += x[k];
        sy += y[k];
        cert.prefix_sums_x[k] = sx;
        cert.prefix_sums_y[k] = sy;
        if (cert.holds && k + 1 < d && sy > sx + MajorizationCertificate::kTol) {
            cert.holds = false;
            cert.first_violated_prefix = k + 1;
        }
    }
    if (cert.holds && std::abs(sx - sy) > MajorizationCertificate::kTol) {
        cert.holds = false;
        cert.first_violated_prefix = d;
    }
    return cert;
}

// D = W o conj(W): D(i,j) = |W(j,i)|^2, the squared-modulus (Schur) product.
inline BiStochasticMatrix unitary_to_bistochastic(const UnitaryMatrix& w) {
    const std::size_t d = w.dim();
    std::vector<double> e(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) e[i * d + j] = std::norm(w.mat()(j, i));
    return BiStochasticMatrix(d, std::move(e));
}

// D x, re-sorted descending; the result is always majorized by x.
inline Spectrum apply_bistochastic(const BiStochasticMatrix& d, const Spectrum& x) {
    if (d.dim() != x.size()) throw DimensionMismatch(d.dim(), x.size());
    std::vector<double> y(d.dim(), 0.0);
    for (std::size_t i = 0; i < d.dim(); ++i)
        for (std::size_t j = 0; j < d.dim(); ++j) y[i] += d(i, j) * x[j];
    return Spectrum(std::move(y));
}

// The two sides of the majorization dot-product bound: if y is majorized by x
// then <u_desc, y_desc> <= <u_desc, x_desc>.
inline std::pair<double, double> dot_order_bound(const Spectrum& u, const Spectrum& x,
                                                 const Spectrum& y) {
    if (!majorizes(x, y).holds) throw PreconditionFailed("y is not majorized by x");
    return {co_sorted_dot(u, y), co_sorted_dot(u, x)};
}

struct PairingBound {
    double empirical_max;  // max over sampled bi-stochastic matrices
    double analytic_max;   // <u_desc, x_desc>, the exact optimum
};

// Empirical maximum of <u_desc, B x_desc> over random Birkhoff samples
// (Dirichlet-weighted convex combinations of dim random permutations per
// sample), reported next to the analytic optimum.
inline PairingBound max_bistochastic_pairing(const Spectrum& u, const Spectrum& x,
                                             std::size_t samples, std::uint64_t seed) {
    if (u.size() != x.size()) throw LengthMismatch(u.size(), x.size());
    if (samples == 0) throw ParameterOutOfRange("samples must be >= 1");
    const std::size_t d = u.size();
    const double analytic = co_sorted_dot(u, x);

    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < samples; ++s) {
        Rng rng(derive_seed(seed, s));
        const std::vector<double> weight = rng.dirichlet(d);
        double value = 0.0;
        for (std::size_t t = 0; t < d; ++t) {
            const std::vector<std::size_t> perm = rng.permutation(d);
            double paired = 0.0;
            for (std::size_t i = 0; i < d; ++i) paired += u[i] * x[perm[i]];
            value += weight[t] * paired;
        }
        best = std::max(best, value);
    }
    return PairingBound{best, analytic};
}

struct BistochExploration {
    double observed_min;
    double observed_max;
    EntropyInterval unitary_interval;
};

// Samples mixed-unitary channels Phi(rho) = sum_i p_i U_i rho U_i* with
// Dirichlet weights and Haar unitaries, and reports the observed range of
// S(Phi(rho) || sigma) next to the unitary-orbit interval. Values below the
// orbit minimum are expected for some sigma (the orbit supplies the extreme
// points of the majorization order, so only the upper end is certified).
inline BistochExploration bistoch_orbit_explore(const HermitianMatrix& rho,
                                                const HermitianMatrix& sigma,
                                                std::size_t samples, std::size_t mix,
                                                std::uint64_t seed) {
    if (samples == 0 || mix == 0) throw ParameterOutOfRange("samples and mix must be >= 1");
    EntropyInterval interval = orbit_relent_bounds(rho, sigma);

    const std::size_t d = rho.dim();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < samples; ++s) {
        Rng rng(derive_seed(seed, s));
        const std::vector<double> weight = rng.dirichlet(mix);
        ComplexMatrix acc(d);
        for (std::size_t t = 0; t < mix; ++t) {
            const UnitaryMatrix u = haar_random_unitary(d, rng);
            ComplexMatrix term = u.mat() * rho.mat() * u.mat().adjoint();
            term *= weight[t];
            acc += term;
        }
        const double value =
            relative_entropy(HermitianMatrix::symmetrized(acc), sigma).bits;
        lo = std::min(lo, value);
        hi = std::max(hi, value);
    }
    return BistochExploration{lo, hi, std::move(interval)};
}

}  // namespace orbitent

#endif
