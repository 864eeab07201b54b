#ifndef ORBITENT_ORACLE_HPP
#define ORBITENT_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitent/bistoch.hpp"
#include "orbitent/orbit.hpp"

namespace orbitent {

inline constexpr std::size_t kPermutationEnumerationCap = 8;

struct VerificationReport {
    std::string pair_id;
    std::size_t samples_run = 0;
    std::size_t containment_violations = 0;  // samples outside [s_min-tol, s_max+tol]
    double worst_gap_below_min = 0.0;
    double worst_gap_above_max = 0.0;
    double empirical_min = 0.0;
    double empirical_max = 0.0;
};

// Exact extremes of sum_j lam_j_desc(rho) * log2 mu_perm(j)(sigma) by full
// permutation enumeration. Independent of the rearrangement-based bounds it
// is used to check.
inline std::pair<double, double> permutation_extremes(const HermitianMatrix& rho,
                                                      const HermitianMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionMismatch(rho.dim(), sigma.dim());
    const std::size_t d = rho.dim();
    if (d > kPermutationEnumerationCap) throw DimensionTooLarge(d, kPermutationEnumerationCap);
    const Spectrum lam = assert_positive_definite(rho);
    const Spectrum mu = assert_positive_definite(sigma);

    std::vector<double> logmu(d);
    for (std::size_t j = 0; j < d; ++j) logmu[j] = std::log2(mu[j]);

    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    do {
        double v = 0.0;
        for (std::size_t j = 0; j < d; ++j) v += lam[j] * logmu[perm[j]];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {lo, hi};
}

// Evaluates S(U rho U* || sigma) on Haar samples through the full matrix path
// (fresh eigendecomposition per sample) and reports containment against the
// closed-form interval. bounds_override substitutes the interval under test;
// this is the hook the CLI uses for its negative control.
inline VerificationReport monte_carlo_containment(
    const HermitianMatrix& rho, const HermitianMatrix& sigma, std::size_t samples,
    std::uint64_t seed, std::optional<std::pair<double, double>> bounds_override = {}) {
    if (samples == 0) throw ParameterOutOfRange("samples must be >= 1");
    const EntropyInterval interval = orbit_relent_bounds(rho, sigma);
    const double s_min = bounds_override ? bounds_override->first : interval.s_min;
    const double s_max = bounds_override ? bounds_override->second : interval.s_max;

    VerificationReport report;
    report.samples_run = samples;
    report.empirical_min = std::numeric_limits<double>::infinity();
    report.empirical_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples; ++i) {
        const UnitaryMatrix u = haar_random_unitary(rho.dim(), derive_seed(seed, i));
        const double value = relative_entropy(conjugate(u, rho), sigma).bits;
        report.empirical_min = std::min(report.empirical_min, value);
        report.empirical_max = std::max(report.empirical_max, value);
        const double below = s_min - kIntervalTol - value;
        const double above = value - (s_max + kIntervalTol);
        if (below > 0.0 || above > 0.0) {
            ++report.containment_violations;
            report.worst_gap_below_min = std::max(report.worst_gap_below_min, below);
            report.worst_gap_above_max = std::max(report.worst_gap_above_max, above);
        }
    }
    return report;
}

// Sweeps k over a uniform grid in [0, 1] through the two-level rotation family
// composed with the aligning basis change and returns the min/max of
// S(U(k) rho U(k)* || sigma), each value computed through the full matrix
// path. The k in {0, 1} endpoints reproduce the two permutation values.
inline std::pair<double, double> grid_search_d2(const HermitianMatrix& rho,
                                                const HermitianMatrix& sigma,
                                                std::size_t grid_points) {
    if (rho.dim() != 2) throw WrongDimension(rho.dim(), 2);
    if (sigma.dim() != 2) throw WrongDimension(sigma.dim(), 2);
    if (grid_points < 2) throw ParameterOutOfRange("grid_points must be >= 2");

    const EigenDecomposition er = detail::eig_positive_definite(rho);
    const EigenDecomposition es = detail::eig_positive_definite(sigma);
    const ComplexMatrix xadj = er.vectors.mat().adjoint();

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < grid_points; ++g) {
        const double k = static_cast<double>(g) / static_cast<double>(grid_points - 1);
        const UnitaryMatrix rot = two_level_rotation(2, 0, 1, k);
        const UnitaryMatrix u(es.vectors.mat() * rot.mat() * xadj);
        const double value = relative_entropy(conjugate(u, rho), sigma).bits;
        lo = std::min(lo, value);
        hi = std::max(hi, value);
    }
    return {lo, hi};
}

// Random test-corpus state: Dirichlet(1,...,1) spectrum conjugated by a Haar
// basis. Unit trace, strictly positive.
inline HermitianMatrix random_density(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    const std::vector<double> spectrum = rng.dirichlet(dim);
    const UnitaryMatrix basis = haar_random_unitary(dim, rng);
    return conjugate(basis, HermitianMatrix::diagonal(spectrum));
}

}  // namespace orbitent

#endif
