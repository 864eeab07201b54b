#ifndef ORBITENT_ORBIT_HPP
#define ORBITENT_ORBIT_HPP

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "orbitent/entropy.hpp"
#include "orbitent/matcore.hpp"

namespace orbitent {

// Membership tolerance for the attainable interval, in bits.
inline constexpr double kIntervalTol = 1e-9;

enum class Alignment { aligned, anti_aligned };

// Attainable range of S(U rho U* || sigma) together with the unitaries that
// achieve the endpoints and the extremes of f(U) = Tr(U rho U* log2 sigma).
struct EntropyInterval {
    double s_min;
    double s_max;
    UnitaryMatrix u_min;  // achieves s_min (spectra co-sorted)
    UnitaryMatrix u_max;  // achieves s_max (spectra anti-sorted)
    double f_max;         // = trace_plog(rho) - s_min
    double f_min;         // = trace_plog(rho) - s_max
};

struct SynthesisStep {
    std::size_t a;
    std::size_t b;
    double k;  // in [0, 1]; k=0 is a full adjacent swap
};

// Recipe for a target-achieving unitary: basis_change maps rho's descending
// eigenbasis onto sigma's, then the rotation steps act on coordinate planes of
// sigma's eigenbasis, first step first. The synthesized unitary is
//   Y G_n ... G_1 X*  =  (Y G_n Y*) ... (Y G_1 Y*) basis_change,
// where X, Y are the descending eigenvector matrices of rho and sigma.
struct SynthesisPlan {
    std::vector<SynthesisStep> steps;
    UnitaryMatrix basis_change;
};

namespace detail {

inline UnitaryMatrix aligning_from(const EigenDecomposition& er, const EigenDecomposition& es,
                                   Alignment order) {
    const std::size_t d = er.vectors.dim();
    const ComplexMatrix& x = er.vectors.mat();
    const ComplexMatrix& y = es.vectors.mat();
    ComplexMatrix u(d);
    for (std::size_t k = 0; k < d; ++k) {
        const std::size_t yk = (order == Alignment::aligned) ? k : d - 1 - k;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) u(i, j) += y(i, yk) * std::conj(x(j, k));
    }
    return UnitaryMatrix(std::move(u));
}

inline std::vector<double> log2_descending(const Spectrum& s) {
    std::vector<double> m(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) m[j] = std::log2(s[j]);
    return m;
}

// In-place left multiplication by the two-level rotation on rows (a, b).
inline void apply_two_level_left(ComplexMatrix& g, std::size_t a, std::size_t b, double k) {
    const double rk = std::sqrt(k);
    const double rj = std::sqrt(1.0 - k);
    for (std::size_t j = 0; j < g.dim(); ++j) {
        const Complex ra = g(a, j), rb = g(b, j);
        g(a, j) = rk * ra + rj * rb;
        g(b, j) = rj * ra - rk * rb;
    }
}

struct OrbitProblem {
    EigenDecomposition rho;
    EigenDecomposition sigma;
    double tp;  // Tr(rho log2 rho)
    double f_max;
    double f_min;
    double s_min;
    double s_max;
};

inline OrbitProblem orbit_problem(const HermitianMatrix& rho, const HermitianMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionMismatch(rho.dim(), sigma.dim());
    EigenDecomposition er = eig_positive_definite(rho);
    EigenDecomposition es = eig_positive_definite(sigma);
    const Spectrum& lam = er.values;
    const Spectrum logmu = Spectrum(log2_descending(es.values));
    const double tp = sum_plog2(lam);
    const double f_max = co_sorted_dot(lam, logmu);
    const double f_min = anti_sorted_dot(lam, logmu);
    return OrbitProblem{std::move(er), std::move(es), tp, f_max, f_min, tp - f_max, tp - f_min};
}

}  // namespace detail

// Unitary sending the j-th descending eigenvector of rho onto the j-th
// descending (aligned) or ascending (anti_aligned) eigenvector of sigma.
inline UnitaryMatrix aligning_unitary(const HermitianMatrix& rho, const HermitianMatrix& sigma,
                                      Alignment order) {
    if (rho.dim() != sigma.dim()) throw DimensionMismatch(rho.dim(), sigma.dim());
    return detail::aligning_from(detail::eig_positive_definite(rho),
                                 detail::eig_positive_definite(sigma), order);
}

// Extremes of Tr(U rho U* log2 sigma) over all unitaries: the co-sorted
// pairing of spectra maximizes, the anti-sorted pairing minimizes.
inline std::pair<double, double> orbit_trace_bounds(const HermitianMatrix& rho,
                                                    const HermitianMatrix& sigma) {
    const auto prob = detail::orbit_problem(rho, sigma);
    return {prob.f_min, prob.f_max};
}

// Attainable range of S(U rho U* || sigma) with achieving unitaries.
inline EntropyInterval orbit_relent_bounds(const HermitianMatrix& rho,
                                           const HermitianMatrix& sigma) {
    const auto prob = detail::orbit_problem(rho, sigma);
    UnitaryMatrix u_min = detail::aligning_from(prob.rho, prob.sigma, Alignment::aligned);
    UnitaryMatrix u_max = detail::aligning_from(prob.rho, prob.sigma, Alignment::anti_aligned);
    return EntropyInterval{prob.s_min, prob.s_max, std::move(u_min), std::move(u_max),
                           prob.f_max, prob.f_min};
}

// Range of Tr(U rho U* sigma): [anti-sorted, co-sorted] dot product of spectra.
inline std::pair<double, double> trace_overlap_range(const HermitianMatrix& rho,
                                                     const HermitianMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionMismatch(rho.dim(), sigma.dim());
    const Spectrum lam = assert_positive_definite(rho);
    const Spectrum mu = assert_positive_definite(sigma);
    return {anti_sorted_dot(lam, mu), co_sorted_dot(lam, mu)};
}

// Tr(U(k) rho U(k)* sigma) for the d=2 rotation family:
// (1-k)(l1 m2 + l2 m1) + k(l1 m1 + l2 m2).
inline double d2_interpolation_value(const Spectrum& lambda, const Spectrum& mu, double k) {
    if (lambda.size() != 2) throw LengthMismatch(lambda.size(), 2);
    if (mu.size() != 2) throw LengthMismatch(mu.size(), 2);
    if (!(k >= 0.0 && k <= 1.0)) throw ParameterOutOfRange("k must lie in [0, 1]");
    const double swapped = lambda[0] * mu[1] + lambda[1] * mu[0];
    const double sorted = lambda[0] * mu[0] + lambda[1] * mu[1];
    return (1.0 - k) * swapped + k * sorted;
}

inline bool is_attainable(const HermitianMatrix& rho, const HermitianMatrix& sigma,
                          double target) {
    const auto prob = detail::orbit_problem(rho, sigma);
    return target >= prob.s_min - kIntervalTol && target <= prob.s_max + kIntervalTol;
}

// Constructs U with S(U rho U* || sigma) = target (within 1e-8 bits).
//
// Works on f(U) = Tr(U rho U* log2 sigma) with f_target = trace_plog(rho) -
// target. Starting from the aligned configuration (f = f_max), the bubble-sort
// sequence of adjacent transpositions that carries the identity pairing into
// the reversal is walked with full swaps (k=0) while the swapped value stays
// at or above f_target; the first crossing step is replaced by the two-level
// rotation whose k solves the linear interpolation, and the walk stops.
// Steps with no effect on the state are omitted from the plan.
inline std::pair<UnitaryMatrix, SynthesisPlan> synthesize_target(const HermitianMatrix& rho,
                                                                 const HermitianMatrix& sigma,
                                                                 double target) {
    const auto prob = detail::orbit_problem(rho, sigma);
    if (target < prob.s_min - kIntervalTol || target > prob.s_max + kIntervalTol)
        throw TargetOutOfInterval(target, prob.s_min, prob.s_max);

    const std::size_t d = rho.dim();
    std::vector<double> w(prob.rho.values.descending());    // weights, largest first
    const std::vector<double> m = detail::log2_descending(prob.sigma.values);  // scores

    double f_target = std::clamp(prob.tp - target, prob.f_min, prob.f_max);
    // snap to the endpoints so boundary targets produce the boundary plans
    const double snap = 1e-10 * (1.0 + std::max(std::abs(prob.f_min), std::abs(prob.f_max)));
    if (f_target >= prob.f_max - snap) f_target = prob.f_max;
    if (f_target <= prob.f_min + snap) f_target = prob.f_min;

    auto dot = [&] {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += w[j] * m[j];
        return s;
    };

    ComplexMatrix g = ComplexMatrix::identity(d);
    std::vector<SynthesisStep> steps;
    double f = prob.f_max;
    bool reached = f <= f_target;

    for (std::size_t pass = 0; pass + 1 < d && !reached; ++pass) {
        for (std::size_t pos = 0; pos + 2 + pass <= d; ++pos) {
            if (f <= f_target) {
                reached = true;
                break;
            }
            const std::size_t a = pos, b = pos + 1;
            const double f_swap = f + (w[a] - w[b]) * (m[b] - m[a]);
            if (f_swap >= f_target) {
                if (w[a] != w[b]) {  // equal weights make the swap a no-op
                    detail::apply_two_level_left(g, a, b, 0.0);
                    steps.push_back({a, b, 0.0});
                }
                std::swap(w[a], w[b]);
                f = dot();
            } else {
                const double k = (f_target - f_swap) / (f - f_swap);
                detail::apply_two_level_left(g, a, b, k);
                steps.push_back({a, b, k});
                reached = true;
                break;
            }
        }
    }

    UnitaryMatrix basis_change = detail::aligning_from(prob.rho, prob.sigma, Alignment::aligned);
    ComplexMatrix u = prob.sigma.vectors.mat() * g * prob.rho.vectors.mat().adjoint();
    return {UnitaryMatrix(std::move(u)),
            SynthesisPlan{std::move(steps), std::move(basis_change)}};
}

}  // namespace orbitent

#endif
