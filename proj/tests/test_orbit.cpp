#include <algorithm>
#include <numeric>

#include <catch2/catch_amalgamated.hpp>

#include "orbitent/oracle.hpp"
#include "orbitent/orbit.hpp"
#include "test_support.hpp"

using namespace orbitent;
using Catch::Matchers::WithinAbs;

namespace {

const HermitianMatrix kRho = HermitianMatrix::diagonal({0.75, 0.25});
const HermitianMatrix kSigma = HermitianMatrix::diagonal({2.0 / 3.0, 1.0 / 3.0});

// frozen from the scalar formulas over the fixture spectra
constexpr double kFixtureFMax = -0.8349625007211563;   // 0.75*log2(2/3) + 0.25*log2(1/3)
constexpr double kFixtureFMin = -1.3349625007211563;   // 0.75*log2(1/3) + 0.25*log2(2/3)
constexpr double kFixtureSMin = 0.023684376262023465;  // tp(rho) - f_max
constexpr double kFixtureSMax = 0.52368437626202347;   // tp(rho) - f_min

double relent_bits(const UnitaryMatrix& u, const HermitianMatrix& rho,
                   const HermitianMatrix& sigma) {
    return relative_entropy(conjugate(u, rho), sigma).bits;
}

}  // namespace

TEST_CASE("aligning_unitary on co-sorted diagonals is the identity pairing") {
    const UnitaryMatrix u = aligning_unitary(kRho, kSigma, Alignment::aligned);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            REQUIRE_THAT(std::abs(u.mat()(i, j)), WithinAbs(i == j ? 1.0 : 0.0, 1e-12));

    const UnitaryMatrix v = aligning_unitary(kRho, kSigma, Alignment::anti_aligned);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            REQUIRE_THAT(std::abs(v.mat()(i, j)), WithinAbs(i == j ? 0.0 : 1.0, 1e-12));
}

TEST_CASE("aligning_unitary realizes the sorted-spectra pairing on random pairs") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const HermitianMatrix rho = random_density(4, derive_seed(40, seed));
        const HermitianMatrix sigma = random_density(4, derive_seed(41, seed));
        const Spectrum lam = assert_positive_definite(rho);
        const Spectrum mu = assert_positive_definite(sigma);

        // oracle: scalar sums over sorted spectra
        double co = 0.0, anti = 0.0;
        for (std::size_t j = 0; j < 4; ++j) {
            co += lam[j] * std::log2(mu[j]);
            anti += lam[j] * std::log2(mu[4 - 1 - j]);
        }

        const UnitaryMatrix u = aligning_unitary(rho, sigma, Alignment::aligned);
        REQUIRE_THAT(trace_against_log(conjugate(u, rho), sigma), WithinAbs(co, 1e-9));
        const UnitaryMatrix v = aligning_unitary(rho, sigma, Alignment::anti_aligned);
        REQUIRE_THAT(trace_against_log(conjugate(v, rho), sigma), WithinAbs(anti, 1e-9));
    }
}

TEST_CASE("orbit_trace_bounds fixture and degenerate cases") {
    const auto [f_min, f_max] = orbit_trace_bounds(kRho, kSigma);
    REQUIRE_THAT(f_max, WithinAbs(kFixtureFMax, 1e-6));
    REQUIRE_THAT(f_min, WithinAbs(kFixtureFMin, 1e-6));
    REQUIRE(f_min <= f_max);

    // uniform rho: both orders coincide at (1/d) sum log2 mu_j
    const HermitianMatrix sigma = random_density(3, 303);
    const Spectrum mu = assert_positive_definite(sigma);
    double expect = 0.0;
    for (std::size_t j = 0; j < 3; ++j) expect += std::log2(mu[j]) / 3.0;
    const auto uniform_rho =
        orbit_trace_bounds(HermitianMatrix::diagonal({1.0 / 3, 1.0 / 3, 1.0 / 3}), sigma);
    REQUIRE_THAT(uniform_rho.first, WithinAbs(expect, 1e-9));
    REQUIRE_THAT(uniform_rho.second, WithinAbs(expect, 1e-9));

    // uniform sigma: both extremes equal -log2 d
    const auto uniform_sigma = orbit_trace_bounds(
        random_density(4, 404), HermitianMatrix::diagonal({0.25, 0.25, 0.25, 0.25}));
    REQUIRE_THAT(uniform_sigma.first, WithinAbs(-2.0, 1e-9));
    REQUIRE_THAT(uniform_sigma.second, WithinAbs(-2.0, 1e-9));
}

TEST_CASE("orbit_relent_bounds fixture values and achieving unitaries") {
    const EntropyInterval iv = orbit_relent_bounds(kRho, kSigma);
    REQUIRE_THAT(iv.s_min, WithinAbs(kFixtureSMin, 1e-9));
    REQUIRE_THAT(iv.s_max, WithinAbs(kFixtureSMax, 1e-9));
    REQUIRE_THAT(relent_bits(iv.u_min, kRho, kSigma), WithinAbs(iv.s_min, 1e-9));
    REQUIRE_THAT(relent_bits(iv.u_max, kRho, kSigma), WithinAbs(iv.s_max, 1e-9));
    REQUIRE_THAT(iv.s_min - (trace_plog(kRho) - iv.f_max), WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(iv.s_max - (trace_plog(kRho) - iv.f_min), WithinAbs(0.0, 1e-12));
}

TEST_CASE("orbit_relent_bounds identity and degenerate cases") {
    const HermitianMatrix rho = random_density(4, 17);
    const EntropyInterval self = orbit_relent_bounds(rho, rho);
    REQUIRE_THAT(self.s_min, WithinAbs(0.0, 1e-9));
    REQUIRE(self.s_max >= self.s_min - 1e-12);

    const HermitianMatrix uniform = HermitianMatrix::diagonal({0.25, 0.25, 0.25, 0.25});
    const EntropyInterval degenerate = orbit_relent_bounds(uniform, random_density(4, 18));
    REQUIRE_THAT(degenerate.s_max - degenerate.s_min, WithinAbs(0.0, 1e-9));

    REQUIRE_THROWS_AS(orbit_relent_bounds(HermitianMatrix::diagonal({1.0, 0.0}), kSigma),
                      NotPositiveDefinite);
}

TEST_CASE("orbit_relent_bounds achieves endpoints on random pairs") {
    for (std::size_t d : {2, 3, 5}) {
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            const HermitianMatrix rho = random_density(d, derive_seed(50, 10 * d + seed));
            const HermitianMatrix sigma = random_density(d, derive_seed(51, 10 * d + seed));
            const EntropyInterval iv = orbit_relent_bounds(rho, sigma);
            REQUIRE(iv.s_min >= -1e-9);  // Klein for unit-trace pairs
            REQUIRE(iv.s_min <= iv.s_max + 1e-12);
            REQUIRE_THAT(relent_bits(iv.u_min, rho, sigma), WithinAbs(iv.s_min, 1e-9));
            REQUIRE_THAT(relent_bits(iv.u_max, rho, sigma), WithinAbs(iv.s_max, 1e-9));
        }
    }
}

TEST_CASE("permutation sandwich: every pairing sits between the trace bounds") {
    for (std::size_t d : {2, 3, 4, 5, 6}) {
        const HermitianMatrix rho = random_density(d, derive_seed(60, d));
        const HermitianMatrix sigma = random_density(d, derive_seed(61, d));
        const auto [f_min, f_max] = orbit_trace_bounds(rho, sigma);
        const Spectrum lam = assert_positive_definite(rho);
        const Spectrum mu = assert_positive_definite(sigma);

        std::vector<std::size_t> perm(d);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        do {
            double v = 0.0;
            for (std::size_t j = 0; j < d; ++j) v += lam[j] * std::log2(mu[perm[j]]);
            REQUIRE(v >= f_min - 1e-10);
            REQUIRE(v <= f_max + 1e-10);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("trace_overlap_range formula, fixture, and degenerate case") {
    const auto [lo, hi] = trace_overlap_range(kRho, kSigma);
    // oracle: direct dot products of the sorted spectra
    REQUIRE_THAT(lo, WithinAbs(0.41666666666666663, 1e-9));
    REQUIRE_THAT(hi, WithinAbs(0.58333333333333337, 1e-9));

    const HermitianMatrix sigma = random_density(5, 99);
    const auto [ulo, uhi] = trace_overlap_range(
        HermitianMatrix::diagonal(std::vector<double>(5, 0.2)), sigma);
    REQUIRE_THAT(ulo, WithinAbs(sigma.trace() / 5.0, 1e-10));
    REQUIRE_THAT(uhi, WithinAbs(sigma.trace() / 5.0, 1e-10));

    // generic d=2: [l1 m2 + l2 m1, l1 m1 + l2 m2]
    const HermitianMatrix r2 = random_density(2, 123);
    const HermitianMatrix s2 = random_density(2, 124);
    const Spectrum lam = assert_positive_definite(r2);
    const Spectrum mu = assert_positive_definite(s2);
    const auto [glo, ghi] = trace_overlap_range(r2, s2);
    REQUIRE_THAT(glo, WithinAbs(lam[0] * mu[1] + lam[1] * mu[0], 1e-12));
    REQUIRE_THAT(ghi, WithinAbs(lam[0] * mu[0] + lam[1] * mu[1], 1e-12));
}

TEST_CASE("d2_interpolation_value endpoints, midpoint, and conjugation consistency") {
    const Spectrum lam({0.75, 0.25});
    const Spectrum mu({2.0 / 3.0, 1.0 / 3.0});
    REQUIRE_THAT(d2_interpolation_value(lam, mu, 1.0),
                 WithinAbs(lam[0] * mu[0] + lam[1] * mu[1], 1e-15));
    REQUIRE_THAT(d2_interpolation_value(lam, mu, 0.0),
                 WithinAbs(lam[0] * mu[1] + lam[1] * mu[0], 1e-15));
    // oracle: midpoint of the endpoint values 0.416667 and 0.583333
    REQUIRE_THAT(d2_interpolation_value(lam, mu, 0.5), WithinAbs(0.5, 1e-12));

    for (double k : {0.0, 0.125, 0.3, 0.5, 0.77, 1.0}) {
        const HermitianMatrix rotated = conjugate(two_level_rotation(2, 0, 1, k),
                                                  HermitianMatrix::diagonal({0.75, 0.25}));
        const double direct =
            real_trace_product(rotated.mat(), HermitianMatrix::diagonal({2.0 / 3.0, 1.0 / 3.0}).mat());
        REQUIRE_THAT(direct, WithinAbs(d2_interpolation_value(lam, mu, k), 1e-12));
    }

    REQUIRE_THROWS_AS(d2_interpolation_value(lam, mu, 1.0001), ParameterOutOfRange);
    REQUIRE_THROWS_AS(d2_interpolation_value(Spectrum({1.0}), mu, 0.5), LengthMismatch);
}

TEST_CASE("synthesize_target boundary plans") {
    const EntropyInterval iv = orbit_relent_bounds(kRho, kSigma);

    const auto [u_lo, plan_lo] = synthesize_target(kRho, kSigma, iv.s_min);
    REQUIRE(plan_lo.steps.empty());
    REQUIRE_THAT(relent_bits(u_lo, kRho, kSigma), WithinAbs(iv.s_min, 1e-9));
    // equals the aligned unitary
    const UnitaryMatrix aligned = aligning_unitary(kRho, kSigma, Alignment::aligned);
    ComplexMatrix diff = u_lo.mat();
    diff -= aligned.mat();
    REQUIRE(diff.max_abs() <= 1e-12);

    const auto [u_hi, plan_hi] = synthesize_target(kRho, kSigma, iv.s_max);
    REQUIRE(plan_hi.steps.size() == 1);  // d=2 reversal is a single adjacent swap
    REQUIRE(plan_hi.steps[0].k == 0.0);
    REQUIRE_THAT(relent_bits(u_hi, kRho, kSigma), WithinAbs(iv.s_max, 1e-9));
}

TEST_CASE("synthesize_target midpoint matches the d=2 grid oracle") {
    const EntropyInterval iv = orbit_relent_bounds(kRho, kSigma);
    const double target = 0.5 * (iv.s_min + iv.s_max);
    const auto [u, plan] = synthesize_target(kRho, kSigma, target);
    REQUIRE_THAT(relent_bits(u, kRho, kSigma), WithinAbs(target, 1e-8));
    REQUIRE(plan.steps.size() == 1);
    REQUIRE(plan.steps[0].a == 0);
    REQUIRE(plan.steps[0].b == 1);

    // oracle: dense k-grid over the rotation family, pick the nearest value
    double best_k = -1.0, best_err = 1e9;
    for (int g = 0; g <= 10000; ++g) {
        const double k = g / 10000.0;
        const UnitaryMatrix cand(two_level_rotation(2, 0, 1, k));
        const double val = relent_bits(cand, kRho, kSigma);
        if (std::abs(val - target) < best_err) {
            best_err = std::abs(val - target);
            best_k = k;
        }
    }
    REQUIRE_THAT(plan.steps[0].k, WithinAbs(best_k, 2e-4));
}

TEST_CASE("synthesize_target rejects unattainable targets") {
    const EntropyInterval iv = orbit_relent_bounds(kRho, kSigma);
    REQUIRE_THROWS_AS(synthesize_target(kRho, kSigma, iv.s_max + 1.0), TargetOutOfInterval);
    REQUIRE_THROWS_AS(synthesize_target(kRho, kSigma, iv.s_min - 1.0), TargetOutOfInterval);
    try {
        synthesize_target(kRho, kSigma, iv.s_max + 1.0);
        FAIL("expected TargetOutOfInterval");
    } catch (const TargetOutOfInterval& e) {
        REQUIRE_THAT(e.s_min, WithinAbs(iv.s_min, 1e-12));
        REQUIRE_THAT(e.s_max, WithinAbs(iv.s_max, 1e-12));
    }
}

TEST_CASE("synthesize_target hits random targets and degenerate intervals") {
    for (std::size_t d : {2, 3, 4, 6}) {
        const HermitianMatrix rho = random_density(d, derive_seed(70, d));
        const HermitianMatrix sigma = random_density(d, derive_seed(71, d));
        const EntropyInterval iv = orbit_relent_bounds(rho, sigma);
        Rng rng(derive_seed(72, d));
        for (int t = 0; t < 10; ++t) {
            const double target = iv.s_min + (iv.s_max - iv.s_min) * rng.uniform();
            const auto [u, plan] = synthesize_target(rho, sigma, target);
            REQUIRE(unitarity_residual(u.mat()) <= 1e-10);
            REQUIRE_THAT(relent_bits(u, rho, sigma), WithinAbs(target, 1e-8));
            for (const auto& s : plan.steps) {
                REQUIRE(s.k >= 0.0);
                REQUIRE(s.k <= 1.0);
            }
        }
    }

    // degenerate interval: any attainable target returns the aligned unitary
    const HermitianMatrix uniform = HermitianMatrix::diagonal({0.25, 0.25, 0.25, 0.25});
    const HermitianMatrix sigma = random_density(4, 73);
    const EntropyInterval iv = orbit_relent_bounds(uniform, sigma);
    const auto [u, plan] = synthesize_target(uniform, sigma, iv.s_min);
    REQUIRE(plan.steps.empty());
    REQUIRE_THAT(relent_bits(u, uniform, sigma), WithinAbs(iv.s_min, 1e-8));
}

TEST_CASE("synthesis walk with full swaps is monotone and reaches the reversal") {
    const HermitianMatrix rho = random_density(5, 81);
    const HermitianMatrix sigma = random_density(5, 82);
    const EntropyInterval iv = orbit_relent_bounds(rho, sigma);
    const auto [u, plan] = synthesize_target(rho, sigma, iv.s_max);

    // replay the recorded swaps over the weight/score model
    const Spectrum lam = assert_positive_definite(rho);
    const Spectrum mu = assert_positive_definite(sigma);
    std::vector<double> w(lam.descending());
    std::vector<double> m(5);
    for (std::size_t j = 0; j < 5; ++j) m[j] = std::log2(mu[j]);
    auto f_of = [&] {
        double s = 0.0;
        for (std::size_t j = 0; j < 5; ++j) s += w[j] * m[j];
        return s;
    };
    double f = f_of();
    REQUIRE_THAT(f, WithinAbs(iv.f_max, 1e-12));
    for (const auto& s : plan.steps) {
        REQUIRE(s.k == 0.0);
        std::swap(w[s.a], w[s.b]);
        const double next = f_of();
        REQUIRE(next <= f + 1e-12);
        f = next;
    }
    REQUIRE_THAT(f, WithinAbs(iv.f_min, 1e-9));
    REQUIRE_THAT(relent_bits(u, rho, sigma), WithinAbs(iv.s_max, 1e-9));
}

TEST_CASE("synthesis plan composes to the returned unitary") {
    const HermitianMatrix rho = random_density(4, 91);
    const HermitianMatrix sigma = random_density(4, 92);
    const EntropyInterval iv = orbit_relent_bounds(rho, sigma);
    const double target = 0.3 * iv.s_min + 0.7 * iv.s_max;
    const auto [u, plan] = synthesize_target(rho, sigma, target);

    // documented reconstruction: (Y G_n Y*) ... (Y G_1 Y*) basis_change
    const UnitaryMatrix y = hermitian_eig(sigma).vectors;
    ComplexMatrix rebuilt = plan.basis_change.mat();
    for (const auto& s : plan.steps) {
        const UnitaryMatrix g = two_level_rotation(4, s.a, s.b, s.k);
        rebuilt = y.mat() * g.mat() * y.mat().adjoint() * rebuilt;
    }
    REQUIRE(unitarity_residual(rebuilt) <= 1e-10);
    ComplexMatrix diff = rebuilt;
    diff -= u.mat();
    REQUIRE(diff.max_abs() <= 1e-9);
}

TEST_CASE("is_attainable boundary behavior") {
    const EntropyInterval iv = orbit_relent_bounds(kRho, kSigma);
    REQUIRE(is_attainable(kRho, kSigma, iv.s_min));
    REQUIRE(is_attainable(kRho, kSigma, iv.s_max));
    REQUIRE_FALSE(is_attainable(kRho, kSigma, iv.s_max + 1.0));
    const double mid = 0.5 * (iv.s_min + iv.s_max);
    REQUIRE(is_attainable(kRho, kSigma, mid));
    REQUIRE_NOTHROW(synthesize_target(kRho, kSigma, mid));
}
