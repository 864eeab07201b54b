#ifndef ORBITENT_RANDOM_HPP
#define ORBITENT_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "orbitent/errors.hpp"

namespace orbitent {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-index stream seed, so sampling loops stay deterministic under any
// evaluation order.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(base ^ splitmix64(index + 1));
}

// Deterministic double-precision source on top of mt19937_64. Transforms are
// hand-rolled (Box-Muller, inverse-CDF-free) so identical seeds give
// bit-identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform in (0, 1]
    double uniform() { return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53; }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

    // Dirichlet(1,...,1): normalized unit exponentials.
    std::vector<double> dirichlet(std::size_t n) {
        std::vector<double> w(n);
        double total = 0.0;
        for (auto& x : w) {
            x = -std::log(uniform());
            total += x;
        }
        for (auto& x : w) x /= total;
        return w;
    }

    // Fisher-Yates shuffle of 0..n-1.
    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> p(n);
        std::iota(p.begin(), p.end(), std::size_t{0});
        for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[index(i)]);
        return p;
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace orbitent

#endif
