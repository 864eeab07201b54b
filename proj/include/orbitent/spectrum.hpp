#ifndef ORBITENT_SPECTRUM_HPP
#define ORBITENT_SPECTRUM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "orbitent/errors.hpp"

namespace orbitent {

// Real eigenvalue vector stored in non-increasing order; the ascending view is
// the reverse of the stored one.
class Spectrum {
public:
    explicit Spectrum(std::vector<double> values) : v_(std::move(values)) {
        for (double x : v_) {
            if (!std::isfinite(x)) throw NonFiniteEntry();
        }
        std::stable_sort(v_.begin(), v_.end(), std::greater<double>());
    }

    std::size_t size() const { return v_.size(); }

    // j-th value in descending order
    double operator[](std::size_t j) const { return v_[j]; }

    const std::vector<double>& descending() const { return v_; }

    std::vector<double> ascending() const { return {v_.rbegin(), v_.rend()}; }

    double sum() const {
        double s = 0.0;
        for (double x : v_) s += x;
        return s;
    }

    double min() const { return v_.back(); }
    double max() const { return v_.front(); }

    // density-operator spectrum: strictly positive, unit trace
    bool is_density(double tol = 1e-10) const {
        return min() > 0.0 && std::abs(sum() - 1.0) <= tol;
    }

private:
    std::vector<double> v_;
};

inline double co_sorted_dot(const Spectrum& a, const Spectrum& b) {
    if (a.size() != b.size()) throw LengthMismatch(a.size(), b.size());
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s;
}

inline double anti_sorted_dot(const Spectrum& a, const Spectrum& b) {
    if (a.size() != b.size()) throw LengthMismatch(a.size(), b.size());
    const std::size_t d = a.size();
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += a[j] * b[d - 1 - j];
    return s;
}

}  // namespace orbitent

#endif
