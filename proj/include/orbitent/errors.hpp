#ifndef ORBITENT_ERRORS_HPP
#define ORBITENT_ERRORS_HPP

#include <sstream>
#include <stdexcept>
#include <string>

namespace orbitent {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {
inline std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}
}  // namespace detail

struct NonFiniteEntry : Error {
    NonFiniteEntry() : Error("matrix entry is NaN or infinite") {}
};

struct NonHermitianInput : Error {
    explicit NonHermitianInput(double residual)
        : Error("input is not Hermitian, symmetrization residual " + detail::num(residual)),
          residual(residual) {}
    double residual;
};

struct NotPositiveDefinite : Error {
    explicit NotPositiveDefinite(double min_eigenvalue)
        : Error("matrix is not positive definite, smallest eigenvalue " +
                detail::num(min_eigenvalue)),
          min_eigenvalue(min_eigenvalue) {}
    double min_eigenvalue;
};

struct NotUnitary : Error {
    explicit NotUnitary(double residual)
        : Error("matrix is not unitary, |UU* - I| residual " + detail::num(residual)),
          residual(residual) {}
    double residual;
};

struct NotBiStochastic : Error {
    explicit NotBiStochastic(const std::string& what) : Error("not bi-stochastic: " + what) {}
};

struct ParameterOutOfRange : Error {
    explicit ParameterOutOfRange(const std::string& what)
        : Error("parameter out of range: " + what) {}
};

struct LengthMismatch : Error {
    LengthMismatch(std::size_t lhs, std::size_t rhs)
        : Error("vector lengths differ: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

struct DimensionMismatch : Error {
    DimensionMismatch(std::size_t lhs, std::size_t rhs)
        : Error("matrix dimensions differ: " + std::to_string(lhs) + " vs " +
                std::to_string(rhs)) {}
};

struct DimensionTooLarge : Error {
    DimensionTooLarge(std::size_t dim, std::size_t cap)
        : Error("dimension " + std::to_string(dim) + " exceeds enumeration cap " +
                std::to_string(cap)) {}
};

struct WrongDimension : Error {
    WrongDimension(std::size_t dim, std::size_t expected)
        : Error("dimension " + std::to_string(dim) + ", expected " + std::to_string(expected)) {}
};

struct PreconditionFailed : Error {
    explicit PreconditionFailed(const std::string& what) : Error("precondition failed: " + what) {}
};

struct EigNonConvergence : Error {
    explicit EigNonConvergence(std::size_t sweeps)
        : Error("eigensolver did not converge within " + std::to_string(sweeps) + " sweeps") {}
};

struct TargetOutOfInterval : Error {
    TargetOutOfInterval(double target, double s_min, double s_max)
        : Error("target " + detail::num(target) + " outside attainable interval [" +
                detail::num(s_min) + ", " + detail::num(s_max) + "]"),
          target(target),
          s_min(s_min),
          s_max(s_max) {}
    double target;
    double s_min;
    double s_max;
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

}  // namespace orbitent

#endif
