#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace anisolp {

using Real = double;
using Complex = std::complex<double>;
using Index = Eigen::Index;

using VectorN = Eigen::VectorXd;  // small spatial/frequency vectors (dim n)
using MatrixN = Eigen::MatrixXd;  // the dilation exponent and friends

constexpr Real kPi = 3.14159265358979323846;
constexpr Real kTwoPi = 2.0 * kPi;

/// Integer power by repeated multiplication (exact pass-through for k = 1,
/// unlike std::pow on complex arguments).
inline Complex cpow_int(Complex z, int k) {
    Complex out{1.0, 0.0};
    while (k > 0) {
        if (k & 1) out *= z;
        z *= z;
        k >>= 1;
    }
    return out;
}

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AdmissibilityError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct ConvergenceError : Error { using Error::Error; };
struct ShapeError : Error { using Error::Error; };
struct NormalizationError : Error { using Error::Error; };
struct NonFiniteSymbolError : Error { using Error::Error; };
struct MeanNotZeroError : Error { using Error::Error; };
struct DegenerateSymbolError : Error { using Error::Error; };
struct ApproximantTooFarError : Error { using Error::Error; };
struct QuadratureCoverageError : Error { using Error::Error; };
struct SingularWeightError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };

}  // namespace anisolp
