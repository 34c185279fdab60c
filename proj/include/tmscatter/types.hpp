#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tmscatter {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr Complex I_UNIT{0.0, 1.0};

/// Bad run configuration (invalid counts, malformed files, unknown keys).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Evanescent growth factors exceed the representable range.
struct OverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A linear system or iteration failed for numerical reasons.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Closed-form denominator vanished; the wavenumber/coupling sits on a
/// spectral singularity of the potential.
struct SpectralSingularityError : NumericalError {
  using NumericalError::NumericalError;
};

/// A certificate was requested for a potential that fails its premise.
struct PremiseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tmscatter
