#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace infospec {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1";

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Library-wide numerical tolerances.
inline constexpr double kHermTol = 1e-12;        // accepted anti-Hermitian residue after symmetrization
inline constexpr double kHermRejectTol = 1e-9;   // inputs worse than this are rejected, not repaired
inline constexpr double kEigTieTol = 1e-12;      // relative tolerance for degeneracy / zero-crossing ties
inline constexpr double kPsdTol = 1e-12;         // eigenvalues above -kPsdTol are clamped to zero
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kCompletenessTol = 1e-10;
inline constexpr double kSupportTol = 1e-10;     // mass threshold for support-inclusion checks
inline constexpr double kGammaBracketTol = 1e-11;
inline constexpr double kGapTol = 1e-9;          // attainment tolerance on trace-gap targets

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : InputError {
  using InputError::InputError;
};

struct CertificateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProtocolFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double log2_safe(double x) { return std::log2(x); }

// Kronecker product, row-major index convention: (i_A, i_B) -> i_A * dB + i_B.
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron_vec(const Vector& a, const Vector& b);

// n-fold Kronecker power.
Matrix kron_power(const Matrix& a, int n);

double max_abs(const Matrix& a);

}  // namespace infospec
