#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace tracepair {

using Complex  = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

// Default tolerances. Every public operation that compares against one of
// these accepts an override parameter.
namespace tol {
inline constexpr double membership     = 1e-9;  // |det-1| and form residual
inline constexpr double trace_equality = 1e-8;  // max-norm on trace vectors
inline constexpr double conjugation    = 1e-7;  // ||M A M^-1 - A'||_max
inline constexpr double rank_relative  = 1e-6;  // singular-value cutoff, relative
inline constexpr double signature_zero = 1e-8;  // Gram eigenvalue zero threshold
inline constexpr double isometry       = 1e-7;  // eigenvalue modulus vs 1
inline constexpr double jacobian_step  = 1e-5;  // finite-difference step
}  // namespace tol

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularMatrix : Error {
  using Error::Error;
};
struct NotUnimodular : Error {
  using Error::Error;
};
struct FlavorMismatch : Error {
  using Error::Error;
};
struct ConvergenceFailure : Error {
  using Error::Error;
};
struct ToleranceAmbiguous : Error {
  using Error::Error;
};
struct CaseMismatch : Error {
  using Error::Error;
};
struct NotLoxodromic : Error {
  using Error::Error;
};
struct NotIrreducible : Error {
  using Error::Error;
};
struct DecompositionFailed : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

// Thrown by find_conjugator when the intertwiner space contains no invertible
// element; the kernel dimension is the evidence.
struct NoConjugator : Error {
  explicit NoConjugator(const std::string& what, int kernel_dim)
      : Error(what), kernel_dimension(kernel_dim) {}
  int kernel_dimension;
};

}  // namespace tracepair
