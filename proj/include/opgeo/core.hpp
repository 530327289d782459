#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace opgeo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the operation's domain (indefinite matrix, boundary alpha, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A Dixmier-type trace was requested for an operator outside L^(1,inf).
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Quadrature or iteration failed to reach the requested accuracy.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A formal trace whose argument is not summable enough to be well defined.
class IllFormedTrace : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class TruncationMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace opgeo
