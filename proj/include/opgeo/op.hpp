#pragma once

#include <variant>

#include "opgeo/core.hpp"
#include "opgeo/power_law.hpp"

namespace opgeo {

enum class Backend { dense, symbolic };

/// Operator on one copy of the truncated index space (dimension n): either a
/// dense complex matrix or an exact power-law diagonal. All four blocks of a
/// BlockOperator are values of this type; in the paired bases (e_{-i} <-> e_i)
/// every symbolic block is diagonal, so symbolic block algebra is entrywise.
class Op {
 public:
  Op() : n_(0), v_(PowerLawDiagonal{}) {}
  static Op dense(Matrix m);
  static Op diag(int n, PowerLawDiagonal law);
  static Op zero(int n, Backend backend);
  static Op identity(int n, Backend backend);

  int dim() const { return n_; }
  Backend backend() const {
    return std::holds_alternative<Matrix>(v_) ? Backend::dense : Backend::symbolic;
  }
  bool is_diag() const { return backend() == Backend::symbolic; }
  bool is_zero() const;

  const Matrix& matrix() const;
  const PowerLawDiagonal& law() const;
  Matrix to_matrix() const;
  Op materialized() const { return Op::dense(to_matrix()); }

  Op adjoint() const;
  double sup_norm() const;  // operator norm at truncation

  friend Op operator+(const Op& x, const Op& y);
  friend Op operator-(const Op& x, const Op& y);
  friend Op operator*(const Op& x, const Op& y);
  friend Op operator*(Complex s, const Op& x);
  Op operator-() const { return Complex(-1.0) * *this; }

 private:
  int n_;
  std::variant<Matrix, PowerLawDiagonal> v_;
};

/// (1 + a)^{-1}. Dense: direct solve. Symbolic: 1 + Neumann series with the
/// exponent cutoff contract of neumann_inverse_rest.
Op inverse_one_plus(const Op& a, double cutoff = kSeriesCutoff);

/// Full inverse. Dense only, or symbolic of the form c0(1 + decaying).
Op inverse(const Op& a, double cutoff = kSeriesCutoff);

/// Singular values at truncation, nonincreasing. Symbolic laws must be
/// evaluated entrywise (exact |d_n| sorted).
RealVector op_singular_values(const Op& a);

}  // namespace opgeo
