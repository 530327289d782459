#pragma once

#include <cstdint>
#include <vector>

#include "opgeo/core.hpp"

namespace opgeo {

/// One c * n^{-p} contribution to a diagonal entry law.
struct PowerLawTerm {
  Complex coeff;
  double exponent = 0.0;
};

/// Exact diagonal entry law d_n = sum_k c_k n^{-p_k}, n >= 1.
///
/// The canonical use is a nonnegative, nonincreasing singular-value law
/// (coefficients real >= 0, exponents > 0). Intermediate block arithmetic is
/// allowed to carry complex coefficients and a p = 0 (constant) term so that
/// identity blocks, signed combinations and Neumann series stay in closed
/// form; exponents add under multiplication and terms merge under addition.
class PowerLawDiagonal {
 public:
  PowerLawDiagonal() = default;  // zero law
  PowerLawDiagonal(Complex coeff, double exponent);
  explicit PowerLawDiagonal(std::vector<PowerLawTerm> terms);

  static PowerLawDiagonal constant(Complex c) { return {c, 0.0}; }
  static PowerLawDiagonal one() { return constant(1.0); }

  const std::vector<PowerLawTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Smallest exponent among surviving terms; +inf for the zero law.
  double min_exponent() const;
  /// Coefficient of the n^{-p} term (0 if absent, matched within 1e-9).
  Complex coeff_at(double p) const;
  bool has_constant_term() const;

  Complex entry(std::int64_t n) const;
  Vector entries(int n) const;
  /// max |d_k| over 1..n (diagonal sup norm at truncation).
  double sup_abs(int n) const;

  /// True when |d_n| is nonincreasing over 1..n.
  bool nonincreasing_abs(int n) const;
  /// True when every coefficient is real and >= 0.
  bool nonnegative_coeffs() const;

  PowerLawDiagonal conjugated() const;
  /// Drops every term with exponent > cutoff. Safe for Dixmier-trace and
  /// classification work as long as cutoff > 1.
  PowerLawDiagonal truncated_above(double cutoff) const;

  friend PowerLawDiagonal operator+(const PowerLawDiagonal& x, const PowerLawDiagonal& y);
  friend PowerLawDiagonal operator-(const PowerLawDiagonal& x, const PowerLawDiagonal& y);
  friend PowerLawDiagonal operator*(const PowerLawDiagonal& x, const PowerLawDiagonal& y);
  friend PowerLawDiagonal operator*(Complex s, const PowerLawDiagonal& x);
  PowerLawDiagonal operator-() const { return Complex(-1.0) * *this; }

 private:
  void normalize();
  std::vector<PowerLawTerm> terms_;  // sorted by exponent, merged
};

/// (1 + a)^{-1} - 1 for a law with strictly positive exponents, as a Neumann
/// series truncated above `cutoff`; exact for all traces read at p <= cutoff.
PowerLawDiagonal neumann_inverse_rest(const PowerLawDiagonal& a, double cutoff);

/// log(1 + a) as a truncated series under the same cutoff contract.
PowerLawDiagonal log_one_plus(const PowerLawDiagonal& a, double cutoff);

/// Default series cutoff: generous margin above the p = 1 trace window.
inline constexpr double kSeriesCutoff = 3.0;

}  // namespace opgeo
