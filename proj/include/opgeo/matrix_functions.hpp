#pragma once

#include <vector>

#include "opgeo/block_operator.hpp"
#include "opgeo/report.hpp"

namespace opgeo {

/// Quadrature data for the half-line integral representations. `algebraic`
/// maps Gauss-Legendre nodes on (0,1) through lambda = s (t/(1-t))^2 (the
/// square absorbs the lambda^{-1/2} weight of the square-root integral);
/// `singularity_absorbing` is the exponential substitution lambda = s e^x
/// with a trapezoid rule, which absorbs lambda^{alpha-1} for every alpha in
/// (0,1). Node counts double until the result stabilizes.
struct QuadratureRule {
  enum class Substitution { algebraic, singularity_absorbing };

  Substitution substitution = Substitution::algebraic;
  int node_count = 64;
  double tolerance = 1e-10;
  int max_nodes = 4096;

  static QuadratureRule algebraic(int nodes = 64, double tol = 1e-10);
  static QuadratureRule exponential(int nodes = 64, double tol = 1e-10);
};

/// Gauss-Legendre nodes/weights on (0, 1).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// A^{1/2} = (1/pi) Int_0^inf lambda^{-1/2} A (lambda + A)^{-1} dlambda.
Matrix sqrt_integral(const Matrix& a, const QuadratureRule& rule = QuadratureRule::algebraic());

/// A^alpha = (sin(alpha pi)/pi) Int_0^inf lambda^{alpha-1} (lambda + A)^{-1} A dlambda.
Matrix frac_power(const Matrix& a, double alpha,
                  const QuadratureRule& rule = QuadratureRule::exponential());

/// log A = (A - I) Int_0^1 ((1-s) I + s A)^{-1} ds.
Matrix log_integral(const Matrix& a, const QuadratureRule& rule = QuadratureRule::algebraic());

/// Scaling-and-squaring Pade matrix exponential.
Matrix expm(const Matrix& a);

struct PolarDecomposition {
  Matrix u;  // unitary factor
  Matrix p;  // positive factor |A|
};

PolarDecomposition polar(const Matrix& a);

/// Homotopy A(t) = U_A exp(t log|A|); A(0) = U_A, A(1) = A.
Matrix retraction(const Matrix& a, double t);

/// Combined mixing norm ||diag([eps,A])||_op + ||[eps,A]||_{2,inf} used for
/// path-continuity measurements on the group.
double combined_epsilon_norm(const BlockOperator& a);

/// Lipschitz bounds from the integral representation with spectral floor m:
/// ||A^{1/2}-B^{1/2}|| <= ||A-B|| / (2 sqrt(m)) and the [eps,.] analogue
/// with constants 1/(2 sqrt(m)) and 1/(4 m^{3/2}).
VerificationReport check_continuity_bounds(const BlockOperator& a, const BlockOperator& b,
                                           double m);

}  // namespace opgeo
