#include "opgeo/matrix_functions.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "opgeo/ideals.hpp"

namespace opgeo {

QuadratureRule QuadratureRule::algebraic(int nodes, double tol) {
  QuadratureRule r;
  r.substitution = Substitution::algebraic;
  r.node_count = nodes;
  r.tolerance = tol;
  return r;
}

QuadratureRule QuadratureRule::exponential(int nodes, double tol) {
  QuadratureRule r;
  r.substitution = Substitution::singularity_absorbing;
  r.node_count = nodes;
  r.tolerance = tol;
  return r;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n over [-1,1], standard cosine initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = 0.5 * (1.0 - x);  // map to (0,1), ascending
    weights[i] = 1.0 / ((1.0 - x * x) * pp * pp);
  }
}

namespace {

struct SpdInfo {
  double eig_min;
  double eig_max;
};

SpdInfo require_spd(const Matrix& a, double floor = 1e-10) {
  if (a.rows() != a.cols()) throw DomainError("matrix must be square");
  if ((a - a.adjoint()).norm() > 1e-10 * (1.0 + a.norm()))
    throw DomainError("matrix must be Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo < floor) throw DomainError("matrix must be positive definite");
  return {lo, hi};
}

// One pass of the algebraic rule lambda = s (t/(1-t))^2 for the square root:
// (1/pi) Int lambda^{-1/2} A (lambda+A)^{-1} dlambda
//   = (2 sqrt(s)/pi) Int_0^1 A (lambda(t)+A)^{-1} (1-t)^{-2} dt.
Matrix sqrt_pass(const Matrix& a, double s, int n) {
  std::vector<double> t, w;
  gauss_legendre(n, t, w);
  const int dim = static_cast<int>(a.rows());
  const Matrix id = Matrix::Identity(dim, dim);
  Matrix acc = Matrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    const double r = t[i] / (1.0 - t[i]);
    const double lambda = s * r * r;
    const double jac = 1.0 / ((1.0 - t[i]) * (1.0 - t[i]));
    acc += w[i] * jac * (a * (lambda * id + a).partialPivLu().inverse());
  }
  return (2.0 * std::sqrt(s) / M_PI) * acc;
}

// One trapezoid pass of lambda = s e^x for the fractional power:
// (sin(alpha pi)/pi) Int lambda^{alpha-1} (lambda+A)^{-1} A dlambda
//   = (sin(alpha pi)/pi) h Sum_j lambda_j^alpha (lambda_j+A)^{-1} A.
Matrix frac_pass(const Matrix& a, double alpha, double s, double h) {
  const double tol_exp = 36.0;  // e^{-36} ~ 2e-16 tail cut
  const int k_neg = static_cast<int>(std::ceil(tol_exp / (alpha * h)));
  const int k_pos = static_cast<int>(std::ceil(tol_exp / ((1.0 - alpha) * h)));
  const int dim = static_cast<int>(a.rows());
  const Matrix id = Matrix::Identity(dim, dim);
  Matrix acc = Matrix::Zero(dim, dim);
  for (int j = -k_neg; j <= k_pos; ++j) {
    const double lambda = s * std::exp(j * h);
    acc += std::pow(lambda, alpha) * ((lambda * id + a).partialPivLu().inverse() * a);
  }
  return (std::sin(alpha * M_PI) / M_PI) * h * acc;
}

Matrix log_pass(const Matrix& a, int n) {
  std::vector<double> t, w;
  gauss_legendre(n, t, w);
  const int dim = static_cast<int>(a.rows());
  const Matrix id = Matrix::Identity(dim, dim);
  Matrix acc = Matrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i)
    acc += w[i] * ((1.0 - t[i]) * id + t[i] * a).partialPivLu().inverse();
  return (a - id) * acc;
}

}  // namespace

Matrix sqrt_integral(const Matrix& a, const QuadratureRule& rule) {
  const SpdInfo info = require_spd(a);
  const double s = std::sqrt(info.eig_min * info.eig_max);
  Matrix prev = sqrt_pass(a, s, rule.node_count);
  for (int n = 2 * rule.node_count; n <= rule.max_nodes; n *= 2) {
    const Matrix cur = sqrt_pass(a, s, n);
    if ((cur - prev).norm() <= rule.tolerance * std::max(1.0, cur.norm())) return cur;
    prev = cur;
  }
  throw PrecisionError("square-root quadrature failed node-doubling convergence");
}

Matrix frac_power(const Matrix& a, double alpha, const QuadratureRule& rule) {
  if (alpha <= 0.0 || alpha >= 1.0) throw DomainError("alpha must lie strictly inside (0,1)");
  const SpdInfo info = require_spd(a);
  const double s = std::sqrt(info.eig_min * info.eig_max);
  double h = 0.5;
  Matrix prev = frac_pass(a, alpha, s, h);
  for (int pass = 0; pass < 6; ++pass) {
    h *= 0.5;
    const Matrix cur = frac_pass(a, alpha, s, h);
    if ((cur - prev).norm() <= rule.tolerance * std::max(1.0, cur.norm())) return cur;
    prev = cur;
  }
  throw PrecisionError("fractional-power quadrature failed step-halving convergence");
}

Matrix log_integral(const Matrix& a, const QuadratureRule& rule) {
  require_spd(a);
  Matrix prev = log_pass(a, rule.node_count);
  for (int n = 2 * rule.node_count; n <= rule.max_nodes; n *= 2) {
    const Matrix cur = log_pass(a, n);
    if ((cur - prev).norm() <= rule.tolerance * std::max(1.0, cur.norm())) return cur;
    prev = cur;
  }
  throw PrecisionError("logarithm quadrature failed node-doubling convergence");
}

Matrix expm(const Matrix& a) { return a.exp(); }

PolarDecomposition polar(const Matrix& a) {
  Eigen::BDCSVD<Matrix> svd(a);
  if (svd.singularValues().minCoeff() < 1e-8)
    throw DomainError("polar decomposition needs min singular value >= 1e-8");
  const Matrix p = sqrt_integral(a.adjoint() * a);
  const Matrix u = a * p.partialPivLu().inverse();
  return {u, p};
}

Matrix retraction(const Matrix& a, double t) {
  const PolarDecomposition pd = polar(a);
  const Matrix logp = log_integral(pd.p);
  // exp of the Hermitian t log|A| through its spectral decomposition
  Eigen::SelfAdjointEigenSolver<Matrix> es(logp);
  const RealVector ev = es.eigenvalues();
  Matrix d = Matrix::Zero(ev.size(), ev.size());
  for (int i = 0; i < ev.size(); ++i) d(i, i) = std::exp(t * ev[i]);
  return pd.u * (es.eigenvectors() * d * es.eigenvectors().adjoint());
}

double combined_epsilon_norm(const BlockOperator& a) {
  // operator norm of the block-diagonal (anticommutator) part plus the
  // Marcinkiewicz norm of the mixing part [eps, A]
  const double diag_part =
      std::max(op_singular_values(a.a())[0], op_singular_values(a.d())[0]);
  return diag_part + marcinkiewicz_norm_value(epsilon_commutator(a), NormKind::two_inf);
}

VerificationReport check_continuity_bounds(const BlockOperator& a, const BlockOperator& b,
                                           double m) {
  VerificationReport r;
  r.identity = "Lipschitz bounds for the square root from the integral representation";
  r.tolerance = 1e-9;

  const Matrix fa = a.full();
  const Matrix fb = b.full();
  const Matrix diff = fa - fb;
  const double dn = diff.operatorNorm();
  if (dn < 1e-10) throw DomainError("pair too close: enforce a minimum separation");

  const Matrix ra = sqrt_integral(fa);
  const Matrix rb = sqrt_integral(fb);
  const double c_plain = 1.0 / (2.0 * std::sqrt(m));
  r.absorb(std::max(0.0, (ra - rb).operatorNorm() - c_plain * dn));

  // Marcinkiewicz bound on the mixing part:
  // ||[eps, A^{1/2}-B^{1/2}]||_{2,inf}
  //   <= ||[eps, A-B]||_{2,inf} / (2 sqrt(m)) + ||[eps, B]||_{2,inf} ||A-B|| / (4 m^{3/2}).
  const int n = a.n();
  auto from_full = [n](const Matrix& f) {
    return BlockOperator(Op::dense(f.topLeftCorner(n, n)), Op::dense(f.topRightCorner(n, n)),
                         Op::dense(f.bottomLeftCorner(n, n)),
                         Op::dense(f.bottomRightCorner(n, n)));
  };
  const double lhs =
      marcinkiewicz_norm_value(epsilon_commutator(from_full(ra - rb)), NormKind::two_inf);
  const double rhs =
      marcinkiewicz_norm_value(epsilon_commutator(from_full(diff)), NormKind::two_inf) /
          (2.0 * std::sqrt(m)) +
      marcinkiewicz_norm_value(epsilon_commutator(b), NormKind::two_inf) * dn /
          (4.0 * std::pow(m, 1.5));
  r.absorb(std::max(0.0, lhs - rhs));
  return r;
}

}  // namespace opgeo
