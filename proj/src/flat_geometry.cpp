#include "opgeo/flat_geometry.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace opgeo {

namespace {

void require_two_inf(const Op& a, const char* what) {
  if (!a.is_diag() || a.law().is_zero()) return;
  if (a.law().min_exponent() < 0.5 - 1e-9)
    throw DomainError(std::string(what) + ": decay slower than n^{-1/2}");
}

void require_invertible(const Op& a, const char* what) {
  const RealVector sv = op_singular_values(a);
  if (sv[sv.size() - 1] < 1e-8) throw DomainError(std::string(what) + " is singular");
}

}  // namespace

QuotientPoint::QuotientPoint(Op z_) : z(std::move(z_)) {
  if (z.dim() <= 0) throw DomainError("empty quotient point");
  require_two_inf(z, "QuotientPoint");
}

TraceEstimate quotient_norm_estimate(const Op& z, const DixmierScheme& scheme) {
  if (z.is_diag()) return TraceEstimate::exact(std::abs(z.law().coeff_at(0.5)));
  scheme.validate();
  const RealVector mu = op_singular_values(z);
  std::vector<double> ratios;
  ratios.reserve(scheme.checkpoints.size());
  double sigma = 0.0, dsum = 0.0;
  int pos = 0;
  for (int nk : scheme.checkpoints) {
    if (nk > mu.size()) throw DomainError("checkpoint exceeds available truncation");
    for (; pos < nk; ++pos) {
      sigma += mu[pos];
      dsum += 1.0 / std::sqrt(static_cast<double>(pos + 1));
    }
    ratios.push_back(sigma / dsum);
  }
  const size_t tail = ratios.size() / 2;
  TraceEstimate e;
  e.value = ratios.back();
  double spread = 0.0;
  for (size_t i = tail; i < ratios.size(); ++i)
    spread = std::max(spread, std::abs(ratios[i] - ratios.back()));
  e.halfwidth = spread;
  e.fit_residual = spread;
  e.lower = ratios.back() - spread;
  e.upper = ratios.back() + spread;
  e.measurable = spread <= std::max(scheme.tolerance, 1e-3);
  return e;
}

bool quotient_equal(const Op& z1, const Op& z2, const DixmierScheme& scheme) {
  const TraceEstimate d = quotient_norm_estimate(z1 - z2, scheme);
  return std::abs(d.value) <= d.halfwidth + 1e-10;
}

AffineElement::AffineElement(Op e_, Op f_, Op l_, bool validate)
    : e(std::move(e_)), f(std::move(f_)), l(std::move(l_)) {
  if (e.dim() != f.dim() || e.dim() != l.dim())
    throw TruncationMismatch("affine element dimensions differ");
  if (!validate) return;
  require_invertible(e, "e");
  require_invertible(f, "f");
  require_two_inf(l, "l");
  if (e.is_diag()) {
    const Op de = e.adjoint() * e - Op::identity(e.dim(), Backend::symbolic);
    const Op df = f.adjoint() * f - Op::identity(f.dim(), Backend::symbolic);
    if (!de.is_zero() && de.law().min_exponent() < 1e-9)
      throw DomainError("e^dag e - 1 must be compact");
    if (!df.is_zero() && df.law().min_exponent() < 1e-9)
      throw DomainError("f^dag f - 1 must be compact");
  }
}

QuotientPoint affine_act(const AffineElement& a, const QuotientPoint& z) {
  return QuotientPoint(a.e * z.z * inverse(a.f) + a.l);
}

AffineElement affine_compose(const AffineElement& x, const AffineElement& y) {
  return {x.e * y.e, x.f * y.f, x.e * y.l * inverse(x.f) + x.l};
}

TraceEstimate flat_symplectic_pair(const Op& w1, const Op& w2, const DixmierScheme& scheme) {
  const TraceEstimate fwd = dixmier_trace_op(w1 * w2.adjoint(), scheme);
  const TraceEstimate bwd = dixmier_trace_op(w2 * w1.adjoint(), scheme);
  return scale_estimate(fwd + (-bwd), Complex(0.0, 1.0));
}

VerificationReport check_affine_invariance(const AffineElement& a, const Op& w1, const Op& w2,
                                           const DixmierScheme& scheme) {
  VerificationReport r;
  r.identity = "flat symplectic pairing is invariant under the affine action";
  r.tolerance = 1e-9;
  r.ladder = scheme.checkpoints;
  const Op fi = inverse(a.f);
  const TraceEstimate lhs = flat_symplectic_pair(a.e * w1 * fi, a.e * w2 * fi, scheme);
  const TraceEstimate rhs = flat_symplectic_pair(w1, w2, scheme);
  if (!lhs.measurable || !rhs.measurable) {
    r.status = Status::inconclusive;
    return r;
  }
  r.absorb(std::max(0.0, std::abs(lhs.value - rhs.value) - (lhs.halfwidth + rhs.halfwidth)));
  return r;
}

FlatLie::FlatLie(Op alpha_, Op delta_, Op beta_, bool validate)
    : alpha(std::move(alpha_)), delta(std::move(delta_)), beta(std::move(beta_)) {
  if (alpha.dim() != delta.dim() || alpha.dim() != beta.dim())
    throw TruncationMismatch("flat Lie data dimensions differ");
  if (!validate) return;
  const double scale = 1.0 + alpha.sup_norm() + delta.sup_norm();
  if ((alpha.adjoint() + alpha).sup_norm() > 1e-10 * scale ||
      (delta.adjoint() + delta).sup_norm() > 1e-10 * scale)
    throw DomainError("alpha and delta must be anti-Hermitian");
  require_two_inf(beta, "beta");
}

Op FlatLie::field_at(const Op& z) const { return alpha * z - z * delta + beta; }

FlatLie flat_bracket(const FlatLie& x, const FlatLie& y) {
  const Op a = x.alpha * y.alpha - y.alpha * x.alpha;
  const Op d = x.delta * y.delta - y.delta * x.delta;
  const Op b = x.alpha * y.beta + x.beta * y.delta - y.alpha * x.beta - y.beta * x.delta;
  return {a, d, b, /*validate=*/false};
}

FlatLie flat_restrict(const BlockOperator& u) { return {u.a(), u.d(), u.b()}; }

TraceEstimate flat_moment(const FlatLie& u, const Op& zbar, const DixmierScheme& scheme) {
  const Op zd = zbar.adjoint();
  const TraceEstimate sum = dixmier_trace_op(u.alpha * zbar * zd, scheme) +
                            (-dixmier_trace_op(zbar * u.delta * zd, scheme)) +
                            dixmier_trace_op(u.beta * zd, scheme) +
                            dixmier_trace_op(zbar * u.beta.adjoint(), scheme);
  return scale_estimate(sum, Complex(0.0, 1.0));
}

VerificationReport check_flat_poisson_central(const FlatLie& u1, const FlatLie& u2,
                                              const std::vector<Op>& ensemble,
                                              const DixmierScheme& scheme) {
  VerificationReport r;
  r.identity = "flat Poisson bracket reproduces the moment of the bracket plus central term";
  r.tolerance = 1e-9;
  r.ladder = scheme.checkpoints;
  const FlatLie bracket = flat_bracket(u1, u2);
  const TraceEstimate central = flat_symplectic_pair(u1.beta, u2.beta, scheme);
  for (const Op& z : ensemble) {
    const TraceEstimate lhs = flat_symplectic_pair(u1.field_at(z), u2.field_at(z), scheme);
    const TraceEstimate rhs = flat_moment(bracket, z, scheme) + central;
    if (!lhs.measurable || !rhs.measurable) {
      r.status = Status::inconclusive;
      continue;
    }
    r.absorb(std::max(0.0, std::abs(lhs.value - rhs.value) - (lhs.halfwidth + rhs.halfwidth)));
  }
  return r;
}

VerificationReport kaehler_collapse_check(const Op& z, const DixmierScheme& scheme) {
  VerificationReport r;
  r.identity = "Tr_omega log(1 - Z Z^dag) = -Tr_omega(Z Z^dag)";
  r.tolerance = 1e-9;
  r.ladder = scheme.checkpoints;
  if (z.sup_norm() >= 1.0) throw DomainError("Kaehler collapse needs ||Z|| < 1");
  const Op gram = z * z.adjoint();

  TraceEstimate lhs;
  if (gram.is_diag()) {
    lhs = dixmier_trace_op(Op::diag(z.dim(), log_one_plus(-gram.law(), kSeriesCutoff)), scheme);
  } else {
    const int n = z.dim();
    const Matrix arg = Matrix::Identity(n, n) - gram.to_matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> es(arg);
    Matrix d = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      if (es.eigenvalues()[i] <= 0.0) throw DomainError("1 - Z Z^dag not positive");
      d(i, i) = std::log(es.eigenvalues()[i]);
    }
    lhs = dixmier_trace_op(Op::dense(es.eigenvectors() * d * es.eigenvectors().adjoint()),
                           scheme);
  }
  const TraceEstimate rhs = -dixmier_trace_op(gram, scheme);
  if (!lhs.measurable || !rhs.measurable) {
    r.status = Status::inconclusive;
    return r;
  }
  r.absorb(std::max(0.0, std::abs(lhs.value - rhs.value) - (lhs.halfwidth + rhs.halfwidth)));
  return r;
}

QuotientPoint embed_disc_action(const GroupElement& g, const QuotientPoint& z) {
  return QuotientPoint((g.g.a() * z.z + g.g.b()) * inverse(g.g.d()));
}

VerificationReport check_moment_reduction(const BlockOperator& u, const DiscPoint& z,
                                          const DixmierScheme& scheme) {
  VerificationReport r;
  r.identity = "Disc moment map reduces to its flat expansion";
  r.tolerance = 1e-9;
  r.ladder = scheme.checkpoints;
  const TraceEstimate lhs = moment_map(u, phi_of_z(z), scheme);
  const Op& zz = z.z;
  const TraceEstimate rhs = dixmier_trace_op(u.a() * zz * zz.adjoint(), scheme) +
                            dixmier_trace_op(u.b() * zz.adjoint(), scheme) +
                            (-dixmier_trace_op(u.c() * zz, scheme)) +
                            (-dixmier_trace_op(u.d() * zz.adjoint() * zz, scheme));
  if (!lhs.measurable || !rhs.measurable) {
    r.status = Status::inconclusive;
    return r;
  }
  r.absorb(std::max(0.0, std::abs(lhs.value - rhs.value) - (lhs.halfwidth + rhs.halfwidth)));
  return r;
}

ValueBand flat_wavefunction_eval(const WaveFunction& psi, const Op& zbar, double hbar,
                                 SymbolTable t, const DixmierScheme& scheme) {
  if (hbar == 0.0) throw DomainError("hbar must be nonzero");
  const ValueBand pre = exp_band(
      ValueBand::from(dixmier_trace_op(zbar * zbar.adjoint(), scheme))
          .scaled(Complex(-1.0 / hbar)));
  t.bind(kSlotZ, zbar);
  return pre * evaluate(psi.body, t, scheme);
}

VerificationReport check_quotient_size_identity(const DixmierScheme& scheme) {
  VerificationReport r;
  r.identity = "the lower-left tail class separates cosets of the small subgroup";
  r.tolerance = 1e-10;
  r.ladder = scheme.checkpoints;
  const int n = 4096;
  const Op one = Op::identity(n, Backend::symbolic);
  const Op zero = Op::zero(n, Backend::symbolic);
  auto lower = [&](Complex c, double p) {
    return BlockOperator(one, zero, Op::diag(n, PowerLawDiagonal(c, p)), one);
  };

  const BlockOperator g1 = lower(Complex(1.0), 0.5);
  const BlockOperator g2 = lower(Complex(2.0), 0.5);
  const BlockOperator small = lower(Complex(1.0), 0.75);

  // same coset: right multiplication by a small-lower-block factor
  const BlockOperator g1s = g1 * small;
  const TraceEstimate same = quotient_norm_estimate(g1s.c() - g1.c(), scheme);
  r.absorb(std::abs(same.value));

  // distinct tail coefficients separate
  const TraceEstimate apart = quotient_norm_estimate(g2.c() - g1.c(), scheme);
  r.absorb(std::max(0.0, 1.0 - std::abs(apart.value)));

  // identity coset maps to the zero class
  r.absorb(std::abs(quotient_norm_estimate(zero, scheme).value));
  return r;
}

}  // namespace opgeo
