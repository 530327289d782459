#include "opgeo/grassmannian.hpp"

#include <cmath>

namespace opgeo {

namespace {

void define_slot(SymbolTable& t) { t.define(kSlotZCheck, kWeightTwoInf); }

void require_one_inf(const Op& a, const char* what) {
  if (!a.is_diag() || a.law().is_zero()) return;
  if (a.law().min_exponent() < 1.0 - 1e-9)
    throw DomainError(std::string(what) + ": expected at least n^{-1} decay");
}

void require_invertible(const Op& a, const char* what) {
  const RealVector sv = op_singular_values(a);
  if (sv[sv.size() - 1] < 1e-8) throw DomainError(std::string(what) + " is singular");
}

}  // namespace

ExtendedElement::ExtendedElement(BlockOperator gamma_, Op q_, bool validate)
    : gamma(std::move(gamma_)), q(std::move(q_)) {
  if (gamma.n() != q.dim()) throw TruncationMismatch("gamma/q dimensions differ");
  if (!validate) return;
  const RealVector sv = singular_values(gamma);
  if (sv[sv.size() - 1] < 1e-8) throw DomainError("gamma is singular");
  require_invertible(q, "q");
  if (gamma.backend() == Backend::symbolic) {
    if (!gamma.b().law().is_zero() && gamma.b().law().min_exponent() < 0.5 - 1e-9)
      throw DomainError("[eps, gamma] decay slower than n^{-1/2}");
    if (!gamma.c().law().is_zero() && gamma.c().law().min_exponent() < 0.5 - 1e-9)
      throw DomainError("[eps, gamma] decay slower than n^{-1/2}");
    const Op defect = gamma.a() * inverse(q) - Op::identity(q.dim(), Backend::symbolic);
    require_one_inf(defect, "gamma_11 q^{-1} - 1");
  }
}

ExtendedElement extended_identity(int n, Backend backend) {
  return {BlockOperator::identity(n, backend), Op::identity(n, backend)};
}

ExtendedElement extended_product(const ExtendedElement& x, const ExtendedElement& y) {
  return {x.gamma * y.gamma, x.q * y.q, /*validate=*/false};
}

ExtendedElement make_extended(const BlockOperator& gamma, const Op& j) {
  require_one_inf(j, "j");
  return {gamma, gamma.a() * inverse_one_plus(j)};
}

BorelElement::BorelElement(BlockOperator beta_, Op r_, bool validate)
    : beta(std::move(beta_)), r(std::move(r_)) {
  if (!validate) return;
  if (!beta.c().is_zero()) throw DomainError("Borel element must have a zero lower-left block");
  const RealVector sv = singular_values(beta);
  if (sv[sv.size() - 1] < 1e-8) throw DomainError("beta is singular");
  require_invertible(r, "r");
  if (beta.backend() == Backend::symbolic) {
    const Op defect = beta.a() * inverse(r) - Op::identity(r.dim(), Backend::symbolic);
    require_one_inf(defect, "beta_11 r^{-1} - 1");
  }
}

GrassmannSection gs_constant(Complex c) { return {FormalSum::constant(c)}; }

GrassmannSection gs_g1(const std::string& a, SymbolTable& t) {
  define_slot(t);
  t.define(a, kWeightTwoInf);
  return {FormalSum::trace(Word{a, kSlotZCheck}, t)};
}

GrassmannSection gs_g2(const std::string& b, const std::string& bp, SymbolTable& t) {
  define_slot(t);
  t.define(b, kWeightBounded);
  t.define(bp, kWeightBounded);
  return {FormalSum::trace(Word{b, kSlotZCheck, bp, kSlotZCheck}, t)};
}

GrassmannSection gs_product(const GrassmannSection& x, const GrassmannSection& y) {
  return {x.body * y.body};
}

namespace {

ValueBand det_factor(const ExtendedElement& e, double hbar, const DixmierScheme& scheme) {
  const Op arg =
      e.gamma.a() * inverse(e.q) - Op::identity(e.q.dim(), e.q.backend());
  return exp_band(ValueBand::from(det_omega(arg, scheme).log_value).scaled(Complex(1.0 / hbar)));
}

}  // namespace

ValueBand section_eval(const GrassmannSection& psi, const ExtendedElement& e, double hbar,
                       SymbolTable t, const DixmierScheme& scheme) {
  if (hbar == 0.0) throw DomainError("hbar must be nonzero");
  define_slot(t);
  t.bind(kSlotZCheck, e.gamma.c() * inverse(e.q));
  return det_factor(e, hbar, scheme) * evaluate(psi.body, t, scheme);
}

VerificationReport check_equivariance(const GrassmannSection& psi, const ExtendedElement& e,
                                      const BorelElement& b, double hbar, const SymbolTable& t,
                                      const DixmierScheme& scheme) {
  VerificationReport r;
  r.identity = "sections are Borel-equivariant through the det factor";
  r.tolerance = 1e-9;
  r.ladder = scheme.checkpoints;

  const ValueBand lhs =
      section_eval(psi, extended_product(e, ExtendedElement(b.beta, b.r, false)), hbar, t, scheme);
  const Op arg = b.beta.a() * inverse(b.r) - Op::identity(b.r.dim(), b.r.backend());
  const ValueBand rho =
      exp_band(ValueBand::from(det_omega(arg, scheme).log_value).scaled(Complex(1.0 / hbar)));
  const ValueBand rhs = rho * section_eval(psi, e, hbar, t, scheme);

  if (!lhs.measurable || !rhs.measurable) {
    r.status = Status::inconclusive;
    return r;
  }
  r.absorb(std::max(0.0, std::abs(lhs.v - rhs.v) - (lhs.hw + rhs.hw)));
  return r;
}

ValueBand left_rep_eval(const ExtendedElement& lambda, const GrassmannSection& psi,
                        const ExtendedElement& e, double hbar, const SymbolTable& t,
                        const DixmierScheme& scheme) {
  return section_eval(psi, extended_product(lambda, e), hbar, t, scheme);
}

FormalExtended FormalExtended::symbols(const std::string& prefix, SymbolTable& t) {
  define_slot(t);
  t.define(prefix + "_11", kWeightBounded);
  t.define(prefix + "_12", kWeightTwoInf);
  t.define(prefix + "_21", kWeightTwoInf);
  t.define(prefix + "_22", kWeightBounded);
  t.define(prefix + "_s", kWeightOneInf);
  FormalExtended f{nc_sym(prefix + "_11"), nc_sym(prefix + "_12"), nc_sym(prefix + "_21"),
                   nc_sym(prefix + "_22"), {}};
  f.r = nc_add(f.u11, nc_sym(prefix + "_s"));
  return f;
}

FormalExtended FormalExtended::scaled(Complex s) const {
  return {nc_scale(s, u11), nc_scale(s, u12), nc_scale(s, u21), nc_scale(s, u22),
          nc_scale(s, r)};
}

GrassmannSection rhat_action(const FormalExtended& u, const GrassmannSection& psi, double hbar,
                             const SymbolTable& t) {
  if (hbar == 0.0) throw DomainError("hbar must be nonzero");
  const NCPoly slot = nc_sym(kSlotZCheck);
  const NCPoly repl = nc_sub(nc_add(u.u21, nc_mul(u.u22, slot)), nc_mul(slot, u.r));
  FormalSum scalar;
  for (const auto& [w, c] : nc_mul(u.u12, slot)) scalar.add_product({w}, c, t);
  return {derive(psi.body, kSlotZCheck, repl, t) +
          Complex(-1.0 / hbar) * (scalar * psi.body)};
}

FormalSum rhat_central(const FormalExtended& u, const FormalExtended& v, double hbar,
                       const SymbolTable& t) {
  FormalSum s;
  for (const auto& [w, c] : nc_mul(u.u21, v.u12)) s.add_product({w}, c, t);
  for (const auto& [w, c] : nc_mul(u.u12, v.u21)) s.add_product({w}, -c, t);
  return Complex(-1.0 / hbar) * s;
}

VerificationReport check_rhat_commutator(const FormalExtended& u, const FormalExtended& v,
                                         const std::vector<GrassmannSection>& corpus,
                                         double hbar, const SymbolTable& t) {
  VerificationReport r;
  r.identity = "[rhat(u,r), rhat(v,p)] = rhat([v,u],[p,r]) + central scalar";
  r.tolerance = 1e-10;

  const FormalBlock bracket = block_commutator(u.block(), v.block());
  FormalExtended minus_bracket{bracket.a, bracket.b, bracket.c, bracket.d,
                               nc_commutator(u.r, v.r)};
  minus_bracket = minus_bracket.scaled(Complex(-1.0));
  const FormalSum central = rhat_central(u, v, hbar, t);

  for (const GrassmannSection& psi : corpus) {
    const FormalSum lhs = rhat_action(u, rhat_action(v, psi, hbar, t), hbar, t).body -
                          rhat_action(v, rhat_action(u, psi, hbar, t), hbar, t).body;
    const FormalSum rhs =
        rhat_action(minus_bracket, psi, hbar, t).body + central * psi.body;
    r.absorb(lhs.max_coeff_diff(rhs));
  }
  return r;
}

TraceEstimate central_extension_scalar(const BlockOperator& u, const Op& r,
                                       const DixmierScheme& scheme) {
  return dixmier_trace_op(u.a() - r, scheme);
}

VerificationReport check_reduced_quotient_action(const GrassmannSection& psi,
                                                 const ExtendedElement& e,
                                                 const ExtendedElement& small, double hbar,
                                                 const SymbolTable& t,
                                                 const DixmierScheme& scheme) {
  VerificationReport r;
  r.identity = "sections descend to the quotient by the small subgroup";
  r.tolerance = 1e-10;
  r.ladder = scheme.checkpoints;
  if (small.gamma.backend() == Backend::symbolic && !small.gamma.c().is_zero() &&
      small.gamma.c().law().min_exponent() < 0.5 + 1e-9)
    throw DomainError("small element needs a rapidly decaying lower-left block");

  const ValueBand lhs = section_eval(psi, extended_product(e, small), hbar, t, scheme);
  const Op arg =
      small.gamma.a() * inverse(small.q) - Op::identity(small.q.dim(), small.q.backend());
  const ValueBand onedim =
      exp_band(ValueBand::from(det_omega(arg, scheme).log_value).scaled(Complex(1.0 / hbar)));
  const ValueBand rhs = onedim * section_eval(psi, e, hbar, t, scheme);

  if (!lhs.measurable || !rhs.measurable) {
    r.status = Status::inconclusive;
    return r;
  }
  r.absorb(std::max(0.0, std::abs(lhs.v - rhs.v) - (lhs.hw + rhs.hw)));
  return r;
}

}  // namespace opgeo
