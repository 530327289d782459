#include "opgeo/quantization_disc.hpp"

#include <cmath>

#include "opgeo/matrix_functions.hpp"

namespace opgeo {

namespace {

void define_slot(SymbolTable& t) { t.define(kSlotZ, kWeightTwoInf); }

void require_z_count(const Word& w, int max_z) {
  int count = 0;
  for (const std::string& g : w)
    if (g == kSlotZ) ++count;
  if (count > max_z)
    throw DomainError("higher powers of Z in one trace are rejected at construction");
}

}  // namespace

WaveFunction wf_constant(Complex c) { return {FormalSum::constant(c)}; }

WaveFunction wf_t1(const std::string& a, SymbolTable& t) {
  define_slot(t);
  t.define(a, kWeightTwoInf);
  const Word w{a, kSlotZ};
  require_z_count(w, 2);
  return {FormalSum::trace(w, t)};
}

WaveFunction wf_t2(const std::string& b, const std::string& bp, SymbolTable& t) {
  define_slot(t);
  t.define(b, kWeightBounded);
  t.define(bp, kWeightBounded);
  const Word w{b, kSlotZ, bp, kSlotZ};
  require_z_count(w, 2);
  return {FormalSum::trace(w, t)};
}

WaveFunction wf_product(const WaveFunction& x, const WaveFunction& y) {
  return {x.body * y.body};
}

FormalSum trace_of(const NCPoly& p, const SymbolTable& t) {
  FormalSum out;
  for (const auto& [w, c] : p) out.add_product({w}, c, t);
  return out;
}

ValueBand evaluate_wave(const WaveFunction& psi, const SymbolTable& t,
                        const DixmierScheme& scheme) {
  return evaluate(psi.body, t, scheme);
}

VerificationReport check_null_orbit_constancy(const WaveFunction& psi, SymbolTable t,
                                              const std::vector<Op>& small_zs,
                                              const DixmierScheme& scheme) {
  VerificationReport r;
  r.identity = "wave functions are constant along rapidly decaying directions";
  r.tolerance = 1e-10;
  r.ladder = scheme.checkpoints;
  const Complex expected = psi.body.constant_term();
  for (const Op& z : small_zs) {
    t.bind(kSlotZ, z);
    const ValueBand v = evaluate(psi.body, t, scheme);
    if (!v.measurable) {
      r.status = Status::inconclusive;
      continue;
    }
    r.absorb(std::max(0.0, std::abs(v.v - expected) - v.hw));
  }
  return r;
}

ValueBand rho_apply(const GroupElement& g, const WaveFunction& psi, SymbolTable t,
                    const DiscPoint& z, double hbar, const DixmierScheme& scheme) {
  if (hbar == 0.0) throw DomainError("hbar must be nonzero");
  const DiscPoint gz = act(g, z);
  t.bind(kSlotZ, gz.z);
  const ValueBand val = evaluate(psi.body, t, scheme);
  const Op arg = inverse(g.g.d()) * g.g.c() * z.z;
  const ValueBand logf =
      ValueBand::from(det_omega(arg, scheme).log_value).scaled(Complex(-1.0 / hbar));
  return exp_band(logf) * val;
}

ValueBand group_cocycle_log(const GroupElement& g1, const GroupElement& g2, double hbar,
                            const DixmierScheme& scheme) {
  if (hbar == 0.0) throw DomainError("hbar must be nonzero");
  const Op arg = inverse(g2.g.d()) * inverse(g1.g.d()) * g1.g.c() * g2.g.b();
  return ValueBand::from(det_omega(arg, scheme).log_value).scaled(Complex(1.0 / hbar));
}

ValueBand group_cocycle(const GroupElement& g1, const GroupElement& g2, double hbar,
                        const DixmierScheme& scheme) {
  return exp_band(group_cocycle_log(g1, g2, hbar, scheme));
}

VerificationReport check_group_cocycle_identity(const GroupElement& g1, const GroupElement& g2,
                                                const GroupElement& g3, double hbar,
                                                const DixmierScheme& scheme) {
  VerificationReport r;
  r.identity = "group 2-cocycle identity (and its closed determinant form)";
  r.tolerance = 1e-9;
  r.ladder = scheme.checkpoints;

  const GroupElement g12(g1.g * g2.g, g1.kind);
  const GroupElement g23(g2.g * g3.g, g2.kind);
  const ValueBand lhs =
      group_cocycle_log(g12, g3, hbar, scheme) + group_cocycle_log(g1, g2, hbar, scheme);
  const ValueBand rhs =
      group_cocycle_log(g1, g23, hbar, scheme) + group_cocycle_log(g2, g3, hbar, scheme);

  const Op d1i = inverse(g1.g.d()), d2i = inverse(g2.g.d()), d3i = inverse(g3.g.d());
  const Op closed_arg = d3i * d2i * d1i * g1.g.c() * g2.g.a() * g3.g.b() +
                        d3i * d2i * g2.g.c() * g3.g.b() +
                        d2i * d1i * g1.g.c() * g2.g.b();
  const ValueBand closed =
      ValueBand::from(det_omega(closed_arg, scheme).log_value).scaled(Complex(1.0 / hbar));

  if (!lhs.measurable || !rhs.measurable || !closed.measurable) {
    r.status = Status::inconclusive;
    return r;
  }
  r.absorb(std::max(0.0, std::abs(lhs.v - rhs.v) - (lhs.hw + rhs.hw)));
  r.absorb(std::max(0.0, std::abs(lhs.v - closed.v) - (lhs.hw + closed.hw)));
  return r;
}

VerificationReport check_representation_composition(const GroupElement& g1,
                                                    const GroupElement& g2,
                                                    const WaveFunction& psi, SymbolTable t,
                                                    const DiscPoint& z, double hbar,
                                                    const DixmierScheme& scheme) {
  VerificationReport r;
  r.identity = "rho composes projectively with the determinant cocycle";
  r.tolerance = 1e-9;
  r.ladder = scheme.checkpoints;

  // lhs = rho(g1^{-1}) applied to the function rho(g2^{-1}) Psi, at Z
  const DiscPoint g1z = act(g1, z);
  const ValueBand inner = rho_apply(g2, psi, t, g1z, hbar, scheme);
  const Op arg1 = inverse(g1.g.d()) * g1.g.c() * z.z;
  const ValueBand pre1 =
      exp_band(ValueBand::from(det_omega(arg1, scheme).log_value).scaled(Complex(-1.0 / hbar)));
  const ValueBand lhs = pre1 * inner;

  const GroupElement g21(g2.g * g1.g, g1.kind);
  const ValueBand coc =
      group_cocycle(group_inverse(g1), group_inverse(g2), hbar, scheme);
  const ValueBand rhs = coc * rho_apply(g21, psi, t, z, hbar, scheme);

  if (!lhs.measurable || !rhs.measurable) {
    r.status = Status::inconclusive;
    return r;
  }
  r.absorb(std::max(0.0, std::abs(lhs.v - rhs.v) - (lhs.hw + rhs.hw)));
  return r;
}

FormalLie FormalLie::symbols(const std::string& prefix, SymbolTable& t) {
  define_slot(t);
  t.define(prefix + "_a", kWeightBounded);
  t.define(prefix + "_b", kWeightTwoInf);
  t.define(prefix + "_c", kWeightTwoInf);
  t.define(prefix + "_d", kWeightBounded);
  return {nc_sym(prefix + "_a"), nc_sym(prefix + "_b"), nc_sym(prefix + "_c"),
          nc_sym(prefix + "_d")};
}

FormalLie FormalLie::bound_symbols(const std::string& prefix, SymbolTable& t,
                                   const BlockOperator& u) {
  FormalLie f = symbols(prefix, t);
  t.bind(prefix + "_a", u.a());
  t.bind(prefix + "_b", u.b());
  t.bind(prefix + "_c", u.c());
  t.bind(prefix + "_d", u.d());
  return f;
}

FormalLie FormalLie::scaled(Complex s) const {
  return {nc_scale(s, alpha), nc_scale(s, beta), nc_scale(s, gamma), nc_scale(s, delta)};
}

WaveFunction fhat_action(const FormalLie& u, const WaveFunction& psi, double hbar,
                         const SymbolTable& t) {
  if (hbar == 0.0) throw DomainError("hbar must be nonzero");
  const NCPoly zslot = nc_sym(kSlotZ);
  const NCPoly w = nc_sub(nc_add(nc_mul(u.alpha, zslot), u.beta),
                          nc_add(nc_mul(nc_mul(zslot, u.gamma), zslot), nc_mul(zslot, u.delta)));
  const FormalSum lie = derive(psi.body, kSlotZ, w, t);
  const FormalSum scalar = trace_of(nc_mul(u.gamma, zslot), t);
  const FormalSum inner = lie - Complex(1.0 / hbar) * (scalar * psi.body);
  return {Complex(0.0, -hbar) * inner};
}

FormalSum lie_cocycle_formal(const FormalLie& u1, const FormalLie& u2, const SymbolTable& t) {
  return trace_of(nc_mul(u1.gamma, u2.beta), t) - trace_of(nc_mul(u1.beta, u2.gamma), t);
}

VerificationReport check_commutator(const FormalLie& u1, const FormalLie& u2,
                                    const std::vector<WaveFunction>& corpus, double hbar,
                                    const SymbolTable& t) {
  VerificationReport r;
  r.identity = "[fhat_{-u1}, fhat_{-u2}] = i hbar fhat_{-[u1,u2]} - hbar c(u1,u2)";
  r.tolerance = 1e-10;
  const FormalLie bracket = FormalLie::from_block(block_commutator(u1.block(), u2.block()));
  const FormalSum central = lie_cocycle_formal(u1, u2, t);
  for (const WaveFunction& psi : corpus) {
    const FormalSum lhs = fhat_action(u1, fhat_action(u2, psi, hbar, t), hbar, t).body -
                          fhat_action(u2, fhat_action(u1, psi, hbar, t), hbar, t).body;
    const FormalSum rhs =
        Complex(0.0, hbar) * fhat_action(bracket, psi, hbar, t).body -
        Complex(hbar) * (central * psi.body);
    r.absorb(lhs.max_coeff_diff(rhs));
  }
  return r;
}

VerificationReport check_infinitesimal_consistency(const BlockOperator& u, const FormalLie& fu,
                                                   const WaveFunction& psi, SymbolTable t,
                                                   const DiscPoint& z, double hbar,
                                                   const DixmierScheme& scheme) {
  VerificationReport r;
  r.identity = "derivative of rho along exp(t u) matches the fhat generator";
  r.tolerance = 1e-4;
  r.ladder = scheme.checkpoints;

  // The path s -> rho(exp(s u)) Psi at Z has derivative -[L_W - (1/hbar)
  // Tr(gamma Z)] Psi at s = 0, which is -(i/hbar) fhat_{-u} Psi.
  SymbolTable tz = t;
  tz.bind(kSlotZ, z.z);
  const ValueBand rhs =
      evaluate(fhat_action(fu, psi, hbar, t).body, tz, scheme).scaled(Complex(0.0, -1.0 / hbar));

  // Path with velocity -u at s = 0; the affine family keeps symbolic inputs
  // exact (the generator only sees the first-order jet of the family).
  const BlockOperator id = BlockOperator::identity(u.n(), u.backend());
  auto value_at = [&](double s) {
    const GroupElement g(id - Complex(s) * u, GroupKind::general_linear, /*validate=*/false);
    return rho_apply(g, psi, t, z, hbar, scheme);
  };
  auto sym_diff = [&](double s) {
    const ValueBand hi = value_at(s);
    const ValueBand lo = value_at(-s);
    return (hi - lo).scaled(Complex(1.0 / (2.0 * s)));
  };
  const double h = 1e-2;
  const ValueBand d1 = sym_diff(h);
  const ValueBand d2 = sym_diff(0.5 * h);
  const ValueBand richardson =
      d2.scaled(Complex(4.0 / 3.0)) - d1.scaled(Complex(1.0 / 3.0));

  if (!rhs.measurable || !richardson.measurable) {
    r.status = Status::inconclusive;
    return r;
  }
  r.absorb(std::abs(richardson.v - rhs.v));
  return r;
}

}  // namespace opgeo
