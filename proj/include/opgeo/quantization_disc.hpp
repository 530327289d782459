#pragma once

#include <string>
#include <vector>

#include "opgeo/disc_geometry.hpp"
#include "opgeo/trace_algebra.hpp"

namespace opgeo {

/// The Z slot of the Disc wave-function algebra (summability weight 1/2).
inline constexpr const char* kSlotZ = "Z";

/// Wave function: formal sum of products of trace atoms
///   T1(A) = Tr_omega(A Z)  (A in L^(2,inf)),
///   T2(B, B') = Tr_omega(B Z B' Z)  (B, B' bounded),
/// plus constants. Atoms with more than two Z's in one trace are rejected at
/// construction; the weight ledger drops trace-class arguments identically.
struct WaveFunction {
  FormalSum body;
};

WaveFunction wf_constant(Complex c);
WaveFunction wf_t1(const std::string& a, SymbolTable& t);
WaveFunction wf_t2(const std::string& b, const std::string& bp, SymbolTable& t);
WaveFunction wf_product(const WaveFunction& x, const WaveFunction& y);

/// Tr_omega applied to each word of a polynomial coefficient.
FormalSum trace_of(const NCPoly& p, const SymbolTable& t);

/// Numeric evaluation; requires kSlotZ and all coefficient symbols bound.
ValueBand evaluate_wave(const WaveFunction& psi, const SymbolTable& t,
                        const DixmierScheme& scheme);

/// Psi restricted to rapidly decaying Z equals its constant term.
VerificationReport check_null_orbit_constancy(const WaveFunction& psi, SymbolTable t,
                                              const std::vector<Op>& small_zs,
                                              const DixmierScheme& scheme);

/// rho_omega(g^{-1}) Psi at Z: det_omega^{-1/hbar}(d^{-1} c Z + 1) Psi(g o Z).
ValueBand rho_apply(const GroupElement& g, const WaveFunction& psi, SymbolTable t,
                    const DiscPoint& z, double hbar, const DixmierScheme& scheme);

/// log c_omega(g1, g2) with c = det_omega^{1/hbar}[(d1 d2)^{-1} c1 b2 + 1].
ValueBand group_cocycle_log(const GroupElement& g1, const GroupElement& g2, double hbar,
                            const DixmierScheme& scheme);
ValueBand group_cocycle(const GroupElement& g1, const GroupElement& g2, double hbar,
                        const DixmierScheme& scheme);

/// c(g1 g2, g3) c(g1, g2) = c(g1, g2 g3) c(g2, g3), also against the closed
/// single-determinant form of the combined argument.
VerificationReport check_group_cocycle_identity(const GroupElement& g1, const GroupElement& g2,
                                                const GroupElement& g3, double hbar,
                                                const DixmierScheme& scheme);

/// rho(g1^{-1}) rho(g2^{-1}) = c(g1^{-1}, g2^{-1}) rho((g2 g1)^{-1}) at Z.
VerificationReport check_representation_composition(const GroupElement& g1,
                                                    const GroupElement& g2,
                                                    const WaveFunction& psi, SymbolTable t,
                                                    const DiscPoint& z, double hbar,
                                                    const DixmierScheme& scheme);

/// Lie element with block coefficients as formal polynomials; alpha/delta
/// bounded, beta/gamma in L^(2,inf).
struct FormalLie {
  NCPoly alpha, beta, gamma, delta;

  /// Registers prefix_a/_b/_c/_d with the canonical weights.
  static FormalLie symbols(const std::string& prefix, SymbolTable& t);
  /// Optionally binds the four symbols to the blocks of a concrete element.
  static FormalLie bound_symbols(const std::string& prefix, SymbolTable& t,
                                 const BlockOperator& u);

  FormalBlock block() const { return {alpha, beta, gamma, delta}; }
  static FormalLie from_block(const FormalBlock& b) { return {b.a, b.b, b.c, b.d}; }
  FormalLie scaled(Complex s) const;
};

/// fhat_{-u} Psi = -i hbar [ L_W Psi - (1/hbar) Tr_omega(gamma Z) Psi ] with
/// W(Z) = alpha Z + beta - Z gamma Z - Z delta.
WaveFunction fhat_action(const FormalLie& u, const WaveFunction& psi, double hbar,
                         const SymbolTable& t);

/// c_omega(u1, u2) = Tr(gamma1 beta2 - beta1 gamma2) as a formal sum.
FormalSum lie_cocycle_formal(const FormalLie& u1, const FormalLie& u2, const SymbolTable& t);

/// [fhat_{-u1}, fhat_{-u2}] = i hbar fhat_{[u1,u2]} + i hbar c_omega(u1,u2),
/// coefficient-wise over the corpus.
VerificationReport check_commutator(const FormalLie& u1, const FormalLie& u2,
                                    const std::vector<WaveFunction>& corpus, double hbar,
                                    const SymbolTable& t);

/// Finite-difference derivative of rho along exp(t u) at t = 0 against the
/// fhat formula (dense data, Richardson-extrapolated symmetric differences).
VerificationReport check_infinitesimal_consistency(const BlockOperator& u, const FormalLie& fu,
                                                   const WaveFunction& psi, SymbolTable t,
                                                   const DiscPoint& z, double hbar,
                                                   const DixmierScheme& scheme);

}  // namespace opgeo
