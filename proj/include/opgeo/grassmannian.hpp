#pragma once

#include <string>
#include <vector>

#include "opgeo/disc_geometry.hpp"
#include "opgeo/trace_algebra.hpp"

namespace opgeo {

/// The section slot: the matrix argument gamma_21 q^{-1} (weight 1/2).
inline constexpr const char* kSlotZCheck = "Zc";

/// Element of the extended group: an invertible gamma with L^(2,inf)
/// off-diagonal blocks and an invertible q on H_- with
/// gamma_11 q^{-1} - 1 in L^(1,inf).
struct ExtendedElement {
  BlockOperator gamma;
  Op q;

  ExtendedElement(BlockOperator gamma_, Op q_, bool validate = true);
};

ExtendedElement extended_identity(int n, Backend backend);
/// Componentwise product (x.gamma y.gamma, x.q y.q).
ExtendedElement extended_product(const ExtendedElement& x, const ExtendedElement& y);
/// Canonical q-recipe: q = gamma_11 (1 + j)^{-1} with j an L^(1,inf) law.
ExtendedElement make_extended(const BlockOperator& gamma, const Op& j);

/// Borel element: upper-triangular beta (beta_21 = 0) with r on H_- and
/// beta_11 r^{-1} - 1 in L^(1,inf).
struct BorelElement {
  BlockOperator beta;
  Op r;

  BorelElement(BlockOperator beta_, Op r_, bool validate = true);
};

/// Equivariant section: det_omega^{1/hbar}(gamma_11 q^{-1}) times a formal
/// sum of trace atoms in the slot Zc = gamma_21 q^{-1}.
struct GrassmannSection {
  FormalSum body;
};

GrassmannSection gs_constant(Complex c);
GrassmannSection gs_g1(const std::string& a, SymbolTable& t);
GrassmannSection gs_g2(const std::string& b, const std::string& bp, SymbolTable& t);
GrassmannSection gs_product(const GrassmannSection& x, const GrassmannSection& y);

ValueBand section_eval(const GrassmannSection& psi, const ExtendedElement& e, double hbar,
                       SymbolTable t, const DixmierScheme& scheme);

/// psi(gamma beta, q r) = det_omega^{1/hbar}(beta_11 r^{-1}) psi(gamma, q).
VerificationReport check_equivariance(const GrassmannSection& psi, const ExtendedElement& e,
                                      const BorelElement& b, double hbar, const SymbolTable& t,
                                      const DixmierScheme& scheme);

/// Left translation evaluation: psi at (lambda gamma, s q).
ValueBand left_rep_eval(const ExtendedElement& lambda, const GrassmannSection& psi,
                        const ExtendedElement& e, double hbar, const SymbolTable& t,
                        const DixmierScheme& scheme);

/// Extended Lie element with formal block coefficients and the H_- companion
/// r = u_11 + s, s in L^(1,inf) (the constrained form u_11 - r in L^(1,inf)).
struct FormalExtended {
  NCPoly u11, u12, u21, u22;
  NCPoly r;

  /// Registers prefix_11/_12/_21/_22 plus the weight-1 shift prefix_s and
  /// sets r = u11 + s.
  static FormalExtended symbols(const std::string& prefix, SymbolTable& t);
  FormalExtended scaled(Complex s) const;
  FormalBlock block() const { return {u11, u12, u21, u22}; }
};

/// rhat[(u,r)] psi = L psi + (1/hbar) Tr(u_11 - r) psi; the scalars cancel
/// against the det-factor derivative, leaving the slot derivation along
/// u_21 + u_22 Zc - Zc r and the factor -(1/hbar) Tr(u_12 Zc).
GrassmannSection rhat_action(const FormalExtended& u, const GrassmannSection& psi, double hbar,
                             const SymbolTable& t);

/// Central scalar of the rhat commutator: -(1/hbar)(Tr(u_21 v_12) - Tr(u_12 v_21)).
FormalSum rhat_central(const FormalExtended& u, const FormalExtended& v, double hbar,
                       const SymbolTable& t);

/// [rhat(u,r), rhat(v,p)] = rhat(([v,u],[p,r])) + central, coefficient-wise.
VerificationReport check_rhat_commutator(const FormalExtended& u, const FormalExtended& v,
                                         const std::vector<GrassmannSection>& corpus,
                                         double hbar, const SymbolTable& t);

/// (u, r) -> (u, Tr_omega(u_11 - r)).
TraceEstimate central_extension_scalar(const BlockOperator& u, const Op& r,
                                       const DixmierScheme& scheme);

/// Right multiplication by an element with rapidly decaying lower-left block
/// changes the section only through the one-dimensional det factor.
VerificationReport check_reduced_quotient_action(const GrassmannSection& psi,
                                                 const ExtendedElement& e,
                                                 const ExtendedElement& small, double hbar,
                                                 const SymbolTable& t,
                                                 const DixmierScheme& scheme);

}  // namespace opgeo
