#pragma once

#include <vector>

#include "opgeo/disc_geometry.hpp"
#include "opgeo/quantization_disc.hpp"

namespace opgeo {

/// Class of Z modulo rapidly decaying perturbations, carried by a
/// representative; quotient data is the n^{-1/2} tail coefficient.
struct QuotientPoint {
  Op z;

  explicit QuotientPoint(Op z_);
  int dim() const { return z.dim(); }
};

/// ||| Z ||| as the asymptotic sigma_N / D_N coefficient: exact n^{-1/2}
/// coefficient magnitude on symbolic laws, tail-ladder estimate densely.
TraceEstimate quotient_norm_estimate(const Op& z, const DixmierScheme& scheme);
bool quotient_equal(const Op& z1, const Op& z2, const DixmierScheme& scheme);

/// Affine motion Z -> e Z f^{-1} + l with e, f invertible, e^dag e - 1 and
/// f^dag f - 1 compact, l in L^(2,inf).
struct AffineElement {
  Op e, f, l;

  AffineElement(Op e_, Op f_, Op l_, bool validate = true);
};

QuotientPoint affine_act(const AffineElement& a, const QuotientPoint& z);
AffineElement affine_compose(const AffineElement& x, const AffineElement& y);

/// Omega~(W1, W2) = i (Tr_omega(W1 W2^dag) - Tr_omega(W2 W1^dag)).
TraceEstimate flat_symplectic_pair(const Op& w1, const Op& w2, const DixmierScheme& scheme);

VerificationReport check_affine_invariance(const AffineElement& a, const Op& w1, const Op& w2,
                                           const DixmierScheme& scheme);

/// Lie data of the affine action: vector field W(Z) = alpha Z - Z delta + beta
/// with alpha, delta anti-Hermitian and beta in L^(2,inf).
struct FlatLie {
  Op alpha, delta, beta;

  FlatLie(Op alpha_, Op delta_, Op beta_, bool validate = true);
  Op field_at(const Op& z) const;
};

FlatLie flat_bracket(const FlatLie& x, const FlatLie& y);
/// Restriction of a Disc Lie element (alpha, delta, beta = b-block).
FlatLie flat_restrict(const BlockOperator& u);

/// F = i Tr_omega(alpha Z Z^dag - Z delta Z^dag + beta Z^dag + Z beta^dag).
TraceEstimate flat_moment(const FlatLie& u, const Op& zbar, const DixmierScheme& scheme);

/// Omega~(W1(Z), W2(Z)) = F_{[u1,u2]}(Z) + i Tr_omega(b1 b2^dag - b2 b1^dag).
VerificationReport check_flat_poisson_central(const FlatLie& u1, const FlatLie& u2,
                                              const std::vector<Op>& ensemble,
                                              const DixmierScheme& scheme);

/// Tr_omega log(1 - Z Z^dag) = -Tr_omega(Z Z^dag).
VerificationReport kaehler_collapse_check(const Op& z, const DixmierScheme& scheme);

/// Affine shadow of the Mobius action: Z -> a Z d^{-1} + b d^{-1}.
QuotientPoint embed_disc_action(const GroupElement& g, const QuotientPoint& z);

/// Disc moment map at phi_of_z(Z) against its flat expansion
/// Tr(alpha Z Z^dag) + Tr(beta Z^dag) - Tr(gamma Z) - Tr(delta Z^dag Z).
VerificationReport check_moment_reduction(const BlockOperator& u, const DiscPoint& z,
                                          const DixmierScheme& scheme);

/// Gaussian-prefactor wave function exp(-(1/hbar) Tr_omega(Z Z^dag)) * atoms;
/// shares atom identifiers with the Disc wave functions.
ValueBand flat_wavefunction_eval(const WaveFunction& psi, const Op& zbar, double hbar,
                                 SymbolTable t, const DixmierScheme& scheme);

/// gamma -> class of gamma_21 separates cosets of the small subgroup.
VerificationReport check_quotient_size_identity(const DixmierScheme& scheme);

}  // namespace opgeo
