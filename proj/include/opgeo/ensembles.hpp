#pragma once

#include <cstdint>
#include <random>

#include "opgeo/disc_geometry.hpp"
#include "opgeo/grassmannian.hpp"

namespace opgeo {

using Rng = std::mt19937_64;

/// Complex coefficient with modulus in [lo, hi] and uniform phase.
Complex random_coeff(Rng& rng, double lo = 0.3, double hi = 1.0);

/// Decay law with leading exponent exactly p_min (so the classification is
/// known) and up to extra faster terms.
PowerLawDiagonal random_law(Rng& rng, double p_min, int extra_terms = 1, double scale = 1.0);
/// Nonincreasing nonnegative law (singular-value semantics).
PowerLawDiagonal random_positive_law(Rng& rng, double p_min, double scale = 1.0);
/// Purely imaginary coefficients (anti-Hermitian diagonal).
PowerLawDiagonal random_imaginary_law(Rng& rng, double p_min, double scale = 1.0);

Matrix random_gaussian(int n, Rng& rng);
Matrix random_unitary(int n, Rng& rng);
/// U diag(scale * k^{-p}) V^dag: exact singular-value law k^{-p}.
Matrix random_decay_matrix(int n, double p, double scale, Rng& rng);
/// SPD with spectrum in [top/kappa, top], log-uniform eigenvalues.
Matrix random_spd(int n, double kappa, double top, Rng& rng);

/// Pseudo-Hermitian Lie elements (alpha, delta anti-Hermitian, gamma = beta^dag).
BlockOperator random_lie_symbolic(int n, Rng& rng, double p_offdiag = 0.5,
                                  double scale = 0.5);
BlockOperator random_lie_dense(int n, Rng& rng, double p_offdiag = 0.5, double scale = 0.5);

/// exp(u) for a random dense Lie element: exactly pseudo-unitary.
GroupElement random_pseudo_unitary_dense(int n, Rng& rng, double scale = 0.3);
/// Invertible symbolic element 1 + decaying blocks (general-linear kind).
GroupElement random_gl_symbolic(int n, Rng& rng, double offdiag_scale = 0.3,
                                double diag_scale = 0.3);

DiscPoint random_disc_symbolic(int n, Rng& rng, double p = 0.5, double scale = 0.4);
DiscPoint random_disc_dense(int n, Rng& rng, double scale = 0.4);

ExtendedElement random_extended_symbolic(int n, Rng& rng, double offdiag_scale = 0.3);
BorelElement random_borel_symbolic(int n, Rng& rng, double offdiag_scale = 0.3);

}  // namespace opgeo
