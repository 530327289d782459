#pragma once

#include <vector>

#include "opgeo/block_operator.hpp"
#include "opgeo/dixmier.hpp"
#include "opgeo/report.hpp"

namespace opgeo {

/// Membership tags ordered by inclusion, strongest (smallest ideal) first.
enum class IdealTag {
  TraceClass = 0,
  SmallL1Inf,   // sigma_N = o(log N)
  L1Inf,        // sigma_N = O(log N)
  SmallTwoInf,  // s_n = o(n^{-1/2})
  TwoInf,       // s_n = O(n^{-1/2})
  Compact,
  Bounded,
  Unclassified,
};

std::string to_string(IdealTag t);
inline int tag_rank(IdealTag t) { return static_cast<int>(t); }

struct IdealClass {
  IdealTag tag = IdealTag::Unclassified;
  double p_hat = 0.0;  // fitted (or exact) tail exponent of s_n
  double band = 0.0;   // confidence half-width of p_hat
};

enum class NormKind { two_inf, one_inf };

struct NormResult {
  double value = 0.0;
  int argmax_n = 0;
};

/// sup_N sigma_N / D_N with D_N = sum n^{-1/2} (two_inf) or sum 1/n (one_inf),
/// over all N up to the truncation.
NormResult marcinkiewicz_norm(const BlockOperator& a, NormKind kind);
double marcinkiewicz_norm_value(const BlockOperator& a, NormKind kind);

IdealClass classify(const BlockOperator& a);
IdealClass classify_op(const Op& a);
/// Classification of a raw nonincreasing singular-value sequence (dense path).
IdealClass classify_sequence(const RealVector& mu);

/// mu_{n+m}(AB) <= mu_n(A) mu_m(B) on the sampled index pairs.
VerificationReport check_product_inequality(const BlockOperator& a, const BlockOperator& b,
                                            const std::vector<std::pair<int, int>>& samples);

/// Product-inclusion table: the classified tag of AB must be at least as
/// strong as the tag predicted from the factors; strictly-small factors also
/// get the o(log N) slope test on sigma_N(AB).
VerificationReport check_ideal_products(const BlockOperator& a, const BlockOperator& b);

/// |Tr_omega(AZ)| <= ||A|| ||Z|| in the L^(2,inf) norm.
VerificationReport check_hoelder(const BlockOperator& a, const BlockOperator& z,
                                 const DixmierScheme& scheme);
/// |Tr_omega(B1 Z B2 Z)| <= ||B1|| ||B2|| ||Z||^2 (operator norms on B's).
VerificationReport check_hoelder_quadratic(const BlockOperator& b1, const BlockOperator& b2,
                                           const BlockOperator& z, const DixmierScheme& scheme);

}  // namespace opgeo
