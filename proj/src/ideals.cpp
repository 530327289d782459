#include "opgeo/ideals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opgeo {

std::string to_string(IdealTag t) {
  switch (t) {
    case IdealTag::TraceClass:
      return "trace_class";
    case IdealTag::SmallL1Inf:
      return "small_one_inf";
    case IdealTag::L1Inf:
      return "one_inf";
    case IdealTag::SmallTwoInf:
      return "small_two_inf";
    case IdealTag::TwoInf:
      return "two_inf";
    case IdealTag::Compact:
      return "compact";
    case IdealTag::Bounded:
      return "bounded";
    default:
      return "unclassified";
  }
}

NormResult marcinkiewicz_norm(const BlockOperator& a, NormKind kind) {
  const RealVector mu = singular_values(a);
  NormResult r;
  double sigma = 0.0, denom = 0.0;
  for (int n = 1; n <= mu.size(); ++n) {
    sigma += mu[n - 1];
    denom += kind == NormKind::two_inf ? 1.0 / std::sqrt(static_cast<double>(n))
                                       : 1.0 / static_cast<double>(n);
    const double ratio = sigma / denom;
    if (ratio > r.value) {
      r.value = ratio;
      r.argmax_n = n;
    }
  }
  return r;
}

double marcinkiewicz_norm_value(const BlockOperator& a, NormKind kind) {
  return marcinkiewicz_norm(a, kind).value;
}

namespace {

constexpr double kExpTol = 1e-9;
constexpr double kDeadBand = 0.05;

IdealTag tag_from_exact_exponent(double p) {
  if (p > 1.0 + kExpTol) return IdealTag::TraceClass;
  if (std::abs(p - 1.0) <= kExpTol) return IdealTag::L1Inf;
  if (p > 0.5 + kExpTol) return IdealTag::SmallTwoInf;
  if (std::abs(p - 0.5) <= kExpTol) return IdealTag::TwoInf;
  if (p > kExpTol) return IdealTag::Compact;
  return IdealTag::Bounded;
}

IdealClass classify_symbolic(double pmin) {
  IdealClass c;
  if (std::isinf(pmin)) {  // zero operator
    c.tag = IdealTag::TraceClass;
    c.p_hat = pmin;
    return c;
  }
  c.tag = tag_from_exact_exponent(pmin);
  c.p_hat = pmin;
  return c;
}

}  // namespace

IdealClass classify_sequence(const RealVector& mu) {
  const int len = static_cast<int>(mu.size());
  if (len < 16) throw InsufficientData("classification needs at least 16 singular values");

  const double top = mu[0];
  if (top <= 0.0) return {IdealTag::TraceClass, std::numeric_limits<double>::infinity(), 0.0};

  // Finite rank: the tail is numerically zero.
  if (mu[len / 2 - 1] <= 1e-13 * top)
    return {IdealTag::TraceClass, std::numeric_limits<double>::infinity(), 0.0};

  // Weighted least squares of log mu_n vs log n over the tail half, weights
  // proportional to the local log spacing.
  std::vector<double> x, y, w;
  for (int n = len / 2; n <= len; ++n) {
    if (mu[n - 1] <= 1e-300 * top) break;
    x.push_back(std::log(static_cast<double>(n)));
    y.push_back(std::log(mu[n - 1]));
    w.push_back(n == 1 ? 1.0 : std::log(static_cast<double>(n) / (n - 1)));
  }
  if (x.size() < 8) return {IdealTag::TraceClass, std::numeric_limits<double>::infinity(), 0.0};

  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
    sxx += w[i] * x[i] * x[i];
    sxy += w[i] * x[i] * y[i];
  }
  const double denom = sw * sxx - sx * sx;
  const double slope = (sw * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / sw;
  double rss = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (intercept + slope * x[i]);
    rss += w[i] * r * r;
  }
  const double var = rss / sw / std::max(1e-12, sxx / sw - (sx / sw) * (sx / sw));
  const double stderr_slope = std::sqrt(var / static_cast<double>(x.size()));

  IdealClass c;
  c.p_hat = -slope;
  c.band = 2.0 * stderr_slope;
  if (c.band > 0.15) {
    c.tag = IdealTag::Unclassified;
    return c;
  }
  // Dead-band around each threshold resolves to the boundary class; a fit is
  // never promoted past a threshold it cannot clear by the dead-band margin.
  const double p = c.p_hat;
  if (std::abs(p - 1.0) <= kDeadBand)
    c.tag = IdealTag::L1Inf;
  else if (std::abs(p - 0.5) <= kDeadBand)
    c.tag = IdealTag::TwoInf;
  else if (p > 1.0)
    c.tag = IdealTag::TraceClass;
  else if (p > 0.5)
    c.tag = IdealTag::SmallTwoInf;
  else if (p > kDeadBand)
    c.tag = IdealTag::Compact;
  else
    c.tag = IdealTag::Bounded;
  return c;
}

IdealClass classify_op(const Op& a) {
  if (a.is_diag()) return classify_symbolic(a.law().min_exponent());
  return classify_sequence(op_singular_values(a));
}

IdealClass classify(const BlockOperator& a) {
  if (a.backend() == Backend::symbolic) {
    double pmin = std::numeric_limits<double>::infinity();
    for (const Op* blk : {&a.a(), &a.b(), &a.c(), &a.d()})
      pmin = std::min(pmin, blk->law().min_exponent());
    return classify_symbolic(pmin);
  }
  return classify_sequence(singular_values(a));
}

VerificationReport check_product_inequality(const BlockOperator& a, const BlockOperator& b,
                                            const std::vector<std::pair<int, int>>& samples) {
  VerificationReport r;
  r.identity = "mu_{n+m}(AB) <= mu_n(A) mu_m(B)";
  const RealVector ma = singular_values(a);
  const RealVector mb = singular_values(b);
  const RealVector mab = singular_values(a * b);
  const double scale = std::max(1.0, ma[0] * mb[0]);
  r.tolerance = 1e-12 * scale;
  for (const auto& [n, m] : samples) {
    if (n < 1 || m < 1 || n + m > mab.size())
      throw DomainError("sampled (n, m) outside the available range");
    r.absorb(std::max(0.0, mab[n + m - 1] - ma[n - 1] * mb[m - 1]));
  }
  return r;
}

namespace {

// Tag semantics as (decay weight, strictly-small flag) for product prediction.
struct TagWeight {
  double w;
  bool strict;
};

TagWeight tag_weight(IdealTag t) {
  switch (t) {
    case IdealTag::TraceClass:
      return {1.0, true};
    case IdealTag::SmallL1Inf:
      return {1.0, true};
    case IdealTag::L1Inf:
      return {1.0, false};
    case IdealTag::SmallTwoInf:
      return {0.5, true};
    case IdealTag::TwoInf:
      return {0.5, false};
    case IdealTag::Compact:
      return {0.0, true};
    default:
      return {0.0, false};
  }
}

IdealTag predicted_product_tag(IdealTag ta, IdealTag tb) {
  const TagWeight a = tag_weight(ta), b = tag_weight(tb);
  const double w = a.w + b.w;
  const bool strict = a.strict || b.strict;
  if (w > 1.0 + 1e-12) return IdealTag::TraceClass;
  if (std::abs(w - 1.0) <= 1e-12) return strict ? IdealTag::SmallL1Inf : IdealTag::L1Inf;
  if (w > 0.5 + 1e-12) return IdealTag::SmallTwoInf;
  if (std::abs(w - 0.5) <= 1e-12) return strict ? IdealTag::SmallTwoInf : IdealTag::TwoInf;
  if (w > 1e-12 || strict) return IdealTag::Compact;
  return IdealTag::Bounded;
}

}  // namespace

VerificationReport check_ideal_products(const BlockOperator& a, const BlockOperator& b) {
  VerificationReport r;
  r.identity = "ideal product inclusion table";
  r.tolerance = 0.05;

  const IdealClass ca = classify(a);
  const IdealClass cb = classify(b);
  const BlockOperator ab = a * b;
  const IdealClass cab = classify(ab);
  if (ca.tag == IdealTag::Unclassified || cb.tag == IdealTag::Unclassified ||
      cab.tag == IdealTag::Unclassified) {
    r.status = Status::inconclusive;
    return r;
  }
  const IdealTag expected = predicted_product_tag(ca.tag, cb.tag);
  if (tag_rank(cab.tag) > tag_rank(expected)) {
    r.status = Status::fail;
    r.max_error = static_cast<double>(tag_rank(cab.tag) - tag_rank(expected));
    return r;
  }

  // Strictly-small predictions additionally show sigma_N(AB) = o(log N). At a
  // finite truncation the witness is that the segment slopes of sigma_N
  // against log N decay along the ladder (they sit at a constant for L^(1,inf)
  // proper).
  if (expected == IdealTag::SmallL1Inf || expected == IdealTag::TraceClass) {
    std::vector<int> checkpoints;
    for (int nk = 8; nk <= 2 * ab.n(); nk *= 2) checkpoints.push_back(nk);
    if (checkpoints.size() >= 5) {
      const RealVector mu = singular_values(ab);
      const std::vector<double> sigma = prefix_sums(mu, checkpoints);
      std::vector<double> seg;
      for (size_t i = 1; i < sigma.size(); ++i)
        seg.push_back((sigma[i] - sigma[i - 1]) /
                      (std::log(double(checkpoints[i])) - std::log(double(checkpoints[i - 1]))));
      const double first = std::max(seg[0], seg[1]);
      const double last = 0.5 * (seg[seg.size() - 1] + seg[seg.size() - 2]);
      r.absorb(std::max(0.0, last - 0.8 * first));
    }
  }
  return r;
}

namespace {

VerificationReport hoelder_report(const char* identity, const TraceEstimate& t, double bound) {
  VerificationReport r;
  r.identity = identity;
  r.tolerance = 1e-9 + 3.0 * std::max(t.fit_residual, t.halfwidth);
  if (!t.measurable) {
    r.status = Status::inconclusive;
    r.max_error = std::abs(t.value) - bound;
    return r;
  }
  r.absorb(std::max(0.0, std::abs(t.value) - bound));
  return r;
}

}  // namespace

VerificationReport check_hoelder(const BlockOperator& a, const BlockOperator& z,
                                 const DixmierScheme& scheme) {
  const double bound = marcinkiewicz_norm_value(a, NormKind::two_inf) *
                       marcinkiewicz_norm_value(z, NormKind::two_inf);
  const TraceEstimate t = dixmier_trace(a * z, scheme);
  return hoelder_report("|Tr_omega(AZ)| <= ||A||_{2,inf} ||Z||_{2,inf}", t, bound);
}

VerificationReport check_hoelder_quadratic(const BlockOperator& b1, const BlockOperator& b2,
                                           const BlockOperator& z, const DixmierScheme& scheme) {
  const RealVector m1 = singular_values(b1);
  const RealVector m2 = singular_values(b2);
  const double nz = marcinkiewicz_norm_value(z, NormKind::two_inf);
  const double bound = m1[0] * m2[0] * nz * nz;
  const TraceEstimate t = dixmier_trace(b1 * z * b2 * z, scheme);
  return hoelder_report("|Tr_omega(B1 Z B2 Z)| <= ||B1|| ||B2|| ||Z||^2_{2,inf}", t, bound);
}

}  // namespace opgeo
