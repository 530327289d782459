#pragma once

#include <vector>

#include <json.hpp>

#include "opgeo/block_operator.hpp"
#include "opgeo/report.hpp"

namespace opgeo {

/// Concrete stand-in for the limiting procedure omega: a checkpoint ladder
/// plus an extrapolation rule. Equality claims are made only for estimates
/// whose band is narrow (measurable).
struct DixmierScheme {
  enum class Fit { slope, tail_ratio };

  std::vector<int> checkpoints;
  Fit fit = Fit::slope;
  double tolerance = 1e-3;

  static DixmierScheme dyadic(int kmin, int kmax, double tol = 1e-3);
  void validate() const;

  nlohmann::json to_json() const;
};

struct TraceEstimate {
  Complex value{0.0, 0.0};
  double lower = 0.0;      // band on the real part
  double upper = 0.0;
  double halfwidth = 0.0;  // total band half-width (covers real and imaginary)
  double fit_residual = 0.0;
  bool measurable = true;

  static TraceEstimate exact(Complex v);
  TraceEstimate operator+(const TraceEstimate& o) const;
  TraceEstimate operator-() const;
};

nlohmann::json to_json(const TraceEstimate& e, const DixmierScheme& scheme);

/// Extrapolation core: Dixmier estimate from partial sums sigma_{N_k} of a
/// positive sequence (or any signed combination already summed).
TraceEstimate dixmier_from_partial_sums(const std::vector<double>& sigma,
                                        const std::vector<int>& checkpoints,
                                        const DixmierScheme& scheme);

/// Tr_omega of a single-space operator. Symbolic laws are exact (the n^{-1}
/// coefficient); dense matrices go through the Hermitian decomposition and
/// positive/negative eigenvalue parts.
TraceEstimate dixmier_trace_op(const Op& a, const DixmierScheme& scheme);

/// Tr_omega of a block operator (= trace over both diagonal blocks).
TraceEstimate dixmier_trace(const BlockOperator& a, const DixmierScheme& scheme);

/// Numeric ladder estimate of a symbolic diagonal law (no coefficient
/// shortcut); used to cross-check the exact backend on long ladders.
TraceEstimate dixmier_trace_numeric(const Op& a, const DixmierScheme& scheme);

/// Conditional trace Tr^eps_omega A = (Tr_omega a11 + Tr_omega a22) / 2.
TraceEstimate conditional_trace(const BlockOperator& a, const DixmierScheme& scheme);

/// det_omega(1 + A) = exp(Tr_omega A), carried as its logarithm.
struct DetEstimate {
  TraceEstimate log_value;
  Complex value() const { return std::exp(log_value.value); }
};

DetEstimate det_omega(const Op& a, const DixmierScheme& scheme);
DetEstimate det_omega(const BlockOperator& a, const DixmierScheme& scheme);

VerificationReport check_det_multiplicative(const Op& a, const Op& b,
                                            const DixmierScheme& scheme);
VerificationReport check_vanishing_on_small(const Op& a, const DixmierScheme& scheme);

/// First-order banded complex arithmetic for products of trace estimates.
struct ValueBand {
  Complex v{0.0, 0.0};
  double hw = 0.0;
  bool measurable = true;

  static ValueBand from(const TraceEstimate& e) { return {e.value, e.halfwidth, e.measurable}; }
  ValueBand operator+(const ValueBand& o) const {
    return {v + o.v, hw + o.hw, measurable && o.measurable};
  }
  ValueBand operator-(const ValueBand& o) const {
    return {v - o.v, hw + o.hw, measurable && o.measurable};
  }
  ValueBand operator*(const ValueBand& o) const {
    return {v * o.v, std::abs(v) * o.hw + std::abs(o.v) * hw + hw * o.hw,
            measurable && o.measurable};
  }
  ValueBand scaled(Complex s) const { return {s * v, std::abs(s) * hw, measurable}; }
};

ValueBand exp_band(const ValueBand& x);

}  // namespace opgeo
