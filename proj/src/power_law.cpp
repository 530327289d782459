#include "opgeo/power_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opgeo {

namespace {
constexpr double kExponentMergeTol = 1e-9;
constexpr double kCoeffDropTol = 1e-14;
}  // namespace

PowerLawDiagonal::PowerLawDiagonal(Complex coeff, double exponent) {
  if (exponent < 0.0) throw DomainError("power law exponent must be >= 0");
  terms_.push_back({coeff, exponent});
  normalize();
}

PowerLawDiagonal::PowerLawDiagonal(std::vector<PowerLawTerm> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (t.exponent < 0.0) throw DomainError("power law exponent must be >= 0");
  normalize();
}

void PowerLawDiagonal::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const PowerLawTerm& x, const PowerLawTerm& y) { return x.exponent < y.exponent; });
  std::vector<PowerLawTerm> merged;
  double scale = 0.0;
  for (const auto& t : terms_) scale = std::max(scale, std::abs(t.coeff));
  for (const auto& t : terms_) {
    if (!merged.empty() && std::abs(t.exponent - merged.back().exponent) < kExponentMergeTol) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  terms_.clear();
  const double drop = kCoeffDropTol * (1.0 + scale);
  for (const auto& t : merged)
    if (std::abs(t.coeff) > drop) terms_.push_back(t);
}

double PowerLawDiagonal::min_exponent() const {
  if (terms_.empty()) return std::numeric_limits<double>::infinity();
  return terms_.front().exponent;
}

Complex PowerLawDiagonal::coeff_at(double p) const {
  for (const auto& t : terms_)
    if (std::abs(t.exponent - p) < 1e-9) return t.coeff;
  return {0.0, 0.0};
}

bool PowerLawDiagonal::has_constant_term() const {
  return !terms_.empty() && terms_.front().exponent < kExponentMergeTol;
}

Complex PowerLawDiagonal::entry(std::int64_t n) const {
  Complex v{0.0, 0.0};
  const double x = static_cast<double>(n);
  for (const auto& t : terms_) v += t.coeff * std::pow(x, -t.exponent);
  return v;
}

Vector PowerLawDiagonal::entries(int n) const {
  Vector out(n);
  for (int i = 0; i < n; ++i) out[i] = entry(i + 1);
  return out;
}

double PowerLawDiagonal::sup_abs(int n) const {
  double m = 0.0;
  for (int i = 1; i <= n; ++i) m = std::max(m, std::abs(entry(i)));
  return m;
}

bool PowerLawDiagonal::nonincreasing_abs(int n) const {
  double prev = std::abs(entry(1));
  for (int i = 2; i <= n; ++i) {
    const double cur = std::abs(entry(i));
    if (cur > prev + 1e-12) return false;
    prev = cur;
  }
  return true;
}

bool PowerLawDiagonal::nonnegative_coeffs() const {
  for (const auto& t : terms_)
    if (std::abs(t.coeff.imag()) > 0.0 || t.coeff.real() < 0.0) return false;
  return true;
}

PowerLawDiagonal PowerLawDiagonal::conjugated() const {
  std::vector<PowerLawTerm> out = terms_;
  for (auto& t : out) t.coeff = std::conj(t.coeff);
  return PowerLawDiagonal(std::move(out));
}

PowerLawDiagonal PowerLawDiagonal::truncated_above(double cutoff) const {
  std::vector<PowerLawTerm> out;
  for (const auto& t : terms_)
    if (t.exponent <= cutoff + 1e-12) out.push_back(t);
  return PowerLawDiagonal(std::move(out));
}

PowerLawDiagonal operator+(const PowerLawDiagonal& x, const PowerLawDiagonal& y) {
  std::vector<PowerLawTerm> out = x.terms_;
  out.insert(out.end(), y.terms_.begin(), y.terms_.end());
  return PowerLawDiagonal(std::move(out));
}

PowerLawDiagonal operator-(const PowerLawDiagonal& x, const PowerLawDiagonal& y) {
  return x + Complex(-1.0) * y;
}

PowerLawDiagonal operator*(const PowerLawDiagonal& x, const PowerLawDiagonal& y) {
  std::vector<PowerLawTerm> out;
  out.reserve(x.terms_.size() * y.terms_.size());
  for (const auto& s : x.terms_)
    for (const auto& t : y.terms_) out.push_back({s.coeff * t.coeff, s.exponent + t.exponent});
  return PowerLawDiagonal(std::move(out));
}

PowerLawDiagonal operator*(Complex s, const PowerLawDiagonal& x) {
  std::vector<PowerLawTerm> out = x.terms_;
  for (auto& t : out) t.coeff *= s;
  return PowerLawDiagonal(std::move(out));
}

PowerLawDiagonal neumann_inverse_rest(const PowerLawDiagonal& a, double cutoff) {
  if (a.is_zero()) return {};
  if (a.min_exponent() <= 1e-12)
    throw DomainError("Neumann inverse needs strictly decaying entries");
  PowerLawDiagonal rest;   // accumulated series minus the leading 1
  PowerLawDiagonal power = Complex(-1.0) * a;
  const double p0 = a.min_exponent();
  const int kmax = static_cast<int>(cutoff / p0) + 2;
  for (int k = 0; k < kmax && !power.is_zero(); ++k) {
    rest = rest + power;
    power = (power * (Complex(-1.0) * a)).truncated_above(cutoff);
  }
  return rest.truncated_above(cutoff);
}

PowerLawDiagonal log_one_plus(const PowerLawDiagonal& a, double cutoff) {
  if (a.is_zero()) return {};
  if (a.min_exponent() <= 1e-12)
    throw DomainError("log series needs strictly decaying entries");
  PowerLawDiagonal out;
  PowerLawDiagonal power = a;
  const double p0 = a.min_exponent();
  const int kmax = static_cast<int>(cutoff / p0) + 2;
  double sign = 1.0;
  for (int k = 1; k <= kmax && !power.is_zero(); ++k) {
    out = out + Complex(sign / k) * power;
    power = (power * a).truncated_above(cutoff);
    sign = -sign;
  }
  return out.truncated_above(cutoff);
}

}  // namespace opgeo
