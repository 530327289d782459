#include "opgeo/trace_algebra.hpp"

#include <algorithm>

namespace opgeo {

namespace {
constexpr double kWeightTol = 1e-9;
constexpr double kCoeffTol = 1e-14;
}  // namespace

Word canonical_cyclic(const Word& w) {
  if (w.size() <= 1) return w;
  Word best = w;
  Word rot = w;
  for (size_t i = 1; i < w.size(); ++i) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

void SymbolTable::define(const std::string& name, double weight) {
  auto it = weights_.find(name);
  if (it != weights_.end()) {
    if (std::abs(it->second - weight) > kWeightTol)
      throw DomainError("generator redefined with a different weight: " + name);
    return;
  }
  weights_[name] = weight;
}

void SymbolTable::bind(const std::string& name, Op op) {
  if (!defined(name)) throw DomainError("binding an undefined generator: " + name);
  bindings_.insert_or_assign(name, std::move(op));
}

bool SymbolTable::defined(const std::string& name) const { return weights_.count(name) > 0; }

double SymbolTable::weight(const std::string& name) const {
  auto it = weights_.find(name);
  if (it == weights_.end()) throw DomainError("unknown generator: " + name);
  return it->second;
}

double SymbolTable::word_weight(const Word& w) const {
  double s = 0.0;
  for (const std::string& g : w) s += weight(g);
  return s;
}

const Op& SymbolTable::binding(const std::string& name) const {
  auto it = bindings_.find(name);
  if (it == bindings_.end()) throw InsufficientData("generator has no numeric binding: " + name);
  return it->second;
}

NCPoly nc_sym(const std::string& name) { return {{Word{name}, Complex(1.0)}}; }

NCPoly nc_const(Complex c) { return {{Word{}, c}}; }

NCPoly nc_add(const NCPoly& x, const NCPoly& y) {
  NCPoly out = x;
  for (const auto& [w, c] : y) {
    const Complex v = (out[w] += c);
    if (std::abs(v) < kCoeffTol) out.erase(w);
  }
  return out;
}

NCPoly nc_scale(Complex s, const NCPoly& x) {
  NCPoly out;
  if (std::abs(s) < kCoeffTol) return out;
  for (const auto& [w, c] : x) out[w] = s * c;
  return out;
}

NCPoly nc_sub(const NCPoly& x, const NCPoly& y) { return nc_add(x, nc_scale(-1.0, y)); }

NCPoly nc_mul(const NCPoly& x, const NCPoly& y) {
  NCPoly out;
  for (const auto& [wx, cx] : x)
    for (const auto& [wy, cy] : y) {
      Word w = wx;
      w.insert(w.end(), wy.begin(), wy.end());
      const Complex v = (out[w] += cx * cy);
      if (std::abs(v) < kCoeffTol) out.erase(w);
    }
  return out;
}

NCPoly nc_commutator(const NCPoly& x, const NCPoly& y) {
  return nc_sub(nc_mul(x, y), nc_mul(y, x));
}

FormalSum FormalSum::constant(Complex c) {
  FormalSum s;
  s.add_key(Key{}, c);
  return s;
}

FormalSum FormalSum::trace(const Word& w, const SymbolTable& t) {
  FormalSum s;
  s.add_product({w}, Complex(1.0), t);
  return s;
}

void FormalSum::add_key(Key k, Complex c) {
  if (std::abs(c) < kCoeffTol) return;
  const Complex v = (terms_[k] += c);
  if (std::abs(v) < kCoeffTol) terms_.erase(k);
}

void FormalSum::add_product(std::vector<Word> factors, Complex coeff, const SymbolTable& t) {
  if (std::abs(coeff) < kCoeffTol) return;
  Key key;
  key.reserve(factors.size());
  for (Word& w : factors) {
    if (w.empty()) throw IllFormedTrace("empty trace word");
    const double weight = t.word_weight(w);
    if (weight > 1.0 + kWeightTol) return;  // trace-class argument: the factor is 0
    if (weight < 1.0 - kWeightTol)
      throw IllFormedTrace("trace factor of summability weight < 1");
    key.push_back(canonical_cyclic(w));
  }
  std::sort(key.begin(), key.end());
  add_key(std::move(key), coeff);
}

bool FormalSum::is_zero(double tol) const {
  for (const auto& [k, c] : terms_)
    if (std::abs(c) > tol) return false;
  return true;
}

Complex FormalSum::constant_term() const {
  auto it = terms_.find(Key{});
  return it == terms_.end() ? Complex(0.0) : it->second;
}

FormalSum FormalSum::operator+(const FormalSum& o) const {
  FormalSum out = *this;
  for (const auto& [k, c] : o.terms_) out.add_key(k, c);
  return out;
}

FormalSum FormalSum::operator-(const FormalSum& o) const {
  FormalSum out = *this;
  for (const auto& [k, c] : o.terms_) out.add_key(k, -c);
  return out;
}

FormalSum FormalSum::operator-() const { return Complex(-1.0) * *this; }

FormalSum FormalSum::operator*(const FormalSum& o) const {
  FormalSum out;
  for (const auto& [kx, cx] : terms_)
    for (const auto& [ky, cy] : o.terms_) {
      Key k = kx;
      k.insert(k.end(), ky.begin(), ky.end());
      std::sort(k.begin(), k.end());
      out.add_key(std::move(k), cx * cy);
    }
  return out;
}

FormalSum operator*(Complex s, const FormalSum& x) {
  FormalSum out;
  for (const auto& [k, c] : x.terms_) out.add_key(k, s * c);
  return out;
}

double FormalSum::max_coeff_diff(const FormalSum& o) const {
  double m = 0.0;
  for (const auto& [k, c] : terms_) {
    auto it = o.terms_.find(k);
    m = std::max(m, std::abs(c - (it == o.terms_.end() ? Complex(0.0) : it->second)));
  }
  for (const auto& [k, c] : o.terms_)
    if (terms_.find(k) == terms_.end()) m = std::max(m, std::abs(c));
  return m;
}

FormalSum derive(const FormalSum& s, const std::string& slot, const NCPoly& replacement,
                 const SymbolTable& t) {
  FormalSum out;
  for (const auto& [key, coeff] : s.terms()) {
    for (size_t fi = 0; fi < key.size(); ++fi) {
      const Word& w = key[fi];
      for (size_t li = 0; li < w.size(); ++li) {
        if (w[li] != slot) continue;
        for (const auto& [frag, fc] : replacement) {
          Word spliced;
          spliced.reserve(w.size() - 1 + frag.size());
          spliced.insert(spliced.end(), w.begin(), w.begin() + static_cast<long>(li));
          spliced.insert(spliced.end(), frag.begin(), frag.end());
          spliced.insert(spliced.end(), w.begin() + static_cast<long>(li) + 1, w.end());
          std::vector<Word> factors;
          factors.reserve(key.size());
          for (size_t fj = 0; fj < key.size(); ++fj)
            if (fj != fi) factors.push_back(key[fj]);
          if (spliced.empty()) throw IllFormedTrace("derivation produced an empty trace");
          factors.push_back(spliced);
          out.add_product(std::move(factors), coeff * fc, t);
        }
      }
    }
  }
  return out;
}

ValueBand evaluate(const FormalSum& s, const SymbolTable& t, const DixmierScheme& scheme) {
  ValueBand total{Complex(0.0), 0.0, true};
  for (const auto& [key, coeff] : s.terms()) {
    ValueBand term{coeff, 0.0, true};
    for (const Word& w : key) {
      Op prod = t.binding(w[0]);
      for (size_t i = 1; i < w.size(); ++i) prod = prod * t.binding(w[i]);
      term = term * ValueBand::from(dixmier_trace_op(prod, scheme));
    }
    total = total + term;
  }
  return total;
}

FormalBlock FormalBlock::operator*(const FormalBlock& o) const {
  return {nc_add(nc_mul(a, o.a), nc_mul(b, o.c)), nc_add(nc_mul(a, o.b), nc_mul(b, o.d)),
          nc_add(nc_mul(c, o.a), nc_mul(d, o.c)), nc_add(nc_mul(c, o.b), nc_mul(d, o.d))};
}

FormalBlock FormalBlock::operator-(const FormalBlock& o) const {
  return {nc_sub(a, o.a), nc_sub(b, o.b), nc_sub(c, o.c), nc_sub(d, o.d)};
}

FormalBlock block_commutator(const FormalBlock& x, const FormalBlock& y) {
  return (x * y) - (y * x);
}

}  // namespace opgeo
