#pragma once

#include <map>
#include <string>
#include <vector>

#include "opgeo/dixmier.hpp"

namespace opgeo {

/// Formal calculus of products of Dixmier-trace factors Tr_omega(X1 X2 ...),
/// where each X is a named generator carrying a summability weight:
///   bounded 0, L^(2,inf) 1/2, L^(1,inf) 1, trace-class (large).
/// The weight of a word is the sum of its letters. A trace factor of weight
/// > 1 is identically zero (trace-class argument) and is dropped; weight < 1
/// is ill-formed (the trace does not exist) and throws at construction.
/// Words are cyclic (trace property) and kept in a canonical rotation.

inline constexpr double kWeightBounded = 0.0;
inline constexpr double kWeightTwoInf = 0.5;
inline constexpr double kWeightOneInf = 1.0;
inline constexpr double kWeightTraceClass = 1000.0;

using Word = std::vector<std::string>;

Word canonical_cyclic(const Word& w);

class SymbolTable {
 public:
  /// Registers a generator; re-defining with a different weight throws.
  void define(const std::string& name, double weight);
  /// Attaches the numeric payload used by evaluate().
  void bind(const std::string& name, Op op);

  bool defined(const std::string& name) const;
  double weight(const std::string& name) const;
  double word_weight(const Word& w) const;
  const Op& binding(const std::string& name) const;

 private:
  std::map<std::string, double> weights_;
  std::map<std::string, Op> bindings_;
};

/// Noncommutative polynomial in the generators (no trace taken yet); used
/// for block coefficients and substitution fragments.
using NCPoly = std::map<Word, Complex>;

NCPoly nc_sym(const std::string& name);
NCPoly nc_const(Complex c);  // empty-word monomial
NCPoly nc_add(const NCPoly& x, const NCPoly& y);
NCPoly nc_sub(const NCPoly& x, const NCPoly& y);
NCPoly nc_mul(const NCPoly& x, const NCPoly& y);
NCPoly nc_scale(Complex s, const NCPoly& x);
NCPoly nc_commutator(const NCPoly& x, const NCPoly& y);

/// Formal linear combination of products of trace factors. The empty product
/// is the constant function 1.
class FormalSum {
 public:
  using Key = std::vector<Word>;  // sorted canonical words

  FormalSum() = default;
  static FormalSum constant(Complex c);
  /// Single trace factor Tr_omega(w); enforces the weight rules.
  static FormalSum trace(const Word& w, const SymbolTable& t);

  /// Adds coeff * prod_i Tr_omega(factors[i]), canonicalizing and applying
  /// the weight rules (overweight factors annihilate the term).
  void add_product(std::vector<Word> factors, Complex coeff, const SymbolTable& t);

  const std::map<Key, Complex>& terms() const { return terms_; }
  bool is_zero(double tol = 1e-12) const;
  Complex constant_term() const;

  FormalSum operator+(const FormalSum& o) const;
  FormalSum operator-(const FormalSum& o) const;
  FormalSum operator-() const;
  FormalSum operator*(const FormalSum& o) const;  // needs a table-free merge
  friend FormalSum operator*(Complex s, const FormalSum& x);

  /// Largest absolute coefficient difference against another sum.
  double max_coeff_diff(const FormalSum& o) const;

 private:
  void add_key(Key k, Complex c);
  std::map<Key, Complex> terms_;
};

/// Derivation: replaces, one occurrence at a time, every `slot` letter in
/// every trace word by the words of `replacement` (spliced in place), with
/// the weight rules applied to the results.
FormalSum derive(const FormalSum& s, const std::string& slot, const NCPoly& replacement,
                 const SymbolTable& t);

/// Multiplies out the bound generators of each factor, takes Dixmier traces,
/// and combines with first-order band arithmetic.
ValueBand evaluate(const FormalSum& s, const SymbolTable& t, const DixmierScheme& scheme);

/// 2x2 block of noncommutative polynomials; block algebra for commutators of
/// formal Lie elements.
struct FormalBlock {
  NCPoly a, b, c, d;

  FormalBlock operator*(const FormalBlock& o) const;
  FormalBlock operator-(const FormalBlock& o) const;
};

FormalBlock block_commutator(const FormalBlock& x, const FormalBlock& y);

}  // namespace opgeo
