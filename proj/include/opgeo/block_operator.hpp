#pragma once

#include <vector>

#include <json.hpp>

#include "opgeo/op.hpp"

namespace opgeo {

/// 2x2-block operator on the truncated split H_- (+) H_+, with blocks
///   [ a : H_- -> H_-   b : H_+ -> H_- ]
///   [ c : H_- -> H_+   d : H_+ -> H_+ ]
/// Each block is an Op of dimension N; the full operator acts on 2N modes.
/// Backend is uniform across blocks: if any block is dense, symbolic blocks
/// are materialized on construction.
class BlockOperator {
 public:
  BlockOperator(Op a, Op b, Op c, Op d);

  static BlockOperator zero(int n, Backend backend);
  static BlockOperator identity(int n, Backend backend);
  /// The grading epsilon = diag(-1 on H_-, +1 on H_+).
  static BlockOperator epsilon(int n, Backend backend = Backend::symbolic);
  /// Operator concentrated in the b-block (the Z slot of the Disc).
  static BlockOperator from_b_block(const Op& z);
  /// Split a dense 2N x 2N matrix back into blocks.
  static BlockOperator from_full(const Matrix& m);
  static BlockOperator block_diagonal(const Op& a, const Op& d);

  const Op& a() const { return a_; }
  const Op& b() const { return b_; }
  const Op& c() const { return c_; }
  const Op& d() const { return d_; }

  int n() const { return a_.dim(); }
  Backend backend() const { return a_.backend(); }

  Matrix full() const;  // 2N x 2N, H_- modes first
  BlockOperator materialized() const;
  BlockOperator adjoint() const;

  friend BlockOperator operator+(const BlockOperator& x, const BlockOperator& y);
  friend BlockOperator operator-(const BlockOperator& x, const BlockOperator& y);
  friend BlockOperator operator*(const BlockOperator& x, const BlockOperator& y);
  friend BlockOperator operator*(Complex s, const BlockOperator& x);
  BlockOperator operator-() const { return Complex(-1.0) * *this; }

 private:
  Op a_, b_, c_, d_;
};

BlockOperator commutator(const BlockOperator& x, const BlockOperator& y);
/// [eps, A] = eps A - A eps = [[0, -2b], [2c, 0]].
BlockOperator epsilon_commutator(const BlockOperator& x);

/// Nonincreasing singular values of the full 2N x 2N operator. Dense backend
/// uses an SVD (with a fast path for numerically diagonal matrices); the
/// symbolic backend is exact via the closed-form 2x2 SVD of each paired mode.
RealVector singular_values(const BlockOperator& a);

/// Prefix sums sigma_{N_k} of a nonincreasing sequence at the checkpoints.
std::vector<double> prefix_sums(const RealVector& mu, const std::vector<int>& checkpoints);
std::vector<double> partial_sums(const BlockOperator& a, const std::vector<int>& checkpoints);

nlohmann::json to_json(const BlockOperator& a);
BlockOperator block_operator_from_json(const nlohmann::json& j);

}  // namespace opgeo
