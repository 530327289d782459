#include "opgeo/block_operator.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace opgeo {

namespace {

bool any_dense(const Op& a, const Op& b, const Op& c, const Op& d) {
  return a.backend() == Backend::dense || b.backend() == Backend::dense ||
         c.backend() == Backend::dense || d.backend() == Backend::dense;
}

}  // namespace

BlockOperator::BlockOperator(Op a, Op b, Op c, Op d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (a_.dim() != b_.dim() || a_.dim() != c_.dim() || a_.dim() != d_.dim())
    throw TruncationMismatch("block dimensions differ");
  if (any_dense(a_, b_, c_, d_)) {
    if (a_.is_diag()) a_ = a_.materialized();
    if (b_.is_diag()) b_ = b_.materialized();
    if (c_.is_diag()) c_ = c_.materialized();
    if (d_.is_diag()) d_ = d_.materialized();
  }
}

BlockOperator BlockOperator::zero(int n, Backend backend) {
  return {Op::zero(n, backend), Op::zero(n, backend), Op::zero(n, backend),
          Op::zero(n, backend)};
}

BlockOperator BlockOperator::identity(int n, Backend backend) {
  return {Op::identity(n, backend), Op::zero(n, backend), Op::zero(n, backend),
          Op::identity(n, backend)};
}

BlockOperator BlockOperator::epsilon(int n, Backend backend) {
  return {Complex(-1.0) * Op::identity(n, backend), Op::zero(n, backend), Op::zero(n, backend),
          Op::identity(n, backend)};
}

BlockOperator BlockOperator::from_b_block(const Op& z) {
  const int n = z.dim();
  const Backend bk = z.backend();
  return {Op::zero(n, bk), z, Op::zero(n, bk), Op::zero(n, bk)};
}

BlockOperator BlockOperator::from_full(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0)
    throw DomainError("full matrix must be square with even dimension");
  const int n = static_cast<int>(m.rows()) / 2;
  return {Op::dense(m.topLeftCorner(n, n)), Op::dense(m.topRightCorner(n, n)),
          Op::dense(m.bottomLeftCorner(n, n)), Op::dense(m.bottomRightCorner(n, n))};
}

BlockOperator BlockOperator::block_diagonal(const Op& a, const Op& d) {
  const Backend bk =
      (a.backend() == Backend::dense || d.backend() == Backend::dense) ? Backend::dense
                                                                       : Backend::symbolic;
  return {a, Op::zero(a.dim(), bk), Op::zero(a.dim(), bk), d};
}

Matrix BlockOperator::full() const {
  const int n = this->n();
  Matrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = a_.to_matrix();
  m.topRightCorner(n, n) = b_.to_matrix();
  m.bottomLeftCorner(n, n) = c_.to_matrix();
  m.bottomRightCorner(n, n) = d_.to_matrix();
  return m;
}

BlockOperator BlockOperator::materialized() const {
  return {a_.materialized(), b_.materialized(), c_.materialized(), d_.materialized()};
}

BlockOperator BlockOperator::adjoint() const {
  return {a_.adjoint(), c_.adjoint(), b_.adjoint(), d_.adjoint()};
}

BlockOperator operator+(const BlockOperator& x, const BlockOperator& y) {
  return {x.a_ + y.a_, x.b_ + y.b_, x.c_ + y.c_, x.d_ + y.d_};
}

BlockOperator operator-(const BlockOperator& x, const BlockOperator& y) {
  return {x.a_ - y.a_, x.b_ - y.b_, x.c_ - y.c_, x.d_ - y.d_};
}

BlockOperator operator*(const BlockOperator& x, const BlockOperator& y) {
  return {x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_,
          x.c_ * y.a_ + x.d_ * y.c_, x.c_ * y.b_ + x.d_ * y.d_};
}

BlockOperator operator*(Complex s, const BlockOperator& x) {
  return {s * x.a_, s * x.b_, s * x.c_, s * x.d_};
}

BlockOperator commutator(const BlockOperator& x, const BlockOperator& y) {
  return x * y - y * x;
}

BlockOperator epsilon_commutator(const BlockOperator& x) {
  const int n = x.n();
  const Backend bk = x.backend();
  return {Op::zero(n, bk), Complex(-2.0) * x.b(), Complex(2.0) * x.c(), Op::zero(n, bk)};
}

namespace {

// Singular values of [[p, q], [r, s]] via the eigenvalues of M^dag M.
void svd2x2(Complex p, Complex q, Complex r, Complex s, double& s1, double& s2) {
  const double t = std::norm(p) + std::norm(q) + std::norm(r) + std::norm(s);
  const double d = std::norm(p * s - q * r);
  const double disc = std::sqrt(std::max(0.0, t * t - 4.0 * d));
  const double hi = 0.5 * (t + disc);
  const double lo = std::max(0.0, 0.5 * (t - disc));
  s1 = std::sqrt(hi);
  s2 = std::sqrt(lo);
}

}  // namespace

RealVector singular_values(const BlockOperator& a) {
  const int n = a.n();
  if (a.backend() == Backend::symbolic) {
    const Vector da = a.a().law().entries(n);
    const Vector db = a.b().law().entries(n);
    const Vector dc = a.c().law().entries(n);
    const Vector dd = a.d().law().entries(n);
    std::vector<double> v;
    v.reserve(2 * n);
    for (int i = 0; i < n; ++i) {
      double s1, s2;
      svd2x2(da[i], db[i], dc[i], dd[i], s1, s2);
      v.push_back(s1);
      v.push_back(s2);
    }
    std::sort(v.begin(), v.end(), std::greater<double>());
    return Eigen::Map<RealVector>(v.data(), 2 * n);
  }
  const Matrix m = a.full();
  if (2 * n <= 4096 && m.isDiagonal(0.0)) {
    std::vector<double> v(2 * n);
    for (int i = 0; i < 2 * n; ++i) v[i] = std::abs(m(i, i));
    std::sort(v.begin(), v.end(), std::greater<double>());
    return Eigen::Map<RealVector>(v.data(), 2 * n);
  }
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues();
}

std::vector<double> prefix_sums(const RealVector& mu, const std::vector<int>& checkpoints) {
  std::vector<double> out;
  out.reserve(checkpoints.size());
  double acc = 0.0;
  int pos = 0;
  for (int nk : checkpoints) {
    if (nk > mu.size()) throw DomainError("checkpoint exceeds available truncation");
    for (; pos < nk; ++pos) acc += mu[pos];
    out.push_back(acc);
  }
  return out;
}

std::vector<double> partial_sums(const BlockOperator& a, const std::vector<int>& checkpoints) {
  for (size_t i = 1; i < checkpoints.size(); ++i)
    if (checkpoints[i] <= checkpoints[i - 1])
      throw DomainError("checkpoints must be strictly increasing");
  return prefix_sums(singular_values(a), checkpoints);
}

namespace {

nlohmann::json op_to_json(const Op& o) {
  nlohmann::json j;
  if (o.is_diag()) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : o.law().terms())
      terms.push_back({{"c", {t.coeff.real(), t.coeff.imag()}}, {"p", t.exponent}});
    j["terms"] = terms;
  } else {
    const Matrix& m = o.matrix();
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
      rows.push_back(row);
    }
    j["entries"] = rows;
  }
  return j;
}

Op op_from_json(const nlohmann::json& j, int n, Backend backend) {
  if (backend == Backend::symbolic) {
    std::vector<PowerLawTerm> terms;
    for (const auto& t : j.at("terms")) {
      const auto& c = t.at("c");
      terms.push_back({Complex(c.at(0).get<double>(), c.at(1).get<double>()),
                       t.at("p").get<double>()});
    }
    return Op::diag(n, PowerLawDiagonal(std::move(terms)));
  }
  Matrix m(n, n);
  const auto& rows = j.at("entries");
  if (static_cast<int>(rows.size()) != n) throw DomainError("dense block has wrong row count");
  for (int i = 0; i < n; ++i) {
    const auto& row = rows.at(i);
    if (static_cast<int>(row.size()) != n)
      throw DomainError("dense block has wrong column count");
    for (int k = 0; k < n; ++k)
      m(i, k) = Complex(row.at(k).at(0).get<double>(), row.at(k).at(1).get<double>());
  }
  return Op::dense(std::move(m));
}

}  // namespace

nlohmann::json to_json(const BlockOperator& a) {
  nlohmann::json j;
  j["backend"] = a.backend() == Backend::dense ? "dense" : "symbolic";
  j["N"] = a.n();
  j["blocks"] = {{"a", op_to_json(a.a())},
                 {"b", op_to_json(a.b())},
                 {"c", op_to_json(a.c())},
                 {"d", op_to_json(a.d())}};
  return j;
}

BlockOperator block_operator_from_json(const nlohmann::json& j) {
  const std::string bk = j.at("backend").get<std::string>();
  if (bk != "dense" && bk != "symbolic") throw DomainError("unknown backend: " + bk);
  const Backend backend = bk == "dense" ? Backend::dense : Backend::symbolic;
  const int n = j.at("N").get<int>();
  if (n <= 0) throw DomainError("N must be positive");
  const auto& blocks = j.at("blocks");
  return {op_from_json(blocks.at("a"), n, backend), op_from_json(blocks.at("b"), n, backend),
          op_from_json(blocks.at("c"), n, backend), op_from_json(blocks.at("d"), n, backend)};
}

}  // namespace opgeo
