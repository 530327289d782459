#include "opgeo/op.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace opgeo {

Op Op::dense(Matrix m) {
  if (m.rows() != m.cols()) throw DomainError("Op::dense expects a square matrix");
  Op o;
  o.n_ = static_cast<int>(m.rows());
  o.v_ = std::move(m);
  return o;
}

Op Op::diag(int n, PowerLawDiagonal law) {
  if (n <= 0) throw DomainError("Op::diag expects positive dimension");
  Op o;
  o.n_ = n;
  o.v_ = std::move(law);
  return o;
}

Op Op::zero(int n, Backend backend) {
  return backend == Backend::dense ? Op::dense(Matrix::Zero(n, n)) : Op::diag(n, {});
}

Op Op::identity(int n, Backend backend) {
  return backend == Backend::dense ? Op::dense(Matrix::Identity(n, n))
                                   : Op::diag(n, PowerLawDiagonal::one());
}

bool Op::is_zero() const {
  if (is_diag()) return law().is_zero();
  return matrix().isZero(0.0);
}

const Matrix& Op::matrix() const {
  if (!std::holds_alternative<Matrix>(v_)) throw DomainError("Op is symbolic, not dense");
  return std::get<Matrix>(v_);
}

const PowerLawDiagonal& Op::law() const {
  if (!std::holds_alternative<PowerLawDiagonal>(v_))
    throw DomainError("Op is dense, not symbolic");
  return std::get<PowerLawDiagonal>(v_);
}

Matrix Op::to_matrix() const {
  if (!is_diag()) return matrix();
  Matrix m = Matrix::Zero(n_, n_);
  const Vector d = law().entries(n_);
  for (int i = 0; i < n_; ++i) m(i, i) = d[i];
  return m;
}

Op Op::adjoint() const {
  if (is_diag()) return Op::diag(n_, law().conjugated());
  return Op::dense(matrix().adjoint());
}

double Op::sup_norm() const {
  if (is_diag()) return law().sup_abs(n_);
  return matrix().operatorNorm();
}

namespace {

void require_same_dim(const Op& x, const Op& y) {
  if (x.dim() != y.dim()) throw TruncationMismatch("operator dimensions differ");
}

}  // namespace

Op operator+(const Op& x, const Op& y) {
  require_same_dim(x, y);
  if (x.is_diag() && y.is_diag()) return Op::diag(x.dim(), x.law() + y.law());
  return Op::dense(x.to_matrix() + y.to_matrix());
}

Op operator-(const Op& x, const Op& y) {
  require_same_dim(x, y);
  if (x.is_diag() && y.is_diag()) return Op::diag(x.dim(), x.law() - y.law());
  return Op::dense(x.to_matrix() - y.to_matrix());
}

Op operator*(const Op& x, const Op& y) {
  require_same_dim(x, y);
  if (x.is_diag() && y.is_diag()) return Op::diag(x.dim(), x.law() * y.law());
  return Op::dense(x.to_matrix() * y.to_matrix());
}

Op operator*(Complex s, const Op& x) {
  if (x.is_diag()) return Op::diag(x.dim(), s * x.law());
  return Op::dense(s * x.matrix());
}

Op inverse_one_plus(const Op& a, double cutoff) {
  if (a.is_diag()) {
    return Op::identity(a.dim(), Backend::symbolic) +
           Op::diag(a.dim(), neumann_inverse_rest(a.law(), cutoff));
  }
  const Matrix m = Matrix::Identity(a.dim(), a.dim()) + a.matrix();
  Eigen::PartialPivLU<Matrix> lu(m);
  return Op::dense(lu.inverse());
}

Op inverse(const Op& a, double cutoff) {
  if (!a.is_diag()) {
    Eigen::PartialPivLU<Matrix> lu(a.matrix());
    return Op::dense(lu.inverse());
  }
  const PowerLawDiagonal& law = a.law();
  const Complex c0 = law.coeff_at(0.0);
  if (std::abs(c0) < 1e-12)
    throw DomainError("symbolic inverse needs a nonzero constant term");
  const PowerLawDiagonal rest = (1.0 / c0) * (law - PowerLawDiagonal::constant(c0));
  Op inv_one = inverse_one_plus(Op::diag(a.dim(), rest), cutoff);
  return (1.0 / c0) * inv_one;
}

RealVector op_singular_values(const Op& a) {
  if (a.is_diag()) {
    const Vector d = a.law().entries(a.dim());
    std::vector<double> v(a.dim());
    for (int i = 0; i < a.dim(); ++i) v[i] = std::abs(d[i]);
    std::sort(v.begin(), v.end(), std::greater<double>());
    return Eigen::Map<RealVector>(v.data(), a.dim());
  }
  Eigen::BDCSVD<Matrix> svd(a.matrix());
  return svd.singularValues();
}

}  // namespace opgeo
