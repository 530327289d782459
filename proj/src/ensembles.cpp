#include "opgeo/ensembles.hpp"

#include <cmath>

#include <Eigen/QR>

#include "opgeo/matrix_functions.hpp"

namespace opgeo {

namespace {

double uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

}  // namespace

Complex random_coeff(Rng& rng, double lo, double hi) {
  const double r = uniform(rng, lo, hi);
  const double phase = uniform(rng, 0.0, 2.0 * M_PI);
  return std::polar(r, phase);
}

PowerLawDiagonal random_law(Rng& rng, double p_min, int extra_terms, double scale) {
  std::vector<PowerLawTerm> terms;
  terms.push_back({scale * random_coeff(rng), p_min});
  std::uniform_int_distribution<int> count(0, extra_terms);
  const int k = count(rng);
  for (int i = 0; i < k; ++i)
    terms.push_back({0.5 * scale * random_coeff(rng), p_min + uniform(rng, 0.3, 1.2)});
  return PowerLawDiagonal(std::move(terms));
}

PowerLawDiagonal random_positive_law(Rng& rng, double p_min, double scale) {
  return {Complex(uniform(rng, 0.3 * scale, scale), 0.0), p_min};
}

PowerLawDiagonal random_imaginary_law(Rng& rng, double p_min, double scale) {
  std::vector<PowerLawTerm> terms;
  terms.push_back({Complex(0.0, uniform(rng, -scale, scale)), p_min});
  terms.push_back({Complex(0.0, uniform(rng, -scale, scale)), p_min + uniform(rng, 0.3, 1.2)});
  return PowerLawDiagonal(std::move(terms));
}

Matrix random_gaussian(int n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

Matrix random_unitary(int n, Rng& rng) {
  const Eigen::HouseholderQR<Matrix> qr(random_gaussian(n, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

Matrix random_decay_matrix(int n, double p, double scale, Rng& rng) {
  const Matrix u = random_unitary(n, rng);
  const Matrix v = random_unitary(n, rng);
  Vector s(n);
  for (int k = 0; k < n; ++k) s[k] = scale * std::pow(double(k + 1), -p);
  return u * s.asDiagonal() * v.adjoint();
}

Matrix random_spd(int n, double kappa, double top, Rng& rng) {
  const Matrix q = random_unitary(n, rng);
  Vector lam(n);
  for (int k = 0; k < n; ++k)
    lam[k] = top * std::exp(-uniform(rng, 0.0, std::log(kappa)));
  const Matrix m = q * lam.asDiagonal() * q.adjoint();
  return Complex(0.5) * (m + Matrix(m.adjoint()));
}

BlockOperator random_lie_symbolic(int n, Rng& rng, double p_offdiag, double scale) {
  const Op alpha = Op::diag(n, random_imaginary_law(rng, uniform(rng, 0.0, 1.0), scale));
  const Op delta = Op::diag(n, random_imaginary_law(rng, uniform(rng, 0.0, 1.0), scale));
  const Op beta = Op::diag(n, random_law(rng, p_offdiag, 1, scale));
  return {alpha, beta, beta.adjoint(), delta};
}

BlockOperator random_lie_dense(int n, Rng& rng, double p_offdiag, double scale) {
  Matrix a = random_gaussian(n, rng);
  a = 0.5 * scale / std::sqrt(double(n)) * (a - Matrix(a.adjoint()));
  Matrix d = random_gaussian(n, rng);
  d = 0.5 * scale / std::sqrt(double(n)) * (d - Matrix(d.adjoint()));
  const Matrix b = random_decay_matrix(n, p_offdiag, scale, rng);
  return {Op::dense(a), Op::dense(b), Op::dense(b.adjoint()), Op::dense(d)};
}

GroupElement random_pseudo_unitary_dense(int n, Rng& rng, double scale) {
  const BlockOperator u = random_lie_dense(n, rng, 0.5, scale);
  return {BlockOperator::from_full(expm(u.full())), GroupKind::pseudo_unitary};
}

GroupElement random_gl_symbolic(int n, Rng& rng, double offdiag_scale, double diag_scale) {
  const Backend s = Backend::symbolic;
  const Op a = Op::identity(n, s) +
               Op::diag(n, random_law(rng, uniform(rng, 1.0, 1.6), 1, diag_scale));
  const Op d = Op::identity(n, s) +
               Op::diag(n, random_law(rng, uniform(rng, 1.0, 1.6), 1, diag_scale));
  const Op b = Op::diag(n, random_law(rng, 0.5, 1, offdiag_scale));
  const Op c = Op::diag(n, random_law(rng, 0.5, 1, offdiag_scale));
  return {BlockOperator(a, b, c, d), GroupKind::general_linear};
}

DiscPoint random_disc_symbolic(int n, Rng& rng, double p, double scale) {
  return DiscPoint(Op::diag(n, random_law(rng, p, 1, scale)));
}

DiscPoint random_disc_dense(int n, Rng& rng, double scale) {
  return DiscPoint(Op::dense(random_decay_matrix(n, 0.5, scale, rng)));
}

ExtendedElement random_extended_symbolic(int n, Rng& rng, double offdiag_scale) {
  const GroupElement g = random_gl_symbolic(n, rng, offdiag_scale);
  return make_extended(g.g, Op::diag(n, random_law(rng, uniform(rng, 1.0, 1.6), 1, 0.3)));
}

BorelElement random_borel_symbolic(int n, Rng& rng, double offdiag_scale) {
  const Backend s = Backend::symbolic;
  const Op a = Op::identity(n, s) + Op::diag(n, random_law(rng, uniform(rng, 1.0, 1.6), 1, 0.3));
  const Op d = Op::identity(n, s) + Op::diag(n, random_law(rng, uniform(rng, 1.0, 1.6), 1, 0.3));
  const Op b = Op::diag(n, random_law(rng, 0.5, 1, offdiag_scale));
  const BlockOperator beta(a, b, Op::zero(n, s), d);
  const Op r = a * inverse_one_plus(Op::diag(n, random_law(rng, uniform(rng, 1.0, 1.6), 1, 0.3)));
  return {beta, r};
}

}  // namespace opgeo
