#include <doctest.h>

#include <cmath>

#include "opgeo/ensembles.hpp"
#include "opgeo/ideals.hpp"
#include "opgeo/matrix_functions.hpp"

using namespace opgeo;

namespace {

// Spectral oracle: f(A) from an explicit Hermitian eigendecomposition.
template <typename F>
Matrix spectral_apply(const Matrix& a, F f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  Eigen::VectorXd d = es.eigenvalues();
  for (int i = 0; i < d.size(); ++i) d[i] = f(d[i]);
  return es.eigenvectors() * d.asDiagonal().toDenseMatrix().cast<Complex>() *
         es.eigenvectors().adjoint();
}

double dsqrt(double x) { return std::sqrt(x); }
double dlog(double x) { return std::log(x); }

double rel_err(const Matrix& x, const Matrix& y) { return (x - y).norm() / y.norm(); }

}  // namespace

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  std::vector<double> nodes, weights;
  gauss_legendre(8, nodes, weights);
  // Oracle values: int_0^1 x^k dx = 1/(k+1), exact for k <= 15 at 8 nodes.
  for (int k = 0; k <= 15; ++k) {
    double acc = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * std::pow(nodes[i], k);
    CHECK(acc == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
  }
}

TEST_CASE("integral square root matches the spectral oracle") {
  Rng rng(1);
  for (int n : {8, 32, 64}) {
    const Matrix a = random_spd(n, 100.0, 2.0, rng);
    const Matrix s = sqrt_integral(a);
    CHECK(rel_err(s, spectral_apply(a, dsqrt)) < 1e-9);
    CHECK(rel_err(s * s, a) < 1e-8);
  }
}

TEST_CASE("fractional powers match the spectral oracle across alpha") {
  Rng rng(2);
  const Matrix a = random_spd(24, 50.0, 3.0, rng);
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  for (double alpha : {0.15, 0.35, 0.5, 0.75, 0.9}) {
    Eigen::VectorXd d = es.eigenvalues();
    for (int i = 0; i < d.size(); ++i) d[i] = std::pow(d[i], alpha);
    const Matrix oracle = es.eigenvectors() *
                          d.asDiagonal().toDenseMatrix().cast<Complex>() *
                          es.eigenvectors().adjoint();
    CHECK(rel_err(frac_power(a, alpha), oracle) < 1e-8);
  }
  CHECK_THROWS_AS(frac_power(a, 0.0), DomainError);
  CHECK_THROWS_AS(frac_power(a, 1.0), DomainError);
}

TEST_CASE("integral logarithm matches the spectral oracle") {
  Rng rng(3);
  const Matrix a = random_spd(32, 30.0, 4.0, rng);
  CHECK(rel_err(log_integral(a), spectral_apply(a, dlog)) < 1e-9);
}

TEST_CASE("matrix functions reject indefinite input") {
  Matrix bad = Matrix::Identity(4, 4);
  bad(2, 2) = -1.0;
  CHECK_THROWS_AS(sqrt_integral(bad), DomainError);
  CHECK_THROWS_AS(log_integral(bad), DomainError);
}

TEST_CASE("matrix exponential against scalar and series oracles") {
  // Diagonal oracle.
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = Complex(0.3, 1.0);
  d(1, 1) = Complex(-2.0, 0.0);
  d(2, 2) = Complex(0.0, -3.5);
  const Matrix ed = expm(d);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(ed(i, i) - std::exp(d(i, i))) < 1e-13);

  // Taylor-series oracle on a random contraction.
  Rng rng(4);
  const Matrix a = 0.4 * random_gaussian(6, rng) / std::sqrt(6.0);
  Matrix series = Matrix::Identity(6, 6), term = Matrix::Identity(6, 6);
  for (int k = 1; k <= 30; ++k) {
    term = term * a / double(k);
    series += term;
  }
  CHECK(rel_err(expm(a), series) < 1e-12);

  // Group law for commuting arguments.
  CHECK(rel_err(expm(a) * expm(-a), Matrix::Identity(6, 6)) < 1e-12);
}

TEST_CASE("polar decomposition: unitary factor, positive factor, reconstruction") {
  Rng rng(5);
  const int n = 20;
  const Matrix a = random_gaussian(n, rng) + 3.0 * std::sqrt(double(n)) * Matrix::Identity(n, n);
  const PolarDecomposition pd = polar(a);
  CHECK((pd.u.adjoint() * pd.u - Matrix::Identity(n, n)).norm() < 1e-10);
  CHECK((pd.u * pd.p - a).norm() < 1e-9 * a.norm());
  Eigen::SelfAdjointEigenSolver<Matrix> es(pd.p);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
  // Oracle: p = (A^dag A)^{1/2} spectrally.
  CHECK(rel_err(pd.p, spectral_apply(a.adjoint() * a, dsqrt)) < 1e-8);
}

TEST_CASE("retraction interpolates from the unitary factor to the operator") {
  Rng rng(6);
  const int n = 12;
  const Matrix a = random_gaussian(n, rng) + 3.0 * std::sqrt(double(n)) * Matrix::Identity(n, n);
  const PolarDecomposition pd = polar(a);
  CHECK((retraction(a, 0.0) - pd.u).norm() < 1e-9);
  CHECK((retraction(a, 1.0) - a).norm() < 1e-8 * a.norm());
  // Singular values of A(t) are s_i^t (oracle from the endpoint spectrum).
  Eigen::BDCSVD<Matrix> sa(a);
  Eigen::BDCSVD<Matrix> sh(retraction(a, 0.5));
  for (int i = 0; i < n; ++i) {
    // Both lists are sorted; s -> s^0.5 is monotone so order is preserved.
    CHECK(sh.singularValues()[i] ==
          doctest::Approx(std::sqrt(sa.singularValues()[i])).epsilon(1e-7));
  }
}

TEST_CASE("combined epsilon norm assembles the two mixing seminorms") {
  Rng rng(7);
  const int n = 32;
  const BlockOperator u = random_lie_symbolic(n, rng);
  const double expect =
      std::max(op_singular_values(u.a())[0], op_singular_values(u.d())[0]) +
      marcinkiewicz_norm_value(epsilon_commutator(u), NormKind::two_inf);
  CHECK(combined_epsilon_norm(u) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("square-root Lipschitz bound holds on SPD pairs with a true floor") {
  Rng rng(8);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 12;
    const Matrix a = random_spd(n, 10.0, 2.0, rng) + 0.5 * Matrix::Identity(n, n);
    const Matrix b = a + 0.05 * random_spd(n, 4.0, 1.0, rng);
    const BlockOperator ba = BlockOperator::from_full(
        (Matrix(2 * n, 2 * n) << a, Matrix::Zero(n, n), Matrix::Zero(n, n), a).finished());
    const BlockOperator bb = BlockOperator::from_full(
        (Matrix(2 * n, 2 * n) << b, Matrix::Zero(n, n), Matrix::Zero(n, n), b).finished());
    CHECK(check_continuity_bounds(ba, bb, 0.4).passed());
  }
}

TEST_CASE("an overstated spectral floor breaks the Lipschitz certificate") {
  // ||sqrt(A)-sqrt(B)|| = 0.05 while ||A-B||/(2 sqrt(m)) with the false floor
  // m = 4 is only 0.005625: the certified bound must fail.
  const int n = 4;
  const Matrix a = 0.04 * Matrix::Identity(n, n);
  const Matrix b = 0.0625 * Matrix::Identity(n, n);
  BlockOperator ba = BlockOperator::block_diagonal(Op::dense(a), Op::dense(a));
  BlockOperator bb = BlockOperator::block_diagonal(Op::dense(b), Op::dense(b));
  CHECK(check_continuity_bounds(ba, bb, 4.0).status == Status::fail);
}

TEST_CASE("quadrature rules stabilize under node doubling") {
  Rng rng(9);
  const Matrix a = random_spd(16, 1e4, 1.0, rng);  // badly conditioned
  const Matrix s1 = sqrt_integral(a, QuadratureRule::algebraic(32, 1e-11));
  const Matrix s2 = sqrt_integral(a, QuadratureRule::algebraic(128, 1e-11));
  CHECK(rel_err(s1, s2) < 1e-9);
}
