#include <doctest.h>

#include <cmath>

#include "opgeo/block_operator.hpp"
#include "opgeo/ensembles.hpp"
#include "opgeo/op.hpp"
#include "opgeo/power_law.hpp"

using namespace opgeo;

TEST_CASE("power law arithmetic matches entrywise evaluation") {
  const PowerLawDiagonal x({{Complex(2.0, 1.0), 0.5}, {Complex(-0.3, 0.0), 1.5}});
  const PowerLawDiagonal y({{Complex(0.7, -0.2), 1.0}, {Complex(1.0, 0.0), 0.0}});
  for (std::int64_t n : {1, 2, 7, 100, 4096}) {
    const Complex xn = Complex(2.0, 1.0) * std::pow(double(n), -0.5) -
                       0.3 * std::pow(double(n), -1.5);
    CHECK(std::abs(x.entry(n) - xn) < 1e-14 * std::abs(xn));
    CHECK(std::abs((x + y).entry(n) - (x.entry(n) + y.entry(n))) < 1e-13);
    CHECK(std::abs((x - y).entry(n) - (x.entry(n) - y.entry(n))) < 1e-13);
    CHECK(std::abs((x * y).entry(n) - x.entry(n) * y.entry(n)) < 1e-13);
    CHECK(std::abs((Complex(0.0, 3.0) * x).entry(n) - Complex(0.0, 3.0) * x.entry(n)) < 1e-13);
    CHECK(std::abs(x.conjugated().entry(n) - std::conj(x.entry(n))) < 1e-14);
  }
}

TEST_CASE("power law term bookkeeping") {
  const PowerLawDiagonal x({{Complex(1.0), 1.0}, {Complex(2.0), 0.5}});
  CHECK(x.min_exponent() == doctest::Approx(0.5));
  CHECK(std::abs(x.coeff_at(1.0) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(x.coeff_at(0.7)) == 0.0);
  CHECK_FALSE(x.has_constant_term());
  CHECK(PowerLawDiagonal::one().has_constant_term());
  // Merging of equal exponents and exact cancellation to the zero law.
  const PowerLawDiagonal merged = x + PowerLawDiagonal(Complex(-2.0), 0.5);
  CHECK(std::abs(merged.coeff_at(0.5)) == 0.0);
  CHECK((x - x).is_zero());
  CHECK(std::isinf(PowerLawDiagonal().min_exponent()));
  // Truncation drops only fast terms.
  const PowerLawDiagonal cut = x.truncated_above(0.8);
  CHECK(std::abs(cut.coeff_at(0.5) - Complex(2.0)) < 1e-15);
  CHECK(std::abs(cut.coeff_at(1.0)) == 0.0);
}

TEST_CASE("power law monotonicity and positivity predicates") {
  const PowerLawDiagonal good(Complex(1.0), 0.7);
  CHECK(good.nonincreasing_abs(64));
  CHECK(good.nonnegative_coeffs());
  const PowerLawDiagonal mixed({{Complex(1.0), 1.0}, {Complex(-0.999), 0.999}});
  CHECK_FALSE(mixed.nonnegative_coeffs());
  CHECK(good.sup_abs(64) == doctest::Approx(1.0));
}

TEST_CASE("neumann inverse rest satisfies (1+a)(1+rest) = 1 up to the cutoff") {
  const PowerLawDiagonal a({{Complex(0.4, 0.1), 0.6}, {Complex(-0.2), 1.1}});
  const PowerLawDiagonal rest = neumann_inverse_rest(a, kSeriesCutoff);
  // Oracle: direct entrywise inversion. Residual entries must decay faster
  // than n^{-cutoff}.
  for (std::int64_t n : {1, 2, 8, 64, 1024}) {
    const Complex exact = 1.0 / (1.0 + a.entry(n)) - 1.0;
    CHECK(std::abs(rest.entry(n) - exact) < 2.0 * std::pow(double(n), -kSeriesCutoff));
  }
}

TEST_CASE("log_one_plus matches scalar logarithm entrywise up to the cutoff") {
  const PowerLawDiagonal a({{Complex(0.3, -0.1), 0.7}});
  const PowerLawDiagonal l = log_one_plus(a, kSeriesCutoff);
  for (std::int64_t n : {1, 4, 32, 512}) {
    const Complex exact = std::log(1.0 + a.entry(n));
    CHECK(std::abs(l.entry(n) - exact) < 2.0 * std::pow(double(n), -kSeriesCutoff));
  }
}

TEST_CASE("Op algebra agrees with materialized matrices") {
  Rng rng(123);
  const int n = 24;
  const Op xs = Op::diag(n, random_law(rng, 0.5, 2));
  const Op ys = Op::diag(n, random_law(rng, 0.8, 1));
  const Op xd = Op::dense(random_gaussian(n, rng));
  const Op yd = Op::dense(random_gaussian(n, rng));

  CHECK(((xs * ys).to_matrix() - xs.to_matrix() * ys.to_matrix()).norm() < 1e-12);
  CHECK(((xs + ys).to_matrix() - (xs.to_matrix() + ys.to_matrix())).norm() < 1e-12);
  CHECK(((xd * yd).to_matrix() - xd.to_matrix() * yd.to_matrix()).norm() < 1e-10);
  CHECK((xs.adjoint().to_matrix() - xs.to_matrix().adjoint()).norm() < 1e-13);
  CHECK((xd.adjoint().to_matrix() - xd.to_matrix().adjoint()).norm() == 0.0);
  CHECK(xs.sup_norm() ==
        doctest::Approx(xs.to_matrix().cwiseAbs().maxCoeff()).epsilon(1e-12));

  // Identity / zero constructors.
  CHECK(Op::identity(n, Backend::symbolic).to_matrix().isApprox(Matrix::Identity(n, n)));
  CHECK(Op::zero(n, Backend::dense).is_zero());
}

TEST_CASE("op inverses agree with dense solves") {
  Rng rng(77);
  const int n = 16;
  const PowerLawDiagonal a = random_law(rng, 0.6, 1, 0.4);
  const Op sym = Op::diag(n, a);
  // The Neumann series is truncated above exponent kSeriesCutoff, so the
  // entrywise residual is bounded by the first dropped power of |a_n|.
  const int dropped = static_cast<int>(kSeriesCutoff / a.min_exponent()) + 1;
  const Op inv_sym = inverse_one_plus(sym);
  for (std::int64_t k : {1, 2, 8, 16}) {
    const Complex exact = 1.0 / (1.0 + a.entry(k));
    const double budget = 1e-13 + 2.0 * std::pow(std::abs(a.entry(k)), dropped);
    CHECK(std::abs(inv_sym.law().entry(k) - exact) < budget);
  }

  const Matrix m = random_gaussian(n, rng) + 5.0 * Matrix::Identity(n, n);
  const Op dense = Op::dense(m);
  CHECK((inverse(dense).to_matrix() - m.partialPivLu().inverse()).norm() < 1e-10);

  // Symbolic full inverse of c0(1 + decaying), same cutoff contract.
  const Op shifted = Complex(2.0, 0.5) * (Op::identity(n, Backend::symbolic) + sym);
  const Op inv_shifted = inverse(shifted);
  for (std::int64_t k : {1, 2, 8, 16}) {
    const Complex exact = 1.0 / (Complex(2.0, 0.5) * (1.0 + a.entry(k)));
    const double budget = 1e-13 + std::pow(std::abs(a.entry(k)), dropped);
    CHECK(std::abs(inv_shifted.law().entry(k) - exact) < budget);
  }
}

TEST_CASE("op singular values are exact sorted moduli for laws") {
  Rng rng(5);
  const int n = 40;
  const PowerLawDiagonal law = random_law(rng, 0.5, 2);
  const RealVector mu = op_singular_values(Op::diag(n, law));
  std::vector<double> expect;
  for (int k = 1; k <= n; ++k) expect.push_back(std::abs(law.entry(k)));
  std::sort(expect.begin(), expect.end(), std::greater<double>());
  for (int k = 0; k < n; ++k) CHECK(mu[k] == doctest::Approx(expect[k]).epsilon(1e-14));
}

TEST_CASE("block operator full/from_full round trip and algebra") {
  Rng rng(99);
  const int n = 12;
  const BlockOperator u = random_lie_dense(n, rng);
  const BlockOperator v = random_lie_dense(n, rng);
  CHECK((BlockOperator::from_full(u.full()).full() - u.full()).norm() == 0.0);
  CHECK(((u * v).full() - u.full() * v.full()).norm() < 1e-11);
  CHECK((u.adjoint().full() - u.full().adjoint()).norm() == 0.0);
  CHECK((commutator(u, v).full() - (u.full() * v.full() - v.full() * u.full())).norm() < 1e-11);

  // [eps, A] closed form against the materialized grading.
  const Matrix eps = BlockOperator::epsilon(n, Backend::dense).full();
  CHECK((epsilon_commutator(u).full() - (eps * u.full() - u.full() * eps)).norm() < 1e-12);
}

TEST_CASE("symbolic block singular values match a dense SVD oracle") {
  Rng rng(2024);
  const int n = 48;
  const BlockOperator u = random_lie_symbolic(n, rng);
  const RealVector exact = singular_values(u);
  Eigen::BDCSVD<Matrix> svd(u.full());
  const RealVector oracle = svd.singularValues();
  REQUIRE(exact.size() == oracle.size());
  for (int k = 0; k < exact.size(); ++k)
    CHECK(exact[k] == doctest::Approx(oracle[k]).epsilon(1e-9));
}

TEST_CASE("prefix sums against direct accumulation") {
  RealVector mu(8);
  mu << 8, 7, 6, 5, 4, 3, 2, 1;
  const std::vector<double> s = prefix_sums(mu, {1, 2, 4, 8});
  CHECK(s == std::vector<double>{8, 15, 26, 36});
}

TEST_CASE("block operator JSON round trip") {
  Rng rng(31);
  const BlockOperator u = random_lie_symbolic(8, rng);
  const BlockOperator back = block_operator_from_json(to_json(u));
  CHECK(block_sup_norm(back - u) < 1e-14);
  const BlockOperator d = random_lie_dense(6, rng);
  const BlockOperator dback = block_operator_from_json(to_json(d));
  CHECK((dback.full() - d.full()).norm() < 1e-14);
}

TEST_CASE("mixed backends materialize on block construction") {
  Rng rng(8);
  const int n = 6;
  const Op s = Op::diag(n, random_law(rng, 0.5));
  const Op d = Op::dense(random_gaussian(n, rng));
  const BlockOperator mixed(s, d, Op::zero(n, Backend::symbolic), Op::identity(n, Backend::symbolic));
  CHECK(mixed.backend() == Backend::dense);
}
