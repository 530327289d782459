// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "opgeo/cli_runner.hpp"
#include "opgeo/dixmier.hpp"
#include "opgeo/ensembles.hpp"
#include "opgeo/flat_geometry.hpp"
#include "opgeo/grassmannian.hpp"
#include "opgeo/ideals.hpp"
#include "opgeo/matrix_functions.hpp"
#include "opgeo/quantization_disc.hpp"

using namespace opgeo;
namespace fs = std::filesystem;

namespace {

int failures = 0;

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s  criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void run(int id, const std::string& name, const std::function<std::pair<bool, std::string>()>& f) {
  try {
    const auto [ok, detail] = f();
    report(id, name, ok, detail);
  } catch (const std::exception& e) {
    report(id, name, false, std::string("threw: ") + e.what());
  }
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

// --- criterion 1 ---------------------------------------------------------
std::pair<bool, std::string> c1_harmonic_trace() {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = 1 << 14;
  const DixmierScheme scheme = DixmierScheme::dyadic(4, 14, 0.01);
  const Op h = Op::diag(n, PowerLawDiagonal(Complex(1.0), 1.0));

  const TraceEstimate exact = dixmier_trace_op(h, scheme);
  const double sym_err = std::abs(exact.value - Complex(1.0)) + exact.halfwidth;

  const TraceEstimate num = dixmier_trace_numeric(h, scheme);
  const double num_err = std::abs(num.value - Complex(1.0));

  const double dt = seconds_since(t0);
  const bool ok = sym_err < 1e-14 && num_err <= 2e-3 && num.measurable && dt <= 5.0;
  return {ok, "symbolic err " + fmt(sym_err) + ", ladder err " + fmt(num_err) + ", " +
                  fmt(dt) + "s"};
}

// --- criterion 2 ---------------------------------------------------------
std::pair<bool, std::string> c2_det_multiplicative() {
  Rng rng(1001);
  const int ns = 1 << 12;
  const DixmierScheme sym = DixmierScheme::dyadic(4, 12);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Op a = Op::diag(ns, random_law(rng, 1.0, 1, 0.5));
    const Op b = Op::diag(ns, random_law(rng, 1.0 + 0.004 * k, 1, 0.5));
    const VerificationReport r = check_det_multiplicative(a, b, sym);
    worst = std::max(worst, r.max_error);
    if (!r.passed() || r.max_error > 1e-12)
      return {false, "symbolic pair " + std::to_string(k) + " err " + fmt(r.max_error)};
  }
  const int nd = 128;
  const DixmierScheme dense = DixmierScheme::dyadic(4, 7, 0.2);
  int band_ok = 0;
  for (int k = 0; k < 50; ++k) {
    const Op a = Op::dense(random_decay_matrix(nd, 1.05, 0.4, rng));
    const Op b = Op::dense(random_decay_matrix(nd, 1.1, 0.4, rng));
    const VerificationReport r = check_det_multiplicative(a, b, dense);
    if (r.status == Status::fail)
      return {false, "dense pair " + std::to_string(k) + " outside band, err " +
                         fmt(r.max_error)};
    if (r.passed()) ++band_ok;
  }
  return {true, "200 symbolic exact (worst " + fmt(worst) + "), 50 dense within band (" +
                    std::to_string(band_ok) + " conclusive)"};
}

// --- criterion 3 ---------------------------------------------------------
std::pair<bool, std::string> c3_ideal_products() {
  Rng rng(1002);
  const int ns = 512;
  const double pa[] = {0.5, 0.7, 0.7, 1.0, 1.0};
  const double pb[] = {0.5, 0.5, 0.7, 0.5, 1.0};
  double worst_mu = 0.0;
  for (int e = 0; e < 100; ++e) {
    for (int i = 0; i < 5; ++i) {
      const BlockOperator a =
          BlockOperator::block_diagonal(Op::diag(ns, random_positive_law(rng, pa[i])),
                                        Op::diag(ns, random_positive_law(rng, pa[i])));
      const BlockOperator b =
          BlockOperator::block_diagonal(Op::diag(ns, random_positive_law(rng, pb[i])),
                                        Op::diag(ns, random_positive_law(rng, pb[i])));
      const VerificationReport r = check_ideal_products(a, b);
      if (r.status != Status::pass)
        return {false, "combo (" + fmt(pa[i]) + "," + fmt(pb[i]) + ") ensemble " +
                           std::to_string(e) + ": " + to_string(r.status) + " err " +
                           fmt(r.max_error)};
    }
    // Submultiplicativity of the singular values, roundoff-level tolerance.
    const int nd = 64;
    const BlockOperator da =
        BlockOperator::from_full(random_decay_matrix(2 * nd, 0.5, 1.0, rng));
    const BlockOperator db =
        BlockOperator::from_full(random_decay_matrix(2 * nd, 0.8, 1.0, rng));
    std::vector<std::pair<int, int>> samples;
    for (int i = 1; i <= 12; ++i) samples.push_back({i, 2 * i});
    const VerificationReport mu = check_product_inequality(da, db, samples);
    worst_mu = std::max(worst_mu, mu.max_error);
    if (!mu.passed())
      return {false, "mu-inequality ensemble " + std::to_string(e) + " err " +
                         fmt(mu.max_error)};
  }
  return {true, "5 inclusion combos x 100 ensembles, mu-inequality worst " + fmt(worst_mu)};
}

// --- criterion 4 ---------------------------------------------------------
std::pair<bool, std::string> c4_mobius_action() {
  Rng rng(1003);
  const int n = 32;
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const GroupElement g1 = random_pseudo_unitary_dense(n, rng);
    const GroupElement g2 = random_pseudo_unitary_dense(n, rng);
    const DiscPoint z = random_disc_dense(n, rng);
    const DiscPoint two = act(g1, act(g2, z));
    const DiscPoint one = act(GroupElement(g1.g * g2.g, GroupKind::pseudo_unitary), z);
    worst = std::max(worst, (two.z - one.z).sup_norm());
    worst = std::max(worst, std::max(0.0, two.z.sup_norm() - (1.0 - 1e-10)));
  }
  return {worst <= 1e-9, "500 trials, worst defect " + fmt(worst)};
}

// --- criterion 5 ---------------------------------------------------------
std::pair<bool, std::string> c5_phi_involution() {
  Rng rng(1004);
  const int n = 24;
  double worst = 0.0;
  const BlockOperator id = BlockOperator::identity(n, Backend::dense);
  const BlockOperator eps = BlockOperator::epsilon(n, Backend::dense);
  for (int k = 0; k < 200; ++k) {
    const DiscPoint z = random_disc_dense(n, rng);
    const BlockOperator phi = phi_of_z(z).phi;
    worst = std::max(worst, block_sup_norm(phi * phi - id));
    worst = std::max(worst, block_sup_norm(eps * phi.adjoint() * eps - phi));
    const GroupElement g = random_pseudo_unitary_dense(n, rng);
    const BlockOperator lhs = phi_of_z(act(g, z)).phi;
    const BlockOperator rhs = g.g * phi * group_inverse(g).g;
    worst = std::max(worst, block_sup_norm(lhs - rhs));
  }
  return {worst <= 1e-9, "200 trials, worst defect " + fmt(worst)};
}

// --- criterion 6 ---------------------------------------------------------
std::pair<bool, std::string> c6_degeneracy() {
  Rng rng(1005);
  const int n = 1 << 10;
  const DixmierScheme scheme = DixmierScheme::dyadic(4, 10);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const PhiPoint phi = phi_of_z(random_disc_symbolic(n, rng));
    const BlockOperator small(Op::diag(n, random_imaginary_law(rng, 1.2, 0.4)),
                              Op::diag(n, random_law(rng, 1.2, 1, 0.4)),
                              Op::diag(n, random_law(rng, 1.3, 1, 0.4)),
                              Op::diag(n, random_imaginary_law(rng, 1.4, 0.4)));
    const VerificationReport r =
        check_degeneracy(phi, small, random_lie_symbolic(n, rng), scheme);
    worst = std::max(worst, r.max_error);
    if (!r.passed()) return {false, "config " + std::to_string(k) + " err " + fmt(r.max_error)};
  }
  return {worst <= 1e-12, "100 symbolic configs, worst err " + fmt(worst)};
}

// --- criterion 7 ---------------------------------------------------------
std::pair<bool, std::string> c7_poisson_identity() {
  Rng rng(1006);
  const int ns = 1 << 10;
  const DixmierScheme sym = DixmierScheme::dyadic(4, 10);
  for (int k = 0; k < 20; ++k) {
    std::vector<PhiPoint> ensemble;
    for (int j = 0; j < 5; ++j) ensemble.push_back(phi_of_z(random_disc_symbolic(ns, rng)));
    const VerificationReport r = check_poisson_identity(
        random_lie_symbolic(ns, rng), random_lie_symbolic(ns, rng), ensemble, sym);
    if (!r.passed())
      return {false, "symbolic batch " + std::to_string(k) + ": " + to_string(r.status) +
                         " err " + fmt(r.max_error)};
  }
  const int nd = 128;
  const DixmierScheme dense = DixmierScheme::dyadic(4, 7, 0.2);
  int conclusive = 0;
  for (int k = 0; k < 10; ++k) {
    std::vector<PhiPoint> ensemble;
    for (int j = 0; j < 5; ++j) ensemble.push_back(phi_of_z(random_disc_dense(nd, rng)));
    const VerificationReport r = check_poisson_identity(
        random_lie_dense(nd, rng), random_lie_dense(nd, rng), ensemble, dense);
    if (r.status == Status::fail)
      return {false, "dense batch " + std::to_string(k) + " outside band, err " +
                         fmt(r.max_error)};
    if (r.status == Status::pass) ++conclusive;
  }
  return {true, "100 symbolic exact, 50 dense within band (" + std::to_string(conclusive) +
                    "/10 batches fully measurable)"};
}

// --- criterion 8 ---------------------------------------------------------
std::pair<bool, std::string> c8_cocycles() {
  Rng rng(1007);
  const int ns = 1 << 10;
  const DixmierScheme sym = DixmierScheme::dyadic(4, 10);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const VerificationReport lie =
        check_cocycle_conditions(random_lie_symbolic(ns, rng), random_lie_symbolic(ns, rng),
                                 random_lie_symbolic(ns, rng), sym);
    worst = std::max(worst, lie.max_error);
    if (!lie.passed() || lie.max_error > 1e-12)
      return {false, "lie triple " + std::to_string(k) + " err " + fmt(lie.max_error)};
    const VerificationReport grp = check_group_cocycle_identity(
        random_gl_symbolic(ns, rng), random_gl_symbolic(ns, rng), random_gl_symbolic(ns, rng),
        1.0, sym);
    worst = std::max(worst, grp.max_error);
    if (!grp.passed() || grp.max_error > 1e-12)
      return {false, "group triple " + std::to_string(k) + " err " + fmt(grp.max_error)};
  }
  const int nd = 128;
  const DixmierScheme dense = DixmierScheme::dyadic(4, 7, 0.2);
  for (int k = 0; k < 30; ++k) {
    const VerificationReport r = check_group_cocycle_identity(
        random_pseudo_unitary_dense(nd, rng, 0.25), random_pseudo_unitary_dense(nd, rng, 0.25),
        random_pseudo_unitary_dense(nd, rng, 0.25), 1.0, dense);
    if (r.status == Status::fail)
      return {false, "dense group triple " + std::to_string(k) + " err " + fmt(r.max_error)};
  }
  return {true, "100 symbolic exact (worst " + fmt(worst) + "), 30 dense within band"};
}

// --- criterion 9 ---------------------------------------------------------
std::pair<bool, std::string> c9_commutator() {
  SymbolTable t;
  const FormalLie u1 = FormalLie::symbols("u1", t);
  const FormalLie u2 = FormalLie::symbols("u2", t);
  const WaveFunction t1 = wf_t1("A", t);
  const WaveFunction t2 = wf_t2("B", "Bp", t);
  const std::vector<WaveFunction> corpus = {wf_constant(Complex(1.0)), t1, t2,
                                            wf_product(t1, t1), wf_product(t1, t2)};
  Rng rng(1008);
  double worst = 0.0;
  for (double hb : {1.0, 0.5, 3.0})
    for (int k = 0; k < 50; ++k) {
      const VerificationReport r = check_commutator(
          u1.scaled(random_coeff(rng)), u2.scaled(random_coeff(rng)), corpus, hb, t);
      worst = std::max(worst, r.max_error);
      if (!r.passed() || r.max_error > 1e-10)
        return {false, "draw " + std::to_string(k) + " at hbar " + fmt(hb) + " err " +
                           fmt(r.max_error)};
    }
  return {true, "50 draws x 3 hbar values, coefficient-wise worst " + fmt(worst)};
}

// --- criterion 10 --------------------------------------------------------
std::pair<bool, std::string> c10_infinitesimal() {
  Rng rng(1009);
  const int n = 1 << 10;
  const DixmierScheme scheme = DixmierScheme::dyadic(4, 10);
  double worst = 0.0, worst_ratio = 0.0;
  for (int k = 0; k < 30; ++k) {
    SymbolTable t;
    const WaveFunction t1 = wf_t1("A", t);
    WaveFunction psi{FormalSum::constant(Complex(1.0)) + t1.body};
    t.bind("A", Op::diag(n, random_law(rng, 0.5, 1, 0.7)));
    const DiscPoint z = random_disc_symbolic(n, rng, 0.5, 0.3);
    const BlockOperator u = random_lie_symbolic(n, rng, 0.5, 0.4);
    SymbolTable tu = t;
    const FormalLie fu = FormalLie::bound_symbols("u", tu, u);

    const VerificationReport r =
        check_infinitesimal_consistency(u, fu, psi, tu, z, 1.0, scheme);
    worst = std::max(worst, r.max_error);
    if (!r.passed()) return {false, "trial " + std::to_string(k) + " err " + fmt(r.max_error)};

    // Observed second-order decay of the symmetric difference error.
    SymbolTable tz = tu;
    tz.bind(kSlotZ, z.z);
    const Complex limit =
        evaluate(fhat_action(fu, psi, 1.0, tu).body, tz, scheme)
            .scaled(Complex(0.0, -1.0))
            .v;
    const BlockOperator id = BlockOperator::identity(n, Backend::symbolic);
    auto value_at = [&](double s) {
      const GroupElement g(id - Complex(s) * u, GroupKind::general_linear, false);
      return rho_apply(g, psi, tu, z, 1.0, scheme).v;
    };
    auto diff_err = [&](double h) {
      return std::abs((value_at(h) - value_at(-h)) / (2.0 * h) - limit);
    };
    const double e1 = diff_err(0.05);
    const double e2 = diff_err(0.025);
    if (e1 > 1e-12) {
      const double ratio = e2 / e1;
      worst_ratio = std::max(worst_ratio, ratio);
      if (ratio > 0.4)
        return {false, "trial " + std::to_string(k) + " halving ratio " + fmt(ratio) +
                           " (expected about 0.25)"};
    }
  }
  return {true, "30 trials, worst err " + fmt(worst) + ", worst halving ratio " +
                    fmt(worst_ratio)};
}

// --- criterion 11 --------------------------------------------------------
std::pair<bool, std::string> c11_grassmannian() {
  Rng rng(1010);
  const int n = 1 << 10;
  const DixmierScheme scheme = DixmierScheme::dyadic(4, 10);

  // Two-path consistency through the Borel factor and the reduced quotient.
  for (int k = 0; k < 100; ++k) {
    SymbolTable t;
    const GrassmannSection psi = gs_product(gs_g1("GA", t), gs_g2("GB", "GBp", t));
    t.bind("GA", Op::diag(n, random_law(rng, 0.5, 1, 0.6)));
    t.bind("GB", Op::identity(n, Backend::symbolic) + Op::diag(n, random_law(rng, 0.7, 1, 0.4)));
    t.bind("GBp", Op::identity(n, Backend::symbolic) + Op::diag(n, random_law(rng, 0.8, 1, 0.4)));
    const ExtendedElement e = random_extended_symbolic(n, rng);
    const VerificationReport eq =
        check_equivariance(psi, e, random_borel_symbolic(n, rng), 1.0, t, scheme);
    if (!eq.passed())
      return {false, "equivariance trial " + std::to_string(k) + " err " + fmt(eq.max_error)};

    const Backend sb = Backend::symbolic;
    const BlockOperator gamma_small(
        Op::identity(n, sb) + Op::diag(n, random_law(rng, 1.1, 1, 0.3)),
        Op::diag(n, random_law(rng, 0.55, 1, 0.3)), Op::diag(n, random_law(rng, 1.2, 1, 0.3)),
        Op::identity(n, sb) + Op::diag(n, random_law(rng, 1.1, 1, 0.3)));
    const ExtendedElement small =
        make_extended(gamma_small, Op::diag(n, random_law(rng, 1.3, 1, 0.3)));
    const VerificationReport rq = check_reduced_quotient_action(psi, e, small, 1.0, t, scheme);
    if (!rq.passed())
      return {false, "reduced-quotient trial " + std::to_string(k) + " err " +
                         fmt(rq.max_error)};
  }

  // Structural independence of the action from the shift letters.
  {
    SymbolTable t;
    const FormalExtended u = FormalExtended::symbols("gu", t);
    const GrassmannSection s1 = gs_g1("GA", t);
    const GrassmannSection s2 = gs_g2("GB", "GBp", t);
    for (const GrassmannSection& psi :
         {s1, s2, gs_product(s1, s2), gs_product(s1, s1)}) {
      const GrassmannSection out = rhat_action(u, psi, 1.0, t);
      for (const auto& [key, coeff] : out.body.terms())
        for (const Word& w : key)
          for (const std::string& letter : w)
            if (letter.size() >= 2 && letter.compare(letter.size() - 2, 2, "_s") == 0)
              return {false, "shift letter " + letter + " appears in the action"};
    }
  }

  // Central term against the hand-computed cocycle value.
  {
    SymbolTable t;
    const FormalExtended u = FormalExtended::symbols("gu", t);
    const FormalExtended v = FormalExtended::symbols("gv", t);
    for (int k = 0; k < 100; ++k) {
      const Complex u12 = random_coeff(rng), u21 = random_coeff(rng);
      const Complex v12 = random_coeff(rng), v21 = random_coeff(rng);
      auto bind_all = [&](const std::string& p, Complex c12, Complex c21) {
        t.bind(p + "_11", Op::diag(n, PowerLawDiagonal(Complex(0.5), 0.0)));
        t.bind(p + "_12", Op::diag(n, PowerLawDiagonal(c12, 0.5)));
        t.bind(p + "_21", Op::diag(n, PowerLawDiagonal(c21, 0.5)));
        t.bind(p + "_22", Op::diag(n, PowerLawDiagonal(Complex(0.25), 0.0)));
        t.bind(p + "_s", Op::diag(n, PowerLawDiagonal(Complex(0.1), 1.0)));
      };
      bind_all("gu", u12, u21);
      bind_all("gv", v12, v21);
      const double hbar = k % 2 == 0 ? 1.0 : 2.0;
      const ValueBand got = evaluate(rhat_central(u, v, hbar, t), t, scheme);
      const Complex expect = -(u21 * v12 - u12 * v21) / hbar;
      if (std::abs(got.v - expect) > 1e-12)
        return {false, "central draw " + std::to_string(k) + " err " +
                           fmt(std::abs(got.v - expect))};
    }
  }
  return {true, "100 two-path trials exact, shift-free action, 100 central values exact"};
}

// --- criterion 12 --------------------------------------------------------
std::pair<bool, std::string> c12_flat_reduction() {
  Rng rng(1011);
  const int n = 1 << 10;
  const DixmierScheme scheme = DixmierScheme::dyadic(4, 10);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const VerificationReport r = kaehler_collapse_check(random_disc_symbolic(n, rng).z, scheme);
    worst = std::max(worst, r.max_error);
    if (!r.passed() || r.max_error > 1e-12)
      return {false, "kaehler trial " + std::to_string(k) + " err " + fmt(r.max_error)};
  }
  for (int k = 0; k < 100; ++k) {
    const GroupElement g = random_gl_symbolic(n, rng, 0.05, 0.1);
    const DiscPoint z = random_disc_symbolic(n, rng, 0.5, 0.2);
    const QuotientPoint shadow = embed_disc_action(g, QuotientPoint(z.z));
    const DiscPoint moved = act(g, z);
    const TraceEstimate gap = quotient_norm_estimate(shadow.z - moved.z, scheme);
    if (std::abs(gap.value) > 1e-10)
      return {false, "embedding trial " + std::to_string(k) + " quotient gap " +
                         fmt(std::abs(gap.value))};
  }
  for (int k = 0; k < 100; ++k) {
    const Op beta1 = Op::diag(n, PowerLawDiagonal(random_coeff(rng), 0.5));
    const Op beta2 = Op::diag(n, PowerLawDiagonal(random_coeff(rng), 0.5));
    const Backend sb = Backend::symbolic;
    const BlockOperator u1(Op::zero(n, sb), beta1, beta1.adjoint(), Op::zero(n, sb));
    const BlockOperator u2(Op::zero(n, sb), beta2, beta2.adjoint(), Op::zero(n, sb));
    const Complex flat = flat_symplectic_pair(beta1, beta2, scheme).value;
    const Complex disc =
        scale_estimate(lie_cocycle(u1, u2, scheme), Complex(0.0, -1.0)).value;
    if (std::abs(flat - disc) > 1e-12)
      return {false, "central trial " + std::to_string(k) + " err " + fmt(std::abs(flat - disc))};
  }
  return {true, "100 kaehler exact (worst " + fmt(worst) +
                    "), 100 embeddings with zero quotient gap, 100 central matches"};
}

// --- criterion 13 --------------------------------------------------------
std::pair<bool, std::string> c13_matrix_functions() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(1012);
  std::uniform_int_distribution<int> dim(16, 128);
  double worst = 0.0;
  for (int k = 0; k < 12; ++k) {
    const int n = dim(rng);
    const Matrix a = random_spd(n, 50.0, 2.0, rng);
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    auto spectral = [&](auto f) {
      RealVector d = es.eigenvalues();
      for (int i = 0; i < d.size(); ++i) d[i] = f(d[i]);
      return Matrix(es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint());
    };
    const double e_sqrt =
        (sqrt_integral(a) - spectral([](double x) { return std::sqrt(x); })).norm() / a.norm();
    const double e_log =
        (log_integral(a) - spectral([](double x) { return std::log(x); })).norm();
    const double alpha = 0.2 + 0.05 * k;
    const double e_frac =
        (frac_power(a, alpha) - spectral([&](double x) { return std::pow(x, alpha); })).norm() /
        a.norm();
    worst = std::max({worst, e_sqrt, e_log, e_frac});
    if (worst > 1e-8) return {false, "quadrature err " + fmt(worst) + " at dim " + std::to_string(n)};

    const Matrix b =
        random_gaussian(n, rng) + 3.0 * std::sqrt(double(n)) * Matrix::Identity(n, n);
    const PolarDecomposition pd = polar(b);
    const double e_polar = std::max(
        (pd.u.adjoint() * pd.u - Matrix::Identity(n, n)).norm() / std::sqrt(double(n)),
        (pd.u * pd.p - b).norm() / b.norm());
    const double e_retr = std::max((retraction(b, 0.0) - pd.u).norm() / std::sqrt(double(n)),
                                   (retraction(b, 1.0) - b).norm() / b.norm());
    worst = std::max({worst, e_polar, e_retr});
    if (worst > 1e-8) return {false, "polar/retraction err " + fmt(worst)};
  }
  for (int k = 0; k < 200; ++k) {
    const int n = 8;
    const Matrix a = random_spd(n, 10.0, 2.0, rng) + 0.5 * Matrix::Identity(n, n);
    const Matrix b = a + 0.05 * random_spd(n, 4.0, 1.0, rng);
    const BlockOperator ba = BlockOperator::block_diagonal(Op::dense(a), Op::dense(a));
    const BlockOperator bb = BlockOperator::block_diagonal(Op::dense(b), Op::dense(b));
    const VerificationReport r = check_continuity_bounds(ba, bb, 0.4);
    if (!r.passed())
      return {false, "continuity pair " + std::to_string(k) + " err " + fmt(r.max_error)};
  }
  const double dt = seconds_since(t0);
  return {dt <= 60.0, "quadrature/polar/retraction worst " + fmt(worst) +
                          ", 200 continuity pairs, " + fmt(dt) + "s"};
}

// --- criterion 14 --------------------------------------------------------
std::pair<bool, std::string> c14_determinism() {
  RunConfig cfg;
  cfg.seed = 11;
  cfg.ladder_kmin = 4;
  cfg.ladder_kmax = 12;
  cfg.suites = kSuiteNames;
  cfg.trials = 2;
  cfg.tolerance = 1e-3;
  cfg.hbar = 1.0;
  const fs::path base = fs::temp_directory_path() / "opgeo_acceptance";
  fs::remove_all(base);
  fs::create_directories(base);
  RunConfig c1 = cfg, c2 = cfg;
  c1.out_dir = (base / "a").string();
  c2.out_dir = (base / "b").string();
  const int rc1 = run_all(c1);
  const int rc2 = run_all(c2);
  if (rc1 != 0 || rc2 != 0) {
    fs::remove_all(base);
    return {false, "full runs exited " + std::to_string(rc1) + "/" + std::to_string(rc2)};
  }
  size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(c1.out_dir)) {
    const fs::path twin = fs::path(c2.out_dir) / entry.path().filename();
    std::ifstream f1(entry.path(), std::ios::binary), f2(twin, std::ios::binary);
    std::ostringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    if (!fs::exists(twin) || s1.str() != s2.str()) {
      fs::remove_all(base);
      return {false, "report " + entry.path().filename().string() + " differs between runs"};
    }
    ++compared;
  }
  fs::remove_all(base);
  return {compared > 10, std::to_string(compared) + " report files byte-identical"};
}

}  // namespace

int main() {
  run(1, "harmonic diagonal has Dixmier trace one on both backends", c1_harmonic_trace);
  run(2, "det_omega is multiplicative", c2_det_multiplicative);
  run(3, "ideal product inclusions and singular-value submultiplicativity", c3_ideal_products);
  run(4, "Mobius action composes and preserves the Disc", c4_mobius_action);
  run(5, "Phi is an equivariant pseudo-Hermitian involution", c5_phi_involution);
  run(6, "symplectic pair degenerates on rapidly decaying directions", c6_degeneracy);
  run(7, "Poisson bracket identity with central correction", c7_poisson_identity);
  run(8, "Lie and group cocycle identities", c8_cocycles);
  run(9, "quantized moment commutator closes with the central charge", c9_commutator);
  run(10, "group derivative of rho matches the generator at second order", c10_infinitesimal);
  run(11, "Grassmannian sections: two-path, shift independence, central term",
      c11_grassmannian);
  run(12, "flat reduction: kaehler collapse, affine shadow, shared central charge",
      c12_flat_reduction);
  run(13, "matrix functions against spectral oracles with certified bounds",
      c13_matrix_functions);
  run(14, "identical configurations reproduce byte-identical reports", c14_determinism);

  std::printf("%d/14 criteria passed\n", 14 - failures);
  return failures == 0 ? 0 : 1;
}
