#include "opgeo/disc_geometry.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "opgeo/matrix_functions.hpp"

namespace opgeo {

double block_sup_norm(const BlockOperator& a) {
  return std::max(std::max(a.a().sup_norm(), a.b().sup_norm()),
                  std::max(a.c().sup_norm(), a.d().sup_norm()));
}

namespace {

// Off-diagonal blocks must decay at least like n^{-1/2} on the symbolic
// backend; at a dense truncation the condition carries no content.
void require_offdiagonal_decay(const Op& o, const char* what) {
  if (!o.is_diag() || o.law().is_zero()) return;
  if (o.law().min_exponent() < 0.5 - 1e-9)
    throw DomainError(std::string(what) + ": off-diagonal decay slower than n^{-1/2}");
}

}  // namespace

DiscPoint::DiscPoint(Op z_, double margin) : z(std::move(z_)) {
  if (z.dim() <= 0) throw DomainError("empty Disc point");
  require_offdiagonal_decay(z, "DiscPoint");
  if (z.is_diag()) {
    const Vector e = z.law().entries(z.dim());
    for (int i = 0; i < e.size(); ++i)
      if (1.0 - std::norm(e[i]) < margin) throw DomainError("1 - Z^dag Z margin violated");
    return;
  }
  const Matrix gram =
      Matrix::Identity(z.dim(), z.dim()) - z.matrix().adjoint() * z.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < margin)
    throw DomainError("1 - Z^dag Z margin violated");
}

double group_defect(const BlockOperator& g, GroupKind kind) {
  const int n = g.n();
  switch (kind) {
    case GroupKind::pseudo_unitary: {
      const BlockOperator eps = BlockOperator::epsilon(n, g.backend());
      return block_sup_norm(g * eps * g.adjoint() - eps);
    }
    case GroupKind::unitary:
      return block_sup_norm(g.adjoint() * g - BlockOperator::identity(n, g.backend()));
    case GroupKind::general_linear:
      return 0.0;
  }
  throw DomainError("unknown group kind");
}

GroupElement::GroupElement(BlockOperator g_, GroupKind kind_, bool validate)
    : g(std::move(g_)), kind(kind_) {
  if (!validate) return;
  const double scale = 1.0 + block_sup_norm(g);
  if (group_defect(g, kind) > 1e-10 * scale * scale)
    throw DomainError("group defining relation violated");
  if (kind != GroupKind::general_linear) {
    require_offdiagonal_decay(g.b(), "GroupElement");
    require_offdiagonal_decay(g.c(), "GroupElement");
  }
  const RealVector sv = singular_values(g);
  if (sv[sv.size() - 1] < 1e-8) throw DomainError("group element numerically singular");
}

GroupElement group_inverse(const GroupElement& g) {
  const int n = g.g.n();
  switch (g.kind) {
    case GroupKind::pseudo_unitary: {
      const BlockOperator eps = BlockOperator::epsilon(n, g.g.backend());
      return {eps * g.g.adjoint() * eps, GroupKind::pseudo_unitary};
    }
    case GroupKind::unitary:
      return {g.g.adjoint(), GroupKind::unitary};
    case GroupKind::general_linear: {
      if (g.g.backend() == Backend::symbolic)
        throw DomainError("general-linear inverse is dense-only");
      return {BlockOperator::from_full(g.g.full().partialPivLu().inverse()),
              GroupKind::general_linear};
    }
  }
  throw DomainError("unknown group kind");
}

double lie_defect(const BlockOperator& u, LieFlavor flavor) {
  if (flavor == LieFlavor::hermitian) return block_sup_norm(u.adjoint() - u);
  // pseudo-hermitian: alpha^dag = -alpha, delta^dag = -delta, beta^dag = gamma
  double d = std::max((u.a().adjoint() + u.a()).sup_norm(),
                      (u.d().adjoint() + u.d()).sup_norm());
  return std::max(d, (u.b().adjoint() - u.c()).sup_norm());
}

LieElement::LieElement(BlockOperator u_, LieFlavor flavor_, bool validate)
    : u(std::move(u_)), flavor(flavor_) {
  if (!validate) return;
  if (lie_defect(u, flavor) > 1e-10 * (1.0 + block_sup_norm(u)))
    throw DomainError("Lie-algebra block relations violated");
  require_offdiagonal_decay(u.b(), "LieElement");
  require_offdiagonal_decay(u.c(), "LieElement");
}

PhiPoint::PhiPoint(BlockOperator phi_, bool validate) : phi(std::move(phi_)) {
  if (!validate) return;
  const int n = phi.n();
  const double scale = 1.0 + block_sup_norm(phi);
  if (block_sup_norm(phi * phi - BlockOperator::identity(n, phi.backend())) > 1e-9 * scale * scale)
    throw DomainError("Phi^2 = 1 violated");
  const BlockOperator eps = BlockOperator::epsilon(n, phi.backend());
  if (block_sup_norm(eps * phi.adjoint() * eps - phi) > 1e-9 * scale)
    throw DomainError("eps Phi^dag eps = Phi violated");
}

DiscPoint act(const GroupElement& g, const DiscPoint& z) {
  // Pseudo-unitary elements preserve the Disc; other kinds are admitted as
  // long as the image still lands inside it (the DiscPoint ctor enforces it).
  const Op num = g.g.a() * z.z + g.g.b();
  const Op den = g.g.c() * z.z + g.g.d();
  if (den.backend() == Backend::dense) {
    Eigen::BDCSVD<Matrix> svd(den.matrix());
    if (svd.singularValues().minCoeff() < 1e-12)
      throw DomainError("cZ + d numerically singular: invalid group element or Disc point");
  }
  return DiscPoint(num * inverse(den));
}

BlockOperator phi_minus_epsilon(const DiscPoint& z) {
  const Op& zz = z.z;
  const Op gram = zz * zz.adjoint();  // Z Z^dag on H_-
  const Op r = inverse_one_plus(-gram);
  const Op r_rest = r - Op::identity(zz.dim(), zz.backend());  // R - 1
  return {Complex(-2.0) * r_rest, Complex(2.0) * (r * zz),
          Complex(-2.0) * (zz.adjoint() * r), Complex(2.0) * (zz.adjoint() * r * zz)};
}

PhiPoint phi_of_z(const DiscPoint& z) {
  BlockOperator d = phi_minus_epsilon(z);
  return PhiPoint(d + BlockOperator::epsilon(z.dim(), d.backend()));
}

TraceEstimate scale_estimate(const TraceEstimate& e, Complex s) {
  TraceEstimate out;
  out.value = s * e.value;
  out.halfwidth = std::abs(s) * e.halfwidth;
  out.fit_residual = std::abs(s) * e.fit_residual;
  out.measurable = e.measurable;
  out.lower = out.value.real() - out.halfwidth;
  out.upper = out.value.real() + out.halfwidth;
  return out;
}

namespace {

TraceEstimate raw_pair(const PhiPoint& phi, const BlockOperator& u, const BlockOperator& v,
                       const DixmierScheme& scheme) {
  const BlockOperator bracket =
      phi.phi * commutator(commutator(u, phi.phi), commutator(v, phi.phi));
  return scale_estimate(dixmier_trace(bracket, scheme), Complex(0.0, 1.0 / 8.0));
}

int calibrate_sign() {
  // Fix the global sign by the Poisson identity at Phi = eps with exact
  // symbolic off-diagonal probes: there f_w = 0, so the pair must equal
  // -i c_omega(u, v).
  const int n = 128;
  const Op zero = Op::zero(n, Backend::symbolic);
  const Op bu = Op::diag(n, PowerLawDiagonal(Complex(1.0, 0.0), 0.5));
  const Op bv = Op::diag(n, PowerLawDiagonal(Complex(0.0, 1.0), 0.5));
  const BlockOperator u(zero, bu, bu.adjoint(), zero);
  const BlockOperator v(zero, bv, bv.adjoint(), zero);
  const PhiPoint eps(BlockOperator::epsilon(n, Backend::symbolic));
  const DixmierScheme scheme = DixmierScheme::dyadic(4, 7);

  const Complex lhs = raw_pair(eps, u, v, scheme).value;
  const Complex rhs = Complex(0.0, -1.0) * lie_cocycle(u, v, scheme).value;
  if (std::abs(rhs) < 1e-12) throw PrecisionError("degenerate calibration probe");
  if (std::abs(lhs - rhs) < 1e-9) return 1;
  if (std::abs(lhs + rhs) < 1e-9) return -1;
  throw PrecisionError("symplectic pair fails the moment identity at Phi = eps");
}

}  // namespace

int symplectic_sign() {
  static const int s = calibrate_sign();
  return s;
}

TraceEstimate symplectic_pair(const PhiPoint& phi, const BlockOperator& u,
                              const BlockOperator& v, const DixmierScheme& scheme) {
  return scale_estimate(raw_pair(phi, u, v, scheme), Complex(symplectic_sign()));
}

TraceEstimate moment_map(const BlockOperator& u, const PhiPoint& phi,
                         const DixmierScheme& scheme) {
  const BlockOperator m =
      phi.phi - BlockOperator::epsilon(phi.n(), phi.phi.backend());
  return -conditional_trace(u * m, scheme);
}

TraceEstimate lie_cocycle(const BlockOperator& u, const BlockOperator& v,
                          const DixmierScheme& scheme) {
  return conditional_trace(epsilon_commutator(u) * v, scheme);
}

VerificationReport check_degeneracy(const PhiPoint& phi, const BlockOperator& u_small,
                                    const BlockOperator& v, const DixmierScheme& scheme) {
  VerificationReport r;
  r.identity = "symplectic pair vanishes on rapidly decaying off-diagonal directions";
  r.tolerance = 1e-12;
  r.ladder = scheme.checkpoints;
  const TraceEstimate e = symplectic_pair(phi, u_small, v, scheme);
  r.absorb(std::max(0.0, std::abs(e.value) - e.halfwidth));
  return r;
}

VerificationReport check_poisson_identity(const BlockOperator& u, const BlockOperator& v,
                                          const std::vector<PhiPoint>& ensemble,
                                          const DixmierScheme& scheme) {
  VerificationReport r;
  r.identity = "{f_u, f_v} = f_{-i[u,v]} - i Tr^eps_omega [eps,u]v";
  r.tolerance = 1e-9;
  r.ladder = scheme.checkpoints;
  const BlockOperator w = Complex(0.0, -1.0) * commutator(u, v);
  const TraceEstimate central =
      scale_estimate(lie_cocycle(u, v, scheme), Complex(0.0, -1.0));
  for (const PhiPoint& phi : ensemble) {
    const TraceEstimate lhs = symplectic_pair(phi, u, v, scheme);
    const TraceEstimate rhs = moment_map(w, phi, scheme) + central;
    if (!lhs.measurable || !rhs.measurable) {
      r.status = Status::inconclusive;
      continue;
    }
    r.absorb(std::max(0.0, std::abs(lhs.value - rhs.value) - (lhs.halfwidth + rhs.halfwidth)));
  }
  return r;
}

VerificationReport check_cocycle_conditions(const BlockOperator& u, const BlockOperator& v,
                                            const BlockOperator& w,
                                            const DixmierScheme& scheme) {
  VerificationReport r;
  r.identity = "2-cocycle antisymmetry and Jacobi-type sum";
  r.tolerance = 1e-9;
  r.ladder = scheme.checkpoints;
  const TraceEstimate anti = lie_cocycle(u, v, scheme) + lie_cocycle(v, u, scheme);
  const TraceEstimate jacobi = lie_cocycle(u, commutator(v, w), scheme) +
                               lie_cocycle(v, commutator(w, u), scheme) +
                               lie_cocycle(w, commutator(u, v), scheme);
  if (!anti.measurable || !jacobi.measurable) {
    r.status = Status::inconclusive;
    return r;
  }
  r.absorb(std::max(0.0, std::abs(anti.value) - anti.halfwidth));
  r.absorb(std::max(0.0, std::abs(jacobi.value) - jacobi.halfwidth));
  return r;
}

PhiPoint flow_moment(const BlockOperator& u, const PhiPoint& phi0, double t) {
  const Matrix uf = u.full();
  const Matrix fwd = expm(t * uf);
  const Matrix bwd = expm(-t * uf);
  return PhiPoint(BlockOperator::from_full(fwd * phi0.phi.full() * bwd));
}

void QuadraticHamiltonian::validate() const {
  const int m = static_cast<int>(terms.size());
  if (k.rows() != m || k.cols() != m)
    throw DomainError("coefficient matrix size must match the term count");
  if (m > 0 && (k - k.transpose()).norm() > 1e-12 * (1.0 + k.norm()))
    throw DomainError("coefficient matrix must be symmetric");
  for (const BlockOperator& ui : terms)
    if (ui.n() != linear.n()) throw TruncationMismatch("interaction term dimension differs");
}

Matrix sign_retraction(const Matrix& x) {
  Matrix cur = x;
  const Matrix id = Matrix::Identity(x.rows(), x.cols());
  for (int it = 0; it < 50; ++it) {
    if ((cur * cur - id).norm() < 1e-13 * static_cast<double>(x.rows())) return cur;
    cur = 0.5 * (cur + cur.partialPivLu().inverse());
  }
  throw DivergenceError("sign-function retraction failed to converge");
}

namespace {

struct QuadField {
  const QuadraticHamiltonian& h;
  const DixmierScheme& scheme;
  Matrix linear_full;
  std::vector<Matrix> term_fulls;

  Matrix operator()(const Matrix& phi) const {
    Matrix ueff = linear_full;
    if (!h.terms.empty()) {
      const PhiPoint p(BlockOperator::from_full(phi));
      Eigen::VectorXcd f(static_cast<int>(h.terms.size()));
      for (size_t j = 0; j < h.terms.size(); ++j)
        f[static_cast<int>(j)] = moment_map(h.terms[j], p, scheme).value;
      const Eigen::VectorXcd coeff = 2.0 * (h.k * f);
      for (size_t i = 0; i < h.terms.size(); ++i)
        ueff += coeff[static_cast<int>(i)] * term_fulls[i];
    }
    return ueff * phi - phi * ueff;
  }
};

}  // namespace

PhiPoint flow_quadratic(const QuadraticHamiltonian& h, const PhiPoint& phi0, double t,
                        int steps, const DixmierScheme& scheme,
                        std::vector<FlowSample>* samples) {
  if (steps <= 0) throw DomainError("step count must be positive");
  h.validate();
  QuadField field{h, scheme, h.linear.full(), {}};
  field.term_fulls.reserve(h.terms.size());
  for (const BlockOperator& ui : h.terms) field.term_fulls.push_back(ui.full());

  const Matrix id = Matrix::Identity(2 * phi0.n(), 2 * phi0.n());
  Matrix phi = phi0.phi.full();
  double time = 0.0;
  double dt = t / steps;
  const double t_end = t;
  int halvings = 0;
  while (std::abs(t_end - time) > 1e-15 * (1.0 + std::abs(t_end))) {
    if (std::abs(dt) > std::abs(t_end - time)) dt = t_end - time;
    const Matrix k1 = field(phi);
    const Matrix k2 = field(phi + 0.5 * dt * k1);
    const Matrix k3 = field(phi + 0.5 * dt * k2);
    const Matrix k4 = field(phi + dt * k3);
    const Matrix next = phi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double drift = (next * next - id).norm();
    if (drift > 1e-4) {
      dt *= 0.5;
      if (++halvings > 40) throw DivergenceError("quadratic flow step rejection cascade");
      continue;
    }
    phi = sign_retraction(next);
    time += dt;
    if (samples) samples->push_back({time, drift});
  }
  return PhiPoint(BlockOperator::from_full(phi));
}

}  // namespace opgeo
