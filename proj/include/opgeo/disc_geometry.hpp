#pragma once

#include <vector>

#include "opgeo/dixmier.hpp"
#include "opgeo/report.hpp"

namespace opgeo {

/// Point of the Disc: Z : H_+ -> H_- with 1 - Z^dag Z > 0 (margin 1e-10).
struct DiscPoint {
  Op z;

  explicit DiscPoint(Op z_, double margin = 1e-10);
  int dim() const { return z.dim(); }
  BlockOperator embedded() const { return BlockOperator::from_b_block(z); }
};

enum class GroupKind { pseudo_unitary, unitary, general_linear };

struct GroupElement {
  BlockOperator g;
  GroupKind kind;

  GroupElement(BlockOperator g_, GroupKind kind_, bool validate = true);
};

/// Defect of the defining relation (g eps g^dag = eps, or g^dag g = 1).
double group_defect(const BlockOperator& g, GroupKind kind);
GroupElement group_inverse(const GroupElement& g);

enum class LieFlavor { pseudo_hermitian, hermitian };

struct LieElement {
  BlockOperator u;
  LieFlavor flavor;

  LieElement(BlockOperator u_, LieFlavor flavor_, bool validate = true);
};

double lie_defect(const BlockOperator& u, LieFlavor flavor);

struct PhiPoint {
  BlockOperator phi;

  explicit PhiPoint(BlockOperator phi_, bool validate = false);
  int n() const { return phi.n(); }
};

/// Largest block sup-norm; the scale used by all defect checks.
double block_sup_norm(const BlockOperator& a);

/// Mobius action Z -> (aZ + b)(cZ + d)^{-1}.
DiscPoint act(const GroupElement& g, const DiscPoint& z);

PhiPoint phi_of_z(const DiscPoint& z);
/// Phi(Z) - eps with each block in closed form (keeps symbolic inputs exact
/// and free of constant terms).
BlockOperator phi_minus_epsilon(const DiscPoint& z);

/// Omega_omega(V_u, V_v)(Phi) = s (i/8) Tr_omega Phi [[u,Phi],[v,Phi]]. The
/// global sign s is fixed once by the moment identity at Phi = eps and
/// asserted constant afterwards.
TraceEstimate symplectic_pair(const PhiPoint& phi, const BlockOperator& u,
                              const BlockOperator& v, const DixmierScheme& scheme);
int symplectic_sign();

/// f_u(Phi) = -Tr^eps_omega u (Phi - eps).
TraceEstimate moment_map(const BlockOperator& u, const PhiPoint& phi,
                         const DixmierScheme& scheme);

/// c_omega(u, v) = Tr^eps_omega [eps, u] v.
TraceEstimate lie_cocycle(const BlockOperator& u, const BlockOperator& v,
                          const DixmierScheme& scheme);

/// Rescale an estimate by a complex constant (band scales by |s|).
TraceEstimate scale_estimate(const TraceEstimate& e, Complex s);

VerificationReport check_degeneracy(const PhiPoint& phi, const BlockOperator& u_small,
                                    const BlockOperator& v, const DixmierScheme& scheme);
/// {f_u, f_v} = f_{-i[u,v]} - i Tr^eps_omega [eps,u]v on every sampled Phi.
VerificationReport check_poisson_identity(const BlockOperator& u, const BlockOperator& v,
                                          const std::vector<PhiPoint>& ensemble,
                                          const DixmierScheme& scheme);
/// Antisymmetry and c(u,[v,w]) + c(v,[w,u]) + c(w,[u,v]) = 0.
VerificationReport check_cocycle_conditions(const BlockOperator& u, const BlockOperator& v,
                                            const BlockOperator& w,
                                            const DixmierScheme& scheme);

/// Exact flow of V_u(Phi) = [u, Phi]: Phi(t) = e^{tu} Phi_0 e^{-tu} (dense).
PhiPoint flow_moment(const BlockOperator& u, const PhiPoint& phi0, double t);

/// h = f_u + sum_ij K^{ij} f_{u_i} f_{u_j} with K symmetric.
struct QuadraticHamiltonian {
  BlockOperator linear;
  std::vector<BlockOperator> terms;
  Matrix k;  // symmetric coefficient matrix over `terms`

  void validate() const;
};

struct FlowSample {
  double t = 0.0;
  double drift = 0.0;  // ||Phi^2 - 1|| before retraction
};

/// RK4 on the effective field [u_eff(Phi), Phi] with u_eff = u +
/// 2 sum_i (sum_j K^{ij} f_{u_j}(Phi)) u_i, retracted to Phi^2 = 1 after each
/// step; steps whose pre-retraction drift exceeds 1e-4 are halved.
PhiPoint flow_quadratic(const QuadraticHamiltonian& h, const PhiPoint& phi0, double t,
                        int steps, const DixmierScheme& scheme,
                        std::vector<FlowSample>* samples = nullptr);

/// Newton iteration X <- (X + X^{-1})/2 onto the involution manifold.
Matrix sign_retraction(const Matrix& x);

}  // namespace opgeo
