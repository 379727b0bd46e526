#pragma once

#include "fcs/popescu.hpp"

namespace fcs {

/// Finite-dimensional standard form of (M, phi0): the carrier space is the
/// vectorized k x k matrices, Omega = vec(rho^{1/2}).
struct StandardForm {
  int k = 0;
  Vector omega_vec;      // unit norm
  Matrix rho_half;

  /// x acting by left multiplication, as a k^2 x k^2 matrix.
  Matrix left_action(const Matrix& x) const;
  /// a acting by right multiplication.
  Matrix right_action(const Matrix& a) const;
  /// Antilinear J: vec(A) -> vec(A*).
  Vector j_apply(const Vector& vec_a) const;
  /// Delta: vec(A) -> vec(rho A rho^{-1}).
  Matrix delta_action;
};

struct ModularData {
  Matrix rho_half;
  Matrix rho_inv_half;
  double condition_number = 1.0;

  /// sigma_{i/2}(x) = rho^{-1/2} x rho^{1/2}
  Matrix sigma_i_half(const Matrix& x) const {
    return rho_inv_half * x * rho_half;
  }
  /// sigma_{-i/2}(x) = rho^{1/2} x rho^{-1/2}
  Matrix sigma_minus_i_half(const Matrix& x) const {
    return rho_half * x * rho_inv_half;
  }
};

StandardForm standard_form(const CanonicalSystem& csys);
ModularData modular_data(const CanonicalSystem& csys,
                         double eig_floor = 1e-12);

/// Dual Popescu system: w_k = rho^{1/2} v_k rho^{-1/2}; the dual operators
/// act by right multiplication in the standard form.
struct DualSystem {
  std::vector<Matrix> w;
  double condition_number = 1.0;
};

DualSystem dual_system(const CanonicalSystem& csys, const ModularData& mod);

/// || sum_k w_k* w_k - I ||_op
double dual_normalization_residual(const CanonicalSystem& csys,
                                   const DualSystem& dual);

/// KMS adjoint of tau: y -> rho^{-1/2} predual(rho^{1/2} y rho^{1/2}) rho^{-1/2}.
Matrix kms_adjoint_apply(const CanonicalSystem& csys, const ModularData& mod,
                         const Matrix& y);

/// KMS Hilbert-space data: gram[a,b] = <<x_a, x_b>> with the inner product
/// pinned by the identity <<x,y>> = phi0(JxJ y), and the matrix of tau.
struct KmsSpace {
  std::vector<Matrix> basis;  // Hermitian basis of the bond algebra
  Matrix gram;                // PSD
  Matrix t_mat;               // tau in this basis
};

KmsSpace kms_space(const CanonicalSystem& csys, const ModularData& mod);

struct DetailedBalanceKms {
  bool symmetric = false;
  double defect = 0.0;  // || gram T - T^dag gram ||
};

DetailedBalanceKms detailed_balance_check(const KmsSpace& kms,
                                          double tol = 1e-9);

/// Spectral radius of T with the rank-one KMS projection onto the identity
/// removed. Equals the transfer alpha for ergodic systems.
double t_gap(const KmsSpace& kms);

struct HaagResult {
  bool holds = false;
  int span_dim = 0;
};

/// Dimension of the adjoint-closed word span of {w_k}; duality at the bond
/// holds iff the dual algebra is the full k x k matrix algebra.
HaagResult haag_duality_bond_check(const DualSystem& dual, int k,
                                   int length_cap = 0);

struct DeltaTriviality {
  bool delta_is_identity = false;
  bool all_v_selfadjoint = false;      // the shipped matrices, literally
  bool selfadjoint_gauge = false;      // after some unitary mixing of letters
};

/// Whether some unitary u in U(d) makes every mixed letter
/// sum_j u_{kj} v_j self-adjoint. Mixing letters by a unitary leaves the
/// transfer map and the chain state unchanged, so this is the
/// representation-independent reading of the v = v* condition.
bool selfadjoint_representative_exists(const PopescuSystem& sys,
                                       double tol = 1e-8);

DeltaTriviality delta_triviality_check(const CanonicalSystem& csys,
                                       double tol = 1e-9);

}  // namespace fcs
