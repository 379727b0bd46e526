#include "fcs/modular.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace fcs {

Matrix StandardForm::left_action(const Matrix& x) const {
  return kron(Matrix::Identity(k, k), x);
}

Matrix StandardForm::right_action(const Matrix& a) const {
  return kron(a.transpose(), Matrix::Identity(k, k));
}

Vector StandardForm::j_apply(const Vector& vec_a) const {
  Matrix a = unvectorize(vec_a, k, k);
  return vectorize(a.adjoint().eval());
}

StandardForm standard_form(const CanonicalSystem& csys) {
  const int k = csys.base.k;
  Eigen::SelfAdjointEigenSolver<Matrix> es(csys.rho);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("rho eigensolver failed");
  if (es.eigenvalues().minCoeff() <= 0)
    throw RhoSingular("rho is singular; canonicalize the system first");
  Matrix rho_half = es.eigenvectors() *
                    es.eigenvalues().cwiseSqrt().asDiagonal() *
                    es.eigenvectors().adjoint();
  Matrix rho_inv = es.eigenvectors() *
                   es.eigenvalues().cwiseInverse().asDiagonal() *
                   es.eigenvectors().adjoint();
  StandardForm sf;
  sf.k = k;
  sf.rho_half = rho_half;
  sf.omega_vec = vectorize(rho_half);
  sf.omega_vec.normalize();
  sf.delta_action = kron(rho_inv.transpose(), csys.rho);
  return sf;
}

ModularData modular_data(const CanonicalSystem& csys, double eig_floor) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(csys.rho);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("rho eigensolver failed");
  double lo = es.eigenvalues().minCoeff();
  double hi = es.eigenvalues().maxCoeff();
  if (lo <= eig_floor)
    throw RhoSingular("rho eigenvalue " + std::to_string(lo) +
                      " below floor; canonicalize the system first");
  ModularData mod;
  mod.rho_half = es.eigenvectors() *
                 es.eigenvalues().cwiseSqrt().asDiagonal() *
                 es.eigenvectors().adjoint();
  mod.rho_inv_half = es.eigenvectors() *
                     es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                     es.eigenvectors().adjoint();
  mod.condition_number = hi / lo;
  return mod;
}

DualSystem dual_system(const CanonicalSystem& csys, const ModularData& mod) {
  DualSystem dual;
  dual.condition_number = mod.condition_number;
  dual.w.reserve(csys.base.v.size());
  for (const auto& v : csys.base.v)
    dual.w.push_back(mod.rho_half * v * mod.rho_inv_half);
  return dual;
}

double dual_normalization_residual(const CanonicalSystem& csys,
                                   const DualSystem& dual) {
  const int k = csys.base.k;
  Matrix s = Matrix::Zero(k, k);
  for (const auto& w : dual.w) s += w.adjoint() * w;
  return operator_norm(s - Matrix::Identity(k, k));
}

Matrix kms_adjoint_apply(const CanonicalSystem& csys, const ModularData& mod,
                         const Matrix& y) {
  Matrix inner = predual_apply(csys.base, mod.rho_half * y * mod.rho_half);
  return mod.rho_inv_half * inner * mod.rho_inv_half;
}

KmsSpace kms_space(const CanonicalSystem& csys, const ModularData& mod) {
  const int k = csys.base.k;
  KmsSpace kms;
  kms.basis = hermitian_basis(k);
  const int n = static_cast<int>(kms.basis.size());
  kms.gram.resize(n, n);
  // <<x,y>> = phi0(JxJ y) = tr(rho^{1/2} x* rho^{1/2} y)
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      kms.gram(a, b) = (mod.rho_half * kms.basis[a].adjoint() * mod.rho_half *
                        kms.basis[b])
                           .trace();
  kms.t_mat.resize(n, n);
  for (int b = 0; b < n; ++b) {
    Matrix tx = cp_map_apply(csys.base, kms.basis[b]);
    // Expand in the orthonormal Hermitian basis (Hilbert-Schmidt).
    for (int a = 0; a < n; ++a)
      kms.t_mat(a, b) = (kms.basis[a].adjoint() * tx).trace();
  }
  return kms;
}

DetailedBalanceKms detailed_balance_check(const KmsSpace& kms, double tol) {
  Matrix defect_mat = kms.gram * kms.t_mat - kms.t_mat.adjoint() * kms.gram;
  DetailedBalanceKms res;
  res.defect = operator_norm(defect_mat);
  res.symmetric = res.defect <= tol;
  return res;
}

double t_gap(const KmsSpace& kms) {
  const int n = static_cast<int>(kms.basis.size());
  const int k = static_cast<int>(kms.basis[0].rows());
  // Coordinates of the identity element.
  Vector e(n);
  Matrix id = Matrix::Identity(k, k);
  for (int a = 0; a < n; ++a) e(a) = (kms.basis[a].adjoint() * id).trace();
  cdouble nrm = e.adjoint() * kms.gram * e;
  Matrix proj = e * (e.adjoint() * kms.gram) / nrm;
  Eigen::ComplexEigenSolver<Matrix> es(kms.t_mat - proj);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("T-gap eigensolver failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

HaagResult haag_duality_bond_check(const DualSystem& dual, int k,
                                   int length_cap) {
  (void)length_cap;  // word_span_dimension caps internally at 2 k^2
  HaagResult res;
  res.span_dim = word_span_dimension(dual.w, k);
  res.holds = res.span_dim == k * k;
  return res;
}

bool selfadjoint_representative_exists(const PopescuSystem& sys, double tol) {
  const int d = sys.d, k = sys.k;
  Matrix w(k * k, d);
  for (int j = 0; j < d; ++j) w.col(j) = vectorize(sys.v[j]);

  Eigen::JacobiSVD<Matrix> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double scale = svd.singularValues()(0);
  int r = 0;
  while (r < std::min<int>(d, k * k) &&
         svd.singularValues()(r) > 1e-10 * scale)
    ++r;
  if (r == 0) return true;
  Matrix ur = svd.matrixU().leftCols(r);
  Vector sr = svd.singularValues().head(r);

  // Adjoint-closure of the letter span, then the induced antilinear map on
  // row-space coordinates; a Hermitian remix exists iff that map is an
  // antiunitary involution.
  Matrix jw(k * k, r);
  for (int i = 0; i < r; ++i) {
    Matrix a = unvectorize(ur.col(i) * sr(i), k, k);
    jw.col(i) = vectorize(a.adjoint().eval());
  }
  if (operator_norm(jw - ur * (ur.adjoint() * jw)) > tol * scale)
    return false;

  Matrix m = sr.cwiseInverse().asDiagonal() * (ur.adjoint() * jw);
  Eigen::MatrixXd re = m.real(), im = m.imag();
  Eigen::MatrixXd rt(2 * r, 2 * r);
  rt << re, im, im, -re;
  double dev = (rt * rt.transpose() - Eigen::MatrixXd::Identity(2 * r, 2 * r))
                   .cwiseAbs()
                   .maxCoeff();
  double inv = (rt * rt - Eigen::MatrixXd::Identity(2 * r, 2 * r))
                   .cwiseAbs()
                   .maxCoeff();
  return dev <= tol && inv <= tol;
}

DeltaTriviality delta_triviality_check(const CanonicalSystem& csys,
                                       double tol) {
  const int k = csys.base.k;
  DeltaTriviality res;
  Matrix scaled = csys.rho * double(k);
  res.delta_is_identity =
      operator_norm(scaled - Matrix::Identity(k, k)) <= std::max(tol, 1e-8);
  res.all_v_selfadjoint = true;
  for (const auto& v : csys.base.v)
    if (operator_norm(v - v.adjoint()) > std::max(tol, 1e-8))
      res.all_v_selfadjoint = false;
  res.selfadjoint_gauge = selfadjoint_representative_exists(csys.base);
  return res;
}

}  // namespace fcs
