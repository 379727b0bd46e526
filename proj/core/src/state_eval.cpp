#include "fcs/state_eval.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace fcs {

namespace {

// All word operators of length n, indexed lexicographically.
std::vector<Matrix> all_word_operators(const std::vector<Matrix>& letters,
                                       int k, int n, long cap) {
  const int d = static_cast<int>(letters.size());
  checked_power(d, n, cap);
  std::vector<Matrix> cur = {Matrix::Identity(k, k)};
  for (int len = 0; len < n; ++len) {
    std::vector<Matrix> next;
    next.reserve(cur.size() * d);
    for (const auto& w : cur)
      for (const auto& v : letters) next.push_back(w * v);
    cur = std::move(next);
  }
  return cur;
}

Matrix rho_sqrt(const CanonicalSystem& csys) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(csys.rho);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("rho eigensolver failed");
  return es.eigenvectors() *
         es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

WindowObservable identity_observable(int d, int n_sites, int first_site) {
  WindowObservable q;
  q.d = d;
  q.first_site = first_site;
  q.n_sites = n_sites;
  long dim = checked_power(d, n_sites, kWindowSizeCap);
  q.coeffs = Matrix::Identity(dim, dim);
  return q;
}

cdouble matrix_element(const CanonicalSystem& csys, const MultiIndex& I,
                       const MultiIndex& J) {
  if (I.size() != J.size())
    throw LengthMismatch("matrix_element needs |I| = |J|");
  Matrix vi = word_operator(csys.base, I);
  Matrix vj = word_operator(csys.base, J);
  return (csys.rho * vi * vj.adjoint()).trace();
}

ReducedDensity reduced_density(const CanonicalSystem& csys, int n,
                               long size_cap) {
  if (n < 1) throw ShapeMismatch("window length must be >= 1");
  const auto& sys = csys.base;
  long dim = checked_power(sys.d, n, size_cap);
  auto words = all_word_operators(sys.v, sys.k, n, size_cap);
  ReducedDensity rd;
  rd.n_sites = n;
  rd.sigma.resize(dim, dim);
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j)
      rd.sigma(i, j) = (csys.rho * words[j] * words[i].adjoint()).trace();
  return rd;
}

Matrix partial_trace_first(const Matrix& sigma, int d, int n) {
  long sub = sigma.rows() / d;
  Matrix out = Matrix::Zero(sub, sub);
  for (int a = 0; a < d; ++a)
    out += sigma.block(a * sub, a * sub, sub, sub);
  return out;
}

Matrix partial_trace_last(const Matrix& sigma, int d, int n) {
  long sub = sigma.rows() / d;
  Matrix out = Matrix::Zero(sub, sub);
  for (long i = 0; i < sub; ++i)
    for (long j = 0; j < sub; ++j) {
      cdouble s = 0;
      for (int a = 0; a < d; ++a) s += sigma(i * d + a, j * d + a);
      out(i, j) = s;
    }
  return out;
}

Matrix observable_map_apply(const CanonicalSystem& csys,
                            const WindowObservable& q, const Matrix& x) {
  const auto& sys = csys.base;
  if (q.d != sys.d) throw ShapeMismatch("observable alphabet mismatch");
  auto words = all_word_operators(sys.v, sys.k, q.n_sites, kWindowSizeCap);
  Matrix out = Matrix::Zero(sys.k, sys.k);
  const long dim = q.coeffs.rows();
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j) {
      cdouble c = q.coeffs(i, j);
      if (c != 0.0) out += c * (words[i] * x * words[j].adjoint());
    }
  return out;
}

cdouble expectation(const CanonicalSystem& csys, const WindowObservable& q) {
  Matrix a = observable_map_apply(csys, q,
                                  Matrix::Identity(csys.base.k, csys.base.k));
  return (csys.rho * a).trace();
}

cdouble two_point(const CanonicalSystem& csys, const WindowObservable& q1,
                  const WindowObservable& q2, int gap) {
  if (gap < 0) throw OverlapError("two_point windows overlap (gap < 0)");
  Matrix x = observable_map_apply(csys, q2,
                                  Matrix::Identity(csys.base.k, csys.base.k));
  for (int i = 0; i < gap; ++i) x = cp_map_apply(csys.base, x);
  Matrix a = observable_map_apply(csys, q1, x);
  return (csys.rho * a).trace();
}

cdouble two_sided_eval(const CanonicalSystem& csys, const DualSystem& dual,
                       const WindowObservable& left,
                       const WindowObservable& right) {
  if (left.first_site + left.n_sites - 1 != 0)
    throw ShapeMismatch("left window must end at site 0");
  if (right.first_site != 1)
    throw ShapeMismatch("right window must start at site 1");
  const auto& sys = csys.base;
  Matrix a = observable_map_apply(csys, right,
                                  Matrix::Identity(sys.k, sys.k));
  auto wwords =
      all_word_operators(dual.w, sys.k, left.n_sites, kWindowSizeCap);
  Matrix b = Matrix::Zero(sys.k, sys.k);
  const long dim = left.coeffs.rows();
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j) {
      cdouble c = left.coeffs(i, j);
      if (c != 0.0) b += c * (wwords[j].adjoint() * wwords[i]);
    }
  Matrix rh = rho_sqrt(csys);
  return (rh * a * rh * b).trace();
}

double window_operator_norm(const WindowObservable& q) {
  return operator_norm(q.coeffs);
}

Matrix reshuffle(const TwoSidedWindow& q) {
  long dn = 1;
  for (int i = 0; i < q.n; ++i) dn *= q.d;
  Matrix out = Matrix::Zero(q.q.rows(), q.q.cols());
  for (long ip = 0; ip < dn; ++ip)
    for (long jp = 0; jp < dn; ++jp)
      for (long i = 0; i < dn; ++i)
        for (long j = 0; j < dn; ++j)
          out(ip * dn + i, jp * dn + j) = q.q(ip * dn + jp, i * dn + j);
  return out;
}

TwoSidedNorms two_sided_norms(const TwoSidedWindow& q) {
  TwoSidedNorms norms;
  norms.op_norm = operator_norm(reshuffle(q));
  norms.plain_norm = operator_norm(q.q);
  return norms;
}

cdouble two_sided_window_eval(const CanonicalSystem& csys,
                              const DualSystem& dual,
                              const TwoSidedWindow& q) {
  const auto& sys = csys.base;
  auto vwords = all_word_operators(sys.v, sys.k, q.n, kWindowSizeCap);
  auto wwords = all_word_operators(dual.w, sys.k, q.n, kWindowSizeCap);
  long dn = static_cast<long>(vwords.size());
  Matrix rh = rho_sqrt(csys);

  // Right factors bridged across the gap, then pushed through the dual
  // channel for the left gap.
  std::vector<Matrix> m(dn * dn);
  for (long i = 0; i < dn; ++i)
    for (long j = 0; j < dn; ++j) {
      Matrix x = vwords[i] * vwords[j].adjoint();
      for (int s = 0; s < q.shift; ++s) x = cp_map_apply(sys, x);
      x = (rh * x * rh).eval();
      for (int s = 0; s < q.shift; ++s) {
        Matrix y = Matrix::Zero(sys.k, sys.k);
        for (const auto& w : dual.w) y += w * x * w.adjoint();
        x = y;
      }
      m[i * dn + j] = x;
    }

  cdouble value = 0;
  for (long ip = 0; ip < dn; ++ip)
    for (long jp = 0; jp < dn; ++jp) {
      Matrix acc = Matrix::Zero(sys.k, sys.k);
      bool any = false;
      for (long b = 0; b < dn * dn; ++b) {
        cdouble c = q.q(ip * dn + jp, b);
        if (c != 0.0) {
          acc += c * m[b];
          any = true;
        }
      }
      if (any)
        value += (acc * wwords[jp].adjoint() * wwords[ip]).trace();
    }
  return value;
}

cdouble two_sided_window_product_eval(const CanonicalSystem& csys,
                                      const DualSystem& dual,
                                      const TwoSidedWindow& q) {
  (void)dual;
  const auto& sys = csys.base;
  auto vwords = all_word_operators(sys.v, sys.k, q.n, kWindowSizeCap);
  long dn = static_cast<long>(vwords.size());
  Vector onesided(dn * dn);
  for (long i = 0; i < dn; ++i)
    for (long j = 0; j < dn; ++j)
      onesided(i * dn + j) =
          (csys.rho * vwords[i] * vwords[j].adjoint()).trace();
  cdouble value = 0;
  for (long a = 0; a < dn * dn; ++a)
    for (long b = 0; b < dn * dn; ++b) {
      cdouble c = q.q(a, b);
      if (c != 0.0) value += c * onesided(a) * onesided(b);
    }
  return value;
}

}  // namespace fcs
