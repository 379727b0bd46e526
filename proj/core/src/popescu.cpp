#include "fcs/popescu.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace fcs {

namespace {

Matrix predual_matrix(const PopescuSystem& sys) {
  const int k2 = sys.k * sys.k;
  Matrix m = Matrix::Zero(k2, k2);
  // vec(v* rho v) = (v^T (x) v*) vec(rho), column-major vec
  for (const auto& v : sys.v) m += kron(v.transpose(), v.adjoint());
  return m;
}

Matrix hermitize(const Matrix& x) { return 0.5 * (x + x.adjoint()); }

// Clip tiny negative eigenvalues and renormalize to unit trace.
Matrix positive_part_normalized(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("eigensolver failed on Hermitian fixed point");
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  Matrix out = es.eigenvectors() * ev.asDiagonal() *
               es.eigenvectors().adjoint();
  double tr = out.trace().real();
  if (tr <= 0.0) throw NumericalFailure("fixed point has non-positive trace");
  return out / tr;
}

// Real vector space of Hermitian k x k matrices, dimension k^2.
Eigen::VectorXd herm_coords(const Matrix& h) {
  const int k = static_cast<int>(h.rows());
  Eigen::VectorXd c(k * k);
  int p = 0;
  for (int i = 0; i < k; ++i) c(p++) = h(i, i).real();
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      c(p++) = std::sqrt(2.0) * h(i, j).real();
      c(p++) = std::sqrt(2.0) * h(i, j).imag();
    }
  return c;
}

// Orthonormal (real) basis of the span of the given Hermitian matrices.
std::vector<Matrix> herm_span_basis(const std::vector<Matrix>& mats,
                                    double tol) {
  std::vector<Matrix> basis;
  std::vector<Eigen::VectorXd> coords;
  for (const auto& m : mats) {
    Eigen::VectorXd c = herm_coords(m);
    Matrix r = m;
    for (size_t i = 0; i < coords.size(); ++i) {
      double proj = coords[i].dot(c);
      c -= proj * coords[i];
      r -= proj * basis[i];
    }
    double n = c.norm();
    if (n > tol) {
      coords.push_back(c / n);
      basis.push_back(r / n);
    }
  }
  return basis;
}

}  // namespace

double cuntz_residual(const PopescuSystem& sys) {
  Matrix s = Matrix::Zero(sys.k, sys.k);
  for (const auto& v : sys.v) s += v * v.adjoint();
  return operator_norm(s - Matrix::Identity(sys.k, sys.k));
}

PopescuSystem validate(PopescuSystem sys) {
  if (sys.d < 2) throw ShapeMismatch("alphabet size d must be >= 2");
  if (sys.k < 1) throw ShapeMismatch("bond dimension k must be >= 1");
  if (static_cast<int>(sys.v.size()) != sys.d)
    throw ShapeMismatch("expected d = " + std::to_string(sys.d) +
                        " matrices, got " + std::to_string(sys.v.size()));
  for (const auto& v : sys.v)
    if (v.rows() != sys.k || v.cols() != sys.k)
      throw ShapeMismatch("matrix shape does not match bond dimension");
  double r = cuntz_residual(sys);
  if (r > sys.tol) throw CuntzRelationViolated(r);
  return sys;
}

Matrix cp_map_apply(const PopescuSystem& sys, const Matrix& x) {
  if (x.rows() != sys.k || x.cols() != sys.k)
    throw ShapeMismatch("cp_map_apply: argument shape mismatch");
  Matrix out = Matrix::Zero(sys.k, sys.k);
  for (const auto& v : sys.v) out += v * x * v.adjoint();
  return out;
}

Matrix predual_apply(const PopescuSystem& sys, const Matrix& rho) {
  if (rho.rows() != sys.k || rho.cols() != sys.k)
    throw ShapeMismatch("predual_apply: argument shape mismatch");
  Matrix out = Matrix::Zero(sys.k, sys.k);
  for (const auto& v : sys.v) out += v.adjoint() * rho * v;
  return out;
}

Matrix word_operator(const PopescuSystem& sys, const MultiIndex& word) {
  Matrix out = Matrix::Identity(sys.k, sys.k);
  for (int letter : word) {
    if (letter < 1 || letter > sys.d)
      throw LetterOutOfRange("letter " + std::to_string(letter) +
                             " outside [1," + std::to_string(sys.d) + "]");
    out = out * sys.v[letter - 1];
  }
  return out;
}

namespace {

// Hermitian basis of the eigenvalue-1 eigenspace of the predual.
std::vector<Matrix> fixed_point_herm_basis(const PopescuSystem& sys,
                                           double spectral_tol) {
  Eigen::ComplexEigenSolver<Matrix> es(predual_matrix(sys));
  if (es.info() != Eigen::Success)
    throw NumericalFailure("predual eigensolver did not converge");
  std::vector<Matrix> cands;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i) - 1.0) <= spectral_tol) {
      Matrix x = unvectorize(es.eigenvectors().col(i), sys.k, sys.k);
      cands.push_back(hermitize(x));
      cands.push_back(hermitize(cdouble(0, 1) * x));
    }
  }
  return herm_span_basis(cands, 1e-9);
}

}  // namespace

Matrix maximal_invariant_state(const PopescuSystem& sys, double spectral_tol) {
  // Cesaro average of predual iterates from the maximally mixed state;
  // converges onto a fixed point with maximal support.
  const int iters = std::max(200, 20 * sys.k * sys.k);
  Matrix rho = Matrix::Identity(sys.k, sys.k) / double(sys.k);
  Matrix acc = Matrix::Zero(sys.k, sys.k);
  for (int i = 0; i < iters; ++i) {
    acc += rho;
    rho = predual_apply(sys, rho);
  }
  acc /= double(iters);
  // Polish: project onto the Hermitian fixed space, then clip.
  auto basis = fixed_point_herm_basis(sys, spectral_tol);
  if (basis.empty())
    throw NumericalFailure("no fixed point of the predual found");
  Matrix proj = Matrix::Zero(sys.k, sys.k);
  Eigen::VectorXd c = herm_coords(acc);
  for (const auto& b : basis) proj += herm_coords(b).dot(c) * b;
  return positive_part_normalized(proj);
}

InvariantState invariant_state(const PopescuSystem& sys, double spectral_tol) {
  auto basis = fixed_point_herm_basis(sys, spectral_tol);
  int fixed_dim = static_cast<int>(basis.size());
  if (fixed_dim == 0)
    throw NumericalFailure("no eigenvalue-1 fixed point found");
  Matrix rho = maximal_invariant_state(sys, spectral_tol);
  if (fixed_dim == 1) return {rho, 1};

  // Walk to an extremal point of the fixed-point simplex: repeatedly move
  // along a fixed traceless direction to the boundary of positivity, then
  // restrict the admissible directions to the shrunken support.
  std::vector<Matrix> dirs = basis;
  for (int guard = 0; guard < sys.k + 2; ++guard) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    double floor = 1e-10 * std::max(1.0, es.eigenvalues().maxCoeff());
    int rank = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()(i) > floor) ++rank;
    Matrix u = es.eigenvectors().rightCols(rank);
    Matrix supp = u * u.adjoint();
    Matrix off = Matrix::Identity(sys.k, sys.k) - supp;

    // Fixed Hermitian directions supported inside supp(rho).
    std::vector<Matrix> inside;
    {
      // Solve for combinations y of dirs with (1-P) y = y (1-P) = 0.
      const int m = static_cast<int>(dirs.size());
      Eigen::MatrixXd a(2 * 2 * sys.k * sys.k, m);
      for (int j = 0; j < m; ++j) {
        Matrix l = off * dirs[j];
        Matrix r = dirs[j] * off;
        Eigen::VectorXd col(2 * 2 * sys.k * sys.k);
        int p = 0;
        for (Eigen::Index i = 0; i < l.size(); ++i) {
          col(p++) = l.data()[i].real();
          col(p++) = l.data()[i].imag();
        }
        for (Eigen::Index i = 0; i < r.size(); ++i) {
          col(p++) = r.data()[i].real();
          col(p++) = r.data()[i].imag();
        }
        a.col(j) = col;
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
      for (int j = 0; j < m; ++j) {
        double sv = j < svd.singularValues().size()
                        ? svd.singularValues()(j)
                        : 0.0;
        if (sv <= 1e-8) {
          Matrix y = Matrix::Zero(sys.k, sys.k);
          for (int t = 0; t < m; ++t) y += svd.matrixV()(t, j) * dirs[t];
          inside.push_back(y);
        }
      }
      inside = herm_span_basis(inside, 1e-9);
    }
    if (inside.size() <= 1) break;  // rho is extremal within the fixed space

    // Pick a direction not proportional to rho and make it traceless.
    Matrix y;
    bool found = false;
    Eigen::VectorXd rc = herm_coords(rho);
    rc.normalize();
    for (const auto& b : inside) {
      Eigen::VectorXd bc = herm_coords(b);
      bc -= rc.dot(bc) * rc;
      if (bc.norm() > 1e-8) {
        y = b - b.trace().real() * rho;
        found = true;
        break;
      }
    }
    if (!found) break;

    // Largest t with rho - t y >= 0.
    Matrix ur = es.eigenvectors().rightCols(rank);
    Eigen::VectorXd evs = es.eigenvalues().tail(rank);
    Matrix rinvh = ur * evs.cwiseSqrt().cwiseInverse().asDiagonal() *
                   ur.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> ey(rinvh * y * rinvh);
    double lmax = ey.eigenvalues().maxCoeff();
    if (lmax <= 1e-12) continue;
    rho = positive_part_normalized(rho - (1.0 / lmax) * y);
    dirs = inside;
  }
  return {rho, fixed_dim};
}

int word_span_dimension(const std::vector<Matrix>& generators, int k,
                        double rank_tol) {
  std::vector<Matrix> gens;
  for (const auto& g : generators) {
    gens.push_back(g);
    gens.push_back(g.adjoint());
  }
  // Orthonormal basis of the word span, grown one letter at a time.
  std::vector<Vector> basis;
  std::vector<Matrix> mats;
  auto try_add = [&](const Matrix& m) {
    Vector c = vectorize(m);
    for (const auto& b : basis) c -= b.dot(c) * b;
    if (c.norm() > rank_tol) {
      c.normalize();
      basis.push_back(c);
      mats.push_back(unvectorize(c, k, k));
      return true;
    }
    return false;
  };
  try_add(Matrix::Identity(k, k));
  const int cap = 2 * k * k;
  size_t frontier_begin = 0;
  for (int len = 0; len < cap; ++len) {
    size_t frontier_end = mats.size();
    bool grew = false;
    for (size_t i = frontier_begin; i < frontier_end; ++i)
      for (const auto& g : gens)
        if (try_add(mats[i] * g)) grew = true;
    frontier_begin = frontier_end;
    if (!grew) break;
  }
  return static_cast<int>(basis.size());
}

CanonicalSystem canonicalize(const PopescuSystem& sys, double spectral_tol) {
  PopescuSystem checked = validate(sys);
  Matrix rho = maximal_invariant_state(checked, spectral_tol);

  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  double floor = 1e-12 * std::max(1.0, es.eigenvalues().maxCoeff());
  int rank = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > floor) ++rank;

  PopescuSystem out = checked;
  Matrix rho_out = rho;
  if (rank < checked.k) {
    Matrix u = es.eigenvectors().rightCols(rank);
    out.k = rank;
    for (auto& v : out.v) v = (u.adjoint() * v * u).eval();
    double res = cuntz_residual(out);
    if (res > 10 * checked.tol) throw SupportCompressionBrokeCuntz(res);
    rho_out = u.adjoint() * rho * u;
    rho_out /= rho_out.trace().real();
    rho_out = predual_apply(out, rho_out);  // polish on the compressed space
    rho_out = hermitize(rho_out) / rho_out.trace().real();
  }

  CanonicalSystem csys;
  csys.base = out;
  csys.rho = rho_out;
  auto fixed = fixed_point_herm_basis(out, spectral_tol);
  csys.fixed_dim = static_cast<int>(fixed.size());
  csys.ergodic = csys.fixed_dim == 1;
  csys.algebra_dim = word_span_dimension(out.v, out.k);
  return csys;
}

}  // namespace fcs
