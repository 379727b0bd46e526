#include "fcs/types.hpp"

#include <Eigen/SVD>

namespace fcs {

double operator_norm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector vectorize(const Matrix& a) {
  return Eigen::Map<const Vector>(a.data(), a.size());
}

Matrix unvectorize(const Vector& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols)
    throw ShapeMismatch("unvectorize: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

long checked_power(int d, int n, long cap) {
  long p = 1;
  for (int i = 0; i < n; ++i) {
    p *= d;
    if (p > cap)
      throw SizeCapExceeded("d^n = " + std::to_string(d) + "^" +
                            std::to_string(n) + " exceeds cap " +
                            std::to_string(cap));
  }
  return p;
}

MultiIndex word_from_index(long idx, int d, int n) {
  MultiIndex w(n);
  for (int p = n - 1; p >= 0; --p) {
    w[p] = static_cast<int>(idx % d) + 1;
    idx /= d;
  }
  return w;
}

long index_from_word(const MultiIndex& w, int d) {
  long idx = 0;
  for (int letter : w) idx = idx * d + (letter - 1);
  return idx;
}

std::vector<Matrix> hermitian_basis(int k) {
  std::vector<Matrix> basis;
  basis.reserve(static_cast<size_t>(k) * k);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < k; ++i) {
    Matrix m = Matrix::Zero(k, k);
    m(i, i) = 1.0;
    basis.push_back(m);
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      Matrix m = Matrix::Zero(k, k);
      m(i, j) = s;
      m(j, i) = s;
      basis.push_back(m);
      Matrix a = Matrix::Zero(k, k);
      a(i, j) = cdouble(0, -s);
      a(j, i) = cdouble(0, s);
      basis.push_back(a);
    }
  return basis;
}

}  // namespace fcs
