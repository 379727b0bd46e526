#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fcs {

using cdouble = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// A word over the alphabet {1,...,d}. The empty word is allowed.
using MultiIndex = std::vector<int>;

inline MultiIndex reversed(const MultiIndex& w) {
  return MultiIndex(w.rbegin(), w.rend());
}

struct Tolerances {
  double cuntz = 1e-9;     // validation of sum v_k v_k* = I
  double spectral = 1e-8;  // eigenvalue clustering
  double compare = 1e-9;   // generic numeric comparisons
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeMismatch : Error {
  using Error::Error;
};

struct CuntzRelationViolated : Error {
  double residual;
  explicit CuntzRelationViolated(double r)
      : Error("Cuntz relation violated, residual " + std::to_string(r)),
        residual(r) {}
};

struct LetterOutOfRange : Error {
  using Error::Error;
};

struct LengthMismatch : Error {
  using Error::Error;
};

struct SizeCapExceeded : Error {
  using Error::Error;
};

struct OverlapError : Error {
  using Error::Error;
};

struct NumericalFailure : Error {
  using Error::Error;
};

struct RhoSingular : Error {
  using Error::Error;
};

struct SupportCompressionBrokeCuntz : Error {
  double residual;
  explicit SupportCompressionBrokeCuntz(double r)
      : Error("support compression broke the Cuntz relation, residual " +
              std::to_string(r)),
        residual(r) {}
};

struct AlphaIsOne : Error {
  using Error::Error;
};

struct NotDetailedBalance : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct UnknownExample : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

/// Spectral norm (largest singular value).
double operator_norm(const Matrix& a);

/// Kronecker product a (x) b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Column-major vectorization and its inverse.
Vector vectorize(const Matrix& a);
Matrix unvectorize(const Vector& v, int rows, int cols);

/// Integer power d^n with overflow guard; throws SizeCapExceeded above cap.
long checked_power(int d, int n, long cap);

/// Enumerate all words of length n over {1..d} in lexicographic order,
/// first letter most significant. Index -> word.
MultiIndex word_from_index(long idx, int d, int n);
long index_from_word(const MultiIndex& w, int d);

/// Orthonormal (Hilbert-Schmidt) Hermitian basis of the k x k matrices:
/// diagonal units, then symmetric and antisymmetric pair combinations.
std::vector<Matrix> hermitian_basis(int k);

}  // namespace fcs
