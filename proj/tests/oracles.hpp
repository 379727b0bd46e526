#pragma once

// Independent reference computations for the tests. These deliberately take
// a different route than the library (dense kron superoperators instead of
// word loops) so that agreement is evidence, not tautology.

#include <random>
#include <vector>

#include "fcs/catalog.hpp"
#include "fcs/popescu.hpp"
#include "fcs/state_eval.hpp"

namespace oracles {

using fcs::cdouble;
using fcs::Matrix;
using fcs::MultiIndex;
using fcs::Vector;

// Superoperator for x -> v_i x v_j^adj on column-major vec(x).
inline Matrix letter_super(const fcs::PopescuSystem& sys, int i, int j) {
  return fcs::kron(sys.v[j - 1].conjugate(), sys.v[i - 1]);
}

// omega(e^I_J) computed entirely through kron superoperators.
inline cdouble chain_element(const fcs::CanonicalSystem& csys,
                             const MultiIndex& I, const MultiIndex& J) {
  const int k = csys.base.k;
  Vector x = fcs::vectorize(Matrix(Matrix::Identity(k, k)));
  for (std::size_t m = I.size(); m-- > 0;)
    x = letter_super(csys.base, I[m], J[m]) * x;
  return (csys.rho * fcs::unvectorize(x, k, k)).trace();
}

// Reduced density assembled element by element from chain_element.
inline Matrix chain_density(const fcs::CanonicalSystem& csys, int n) {
  long dn = 1;
  for (int m = 0; m < n; ++m) dn *= csys.base.d;
  Matrix sigma(dn, dn);
  for (long r = 0; r < dn; ++r) {
    MultiIndex I = fcs::word_from_index(r, csys.base.d, n);
    for (long c = 0; c < dn; ++c)
      sigma(r, c) =
          chain_element(csys, I, fcs::word_from_index(c, csys.base.d, n));
  }
  return sigma;
}

inline Matrix random_matrix(std::mt19937& rng, int rows, int cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cdouble(g(rng), g(rng));
  return m;
}

inline Matrix random_hermitian(std::mt19937& rng, int n) {
  Matrix m = random_matrix(rng, n, n);
  return (m + m.adjoint()) / 2.0;
}

inline fcs::WindowObservable random_window(std::mt19937& rng, int d, int n,
                                           int first_site) {
  long dn = 1;
  for (int m = 0; m < n; ++m) dn *= d;
  fcs::WindowObservable q;
  q.d = d;
  q.n_sites = n;
  q.first_site = first_site;
  q.coeffs = random_hermitian(rng, static_cast<int>(dn));
  return q;
}

// Every catalog system, canonicalized.
inline std::vector<std::pair<std::string, fcs::CanonicalSystem>>
catalog_systems() {
  std::vector<std::pair<std::string, fcs::CanonicalSystem>> out;
  for (const auto& name : fcs::example_names())
    out.emplace_back(name, fcs::canonicalize(fcs::example_system(name, 7)));
  return out;
}

}  // namespace oracles
