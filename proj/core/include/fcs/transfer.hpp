#pragma once

#include <optional>

#include "fcs/popescu.hpp"

namespace fcs {

/// Matrix of x -> sum_k v_k x v_k* acting on column-major vectorized
/// k x k matrices.
struct TransferOperator {
  int k = 0;
  Matrix mat;  // k^2 x k^2
};

TransferOperator build_transfer(const PopescuSystem& sys);
TransferOperator build_transfer(const CanonicalSystem& csys);

struct SpectralReport {
  std::vector<cdouble> eigenvalues;   // sorted by modulus desc, then phase
  std::vector<cdouble> peripheral;    // |lambda| >= 1 - tol
  double alpha = 0.0;                 // second spectral modulus
  std::optional<int> gauge_period;    // m iff peripheral = m-th roots of unity
  int fixed_dim = 0;                  // multiplicity of eigenvalue 1
};

SpectralReport spectral_report(const TransferOperator& top,
                               double tol = 1e-8);

bool ergodicity_check(const CanonicalSystem& csys,
                      double spectral_tol = 1e-8);

struct KolmogorovResult {
  bool spectral_pass = false;
  std::vector<double> iterates;  // index n-1 holds the step-n defect
};

/// Strong-mixing check: spectral criterion plus direct iteration of
/// max_{x,y} |phi0(tau_n(x) tau_n(y)) - phi0(x) phi0(y)| over a Hermitian
/// operator basis.
KolmogorovResult kolmogorov_check(const CanonicalSystem& csys, int n_max,
                                  double spectral_tol = 1e-8);

/// gcd of |I|-|J| over word pairs with phi0(v_I v_J*) != 0 and |I| != |J|;
/// nullopt means every unequal-length pair vanished (gauge group S^1 at
/// this truncation).
std::optional<int> gauge_group_detect(const CanonicalSystem& csys,
                                      int word_len_max = 4,
                                      double tol = 1e-9);

/// The m-site blocked system: d^m letters v_I, |I| = m, same bond space.
PopescuSystem block_system(const CanonicalSystem& csys, int m,
                           long letter_cap = 4096);

}  // namespace fcs
