#pragma once

#include "fcs/types.hpp"

namespace fcs {

/// A Popescu system: d matrices v_1..v_d of size k x k on the bond space,
/// subject to sum_k v_k v_k* = I.
struct PopescuSystem {
  int d = 0;
  int k = 0;
  std::vector<Matrix> v;
  double tol = 1e-9;
};

/// || sum_k v_k v_k* - I ||_op
double cuntz_residual(const PopescuSystem& sys);

/// Checks shapes and the Cuntz relation; returns the system unchanged.
/// Throws ShapeMismatch or CuntzRelationViolated.
PopescuSystem validate(PopescuSystem sys);

/// tau(x) = sum_k v_k x v_k*  (unital CP map on the bond algebra).
Matrix cp_map_apply(const PopescuSystem& sys, const Matrix& x);

/// Trace dual of tau: rho -> sum_k v_k* rho v_k (trace preserving).
Matrix predual_apply(const PopescuSystem& sys, const Matrix& rho);

struct InvariantState {
  Matrix rho;        // positive, unit trace fixed point of the predual
  int fixed_dim;     // dimension of the eigenvalue-1 eigenspace of tau
};

/// Solves the predual fixed-point eigenproblem. When fixed_dim > 1 the
/// returned rho is one extremal positive fixed point.
InvariantState invariant_state(const PopescuSystem& sys,
                               double spectral_tol = 1e-8);

/// A positive fixed point of the predual with maximal support (Cesaro
/// average of predual iterates started from I/k).
Matrix maximal_invariant_state(const PopescuSystem& sys,
                               double spectral_tol = 1e-8);

struct CanonicalSystem {
  PopescuSystem base;  // compressed to the support of rho
  Matrix rho;          // full rank invariant density on the compressed space
  bool ergodic = false;
  int fixed_dim = 1;
  int algebra_dim = 0;  // dim of the word span of {v_k, v_k*}
};

/// Compresses the system onto the support of the maximal invariant density,
/// attaches the faithful rho, the ergodicity flag and the word-algebra
/// dimension. Idempotent.
CanonicalSystem canonicalize(const PopescuSystem& sys,
                             double spectral_tol = 1e-8);

/// v_I = v_{i_1} ... v_{i_m}; the empty word gives the identity.
Matrix word_operator(const PopescuSystem& sys, const MultiIndex& word);

/// Dimension of the complex span of words in the given generators, closed
/// under adjoints, iterated to stability (word length capped at 2 k^2).
int word_span_dimension(const std::vector<Matrix>& generators, int k,
                        double rank_tol = 1e-10);

}  // namespace fcs
