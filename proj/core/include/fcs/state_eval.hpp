#pragma once

#include "fcs/modular.hpp"
#include "fcs/popescu.hpp"

namespace fcs {

constexpr long kWindowSizeCap = 4096;  // cap on d^n for dense assembly

/// A local observable on n consecutive sites: the d^n x d^n matrix of the
/// operator in the product basis, entry (I,J) the coefficient of
/// e^{i_1}_{j_1} (x) ... (x) e^{i_n}_{j_n}.
struct WindowObservable {
  int d = 0;
  int first_site = 1;
  int n_sites = 1;
  Matrix coeffs;

  bool is_hermitian(double tol = 1e-12) const {
    return operator_norm(coeffs - coeffs.adjoint()) <= tol;
  }
};

WindowObservable identity_observable(int d, int n_sites, int first_site = 1);

/// omega(e^I_J chain matrix unit) = tr(rho v_I v_J*); |I| must equal |J|.
cdouble matrix_element(const CanonicalSystem& csys, const MultiIndex& I,
                       const MultiIndex& J);

struct ReducedDensity {
  int n_sites = 0;
  Matrix sigma;  // d^n x d^n, PSD, unit trace
};

ReducedDensity reduced_density(const CanonicalSystem& csys, int n,
                               long size_cap = kWindowSizeCap);

/// Partial trace over the first or last site of an n-site window matrix.
Matrix partial_trace_first(const Matrix& sigma, int d, int n);
Matrix partial_trace_last(const Matrix& sigma, int d, int n);

/// omega(Q) for a window observable.
cdouble expectation(const CanonicalSystem& csys, const WindowObservable& q);

/// The observable-weighted CP map E_Q(x) = sum q[I,J] v_I x v_J*.
Matrix observable_map_apply(const CanonicalSystem& csys,
                            const WindowObservable& q, const Matrix& x);

/// omega(Q1 theta_gap(Q2)) with `gap` empty sites between the windows.
cdouble two_point(const CanonicalSystem& csys, const WindowObservable& q1,
                  const WindowObservable& q2, int gap);

/// Two-sided evaluation: `left` must end at site 0, `right` start at site 1.
/// The left factor is evaluated through the dual system words.
cdouble two_sided_eval(const CanonicalSystem& csys, const DualSystem& dual,
                       const WindowObservable& left,
                       const WindowObservable& right);

/// Operator norm of a one-sided window observable (spectral norm of the
/// product-basis matrix, which is the faithful embedding).
double window_operator_norm(const WindowObservable& q);

/// A two-sided window observable on [-n+1, n] (optionally pushed outward by
/// `shift` sites on each side): coefficient matrix q with row index the
/// left pair (I',J') and column index the right pair (I,J), all of length n.
struct TwoSidedWindow {
  int d = 0;
  int n = 0;
  int shift = 0;
  Matrix q;  // d^{2n} x d^{2n}
};

struct TwoSidedNorms {
  double op_norm = 0.0;     // || q_hat ||, the faithful embedding norm
  double plain_norm = 0.0;  // || q || without reshuffling
};

/// Reshuffle q(I',J'|I,J) -> q_hat(I',I|J',J).
Matrix reshuffle(const TwoSidedWindow& q);
TwoSidedNorms two_sided_norms(const TwoSidedWindow& q);

/// omega evaluated on a two-sided window (with its shift), via dual words
/// on the left and transfer powers bridging the gap.
cdouble two_sided_window_eval(const CanonicalSystem& csys,
                              const DualSystem& dual,
                              const TwoSidedWindow& q);

/// omega_L (x) omega_R on the same two-sided window: the product of the two
/// one-sided evaluations.
cdouble two_sided_window_product_eval(const CanonicalSystem& csys,
                                      const DualSystem& dual,
                                      const TwoSidedWindow& q);

}  // namespace fcs
