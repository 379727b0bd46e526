#pragma once

#include <optional>
#include <string>

#include "fcs/state_eval.hpp"
#include "fcs/transfer.hpp"

namespace fcs {

/// true iff the n-site reduced density equals its transpose in the product
/// basis for all n <= n_max.
bool is_real(const CanonicalSystem& csys, int n_max = 4,
             double tol = 1e-9);

/// true iff the n-site reduced density is invariant under site-order
/// reversal for all n <= n_max.
bool is_lattice_symmetric(const CanonicalSystem& csys, int n_max = 4,
                          double tol = 1e-9);

struct DetailedBalanceResult {
  bool holds = false;            // real && lattice_symmetric
  bool real = false;
  bool lattice_symmetric = false;
  bool kms_symmetric = false;    // independent KMS-symmetry detector
  double kms_defect = 0.0;
  bool detectors_agree = true;   // mismatch is surfaced, not resolved
};

DetailedBalanceResult detailed_balance(const CanonicalSystem& csys,
                                       const KmsSpace& kms, int n_max = 4,
                                       double tol = 1e-9);

struct ReflectionPositivity {
  bool psd = false;
  double min_eig = 0.0;
  double hermiticity_defect = 0.0;
  bool modular_gauge = false;  // reflection implemented by modular conjugation
};

/// Gram matrix of x against its bond reflection over the matrix-unit basis
/// of the window [1, n]. For detailed-balance systems a letter gauge exists
/// in which the reflected half acts through the modular conjugation, and the
/// Gram is evaluated in that representation (the reflected word becomes the
/// adjoint on the other side of rho^{1/2}); the shipped letters themselves
/// need not be in that gauge. Without detailed balance no such gauge exists
/// and the Gram is assembled from the dual words as given, which in general
/// is neither Hermitian nor positive.
ReflectionPositivity reflection_positivity_check(const CanonicalSystem& csys,
                                                 const DualSystem& dual,
                                                 int n, double tol = 1e-9);

enum class PurityVerdict { kPure, kNotPure };

struct PurityCertificate {
  PurityVerdict verdict = PurityVerdict::kNotPure;
  std::string reason;            // NON_ERGODIC, PERIPHERAL_PERIOD(m), ...
  std::optional<int> period;
  std::vector<double> iterates;  // mixing defects, evidence for the verdict
};

PurityCertificate purity_certificate(const CanonicalSystem& csys,
                                     int n_max = 8,
                                     double spectral_tol = 1e-8);

struct DecayCertificate {
  double alpha = 0.0;
  double delta_star = 0.0;       // certified decay exponent
  std::vector<double> samples;   // e^{delta* k} |connected two-point|, k>=1
  bool samples_bounded = false;  // every sample within the k=1 envelope
};

/// Throws AlphaIsOne when no exponential decay is certifiable.
DecayCertificate decay_certificate(const CanonicalSystem& csys,
                                   double delta_margin = 0.05,
                                   int gap_max = 12,
                                   double spectral_tol = 1e-8,
                                   unsigned seed = 12345);

/// Pushes a two-sided window outward by k sites on each side of the bond.
TwoSidedWindow theta_hat(const TwoSidedWindow& q, int k);

struct SplitBoundRow {
  int n = 0;
  int gap = 0;
  double measured = 0.0;  // worst discrepancy over the even basis, per unit norm
  double bound = 0.0;     // 2 alpha^{2 gap}
};

enum class SplitVerdict { kCertified, kNotApplicable, kFailed };

struct SplitResult {
  SplitVerdict verdict = SplitVerdict::kNotApplicable;
  std::string reason;
  std::vector<SplitBoundRow> rows;
};

/// Split-property bound: for every even Hermitian basis observable on the
/// window [-n+1, n] pushed out by gap sites, the discrepancy between omega
/// and omega_L (x) omega_R, computed through the positive-part
/// decomposition, must stay below 2 alpha^{2 gap} per unit operator norm.
SplitResult split_bound_check(const CanonicalSystem& csys,
                              const DualSystem& dual, int n_max = 2,
                              int gap_max = 6, double spectral_tol = 1e-8,
                              double slack = 1e-8);

struct CertifyOptions {
  int symmetry_n_max = 4;
  int kolmogorov_n_max = 8;
  int split_window_max = 2;
  int split_gap_max = 6;
  int reflection_n = 2;
  int gauge_word_len_max = 4;
  double delta_margin = 0.05;
  int decay_gap_max = 12;
  Tolerances tol;
};

struct CertificateReport {
  bool ergodic = false;
  int fixed_dim = 1;
  int algebra_dim = 0;
  PurityCertificate purity;
  std::optional<int> gauge_g;  // nullopt encodes the full-circle gauge group
  bool real = false;
  bool lattice_symmetric = false;
  DetailedBalanceResult detailed_balance;
  ReflectionPositivity reflection;
  HaagResult haag;
  DeltaTriviality delta_triviality;
  double alpha = 0.0;
  std::optional<int> gauge_period;
  std::vector<cdouble> transfer_eigenvalues;
  std::optional<DecayCertificate> decay;  // absent when alpha is 1
  SplitResult split;
  double dual_condition_number = 1.0;
  double dual_residual = 0.0;
};

CertificateReport full_report(const CanonicalSystem& csys,
                              const CertifyOptions& opts = {});

}  // namespace fcs
