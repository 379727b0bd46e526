#include "fcs/transfer.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fcs {

TransferOperator build_transfer(const PopescuSystem& sys) {
  const int k2 = sys.k * sys.k;
  Matrix m = Matrix::Zero(k2, k2);
  // vec(v x v*) = (conj(v) (x) v) vec(x)
  for (const auto& v : sys.v) m += kron(v.conjugate(), v);
  return {sys.k, m};
}

TransferOperator build_transfer(const CanonicalSystem& csys) {
  return build_transfer(csys.base);
}

SpectralReport spectral_report(const TransferOperator& top, double tol) {
  Eigen::ComplexEigenSolver<Matrix> es(top.mat);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("transfer eigensolver did not converge");

  SpectralReport rep;
  rep.eigenvalues.assign(es.eigenvalues().data(),
                         es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
            [](cdouble a, cdouble b) {
              double ma = std::abs(a), mb = std::abs(b);
              if (std::abs(ma - mb) > 1e-14) return ma > mb;
              return std::arg(a) < std::arg(b);
            });

  rep.fixed_dim = 0;
  rep.alpha = 0.0;
  for (cdouble ev : rep.eigenvalues) {
    if (std::abs(ev) >= 1.0 - tol) rep.peripheral.push_back(ev);
    if (std::abs(ev - 1.0) <= tol)
      ++rep.fixed_dim;
    else
      rep.alpha = std::max(rep.alpha, std::abs(ev));
  }

  // Peripheral set equal to the m-th roots of unity, each simple?
  rep.gauge_period = std::nullopt;
  const int m = static_cast<int>(rep.peripheral.size());
  if (m >= 1) {
    const double snap = 1e-6;
    std::vector<bool> hit(m, false);
    bool ok = true;
    for (cdouble ev : rep.peripheral) {
      double phase = std::arg(ev);
      if (phase < 0) phase += 2 * M_PI;
      double pos = phase * m / (2 * M_PI);
      int j = static_cast<int>(std::lround(pos));
      if (std::abs(pos - j) > snap * m) {
        ok = false;
        break;
      }
      j %= m;
      if (hit[j]) {  // repeated root: not simple
        ok = false;
        break;
      }
      hit[j] = true;
    }
    if (ok && std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }))
      rep.gauge_period = m;
  }
  return rep;
}

bool ergodicity_check(const CanonicalSystem& csys, double spectral_tol) {
  auto rep = spectral_report(build_transfer(csys), spectral_tol);
  return rep.fixed_dim == 1;
}

KolmogorovResult kolmogorov_check(const CanonicalSystem& csys, int n_max,
                                  double spectral_tol) {
  auto rep = spectral_report(build_transfer(csys), spectral_tol);
  KolmogorovResult res;
  res.spectral_pass =
      rep.peripheral.size() == 1 && rep.fixed_dim == 1 &&
      std::abs(rep.peripheral[0] - 1.0) <= spectral_tol;

  const auto& sys = csys.base;
  auto basis = hermitian_basis(sys.k);
  std::vector<Matrix> iter = basis;
  std::vector<cdouble> phi(basis.size());
  for (size_t i = 0; i < basis.size(); ++i)
    phi[i] = (csys.rho * basis[i]).trace();

  res.iterates.resize(n_max);
  for (int n = 1; n <= n_max; ++n) {
    for (auto& x : iter) x = cp_map_apply(sys, x);
    double worst = 0.0;
    for (size_t i = 0; i < iter.size(); ++i)
      for (size_t j = 0; j < iter.size(); ++j) {
        cdouble val = (csys.rho * iter[i] * iter[j]).trace() - phi[i] * phi[j];
        worst = std::max(worst, std::abs(val));
      }
    res.iterates[n - 1] = worst;
  }
  return res;
}

std::optional<int> gauge_group_detect(const CanonicalSystem& csys,
                                      int word_len_max, double tol) {
  const auto& sys = csys.base;
  // All word operators per length.
  std::vector<std::vector<Matrix>> words(word_len_max + 1);
  words[0] = {Matrix::Identity(sys.k, sys.k)};
  for (int len = 1; len <= word_len_max; ++len) {
    words[len].reserve(words[len - 1].size() * sys.d);
    for (const auto& w : words[len - 1])
      for (const auto& v : sys.v) words[len].push_back(w * v);
  }
  int g = 0;
  for (int li = 0; li <= word_len_max; ++li)
    for (int lj = 0; lj <= word_len_max; ++lj) {
      if (li == lj) continue;
      int diff = std::abs(li - lj);
      if (g != 0 && diff % g == 0) continue;  // gcd cannot change
      for (const auto& wi : words[li]) {
        bool found = false;
        for (const auto& wj : words[lj]) {
          if (std::abs((csys.rho * wi * wj.adjoint()).trace()) > tol) {
            g = std::gcd(g, diff);
            found = true;
            break;
          }
        }
        if (found) break;
      }
    }
  if (g == 0) return std::nullopt;
  return g;
}

PopescuSystem block_system(const CanonicalSystem& csys, int m,
                           long letter_cap) {
  if (m < 1) throw ShapeMismatch("block size must be >= 1");
  const auto& sys = csys.base;
  long dm = checked_power(sys.d, m, letter_cap);
  PopescuSystem out;
  out.d = static_cast<int>(dm);
  out.k = sys.k;
  out.tol = sys.tol;
  out.v.reserve(dm);
  for (long idx = 0; idx < dm; ++idx)
    out.v.push_back(word_operator(sys, word_from_index(idx, sys.d, m)));
  return out;
}

}  // namespace fcs
