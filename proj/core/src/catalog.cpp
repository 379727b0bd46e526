#include "fcs/catalog.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

namespace fcs {

namespace {

PopescuSystem aklt() {
  PopescuSystem sys;
  sys.d = 3;
  sys.k = 2;
  Matrix vp = Matrix::Zero(2, 2), v0 = Matrix::Zero(2, 2),
         vm = Matrix::Zero(2, 2);
  vp(0, 1) = std::sqrt(2.0 / 3.0);
  v0(0, 0) = -std::sqrt(1.0 / 3.0);
  v0(1, 1) = std::sqrt(1.0 / 3.0);
  vm(1, 0) = -std::sqrt(2.0 / 3.0);
  sys.v = {vp, v0, vm};
  return sys;
}

PopescuSystem neel_flip() {
  PopescuSystem sys;
  sys.d = 2;
  sys.k = 2;
  Matrix v1 = Matrix::Zero(2, 2), v2 = Matrix::Zero(2, 2);
  v1(0, 1) = 1.0;
  v2(1, 0) = 1.0;
  sys.v = {v1, v2};
  return sys;
}

PopescuSystem product_pure() {
  PopescuSystem sys;
  sys.d = 2;
  sys.k = 1;
  Matrix c1(1, 1), c2(1, 1);
  c1(0, 0) = 1.0 / std::sqrt(2.0);
  c2(0, 0) = 1.0 / std::sqrt(2.0);
  sys.v = {c1, c2};
  return sys;
}

PopescuSystem ghz_mixture() {
  PopescuSystem sys;
  sys.d = 2;
  sys.k = 2;
  Matrix v1 = Matrix::Identity(2, 2) / std::sqrt(2.0);
  Matrix v2 = Matrix::Zero(2, 2);
  v2(0, 1) = 1.0 / std::sqrt(2.0);
  v2(1, 0) = 1.0 / std::sqrt(2.0);
  sys.v = {v1, v2};
  return sys;
}

PopescuSystem markov_chain() {
  // Doubly stochastic but non-reversible transition matrix: the chain state
  // is ergodic and mixing yet not lattice symmetric.
  Eigen::Matrix3d p;
  p << 0.2, 0.6, 0.2,
       0.2, 0.2, 0.6,
       0.6, 0.2, 0.2;
  PopescuSystem sys;
  sys.d = 3;
  sys.k = 3;
  for (int a = 0; a < 3; ++a) {
    Matrix v = Matrix::Zero(3, 3);
    for (int t = 0; t < 3; ++t) v(a, t) = std::sqrt(p(a, t));
    sys.v.push_back(v);
  }
  return sys;
}

PopescuSystem random_ergodic(unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  PopescuSystem sys;
  sys.d = 2;
  sys.k = 2;
  std::vector<Matrix> a(2);
  Matrix s = Matrix::Zero(2, 2);
  for (auto& m : a) {
    m.resize(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = cdouble(g(rng), g(rng));
    s += m * m.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  Matrix s_inv_half = es.eigenvectors() *
                      es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                      es.eigenvectors().adjoint();
  for (const auto& m : a) sys.v.push_back(s_inv_half * m);
  return sys;
}

}  // namespace

std::vector<std::string> example_names() {
  return {"aklt",        "neel_flip",    "product_pure",
          "ghz_mixture", "markov_chain", "random_ergodic"};
}

PopescuSystem example_system(const std::string& name, unsigned seed) {
  if (name == "aklt") return validate(aklt());
  if (name == "neel_flip") return validate(neel_flip());
  if (name == "product_pure") return validate(product_pure());
  if (name == "ghz_mixture") return validate(ghz_mixture());
  if (name == "markov_chain") return validate(markov_chain());
  if (name == "random_ergodic") return validate(random_ergodic(seed));
  throw UnknownExample("unknown example: " + name);
}

}  // namespace fcs
