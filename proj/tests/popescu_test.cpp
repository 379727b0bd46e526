#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

#include "fcs/catalog.hpp"
#include "fcs/popescu.hpp"
#include "oracles.hpp"

using namespace fcs;

TEST_CASE("validate accepts the catalog and rejects broken input") {
  for (const auto& name : example_names()) {
    auto sys = example_system(name);
    CHECK_NOTHROW(validate(sys));
    CHECK(cuntz_residual(sys) <= 1e-9);
  }

  PopescuSystem bad;
  bad.d = 2;
  bad.k = 2;
  bad.v = {Matrix::Identity(2, 2), Matrix::Identity(2, 2)};
  CHECK_THROWS_AS(validate(bad), CuntzRelationViolated);

  bad.v = {Matrix::Identity(2, 2), Matrix::Identity(3, 3)};
  CHECK_THROWS_AS(validate(bad), ShapeMismatch);

  bad.v = {Matrix::Identity(2, 2)};
  CHECK_THROWS_AS(validate(bad), ShapeMismatch);
}

TEST_CASE("cp map and predual are trace duals of each other") {
  std::mt19937 rng(11);
  for (const auto& [name, csys] : oracles::catalog_systems()) {
    CAPTURE(name);
    const int k = csys.base.k;
    for (int rep = 0; rep < 10; ++rep) {
      Matrix x = oracles::random_matrix(rng, k, k);
      Matrix r = oracles::random_matrix(rng, k, k);
      cdouble lhs = (predual_apply(csys.base, r) * x).trace();
      cdouble rhs = (r * cp_map_apply(csys.base, x)).trace();
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
    // Unitality and trace preservation.
    Matrix id = Matrix::Identity(k, k);
    CHECK(operator_norm(cp_map_apply(csys.base, id) - id) <= 1e-10);
    Matrix r = oracles::random_matrix(rng, k, k);
    CHECK(std::abs(predual_apply(csys.base, r).trace() - r.trace()) <= 1e-12);
  }
}

TEST_CASE("invariant state is a fixed point of the predual") {
  for (const auto& name : example_names()) {
    CAPTURE(name);
    auto sys = example_system(name, 7);
    auto inv = invariant_state(sys);
    CHECK(std::abs(inv.rho.trace() - 1.0) <= 1e-10);
    CHECK(operator_norm(predual_apply(sys, inv.rho) - inv.rho) <= 1e-9);
    CHECK(operator_norm(inv.rho - inv.rho.adjoint()) <= 1e-12);
  }
}

TEST_CASE("canonicalize: maximally mixed bond state for the spin-1 chain") {
  auto csys = canonicalize(example_system("aklt"));
  CHECK(csys.base.d == 3);
  CHECK(csys.base.k == 2);
  CHECK(csys.ergodic);
  CHECK(csys.fixed_dim == 1);
  CHECK(csys.algebra_dim == 4);
  Matrix half = Matrix::Identity(2, 2) / 2.0;
  CHECK(operator_norm(csys.rho - half) <= 1e-12);
  CHECK(operator_norm(predual_apply(csys.base, csys.rho) - csys.rho) <=
        1e-12);
}

TEST_CASE("canonicalize keeps the full support of a mixture") {
  auto csys = canonicalize(example_system("ghz_mixture"));
  CHECK_FALSE(csys.ergodic);
  CHECK(csys.fixed_dim == 2);
  CHECK(csys.base.k == 2);  // support is not collapsed to an extremal branch
  CHECK(csys.rho.rows() == 2);
  double lo = Eigen::SelfAdjointEigenSolver<Matrix>(csys.rho)
                  .eigenvalues()
                  .minCoeff();
  CHECK(lo > 1e-6);
}

TEST_CASE("canonicalize is idempotent") {
  for (const auto& name : example_names()) {
    CAPTURE(name);
    auto once = canonicalize(example_system(name, 7));
    auto twice = canonicalize(once.base);
    CHECK(once.base.k == twice.base.k);
    CHECK(once.fixed_dim == twice.fixed_dim);
    CHECK(operator_norm(once.rho - twice.rho) <= 1e-8);
  }
}

TEST_CASE("word operators multiply like words") {
  auto csys = canonicalize(example_system("aklt"));
  MultiIndex left = {1, 3};
  MultiIndex right = {2};
  MultiIndex both = {1, 3, 2};
  Matrix prod = word_operator(csys.base, left) * word_operator(csys.base, right);
  CHECK(operator_norm(prod - word_operator(csys.base, both)) <= 1e-12);
  CHECK(operator_norm(word_operator(csys.base, {}) -
                      Matrix::Identity(2, 2)) == 0.0);
  CHECK_THROWS_AS(word_operator(csys.base, {4}), LetterOutOfRange);
}

TEST_CASE("spin-1 chain forbids repeating the raising letter") {
  auto csys = canonicalize(example_system("aklt"));
  CHECK(operator_norm(word_operator(csys.base, {1, 1})) <= 1e-12);
}

TEST_CASE("word span dimension sees the full bond algebra when ergodic") {
  auto aklt = canonicalize(example_system("aklt"));
  CHECK(word_span_dimension(aklt.base.v, aklt.base.k) == 4);
  auto ghz = canonicalize(example_system("ghz_mixture"));
  CHECK(word_span_dimension(ghz.base.v, ghz.base.k) == 2);
  auto prod = canonicalize(example_system("product_pure"));
  CHECK(word_span_dimension(prod.base.v, prod.base.k) == 1);
}
