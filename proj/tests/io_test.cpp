#include <doctest.h>

#include <cmath>

#include "fcs/catalog.hpp"
#include "fcs/io.hpp"

using namespace fcs;

TEST_CASE("system json round trip is lossless") {
  for (const auto& name : example_names()) {
    CAPTURE(name);
    auto sys = example_system(name, 7);
    json j = system_to_json(name, sys);
    auto back = parse_system_json(j);
    REQUIRE(back.d == sys.d);
    REQUIRE(back.k == sys.k);
    for (int m = 0; m < sys.d; ++m)
      CHECK(operator_norm(back.v[m] - sys.v[m]) <= 1e-12);
    // Emitting again gives the identical byte stream.
    CHECK(dump_deterministic(system_to_json(name, back)) ==
          dump_deterministic(j));
  }
}

TEST_CASE("parse errors carry field paths") {
  json j;
  j["name"] = "x";
  j["d"] = 2;
  j["bond_dim"] = 2;
  CHECK_THROWS_WITH_AS(parse_system_json(j), doctest::Contains("matrices"),
                       ParseError);

  j["matrices"] = json::array();
  CHECK_THROWS_AS(parse_system_json(j), ParseError);

  auto good = system_to_json("ok", example_system("neel_flip"));
  good["matrices"][0][0][1] = json::array({0.3});  // not an [re, im] pair
  CHECK_THROWS_WITH_AS(parse_system_json(good),
                       doctest::Contains("matrices[0]"), ParseError);

  // Structurally valid but not a Popescu family.
  auto bad = system_to_json("bad", example_system("neel_flip"));
  bad["matrices"][0][0][0] = json::array({5.0, 0.0});
  CHECK_THROWS_AS(parse_system_json(bad), CuntzRelationViolated);
}

TEST_CASE("observable grammar") {
  // Pauli z at one site, spin-1/2 convention.
  auto q = parse_observable("Sz@0", 2);
  CHECK(q.n_sites == 1);
  CHECK(q.first_site == 0);
  CHECK(std::abs(q.coeffs(0, 0) - cdouble(0.5, 0)) <= 1e-15);
  CHECK(std::abs(q.coeffs(1, 1) - cdouble(-0.5, 0)) <= 1e-15);

  // Scalar prefactor and a two-site product spanning a gap site.
  auto q2 = parse_observable("2.0 * Sx@1 * Sx@3", 2);
  CHECK(q2.first_site == 1);
  CHECK(q2.n_sites == 3);
  Matrix sx = single_site_operator("Sx", 2);
  Matrix expect =
      2.0 * kron(kron(sx, Matrix::Identity(2, 2)), sx);
  CHECK(operator_norm(q2.coeffs - expect) <= 1e-14);

  // Factors at the same site multiply in order.
  auto q3 = parse_observable("e(1,2)@0 * e(2,1)@0", 2);
  CHECK(q3.n_sites == 1);
  Matrix e11 = Matrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  CHECK(operator_norm(q3.coeffs - e11) <= 1e-14);

  CHECK_THROWS_AS(parse_observable("Sq@0", 2), ParseError);
  CHECK_THROWS_AS(parse_observable("Sz@", 2), ParseError);
  CHECK_THROWS_AS(parse_observable("e(0,1)@0", 2), ParseError);
  CHECK_THROWS_AS(parse_observable("", 2), ParseError);
}

TEST_CASE("single site operators satisfy spin commutation relations") {
  for (int d : {2, 3, 4}) {
    CAPTURE(d);
    Matrix sx = single_site_operator("Sx", d);
    Matrix sy = single_site_operator("Sy", d);
    Matrix sz = single_site_operator("Sz", d);
    Matrix comm = sx * sy - sy * sx;
    CHECK(operator_norm(comm - cdouble(0, 1) * sz) <= 1e-12);
    double s = (d - 1) / 2.0;
    Matrix casimir = sx * sx + sy * sy + sz * sz;
    CHECK(operator_norm(casimir -
                        s * (s + 1) * Matrix::Identity(d, d)) <= 1e-12);
  }
}

TEST_CASE("deterministic rendering") {
  json j;
  j["b_second"] = 1.0 / 3.0;
  j["a_first"] = -0.0;
  j["nested"] = json::array({cdouble(0, 0).real(), 2.5e-13});
  std::string s = dump_deterministic(j);
  // Insertion order wins, negative zero is normalized, 12 significant digits.
  CHECK(s.find("b_second") < s.find("a_first"));
  CHECK(s.find("-0") == std::string::npos);
  CHECK(s.find("0.333333333333") != std::string::npos);
  CHECK(dump_deterministic(j) == s);
}

TEST_CASE("fnv1a reference values") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}
