#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fcs/catalog.hpp"
#include "fcs/cli.hpp"
#include "fcs/io.hpp"

using namespace fcs;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Writes a catalog system to a temp file and returns the path.
std::string write_example(const std::string& name) {
  std::string path = "cli_test_" + name + ".json";
  std::ofstream f(path);
  f << dump_deterministic(system_to_json(name, example_system(name, 7)));
  f << "\n";
  return path;
}

}  // namespace

TEST_CASE("usage errors exit with code 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"--bogus-flag"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
}

TEST_CASE("validate reports the system summary") {
  auto path = write_example("aklt");
  auto r = run({"validate", path});
  CHECK(r.code == 0);
  CHECK(r.out.find("valid d=3 bond_dim=2") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("missing and malformed inputs exit with code 2") {
  CHECK(run({"validate", "no_such_file.json"}).code == 2);

  std::string path = "cli_test_broken.json";
  {
    std::ofstream f(path);
    f << "{\"name\": \"x\", \"d\": 2}";
  }
  CHECK(run({"validate", path}).code == 2);
  {
    std::ofstream f(path);
    f << "not json at all";
  }
  CHECK(run({"validate", path}).code == 2);
  std::remove(path.c_str());

  CHECK(run({"examples", "--name", "unheard_of"}).code == 2);
}

TEST_CASE("examples subcommand emits parseable systems") {
  for (const auto& name : example_names()) {
    auto r = run({"examples", "--name", name});
    CHECK(r.code == 0);
    auto sys = parse_system_json(json::parse(r.out));
    CHECK(sys.d >= 2);
  }
  auto r = run({"examples"});
  CHECK(r.code == 0);
  CHECK(r.out.find("aklt") != std::string::npos);
}

TEST_CASE("certify output is byte identical across runs") {
  for (const auto& name : example_names()) {
    CAPTURE(name);
    auto path = write_example(name);
    auto first = run({"certify", path});
    auto second = run({"certify", path});
    CHECK(first.code == second.code);
    CHECK(first.out == second.out);
    CHECK_FALSE(first.out.empty());
    std::remove(path.c_str());
  }
}

TEST_CASE("certify embeds the input hash") {
  auto path = write_example("product_pure");
  std::string bytes;
  {
    std::ifstream f(path);
    std::ostringstream ss;
    ss << f.rdbuf();
    bytes = ss.str();
  }
  auto r = run({"certify", path});
  CHECK(r.code == 0);
  CHECK(r.out.find(fnv1a_hex(bytes)) != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("analyze prints the transfer spectrum") {
  auto path = write_example("neel_flip");
  auto r = run({"analyze", path});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  REQUIRE(j.contains("spectral"));
  CHECK(j["spectral"]["alpha"].get<double>() == doctest::Approx(1.0));
  CHECK(j["spectral"]["eigenvalues"].size() == 4);
  CHECK(j["symmetry"]["gauge_g"].get<int>() == 2);
  std::remove(path.c_str());
}

TEST_CASE("correlations evaluates the observable grammar") {
  auto path = write_example("neel_flip");
  auto r = run({"correlations", path, "--obs", "2*Sz@0", "--obs2", "2*Sz@1",
                "--gap-max", "4"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  REQUIRE(j.contains("rows"));
  REQUIRE(j["rows"].size() == 5);
  // Antiferromagnetic order: values alternate in sign with the gap.
  CHECK(j["rows"][0]["value"][0].get<double>() == doctest::Approx(-1.0));
  CHECK(j["rows"][1]["value"][0].get<double>() == doctest::Approx(1.0));
  CHECK(j["rows"][4]["value"][0].get<double>() == doctest::Approx(-1.0));
  std::remove(path.c_str());
}

TEST_CASE("norm evaluates the observable in operator norm") {
  auto path = write_example("neel_flip");
  auto r = run({"norm", path, "--obs", "Sz@0 * Sz@1"});
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(0.25));
  std::remove(path.c_str());
}
