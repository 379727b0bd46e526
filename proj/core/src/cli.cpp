#include "fcs/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fcs/catalog.hpp"
#include "fcs/io.hpp"

namespace fcs {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCertFailed = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const json& j, const std::string& format,
          const std::string& out_path, std::ostream& out) {
  std::string text = format == "text" ? dump_text(j) : dump_deterministic(j);
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw IoError("cannot write " + out_path);
    f << text;
  }
}

json symmetry_to_json(const CanonicalSystem& csys, int word_len_max,
                      const Tolerances& tol) {
  json j;
  j["ergodic"] = csys.ergodic;
  j["fixed_dim"] = csys.fixed_dim;
  j["algebra_dim"] = csys.algebra_dim;
  auto g = gauge_group_detect(csys, word_len_max, tol.compare);
  j["gauge_g"] = g ? json(*g) : json("INFINITE");
  j["real"] = is_real(csys, 4, tol.compare);
  j["lattice_symmetric"] = is_lattice_symmetric(csys, 4, tol.compare);
  auto mod = modular_data(csys);
  auto dual = dual_system(csys, mod);
  auto haag = haag_duality_bond_check(dual, csys.base.k);
  j["haag_bond"] = json{{"holds", haag.holds}, {"span_dim", haag.span_dim}};
  j["dual_residual"] = dual_normalization_residual(csys, dual);
  j["dual_condition_number"] = dual.condition_number;
  return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Spin-chain state construction and certification"};
  app.name("fcs");
  app.require_subcommand(1);

  Tolerances tol;
  app.add_option("--tol-cuntz", tol.cuntz, "validation tolerance")
      ->envname("TOL_CUNTZ");
  app.add_option("--tol-spectral", tol.spectral,
                 "eigenvalue clustering tolerance")
      ->envname("TOL_SPECTRAL");
  app.add_option("--tol-compare", tol.compare, "comparison tolerance")
      ->envname("TOL_COMPARE");
  app.fallthrough();

  std::string file, out_path, format = "json", obs_spec, obs2_spec, name;
  int word_len_max = 4, gap_max = 6, window = 2;
  unsigned seed = 0;

  auto* validate_cmd = app.add_subcommand("validate", "check a system file");
  validate_cmd->add_option("file", file)->required();

  auto* analyze = app.add_subcommand("analyze", "spectral and symmetry report");
  analyze->add_option("file", file)->required();
  analyze->add_option("--max-word-len", word_len_max);
  analyze->add_option("--out", out_path);
  analyze->add_option("--format", format)
      ->check(CLI::IsMember({"json", "text"}));

  auto* corr = app.add_subcommand("correlations", "two-point table");
  corr->add_option("file", file)->required();
  corr->add_option("--obs", obs_spec)->required();
  corr->add_option("--obs2", obs2_spec);
  corr->add_option("--gap-max", gap_max);
  corr->add_option("--out", out_path);
  corr->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  auto* certify = app.add_subcommand("certify", "full certificate report");
  certify->add_option("file", file)->required();
  certify->add_option("--window", window);
  certify->add_option("--gap-max", gap_max);
  certify->add_option("--out", out_path);
  certify->add_option("--format", format)
      ->check(CLI::IsMember({"json", "text"}));

  auto* examples = app.add_subcommand("examples", "emit a catalog system");
  examples->add_option("--name", name);
  examples->add_option("--seed", seed);
  examples->add_option("--out", out_path);

  auto* norm = app.add_subcommand("norm", "window operator norm");
  norm->add_option("file", file)->required();
  norm->add_option("--obs", obs_spec)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate_cmd) {
      PopescuSystem sys = parse_system_file(file, tol.cuntz);
      out << "valid d=" << sys.d << " bond_dim=" << sys.k
          << " residual=" << cuntz_residual(sys) << "\n";
      return kExitOk;
    }

    if (*examples) {
      if (name.empty()) {
        for (const auto& n : example_names()) out << n << "\n";
        return kExitOk;
      }
      PopescuSystem sys = example_system(name, seed);
      emit(system_to_json(name, sys), "json", out_path, out);
      return kExitOk;
    }

    PopescuSystem sys = parse_system_file(file, tol.cuntz);
    CanonicalSystem csys = canonicalize(sys, tol.spectral);

    if (*analyze) {
      json j;
      j["schema_version"] = 1;
      j["tool_version"] = "1.0.0";
      j["input_hash"] = fnv1a_hex(read_file(file));
      j["spectral"] = spectral_to_json(
          spectral_report(build_transfer(csys), tol.spectral));
      j["symmetry"] = symmetry_to_json(csys, word_len_max, tol);
      emit(j, format, out_path, out);
      return kExitOk;
    }

    if (*corr) {
      WindowObservable q1 = parse_observable(obs_spec, csys.base.d);
      WindowObservable q2 =
          parse_observable(obs2_spec.empty() ? obs_spec : obs2_spec,
                           csys.base.d);
      cdouble e1 = expectation(csys, q1), e2 = expectation(csys, q2);
      json j;
      j["obs"] = obs_spec;
      j["obs2"] = obs2_spec.empty() ? obs_spec : obs2_spec;
      j["mean1"] = json::array({e1.real(), e1.imag()});
      j["mean2"] = json::array({e2.real(), e2.imag()});
      json rows = json::array();
      for (int g = 0; g <= gap_max; ++g) {
        cdouble v = two_point(csys, q1, q2, g);
        cdouble c = v - e1 * e2;
        json row;
        row["gap"] = g;
        row["value"] = json::array({v.real(), v.imag()});
        row["connected"] = json::array({c.real(), c.imag()});
        rows.push_back(row);
      }
      j["rows"] = rows;
      emit(j, format, out_path, out);
      return kExitOk;
    }

    if (*certify) {
      CertifyOptions opts;
      opts.tol = tol;
      opts.split_window_max = window;
      opts.split_gap_max = gap_max;
      CertificateReport rep = full_report(csys, opts);
      emit(report_to_json(rep, opts, fnv1a_hex(read_file(file))), format,
           out_path, out);
      return rep.split.verdict == SplitVerdict::kFailed ? kExitCertFailed
                                                        : kExitOk;
    }

    if (*norm) {
      WindowObservable q = parse_observable(obs_spec, csys.base.d);
      out << window_operator_norm(q) << "\n";
      return kExitOk;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const CuntzRelationViolated& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const UnknownExample& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ShapeMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const SizeCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace fcs
