#include "fcs/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace fcs {

namespace {

json cplx(cdouble z) { return json::array({z.real(), z.imag()}); }

std::string fmt_double(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void dump_rec(const json& j, std::string& out, int depth) {
  const std::string pad(2 * depth, ' ');
  const std::string pad_in(2 * (depth + 1), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + json(it.key()).dump() + ": ";
        dump_rec(it.value(), out, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_rec(el, out, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float:
      out += fmt_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

void text_rec(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
      text_rec(it.value(), key, out);
    }
  } else if (j.is_array()) {
    bool flat = true;
    for (const auto& el : j)
      if (el.is_object() || (el.is_array() && el.size() > 2)) flat = false;
    if (flat) {
      std::string line;
      dump_rec(j, line, 0);
      for (auto& c : line)
        if (c == '\n') c = ' ';
      out += prefix + ": " + line + "\n";
    } else {
      int i = 0;
      for (const auto& el : j)
        text_rec(el, prefix + "[" + std::to_string(i++) + "]", out);
    }
  } else if (j.is_number_float()) {
    out += prefix + ": " + fmt_double(j.get<double>()) + "\n";
  } else {
    out += prefix + ": " + j.dump() + "\n";
  }
}

[[noreturn]] void parse_fail(const std::string& path,
                             const std::string& what) {
  throw ParseError(path + ": " + what);
}

double num_at(const json& j, const std::string& path) {
  if (!j.is_number()) parse_fail(path, "expected a number");
  return j.get<double>();
}

}  // namespace

PopescuSystem parse_system_json(const json& j, double tol_cuntz) {
  if (!j.is_object()) parse_fail("$", "expected a JSON object");
  for (const char* field : {"d", "bond_dim", "matrices"})
    if (!j.contains(field))
      parse_fail(std::string("$.") + field, "missing required field");
  if (!j["d"].is_number_integer()) parse_fail("$.d", "expected an integer");
  if (!j["bond_dim"].is_number_integer())
    parse_fail("$.bond_dim", "expected an integer");

  PopescuSystem sys;
  sys.d = j["d"].get<int>();
  sys.k = j["bond_dim"].get<int>();
  sys.tol = tol_cuntz;

  const json& mats = j["matrices"];
  if (!mats.is_array() || static_cast<int>(mats.size()) != sys.d)
    parse_fail("$.matrices", "expected an array of d matrices");
  for (int a = 0; a < sys.d; ++a) {
    std::string mp = "$.matrices[" + std::to_string(a) + "]";
    const json& m = mats[a];
    if (!m.is_array() || static_cast<int>(m.size()) != sys.k)
      parse_fail(mp, "expected bond_dim rows");
    Matrix v(sys.k, sys.k);
    for (int r = 0; r < sys.k; ++r) {
      std::string rp = mp + "[" + std::to_string(r) + "]";
      if (!m[r].is_array() || static_cast<int>(m[r].size()) != sys.k)
        parse_fail(rp, "expected bond_dim entries");
      for (int c = 0; c < sys.k; ++c) {
        std::string ep = rp + "[" + std::to_string(c) + "]";
        const json& e = m[r][c];
        if (!e.is_array() || e.size() != 2)
          parse_fail(ep, "expected a [re, im] pair");
        v(r, c) = cdouble(num_at(e[0], ep + "[0]"), num_at(e[1], ep + "[1]"));
      }
    }
    sys.v.push_back(v);
  }
  return validate(std::move(sys));
}

PopescuSystem parse_system_file(const std::string& path, double tol_cuntz) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_system_json(j, tol_cuntz);
}

json system_to_json(const std::string& name, const PopescuSystem& sys) {
  json j;
  j["name"] = name;
  j["d"] = sys.d;
  j["bond_dim"] = sys.k;
  json mats = json::array();
  for (const auto& v : sys.v) {
    json m = json::array();
    for (int r = 0; r < sys.k; ++r) {
      json row = json::array();
      for (int c = 0; c < sys.k; ++c) row.push_back(cplx(v(r, c)));
      m.push_back(row);
    }
    mats.push_back(m);
  }
  j["matrices"] = mats;
  return j;
}

Matrix single_site_operator(const std::string& name, int d) {
  if (name == "Id") return Matrix::Identity(d, d);
  if (name.size() == 2 && name[0] == 'S') {
    double jspin = (d - 1) / 2.0;
    Matrix sz = Matrix::Zero(d, d), sp = Matrix::Zero(d, d);
    for (int a = 0; a < d; ++a) {
      double m = jspin - a;
      sz(a, a) = m;
      if (a >= 1)
        sp(a - 1, a) = std::sqrt(jspin * (jspin + 1) - m * (m + 1));
    }
    Matrix sm = sp.adjoint();
    if (name[1] == 'z') return sz;
    if (name[1] == 'x') return (sp + sm) / 2.0;
    if (name[1] == 'y') return (sp - sm) / cdouble(0.0, 2.0);
  }
  if (name.rfind("e(", 0) == 0 && name.back() == ')') {
    std::string inner = name.substr(2, name.size() - 3);
    auto comma = inner.find(',');
    if (comma == std::string::npos)
      throw ParseError("matrix unit needs two indices: " + name);
    int i = 0, jj = 0;
    try {
      i = std::stoi(inner.substr(0, comma));
      jj = std::stoi(inner.substr(comma + 1));
    } catch (const std::exception&) {
      throw ParseError("bad matrix unit indices: " + name);
    }
    if (i < 1 || i > d || jj < 1 || jj > d)
      throw ParseError("matrix unit index out of range: " + name);
    Matrix e = Matrix::Zero(d, d);
    e(i - 1, jj - 1) = 1.0;
    return e;
  }
  throw ParseError("unknown operator: " + name);
}

WindowObservable parse_observable(const std::string& text, int d) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  if (compact.empty()) throw ParseError("empty observable");

  std::vector<std::string> factors;
  std::string cur;
  int paren = 0;
  for (char c : compact) {
    if (c == '(') ++paren;
    if (c == ')') --paren;
    if (c == '*' && paren == 0) {
      factors.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  factors.push_back(cur);

  double scalar = 1.0;
  std::map<int, Matrix> sites;
  for (const auto& f : factors) {
    if (f.empty()) throw ParseError("empty factor in observable");
    auto at = f.rfind('@');
    if (at == std::string::npos) {
      char* end = nullptr;
      double v = std::strtod(f.c_str(), &end);
      if (end != f.c_str() + f.size())
        throw ParseError("expected a number or op@site: " + f);
      scalar *= v;
      continue;
    }
    int site = 0;
    try {
      site = std::stoi(f.substr(at + 1));
    } catch (const std::exception&) {
      throw ParseError("bad site index: " + f);
    }
    Matrix op = single_site_operator(f.substr(0, at), d);
    auto it = sites.find(site);
    if (it == sites.end())
      sites[site] = op;
    else
      it->second = it->second * op;
  }

  WindowObservable q;
  q.d = d;
  if (sites.empty()) {
    q.first_site = 1;
    q.n_sites = 1;
    q.coeffs = scalar * Matrix::Identity(d, d);
    return q;
  }
  int lo = sites.begin()->first, hi = sites.rbegin()->first;
  q.first_site = lo;
  q.n_sites = hi - lo + 1;
  checked_power(d, q.n_sites, kWindowSizeCap);
  Matrix acc = Matrix::Identity(1, 1);
  for (int s = lo; s <= hi; ++s) {
    auto it = sites.find(s);
    acc = kron(acc, it == sites.end() ? Matrix::Identity(d, d) : it->second);
  }
  q.coeffs = scalar * acc;
  return q;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string dump_deterministic(const json& j) {
  std::string out;
  dump_rec(j, out, 0);
  out += "\n";
  return out;
}

std::string dump_text(const json& j) {
  std::string out;
  text_rec(j, "", out);
  return out;
}

json spectral_to_json(const SpectralReport& rep) {
  json j;
  json eigs = json::array();
  for (cdouble ev : rep.eigenvalues) eigs.push_back(cplx(ev));
  j["eigenvalues"] = eigs;
  json per = json::array();
  for (cdouble ev : rep.peripheral) per.push_back(cplx(ev));
  j["peripheral"] = per;
  j["alpha"] = rep.alpha;
  j["fixed_dim"] = rep.fixed_dim;
  j["gauge_period"] =
      rep.gauge_period ? json(*rep.gauge_period) : json(nullptr);
  return j;
}

json report_to_json(const CertificateReport& rep, const CertifyOptions& opts,
                    const std::string& input_hash) {
  json j;
  j["schema_version"] = 1;
  j["tool_version"] = "1.0.0";
  j["input_hash"] = input_hash;

  json params;
  params["tol_cuntz"] = opts.tol.cuntz;
  params["tol_spectral"] = opts.tol.spectral;
  params["tol_compare"] = opts.tol.compare;
  params["symmetry_n_max"] = opts.symmetry_n_max;
  params["kolmogorov_n_max"] = opts.kolmogorov_n_max;
  params["split_window_max"] = opts.split_window_max;
  params["split_gap_max"] = opts.split_gap_max;
  params["reflection_n"] = opts.reflection_n;
  params["gauge_word_len_max"] = opts.gauge_word_len_max;
  params["delta_margin"] = opts.delta_margin;
  params["decay_gap_max"] = opts.decay_gap_max;
  j["parameters"] = params;

  json cert;
  cert["ergodic"] = rep.ergodic;
  cert["fixed_dim"] = rep.fixed_dim;
  cert["algebra_dim"] = rep.algebra_dim;
  cert["pure"] =
      rep.purity.verdict == PurityVerdict::kPure ? "PURE" : "NOT_PURE";
  cert["purity_reason"] = rep.purity.reason;
  cert["purity_iterates"] = rep.purity.iterates;
  cert["gauge_g"] = rep.gauge_g ? json(*rep.gauge_g) : json("INFINITE");
  cert["real"] = rep.real;
  cert["lattice_symmetric"] = rep.lattice_symmetric;

  json db;
  db["holds"] = rep.detailed_balance.holds;
  db["kms_symmetric"] = rep.detailed_balance.kms_symmetric;
  db["kms_defect"] = rep.detailed_balance.kms_defect;
  db["detectors_agree"] = rep.detailed_balance.detectors_agree;
  cert["detailed_balance"] = db;

  json refl;
  refl["psd"] = rep.reflection.psd;
  refl["min_eig"] = rep.reflection.min_eig;
  refl["hermiticity_defect"] = rep.reflection.hermiticity_defect;
  refl["modular_gauge"] = rep.reflection.modular_gauge;
  cert["reflection_positive"] = refl;

  json haag;
  haag["holds"] = rep.haag.holds;
  haag["span_dim"] = rep.haag.span_dim;
  cert["haag_bond"] = haag;

  json dt;
  dt["delta_is_identity"] = rep.delta_triviality.delta_is_identity;
  dt["all_v_selfadjoint"] = rep.delta_triviality.all_v_selfadjoint;
  dt["selfadjoint_gauge"] = rep.delta_triviality.selfadjoint_gauge;
  cert["delta_triviality"] = dt;

  cert["alpha"] = rep.alpha;
  cert["gauge_period"] =
      rep.gauge_period ? json(*rep.gauge_period) : json(nullptr);
  cert["dual_condition_number"] = rep.dual_condition_number;
  cert["dual_residual"] = rep.dual_residual;

  if (rep.decay) {
    json dec;
    dec["alpha"] = rep.decay->alpha;
    dec["delta_star"] = rep.decay->delta_star;
    dec["samples"] = rep.decay->samples;
    dec["samples_bounded"] = rep.decay->samples_bounded;
    cert["decay"] = dec;
  } else {
    cert["decay"] = nullptr;
  }

  json split;
  switch (rep.split.verdict) {
    case SplitVerdict::kCertified:
      split["verdict"] = "CERTIFIED";
      break;
    case SplitVerdict::kNotApplicable:
      split["verdict"] = "NOT_APPLICABLE";
      break;
    case SplitVerdict::kFailed:
      split["verdict"] = "FAILED";
      break;
  }
  split["reason"] = rep.split.reason;
  json rows = json::array();
  for (const auto& row : rep.split.rows) {
    json r;
    r["n"] = row.n;
    r["gap"] = row.gap;
    r["measured"] = row.measured;
    r["bound"] = row.bound;
    rows.push_back(r);
  }
  split["rows"] = rows;
  cert["split"] = split;

  j["certificate"] = cert;

  json eigs = json::array();
  for (cdouble ev : rep.transfer_eigenvalues) eigs.push_back(cplx(ev));
  j["transfer_eigenvalues"] = eigs;
  return j;
}

}  // namespace fcs
