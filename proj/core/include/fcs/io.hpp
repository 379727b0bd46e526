#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "fcs/certify.hpp"
#include "fcs/state_eval.hpp"

namespace fcs {

using json = nlohmann::ordered_json;

/// Parses the system interchange format:
/// {"name": str, "d": int, "bond_dim": int,
///  "matrices": [[[ [re,im], ... ]]], "metadata": object?}
/// Throws ParseError with a field path, or CuntzRelationViolated.
PopescuSystem parse_system_json(const json& j, double tol_cuntz = 1e-9);
PopescuSystem parse_system_file(const std::string& path,
                                double tol_cuntz = 1e-9);

json system_to_json(const std::string& name, const PopescuSystem& sys);

/// Single-site operator names: Sz, Sx, Sy (spin (d-1)/2 matrices), Id,
/// e(i,j) with 1-based indices. Terms: `0.5 * Sz@0 * Sx@1`; factors at the
/// same site multiply; unmentioned sites in the spanned window are identity.
WindowObservable parse_observable(const std::string& text, int d);

/// Named single-site matrix for alphabet size d.
Matrix single_site_operator(const std::string& name, int d);

/// FNV-1a 64-bit hash, hex encoded.
std::string fnv1a_hex(const std::string& bytes);

/// Deterministic JSON rendering: doubles at 12 significant digits, two-space
/// indentation, fixed key order (the ordered_json insertion order).
std::string dump_deterministic(const json& j);

/// Flat "key: value" rendering of the same tree for terminals.
std::string dump_text(const json& j);

json report_to_json(const CertificateReport& rep, const CertifyOptions& opts,
                    const std::string& input_hash);

json spectral_to_json(const SpectralReport& rep);

}  // namespace fcs
