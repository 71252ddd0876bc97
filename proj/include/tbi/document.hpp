#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "tbi/decomposition.hpp"

namespace tbi {

/// On-disk input: UTF-8 JSON, complex numbers as [re, im] pairs.
///
///   {"m": 2, "d": 1,
///    "A": [[[...2m...] x 2m] x 2d],
///    "V": [[[re, im] x m] x 2m], "U": [[[re, im] x d] x 2d],
///    "phi": [[[re, im] x 2m] x d], "tol": 1e-9, "seed": 7}
///
/// V, U, phi, tol and seed are optional at parse time; consumers that need
/// a full bundle call to_bundle.
struct InputDocument {
  int m = 0;
  int d = 0;
  ExtensionForm A;
  std::optional<ComplexStructure> V;
  std::optional<ComplexStructure> U;
  std::optional<MatrixXcd> phi;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
};

bool operator==(const InputDocument& a, const InputDocument& b);

/// Throws Error(Parse) with line/column context on malformed input.
InputDocument parse_document(const std::string& text);
InputDocument load_document(const std::string& path);

nlohmann::json to_json(const InputDocument& doc);
InputDocument make_document(const BundleDatum& D);

/// Throws Parse when V or U is missing.
BundleDatum to_bundle(const InputDocument& doc);

nlohmann::json complex_matrix_json(const MatrixXcd& m);
MatrixXcd complex_matrix_from_json(const nlohmann::json& j, const std::string& field);

/// Deterministic pretty printer: sorted keys, two-space indent, scalar-only
/// arrays on one line, floats with 17 significant digits.
std::string dump_json(const nlohmann::json& j);

/// 64-bit FNV-1a of the canonical serialisation, as 16 hex digits.
std::string content_hash(const nlohmann::json& j);

}  // namespace tbi
