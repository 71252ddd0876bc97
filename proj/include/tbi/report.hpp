#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tbi/cohomology.hpp"
#include "tbi/document.hpp"

namespace tbi {

/// Tolerance precedence: explicit flag, then the document's "tol", then the
/// TBI_TOL environment variable, then kDefaultTolerance.
double resolve_tolerance(std::optional<double> flag, const InputDocument* doc);

struct ValidationResult {
  int exit_code = 0;  ///< 0 ok, 1 parse, 2 form, 3 structure, 4 Riemann, 5 ambiguous
  std::vector<std::string> messages;
  std::optional<RiemannVerdict> riemann;
};

/// Structural invariants plus the Riemann relation, in that order.
ValidationResult validate_document(const InputDocument& doc, double tol);

/// Full invariant report. Throws Error for invalid input.
nlohmann::json invariants_report(const InputDocument& doc, double tol);

/// Human-readable variant with the E2/E3 grids.
std::string invariants_table(const InputDocument& doc, double tol);

/// Complex components of A with their norms.
nlohmann::json decomposition_report(const InputDocument& doc, double tol);

/// Accepts "e3" (lift of the third basis vector of Gamma), "f1" (the first
/// basis vector of Lambda) or "l1,l2:g1,g2,g3,g4" with explicit coordinates.
/// Indices are 1-based.
GroupElement parse_group_element(const std::string& text, const ExtensionForm& A);

nlohmann::json group_report(const ExtensionForm& A, const GroupElement& g1,
                            const GroupElement& g2);

nlohmann::json curve_report(int genus, int fibre_dim, const std::optional<IntVector>& chern);

nlohmann::json group_element_json(const GroupElement& g);

}  // namespace tbi
