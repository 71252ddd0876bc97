#include "tbi/report.hpp"

#include <cstdlib>
#include <iomanip>
#include <sstream>

#include "tbi/curve.hpp"
#include "tbi/errors.hpp"

namespace tbi {

using nlohmann::json;

double resolve_tolerance(std::optional<double> flag, const InputDocument* doc) {
  if (flag) return *flag;
  if (doc && doc->tol) return *doc->tol;
  if (const char* env = std::getenv("TBI_TOL"); env && *env) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0))
      throw Error(ErrorKind::Parse, std::string("TBI_TOL is not a positive number: ") + env);
    return v;
  }
  return kDefaultTolerance;
}

ValidationResult validate_document(const InputDocument& doc, double tol) {
  ValidationResult out;
  const auto violations = validate_form(doc.A);
  if (!violations.empty()) {
    out.exit_code = static_cast<int>(ErrorKind::Form);
    for (const auto& v : violations) out.messages.push_back(v.describe());
    return out;
  }
  if (!doc.V || !doc.U) {
    out.exit_code = static_cast<int>(ErrorKind::Parse);
    out.messages.push_back("document lacks the complex structures 'V' and 'U'");
    return out;
  }
  for (const auto& [name, S] : {std::pair{"V", &*doc.V}, std::pair{"U", &*doc.U}}) {
    const StructureCheck c = validate_structure(*S, tol);
    if (!c.ok) {
      std::ostringstream os;
      os << name << " is degenerate: singular value ratio " << c.ratio() << " <= " << tol;
      out.exit_code = static_cast<int>(ErrorKind::Structure);
      out.messages.push_back(os.str());
    }
  }
  if (out.exit_code != 0) return out;

  const RiemannVerdict r = riemann_check(doc.A, *doc.V, *doc.U, tol);
  out.riemann = r;
  std::ostringstream os;
  os << "Riemann residual " << std::setprecision(17) << r.residual_norm << " (threshold "
     << r.threshold << ")";
  out.messages.push_back(os.str());
  if (r.ambiguous())
    out.exit_code = static_cast<int>(ErrorKind::Tolerance);
  else if (!r.member)
    out.exit_code = static_cast<int>(ErrorKind::Riemann);
  return out;
}

namespace {

void require_valid(const InputDocument& doc, double tol) {
  const ValidationResult v = validate_document(doc, tol);
  if (v.exit_code != 0) {
    std::string msg = v.messages.empty() ? "invalid input" : v.messages.front();
    throw Error(static_cast<ErrorKind>(v.exit_code), msg);
  }
}

json tensor_json(const ComplexTensor3& t) {
  json out = json::array();
  for (int k = 0; k < t.dim0(); ++k) {
    json slice = json::array();
    for (int i = 0; i < t.dim1(); ++i) {
      json row = json::array();
      for (int j = 0; j < t.dim2(); ++j)
        row.push_back(json::array({t(k, i, j).real(), t(k, i, j).imag()}));
      slice.push_back(std::move(row));
    }
    out.push_back(std::move(slice));
  }
  return out;
}

json rank_json(const NamedRank& r) {
  return {{"name", r.name},
          {"rank", r.decision.rank},
          {"threshold", r.decision.threshold},
          {"smallest_kept", r.decision.smallest_kept},
          {"largest_dropped", r.decision.largest_dropped}};
}

json group_checks(const ExtensionForm& A) {
  const int n = A.base_rank();
  bool commutators = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const GroupElement c = commutator(lift_basis(A, i), lift_basis(A, j), A);
      for (int k = 0; k < A.fibre_rank(); ++k)
        commutators = commutators && c.lambda[k] == A.at(k, i, j);
      for (auto g : c.gamma) commutators = commutators && g == 0;
    }
  int triples = 0;
  bool assoc = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        GroupElement a = lift_basis(A, i), b = lift_basis(A, j), c = lift_basis(A, k);
        a.lambda[0] = 1;
        b.gamma[k] -= 2;
        assoc = assoc && group_multiply(group_multiply(a, b, A), c, A) ==
                             group_multiply(a, group_multiply(b, c, A), A);
        ++triples;
      }
  return {{"basis_commutators_match_A", commutators},
          {"associativity_triples", triples},
          {"associative", assoc},
          {"ok", commutators && assoc}};
}

}  // namespace

json invariants_report(const InputDocument& doc, double tol) {
  require_valid(doc, tol);
  const BundleDatum D = to_bundle(doc);
  const DecomposedForm F = decompose(D.A, D.V, D.U, tol);
  const CohomologyReport rep = compute_report(F);
  const RiemannVerdict rv = riemann_verdict(F);

  json out;
  out["input_hash"] = content_hash(to_json(doc));
  out["tolerance"] = tol;
  out["m"] = doc.m;
  out["d"] = doc.d;
  out["riemann"] = {{"member", rv.member}, {"residual", rv.residual_norm}, {"threshold", rv.threshold}};
  out["decomposition"] = {{"bprime_norm", F.bprime.max_abs()},
                          {"bherm_norm", F.bherm.max_abs()},
                          {"forbidden_norm", F.forbidden.max_abs()},
                          {"scale", F.scale},
                          {"reconstruction_error", reconstruction_error(F, D.A, D.V, D.U)}};
  int euler = 0;
  for (std::size_t p = 0; p < rep.h_O.size(); ++p) euler += (p % 2 == 0 ? 1 : -1) * rep.h_O[p];
  out["cohomology"] = {{"h_O", rep.h_O},
                       {"h0_omega1", rep.h0_omega1},
                       {"closed_1forms", rep.closed_1forms},
                       {"h1_O", rep.h1_O},
                       {"parallelizable", rep.parallelizable},
                       {"h_theta", rep.h_theta},
                       {"ks_target_dim", rep.ks_target_dim},
                       {"ks_case", rep.ks_case ? json(to_string(*rep.ks_case)) : json(nullptr)},
                       {"euler_characteristic", euler}};
  out["spectral"] = {{"E2", rep.table.e2},
                     {"E3", rep.table.e3},
                     {"d2_squared_residual", rep.table.d2_squared_residual}};
  out["group_checks"] = group_checks(D.A);
  json ranks = json::array();
  for (const auto& r : rep.ranks) ranks.push_back(rank_json(r));
  out["diagnostics"] = {{"ranks", ranks}};
  out["warnings"] = rep.warnings;
  return out;
}

std::string invariants_table(const InputDocument& doc, double tol) {
  require_valid(doc, tol);
  const BundleDatum D = to_bundle(doc);
  const DecomposedForm F = decompose(D.A, D.V, D.U, tol);
  const CohomologyReport rep = compute_report(F);

  std::ostringstream os;
  auto list = [](const std::vector<int>& v) {
    std::ostringstream s;
    s << "[";
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
    s << "]";
    return s.str();
  };
  auto grid = [&](const char* title, const std::vector<std::vector<int>>& g) {
    os << title << " (rows j = " << rep.d << "..0, columns i = 0.." << rep.m << ")\n";
    for (int j = rep.d; j >= 0; --j) {
      os << "  j=" << j << " |";
      for (int i = 0; i <= rep.m; ++i) os << std::setw(5) << g[i][j];
      os << "\n";
    }
  };
  os << "m = " << rep.m << ", d = " << rep.d << ", tol = " << tol << "\n";
  os << "riemann residual      " << riemann_verdict(F).residual_norm << "\n";
  os << "|B'| = " << F.bprime.max_abs() << "  |B''| = " << F.bherm.max_abs() << "\n";
  grid("E2", rep.table.e2);
  grid("E3", rep.table.e3);
  os << "h^p(O_X)              " << list(rep.h_O) << "\n";
  os << "h^0(Omega^1_X)        " << rep.h0_omega1 << "\n";
  os << "closed 1-forms        " << rep.closed_1forms << "\n";
  os << "h^1(O_X)              " << rep.h1_O << "\n";
  os << "parallelizable        " << (rep.parallelizable ? "yes" : "no") << "\n";
  os << "h^i(Theta_X)          " << list(rep.h_theta) << "\n";
  os << "m^2 + m               " << rep.ks_target_dim << "\n";
  if (rep.ks_case) os << "case                  " << to_string(*rep.ks_case) << "\n";
  for (const auto& w : rep.warnings) os << "warning: " << w << "\n";
  return os.str();
}

json decomposition_report(const InputDocument& doc, double tol) {
  const auto violations = validate_form(doc.A);
  if (!violations.empty()) throw Error(ErrorKind::Form, violations.front().describe());
  const BundleDatum D = to_bundle(doc);
  const DecomposedForm F = decompose(D.A, D.V, D.U, tol);
  const RiemannVerdict rv = riemann_verdict(F);
  return {{"input_hash", content_hash(to_json(doc))},
          {"tolerance", tol},
          {"bprime", tensor_json(F.bprime)},
          {"bherm", tensor_json(F.bherm)},
          {"forbidden", tensor_json(F.forbidden)},
          {"norms",
           {{"bprime", F.bprime.max_abs()},
            {"bherm", F.bherm.max_abs()},
            {"forbidden", F.forbidden.max_abs()},
            {"scale", F.scale}}},
          {"reconstruction_error", reconstruction_error(F, D.A, D.V, D.U)},
          {"riemann", {{"member", rv.member}, {"residual", rv.residual_norm}, {"threshold", rv.threshold}}}};
}

GroupElement parse_group_element(const std::string& text, const ExtensionForm& A) {
  auto bad = [&](const std::string& why) -> Error {
    return Error(ErrorKind::Parse, "cannot parse group element '" + text + "': " + why);
  };
  auto parse_index = [&](const std::string& digits, int limit) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(digits, &used);
    } catch (const std::exception&) {
      throw bad("expected an index");
    }
    if (used != digits.size() || v < 1 || v > limit) throw bad("index out of range");
    return v - 1;
  };
  if (text.size() >= 2 && text[0] == 'e') return lift_basis(A, parse_index(text.substr(1), A.base_rank()));
  if (text.size() >= 2 && text[0] == 'f') {
    GroupElement g = identity_element(A);
    g.lambda[parse_index(text.substr(1), A.fibre_rank())] = 1;
    return g;
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw bad("expected eN, fN or lambda:gamma");
  auto parse_list = [&](const std::string& s) {
    IntVector out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      try {
        out.push_back(std::stoll(item, &used));
      } catch (const std::exception&) {
        throw bad("non-integer coordinate '" + item + "'");
      }
      if (used != item.size()) throw bad("non-integer coordinate '" + item + "'");
    }
    return out;
  };
  GroupElement g{parse_list(text.substr(0, colon)), parse_list(text.substr(colon + 1))};
  if (static_cast<int>(g.lambda.size()) != A.fibre_rank() ||
      static_cast<int>(g.gamma.size()) != A.base_rank())
    throw bad("coordinate count does not match the ranks of A");
  return g;
}

json group_element_json(const GroupElement& g) {
  return {{"lambda", g.lambda}, {"gamma", g.gamma}};
}

json group_report(const ExtensionForm& A, const GroupElement& g1, const GroupElement& g2) {
  return {{"g1", group_element_json(g1)},
          {"g2", group_element_json(g2)},
          {"product", group_element_json(group_multiply(g1, g2, A))},
          {"inverse_g1", group_element_json(group_inverse(g1, A))},
          {"inverse_g2", group_element_json(group_inverse(g2, A))},
          {"commutator", group_element_json(commutator(g1, g2, A))},
          {"A_gamma1_gamma2", A.apply(g1.gamma, g2.gamma)}};
}

json curve_report(int genus, int fibre_dim, const std::optional<IntVector>& chern) {
  json out{{"genus", genus}, {"fibre_dim", fibre_dim}, {"kuranishi_dim", kuranishi_dim(genus, fibre_dim)}};
  if (chern) {
    if (static_cast<int>(chern->size()) != 2 * fibre_dim)
      throw Error(ErrorKind::Parse, "chern vector must have length 2d");
    out["chern_vector"] = *chern;
    out["divisibility_index"] = divisibility_index(*chern);
  }
  return out;
}

}  // namespace tbi
