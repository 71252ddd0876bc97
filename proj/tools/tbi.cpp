// tbi: invariants of principal torus bundles over complex tori.
//
// Exit codes: 0 ok, 1 parse/usage, 2 form not alternating, 3 degenerate
// structure, 4 Riemann relation fails, 5 verdict within tolerance noise,
// 6 argument outside a formula's domain, 7 sampling exhausted.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tbi/catalog.hpp"
#include "tbi/errors.hpp"
#include "tbi/report.hpp"
#include "tbi/riemann_variety.hpp"

namespace {

using nlohmann::json;
using namespace tbi;

IntVector parse_int_list(const std::string& text) {
  IntVector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stoll(item, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw Error(ErrorKind::Parse, "not an integer list: '" + text + "'");
  }
  return out;
}

int run_validate(const std::string& path, std::optional<double> tol_flag) {
  const InputDocument doc = load_document(path);
  const double tol = resolve_tolerance(tol_flag, &doc);
  const ValidationResult v = validate_document(doc, tol);
  for (const auto& msg : v.messages) (v.exit_code ? std::cerr : std::cout) << msg << "\n";
  if (v.exit_code == 0) std::cout << "ok\n";
  return v.exit_code;
}

int run_invariants(const std::string& path, std::optional<double> tol_flag,
                   const std::string& format) {
  const InputDocument doc = load_document(path);
  const double tol = resolve_tolerance(tol_flag, &doc);
  if (format == "table")
    std::cout << invariants_table(doc, tol);
  else
    std::cout << dump_json(invariants_report(doc, tol));
  return 0;
}

int run_decompose(const std::string& path, std::optional<double> tol_flag) {
  const InputDocument doc = load_document(path);
  std::cout << dump_json(decomposition_report(doc, resolve_tolerance(tol_flag, &doc)));
  return 0;
}

int run_sample(const std::string& path, std::optional<std::uint64_t> seed_flag, int count,
               int max_attempts, const std::string& out_dir, std::optional<double> tol_flag) {
  const InputDocument doc = load_document(path);
  const auto violations = validate_form(doc.A);
  if (!violations.empty()) throw Error(ErrorKind::Form, violations.front().describe());
  const double tol = resolve_tolerance(tol_flag, &doc);
  const std::uint64_t seed = seed_flag ? *seed_flag : doc.seed.value_or(0);

  const auto outcomes = sample_points(doc.A, seed, count, max_attempts, tol);
  json samples = json::array();
  json trials = json::array();
  int failures = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const SampleOutcome& o = outcomes[i];
    trials.push_back({{"trial", i},
                      {"success", o.success},
                      {"attempts", o.attempts},
                      {"best_residual", o.best_residual}});
    if (!o.success) {
      ++failures;
      continue;
    }
    InputDocument point = doc;
    point.V = o.V;
    point.U = o.U;
    point.tol = tol;
    point.seed = mix_seed(seed, 0x5A5A0000ULL + i);
    json pj = to_json(point);
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      char name[32];
      std::snprintf(name, sizeof name, "sample_%03zu.json", i);
      std::ofstream f(std::filesystem::path(out_dir) / name, std::ios::binary);
      f << dump_json(pj);
      if (!f) throw Error(ErrorKind::Parse, "cannot write to '" + out_dir + "'");
    }
    samples.push_back(std::move(pj));
  }
  std::cout << dump_json({{"seed", seed},
                          {"count", count},
                          {"max_attempts", max_attempts},
                          {"trials", trials},
                          {"samples", samples}});
  if (failures) {
    std::cerr << failures << " of " << count << " trials exhausted " << max_attempts
              << " attempts\n";
    return static_cast<int>(ErrorKind::Sampling);
  }
  return 0;
}

int run_group(const std::string& path, const std::string& a, const std::string& b) {
  const InputDocument doc = load_document(path);
  const auto violations = validate_form(doc.A);
  if (!violations.empty()) throw Error(ErrorKind::Form, violations.front().describe());
  const GroupElement g1 = parse_group_element(a, doc.A);
  const GroupElement g2 = parse_group_element(b, doc.A);
  std::cout << dump_json(group_report(doc.A, g1, g2));
  return 0;
}

int run_catalog(const std::string& name) {
  std::cout << dump_json(to_json(make_document(catalog(name))));
  return 0;
}

int run_curve(int genus, int fibre_dim, const std::string& chern) {
  std::optional<IntVector> c;
  if (!chern.empty()) c = parse_int_list(chern);
  std::cout << dump_json(curve_report(genus, fibre_dim, c));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of principal holomorphic torus bundles over complex tori"};
  app.require_subcommand(1);

  std::optional<double> tol;
  std::string file, format = "json", name, g1, g2, chern, out_dir;
  std::optional<std::uint64_t> seed;
  int count = 1, max_attempts = 100, genus = 0, fibre_dim = 1;

  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", tol, "relative tolerance (default: document, TBI_TOL, 1e-9)")
        ->check(CLI::PositiveNumber);
  };

  auto* validate = app.add_subcommand("validate", "check form, structures and the Riemann relation");
  validate->add_option("file", file)->required();
  add_tol(validate);

  auto* invariants = app.add_subcommand("invariants", "compute the cohomology report");
  invariants->add_option("file", file)->required();
  invariants->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));
  add_tol(invariants);

  auto* decompose = app.add_subcommand("decompose", "complex components of A");
  decompose->add_option("file", file)->required();
  add_tol(decompose);

  auto* sample = app.add_subcommand("sample", "sample points of the parameter variety of A");
  sample->add_option("file", file, "document providing m, d and A")->required();
  sample->add_option("--seed", seed);
  sample->add_option("--count", count)->check(CLI::PositiveNumber);
  sample->add_option("--max-attempts", max_attempts)->check(CLI::PositiveNumber);
  sample->add_option("--out", out_dir, "also write each point to DIR/sample_NNN.json");
  add_tol(sample);

  auto* group = app.add_subcommand("group", "product, inverses and commutator in the lattice group");
  group->add_option("file", file)->required();
  group->add_option("g1", g1, "eN, fN or l1,..:g1,..")->required();
  group->add_option("g2", g2)->required();

  auto* cat = app.add_subcommand("catalog", "print a built-in document");
  cat->add_option("name", name)->required()->check(CLI::IsMember(catalog_names()));

  auto* curve = app.add_subcommand("curve", "bundles over a curve of genus g");
  curve->add_option("--genus", genus)->required();
  curve->add_option("--fibre-dim", fibre_dim)->required();
  curve->add_option("--chern", chern, "comma-separated class in Lambda");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : static_cast<int>(ErrorKind::Parse);
  }

  try {
    if (*validate) return run_validate(file, tol);
    if (*invariants) return run_invariants(file, tol, format);
    if (*decompose) return run_decompose(file, tol);
    if (*sample) return run_sample(file, seed, count, max_attempts, out_dir, tol);
    if (*group) return run_group(file, g1, g2);
    if (*cat) return run_catalog(name);
    if (*curve) return run_curve(genus, fibre_dim, chern);
  } catch (const tbi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(tbi::ErrorKind::Parse);
  }
  return 0;
}
