#include <doctest.h>

#include <cstdlib>
#include <random>

#include "support/generators.hpp"
#include "tbi/catalog.hpp"
#include "tbi/errors.hpp"
#include "tbi/report.hpp"
#include "tbi/riemann_variety.hpp"

using namespace tbi;

namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Domain;
}

InputDocument iwasawa_doc() { return make_document(catalog("iwasawa")); }

}  // namespace

TEST_CASE("catalog documents round trip") {
  for (const auto& name : catalog_names()) {
    const InputDocument doc = make_document(catalog(name));
    const std::string text = dump_json(to_json(doc));
    CHECK(parse_document(text) == doc);
    CHECK(dump_json(to_json(parse_document(text))) == text);
  }
}

TEST_CASE("sampled documents round trip") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    const ExtensionForm A = testing::random_form(rng, 2, 1 + t % 3);
    const SampleOutcome s = sample_point(A, rng(), 100);
    REQUIRE(s.success);
    InputDocument doc = make_document({A, s.V, s.U, std::nullopt});
    doc.tol = 1e-10;
    doc.seed = rng();
    doc.phi = MatrixXcd::Random(A.fibre_dim(), A.base_rank());
    CHECK(parse_document(dump_json(to_json(doc))) == doc);
  }
}

TEST_CASE("parse errors carry context") {
  try {
    parse_document("{\"m\": 2,\n \"d\": }");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK(kind_of("[1, 2]") == ErrorKind::Parse);
  CHECK(kind_of(R"({"m": 1, "d": 1})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"m": 1, "d": 1, "A": [[[0, 1], [-1, 0]]]})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"m": 1, "d": 1, "A": [[[0, 1], [-1, 0]], [[0, 0], [0, 0]]],
                   "V": [[[1, 0]], [[0, 1]], [[0, 0]]]})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"m": 1, "d": 1, "A": [[[0, 1], [-1, 0]], [[0, 0], [0, 0]]], "tol": -1})") ==
        ErrorKind::Parse);
  CHECK(kind_of(R"({"m": 1, "d": 1, "A": [[[0, "x"], [-1, 0]], [[0, 0], [0, 0]]]})") ==
        ErrorKind::Parse);
}

TEST_CASE("validation exit codes") {
  InputDocument doc = iwasawa_doc();
  CHECK(validate_document(doc, 1e-9).exit_code == 0);

  InputDocument bad_form = doc;
  bad_form.A.set(0, 0, 1, 5);
  const ValidationResult f = validate_document(bad_form, 1e-9);
  CHECK(f.exit_code == 2);
  CHECK(f.messages.front().find("(1,1,2)") != std::string::npos);

  InputDocument bad_structure = doc;
  MatrixXcd p(2, 1);
  p << 1.0, 0.0;
  bad_structure.U = ComplexStructure(p);
  CHECK(validate_document(bad_structure, 1e-9).exit_code == 3);

  InputDocument off = doc;
  off.U = ComplexStructure(doc.U->period().conjugate());
  CHECK(validate_document(off, 1e-9).exit_code == 4);

  // A residual a few times the threshold is reported as ambiguous.
  bool found = false;
  for (double eps = 1e-12; eps < 1e-6 && !found; eps *= 1.5) {
    InputDocument near = doc;
    MatrixXcd u = doc.U->period();
    u(0, 0) += cplx(eps, 0.0);
    near.U = ComplexStructure(u);
    const ValidationResult r = validate_document(near, 1e-9);
    REQUIRE(r.riemann);
    const double ratio = r.riemann->residual_norm / r.riemann->threshold;
    if (ratio < 2.0 || ratio > 5.0) continue;
    found = true;
    CHECK(r.riemann->ambiguous());
    CHECK(r.exit_code == 5);
  }
  CHECK(found);
}

TEST_CASE("tolerance precedence") {
  InputDocument doc = iwasawa_doc();
  ::unsetenv("TBI_TOL");
  CHECK(resolve_tolerance(std::nullopt, nullptr) == kDefaultTolerance);
  ::setenv("TBI_TOL", "1e-6", 1);
  CHECK(resolve_tolerance(std::nullopt, &doc) == 1e-6);
  doc.tol = 1e-7;
  CHECK(resolve_tolerance(std::nullopt, &doc) == 1e-7);
  CHECK(resolve_tolerance(1e-5, &doc) == 1e-5);
  ::setenv("TBI_TOL", "junk", 1);
  CHECK_THROWS_AS(resolve_tolerance(std::nullopt, nullptr), Error);
  ::unsetenv("TBI_TOL");
}

TEST_CASE("reports") {
  const InputDocument doc = iwasawa_doc();
  const auto rep = invariants_report(doc, 1e-9);
  CHECK(rep["cohomology"]["h_O"] == nlohmann::json({1, 2, 2, 1}));
  CHECK(rep["cohomology"]["h_theta"][1] == 6);
  CHECK(rep["cohomology"]["parallelizable"] == true);
  CHECK(rep["group_checks"]["ok"] == true);
  CHECK(dump_json(rep) == dump_json(invariants_report(doc, 1e-9)));
  CHECK(invariants_table(doc, 1e-9).find("E3") != std::string::npos);

  const auto dec = decomposition_report(doc, 1e-9);
  CHECK(dec["norms"]["bherm"] == 0.0);

  const auto prod = invariants_report(make_document(catalog("product")), 1e-9);
  CHECK(prod["cohomology"]["h_O"] == nlohmann::json({1, 3, 3, 1}));

  InputDocument off = doc;
  off.U = ComplexStructure(doc.U->period().conjugate());
  try {
    invariants_report(off, 1e-9);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.exit_code() == 4);
  }
}

TEST_CASE("group element syntax") {
  const ExtensionForm A = catalog("iwasawa").A;
  CHECK(parse_group_element("e2", A) == lift_basis(A, 1));
  CHECK(parse_group_element("f1", A).lambda == IntVector{1, 0});
  const GroupElement g = parse_group_element("1,-2:0,1,2,3", A);
  CHECK(g.lambda == IntVector{1, -2});
  CHECK(g.gamma == IntVector{0, 1, 2, 3});
  CHECK_THROWS_AS(parse_group_element("e5", A), Error);
  CHECK_THROWS_AS(parse_group_element("x", A), Error);
  CHECK_THROWS_AS(parse_group_element("1:1,2", A), Error);
  const auto rep = group_report(A, parse_group_element("e2", A), parse_group_element("e4", A));
  CHECK(rep["commutator"]["lambda"] == nlohmann::json({-1, 0}));
}

TEST_CASE("canonical JSON formatting") {
  nlohmann::json j{{"b", 1.0}, {"a", {1, 2}}, {"c", 0.1}};
  CHECK(dump_json(j) == "{\n  \"a\": [1, 2],\n  \"b\": 1.0,\n  \"c\": 0.10000000000000001\n}\n");
  CHECK(content_hash(j).size() == 16);
}
