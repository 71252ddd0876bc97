#include "tbi/document.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tbi/errors.hpp"

namespace tbi {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::Parse, msg); }

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

cplx complex_from_json(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail("field '" + field + "': complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string line_context(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  std::ostringstream os;
  os << "line " << line << ", column " << col;
  return os.str();
}

void write(std::ostringstream& os, const json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  const std::string inner(static_cast<std::size_t>(2 * depth + 2), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << json(it.key()).dump() << ": ";
        write(os, it.value(), depth + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write(os, j[i], depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << inner;
        write(os, j[i], depth + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        os << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      std::string s(buf);
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      os << s;
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

json complex_matrix_json(const MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXcd complex_matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail("field '" + field + "' must be a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  MatrixXcd out(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      fail("field '" + field + "': row " + std::to_string(r + 1) + " has the wrong length");
    for (std::size_t c = 0; c < cols; ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c], field);
  }
  return out;
}

InputDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("JSON syntax error at " + line_context(text, e.byte) + ": " + e.what());
  }
  if (!j.is_object()) fail("top-level JSON value must be an object");

  InputDocument doc;
  try {
    doc.m = require(j, "m").get<int>();
    doc.d = require(j, "d").get<int>();
    if (doc.m < 1 || doc.d < 1) fail("m and d must be >= 1");
    const auto nested = require(j, "A").get<std::vector<std::vector<IntVector>>>();
    doc.A = ExtensionForm::from_nested(nested);
  } catch (const json::exception& e) {
    fail(std::string("type error: ") + e.what());
  }
  if (doc.A.base_rank() != 2 * doc.m || doc.A.fibre_rank() != 2 * doc.d) {
    std::ostringstream os;
    os << "field 'A' has shape " << doc.A.fibre_rank() << "x" << doc.A.base_rank() << "x"
       << doc.A.base_rank() << ", expected " << 2 * doc.d << "x" << 2 * doc.m << "x" << 2 * doc.m;
    fail(os.str());
  }

  auto structure = [&](const char* key, int n) -> std::optional<ComplexStructure> {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    MatrixXcd period = complex_matrix_from_json(*it, key);
    if (period.rows() != 2 * n || period.cols() != n) {
      std::ostringstream os;
      os << "field '" << key << "' must be " << 2 * n << "x" << n << ", got " << period.rows()
         << "x" << period.cols();
      fail(os.str());
    }
    return ComplexStructure(std::move(period));
  };
  doc.V = structure("V", doc.m);
  doc.U = structure("U", doc.d);

  if (auto it = j.find("phi"); it != j.end() && !it->is_null()) {
    MatrixXcd phi = complex_matrix_from_json(*it, "phi");
    if (phi.rows() != doc.d || phi.cols() != 2 * doc.m) fail("field 'phi' must be d x 2m");
    doc.phi = std::move(phi);
  }
  try {
    if (auto it = j.find("tol"); it != j.end() && !it->is_null()) {
      doc.tol = it->get<double>();
      if (!(*doc.tol > 0.0)) fail("field 'tol' must be positive");
    }
    if (auto it = j.find("seed"); it != j.end() && !it->is_null())
      doc.seed = it->get<std::uint64_t>();
  } catch (const json::exception& e) {
    fail(std::string("type error: ") + e.what());
  }
  return doc;
}

InputDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

json to_json(const InputDocument& doc) {
  json j;
  j["m"] = doc.m;
  j["d"] = doc.d;
  j["A"] = doc.A.nested();
  if (doc.V) j["V"] = complex_matrix_json(doc.V->period());
  if (doc.U) j["U"] = complex_matrix_json(doc.U->period());
  if (doc.phi) j["phi"] = complex_matrix_json(*doc.phi);
  if (doc.tol) j["tol"] = *doc.tol;
  if (doc.seed) j["seed"] = *doc.seed;
  return j;
}

InputDocument make_document(const BundleDatum& D) {
  InputDocument doc;
  doc.m = D.A.base_dim();
  doc.d = D.A.fibre_dim();
  doc.A = D.A;
  doc.V = D.V;
  doc.U = D.U;
  doc.phi = D.phi;
  return doc;
}

BundleDatum to_bundle(const InputDocument& doc) {
  if (!doc.V || !doc.U) fail("document lacks the complex structures 'V' and 'U'");
  return {doc.A, *doc.V, *doc.U, doc.phi};
}

bool operator==(const InputDocument& a, const InputDocument& b) {
  auto same_matrix = [](const std::optional<MatrixXcd>& x, const std::optional<MatrixXcd>& y) {
    if (x.has_value() != y.has_value()) return false;
    if (!x) return true;
    return x->rows() == y->rows() && x->cols() == y->cols() && *x == *y;
  };
  return a.m == b.m && a.d == b.d && a.A == b.A && a.V == b.V && a.U == b.U &&
         same_matrix(a.phi, b.phi) && a.tol == b.tol && a.seed == b.seed;
}

std::string dump_json(const json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << "\n";
  return os.str();
}

std::string content_hash(const json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump_json(j)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tbi
