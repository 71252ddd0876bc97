#include "tbi/catalog.hpp"

#include <cmath>
#include <complex>

#include "tbi/errors.hpp"

namespace tbi {

namespace {

using Gauss = std::complex<long>;

Gauss entry(const std::vector<std::vector<std::vector<std::pair<long, long>>>>& t, int r, int p,
            int q) {
  if (t.empty()) return {0, 0};
  const auto& e = t.at(r).at(p).at(q);
  return {e.first, e.second};
}

// Basis vector e_i of Z[i]^n as a Gaussian vector.
std::vector<Gauss> basis_vector(int n, int i) {
  std::vector<Gauss> v(static_cast<std::size_t>(n), Gauss(0, 0));
  v[static_cast<std::size_t>(i / 2)] = (i % 2 == 0) ? Gauss(1, 0) : Gauss(0, 1);
  return v;
}

}  // namespace

ExtensionForm gaussian_form(const GaussianFormData& data) {
  const int m = data.m, d = data.d;
  ExtensionForm A(2 * m, 2 * d);
  for (int i = 0; i < 2 * m; ++i)
    for (int j = 0; j < 2 * m; ++j) {
      const auto x = basis_vector(m, i);
      const auto y = basis_vector(m, j);
      for (int r = 0; r < d; ++r) {
        Gauss value(0, 0);
        for (int p = 0; p < m; ++p)
          for (int q = 0; q < m; ++q) {
            if (p < q) value += entry(data.P, r, p, q) * (x[p] * y[q] - x[q] * y[p]);
            value += entry(data.Q, r, p, q) * (x[p] * std::conj(y[q]) - y[p] * std::conj(x[q]));
          }
        A.set(2 * r, i, j, value.real());
        A.set(2 * r + 1, i, j, value.imag());
      }
    }
  return A;
}

ComplexStructure gaussian_structure(int n) {
  MatrixXcd rows = MatrixXcd::Zero(n, 2 * n);
  for (int a = 0; a < n; ++a) {
    rows(a, 2 * a) = cplx(1.0, 0.0);
    rows(a, 2 * a + 1) = cplx(0.0, 1.0);
  }
  return ComplexStructure::from_lattice_coordinates(rows);
}

std::vector<std::string> catalog_names() { return {"iwasawa", "product"}; }

BundleDatum catalog(const std::string& name) {
  if (name == "iwasawa") {
    // Antisymmetrised product C x C -> C on Z[i]^2 -> Z[i].
    GaussianFormData data;
    data.m = 2;
    data.d = 1;
    data.P = {{{{0, 0}, {1, 0}}, {{0, 0}, {0, 0}}}};
    return {gaussian_form(data), gaussian_structure(2), gaussian_structure(1), std::nullopt};
  }
  if (name == "product")
    return {ExtensionForm(4, 2), gaussian_structure(2), gaussian_structure(1), std::nullopt};
  throw Error(ErrorKind::Domain, "unknown catalog entry '" + name + "'");
}

}  // namespace tbi
