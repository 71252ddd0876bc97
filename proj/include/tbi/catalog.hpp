#pragma once

#include <string>
#include <vector>

#include "tbi/decomposition.hpp"

namespace tbi {

/// Alternating form on Z[i]^m with values in Z[i]^d built from Gaussian
/// integer data. Lattice bases are (1, i) per complex coordinate, so e_{2a}
/// and e_{2a+1} are 1 and i in coordinate a.
///
///   A(x, y)_r = sum_{p<q} P_r[p][q] (x_p y_q - x_q y_p)
///             + sum_{p,q} Q_r[p][q] (x_p conj(y_q) - y_p conj(x_q))
///
/// P_r are the holomorphic (B') coefficients, Q_r the Hermitian (B'') ones.
/// Entries are Gaussian integers given as (re, im) pairs.
struct GaussianFormData {
  int m = 0;
  int d = 0;
  std::vector<std::vector<std::vector<std::pair<long, long>>>> P;  ///< [r][p][q], only p<q read
  std::vector<std::vector<std::vector<std::pair<long, long>>>> Q;  ///< [r][p][q]
};

ExtensionForm gaussian_form(const GaussianFormData& data);

/// Standard structure on Z[i]^n: the holomorphic coordinate of a + b i is a + b i.
ComplexStructure gaussian_structure(int n);

/// Built-in data sets: "iwasawa" and "product".
std::vector<std::string> catalog_names();
BundleDatum catalog(const std::string& name);

}  // namespace tbi
