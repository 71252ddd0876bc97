#pragma once

#include <cstdint>
#include <vector>

namespace tbi {

/// Basis of the k-th exterior power of an n-dimensional space: k-subsets of
/// {0, ..., n-1} stored as bitmasks in lexicographic order.
class WedgeBasis {
 public:
  WedgeBasis(int n, int k);

  int ambient() const { return n_; }
  int degree() const { return k_; }
  int size() const { return static_cast<int>(masks_.size()); }
  std::uint32_t mask(int index) const { return masks_[static_cast<std::size_t>(index)]; }

  /// -1 when `mask` is not a k-subset.
  int index_of(std::uint32_t mask) const;

 private:
  int n_, k_;
  std::vector<std::uint32_t> masks_;
  std::vector<int> lookup_;
};

/// e_q ^ e_S = sign * e_{S + q}. Returns 0 if q is already in S.
int wedge_sign(std::uint32_t set, int q);

/// Interior product removing e_r from e_T = sign * e_{T - r}; 0 if r not in T.
int contraction_sign(std::uint32_t set, int r);

std::int64_t binomial(int n, int k);

}  // namespace tbi
