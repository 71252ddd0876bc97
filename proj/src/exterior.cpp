#include "tbi/exterior.hpp"

#include <bit>

#include "tbi/errors.hpp"

namespace tbi {

WedgeBasis::WedgeBasis(int n, int k) : n_(n), k_(k) {
  if (n < 0 || n > 16) throw Error(ErrorKind::Domain, "exterior algebra dimension out of range");
  lookup_.assign(std::size_t{1} << n, -1);
  if (k < 0 || k > n) return;
  // Lexicographic order of sorted index tuples.
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::uint32_t m = 0;
    for (int v : idx) m |= 1U << v;
    lookup_[m] = static_cast<int>(masks_.size());
    masks_.push_back(m);
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < k; ++i)
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
  }
}

int WedgeBasis::index_of(std::uint32_t mask) const {
  if (mask >= lookup_.size()) return -1;
  return lookup_[mask];
}

int wedge_sign(std::uint32_t set, int q) {
  if (set & (1U << q)) return 0;
  const int below = std::popcount(set & ((1U << q) - 1U));
  return (below % 2 == 0) ? 1 : -1;
}

int contraction_sign(std::uint32_t set, int r) {
  if (!(set & (1U << r))) return 0;
  const int below = std::popcount(set & ((1U << r) - 1U));
  return (below % 2 == 0) ? 1 : -1;
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace tbi
