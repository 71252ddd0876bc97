#include "tbi/curve.hpp"

#include <numeric>
#include <sstream>

#include "tbi/errors.hpp"

namespace tbi {

std::int64_t kuranishi_dim(int genus, int fibre_dim) {
  if (genus < 2 || fibre_dim < 1) {
    std::ostringstream os;
    os << "kuranishi_dim needs genus >= 2 and fibre dimension >= 1, got (" << genus << ", "
       << fibre_dim << ")";
    throw Error(ErrorKind::Domain, os.str());
  }
  const std::int64_t g = genus, d = fibre_dim;
  return 3 * g - 3 + d * g + d * d;
}

std::int64_t divisibility_index(const IntVector& chern_vector) {
  std::int64_t out = 0;
  for (auto v : chern_vector) out = std::gcd(out, v);
  return out < 0 ? -out : out;
}

}  // namespace tbi
