#pragma once

#include <cstdint>

#include "tbi/lattice.hpp"

namespace tbi {

/// Topological data of a principal torus bundle over a genus-g curve.
struct CurveBundleClass {
  int genus = 0;
  int fibre_dim = 1;
  IntVector chern_vector;  ///< class in H^2(Y, Lambda) = Lambda, length 2d
};

/// 3g - 3 + d g + d^2. Throws Domain for g < 2 or d < 1.
std::int64_t kuranishi_dim(int genus, int fibre_dim);

/// Non-negative gcd of the entries; 0 for the zero class.
std::int64_t divisibility_index(const IntVector& chern_vector);

}  // namespace tbi
