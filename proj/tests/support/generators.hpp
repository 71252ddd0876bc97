#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "tbi/catalog.hpp"
#include "tbi/decomposition.hpp"

namespace tbi::testing {

enum class HermKind { Zero, Random };   // B'' part of a Gaussian instance
enum class HoloKind { Zero, Random };   // B' part

/// Random Gaussian-integer form on Z[i]^m -> Z[i]^d with its standard
/// structures. Coefficients are drawn from [-2, 2] + [-2, 2] i.
BundleDatum gaussian_instance(std::mt19937_64& rng, int m, int d, HoloKind holo, HermKind herm);

/// Random change of lattice bases by unimodular matrices; keeps the datum on
/// the parameter variety and all invariants unchanged.
BundleDatum unimodular_twist(std::mt19937_64& rng, const BundleDatum& D);

/// Random unimodular integer matrix built from elementary operations.
Eigen::MatrixXi random_unimodular(std::mt19937_64& rng, int n);

/// Random alternating tensor with entries in [-bound, bound].
ExtensionForm random_form(std::mt19937_64& rng, int m, int d, int bound = 3);

/// Random integer vector with entries in [-bound, bound].
IntVector random_vector(std::mt19937_64& rng, int n, int bound = 5);

VectorXcd random_complex(std::mt19937_64& rng, int n);

}  // namespace tbi::testing
