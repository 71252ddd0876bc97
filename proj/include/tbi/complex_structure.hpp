#pragma once

#include <cstdint>

#include "tbi/linalg.hpp"

namespace tbi {

inline constexpr double kDefaultTolerance = 1e-9;

/// A point of Gr(n, 2n): the columns of the 2n x n period matrix span the
/// holomorphic subspace of lattice (x) C. Stored as given, never normalised.
class ComplexStructure {
 public:
  ComplexStructure() = default;

  /// Throws Parse if `period` is not 2n x n with n >= 1.
  explicit ComplexStructure(MatrixXcd period);

  /// Structure whose holomorphic coordinates of the lattice basis vectors are
  /// the columns of `rows` (n x 2n): e_i has coordinates rows.col(i).
  static ComplexStructure from_lattice_coordinates(const MatrixXcd& rows);

  /// Graph chart {(u', u'') : u'' = chart u'} of Gr(n, 2n).
  static ComplexStructure from_chart(const MatrixXcd& chart);

  int half_rank() const { return static_cast<int>(period_.cols()); }
  const MatrixXcd& period() const { return period_; }

  /// The 2n x 2n block matrix (Omega | conj Omega).
  MatrixXcd block() const;

  friend bool operator==(const ComplexStructure& a, const ComplexStructure& b) {
    return a.period_.rows() == b.period_.rows() && a.period_.cols() == b.period_.cols() &&
           a.period_ == b.period_;
  }

 private:
  MatrixXcd period_;
};

struct StructureCheck {
  bool ok = false;
  double sigma_min = 0.0;
  double sigma_max = 0.0;

  double ratio() const { return sigma_max > 0.0 ? sigma_min / sigma_max : 0.0; }
};

/// ok iff sigma_min(Omega | conj Omega) > tol * sigma_max.
StructureCheck validate_structure(const ComplexStructure& S, double tol = kDefaultTolerance);

/// C = (Omega | conj Omega)^-1. For a lattice vector x, C x stacks its
/// holomorphic and antiholomorphic coordinates. Throws Structure when
/// the structure is degenerate.
MatrixXcd basis_change(const ComplexStructure& S, double tol = kDefaultTolerance);

/// Holomorphic coordinates of a real lattice vector (top block of C x).
VectorXcd holomorphic_coordinates(const MatrixXcd& change, const VectorXd& x);

/// Real lattice coordinates of the vector with holomorphic coordinates u,
/// i.e. Omega u + conj(Omega u).
VectorXd lattice_coordinates(const ComplexStructure& S, const VectorXcd& u);

/// Standard chart matrix: bottom block times inverse of top block. Throws
/// Structure if the top block is numerically singular.
MatrixXcd chart_of(const ComplexStructure& S, double tol = kDefaultTolerance);

/// Gaussian random period matrix, deterministic in `seed`. Retries
/// degenerate draws up to 64 times.
ComplexStructure random_structure(int n, std::uint64_t seed, double tol = kDefaultTolerance);

}  // namespace tbi
