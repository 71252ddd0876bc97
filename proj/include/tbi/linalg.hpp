#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace tbi {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Outcome of a singular-value rank decision, kept so callers can audit
/// how close the cut was.
struct RankDecision {
  int rank = 0;
  double threshold = 0.0;
  double smallest_kept = 0.0;    ///< 0 when rank == 0
  double largest_dropped = 0.0;  ///< 0 when nothing was dropped

  /// True when a kept or dropped singular value lies within a factor of
  /// ten of the threshold.
  bool near_threshold() const;
};

/// Rank of `m`: singular values strictly above `threshold` count.
RankDecision numerical_rank(const MatrixXcd& m, double threshold);

/// Orthonormal basis (columns) of the kernel of `m`.
MatrixXcd null_space(const MatrixXcd& m, double threshold);

/// Orthonormal basis (columns) of the column space of `m`.
MatrixXcd column_space(const MatrixXcd& m, double threshold);

/// Columns of `sub` are an orthonormal basis of a subspace S of span(`outer`)
/// (both orthonormal). Returns an orthonormal basis of the orthogonal
/// complement of S inside span(`outer`).
MatrixXcd orthogonal_complement_in(const MatrixXcd& outer, const MatrixXcd& sub);

double max_abs(const MatrixXcd& m);

/// Dense complex 3-tensor T(k, i, j), row-major in (k, i, j).
class ComplexTensor3 {
 public:
  ComplexTensor3() = default;
  ComplexTensor3(int n0, int n1, int n2)
      : n0_(n0), n1_(n1), n2_(n2),
        data_(static_cast<std::size_t>(n0) * n1 * n2, cplx{0.0, 0.0}) {}

  int dim0() const { return n0_; }
  int dim1() const { return n1_; }
  int dim2() const { return n2_; }

  cplx& operator()(int k, int i, int j) { return data_[index(k, i, j)]; }
  const cplx& operator()(int k, int i, int j) const { return data_[index(k, i, j)]; }

  double max_abs() const;

  /// Flattened as a dim0 x (dim1*dim2) matrix; row k holds slice k.
  MatrixXcd flatten() const;

  ComplexTensor3 conjugate() const;

 private:
  std::size_t index(int k, int i, int j) const {
    return (static_cast<std::size_t>(k) * n1_ + i) * n2_ + j;
  }

  int n0_ = 0, n1_ = 0, n2_ = 0;
  std::vector<cplx> data_;
};

/// splitmix64 step; used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace tbi
