#include "tbi/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace tbi {

bool RankDecision::near_threshold() const {
  if (threshold <= 0.0) return false;
  if (rank > 0 && smallest_kept < 10.0 * threshold) return true;
  if (largest_dropped > threshold / 10.0) return true;
  return false;
}

namespace {

Eigen::BDCSVD<MatrixXcd> full_svd(const MatrixXcd& m) {
  return Eigen::BDCSVD<MatrixXcd>(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

}  // namespace

RankDecision numerical_rank(const MatrixXcd& m, double threshold) {
  RankDecision out;
  out.threshold = threshold;
  if (m.rows() == 0 || m.cols() == 0) return out;
  Eigen::BDCSVD<MatrixXcd> svd(m);
  const VectorXd& s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > threshold) {
      ++out.rank;
      out.smallest_kept = s(i);
    } else {
      out.largest_dropped = std::max(out.largest_dropped, s(i));
    }
  }
  return out;
}

MatrixXcd null_space(const MatrixXcd& m, double threshold) {
  const Eigen::Index n = m.cols();
  if (n == 0) return MatrixXcd(0, 0);
  if (m.rows() == 0) return MatrixXcd::Identity(n, n);
  auto svd = full_svd(m);
  const VectorXd& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > threshold) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

MatrixXcd column_space(const MatrixXcd& m, double threshold) {
  const Eigen::Index rows = m.rows();
  if (rows == 0 || m.cols() == 0) return MatrixXcd(rows, 0);
  auto svd = full_svd(m);
  const VectorXd& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > threshold) ++rank;
  return svd.matrixU().leftCols(rank);
}

MatrixXcd orthogonal_complement_in(const MatrixXcd& outer, const MatrixXcd& sub) {
  const Eigen::Index k = outer.cols();
  const Eigen::Index r = sub.cols();
  if (k == 0) return MatrixXcd(outer.rows(), 0);
  if (r == 0) return outer;
  // sub lies in span(outer), so outer^H sub has r singular values near 1.
  MatrixXcd coords = outer.adjoint() * sub;  // k x r
  auto svd = full_svd(coords.adjoint());      // r x k
  const Eigen::Index keep = std::max<Eigen::Index>(k - r, 0);
  return outer * svd.matrixV().rightCols(keep);
}

double max_abs(const MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double ComplexTensor3::max_abs() const {
  double best = 0.0;
  for (const auto& v : data_) best = std::max(best, std::abs(v));
  return best;
}

MatrixXcd ComplexTensor3::flatten() const {
  MatrixXcd out(n0_, n1_ * n2_);
  for (int k = 0; k < n0_; ++k)
    for (int i = 0; i < n1_; ++i)
      for (int j = 0; j < n2_; ++j) out(k, i * n2_ + j) = (*this)(k, i, j);
  return out;
}

ComplexTensor3 ComplexTensor3::conjugate() const {
  ComplexTensor3 out = *this;
  for (auto& v : out.data_) v = std::conj(v);
  return out;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace tbi
