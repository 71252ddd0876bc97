#include "tbi/complex_structure.hpp"

#include <random>
#include <sstream>

#include "tbi/errors.hpp"

namespace tbi {

ComplexStructure::ComplexStructure(MatrixXcd period) : period_(std::move(period)) {
  if (period_.cols() < 1 || period_.rows() != 2 * period_.cols()) {
    std::ostringstream os;
    os << "period matrix must be 2n x n, got " << period_.rows() << " x " << period_.cols();
    throw Error(ErrorKind::Parse, os.str());
  }
}

ComplexStructure ComplexStructure::from_lattice_coordinates(const MatrixXcd& rows) {
  const Eigen::Index n = rows.rows();
  if (n < 1 || rows.cols() != 2 * n)
    throw Error(ErrorKind::Parse, "coordinate matrix must be n x 2n");
  MatrixXcd stacked(2 * n, 2 * n);
  stacked << rows, rows.conjugate();
  Eigen::FullPivLU<MatrixXcd> lu(stacked);
  if (!lu.isInvertible())
    throw Error(ErrorKind::Structure, "lattice coordinates do not span a complex structure");
  return ComplexStructure(lu.inverse().leftCols(n));
}

ComplexStructure ComplexStructure::from_chart(const MatrixXcd& chart) {
  const Eigen::Index n = chart.rows();
  if (n < 1 || chart.cols() != n) throw Error(ErrorKind::Parse, "chart matrix must be square");
  MatrixXcd period(2 * n, n);
  period << MatrixXcd::Identity(n, n), chart;
  return ComplexStructure(std::move(period));
}

MatrixXcd ComplexStructure::block() const {
  MatrixXcd out(period_.rows(), period_.rows());
  out << period_, period_.conjugate();
  return out;
}

StructureCheck validate_structure(const ComplexStructure& S, double tol) {
  StructureCheck out;
  Eigen::BDCSVD<MatrixXcd> svd(S.block());
  const VectorXd& s = svd.singularValues();
  out.sigma_max = s(0);
  out.sigma_min = s(s.size() - 1);
  out.ok = out.sigma_max > 0.0 && out.sigma_min > tol * out.sigma_max;
  return out;
}

MatrixXcd basis_change(const ComplexStructure& S, double tol) {
  const StructureCheck check = validate_structure(S, tol);
  if (!check.ok) {
    std::ostringstream os;
    os << "degenerate complex structure: singular value ratio " << check.ratio()
       << " <= tolerance " << tol;
    throw Error(ErrorKind::Structure, os.str());
  }
  return S.block().partialPivLu().inverse();
}

VectorXcd holomorphic_coordinates(const MatrixXcd& change, const VectorXd& x) {
  const Eigen::Index n = change.rows() / 2;
  return change.topRows(n) * x.cast<cplx>();
}

VectorXd lattice_coordinates(const ComplexStructure& S, const VectorXcd& u) {
  return 2.0 * (S.period() * u).real();
}

MatrixXcd chart_of(const ComplexStructure& S, double tol) {
  const int n = S.half_rank();
  const MatrixXcd top = S.period().topRows(n);
  Eigen::BDCSVD<MatrixXcd> svd(top);
  const VectorXd& s = svd.singularValues();
  const double scale = S.period().cwiseAbs().maxCoeff();
  if (s(s.size() - 1) <= tol * scale)
    throw Error(ErrorKind::Structure, "top block of period matrix is singular; no standard chart");
  return S.period().bottomRows(n) * top.inverse();
}

ComplexStructure random_structure(int n, std::uint64_t seed, double tol) {
  if (n < 1) throw Error(ErrorKind::Domain, "structure dimension must be >= 1");
  constexpr int kAttempts = 64;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    MatrixXcd period(2 * n, n);
    for (Eigen::Index c = 0; c < period.cols(); ++c)
      for (Eigen::Index r = 0; r < period.rows(); ++r) {
        const double re = normal(rng);
        const double im = normal(rng);
        period(r, c) = cplx(re, im);
      }
    ComplexStructure S(std::move(period));
    if (validate_structure(S, tol).ok) return S;
  }
  throw Error(ErrorKind::Sampling, "random_structure: exhausted attempts");
}

}  // namespace tbi
