#include "tbi/riemann_variety.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "tbi/errors.hpp"

namespace tbi {

namespace {

// A(v_h, v_l) as a vector of Lambda (x) C.
// `scale` receives the max-norm of A in the (V, conj V) frame, so that
// thresholds do not collapse when every w vanishes.
std::vector<VectorXcd> w_vectors(const ExtensionForm& A, const MatrixXcd& period,
                                 std::vector<std::pair<int, int>>& pairs, double& scale) {
  const int m = static_cast<int>(period.cols());
  MatrixXcd block(period.rows(), 2 * m);
  block << period, period.conjugate();
  std::vector<MatrixXcd> slices;
  scale = 0.0;
  for (int k = 0; k < A.fibre_rank(); ++k) {
    MatrixXcd s(A.base_rank(), A.base_rank());
    for (int i = 0; i < A.base_rank(); ++i)
      for (int j = 0; j < A.base_rank(); ++j) s(i, j) = static_cast<double>(A.at(k, i, j));
    const MatrixXcd full = block.transpose() * s * block;
    scale = std::max(scale, max_abs(full));
    slices.push_back(full.topLeftCorner(m, m));
  }
  std::vector<VectorXcd> out;
  for (int h = 0; h < m; ++h)
    for (int l = h + 1; l < m; ++l) {
      VectorXcd w(A.fibre_rank());
      for (int k = 0; k < A.fibre_rank(); ++k) w(k) = slices[k](h, l);
      pairs.emplace_back(h, l);
      out.push_back(std::move(w));
    }
  return out;
}

}  // namespace

LocalEquations local_equations(const ExtensionForm& A, const ComplexStructure& V,
                               const MatrixXcd& chart, double tol) {
  const int d = A.fibre_dim();
  if (A.base_rank() != 2 * V.half_rank() || chart.rows() != d || chart.cols() != d)
    throw Error(ErrorKind::Parse, "local_equations: rank mismatch");
  basis_change(V, tol);
  const StructureCheck chart_check = validate_structure(ComplexStructure::from_chart(chart), tol);
  if (!chart_check.ok)
    throw Error(ErrorKind::Structure, "chart does not define a complex structure");

  LocalEquations out;
  out.chart = chart;
  double w_scale = 0.0;
  out.w = w_vectors(A, V.period(), out.pairs, w_scale);
  for (const auto& w : out.w) {
    VectorXcd res = w.tail(d) - chart * w.head(d);
    out.residual_norm = std::max(out.residual_norm, res.cwiseAbs().maxCoeff());
    out.residuals.push_back(std::move(res));
  }
  const double chart_norm = chart.size() ? chart.cwiseAbs().rowwise().sum().maxCoeff() : 0.0;
  out.threshold = tol * w_scale * (1.0 + chart_norm);
  out.member = out.residual_norm <= out.threshold;
  return out;
}

std::int64_t codim_bound(int m, int d) {
  if (m < 1 || d < 1) throw Error(ErrorKind::Domain, "codim_bound requires m, d >= 1");
  return static_cast<std::int64_t>(d) * m * (m - 1) / 2;
}

SampleOutcome sample_point(const ExtensionForm& A, std::uint64_t seed, int max_attempts,
                           double tol) {
  const int m = A.base_dim();
  const int d = A.fibre_dim();
  SampleOutcome out;
  out.best_residual = std::numeric_limits<double>::infinity();

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    out.attempts = attempt + 1;
    const std::uint64_t trial_seed = mix_seed(seed, static_cast<std::uint64_t>(attempt));
    ComplexStructure V = random_structure(m, trial_seed, tol);

    std::vector<std::pair<int, int>> pairs;
    double w_scale = 0.0;
    const std::vector<VectorXcd> ws = w_vectors(A, V.period(), pairs, w_scale);
    MatrixXcd W(2 * d, static_cast<Eigen::Index>(ws.size()));
    for (std::size_t c = 0; c < ws.size(); ++c) W.col(static_cast<Eigen::Index>(c)) = ws[c];

    MatrixXcd basis(2 * d, 0);
    if (W.cols() > 0) {
      if (w_scale > 0.0) {
        Eigen::BDCSVD<MatrixXcd> svd(W, Eigen::ComputeFullU);
        const VectorXd& s = svd.singularValues();
        int rank = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
          if (s(i) > tol * w_scale) ++rank;
        if (rank > d) {
          out.best_residual = std::min(out.best_residual, s(d) / w_scale);
          continue;
        }
        basis = svd.matrixU().leftCols(rank);
      }
    }

    std::mt19937_64 rng(mix_seed(trial_seed, 0xC0FFEEULL));
    std::normal_distribution<double> normal(0.0, 1.0);
    MatrixXcd period(2 * d, d);
    period.leftCols(basis.cols()) = basis;
    for (Eigen::Index c = basis.cols(); c < d; ++c)
      for (Eigen::Index r = 0; r < 2 * d; ++r) {
        const double re = normal(rng);
        const double im = normal(rng);
        period(r, c) = cplx(re, im);
      }
    ComplexStructure U(std::move(period));
    if (!validate_structure(U, tol).ok) continue;
    const RiemannVerdict verdict = riemann_check(A, V, U, tol);
    const double ratio = verdict.threshold > 0.0 ? verdict.residual_norm / verdict.threshold * tol
                                                 : 0.0;
    if (!verdict.member) {
      out.best_residual = std::min(out.best_residual, ratio);
      continue;
    }
    out.success = true;
    out.best_residual = ratio;
    out.V = std::move(V);
    out.U = std::move(U);
    return out;
  }
  return out;
}

std::vector<SampleOutcome> sample_points(const ExtensionForm& A, std::uint64_t seed, int count,
                                         int max_attempts, double tol) {
  const int width = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  std::vector<SampleOutcome> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int start = 0; start < count; start += width) {
    std::vector<std::future<SampleOutcome>> jobs;
    for (int i = start; i < std::min(count, start + width); ++i) {
      const std::uint64_t trial = mix_seed(seed, 0x5A5A0000ULL + static_cast<std::uint64_t>(i));
      jobs.push_back(std::async(std::launch::async, [&A, trial, max_attempts, tol] {
        return sample_point(A, trial, max_attempts, tol);
      }));
    }
    for (auto& j : jobs) out.push_back(j.get());
  }
  return out;
}

}  // namespace tbi
