#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tbi/decomposition.hpp"

namespace tbi {

/// Local equations of the parameter variety in the graph chart of Gr(d, 2d).
struct LocalEquations {
  std::vector<std::pair<int, int>> pairs;  ///< (h, l), 0-based, h < l
  std::vector<VectorXcd> w;                ///< A(v_h, v_l) in Lambda (x) C
  MatrixXcd chart;                         ///< d x d
  std::vector<VectorXcd> residuals;        ///< w'' - chart w'
  double residual_norm = 0.0;
  double threshold = 0.0;
  bool member = false;
};

/// w_{h,l} = sum_k (sum_{i,j} v_{i,h} A^k_{ij} v_{j,l}) e_k for the columns
/// v_h of V's period matrix, tested against U = graph(chart).
LocalEquations local_equations(const ExtensionForm& A, const ComplexStructure& V,
                               const MatrixXcd& chart, double tol = kDefaultTolerance);

/// Upper bound d m (m - 1) / 2 on the codimension of the parameter variety.
std::int64_t codim_bound(int m, int d);

struct SampleOutcome {
  bool success = false;
  int attempts = 0;
  ComplexStructure V;
  ComplexStructure U;
  /// Smallest normalised obstruction seen: sigma_{d+1} of the w-span over the
  /// scale of A in the (V, conj V) frame on failure, the Riemann residual ratio
  /// on success.
  double best_residual = 0.0;
};

/// Draws V at random and solves for U containing span{w_{h,l}}. Deterministic
/// in `seed`.
SampleOutcome sample_point(const ExtensionForm& A, std::uint64_t seed, int max_attempts,
                           double tol = kDefaultTolerance);

/// `count` independent samples with per-trial seeds mix_seed(seed, i), run
/// concurrently and returned in trial order.
std::vector<SampleOutcome> sample_points(const ExtensionForm& A, std::uint64_t seed, int count,
                                         int max_attempts, double tol = kDefaultTolerance);

}  // namespace tbi
