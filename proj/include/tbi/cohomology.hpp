#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tbi/decomposition.hpp"

namespace tbi {

/// Leray E2/E3 pages for O_X. Entry (i, j) lives in
/// Lambda^i conj V^* (x) Lambda^j conj U^*, with the wedge bases of
/// WedgeBasis(m, i) and WedgeBasis(d, j); a vector index is s * C(d, j) + t.
struct SpectralTable {
  int m = 0;
  int d = 0;
  std::vector<std::vector<int>> e2;  ///< [i][j]
  std::vector<std::vector<int>> e3;  ///< [i][j]

  /// d2 from (i, j) to (i + 2, j - 1). Zero rows when the target is outside
  /// the table.
  std::vector<std::vector<MatrixXcd>> d2;
  std::vector<std::vector<RankDecision>> d2_rank;

  /// Orthonormal basis of the complement of im d2 inside ker d2.
  std::vector<std::vector<MatrixXcd>> representatives;

  double d2_squared_residual = 0.0;

  int total_dim() const { return m + d; }
  /// h^p(O_X) = sum_{i+j=p} dim E3^{i,j}, p = 0..m+d.
  std::vector<int> h() const;
};

struct FormsDimension {
  int dim = 0;
  MatrixXcd coker_basis;  ///< d x k, columns span the annihilator in U^*
  RankDecision rank;
};

/// h^0(Omega^1_X) = m + dim ann(Im B'').
FormsDimension h0_forms(const DecomposedForm& F);

/// Closed holomorphic 1-forms: m + dim(ann Im B' cap ann Im B'').
FormsDimension closed_forms_dim(const DecomposedForm& F);

/// h^1(O_X) = m + d - rank(B' : U^* -> Lambda^2 V^*).
FormsDimension h1_O(const DecomposedForm& F);

bool is_parallelizable(const DecomposedForm& F);

SpectralTable leray_table(const DecomposedForm& F);

struct ThetaDimension {
  int dim = 0;
  int coker_dim = 0;  ///< of b_{i-1}
  int ker_dim = 0;    ///< of b_i
  RankDecision previous;
  RankDecision next;
};

/// Matrix of b_p : V (x) H^p(O_X) -> U (x) H^{p+1}(O_X) on E3 representatives.
/// Domain index a * h^p + c, codomain index r * h^{p+1} + c.
MatrixXcd theta_map(const DecomposedForm& F, const SpectralTable& table, int p);

/// dim H^i(Theta_X) = dim coker b_{i-1} + dim ker b_i. Throws Domain for i
/// outside 0..m+d.
ThetaDimension theta_cohomology(const DecomposedForm& F, const SpectralTable& table, int i);

enum class KsCase { Trivial, Case1, Case2, Case3 };
std::string to_string(KsCase c);

struct KodairaSpencerReport {
  int h1_theta = 0;
  int target = 0;                 ///< m^2 + m
  std::optional<KsCase> case_label;  ///< only for elliptic fibres (d = 1)
};

KodairaSpencerReport kodaira_spencer_report(const DecomposedForm& F, const SpectralTable& table);

struct NamedRank {
  std::string name;
  RankDecision decision;
};

struct CohomologyReport {
  int m = 0;
  int d = 0;
  std::vector<int> h_O;
  int h0_omega1 = 0;
  int closed_1forms = 0;
  int h1_O = 0;
  bool parallelizable = false;
  std::vector<int> h_theta;
  int ks_target_dim = 0;
  std::optional<KsCase> ks_case;
  SpectralTable table;
  std::vector<NamedRank> ranks;
  std::vector<std::string> warnings;
};

/// Every invariant of one bundle from a single decomposition.
CohomologyReport compute_report(const DecomposedForm& F);
CohomologyReport compute_report(const BundleDatum& D, double tol = kDefaultTolerance);

}  // namespace tbi
