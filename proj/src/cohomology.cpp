#include "tbi/cohomology.hpp"

#include <algorithm>
#include <sstream>

#include "tbi/errors.hpp"
#include "tbi/exterior.hpp"

namespace tbi {

namespace {

double rank_threshold(const DecomposedForm& F) { return F.tol * F.scale; }

// Rows of `flat` are the U-slices of a tensor; beta in U^* annihilates its
// image iff flat^T beta = 0.
FormsDimension annihilator(const MatrixXcd& flat, const DecomposedForm& F) {
  FormsDimension out;
  out.rank = numerical_rank(flat, rank_threshold(F));
  out.coker_basis = null_space(flat.transpose(), rank_threshold(F));
  out.dim = F.base_dim() + static_cast<int>(out.coker_basis.cols());
  return out;
}

// Offsets of the (i, p - i) blocks inside H^p, in order of increasing i.
struct DegreeLayout {
  std::vector<int> offset;  // indexed by i, -1 when the block is absent
  int size = 0;
};

DegreeLayout layout(const SpectralTable& t, int p) {
  DegreeLayout out;
  out.offset.assign(static_cast<std::size_t>(t.m + 1), -1);
  if (p < 0 || p > t.m + t.d) return out;
  for (int i = std::max(0, p - t.d); i <= std::min(p, t.m); ++i) {
    out.offset[static_cast<std::size_t>(i)] = out.size;
    out.size += static_cast<int>(t.representatives[i][p - i].cols());
  }
  return out;
}

}  // namespace

std::vector<int> SpectralTable::h() const {
  std::vector<int> out(static_cast<std::size_t>(m + d + 1), 0);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= d; ++j) out[static_cast<std::size_t>(i + j)] += e3[i][j];
  return out;
}

FormsDimension h0_forms(const DecomposedForm& F) { return annihilator(F.bherm.flatten(), F); }

FormsDimension closed_forms_dim(const DecomposedForm& F) {
  const MatrixXcd a = F.bprime.flatten();
  const MatrixXcd b = F.bherm.flatten();
  MatrixXcd both(a.rows(), a.cols() + b.cols());
  both << a, b;
  return annihilator(both, F);
}

FormsDimension h1_O(const DecomposedForm& F) { return annihilator(F.bprime.flatten(), F); }

bool is_parallelizable(const DecomposedForm& F) { return F.bherm_vanishes(); }

SpectralTable leray_table(const DecomposedForm& F) {
  SpectralTable t;
  t.m = F.base_dim();
  t.d = F.fibre_dim();
  const int m = t.m, d = t.d;
  const double thr = rank_threshold(F);

  std::vector<WedgeBasis> vb, ub;
  for (int i = 0; i <= m; ++i) vb.emplace_back(m, i);
  for (int j = 0; j <= d; ++j) ub.emplace_back(d, j);

  t.e2.assign(m + 1, std::vector<int>(d + 1, 0));
  t.e3 = t.e2;
  t.d2.assign(m + 1, std::vector<MatrixXcd>(d + 1));
  t.d2_rank.assign(m + 1, std::vector<RankDecision>(d + 1));
  t.representatives.assign(m + 1, std::vector<MatrixXcd>(d + 1));
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= d; ++j) t.e2[i][j] = vb[i].size() * ub[j].size();

  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= d; ++j) {
      const bool inside = j >= 1 && i + 2 <= m;
      const int rows = inside ? t.e2[i + 2][j - 1] : 0;
      MatrixXcd map = MatrixXcd::Zero(rows, t.e2[i][j]);
      if (inside) {
        const int n_src = ub[j].size();
        const int n_dst = ub[j - 1].size();
        for (int s = 0; s < vb[i].size(); ++s)
          for (int u = 0; u < n_src; ++u) {
            const std::uint32_t S = vb[i].mask(s);
            const std::uint32_t T = ub[j].mask(u);
            const int col = s * n_src + u;
            for (int r = 0; r < d; ++r) {
              const int cs = contraction_sign(T, r);
              if (cs == 0) continue;
              const int t_dst = ub[j - 1].index_of(T & ~(1U << r));
              for (int p = 0; p < m; ++p)
                for (int q = p + 1; q < m; ++q) {
                  const int w1 = wedge_sign(S, q);
                  if (w1 == 0) continue;
                  const std::uint32_t S1 = S | (1U << q);
                  const int w2 = wedge_sign(S1, p);
                  if (w2 == 0) continue;
                  const int s_dst = vb[i + 2].index_of(S1 | (1U << p));
                  map(s_dst * n_dst + t_dst, col) +=
                      std::conj(F.bprime(r, p, q)) * static_cast<double>(cs * w1 * w2);
                }
            }
          }
      }
      t.d2_rank[i][j] = numerical_rank(map, thr);
      t.d2[i][j] = std::move(map);
    }

  for (int i = 0; i + 4 <= m; ++i)
    for (int j = 2; j <= d; ++j)
      t.d2_squared_residual =
          std::max(t.d2_squared_residual, max_abs(t.d2[i + 2][j - 1] * t.d2[i][j]));

  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= d; ++j) {
      const MatrixXcd kernel = null_space(t.d2[i][j], thr);
      MatrixXcd image(t.e2[i][j], 0);
      if (i >= 2 && j + 1 <= d) image = column_space(t.d2[i - 2][j + 1], thr);
      t.representatives[i][j] = orthogonal_complement_in(kernel, image);
      t.e3[i][j] = static_cast<int>(t.representatives[i][j].cols());
    }
  return t;
}

MatrixXcd theta_map(const DecomposedForm& F, const SpectralTable& t, int p) {
  const int m = t.m, d = t.d;
  const DegreeLayout src = layout(t, p);
  const DegreeLayout dst = layout(t, p + 1);
  MatrixXcd out = MatrixXcd::Zero(static_cast<Eigen::Index>(d) * dst.size,
                                  static_cast<Eigen::Index>(m) * src.size);
  if (src.size == 0 || dst.size == 0) return out;

  for (int i = std::max(0, p - d); i <= std::min(p, m - 1); ++i) {
    const int j = p - i;
    const MatrixXcd& reps = t.representatives[i][j];
    const MatrixXcd& target = t.representatives[i + 1][j];
    if (reps.cols() == 0 || target.cols() == 0) continue;
    const WedgeBasis vb(m, i), vb_up(m, i + 1);
    const int nT = static_cast<int>(binomial(d, j));
    for (int a = 0; a < m; ++a)
      for (Eigen::Index c = 0; c < reps.cols(); ++c)
        for (int r = 0; r < d; ++r) {
          // contract v_a into B'' and wedge the resulting conj V^* factor in front
          VectorXcd x = VectorXcd::Zero(t.e2[i + 1][j]);
          for (int s = 0; s < vb.size(); ++s)
            for (int u = 0; u < nT; ++u) {
              const cplx coeff = reps(s * nT + u, c);
              if (coeff == cplx(0.0, 0.0)) continue;
              for (int q = 0; q < m; ++q) {
                const int w = wedge_sign(vb.mask(s), q);
                if (w == 0) continue;
                const int s_up = vb_up.index_of(vb.mask(s) | (1U << q));
                x(s_up * nT + u) += F.bherm(r, a, q) * coeff * static_cast<double>(w);
              }
            }
          const VectorXcd y = target.adjoint() * x;
          const Eigen::Index row0 = static_cast<Eigen::Index>(r) * dst.size + dst.offset[i + 1];
          const Eigen::Index col = static_cast<Eigen::Index>(a) * src.size + src.offset[i] + c;
          out.block(row0, col, y.size(), 1) = y;
        }
  }
  return out;
}

ThetaDimension theta_cohomology(const DecomposedForm& F, const SpectralTable& t, int i) {
  const int n = t.m + t.d;
  if (i < 0 || i > n) {
    std::ostringstream os;
    os << "theta_cohomology: degree " << i << " outside 0.." << n;
    throw Error(ErrorKind::Domain, os.str());
  }
  const std::vector<int> h = t.h();
  const double thr = rank_threshold(F);
  ThetaDimension out;
  if (i >= 1) out.previous = numerical_rank(theta_map(F, t, i - 1), thr);
  out.next = numerical_rank(theta_map(F, t, i), thr);
  out.coker_dim = t.d * h[i] - out.previous.rank;
  out.ker_dim = t.m * h[i] - out.next.rank;
  out.dim = out.coker_dim + out.ker_dim;
  return out;
}

std::string to_string(KsCase c) {
  switch (c) {
    case KsCase::Trivial: return "trivial";
    case KsCase::Case1: return "case1";
    case KsCase::Case2: return "case2";
    case KsCase::Case3: return "case3";
  }
  return "unknown";
}

KodairaSpencerReport kodaira_spencer_report(const DecomposedForm& F, const SpectralTable& t) {
  KodairaSpencerReport out;
  out.h1_theta = theta_cohomology(F, t, 1).dim;
  out.target = t.m * t.m + t.m;
  if (t.d == 1) {
    const bool bp = F.bprime_vanishes();
    const bool bh = F.bherm_vanishes();
    if (bp && bh)
      out.case_label = KsCase::Trivial;
    else if (bh)
      out.case_label = KsCase::Case1;
    else if (!bp)
      out.case_label = KsCase::Case2;
    else
      out.case_label = KsCase::Case3;
  }
  return out;
}

CohomologyReport compute_report(const DecomposedForm& F) {
  CohomologyReport out;
  out.m = F.base_dim();
  out.d = F.fibre_dim();
  out.table = leray_table(F);
  out.h_O = out.table.h();

  const FormsDimension forms = h0_forms(F);
  const FormsDimension closed = closed_forms_dim(F);
  const FormsDimension h1 = h1_O(F);
  out.h0_omega1 = forms.dim;
  out.closed_1forms = closed.dim;
  out.h1_O = h1.dim;
  out.parallelizable = is_parallelizable(F);
  out.ranks.push_back({"bherm", forms.rank});
  out.ranks.push_back({"bprime_bherm", closed.rank});
  out.ranks.push_back({"bprime", h1.rank});

  const int n = out.m + out.d;
  for (int i = 0; i <= n; ++i) {
    const ThetaDimension th = theta_cohomology(F, out.table, i);
    out.h_theta.push_back(th.dim);
    out.ranks.push_back({"b_" + std::to_string(i), th.next});
  }
  for (int i = 0; i <= out.m; ++i)
    for (int j = 0; j <= out.d; ++j)
      if (out.table.d2[i][j].rows() > 0)
        out.ranks.push_back({"d2_" + std::to_string(i) + "_" + std::to_string(j),
                             out.table.d2_rank[i][j]});

  const KodairaSpencerReport ks = kodaira_spencer_report(F, out.table);
  out.ks_target_dim = ks.target;
  out.ks_case = ks.case_label;

  for (const auto& r : out.ranks)
    if (r.decision.near_threshold())
      out.warnings.push_back("rank decision '" + r.name + "' is within 10x of the threshold");
  if (out.table.h()[1] != out.h1_O)
    out.warnings.push_back("h1 from the spectral table disagrees with the direct formula");
  return out;
}

CohomologyReport compute_report(const BundleDatum& D, double tol) {
  validate_bundle(D, tol);
  return compute_report(decompose(D.A, D.V, D.U, tol));
}

}  // namespace tbi
