#include "tbi/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tbi/errors.hpp"

namespace tbi {

namespace {

void check_ranks(const ExtensionForm& A, const ComplexStructure& V, const ComplexStructure& U) {
  if (A.base_rank() != 2 * V.half_rank() || A.fibre_rank() != 2 * U.half_rank()) {
    std::ostringstream os;
    os << "rank mismatch: A is " << A.fibre_rank() << "x" << A.base_rank() << "x"
       << A.base_rank() << " but V has half rank " << V.half_rank() << " and U has half rank "
       << U.half_rank();
    throw Error(ErrorKind::Parse, os.str());
  }
}

MatrixXd real_slice(const ExtensionForm& A, int k) {
  const int n = A.base_rank();
  MatrixXd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = static_cast<double>(A.at(k, i, j));
  return out;
}

VectorXd to_real(const IntVector& v) {
  VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = static_cast<double>(v[i]);
  return out;
}

// Full 2d x 2m x 2m complexified tensor assembled from the stored blocks.
std::vector<MatrixXcd> assemble(const DecomposedForm& D) {
  const int m = D.base_dim();
  const int d = D.fibre_dim();
  std::vector<MatrixXcd> T(2 * d, MatrixXcd::Zero(2 * m, 2 * m));
  for (int r = 0; r < d; ++r)
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) {
        T[r](p, q) = D.bprime(r, p, q);
        T[r](p, m + q) = D.bherm(r, p, q);
        T[r](m + q, p) = -D.bherm(r, p, q);
        T[r](m + p, m + q) = D.forbidden(r, p, q);
        T[d + r](m + p, m + q) = D.conj_bprime(r, p, q);
        T[d + r](m + p, q) = D.conj_bherm(r, p, q);
        T[d + r](q, m + p) = -D.conj_bherm(r, p, q);
        T[d + r](p, q) = D.conj_forbidden(r, p, q);
      }
  return T;
}

}  // namespace

DecomposedForm decompose(const ExtensionForm& A, const ComplexStructure& V,
                         const ComplexStructure& U, double tol) {
  check_ranks(A, V, U);
  basis_change(V, tol);  // degeneracy check only
  const MatrixXcd change_u = basis_change(U, tol);
  const MatrixXcd frame_v = V.block();
  const int m = V.half_rank();
  const int d = U.half_rank();

  std::vector<MatrixXcd> slices;
  slices.reserve(A.fibre_rank());
  for (int k = 0; k < A.fibre_rank(); ++k)
    slices.push_back(frame_v.transpose() * real_slice(A, k).cast<cplx>() * frame_v);

  DecomposedForm out;
  out.tol = tol;
  out.bprime = out.bherm = out.forbidden = ComplexTensor3(d, m, m);
  out.conj_bprime = out.conj_bherm = out.conj_forbidden = ComplexTensor3(d, m, m);

  for (int r = 0; r < 2 * d; ++r) {
    MatrixXcd T = MatrixXcd::Zero(2 * m, 2 * m);
    for (int k = 0; k < A.fibre_rank(); ++k) T += change_u(r, k) * slices[k];
    out.scale = std::max(out.scale, max_abs(T));
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) {
        if (r < d) {
          out.bprime(r, p, q) = T(p, q);
          out.bherm(r, p, q) = T(p, m + q);
          out.forbidden(r, p, q) = T(m + p, m + q);
        } else {
          out.conj_bprime(r - d, p, q) = T(m + p, m + q);
          out.conj_bherm(r - d, p, q) = T(m + p, q);
          out.conj_forbidden(r - d, p, q) = T(p, q);
        }
      }
  }
  return out;
}

MatrixXd reconstruct_slice(const DecomposedForm& D, const ComplexStructure& V,
                           const ComplexStructure& U, int k) {
  const std::vector<MatrixXcd> T = assemble(D);
  const MatrixXcd change_v = basis_change(V, D.tol);
  const MatrixXcd frame_u = U.block();
  MatrixXcd acc = MatrixXcd::Zero(change_v.rows(), change_v.cols());
  for (std::size_t r = 0; r < T.size(); ++r) acc += frame_u(k, static_cast<Eigen::Index>(r)) * T[r];
  return (change_v.transpose() * acc * change_v).real();
}

double reconstruction_error(const DecomposedForm& D, const ExtensionForm& A,
                            const ComplexStructure& V, const ComplexStructure& U) {
  double err = 0.0;
  for (int k = 0; k < A.fibre_rank(); ++k) {
    const MatrixXd diff = reconstruct_slice(D, V, U, k) - real_slice(A, k);
    err = std::max(err, diff.cwiseAbs().maxCoeff());
  }
  return err;
}

bool RiemannVerdict::ambiguous() const {
  if (threshold <= 0.0) return false;
  return residual_norm > threshold / 10.0 && residual_norm < threshold * 10.0;
}

RiemannVerdict riemann_verdict(const DecomposedForm& D) {
  RiemannVerdict out;
  out.residual_norm = D.forbidden.max_abs();
  out.threshold = D.tol * D.scale;
  out.member = out.residual_norm <= out.threshold;
  return out;
}

RiemannVerdict riemann_check(const ExtensionForm& A, const ComplexStructure& V,
                             const ComplexStructure& U, double tol) {
  return riemann_verdict(decompose(A, V, U, tol));
}

void validate_bundle(const BundleDatum& D, double tol) {
  check_ranks(D.A, D.V, D.U);
  const auto violations = validate_form(D.A);
  if (!violations.empty()) throw Error(ErrorKind::Form, violations.front().describe());
  for (const ComplexStructure* S : {&D.V, &D.U}) {
    const StructureCheck c = validate_structure(*S, tol);
    if (!c.ok) {
      std::ostringstream os;
      os << (S == &D.V ? "V" : "U") << " is degenerate: singular value ratio " << c.ratio();
      throw Error(ErrorKind::Structure, os.str());
    }
  }
  if (D.phi) {
    if (D.phi->rows() != D.U.half_rank() || D.phi->cols() != D.A.base_rank())
      throw Error(ErrorKind::Parse, "phi must be d x 2m");
  }
  const RiemannVerdict r = riemann_check(D.A, D.V, D.U, tol);
  if (!r.member) {
    std::ostringstream os;
    os << "first Riemann relation fails: forbidden component " << r.residual_norm
       << " exceeds threshold " << r.threshold;
    throw Error(ErrorKind::Riemann, os.str());
  }
}

namespace {

struct CocycleContext {
  DecomposedForm form;
  MatrixXcd change_v;
  MatrixXcd change_u;
};

CocycleContext make_context(const BundleDatum& D, double tol) {
  return {decompose(D.A, D.V, D.U, tol), basis_change(D.V, tol), basis_change(D.U, tol)};
}

// sum_{p,q} B'(r, p, q) a_p b_q
VectorXcd bprime_apply(const DecomposedForm& F, const VectorXcd& a, const VectorXcd& b) {
  const int d = F.fibre_dim(), m = F.base_dim();
  VectorXcd out = VectorXcd::Zero(d);
  for (int r = 0; r < d; ++r)
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) out(r) += F.bprime(r, p, q) * a(p) * b(q);
  return out;
}

// sum_{p,q} B''(r, p, q) a_p conj(b_q)
VectorXcd bherm_apply(const DecomposedForm& F, const VectorXcd& a, const VectorXcd& b) {
  const int d = F.fibre_dim(), m = F.base_dim();
  VectorXcd out = VectorXcd::Zero(d);
  for (int r = 0; r < d; ++r)
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) out(r) += F.bherm(r, p, q) * a(p) * std::conj(b(q));
  return out;
}

VectorXcd eval_with(const CocycleContext& ctx, const BundleDatum& D, const IntVector& gamma,
                    const VectorXcd& z) {
  const VectorXd x = to_real(gamma);
  const VectorXcd g = holomorphic_coordinates(ctx.change_v, x);
  const IntVector cgg = upper_cocycle(D.A, gamma, gamma);
  const VectorXcd lattice_term = holomorphic_coordinates(ctx.change_u, to_real(cgg));

  VectorXcd out = -0.5 * bprime_apply(ctx.form, z, g) - bherm_apply(ctx.form, z, g) -
                  0.5 * bherm_apply(ctx.form, g, g) - 0.5 * lattice_term;
  if (D.phi) out += *D.phi * x.cast<cplx>();
  return out;
}

void check_point(const BundleDatum& D, const IntVector& gamma, const VectorXcd& z) {
  if (static_cast<int>(gamma.size()) != D.A.base_rank())
    throw Error(ErrorKind::Parse, "gamma has wrong length");
  if (z.size() != D.V.half_rank()) throw Error(ErrorKind::Parse, "z has wrong length");
}

}  // namespace

VectorXcd cocycle_eval(const BundleDatum& D, const IntVector& gamma, const VectorXcd& z,
                       double tol) {
  check_point(D, gamma, z);
  return eval_with(make_context(D, tol), D, gamma, z);
}

VectorXcd cocycle_defect(const BundleDatum& D, const IntVector& gamma1, const IntVector& gamma2,
                         const VectorXcd& z, double tol) {
  check_point(D, gamma1, z);
  check_point(D, gamma2, z);
  const CocycleContext ctx = make_context(D, tol);
  IntVector sum(gamma1.size());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = gamma1[i] + gamma2[i];
  const VectorXcd shifted = z + holomorphic_coordinates(ctx.change_v, to_real(gamma2));
  return eval_with(ctx, D, sum, z) - eval_with(ctx, D, gamma1, shifted) -
         eval_with(ctx, D, gamma2, z);
}

std::pair<VectorXcd, VectorXcd> deck_action(const BundleDatum& D, const GroupElement& g,
                                            const VectorXcd& z, const VectorXcd& u, double tol) {
  check_point(D, g.gamma, z);
  if (static_cast<int>(g.lambda.size()) != D.A.fibre_rank() || u.size() != D.U.half_rank())
    throw Error(ErrorKind::Parse, "fibre data has wrong length");
  const CocycleContext ctx = make_context(D, tol);
  VectorXcd z2 = z + holomorphic_coordinates(ctx.change_v, to_real(g.gamma));
  VectorXcd u2 = u + holomorphic_coordinates(ctx.change_u, to_real(g.lambda)) +
                 eval_with(ctx, D, g.gamma, z);
  return {std::move(z2), std::move(u2)};
}

LatticeProjection nearest_lattice_vector(const ComplexStructure& U, const VectorXcd& u) {
  const VectorXd x = lattice_coordinates(U, u);
  LatticeProjection out;
  out.nearest.resize(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double r = std::round(x(i));
    out.nearest[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(r);
    out.distance = std::max(out.distance, std::abs(x(i) - r));
  }
  return out;
}

}  // namespace tbi
