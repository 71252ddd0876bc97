#pragma once

#include <optional>

#include "tbi/complex_structure.hpp"
#include "tbi/lattice.hpp"

namespace tbi {

/// The six complex components of a real extension tensor in the splitting
/// Gamma (x) C = V + conj V, Lambda (x) C = U + conj U. All blocks have
/// shape d x m x m; the first index is a U (or conj U) coordinate.
struct DecomposedForm {
  ComplexTensor3 bprime;     ///< Lambda^2 V^* (x) U, antisymmetric in the V slots
  ComplexTensor3 bherm;      ///< (V (x) conj V)^* (x) U; entry (r, p, q) pairs v_p with conj v_q
  ComplexTensor3 forbidden;  ///< Lambda^2 conj V^* (x) U; vanishes on the parameter variety

  ComplexTensor3 conj_bprime;     ///< conj U-component on (conj V, conj V)
  ComplexTensor3 conj_bherm;      ///< conj U-component on (conj V, V)
  ComplexTensor3 conj_forbidden;  ///< conj U-component on (V, V)

  double scale = 0.0;  ///< max-norm of the complexified tensor
  double tol = kDefaultTolerance;

  int base_dim() const { return bprime.dim1(); }
  int fibre_dim() const { return bprime.dim0(); }

  bool bprime_vanishes() const { return bprime.max_abs() <= tol * scale; }
  bool bherm_vanishes() const { return bherm.max_abs() <= tol * scale; }
};

/// Complexifies A: input slots through (Omega_V | conj Omega_V), output slot
/// through basis_change(U). Throws Parse on rank mismatch and Structure on
/// degenerate structures.
DecomposedForm decompose(const ExtensionForm& A, const ComplexStructure& V,
                         const ComplexStructure& U, double tol = kDefaultTolerance);

/// Maps the six blocks back to lattice coordinates (real part of the result).
MatrixXd reconstruct_slice(const DecomposedForm& D, const ComplexStructure& V,
                           const ComplexStructure& U, int k);

/// max |reconstructed - A| over all entries.
double reconstruction_error(const DecomposedForm& D, const ExtensionForm& A,
                            const ComplexStructure& V, const ComplexStructure& U);

struct RiemannVerdict {
  bool member = false;
  double residual_norm = 0.0;  ///< max-norm of the forbidden block
  double threshold = 0.0;      ///< tol * scale

  /// Residual within a factor of ten of the threshold on either side.
  bool ambiguous() const;
};

/// First Riemann relation: the Lambda^2 conj V^* (x) U component of A vanishes.
RiemannVerdict riemann_check(const ExtensionForm& A, const ComplexStructure& V,
                             const ComplexStructure& U, double tol = kDefaultTolerance);
RiemannVerdict riemann_verdict(const DecomposedForm& D);

/// One member (A, V, U, phi) of the complete Appell-Humbert family. phi holds
/// the constant translation cocycle: column i is phi(e_i) in U-coordinates.
struct BundleDatum {
  ExtensionForm A;
  ComplexStructure V;
  ComplexStructure U;
  std::optional<MatrixXcd> phi;  ///< d x 2m
};

/// Checks ranks, form, structures and the Riemann relation; throws the
/// matching Error on the first failure.
void validate_bundle(const BundleDatum& D, double tol = kDefaultTolerance);

/// Normal-form lift F_gamma(z) of the classifying cocycle, in U-coordinates:
///
///   F_gamma(z) = -(1/2) B'(z, g) - H(z, gamma) - (1/2) H(g, gamma)
///                - (1/2) p_U c(gamma, gamma) + phi(gamma)
///
/// where g = p_V(gamma), H(z, gamma) = sum B''(z, conj g) and c is the upper
/// cocycle of the lattice module. The quadratic gamma-only terms make the
/// defect below an exact lattice vector, namely -p_U c(gamma1, gamma2), so
/// that the deck transformations reproduce group_multiply.
VectorXcd cocycle_eval(const BundleDatum& D, const IntVector& gamma, const VectorXcd& z,
                       double tol = kDefaultTolerance);

/// F_{g1+g2}(z) - F_{g1}(z + p_V g2) - F_{g2}(z).
VectorXcd cocycle_defect(const BundleDatum& D, const IntVector& gamma1, const IntVector& gamma2,
                         const VectorXcd& z, double tol = kDefaultTolerance);

/// Action of (lambda, gamma) on the universal cover V x U:
/// (z, u) -> (z + p_V gamma, u + p_U lambda + F_gamma(z)).
std::pair<VectorXcd, VectorXcd> deck_action(const BundleDatum& D, const GroupElement& g,
                                            const VectorXcd& z, const VectorXcd& u,
                                            double tol = kDefaultTolerance);

/// Nearest lattice vector to a U-coordinate vector and the distance to it,
/// measured in lattice coordinates (max-norm).
struct LatticeProjection {
  IntVector nearest;
  double distance = 0.0;
};
LatticeProjection nearest_lattice_vector(const ComplexStructure& U, const VectorXcd& u);

}  // namespace tbi
