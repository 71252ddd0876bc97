#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tbi {

using IntVector = std::vector<std::int64_t>;

/// Integer alternating tensor A : Gamma x Gamma -> Lambda. Entry (k, i, j)
/// is the k-th Lambda coordinate of A(e_i, e_j). Indices are 0-based in the
/// API and 1-based in diagnostics.
///
/// The object may hold a tensor that is not alternating; validate_form
/// reports that. Ranks are checked on construction.
class ExtensionForm {
 public:
  ExtensionForm() = default;

  /// Zero tensor. Both ranks must be positive and even.
  ExtensionForm(int base_rank, int fibre_rank);

  /// From nested [fibre][base][base] data; throws Parse on ragged input.
  static ExtensionForm from_nested(const std::vector<std::vector<IntVector>>& nested);

  int base_rank() const { return base_rank_; }
  int fibre_rank() const { return fibre_rank_; }
  int base_dim() const { return base_rank_ / 2; }    ///< m
  int fibre_dim() const { return fibre_rank_ / 2; }  ///< d

  std::int64_t at(int k, int i, int j) const { return coeffs_[index(k, i, j)]; }
  void set(int k, int i, int j, std::int64_t v) { coeffs_[index(k, i, j)] = v; }

  /// Sets A(e_i, e_j) = v and A(e_j, e_i) = -v in coordinate k.
  void set_pair(int k, int i, int j, std::int64_t v);

  /// A(x, y) for integer vectors of length base_rank.
  IntVector apply(const IntVector& x, const IntVector& y) const;

  bool is_zero() const;

  std::vector<std::vector<IntVector>> nested() const;

  friend bool operator==(const ExtensionForm&, const ExtensionForm&) = default;

 private:
  std::size_t index(int k, int i, int j) const {
    return (static_cast<std::size_t>(k) * base_rank_ + i) * base_rank_ + j;
  }

  int base_rank_ = 0;
  int fibre_rank_ = 0;
  std::vector<std::int64_t> coeffs_;
};

struct FormViolation {
  enum class Kind { Antisymmetry, Diagonal };
  Kind kind;
  int k, i, j;  ///< 1-based

  std::string describe() const;
};

/// Empty result means the tensor is alternating.
std::vector<FormViolation> validate_form(const ExtensionForm& A);

/// Element (lambda, gamma) of the central extension 1 -> Lambda -> Pi -> Gamma -> 1.
struct GroupElement {
  IntVector lambda;  ///< length fibre_rank
  IntVector gamma;   ///< length base_rank

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

GroupElement identity_element(const ExtensionForm& A);

/// (0, e_i): the lift of the i-th basis vector of Gamma (0-based i).
GroupElement lift_basis(const ExtensionForm& A, int i);

/// The bilinear cocycle c(x, y) = sum_{i<j} x_i y_j A(e_i, e_j). Its
/// alternation c(x, y) - c(y, x) is A(x, y).
IntVector upper_cocycle(const ExtensionForm& A, const IntVector& x, const IntVector& y);

/// (l1, g1)(l2, g2) = (l1 + l2 + c(g1, g2), g1 + g2).
GroupElement group_multiply(const GroupElement& g1, const GroupElement& g2,
                            const ExtensionForm& A);

GroupElement group_inverse(const GroupElement& g, const ExtensionForm& A);

/// g1 g2 g1^-1 g2^-1; central, with lambda part A(gamma1, gamma2).
GroupElement commutator(const GroupElement& g1, const GroupElement& g2,
                        const ExtensionForm& A);

}  // namespace tbi
