#include "tbi/lattice.hpp"

#include <sstream>

#include "tbi/errors.hpp"

namespace tbi {

namespace {

void require_rank(int rank, const char* what) {
  if (rank <= 0 || rank % 2 != 0) {
    std::ostringstream os;
    os << what << " must be positive and even, got " << rank;
    throw Error(ErrorKind::Parse, os.str());
  }
}

void require_length(const IntVector& v, int n, const char* what) {
  if (static_cast<int>(v.size()) != n) {
    std::ostringstream os;
    os << what << " has length " << v.size() << ", expected " << n;
    throw Error(ErrorKind::Parse, os.str());
  }
}

void check_element(const GroupElement& g, const ExtensionForm& A) {
  require_length(g.lambda, A.fibre_rank(), "lambda");
  require_length(g.gamma, A.base_rank(), "gamma");
}

}  // namespace

ExtensionForm::ExtensionForm(int base_rank, int fibre_rank)
    : base_rank_(base_rank), fibre_rank_(fibre_rank) {
  require_rank(base_rank, "base rank");
  require_rank(fibre_rank, "fibre rank");
  coeffs_.assign(static_cast<std::size_t>(fibre_rank) * base_rank * base_rank, 0);
}

ExtensionForm ExtensionForm::from_nested(const std::vector<std::vector<IntVector>>& nested) {
  const int fibre = static_cast<int>(nested.size());
  if (fibre == 0) throw Error(ErrorKind::Parse, "extension tensor is empty");
  const int base = static_cast<int>(nested.front().size());
  ExtensionForm A(base, fibre);
  for (int k = 0; k < fibre; ++k) {
    if (static_cast<int>(nested[k].size()) != base) {
      std::ostringstream os;
      os << "extension tensor slice " << k + 1 << " has " << nested[k].size()
         << " rows, expected " << base;
      throw Error(ErrorKind::Parse, os.str());
    }
    for (int i = 0; i < base; ++i) {
      if (static_cast<int>(nested[k][i].size()) != base) {
        std::ostringstream os;
        os << "extension tensor row (" << k + 1 << "," << i + 1 << ") has "
           << nested[k][i].size() << " entries, expected " << base;
        throw Error(ErrorKind::Parse, os.str());
      }
      for (int j = 0; j < base; ++j) A.set(k, i, j, nested[k][i][j]);
    }
  }
  return A;
}

void ExtensionForm::set_pair(int k, int i, int j, std::int64_t v) {
  set(k, i, j, v);
  set(k, j, i, -v);
}

IntVector ExtensionForm::apply(const IntVector& x, const IntVector& y) const {
  require_length(x, base_rank_, "gamma");
  require_length(y, base_rank_, "gamma");
  IntVector out(fibre_rank_, 0);
  for (int k = 0; k < fibre_rank_; ++k)
    for (int i = 0; i < base_rank_; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < base_rank_; ++j) out[k] += x[i] * at(k, i, j) * y[j];
    }
  return out;
}

bool ExtensionForm::is_zero() const {
  for (auto v : coeffs_)
    if (v != 0) return false;
  return true;
}

std::vector<std::vector<IntVector>> ExtensionForm::nested() const {
  std::vector<std::vector<IntVector>> out(fibre_rank_,
                                          std::vector<IntVector>(base_rank_, IntVector(base_rank_)));
  for (int k = 0; k < fibre_rank_; ++k)
    for (int i = 0; i < base_rank_; ++i)
      for (int j = 0; j < base_rank_; ++j) out[k][i][j] = at(k, i, j);
  return out;
}

std::string FormViolation::describe() const {
  std::ostringstream os;
  if (kind == Kind::Diagonal)
    os << "nonzero diagonal entry at (k,i,j)=(" << k << "," << i << "," << j << ")";
  else
    os << "antisymmetry fails at (k,i,j)=(" << k << "," << i << "," << j << ")";
  return os.str();
}

std::vector<FormViolation> validate_form(const ExtensionForm& A) {
  std::vector<FormViolation> out;
  const int n = A.base_rank();
  for (int k = 0; k < A.fibre_rank(); ++k)
    for (int i = 0; i < n; ++i) {
      if (A.at(k, i, i) != 0)
        out.push_back({FormViolation::Kind::Diagonal, k + 1, i + 1, i + 1});
      for (int j = i + 1; j < n; ++j)
        if (A.at(k, i, j) != -A.at(k, j, i))
          out.push_back({FormViolation::Kind::Antisymmetry, k + 1, i + 1, j + 1});
    }
  return out;
}

GroupElement identity_element(const ExtensionForm& A) {
  return {IntVector(A.fibre_rank(), 0), IntVector(A.base_rank(), 0)};
}

GroupElement lift_basis(const ExtensionForm& A, int i) {
  if (i < 0 || i >= A.base_rank()) throw Error(ErrorKind::Domain, "basis index out of range");
  GroupElement g = identity_element(A);
  g.gamma[i] = 1;
  return g;
}

IntVector upper_cocycle(const ExtensionForm& A, const IntVector& x, const IntVector& y) {
  require_length(x, A.base_rank(), "gamma");
  require_length(y, A.base_rank(), "gamma");
  IntVector out(A.fibre_rank(), 0);
  const int n = A.base_rank();
  for (int k = 0; k < A.fibre_rank(); ++k)
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (int j = i + 1; j < n; ++j) out[k] += x[i] * y[j] * A.at(k, i, j);
    }
  return out;
}

GroupElement group_multiply(const GroupElement& g1, const GroupElement& g2,
                            const ExtensionForm& A) {
  check_element(g1, A);
  check_element(g2, A);
  GroupElement out{upper_cocycle(A, g1.gamma, g2.gamma), g1.gamma};
  for (std::size_t k = 0; k < out.lambda.size(); ++k) out.lambda[k] += g1.lambda[k] + g2.lambda[k];
  for (std::size_t i = 0; i < out.gamma.size(); ++i) out.gamma[i] += g2.gamma[i];
  return out;
}

GroupElement group_inverse(const GroupElement& g, const ExtensionForm& A) {
  check_element(g, A);
  // (l, g)(l', -g) = (l + l' - c(g, g), 0)
  GroupElement out{upper_cocycle(A, g.gamma, g.gamma), g.gamma};
  for (std::size_t k = 0; k < out.lambda.size(); ++k) out.lambda[k] -= g.lambda[k];
  for (auto& v : out.gamma) v = -v;
  return out;
}

GroupElement commutator(const GroupElement& g1, const GroupElement& g2, const ExtensionForm& A) {
  const GroupElement a = group_multiply(g1, g2, A);
  const GroupElement b = group_multiply(a, group_inverse(g1, A), A);
  return group_multiply(b, group_inverse(g2, A), A);
}

}  // namespace tbi
