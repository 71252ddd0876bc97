#include <doctest.h>

#include <random>

#include "tbi/complex_structure.hpp"
#include "tbi/errors.hpp"

using namespace tbi;

namespace {
const cplx I(0.0, 1.0);

ComplexStructure column(cplx a, cplx b) {
  MatrixXcd p(2, 1);
  p << a, b;
  return ComplexStructure(p);
}
}  // namespace

TEST_CASE("validate_structure examples") {
  CHECK(validate_structure(column(1.0, I)).ok);
  CHECK_FALSE(validate_structure(column(1.0, 0.0)).ok);

  MatrixXcd p = MatrixXcd::Zero(4, 2);
  p(0, 0) = 1.0;
  p(1, 1) = 1.0;
  p(2, 0) = I;
  p(3, 1) = I;
  const ComplexStructure S(p);
  CHECK(validate_structure(S).ok);
  CHECK(std::abs(S.block().determinant() - cplx(-4.0, 0.0)) < 1e-12);
}

TEST_CASE("shape mismatches are parse errors") {
  CHECK_THROWS_AS(ComplexStructure(MatrixXcd::Zero(3, 1)), Error);
  CHECK_THROWS_AS(ComplexStructure(MatrixXcd::Zero(4, 1)), Error);
}

TEST_CASE("basis_change of (1, i)") {
  const MatrixXcd C = basis_change(column(1.0, I));
  MatrixXcd expected(2, 2);
  expected << 0.5, -0.5 * I, 0.5, 0.5 * I;
  CHECK((C - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(basis_change(column(1.0, 0.0)), Error);
}

TEST_CASE("basis_change inverts the block and respects reality") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> N;
  for (int n = 1; n <= 5; ++n)
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const ComplexStructure S = random_structure(n, seed * 31 + n);
      const MatrixXcd C = basis_change(S);
      const double cond = [&] {
        Eigen::JacobiSVD<MatrixXcd> svd(S.block());
        return svd.singularValues()(0) / svd.singularValues()(2 * n - 1);
      }();
      CHECK((C * S.block() - MatrixXcd::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff() <
            10 * kDefaultTolerance);

      VectorXd x(2 * n);
      for (int i = 0; i < 2 * n; ++i) x(i) = N(rng);
      const VectorXcd cx = C * x.cast<cplx>();
      CHECK((cx.head(n).conjugate() - cx.tail(n)).cwiseAbs().maxCoeff() < 1e-12 * cond);

      // Round trip through holomorphic coordinates.
      const VectorXd back = lattice_coordinates(S, holomorphic_coordinates(C, x));
      CHECK((back - x).cwiseAbs().maxCoeff() <
            100 * std::numeric_limits<double>::epsilon() * cond * (1 + x.cwiseAbs().maxCoeff()));

      // V and conj V span everything.
      CHECK(numerical_rank(S.block(), 1e-12 * S.block().norm()).rank == 2 * n);
    }
}

TEST_CASE("random_structure is deterministic and valid") {
  CHECK(random_structure(1, 42) == random_structure(1, 42));
  CHECK_FALSE(random_structure(2, 42) == random_structure(2, 43));
  CHECK(validate_structure(random_structure(3, 9)).ok);
  int valid = 0;
  for (std::uint64_t s = 0; s < 100; ++s) valid += validate_structure(random_structure(2, s)).ok;
  CHECK(valid == 100);
  CHECK_THROWS_AS(random_structure(0, 1), Error);
}

TEST_CASE("charts") {
  MatrixXcd chart(1, 1);
  chart << cplx(0.3, -1.2);
  const ComplexStructure S = ComplexStructure::from_chart(chart);
  CHECK((chart_of(S) - chart).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS(chart_of(column(0.0, 1.0)), Error);
}
