#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "pmsq/qm.hpp"
#include "test_support.hpp"

namespace pmsq {
namespace {

using testing::C;

constexpr PauliLabel kAll[] = {PauliLabel::I, PauliLabel::X, PauliLabel::Y, PauliLabel::Z};

TEST(PauliTensor, MatchesKroneckerOracle) {
  for (auto l : kAll) {
    for (auto r : kAll) {
      const auto oracle = testing::kron(testing::pauli2(to_char(l)), testing::pauli2(to_char(r)));
      EXPECT_LT(testing::max_diff(oracle, pauli_tensor(l, r)), 1e-15) << to_char(l) << to_char(r);
    }
  }
}

TEST(PauliTensor, YYHandEntries) {
  const auto yy = pauli_tensor(PauliLabel::Y, PauliLabel::Y);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      C expected{};
      if (r == 0 && c == 3) expected = -1.0;
      if (r == 1 && c == 2) expected = 1.0;
      if (r == 2 && c == 1) expected = 1.0;
      if (r == 3 && c == 0) expected = -1.0;
      EXPECT_EQ(yy(r, c), expected) << r << "," << c;
    }
  }
}

TEST(PauliTensor, AllHermitianAndSquareToIdentity) {
  for (auto l : kAll) {
    for (auto r : kAll) {
      const auto p = pauli_tensor(l, r);
      EXPECT_TRUE(p.is_hermitian());
      EXPECT_LT(max_abs_diff(p * p, TwoQubitOperator::identity()), 1e-15);
    }
  }
}

TEST(Commutator, ZIWithXIIsTwoITimesYI) {
  const auto lhs = commutator(pauli_tensor(PauliLabel::Z, PauliLabel::I), pauli_tensor(PauliLabel::X, PauliLabel::I));
  const auto rhs = C{0.0, 2.0} * pauli_tensor(PauliLabel::Y, PauliLabel::I);
  EXPECT_LT(max_abs_diff(lhs, rhs), 1e-15);
}

TEST(Commutator, OppositeSidesCommute) {
  for (auto l : kAll)
    for (auto r : kAll) EXPECT_TRUE(is_zero(commutator(single_side(l, true), single_side(r, false))));
}

TEST(Ket, RejectsUnnormalized) {
  EXPECT_THROW(Ket(Vec4{1.0, 1.0, 0.0, 0.0}), InvalidStateError);
  EXPECT_THROW(Ket(Vec4{0.0, 0.0, 0.0, 0.0}, Normalize::kRenormalize), InvalidStateError);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(Ket(Vec4{nan, 0.0, 0.0, 0.0}, Normalize::kRenormalize), InvalidStateError);
}

TEST(Ket, RenormalizesOnRequest) {
  const Ket k(Vec4{3.0, 0.0, 0.0, C{0.0, 4.0}}, Normalize::kRenormalize);
  EXPECT_NEAR(squared_norm(k.components()), 1.0, 1e-15);
  EXPECT_NEAR(k[0].real(), 0.6, 1e-15);
  EXPECT_NEAR(k[3].imag(), 0.8, 1e-15);
}

TEST(Ket, AcceptsWithinNormTolerance) {
  EXPECT_NO_THROW(Ket(Vec4{1.0 + 1e-11, 0.0, 0.0, 0.0}));
}

TEST(Born, HandComputedOverlaps) {
  const double h = 1.0 / std::sqrt(2.0);
  // (|00> - |11>)/sqrt2 against |00>.
  const Ket bell(Vec4{h, 0.0, 0.0, -h});
  EXPECT_NEAR(born_probability(bell, Ket::basis(0)), 0.5, 1e-15);
  // |++> against |00>.
  const Ket pp = product_ket({h, h}, {h, h});
  EXPECT_NEAR(born_probability(pp, Ket::basis(0)), 0.25, 1e-15);
  // |+>|(|0> + i|1>)/sqrt2> against |00>: 1/4 regardless of phases.
  const Ket py = product_ket({h, h}, {h, C{0.0, h}});
  EXPECT_NEAR(born_probability(py, Ket::basis(0)), 0.25, 1e-15);
}

TEST(Expectation, HandValues) {
  const Ket k00 = Ket::basis(0);
  EXPECT_NEAR(expectation(k00, pauli_tensor(PauliLabel::Z, PauliLabel::X)), 0.0, 1e-15);
  EXPECT_NEAR(expectation(k00, pauli_tensor(PauliLabel::Z, PauliLabel::Z)), 1.0, 1e-15);
  const Vec4 yy00 = apply(pauli_tensor(PauliLabel::Y, PauliLabel::Y), k00);
  EXPECT_EQ(yy00[0], C{});
  EXPECT_EQ(yy00[3], C{-1.0});
}

TEST(Expectation, RejectsNonHermitian) {
  TwoQubitOperator op;
  op(0, 1) = 1.0;
  EXPECT_THROW(expectation(Ket::basis(0), op), std::invalid_argument);
}

TEST(Expectation, MatchesOracleOnRandomStates) {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 100; ++n) {
    const Ket s = testing::random_state(rng);
    for (auto l : kAll) {
      for (auto r : kAll) {
        const auto oracle = testing::kron(testing::pauli2(to_char(l)), testing::pauli2(to_char(r)));
        EXPECT_NEAR(expectation(s, pauli_tensor(l, r)), testing::quad_form(oracle, s.components()), 1e-12);
      }
    }
  }
}

TEST(SideProjector, IsProjectorAndSumsToIdentity) {
  for (auto axis : {PauliLabel::X, PauliLabel::Y, PauliLabel::Z}) {
    for (bool left : {true, false}) {
      const auto p = side_projector(axis, left, +1);
      const auto m = side_projector(axis, left, -1);
      EXPECT_LT(max_abs_diff(p * p, p), 1e-15);
      EXPECT_LT(max_abs_diff(p + m, TwoQubitOperator::identity()), 1e-15);
      EXPECT_TRUE(is_zero(p * m));
    }
  }
}

TEST(Outer, ProjectorOfRandomKet) {
  std::mt19937_64 rng(3);
  const Ket s = testing::random_state(rng);
  const auto p = outer(s);
  EXPECT_LT(max_abs_diff(p * p, p), 1e-14);
  EXPECT_NEAR(expectation(s, p), 1.0, 1e-14);
}

TEST(PauliChar, RoundTrip) {
  for (auto p : kAll) EXPECT_EQ(pauli_from_char(to_char(p)), p);
  EXPECT_THROW(pauli_from_char('Q'), std::invalid_argument);
}

}  // namespace
}  // namespace pmsq
