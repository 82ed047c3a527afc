#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "pmsq/feasibility.hpp"

namespace pmsq {
namespace {

LinearSystem system_of(std::size_t n, std::vector<std::pair<std::vector<double>, double>> rows) {
  LinearSystem s;
  s.num_vars = n;
  for (auto& [c, b] : rows) s.eq_rows.push_back({std::move(c), b});
  return s;
}

void expect_valid_point(const LinearSystem& s, const FeasibilityResult& r) {
  ASSERT_TRUE(r.feasible());
  ASSERT_EQ(r.point.size(), s.num_vars);
  for (double v : r.point) EXPECT_GE(v, -1e-12);
  EXPECT_LE(max_residual(s, r.point), 1e-9);
}

TEST(Solve, SingleVariableFeasible) {
  const auto s = system_of(1, {{{1.0}, 1.0}});
  const auto r = solve(s);
  expect_valid_point(s, r);
  EXPECT_NEAR(r.point[0], 1.0, 1e-12);
}

TEST(Solve, SingleVariableNegativeRhsInfeasible) {
  const auto s = system_of(1, {{{1.0}, -1.0}});
  const auto r = solve(s);
  ASSERT_FALSE(r.feasible());
  ASSERT_EQ(r.certificate.size(), 1u);
  EXPECT_LT(r.certificate[0], 0.0);
  EXPECT_TRUE(is_farkas_certificate(s, r.certificate));
}

TEST(Solve, ContradictoryRows) {
  const auto s = system_of(2, {{{1.0, 1.0}, 1.0}, {{1.0, 1.0}, 2.0}});
  const auto r = solve(s);
  ASSERT_FALSE(r.feasible());
  EXPECT_TRUE(is_farkas_certificate(s, r.certificate));
  EXPECT_GT(r.phase1_objective, 0.1);
}

TEST(Solve, RedundantRowsStayFeasible) {
  const auto s = system_of(3, {{{1.0, 1.0, 1.0}, 1.0}, {{2.0, 2.0, 2.0}, 2.0}, {{1.0, 0.0, 0.0}, 0.25}});
  const auto r = solve(s);
  expect_valid_point(s, r);
  EXPECT_NEAR(r.point[0], 0.25, 1e-12);
}

TEST(Solve, EmptySystemIsFeasible) {
  LinearSystem s;
  s.num_vars = 3;
  const auto r = solve(s);
  EXPECT_TRUE(r.feasible());
  EXPECT_EQ(r.point.size(), 3u);
}

TEST(Solve, RejectsMalformedInput) {
  EXPECT_THROW(solve(system_of(2, {{{1.0}, 1.0}})), std::invalid_argument);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(solve(system_of(1, {{{inf}, 1.0}})), std::invalid_argument);
  EXPECT_THROW(solve(system_of(1, {{{1.0}, std::nan("")}})), std::invalid_argument);
}

TEST(Solve, RandomFeasibleSystems) {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 12;
    const std::size_t m = 1 + trial % 7;
    std::vector<double> x(n);
    for (auto& v : x) v = (rng() % 3 == 0) ? 0.0 : pos(rng);
    LinearSystem s;
    s.num_vars = n;
    for (std::size_t i = 0; i < m; ++i) {
      LinearRow row{std::vector<double>(n), 0.0};
      for (std::size_t j = 0; j < n; ++j) {
        row.coefficients[j] = u(rng);
        row.rhs += row.coefficients[j] * x[j];
      }
      s.eq_rows.push_back(row);
    }
    expect_valid_point(s, solve(s));
  }
}

TEST(Solve, RandomInfeasibleSystemsCarryCertificates) {
  // Rows with strictly positive coefficients and a negative right-hand side
  // have no nonnegative solution.
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> pos(0.1, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 6;
    LinearSystem s;
    s.num_vars = n;
    LinearRow bad{std::vector<double>(n), -pos(rng)};
    for (auto& c : bad.coefficients) c = pos(rng);
    LinearRow other{std::vector<double>(n), pos(rng)};
    for (auto& c : other.coefficients) c = pos(rng);
    s.eq_rows = {other, bad};
    const auto r = solve(s);
    ASSERT_FALSE(r.feasible());
    EXPECT_TRUE(is_farkas_certificate(s, r.certificate));
  }
}

TEST(Solve, Deterministic) {
  const auto s = system_of(4, {{{1.0, 1.0, 1.0, 1.0}, 1.0}, {{1.0, -1.0, 0.5, 0.0}, 0.1}});
  const auto a = solve(s);
  const auto b = solve(s);
  EXPECT_EQ(a.point, b.point);
  EXPECT_EQ(a.pivots, b.pivots);
}

TEST(Farkas, RejectsNonCertificates) {
  const auto s = system_of(1, {{{1.0}, 1.0}});
  EXPECT_FALSE(is_farkas_certificate(s, {1.0}));
  EXPECT_FALSE(is_farkas_certificate(s, {-1.0}));
  EXPECT_FALSE(is_farkas_certificate(s, {}));
}

}  // namespace
}  // namespace pmsq
