#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "pmsq/square.hpp"
#include "test_support.hpp"

namespace pmsq {
namespace {

// Independent enumeration: a context is satisfied iff the product of its
// three values is +1 (rows, col0, col1) or -1 (col2).
int oracle_sign(ContextId c) { return (c.kind == ContextKind::kColumn && c.index == 2) ? -1 : +1; }

std::vector<std::array<int, 9>> oracle_solutions(const std::vector<ContextId>& active) {
  std::vector<std::array<int, 9>> out;
  for (int bits = 0; bits < 512; ++bits) {
    std::array<int, 9> v{};
    for (int k = 0; k < 9; ++k) v[k] = ((bits >> (8 - k)) & 1) ? +1 : -1;
    bool ok = true;
    for (const auto& c : active) {
      int prod = 1;
      for (const auto cell : c.cells()) prod *= v[cell.index()];
      ok = ok && prod == oracle_sign(c);
    }
    if (ok) out.push_back(v);
  }
  return out;
}

std::vector<ContextId> all_six() { return {all_contexts().begin(), all_contexts().end()}; }

TEST(Square, Layout) {
  const auto sq = build_square();
  const char* names[] = {"ZxI", "IxZ", "ZxZ", "IxX", "XxI", "XxX", "ZxX", "XxZ", "YxY"};
  for (int i = 0; i < 9; ++i) EXPECT_EQ(operator_name(sq.grid[i]), names[i]);
}

TEST(Square, CommutationMatchesRowColumnPredicate) {
  const auto sq = build_square();
  const auto rel = commutation_relation(sq);
  ASSERT_EQ(rel.size(), 36u);
  for (const auto& p : rel) {
    const bool same_line = p.a.row == p.b.row || p.a.col == p.b.col;
    // Independent check through the Kronecker oracle.
    const auto a = testing::kron(testing::pauli2(to_char(sq.at(p.a).first)), testing::pauli2(to_char(sq.at(p.a).second)));
    const auto b = testing::kron(testing::pauli2(to_char(sq.at(p.b).first)), testing::pauli2(to_char(sq.at(p.b).second)));
    const auto ab = testing::matmul(a, b);
    const auto ba = testing::matmul(b, a);
    double d = 0.0;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) d = std::max(d, std::abs(ab[r][c] - ba[r][c]));
    EXPECT_EQ(same_line, d < 1e-12);
    EXPECT_EQ(p.relation == Commutation::kCommute, same_line);
    if (same_line) {
      EXPECT_LT(p.commutator_norm, 1e-12);
    } else {
      EXPECT_NEAR(p.commutator_norm, 2.0, 1e-12);
    }
  }
}

TEST(Square, EigentablesSatisfyEigenEquation) {
  const auto sq = build_square();
  std::set<std::string> labels;
  for (const auto& ctx : all_contexts()) {
    const auto& t = eigentable(ctx);
    EXPECT_LT(eigentable_residual(t, sq), 1e-12) << ctx.name();
    const auto cells = ctx.cells();
    for (const auto& e : t.entries) {
      labels.insert(e.label);
      for (int k = 0; k < 3; ++k) {
        const Vec4 av = apply(sq.op(cells[k]), e.vector);
        for (int i = 0; i < 4; ++i) EXPECT_LT(std::abs(av[i] - double(e.values[k]) * e.vector[i]), 1e-12);
      }
      EXPECT_EQ(e.values[0] * e.values[1] * e.values[2], oracle_sign(ctx));
    }
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        EXPECT_NEAR(std::abs(inner(t.entries[i].vector.components(), t.entries[j].vector.components())),
                    i == j ? 1.0 : 0.0, 1e-12);
  }
  EXPECT_EQ(labels.size(), 24u);
  EXPECT_EQ(table_state_labels().size(), 24u);
}

TEST(Square, ContextProducts) {
  const auto sq = build_square();
  for (const auto& ctx : all_contexts()) {
    EXPECT_EQ(context_operator_product(sq, ctx), oracle_sign(ctx)) << ctx.name();
    const auto c = ctx.cells();
    const auto prod = sq.op(c[0]) * sq.op(c[1]) * sq.op(c[2]);
    EXPECT_LT(max_abs_diff(prod, Amplitude(oracle_sign(ctx)) * TwoQubitOperator::identity()), 1e-12);
  }
}

TEST(Square, AdmissibleTriplesAreTheSignedProducts) {
  for (const auto& ctx : all_contexts()) {
    const auto triples = admissible_triples(ctx);
    std::set<Triple> seen(triples.begin(), triples.end());
    EXPECT_EQ(seen.size(), 4u);
    for (int a : {-1, 1})
      for (int b : {-1, 1})
        for (int c : {-1, 1}) EXPECT_EQ(is_admissible(ctx, {a, b, c}), a * b * c == oracle_sign(ctx));
  }
}

TEST(Search, AllSixConstraintsHaveNoSolution) {
  const auto six = all_six();
  EXPECT_TRUE(search_assignments(six).empty());
  EXPECT_TRUE(oracle_solutions(six).empty());
}

TEST(Search, RowsOnlyGive64) {
  const std::vector<ContextId> rows(all_contexts().begin(), all_contexts().begin() + 3);
  const auto got = search_assignments(rows);
  EXPECT_EQ(got.size(), 64u);
  EXPECT_EQ(oracle_solutions(rows).size(), 64u);
}

TEST(Search, RowsPlusTwoColumnsGive16WithColumnTwoProductPlusOne) {
  const std::vector<ContextId> five(all_contexts().begin(), all_contexts().begin() + 5);
  const auto got = search_assignments(five);
  const auto oracle = oracle_solutions(five);
  ASSERT_EQ(got.size(), 16u);
  ASSERT_EQ(oracle.size(), 16u);
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].values, oracle[i]);
    EXPECT_EQ(got[i].at({0, 2}) * got[i].at({1, 2}) * got[i].at({2, 2}), +1);
  }
}

TEST(Search, DroppingAnySingleConstraintLeavesSolutions) {
  for (std::size_t drop = 0; drop < 6; ++drop) {
    std::vector<ContextId> active;
    for (std::size_t k = 0; k < 6; ++k)
      if (k != drop) active.push_back(all_contexts()[k]);
    const auto got = search_assignments(active);
    EXPECT_FALSE(got.empty());
    EXPECT_EQ(got.size(), oracle_solutions(active).size());
  }
}

TEST(Search, MonotoneInConstraints) {
  // Every subset of the six contexts: adding a constraint never grows the set.
  for (int mask = 0; mask < 64; ++mask) {
    std::vector<ContextId> active;
    for (int k = 0; k < 6; ++k)
      if (mask & (1 << k)) active.push_back(all_contexts()[k]);
    const auto base = search_assignments(active);
    EXPECT_EQ(base.size(), oracle_solutions(active).size());
    for (int k = 0; k < 6; ++k) {
      if (mask & (1 << k)) continue;
      auto more = active;
      more.push_back(all_contexts()[k]);
      const auto sub = search_assignments(more);
      EXPECT_LE(sub.size(), base.size());
      for (const auto& a : sub) EXPECT_NE(std::find(base.begin(), base.end(), a), base.end());
    }
  }
}

TEST(Search, NoConstraintsGivesAll512Sorted) {
  const auto got = search_assignments({});
  ASSERT_EQ(got.size(), 512u);
  EXPECT_TRUE(std::is_sorted(got.begin(), got.end(),
                             [](const Assignment& a, const Assignment& b) { return a.values < b.values; }));
}

TEST(Contexts, ParseNames) {
  EXPECT_EQ(parse_context("r1").name(), "row1");
  EXPECT_EQ(parse_context("col2").name(), "col2");
  EXPECT_EQ(parse_context("c0").name(), "col0");
  EXPECT_THROW(parse_context("r3"), std::invalid_argument);
  EXPECT_THROW(parse_context("diag"), std::invalid_argument);
}

TEST(TableStates, Lookup) {
  const auto* psi1 = find_table_state("Psi1");
  ASSERT_NE(psi1, nullptr);
  EXPECT_NEAR(born_probability(psi1->vector, Ket::basis(0)), 1.0, 1e-12);
  EXPECT_EQ(find_table_state("Psi9"), nullptr);
  // The singlet is the fourth Bell-basis entry.
  const auto* singlet = find_table_state("PhiPP4");
  ASSERT_NE(singlet, nullptr);
  EXPECT_NEAR(std::abs(singlet->vector[1]), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::abs(singlet->vector[2]), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::abs(singlet->vector[1] + singlet->vector[2]), 0.0, 1e-12);
}

}  // namespace
}  // namespace pmsq
