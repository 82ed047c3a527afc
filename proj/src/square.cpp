#include "pmsq/square.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmsq {

namespace {

using P = PauliLabel;

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::array<Amplitude, 2> qubit(char c) {
  switch (c) {
    case '0': return {1.0, 0.0};
    case '1': return {0.0, 1.0};
    case '+': return {kInvSqrt2, kInvSqrt2};
    case '-': return {kInvSqrt2, -kInvSqrt2};
    default: throw std::invalid_argument("bad qubit symbol");
  }
}

Vec4 product(std::string_view two) {
  const auto l = qubit(two[0]);
  const auto r = qubit(two[1]);
  return {l[0] * r[0], l[0] * r[1], l[1] * r[0], l[1] * r[1]};
}

Ket ket(std::string_view two) { return Ket(product(two)); }

// (|a> + sign |b>) / sqrt(2)
Ket superpose(std::string_view a, int sign, std::string_view b) {
  const Vec4 va = product(a);
  const Vec4 vb = product(b);
  Vec4 v{};
  for (std::size_t i = 0; i < 4; ++i) v[i] = kInvSqrt2 * (va[i] + static_cast<double>(sign) * vb[i]);
  return Ket(v);
}

EigenTable transcribe(ContextId ctx) {
  const auto R = [](int i) { return ContextId{ContextKind::kRow, i}; };
  const auto C = [](int i) { return ContextId{ContextKind::kColumn, i}; };
  if (ctx == R(0)) {
    return {ctx,
            {{{"Psi1", ket("00"), {+1, +1, +1}},
              {"Psi2", ket("01"), {+1, -1, -1}},
              {"Psi3", ket("10"), {-1, +1, -1}},
              {"Psi4", ket("11"), {-1, -1, +1}}}}};
  }
  if (ctx == R(1)) {
    return {ctx,
            {{{"PsiP1", ket("++"), {+1, +1, +1}},
              {"PsiP2", ket("-+"), {+1, -1, -1}},
              {"PsiP3", ket("+-"), {-1, +1, -1}},
              {"PsiP4", ket("--"), {-1, -1, +1}}}}};
  }
  if (ctx == R(2)) {
    return {ctx,
            {{{"PsiPP1", superpose("0+", +1, "1-"), {+1, +1, +1}},
              {"PsiPP2", superpose("0+", -1, "1-"), {+1, -1, -1}},
              {"PsiPP3", superpose("1+", +1, "0-"), {-1, +1, -1}},
              {"PsiPP4", superpose("1+", -1, "0-"), {-1, -1, +1}}}}};
  }
  if (ctx == C(0)) {
    return {ctx,
            {{{"Phi1", ket("0+"), {+1, +1, +1}},
              {"Phi2", ket("0-"), {+1, -1, -1}},
              {"Phi3", ket("1+"), {-1, +1, -1}},
              {"Phi4", ket("1-"), {-1, -1, +1}}}}};
  }
  if (ctx == C(1)) {
    return {ctx,
            {{{"PhiP1", ket("+0"), {+1, +1, +1}},
              {"PhiP2", ket("-0"), {+1, -1, -1}},
              {"PhiP3", ket("+1"), {-1, +1, -1}},
              {"PhiP4", ket("-1"), {-1, -1, +1}}}}};
  }
  return {ctx,
          {{{"PhiPP1", superpose("00", +1, "11"), {+1, +1, -1}},
            {"PhiPP2", superpose("00", -1, "11"), {+1, -1, +1}},
            {"PhiPP3", superpose("01", +1, "10"), {-1, +1, +1}},
            {"PhiPP4", superpose("01", -1, "10"), {-1, -1, -1}}}}};
}

int expected_product(ContextId ctx) {
  return (ctx.kind == ContextKind::kColumn && ctx.index == 2) ? -1 : +1;
}

void verify(const EigenTable& t, const PMSquare& square) {
  const std::string where = "eigentable " + t.context.name() + ": ";
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      const Amplitude ip = inner(t.entries[a].vector.components(), t.entries[b].vector.components());
      if (std::abs(ip - Amplitude{a == b ? 1.0 : 0.0}) > kTol) {
        throw ConsistencyError(where + t.entries[a].label + "/" + t.entries[b].label +
                               " not orthonormal");
      }
    }
  }
  if (eigentable_residual(t, square) > kTol) {
    throw ConsistencyError(where + "eigen-equation fails");
  }
  for (const auto& e : t.entries) {
    if (e.values[0] * e.values[1] * e.values[2] != expected_product(t.context)) {
      throw ConsistencyError(where + e.label + " violates the product rule");
    }
  }
}

}  // namespace

std::string to_string(Cell c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

std::string operator_name(const PauliPair& p) {
  return std::string(1, to_char(p.first)) + "x" + to_char(p.second);
}

std::array<Cell, 3> ContextId::cells() const {
  if (kind == ContextKind::kRow) return {Cell{index, 0}, Cell{index, 1}, Cell{index, 2}};
  return {Cell{0, index}, Cell{1, index}, Cell{2, index}};
}

std::string ContextId::name() const {
  return (kind == ContextKind::kRow ? "row" : "col") + std::to_string(index);
}

const std::array<ContextId, 6>& all_contexts() {
  static const std::array<ContextId, 6> contexts{{{ContextKind::kRow, 0},
                                                  {ContextKind::kRow, 1},
                                                  {ContextKind::kRow, 2},
                                                  {ContextKind::kColumn, 0},
                                                  {ContextKind::kColumn, 1},
                                                  {ContextKind::kColumn, 2}}};
  return contexts;
}

ContextId parse_context(std::string_view name) {
  for (const auto& ctx : all_contexts()) {
    const std::string full = ctx.name();
    const std::string brief = std::string(1, full[0]) + full.back();
    if (name == full || name == brief) return ctx;
  }
  throw std::invalid_argument("unknown constraint '" + std::string(name) + "'");
}

Triple Assignment::triple(ContextId ctx) const {
  const auto cells = ctx.cells();
  return {at(cells[0]), at(cells[1]), at(cells[2])};
}

PMSquare build_square() {
  return {{{{P::Z, P::I}, {P::I, P::Z}, {P::Z, P::Z},
            {P::I, P::X}, {P::X, P::I}, {P::X, P::X},
            {P::Z, P::X}, {P::X, P::Z}, {P::Y, P::Y}}}};
}

std::vector<PairRelation> commutation_relation(const PMSquare& square) {
  std::vector<PairRelation> out;
  out.reserve(36);
  for (int i = 0; i < 9; ++i) {
    for (int j = i + 1; j < 9; ++j) {
      const Cell a = Cell::from_index(i);
      const Cell b = Cell::from_index(j);
      const double norm = max_abs_diff(commutator(square.op(a), square.op(b)), TwoQubitOperator::zero());
      const auto rel = norm <= kTol ? Commutation::kCommute : Commutation::kNonCommuting;
      const bool predicted = a.row == b.row || a.col == b.col;
      if (predicted != (rel == Commutation::kCommute)) {
        throw ConsistencyError("commutation of " + to_string(a) + " and " + to_string(b) +
                               " differs from the same-row-or-column rule");
      }
      out.push_back({a, b, rel, norm});
    }
  }
  return out;
}

double eigentable_residual(const EigenTable& table, const PMSquare& square) {
  double worst = 0.0;
  const auto cells = table.context.cells();
  for (const auto& e : table.entries) {
    for (std::size_t k = 0; k < 3; ++k) {
      const Vec4 av = apply(square.op(cells[k]), e.vector);
      for (std::size_t i = 0; i < 4; ++i) {
        worst = std::max(worst, std::abs(av[i] - static_cast<double>(e.values[k]) * e.vector[i]));
      }
    }
  }
  return worst;
}

const EigenTable& eigentable(ContextId context) {
  static const std::array<EigenTable, 6> tables = [] {
    const PMSquare square = build_square();
    const auto& ctxs = all_contexts();
    std::array<EigenTable, 6> t{transcribe(ctxs[0]), transcribe(ctxs[1]), transcribe(ctxs[2]),
                                transcribe(ctxs[3]), transcribe(ctxs[4]), transcribe(ctxs[5])};
    for (const auto& table : t) verify(table, square);
    return t;
  }();
  if (context.index < 0 || context.index > 2) throw std::out_of_range("context index out of range");
  return tables[(context.kind == ContextKind::kRow ? 0 : 3) + context.index];
}

int context_operator_product(const PMSquare& square, ContextId context) {
  const auto cells = context.cells();
  const TwoQubitOperator prod = square.op(cells[0]) * square.op(cells[1]) * square.op(cells[2]);
  const auto id = TwoQubitOperator::identity();
  int sign = 0;
  if (max_abs_diff(prod, id) <= kTol) {
    sign = +1;
  } else if (max_abs_diff(prod, Amplitude{-1.0} * id) <= kTol) {
    sign = -1;
  } else {
    throw ConsistencyError("product over " + context.name() + " is not +-identity");
  }
  if (sign != expected_product(context)) {
    throw ConsistencyError("product over " + context.name() + " has unexpected sign");
  }
  return sign;
}

std::array<Triple, 4> admissible_triples(ContextId context) {
  const auto& t = eigentable(context);
  return {t.entries[0].values, t.entries[1].values, t.entries[2].values, t.entries[3].values};
}

bool is_admissible(ContextId context, const Triple& t) {
  const auto adm = admissible_triples(context);
  return std::find(adm.begin(), adm.end(), t) != adm.end();
}

std::vector<Assignment> search_assignments(std::span<const ContextId> active) {
  std::vector<std::array<Triple, 4>> allowed;
  allowed.reserve(active.size());
  for (const auto& ctx : active) allowed.push_back(admissible_triples(ctx));

  std::vector<Assignment> out;
  for (unsigned mask = 0; mask < 512; ++mask) {
    Assignment a;
    for (int i = 0; i < 9; ++i) a.values[i] = (mask >> i) & 1U ? -1 : +1;
    bool ok = true;
    for (std::size_t k = 0; k < active.size() && ok; ++k) {
      const Triple t = a.triple(active[k]);
      ok = std::find(allowed[k].begin(), allowed[k].end(), t) != allowed[k].end();
    }
    if (ok) out.push_back(a);
  }
  std::sort(out.begin(), out.end(),
            [](const Assignment& x, const Assignment& y) { return x.values < y.values; });
  return out;
}

const EigenEntry* find_table_state(std::string_view label) {
  for (const auto& ctx : all_contexts()) {
    for (const auto& e : eigentable(ctx).entries) {
      if (e.label == label) return &e;
    }
  }
  return nullptr;
}

std::vector<std::string> table_state_labels() {
  std::vector<std::string> out;
  for (const auto& ctx : all_contexts()) {
    for (const auto& e : eigentable(ctx).entries) out.push_back(e.label);
  }
  return out;
}

}  // namespace pmsq
