#include "pmsq/realization.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pmsq {

namespace {

using P = PauliLabel;

constexpr ContextId kRow0{ContextKind::kRow, 0};
constexpr ContextId kRow1{ContextKind::kRow, 1};
constexpr ContextId kRow2{ContextKind::kRow, 2};
constexpr ContextId kCol0{ContextKind::kColumn, 0};
constexpr ContextId kCol1{ContextKind::kColumn, 1};
constexpr ContextId kCol2{ContextKind::kColumn, 2};

struct FourOutcomeSpec {
  const char* id;
  ContextId basis;
};

// Each two-photon measurement projects onto the common eigenbasis of one
// context of the square.
constexpr FourOutcomeSpec kFourOutcome[] = {
    {"Lzz", kRow0}, {"Lxx", kRow1}, {"B", kRow2},
    {"Lzx", kCol0}, {"Lxz", kCol1}, {"Bprime", kCol2},
};

ContextId basis_of(std::string_view id) {
  for (const auto& s : kFourOutcome) {
    if (id == s.id) return s.basis;
  }
  throw std::invalid_argument("no eigenbasis for measurement '" + std::string(id) + "'");
}

PhysicalMeasurement four_outcome(std::string_view id) {
  const auto& table = eigentable(basis_of(id));
  PhysicalMeasurement m{std::string(id), {}, {}};
  for (const auto& e : table.entries) {
    m.outcomes.push_back(e.label);
    m.resolution.emplace_back(e.vector);
  }
  return m;
}

PhysicalMeasurement single_photon(std::string id, P axis, Side side) {
  PhysicalMeasurement m{std::move(id), {"+1", "-1"}, {}};
  m.resolution.emplace_back(SideProjector{axis, side, +1});
  m.resolution.emplace_back(SideProjector{axis, side, -1});
  return m;
}

// Function of a four-outcome parent's result reproducing the square
// operator `op`: the eigenvalue of `op` on the parent's basis vector.
DerivedMeasurement derive(std::string id, std::string_view parent, PauliPair op) {
  const PMSquare square = build_square();
  const auto& table = eigentable(basis_of(parent));
  const auto cells = table.context.cells();
  for (std::size_t k = 0; k < 3; ++k) {
    if (square.at(cells[k]) != op) continue;
    DerivedMeasurement d{std::move(id), std::string(parent), {}, op};
    for (const auto& e : table.entries) d.outcome_map.emplace_back(e.label, e.values[k]);
    return d;
  }
  throw ConsistencyError("measurement " + std::string(parent) + " does not realize " + operator_name(op));
}

// A single-photon measurement registered as-is.
DerivedMeasurement identity_of(const PhysicalMeasurement& m, PauliPair op) {
  return {m.id, m.id, {{"+1", +1}, {"-1", -1}}, op};
}

const PauliPair kZI{P::Z, P::I}, kIZ{P::I, P::Z}, kZZ{P::Z, P::Z};
const PauliPair kIX{P::I, P::X}, kXI{P::X, P::I}, kXX{P::X, P::X};
const PauliPair kZX{P::Z, P::X}, kXZ{P::X, P::Z}, kYY{P::Y, P::Y};

void add_lzz_lxx_b(Realization& r) {
  r.physicals.push_back(four_outcome("Lzz"));
  r.physicals.push_back(four_outcome("Lxx"));
  r.physicals.push_back(four_outcome("B"));
  r.derived.push_back(derive("l(Lzz)", "Lzz", kZI));
  r.derived.push_back(derive("r(Lzz)", "Lzz", kIZ));
  r.derived.push_back(derive("t(Lzz)", "Lzz", kZZ));
  r.derived.push_back(derive("r(Lxx)", "Lxx", kIX));
  r.derived.push_back(derive("l(Lxx)", "Lxx", kXI));
  r.derived.push_back(derive("t(Lxx)", "Lxx", kXX));
  r.derived.push_back(derive("f(B)", "B", kZX));
  r.derived.push_back(derive("g(B)", "B", kXZ));
  r.derived.push_back(derive("h(B)", "B", kYY));
}

void add_bprime(Realization& r) {
  r.physicals.push_back(four_outcome("Bprime"));
  r.derived.push_back(derive("f'(B')", "Bprime", kZZ));
  r.derived.push_back(derive("g'(B')", "Bprime", kXX));
  r.derived.push_back(derive("h'(B')", "Bprime", kYY));
}

Realization realization1() {
  Realization r;
  r.index = 1;
  add_lzz_lxx_b(r);
  r.cell_map = {{{"l(Lzz)"}, {"r(Lzz)"}, {"t(Lzz)"},
                 {"r(Lxx)"}, {"l(Lxx)"}, {"t(Lxx)"},
                 {"f(B)"}, {"g(B)"}, {"h(B)"}}};
  return r;
}

Realization realization2() {
  Realization r;
  r.index = 2;
  add_lzz_lxx_b(r);
  r.physicals.push_back(four_outcome("Lzx"));
  r.physicals.push_back(four_outcome("Lxz"));
  r.derived.push_back(derive("l(Lzx)", "Lzx", kZI));
  r.derived.push_back(derive("r(Lzx)", "Lzx", kIX));
  r.derived.push_back(derive("t(Lzx)", "Lzx", kZX));
  r.derived.push_back(derive("r(Lxz)", "Lxz", kIZ));
  r.derived.push_back(derive("l(Lxz)", "Lxz", kXI));
  r.derived.push_back(derive("t(Lxz)", "Lxz", kXZ));
  add_bprime(r);
  r.cell_map = {{{"l(Lzz)", "l(Lzx)"}, {"r(Lzz)", "r(Lxz)"}, {"t(Lzz)", "f'(B')"},
                 {"r(Lxx)", "r(Lzx)"}, {"l(Lxx)", "l(Lxz)"}, {"t(Lxx)", "g'(B')"},
                 {"f(B)", "t(Lzx)"}, {"g(B)", "t(Lxz)"}, {"h(B)", "h'(B')"}}};
  r.identifications = {{"l(Lzz)", "l(Lzx)"},
                       {"r(Lzz)", "r(Lxz)"},
                       {"r(Lxx)", "r(Lzx)"},
                       {"l(Lxx)", "l(Lxz)"}};
  return r;
}

Realization realization3() {
  Realization r;
  r.index = 3;
  r.physicals.push_back(single_photon("Ll_z", P::Z, Side::kLeft));
  r.physicals.push_back(single_photon("Lr_z", P::Z, Side::kRight));
  r.physicals.push_back(single_photon("Ll_x", P::X, Side::kLeft));
  r.physicals.push_back(single_photon("Lr_x", P::X, Side::kRight));
  r.derived.push_back(identity_of(r.physicals[0], kZI));
  r.derived.push_back(identity_of(r.physicals[1], kIZ));
  r.derived.push_back(identity_of(r.physicals[2], kXI));
  r.derived.push_back(identity_of(r.physicals[3], kIX));
  r.physicals.push_back(four_outcome("B"));
  r.derived.push_back(derive("f(B)", "B", kZX));
  r.derived.push_back(derive("g(B)", "B", kXZ));
  r.derived.push_back(derive("h(B)", "B", kYY));
  add_bprime(r);
  r.cell_map = {{{"Ll_z"}, {"Lr_z"}, {"f'(B')"},
                 {"Lr_x"}, {"Ll_x"}, {"g'(B')"},
                 {"f(B)"}, {"g(B)"}, {"h(B)", "h'(B')"}}};
  r.compatible_physicals = {{"Ll_z", "Lr_z"}, {"Ll_z", "Lr_x"}, {"Ll_x", "Lr_z"}, {"Ll_x", "Lr_x"}};
  return r;
}

template <class Pairs>
bool contains_pair(const Pairs& pairs, std::string_view a, std::string_view b) {
  return std::any_of(pairs.begin(), pairs.end(), [&](const auto& p) {
    return (p.first == a && p.second == b) || (p.first == b && p.second == a);
  });
}

}  // namespace

TwoQubitOperator PhysicalMeasurement::projector(std::size_t outcome) const {
  const auto& res = resolution.at(outcome);
  if (const auto* k = std::get_if<Ket>(&res)) return outer(*k);
  const auto& sp = std::get<SideProjector>(res);
  return side_projector(sp.axis, sp.side == Side::kLeft, sp.sign);
}

std::size_t PhysicalMeasurement::outcome_index(std::string_view label) const {
  const auto it = std::find(outcomes.begin(), outcomes.end(), label);
  if (it == outcomes.end()) {
    throw std::invalid_argument("'" + std::string(label) + "' is not an outcome of " + id);
  }
  return static_cast<std::size_t>(it - outcomes.begin());
}

std::vector<double> PhysicalMeasurement::born_distribution(const Ket& state) const {
  std::vector<double> p;
  p.reserve(size());
  for (std::size_t k = 0; k < size(); ++k) {
    if (const auto* v = std::get_if<Ket>(&resolution[k])) {
      p.push_back(born_probability(state, *v));
    } else {
      p.push_back(expectation(state, projector(k)));
    }
  }
  return p;
}

const PhysicalMeasurement& Realization::physical(std::string_view id) const {
  return physicals.at(physical_index(id));
}

std::size_t Realization::physical_index(std::string_view id) const {
  for (std::size_t i = 0; i < physicals.size(); ++i) {
    if (physicals[i].id == id) return i;
  }
  throw std::invalid_argument("realization " + std::to_string(index) + " has no physical measurement '" +
                              std::string(id) + "'");
}

bool Realization::has_physical(std::string_view id) const {
  return std::any_of(physicals.begin(), physicals.end(), [&](const auto& m) { return m.id == id; });
}

const DerivedMeasurement& Realization::derived_measurement(std::string_view id) const {
  for (const auto& d : derived) {
    if (d.id == id) return d;
  }
  throw std::invalid_argument("realization " + std::to_string(index) + " has no measurement '" +
                              std::string(id) + "'");
}

bool Realization::identified(std::string_view a, std::string_view b) const {
  return a == b || contains_pair(identifications, a, b);
}

bool Realization::simultaneous(std::string_view a, std::string_view b) const {
  if (identified(a, b)) return true;
  const auto members = [&](std::string_view x) {
    std::vector<std::string_view> out{x};
    for (const auto& [p, q] : identifications) {
      if (p == x) out.push_back(q);
      if (q == x) out.push_back(p);
    }
    return out;
  };
  for (const auto x : members(a)) {
    for (const auto y : members(b)) {
      const auto& px = derived_measurement(x).parent;
      const auto& py = derived_measurement(y).parent;
      if (px == py || contains_pair(compatible_physicals, px, py)) return true;
    }
  }
  return false;
}

Realization build_realization(int index) {
  switch (index) {
    case 1: return realization1();
    case 2: return realization2();
    case 3: return realization3();
    default: throw std::invalid_argument("realization index must be 1, 2 or 3");
  }
}

int derived_outcome(const DerivedMeasurement& d, std::string_view parent_outcome) {
  for (const auto& [label, value] : d.outcome_map) {
    if (label == parent_outcome) return value;
  }
  throw std::invalid_argument("'" + std::string(parent_outcome) + "' is not an outcome of " + d.parent);
}

std::array<double, 2> derived_distribution(const Realization& r, const DerivedMeasurement& d,
                                           const Ket& state) {
  const auto p = r.physical(d.parent).born_distribution(state);
  std::array<double, 2> out{0.0, 0.0};
  for (std::size_t k = 0; k < p.size(); ++k) out[d.value(k) == +1 ? 0 : 1] += p[k];
  return out;
}

std::vector<Selection> context_selections(const Realization& r, ContextId context) {
  const auto cells = context.cells();
  const auto& a = r.cell_map[cells[0].index()];
  const auto& b = r.cell_map[cells[1].index()];
  const auto& c = r.cell_map[cells[2].index()];
  std::vector<Selection> out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      for (const auto& z : c) {
        Selection s{{x, y, z}, false};
        s.simultaneous = r.simultaneous(x, y) && r.simultaneous(x, z) && r.simultaneous(y, z);
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

std::vector<ContextId> RequirementReport::broken_context_ids() const {
  std::vector<ContextId> out;
  for (const auto& b : broken_contexts) {
    if (std::find(out.begin(), out.end(), b.context) == out.end()) out.push_back(b.context);
  }
  return out;
}

RequirementReport check_requirements(const Realization& r) {
  RequirementReport rep;

  // (i): one measurement per cell once identified measurements are merged.
  for (int i = 0; i < 9; ++i) {
    const auto& ids = r.cell_map[i];
    std::vector<std::string> classes;
    for (const auto& id : ids) {
      const bool merged = std::any_of(classes.begin(), classes.end(),
                                      [&](const std::string& c) { return r.identified(c, id); });
      if (!merged) classes.push_back(id);
    }
    if (classes.size() > 1) rep.multiply_realized_cells.push_back({Cell::from_index(i), ids});
  }
  rep.unique_realization_ok = rep.multiply_realized_cells.empty();

  // (ii): some choice of realizers per context must be pairwise simultaneous.
  // For a failing context the selection with the fewest incompatible pairs is
  // reported.
  for (const auto& ctx : all_contexts()) {
    const auto selections = context_selections(r, ctx);
    if (std::any_of(selections.begin(), selections.end(), [](const Selection& s) { return s.simultaneous; })) {
      continue;
    }
    std::vector<BrokenPair> best;
    std::size_t best_count = std::numeric_limits<std::size_t>::max();
    for (const auto& s : selections) {
      std::vector<BrokenPair> pairs;
      for (std::size_t p = 0; p < 3; ++p) {
        for (std::size_t q = p + 1; q < 3; ++q) {
          if (!r.simultaneous(s.ids[p], s.ids[q])) pairs.push_back({ctx, s.ids[p], s.ids[q]});
        }
      }
      if (pairs.size() < best_count) {
        best_count = pairs.size();
        best = std::move(pairs);
      }
    }
    rep.broken_contexts.insert(rep.broken_contexts.end(), best.begin(), best.end());
  }
  rep.simultaneity_ok = rep.broken_contexts.empty();
  return rep;
}

namespace {

const Realization& second_realization() {
  static const Realization r = build_realization(2);
  return r;
}

int sign_of(const Realization& r, std::string_view id, int outcome) {
  return r.derived_measurement(id).value(static_cast<std::size_t>(outcome - 1));
}

}  // namespace

SinglePhotonOutcomes translate_outcomes(const PolarizationOutcomes& o) {
  for (int v : {o.Lzz, o.Lxx, o.Lzx, o.Lxz}) {
    if (v < 1 || v > 4) throw std::invalid_argument("polarization outcome index must be in 1..4");
  }
  const Realization& r = second_realization();
  const int lz_zz = sign_of(r, "l(Lzz)", o.Lzz), rz_zz = sign_of(r, "r(Lzz)", o.Lzz);
  const int lx_xx = sign_of(r, "l(Lxx)", o.Lxx), rx_xx = sign_of(r, "r(Lxx)", o.Lxx);
  const int lz_zx = sign_of(r, "l(Lzx)", o.Lzx), rx_zx = sign_of(r, "r(Lzx)", o.Lzx);
  const int lx_xz = sign_of(r, "l(Lxz)", o.Lxz), rz_xz = sign_of(r, "r(Lxz)", o.Lxz);
  if (lz_zz != lz_zx) throw std::invalid_argument("inconsistent outcomes: Lzz and Lzx disagree on left z");
  if (rz_zz != rz_xz) throw std::invalid_argument("inconsistent outcomes: Lzz and Lxz disagree on right z");
  if (rx_xx != rx_zx) throw std::invalid_argument("inconsistent outcomes: Lxx and Lzx disagree on right x");
  if (lx_xx != lx_xz) throw std::invalid_argument("inconsistent outcomes: Lxx and Lxz disagree on left x");
  return {lz_zz, rz_zz, lx_xx, rx_xx};
}

PolarizationOutcomes untranslate_outcomes(const SinglePhotonOutcomes& s) {
  for (int v : {s.left_z, s.right_z, s.left_x, s.right_x}) {
    if (v != 1 && v != -1) throw std::invalid_argument("single-photon outcome must be +1 or -1");
  }
  const Realization& r = second_realization();
  const auto find = [&](const char* parent, int left, int right) {
    const std::string p(parent);
    for (int k = 1; k <= 4; ++k) {
      if (sign_of(r, "l(" + p + ")", k) == left && sign_of(r, "r(" + p + ")", k) == right) return k;
    }
    throw ConsistencyError("no outcome of " + p + " matches the given signs");
  };
  return {find("Lzz", s.left_z, s.right_z), find("Lxx", s.left_x, s.right_x),
          find("Lzx", s.left_z, s.right_x), find("Lxz", s.left_x, s.right_z)};
}

}  // namespace pmsq
