#include "pmsq/hv_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pmsq {

namespace {

using P = PauliLabel;

constexpr const char* kSinglePhoton[] = {"Ll_z", "Lr_z", "Ll_x", "Lr_x"};
constexpr const char* kTwoPhoton[] = {"Lzz", "Lxx", "Lzx", "Lxz"};

constexpr std::array<std::pair<P, P>, 4> kSettings{{{P::Z, P::Z}, {P::Z, P::X}, {P::X, P::Z}, {P::X, P::X}}};

int sign_of_index(int outcome) { return outcome == 0 ? +1 : -1; }

std::ptrdiff_t find_index(const std::vector<std::string>& ids, std::string_view id) {
  const auto it = std::find(ids.begin(), ids.end(), id);
  return it == ids.end() ? -1 : it - ids.begin();
}

}  // namespace

std::string HVModel::label(const HiddenState& s) const {
  std::string out = "lambda^{";
  if (physicals.size() == 3) {
    for (int o : s.outcomes) out += std::to_string(o + 1);
    return out + "}";
  }
  for (std::size_t i = 0; i < s.outcomes.size(); ++i) {
    if (i) out += ",";
    if (outcome_labels[i].size() == 2) {
      out += sign_of_index(s.outcomes[i]) > 0 ? "+1" : "-1";
    } else {
      out += std::to_string(s.outcomes[i] + 1);
    }
  }
  return out + "}";
}

double HVModel::total_probability() const {
  double t = 0.0;
  for (const auto& w : states) t += w.probability;
  return t;
}

// --- CHSH ---------------------------------------------------------------

CHReport ch_report(const Ket& state) {
  CHReport r;
  for (std::size_t k = 0; k < 4; ++k) {
    r.correlators[k] = expectation(state, pauli_tensor(kSettings[k].first, kSettings[k].second));
  }
  const double sum = r.correlators[0] + r.correlators[1] + r.correlators[2] + r.correlators[3];
  for (std::size_t k = 0; k < 4; ++k) {
    // The minus sign sits on E_{4-k}: E1+E2+E3-E4 first.
    r.chsh_values[k] = sum - 2.0 * r.correlators[3 - k];
    r.max_abs = std::max(r.max_abs, std::abs(r.chsh_values[k]));
  }
  r.violated = r.max_abs > kChshBound + kChshSlack;
  return r;
}

const Ket& chsh_max_state() {
  static const Ket state = [] {
    // In the YxY = +1 subspace spanned by (|00>-|11>)/sqrt2 and
    // (|01>+|10>)/sqrt2 the operator acts as [[2, 2], [2, -2]]; its top
    // eigenvector is (cos pi/8, sin pi/8).
    const double c = std::cos(std::numbers::pi / 8.0) / std::numbers::sqrt2;
    const double s = std::sin(std::numbers::pi / 8.0) / std::numbers::sqrt2;
    Ket v(Vec4{c, s, s, -c}, Normalize::kRenormalize);
    const TwoQubitOperator op = pauli_tensor(P::Z, P::Z) + pauli_tensor(P::Z, P::X) +
                                pauli_tensor(P::X, P::Z) - pauli_tensor(P::X, P::X);
    const Vec4 ov = apply(op, v);
    const double top = 2.0 * std::numbers::sqrt2;
    for (std::size_t i = 0; i < 4; ++i) {
      if (std::abs(ov[i] - top * v[i]) > kTol) throw ConsistencyError("CHSH eigenvector check failed");
    }
    return v;
  }();
  return state;
}

// --- Joint distribution ---------------------------------------------------

std::size_t fine_atom_index(int a, int b, int a_prime, int b_prime) {
  const auto bit = [](int v) -> std::size_t { return v == 1 ? 0 : 1; };
  return bit(a) << 3 | bit(b) << 2 | bit(a_prime) << 1 | bit(b_prime);
}

std::array<int, 4> fine_atom_signs(std::size_t index) {
  return {(index >> 3) & 1 ? -1 : +1, (index >> 2) & 1 ? -1 : +1, (index >> 1) & 1 ? -1 : +1,
          index & 1 ? -1 : +1};
}

std::array<PairJoint, 4> quantum_pair_joints(const Ket& state) {
  std::array<PairJoint, 4> out{};
  for (std::size_t k = 0; k < 4; ++k) {
    out[k].left_axis = kSettings[k].first;
    out[k].right_axis = kSettings[k].second;
    std::size_t slot = 0;
    for (int u : {+1, -1}) {
      for (int v : {+1, -1}) {
        const TwoQubitOperator proj = side_projector(kSettings[k].first, true, u) *
                                      side_projector(kSettings[k].second, false, v);
        out[k].probabilities[slot++] = expectation(state, proj);
      }
    }
  }
  return out;
}

LinearSystem fine_system(const Ket& state) {
  LinearSystem sys;
  sys.num_vars = 16;
  sys.eq_rows.push_back({std::vector<double>(16, 1.0), 1.0});
  const auto joints = quantum_pair_joints(state);
  for (std::size_t k = 0; k < 4; ++k) {
    // Left axis selects a (z) or a' (x); right axis selects b (z) or b' (x).
    const std::size_t left_slot = joints[k].left_axis == P::Z ? 0 : 2;
    const std::size_t right_slot = joints[k].right_axis == P::Z ? 1 : 3;
    std::size_t slot = 0;
    for (int u : {+1, -1}) {
      for (int v : {+1, -1}) {
        LinearRow row{std::vector<double>(16, 0.0), joints[k].probabilities[slot++]};
        for (std::size_t atom = 0; atom < 16; ++atom) {
          const auto s = fine_atom_signs(atom);
          if (s[left_slot] == u && s[right_slot] == v) row.coefficients[atom] = 1.0;
        }
        sys.eq_rows.push_back(std::move(row));
      }
    }
  }
  return sys;
}

FineResult fine_joint(const Ket& state) {
  FineResult r;
  r.ch = ch_report(state);
  r.system = fine_system(state);
  const FeasibilityResult sol = solve(r.system);
  r.status = sol.status;
  if (sol.feasible()) {
    std::copy(sol.point.begin(), sol.point.end(), r.joint.begin());
    r.residual = max_residual(r.system, sol.point);
  } else {
    r.certificate = sol.certificate;
  }
  return r;
}

FineInfeasibleError::FineInfeasibleError(FineResult result)
    : std::runtime_error("no joint distribution reproduces the pairwise polarization statistics "
                         "(CHSH max " + std::to_string(result.ch.max_abs) + ")"),
      result_(std::move(result)) {}

// --- Models ---------------------------------------------------------------

HVModel build_model1(const Ket& state) {
  const Realization r = build_realization(1);
  HVModel m;
  m.realization_index = 1;
  std::vector<std::vector<double>> born;
  for (const char* id : {"Lzz", "Lxx", "B"}) {
    const auto& pm = r.physical(id);
    m.physicals.push_back(pm.id);
    m.outcome_labels.push_back(pm.outcomes);
    born.push_back(pm.born_distribution(state));
  }
  m.states.reserve(64);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        m.states.push_back({{{i, j, k}}, born[0][i] * born[1][j] * born[2][k]});
  return m;
}

HVModel build_model23(const Ket& state, int realization_index) {
  if (realization_index != 2 && realization_index != 3) {
    throw std::invalid_argument("the joint-distribution model serves realizations 2 and 3");
  }
  FineResult fine = fine_joint(state);
  if (!fine.feasible()) throw FineInfeasibleError(std::move(fine));

  const Realization r3 = build_realization(3);
  HVModel m;
  m.realization_index = realization_index;
  for (const char* id : {"Ll_z", "Lr_z", "Ll_x", "Lr_x", "B", "Bprime"}) {
    m.physicals.push_back(id);
    m.outcome_labels.push_back(r3.physical(id).outcomes);
  }
  const auto pb = r3.physical("B").born_distribution(state);
  const auto pbp = r3.physical("Bprime").born_distribution(state);
  m.states.reserve(256);
  for (std::size_t atom = 0; atom < 16; ++atom) {
    const auto s = fine_atom_signs(atom);
    const auto idx = [](int sign) { return sign == 1 ? 0 : 1; };
    for (int mi = 0; mi < 4; ++mi) {
      for (int ni = 0; ni < 4; ++ni) {
        m.states.push_back({{{idx(s[0]), idx(s[1]), idx(s[2]), idx(s[3]), mi, ni}},
                            fine.joint[atom] * pb[mi] * pbp[ni]});
      }
    }
  }
  return m;
}

int physical_outcome(const HVModel& model, const HiddenState& s, std::string_view physical_id) {
  const auto direct = find_index(model.physicals, physical_id);
  if (direct >= 0) return s.outcomes.at(static_cast<std::size_t>(direct));

  const auto two = std::find_if(std::begin(kTwoPhoton), std::end(kTwoPhoton),
                                [&](const char* id) { return physical_id == id; });
  if (two != std::end(kTwoPhoton)) {
    std::array<int, 4> signs{};
    for (std::size_t k = 0; k < 4; ++k) {
      const auto at = find_index(model.physicals, kSinglePhoton[k]);
      if (at < 0) break;
      signs[k] = sign_of_index(s.outcomes.at(static_cast<std::size_t>(at)));
    }
    if (std::all_of(signs.begin(), signs.end(), [](int v) { return v != 0; })) {
      const auto o = untranslate_outcomes({signs[0], signs[1], signs[2], signs[3]});
      const int one_based[] = {o.Lzz, o.Lxx, o.Lzx, o.Lxz};
      return one_based[two - std::begin(kTwoPhoton)] - 1;
    }
  }
  throw std::invalid_argument("model does not determine an outcome for '" + std::string(physical_id) + "'");
}

int response(const HVModel& model, const HiddenState& s, const DerivedMeasurement& d) {
  return d.value(static_cast<std::size_t>(physical_outcome(model, s, d.parent)));
}

StatisticsReport reproduce_statistics(const HVModel& model, const Ket& state) {
  const Realization r = build_realization(model.realization_index);
  StatisticsReport rep;
  const auto finish = [&](DistributionCheck c) {
    for (std::size_t k = 0; k < c.born.size(); ++k) {
      c.max_deviation = std::max(c.max_deviation, std::abs(c.model[k] - c.born[k]));
    }
    rep.max_deviation = std::max(rep.max_deviation, c.max_deviation);
    rep.checks.push_back(std::move(c));
  };

  for (const auto& pm : r.physicals) {
    DistributionCheck c{pm.id, pm.outcomes, std::vector<double>(pm.size(), 0.0), pm.born_distribution(state), 0.0};
    for (const auto& w : model.states) {
      c.model[static_cast<std::size_t>(physical_outcome(model, w.state, pm.id))] += w.probability;
    }
    finish(std::move(c));
  }

  for (const auto& [a, b] : r.compatible_physicals) {
    const auto& pa = r.physical(a);
    const auto& pb = r.physical(b);
    DistributionCheck c{a + "&" + b, {}, std::vector<double>(pa.size() * pb.size(), 0.0), {}, 0.0};
    for (std::size_t i = 0; i < pa.size(); ++i) {
      for (std::size_t j = 0; j < pb.size(); ++j) {
        c.outcomes.push_back(pa.outcomes[i] + "," + pb.outcomes[j]);
        c.born.push_back(expectation(state, pa.projector(i) * pb.projector(j)));
      }
    }
    for (const auto& w : model.states) {
      const auto i = static_cast<std::size_t>(physical_outcome(model, w.state, a));
      const auto j = static_cast<std::size_t>(physical_outcome(model, w.state, b));
      c.model[i * pb.size() + j] += w.probability;
    }
    finish(std::move(c));
  }
  rep.pass = rep.max_deviation <= kStatisticsTol;
  return rep;
}

bool audit_noncontextuality(const HVModel& model, const Realization& realization) {
  if (model.physicals.size() != model.outcome_labels.size()) return false;
  for (const auto& w : model.states) {
    if (w.state.outcomes.size() != model.physicals.size()) return false;
    for (std::size_t k = 0; k < w.state.outcomes.size(); ++k) {
      const int o = w.state.outcomes[k];
      if (o < 0 || static_cast<std::size_t>(o) >= model.outcome_labels[k].size()) return false;
    }
  }
  // Every derived measurement must be answered through its parent alone.
  for (const auto& d : realization.derived) {
    if (!realization.has_physical(d.parent)) return false;
    const auto& parent = realization.physical(d.parent);
    if (d.outcome_map.size() != parent.size()) return false;
    for (const auto& w : model.states) {
      try {
        const int o = physical_outcome(model, w.state, d.parent);
        if (o < 0 || static_cast<std::size_t>(o) >= parent.size()) return false;
      } catch (const std::invalid_argument&) {
        return false;
      }
    }
  }
  return true;
}

std::string to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::kInadmissibleTriple: return "inadmissible_triple";
    case WitnessKind::kDisagreement: return "disagreement";
    case WitnessKind::kSimultaneousViolation: return "simultaneous_violation";
    case WitnessKind::kIdentificationViolation: return "identification_violation";
  }
  return "unknown";
}

std::vector<Witness> violation_witnesses(const HVModel& model, const Realization& realization) {
  struct ContextSelections {
    ContextId context;
    std::vector<Selection> selections;
    std::vector<std::array<const DerivedMeasurement*, 3>> measures;
  };
  std::vector<ContextSelections> contexts;
  for (const auto& ctx : all_contexts()) {
    ContextSelections cs{ctx, context_selections(realization, ctx), {}};
    for (const auto& sel : cs.selections) {
      cs.measures.push_back({&realization.derived_measurement(sel.ids[0]),
                             &realization.derived_measurement(sel.ids[1]),
                             &realization.derived_measurement(sel.ids[2])});
    }
    contexts.push_back(std::move(cs));
  }

  std::vector<Witness> out;
  for (std::size_t si = 0; si < model.states.size(); ++si) {
    const auto& w = model.states[si];
    if (w.probability <= kWitnessProbability) continue;
    const auto make = [&](WitnessKind kind) {
      Witness wit;
      wit.kind = kind;
      wit.state_index = si;
      wit.state_label = model.label(w.state);
      wit.probability = w.probability;
      return wit;
    };

    for (const auto& cs : contexts) {
      for (std::size_t k = 0; k < cs.selections.size(); ++k) {
        const auto& ms = cs.measures[k];
        const Triple t{response(model, w.state, *ms[0]), response(model, w.state, *ms[1]),
                       response(model, w.state, *ms[2])};
        if (is_admissible(cs.context, t)) continue;
        Witness wit = make(cs.selections[k].simultaneous ? WitnessKind::kSimultaneousViolation
                                                         : WitnessKind::kInadmissibleTriple);
        wit.context = cs.context;
        wit.measurements.assign(cs.selections[k].ids.begin(), cs.selections[k].ids.end());
        wit.values.assign(t.begin(), t.end());
        out.push_back(std::move(wit));
      }
    }

    for (int c = 0; c < 9; ++c) {
      const auto& ids = realization.cell_map[c];
      for (std::size_t p = 0; p < ids.size(); ++p) {
        for (std::size_t q = p + 1; q < ids.size(); ++q) {
          const int vp = response(model, w.state, realization.derived_measurement(ids[p]));
          const int vq = response(model, w.state, realization.derived_measurement(ids[q]));
          if (vp == vq) continue;
          Witness wit = make(realization.identified(ids[p], ids[q]) ? WitnessKind::kIdentificationViolation
                                                                    : WitnessKind::kDisagreement);
          wit.cell = Cell::from_index(c);
          wit.measurements = {ids[p], ids[q]};
          wit.values = {vp, vq};
          out.push_back(std::move(wit));
        }
      }
    }
  }
  return out;
}

}  // namespace pmsq
