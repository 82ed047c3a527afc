#include "pmsq/commands.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "pmsq/hv_models.hpp"
#include "pmsq/realization.hpp"
#include "pmsq/sampling.hpp"
#include "pmsq/square.hpp"

namespace pmsq {

namespace {

constexpr std::size_t kMaxListedWitnesses = 100;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  // Keep floats recognizable as floats.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void dump_into(std::string& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent < 0 ? ":" : ": ";
        dump_into(out, value, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool scalars = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += scalars ? ", " : ",";
        first = false;
        if (!scalars) newline(depth + 1);
        dump_into(out, e, indent, depth + 1);
      }
      if (!scalars) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

void human_into(std::ostringstream& os, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  const auto scalar = [](const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
      return std::string(buf);
    }
    return v.dump();
  };
  const auto inline_array = [&](const Json& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar(v[i]);
    return s + "]";
  };
  const auto is_flat = [](const Json& v) {
    return v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
  };
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_primitive()) {
        os << pad << key << ": " << scalar(value) << '\n';
      } else if (is_flat(value)) {
        os << pad << key << ": " << inline_array(value) << '\n';
      } else {
        os << pad << key << ":\n";
        human_into(os, value, depth + 1);
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (e.is_primitive()) {
        os << pad << "- " << scalar(e) << '\n';
      } else if (is_flat(e)) {
        os << pad << "- " << inline_array(e) << '\n';
      } else {
        os << pad << "-\n";
        human_into(os, e, depth + 1);
      }
    }
  } else {
    os << pad << scalar(j) << '\n';
  }
}

Json amplitudes_json(const Ket& k) {
  Json a = Json::array();
  for (const auto& c : k.components()) a.push_back(Json::array({c.real(), c.imag()}));
  return a;
}

Json state_inputs(const StateSpec& s) {
  return Json{{"state", s.source}, {"amplitudes", amplitudes_json(s.ket)}};
}

Json ch_json(const CHReport& ch) {
  return Json{{"correlators", {{"zz", ch.correlators[0]}, {"zx", ch.correlators[1]},
                               {"xz", ch.correlators[2]}, {"xx", ch.correlators[3]}}},
              {"chsh_values", ch.chsh_values},
              {"max_abs", ch.max_abs},
              {"bound", kChshBound},
              {"violated", ch.violated}};
}

Json fine_json(const FineResult& f) {
  Json j{{"status", f.feasible() ? "feasible" : "infeasible"}};
  if (f.feasible()) {
    Json atoms = Json::array();
    for (std::size_t i = 0; i < 16; ++i) {
      const auto s = fine_atom_signs(i);
      atoms.push_back(Json{{"left_z", s[0]}, {"right_z", s[1]}, {"left_x", s[2]}, {"right_x", s[3]},
                           {"probability", f.joint[i]}});
    }
    j["joint"] = std::move(atoms);
    j["max_residual"] = f.residual;
  } else {
    j["certificate"] = f.certificate;
  }
  j["ch"] = ch_json(f.ch);
  return j;
}

Json distribution_json(const DistributionCheck& c) {
  return Json{{"measurement", c.measurement}, {"outcomes", c.outcomes}, {"model", c.model},
              {"born", c.born}, {"max_deviation", c.max_deviation}};
}

Json witness_json(const Witness& w) {
  Json j{{"kind", to_string(w.kind)}, {"state", w.state_label}, {"probability", w.probability}};
  if (w.context) j["context"] = w.context->name();
  if (w.cell) j["cell"] = to_string(*w.cell);
  j["measurements"] = w.measurements;
  j["values"] = w.values;
  return j;
}

std::optional<StateSpec> resolve_named(const std::string& name) {
  if (name == "chsh-max") return StateSpec{name, chsh_max_state()};
  if (name.rfind("psi", 0) != 0 && name.rfind("phi", 0) != 0) return std::nullopt;
  std::string label = name;
  label[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
  if (const EigenEntry* e = find_table_state(label)) return StateSpec{name, e->vector};
  return std::nullopt;
}

}  // namespace

std::string dump_json(const Json& doc, int indent) {
  std::string out;
  dump_into(out, doc, indent, 0);
  return out;
}

std::string to_json_text(const Report& r) {
  Json doc{{"command", r.command}, {"inputs", r.inputs}, {"results", r.results}, {"pass", r.pass}};
  return dump_json(doc) + "\n";
}

std::string to_human_text(const Report& r) {
  std::ostringstream os;
  os << "command: " << r.command << '\n';
  if (!r.inputs.empty()) {
    os << "inputs:\n";
    human_into(os, r.inputs, 1);
  }
  os << "results:\n";
  human_into(os, r.results, 1);
  os << "pass: " << (r.pass ? "true" : "false") << '\n';
  return os.str();
}

std::vector<std::string> named_states() {
  std::vector<std::string> out;
  for (const auto& label : table_state_labels()) {
    std::string n = label;
    n[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(n[0])));
    out.push_back(n);
  }
  out.push_back("chsh-max");
  return out;
}

StateSpec parse_state_document(std::string_view text, std::string source, bool normalize) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("state document " + source + " is not valid: " + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("state document must be an object");
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw std::invalid_argument("state 'name' must be a string");
    auto named = resolve_named(doc["name"].get<std::string>());
    if (!named) throw std::invalid_argument("unknown state name '" + doc["name"].get<std::string>() + "'");
    named->source = std::move(source);
    return *named;
  }
  if (!doc.contains("amplitudes")) throw std::invalid_argument("state document needs 'name' or 'amplitudes'");
  const Json& amps = doc["amplitudes"];
  if (!amps.is_array() || amps.size() != 4) throw std::invalid_argument("'amplitudes' must hold four [re, im] pairs");
  Vec4 v{};
  for (std::size_t i = 0; i < 4; ++i) {
    const Json& p = amps[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw std::invalid_argument("'amplitudes' must hold four [re, im] pairs");
    }
    v[i] = Amplitude{p[0].get<double>(), p[1].get<double>()};
  }
  return {std::move(source), Ket(v, normalize ? Normalize::kRenormalize : Normalize::kVerify)};
}

StateSpec resolve_state(std::string_view name_or_path, bool normalize) {
  const std::string name(name_or_path);
  if (auto named = resolve_named(name)) return *named;
  std::ifstream in(name);
  if (!in) throw std::invalid_argument("unknown state '" + name + "' (not a state name or readable file)");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_state_document(buf.str(), name, normalize);
}

Report cmd_verify() {
  Report rep{"verify"};
  const PMSquare square = build_square();
  bool ok = true;

  Json pairs = Json::array();
  try {
    for (const auto& p : commutation_relation(square)) {
      pairs.push_back(Json{{"a", to_string(p.a)},
                           {"b", to_string(p.b)},
                           {"relation", p.relation == Commutation::kCommute ? "commute" : "not_commuting"},
                           {"commutator_norm", p.commutator_norm}});
    }
    rep.results["commutation"] = Json{{"pairs_checked", pairs.size()}, {"matches_row_column_rule", true},
                                      {"pairs", std::move(pairs)}};
  } catch (const ConsistencyError& e) {
    ok = false;
    rep.results["commutation"] = Json{{"matches_row_column_rule", false}, {"error", e.what()}};
  }

  Json tables = Json::array();
  std::size_t checks = 0;
  try {
    for (const auto& ctx : all_contexts()) {
      const auto& t = eigentable(ctx);
      Json entries = Json::array();
      for (const auto& e : t.entries) {
        entries.push_back(Json{{"label", e.label}, {"amplitudes", amplitudes_json(e.vector)}, {"values", e.values}});
        checks += 1;
      }
      tables.push_back(Json{{"context", ctx.name()},
                            {"max_eigen_residual", eigentable_residual(t, square)},
                            {"entries", std::move(entries)}});
    }
  } catch (const ConsistencyError& e) {
    ok = false;
    tables.push_back(Json{{"error", e.what()}});
  }
  rep.results["eigenvector_checks"] = checks;
  rep.results["eigentables"] = std::move(tables);

  Json products = Json::object();
  for (const auto& ctx : all_contexts()) {
    try {
      products[ctx.name()] = context_operator_product(square, ctx);
    } catch (const ConsistencyError& e) {
      ok = false;
      products[ctx.name()] = e.what();
    }
  }
  rep.results["context_products"] = std::move(products);
  rep.pass = ok && checks == 24;
  return rep;
}

Report cmd_contradiction(const std::optional<std::vector<std::string>>& constraints) {
  Report rep{"contradiction"};
  std::vector<ContextId> active;
  if (constraints) {
    for (const auto& name : *constraints) {
      const ContextId ctx = parse_context(name);
      if (std::find(active.begin(), active.end(), ctx) == active.end()) active.push_back(ctx);
    }
  } else {
    active.assign(all_contexts().begin(), all_contexts().end());
  }
  Json names = Json::array();
  for (const auto& c : active) names.push_back(c.name());
  rep.inputs["constraints"] = names;

  const auto survivors = search_assignments(active);
  rep.results["assignments_enumerated"] = 512;
  rep.results["count"] = survivors.size();

  // Value products seen on unconstrained contexts; with the other five
  // active, column 2 only ever shows +1 where the operators demand -1.
  Json inactive = Json::object();
  for (const auto& ctx : all_contexts()) {
    if (std::find(active.begin(), active.end(), ctx) != active.end()) continue;
    std::vector<int> seen;
    for (const auto& a : survivors) {
      const Triple t = a.triple(ctx);
      const int prod = t[0] * t[1] * t[2];
      if (std::find(seen.begin(), seen.end(), prod) == seen.end()) seen.push_back(prod);
    }
    std::sort(seen.begin(), seen.end());
    inactive[ctx.name()] = Json{{"value_products", seen},
                                {"operator_product", context_operator_product(build_square(), ctx)}};
  }
  rep.results["unconstrained_contexts"] = std::move(inactive);

  Json list = Json::array();
  for (const auto& a : survivors) {
    list.push_back(Json::array({Json::array({a.values[0], a.values[1], a.values[2]}),
                                Json::array({a.values[3], a.values[4], a.values[5]}),
                                Json::array({a.values[6], a.values[7], a.values[8]})}));
  }
  rep.results["assignments"] = std::move(list);

  const bool all_six = active.size() == 6;
  rep.pass = survivors.empty() == all_six;
  return rep;
}

Report cmd_realization(int index) {
  Report rep{"realization"};
  rep.inputs["index"] = index;
  const Realization r = build_realization(index);
  const PMSquare square = build_square();

  Json physicals = Json::array();
  for (const auto& pm : r.physicals) physicals.push_back(Json{{"id", pm.id}, {"outcomes", pm.outcomes}});
  rep.results["physical_measurements"] = std::move(physicals);

  Json cells = Json::array();
  for (int i = 0; i < 9; ++i) {
    const Cell c = Cell::from_index(i);
    cells.push_back(Json{{"cell", to_string(c)}, {"operator", operator_name(square.at(c))},
                         {"measurements", r.cell_map[i]}});
  }
  rep.results["cell_map"] = std::move(cells);

  Json ident = Json::array();
  for (const auto& [a, b] : r.identifications) ident.push_back(Json::array({a, b}));
  rep.results["identifications"] = std::move(ident);

  const RequirementReport req = check_requirements(r);
  Json multi = Json::array();
  for (const auto& m : req.multiply_realized_cells) {
    multi.push_back(Json{{"cell", to_string(m.cell)}, {"measurements", m.measurements}});
  }
  Json broken = Json::array();
  for (const auto& b : req.broken_contexts) {
    broken.push_back(Json{{"context", b.context.name()}, {"pair", Json::array({b.first, b.second})}});
  }
  rep.results["requirements"] = Json{{"unique_realization_ok", req.unique_realization_ok},
                                     {"multiply_realized_cells", std::move(multi)},
                                     {"simultaneity_ok", req.simultaneity_ok},
                                     {"broken_contexts", std::move(broken)}};
  rep.pass = req.unique_realization_ok && req.simultaneity_ok;
  return rep;
}

Report cmd_model(int index, const StateSpec& state) {
  Report rep{"model"};
  rep.inputs["index"] = index;
  rep.inputs.update(state_inputs(state));
  const Realization r = build_realization(index);

  std::optional<HVModel> model;
  if (index == 1) {
    model = build_model1(state.ket);
  } else {
    const FineResult fine = fine_joint(state.ket);
    rep.results["fine_joint"] = fine_json(fine);
    if (!fine.feasible()) {
      rep.results["error"] = "no joint distribution reproduces the pairwise polarization statistics";
      rep.pass = false;
      rep.exit_code = kExitInfeasible;
      return rep;
    }
    model = build_model23(state.ket, index);
  }

  std::size_t nonzero = 0;
  for (const auto& w : model->states) nonzero += w.probability > kWitnessProbability ? 1 : 0;
  rep.results["model"] = Json{{"physical_measurements", model->physicals},
                              {"hidden_states", model->states.size()},
                              {"positive_probability_states", nonzero},
                              {"total_probability", model->total_probability()}};

  const StatisticsReport stats = reproduce_statistics(*model, state.ket);
  Json checks = Json::array();
  for (const auto& c : stats.checks) checks.push_back(distribution_json(c));
  rep.results["statistics"] = Json{{"max_deviation", stats.max_deviation}, {"tolerance", kStatisticsTol},
                                   {"pass", stats.pass}, {"checks", std::move(checks)}};

  const bool noncontextual = audit_noncontextuality(*model, r);
  rep.results["noncontextual"] = noncontextual;

  const auto witnesses = violation_witnesses(*model, r);
  std::map<std::string, std::size_t> by_kind;
  for (const auto k : {WitnessKind::kInadmissibleTriple, WitnessKind::kDisagreement,
                       WitnessKind::kSimultaneousViolation, WitnessKind::kIdentificationViolation}) {
    by_kind[to_string(k)] = 0;
  }
  for (const auto& w : witnesses) ++by_kind[to_string(w.kind)];
  Json listed = Json::array();
  for (std::size_t i = 0; i < witnesses.size() && i < kMaxListedWitnesses; ++i) {
    listed.push_back(witness_json(witnesses[i]));
  }
  Json counts = Json::object();
  for (const auto& [k, n] : by_kind) counts[k] = n;
  rep.results["witnesses"] = Json{{"total", witnesses.size()},
                                  {"by_kind", std::move(counts)},
                                  {"listed", std::move(listed)}};

  rep.pass = stats.pass && noncontextual && by_kind["simultaneous_violation"] == 0 &&
             by_kind["identification_violation"] == 0;
  return rep;
}

Report cmd_sample(int index, const StateSpec& state, std::uint64_t shots, std::uint64_t seed) {
  Report rep{"sample"};
  rep.inputs["index"] = index;
  rep.inputs.update(state_inputs(state));
  rep.inputs["shots"] = shots;
  rep.inputs["seed"] = seed;
  if (shots == 0) throw std::invalid_argument("--shots must be positive");

  const Realization r = build_realization(index);
  std::optional<HVModel> model;
  if (index == 1) {
    model = build_model1(state.ket);
  } else {
    try {
      model = build_model23(state.ket, index);
    } catch (const FineInfeasibleError& e) {
      rep.results["fine_joint"] = fine_json(e.result());
      rep.results["error"] = "no joint distribution reproduces the pairwise polarization statistics";
      rep.pass = false;
      rep.exit_code = kExitInfeasible;
      return rep;
    }
  }

  const SampleResult s = sample_model(*model, r, state.ket, shots, seed);
  const double bound = 5.0 / std::sqrt(static_cast<double>(shots));
  Json meas = Json::array();
  for (const auto& m : s.measurements) {
    meas.push_back(Json{{"measurement", m.measurement}, {"outcomes", m.outcomes}, {"counts", m.counts},
                        {"frequencies", m.frequencies}, {"born", m.born},
                        {"total_variation", m.total_variation}});
  }
  rep.results["rng"] = "splitmix64, one stream per shot";
  rep.results["measurements"] = std::move(meas);
  rep.results["max_total_variation"] = s.max_total_variation;
  rep.results["total_variation_bound"] = bound;
  rep.pass = s.max_total_variation < bound;
  return rep;
}

Report cmd_ch(const StateSpec& state) {
  Report rep{"ch"};
  rep.inputs.update(state_inputs(state));
  const FineResult fine = fine_joint(state.ket);
  rep.results = ch_json(fine.ch);
  rep.results["joint_distribution"] = fine.feasible() ? "feasible" : "infeasible";
  rep.pass = !fine.ch.violated;
  return rep;
}

}  // namespace pmsq
