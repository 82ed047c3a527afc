#pragma once

// Subcommands behind the pmsq executable. Each returns a Report; the
// executable only parses arguments, prints and maps exit codes.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pmsq/qm.hpp"

namespace pmsq {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInfeasible = 3;

struct Report {
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  bool pass = false;
  /// kExitInfeasible when a model could not be constructed, else kExitOk.
  int exit_code = kExitOk;
};

/// Serializes {command, inputs, results, pass} with 17 significant digits
/// per floating-point number.
std::string to_json_text(const Report& report);
std::string to_human_text(const Report& report);

/// Same number formatting as to_json_text for an arbitrary document.
std::string dump_json(const Json& doc, int indent = 2);

struct StateSpec {
  std::string source;  // name or file path as given
  Ket ket;
};

/// Resolves a state name (psi1..psi4, psiP1.., psiPP1.., phi1.., phiP1..,
/// phiPP1.., chsh-max) or a path to a state document:
///   {"name": "psi1"}  or  {"amplitudes": [[re, im], [re, im], [re, im], [re, im]]}
/// Throws std::invalid_argument for unknown names, unreadable or malformed
/// documents, and InvalidStateError for non-normalized amplitudes unless
/// `normalize` is set.
StateSpec resolve_state(std::string_view name_or_path, bool normalize = false);
StateSpec parse_state_document(std::string_view text, std::string source, bool normalize = false);

std::vector<std::string> named_states();

Report cmd_verify();
/// `constraints` defaults to all six contexts.
Report cmd_contradiction(const std::optional<std::vector<std::string>>& constraints);
Report cmd_realization(int index);
Report cmd_model(int index, const StateSpec& state);
Report cmd_sample(int index, const StateSpec& state, std::uint64_t shots, std::uint64_t seed);
Report cmd_ch(const StateSpec& state);

}  // namespace pmsq
