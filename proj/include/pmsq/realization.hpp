#pragma once

// The three physical realizations of the square: physical measurements,
// derived +-1 measurements (functions of a parent's outcome), the
// cell -> measurement map, and checks of the unique-realization and
// simultaneity requirements.

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pmsq/qm.hpp"
#include "pmsq/square.hpp"

namespace pmsq {

enum class Side { kLeft, kRight };

/// Projector (I + sign * sigma_axis)/2 on one photon, identity on the other.
struct SideProjector {
  PauliLabel axis;
  Side side;
  int sign;
};

/// A 4-outcome measurement resolves each outcome by a basis ket; a 2-outcome
/// single-photon measurement by a side projector.
using OutcomeResolution = std::variant<Ket, SideProjector>;

struct PhysicalMeasurement {
  std::string id;
  std::vector<std::string> outcomes;
  std::vector<OutcomeResolution> resolution;

  std::size_t size() const { return outcomes.size(); }
  TwoQubitOperator projector(std::size_t outcome) const;
  /// Throws std::invalid_argument for labels not among `outcomes`.
  std::size_t outcome_index(std::string_view label) const;
  std::vector<double> born_distribution(const Ket& state) const;
};

struct DerivedMeasurement {
  std::string id;
  std::string parent;
  /// Parent outcome label -> +-1, in the parent's outcome order.
  std::vector<std::pair<std::string, int>> outcome_map;
  /// The square operator this function of the parent's outcome reproduces.
  PauliPair realizes;

  int value(std::size_t parent_outcome) const { return outcome_map.at(parent_outcome).second; }
};

struct Realization {
  int index = 0;
  std::vector<PhysicalMeasurement> physicals;
  std::vector<DerivedMeasurement> derived;
  std::array<std::vector<std::string>, 9> cell_map;
  /// Derived measurements declared physically identical.
  std::vector<std::pair<std::string, std::string>> identifications;
  /// Distinct physical measurements that can be performed on the same pair
  /// (single-photon measurements on opposite wings).
  std::vector<std::pair<std::string, std::string>> compatible_physicals;

  const PhysicalMeasurement& physical(std::string_view id) const;
  const DerivedMeasurement& derived_measurement(std::string_view id) const;
  std::size_t physical_index(std::string_view id) const;
  bool has_physical(std::string_view id) const;

  bool identified(std::string_view a, std::string_view b) const;
  /// Structural simultaneity of two derived measurements: shared parent,
  /// declared identification, or compatible parents (each checked up to
  /// identification).
  bool simultaneous(std::string_view a, std::string_view b) const;
};

/// Throws std::invalid_argument for indices outside {1,2,3}.
Realization build_realization(int index);

/// Throws std::invalid_argument for an unknown parent outcome label.
int derived_outcome(const DerivedMeasurement& d, std::string_view parent_outcome);

/// P(+1), P(-1) for a derived measurement.
std::array<double, 2> derived_distribution(const Realization& r, const DerivedMeasurement& d,
                                           const Ket& state);

/// One choice of realizing measurement for each cell of a context.
struct Selection {
  std::array<std::string, 3> ids;
  bool simultaneous = false;
};

/// All selections for a context in cell_map order.
std::vector<Selection> context_selections(const Realization& r, ContextId context);

struct MultiplyRealizedCell {
  Cell cell;
  std::vector<std::string> measurements;
};

struct BrokenPair {
  ContextId context;
  std::string first;
  std::string second;
};

struct RequirementReport {
  bool unique_realization_ok = true;
  std::vector<MultiplyRealizedCell> multiply_realized_cells;
  bool simultaneity_ok = true;
  std::vector<BrokenPair> broken_contexts;

  std::vector<ContextId> broken_context_ids() const;
};

RequirementReport check_requirements(const Realization& r);

/// Outcome indices (1..4) of the four two-photon polarization measurements.
struct PolarizationOutcomes {
  int Lzz = 1;
  int Lxx = 1;
  int Lzx = 1;
  int Lxz = 1;
  friend bool operator==(const PolarizationOutcomes&, const PolarizationOutcomes&) = default;
};

/// +-1 outcomes of the four single-photon polarization measurements.
struct SinglePhotonOutcomes {
  int left_z = 1;
  int right_z = 1;
  int left_x = 1;
  int right_x = 1;
  friend bool operator==(const SinglePhotonOutcomes&, const SinglePhotonOutcomes&) = default;
};

/// Throws std::invalid_argument for out-of-range indices or an inconsistent
/// tuple; the message names the clashing pair.
SinglePhotonOutcomes translate_outcomes(const PolarizationOutcomes& outcomes);
PolarizationOutcomes untranslate_outcomes(const SinglePhotonOutcomes& signs);

}  // namespace pmsq
