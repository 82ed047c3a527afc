#pragma once

// Value-definite hidden-variable models for the three realizations, the
// CHSH correlator check for the fixed z/x settings, and the joint
// distribution for the four single-photon polarization measurements
// obtained by linear feasibility.

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pmsq/feasibility.hpp"
#include "pmsq/qm.hpp"
#include "pmsq/realization.hpp"
#include "pmsq/square.hpp"

namespace pmsq {

/// Deterministic outcome (0-based index) for each of the model's physical
/// measurements.
struct HiddenState {
  std::vector<int> outcomes;
};

struct WeightedState {
  HiddenState state;
  double probability = 0.0;
};

struct HVModel {
  int realization_index = 1;
  std::vector<std::string> physicals;
  std::vector<std::vector<std::string>> outcome_labels;
  std::vector<WeightedState> states;

  /// lambda^{ijk} (1-based indices) for model 1; lambda^{i,j,k,l,m,n} with
  /// +-1 entries for the single-photon measurements otherwise.
  std::string label(const HiddenState& s) const;
  double total_probability() const;
};

// --- CHSH ---------------------------------------------------------------

/// Correlator order: (z,z), (z,x), (x,z), (x,x); first axis on the left.
struct CHReport {
  std::array<double, 4> correlators{};
  /// E1+E2+E3-E4, E1+E2-E3+E4, E1-E2+E3+E4, -E1+E2+E3+E4.
  std::array<double, 4> chsh_values{};
  double max_abs = 0.0;
  bool violated = false;
};

inline constexpr double kChshBound = 2.0;
inline constexpr double kChshSlack = 1e-9;

CHReport ch_report(const Ket& state);

/// Eigenvector of ZxZ + ZxX + XxZ - XxX for its top eigenvalue 2*sqrt(2).
/// Built in closed form and checked with apply(); throws ConsistencyError if
/// the check fails.
const Ket& chsh_max_state();

// --- Joint distribution for the four single-photon measurements -----------

/// Atom (a, b, a', b') = (left z, right z, left x, right x), each +-1. Atoms
/// are indexed with +1 before -1, a most significant.
std::size_t fine_atom_index(int a, int b, int a_prime, int b_prime);
std::array<int, 4> fine_atom_signs(std::size_t index);

/// Quantum joint P(left_s = u, right_t = v) for the pairing order above.
struct PairJoint {
  PauliLabel left_axis;
  PauliLabel right_axis;
  std::array<double, 4> probabilities;  // (u,v) = (+,+), (+,-), (-,+), (-,-)
};
std::array<PairJoint, 4> quantum_pair_joints(const Ket& state);

/// Normalization plus 16 pairwise-marginal equalities over the 16 atoms.
LinearSystem fine_system(const Ket& state);

struct FineResult {
  FeasibilityStatus status = FeasibilityStatus::kInfeasible;
  std::array<double, 16> joint{};
  CHReport ch;
  LinearSystem system;
  std::vector<double> certificate;
  double residual = 0.0;

  bool feasible() const { return status == FeasibilityStatus::kFeasible; }
};

FineResult fine_joint(const Ket& state);

/// Thrown by build_model23 when no joint distribution exists for the state.
class FineInfeasibleError : public std::runtime_error {
 public:
  explicit FineInfeasibleError(FineResult result);
  const FineResult& result() const { return result_; }

 private:
  FineResult result_;
};

// --- Models ---------------------------------------------------------------

/// 64 hidden states over Lzz, Lxx, B with product Born weights.
HVModel build_model1(const Ket& state);

/// 256 hidden states over Ll_z, Lr_z, Ll_x, Lr_x, B, Bprime. The same model
/// serves realization 2 through translate_outcomes.
HVModel build_model23(const Ket& state, int realization_index = 3);

/// Outcome index of `physical_id` in hidden state `s`, resolving the
/// two-photon polarization measurements of realization 2 through the
/// single-photon outcomes. Throws std::invalid_argument if unresolvable.
int physical_outcome(const HVModel& model, const HiddenState& s, std::string_view physical_id);

/// +-1 response of a derived measurement in a hidden state. Depends only on
/// the hidden state and the measurement's parent.
int response(const HVModel& model, const HiddenState& s, const DerivedMeasurement& d);

struct DistributionCheck {
  std::string measurement;
  std::vector<std::string> outcomes;
  std::vector<double> model;
  std::vector<double> born;
  double max_deviation = 0.0;
};

struct StatisticsReport {
  std::vector<DistributionCheck> checks;
  double max_deviation = 0.0;
  bool pass = false;
};

inline constexpr double kStatisticsTol = 1e-9;

/// Compares model marginals with Born predictions for every physical
/// measurement of the model's realization, and for every declared pair of
/// jointly performable physical measurements.
StatisticsReport reproduce_statistics(const HVModel& model, const Ket& state);

/// True iff the model's layout assigns every derived measurement of the
/// realization a response determined by (hidden state, parent measurement):
/// each hidden state is total over the model's physical measurements with
/// in-range outcomes and every parent resolves.
bool audit_noncontextuality(const HVModel& model, const Realization& realization);

enum class WitnessKind {
  /// Inadmissible triple from a non-simultaneous selection of a context.
  kInadmissibleTriple,
  /// Two non-identified realizers of one cell disagree.
  kDisagreement,
  /// Inadmissible triple within a simultaneous selection. Never expected.
  kSimultaneousViolation,
  /// Two identified realizers of one cell disagree. Never expected.
  kIdentificationViolation,
};

std::string to_string(WitnessKind k);

struct Witness {
  WitnessKind kind = WitnessKind::kInadmissibleTriple;
  std::size_t state_index = 0;
  std::string state_label;
  double probability = 0.0;
  std::optional<ContextId> context;
  std::optional<Cell> cell;
  std::vector<std::string> measurements;
  std::vector<int> values;
};

inline constexpr double kWitnessProbability = 1e-12;

/// Scans hidden states with probability above kWitnessProbability.
std::vector<Witness> violation_witnesses(const HVModel& model, const Realization& realization);

}  // namespace pmsq
