#pragma once

// The 3x3 operator square, its commutation structure, the tabulated common
// eigenbases of its six contexts, and the exhaustive +-1 assignment search.

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmsq/qm.hpp"

namespace pmsq {

struct Cell {
  int row = 0;
  int col = 0;

  constexpr int index() const { return 3 * row + col; }
  static constexpr Cell from_index(int i) { return {i / 3, i % 3}; }
  friend constexpr bool operator==(Cell, Cell) = default;
};

std::string to_string(Cell c);

using PauliPair = std::pair<PauliLabel, PauliLabel>;

struct PMSquare {
  std::array<PauliPair, 9> grid;

  const PauliPair& at(Cell c) const { return grid[c.index()]; }
  TwoQubitOperator op(Cell c) const { return pauli_tensor(at(c).first, at(c).second); }
};

std::string operator_name(const PauliPair& p);  // e.g. "ZxI"

enum class ContextKind { kRow, kColumn };

struct ContextId {
  ContextKind kind = ContextKind::kRow;
  int index = 0;

  std::array<Cell, 3> cells() const;
  /// "row0".."row2", "col0".."col2".
  std::string name() const;
  friend constexpr bool operator==(ContextId, ContextId) = default;
};

/// row0, row1, row2, col0, col1, col2.
const std::array<ContextId, 6>& all_contexts();

/// Accepts "row0"/"r0" and "col0"/"c0" forms; throws std::invalid_argument.
ContextId parse_context(std::string_view name);

using Triple = std::array<int, 3>;

struct EigenEntry {
  std::string label;
  Ket vector;
  Triple values;
};

struct EigenTable {
  ContextId context;
  std::array<EigenEntry, 4> entries;
};

struct Assignment {
  std::array<int, 9> values{};

  int at(Cell c) const { return values[c.index()]; }
  Triple triple(ContextId ctx) const;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

PMSquare build_square();

enum class Commutation { kCommute, kNonCommuting };

struct PairRelation {
  Cell a;
  Cell b;
  Commutation relation;
  double commutator_norm;  // largest entry modulus of [A, B]
};

/// Classifies all 36 unordered cell pairs by computing their commutators.
/// Throws ConsistencyError if the classification differs from the
/// same-row-or-same-column predicate.
std::vector<PairRelation> commutation_relation(const PMSquare& square);

/// Verified eigentable for a context. Throws ConsistencyError if the
/// transcribed data fails orthonormality, the eigen-equation or the product
/// rule.
const EigenTable& eigentable(ContextId context);

/// Largest |A v - lambda v| entry over the table's 12 eigen-equations.
double eigentable_residual(const EigenTable& table, const PMSquare& square);

/// Sign s with A*B*C = s*I for the context's operators. Throws
/// ConsistencyError if the product is not +-identity or the sign differs from
/// the expected +1 (rows, columns 0-1) / -1 (column 2).
int context_operator_product(const PMSquare& square, ContextId context);

/// The four value triples of the context's eigentable.
std::array<Triple, 4> admissible_triples(ContextId context);
bool is_admissible(ContextId context, const Triple& t);

/// All assignments of +-1 to the nine cells whose triple in each active
/// context is admissible, sorted lexicographically (-1 before +1, cells
/// row-major).
std::vector<Assignment> search_assignments(std::span<const ContextId> active);

/// Every state of the six eigentables, addressable by its table label
/// (Psi1, PsiP1, PsiPP1, Phi1, PhiP1, PhiPP1, ...).
const EigenEntry* find_table_state(std::string_view label);
std::vector<std::string> table_state_labels();

}  // namespace pmsq
