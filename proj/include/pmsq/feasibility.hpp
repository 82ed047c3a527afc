#pragma once

// Dense phase-1 simplex for { x >= 0 : A x = b } with Bland's pivoting rule.
// Infeasible systems come back with a Farkas certificate y such that
// y^T A <= 0 componentwise and y^T b > 0.

#include <cstddef>
#include <vector>

namespace pmsq {

struct LinearRow {
  std::vector<double> coefficients;
  double rhs = 0.0;
};

struct LinearSystem {
  std::size_t num_vars = 0;
  std::vector<LinearRow> eq_rows;
};

enum class FeasibilityStatus { kFeasible, kInfeasible };

struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::kInfeasible;
  std::vector<double> point;        // feasible only
  std::vector<double> certificate;  // infeasible only
  double phase1_objective = 0.0;    // sum of artificial variables at optimum
  std::size_t pivots = 0;

  bool feasible() const { return status == FeasibilityStatus::kFeasible; }
};

/// Largest |A x - b| over the rows.
double max_residual(const LinearSystem& system, const std::vector<double>& x);

/// True if y^T A <= tol componentwise and y^T b > tol.
bool is_farkas_certificate(const LinearSystem& system, const std::vector<double>& y, double tol = 1e-9);

/// Throws std::invalid_argument for ragged or non-finite input. Throws
/// std::runtime_error if a returned point or certificate fails its own
/// verification, which indicates numerical breakdown.
FeasibilityResult solve(const LinearSystem& system);

}  // namespace pmsq
