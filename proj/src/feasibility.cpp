#include "pmsq/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmsq {

namespace {

constexpr double kPivotTol = 1e-12;
constexpr double kFeasibleObjective = 1e-10;
constexpr double kVerifyTol = 1e-9;

void validate(const LinearSystem& s) {
  for (const auto& row : s.eq_rows) {
    if (row.coefficients.size() != s.num_vars) {
      throw std::invalid_argument("coefficient row length differs from num_vars");
    }
    if (!std::isfinite(row.rhs) ||
        !std::all_of(row.coefficients.begin(), row.coefficients.end(), [](double v) { return std::isfinite(v); })) {
      throw std::invalid_argument("linear system has non-finite entries");
    }
  }
}

// Dense tableau over n structural and m artificial columns.
class Tableau {
 public:
  explicit Tableau(const LinearSystem& s)
      : m_(s.eq_rows.size()), n_(s.num_vars), width_(n_ + m_),
        a_(m_ * width_, 0.0), rhs_(m_), sign_(m_), reduced_(width_, 0.0), basis_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& row = s.eq_rows[i];
      sign_[i] = row.rhs < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = sign_[i] * row.coefficients[j];
      at(i, n_ + i) = 1.0;
      rhs_[i] = sign_[i] * row.rhs;
      basis_[i] = n_ + i;
    }
    // Phase-1 costs: 0 on structural columns, 1 on artificials.
    for (std::size_t j = 0; j < n_; ++j) {
      double s_col = 0.0;
      for (std::size_t i = 0; i < m_; ++i) s_col += at(i, j);
      reduced_[j] = -s_col;
    }
  }

  std::size_t run() {
    std::size_t pivots = 0;
    for (;;) {
      // Bland: lowest-index improving column.
      std::size_t enter = width_;
      for (std::size_t j = 0; j < width_; ++j) {
        if (reduced_[j] < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter == width_) return pivots;

      // Minimum ratio; ties go to the lowest basic variable index.
      std::size_t leave = m_;
      double best = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double piv = at(i, enter);
        if (piv <= kPivotTol) continue;
        const double ratio = rhs_[i] / piv;
        if (leave == m_ || ratio < best - kPivotTol ||
            (std::abs(ratio - best) <= kPivotTol && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) throw std::runtime_error("phase-1 simplex reported an unbounded direction");
      pivot(leave, enter);
      ++pivots;
    }
  }

  double objective() const {
    double obj = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) obj += rhs_[i];
    }
    return obj;
  }

  std::vector<double> point() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = rhs_[i] < 0.0 && rhs_[i] > -kPivotTol ? 0.0 : rhs_[i];
    }
    return x;
  }

  // Duals of the phase-1 problem, mapped back to the caller's row signs.
  std::vector<double> certificate() const {
    std::vector<double> y(m_);
    for (std::size_t i = 0; i < m_; ++i) y[i] = sign_[i] * (1.0 - reduced_[n_ + i]);
    return y;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return a_[i * width_ + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * width_ + j]; }

  void pivot(std::size_t row, std::size_t col) {
    const double inv = 1.0 / at(row, col);
    for (std::size_t j = 0; j < width_; ++j) at(row, j) *= inv;
    rhs_[row] *= inv;
    at(row, col) = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = at(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) at(i, j) -= f * at(row, j);
      rhs_[i] -= f * rhs_[row];
      at(i, col) = 0.0;
    }
    const double f = reduced_[col];
    for (std::size_t j = 0; j < width_; ++j) reduced_[j] -= f * at(row, j);
    reduced_[col] = 0.0;
    basis_[row] = col;
  }

  std::size_t m_, n_, width_;
  std::vector<double> a_;
  std::vector<double> rhs_;
  std::vector<double> sign_;
  std::vector<double> reduced_;
  std::vector<std::size_t> basis_;
};

}  // namespace

double max_residual(const LinearSystem& system, const std::vector<double>& x) {
  double worst = 0.0;
  for (const auto& row : system.eq_rows) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < system.num_vars; ++j) lhs += row.coefficients[j] * x[j];
    worst = std::max(worst, std::abs(lhs - row.rhs));
  }
  return worst;
}

bool is_farkas_certificate(const LinearSystem& system, const std::vector<double>& y, double tol) {
  if (y.size() != system.eq_rows.size()) return false;
  double yb = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) yb += y[i] * system.eq_rows[i].rhs;
  for (std::size_t j = 0; j < system.num_vars; ++j) {
    double ya = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) ya += y[i] * system.eq_rows[i].coefficients[j];
    if (ya > tol) return false;
  }
  return yb > tol;
}

FeasibilityResult solve(const LinearSystem& system) {
  validate(system);
  FeasibilityResult res;
  if (system.eq_rows.empty()) {
    res.status = FeasibilityStatus::kFeasible;
    res.point.assign(system.num_vars, 0.0);
    return res;
  }

  Tableau t(system);
  res.pivots = t.run();
  res.phase1_objective = t.objective();

  if (res.phase1_objective <= kFeasibleObjective) {
    res.status = FeasibilityStatus::kFeasible;
    res.point = t.point();
    const double min_x = *std::min_element(res.point.begin(), res.point.end());
    if (max_residual(system, res.point) > kVerifyTol || min_x < -kPivotTol) {
      throw std::runtime_error("simplex point failed verification");
    }
    return res;
  }

  res.status = FeasibilityStatus::kInfeasible;
  res.certificate = t.certificate();
  // The certificate's y^T b equals the phase-1 optimum, which may sit below
  // kVerifyTol just outside the feasibility threshold; check the sign there.
  const double tol = std::min(kVerifyTol, 0.5 * res.phase1_objective);
  if (!is_farkas_certificate(system, res.certificate, tol)) {
    throw std::runtime_error("Farkas certificate failed verification");
  }
  return res;
}

}  // namespace pmsq
