#include "pwa/linprog.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pwa {

namespace {

constexpr Scalar kPivotTol = 1e-9;
constexpr Scalar kFeasTol = 1e-7;

// Tableau rows hold [x | surplus | artificial | rhs]; basis[r] is the column
// basic in row r. Bland's rule: entering = lowest eligible column, leaving =
// lowest basic index among ratio-test ties.
struct Tableau {
  Matrix T;                // R x (cols + 1)
  std::vector<int> basis;  // size R
  int rows = 0;
  int cols = 0;

  void pivot(int pr, int pc) {
    T.row(pr) /= T(pr, pc);
    for (int r = 0; r < rows; ++r) {
      if (r == pr) continue;
      const Scalar f = T(r, pc);
      if (f != 0) T.row(r) -= f * T.row(pr);
    }
    basis[pr] = pc;
  }

  // Minimizes obj (a reduced-cost row over all columns) in place.
  // Columns >= limit are excluded from entering. Returns false on
  // unboundedness.
  bool run(Eigen::RowVectorXd& obj, int limit) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (obj(j) < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Scalar best_ratio = std::numeric_limits<Scalar>::infinity();
      for (int r = 0; r < rows; ++r) {
        if (T(r, enter) > kPivotTol) {
          const Scalar ratio = T(r, cols) / T(r, enter);
          if (ratio < best_ratio - kPivotTol ||
              (ratio < best_ratio + kPivotTol &&
               (leave < 0 || basis[r] < basis[leave]))) {
            best_ratio = ratio;
            leave = r;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
      const Scalar f = obj(enter);
      obj -= f * T.row(leave).head(cols + 1);
    }
  }
};

}  // namespace

LpResult lp_min_geq(const Eigen::Ref<const Vector>& c,
                    const Eigen::Ref<const Matrix>& A,
                    const Eigen::Ref<const Vector>& b) {
  const int R = static_cast<int>(A.rows());
  const int m = static_cast<int>(A.cols());
  if (c.size() != m || b.size() != R)
    throw std::invalid_argument("lp_min_geq: dimension mismatch");

  LpResult out;
  if (R == 0) {
    // No constraints: minimum of c.x over x >= 0.
    if ((c.array() < 0).any()) {
      out.status = LpStatus::Unbounded;
      return out;
    }
    out.status = LpStatus::Optimal;
    out.x = Vector::Zero(m);
    out.objective = 0;
    return out;
  }

  Tableau tab;
  tab.rows = R;
  tab.cols = m + 2 * R;
  tab.T.setZero(R, tab.cols + 1);
  tab.basis.resize(R);
  for (int r = 0; r < R; ++r) {
    const Scalar sgn = b(r) < 0 ? -1 : 1;
    tab.T.row(r).head(m) = sgn * A.row(r);
    tab.T(r, m + r) = -sgn;            // surplus
    tab.T(r, m + R + r) = 1;           // artificial
    tab.T(r, tab.cols) = sgn * b(r);   // rhs >= 0
    tab.basis[r] = m + R + r;
  }

  // Phase 1: minimize the artificial sum.
  Eigen::RowVectorXd obj = Eigen::RowVectorXd::Zero(tab.cols + 1);
  for (int j = 0; j < tab.cols + 1; ++j) obj(j) = -tab.T.col(j).sum();
  for (int r = 0; r < R; ++r) obj(m + R + r) += 1;
  if (!tab.run(obj, tab.cols))
    throw std::logic_error("lp_min_geq: phase 1 unbounded");

  Scalar artificial_sum = 0;
  for (int r = 0; r < R; ++r)
    if (tab.basis[r] >= m + R) artificial_sum += tab.T(r, tab.cols);
  if (artificial_sum > kFeasTol) {
    out.status = LpStatus::Infeasible;
    return out;
  }

  // Drive any leftover basic artificials out; rows that cannot pivot are
  // redundant and stay inert (their rhs is ~0 and all real coefficients 0).
  for (int r = 0; r < R; ++r) {
    if (tab.basis[r] < m + R) continue;
    int pc = -1;
    for (int j = 0; j < m + R; ++j) {
      if (std::abs(tab.T(r, j)) > kPivotTol) {
        pc = j;
        break;
      }
    }
    if (pc >= 0) tab.pivot(r, pc);
  }

  // Phase 2: minimize c.x over the feasible basis, artificials excluded.
  obj.setZero();
  obj.head(m) = c.transpose();
  for (int r = 0; r < R; ++r) {
    if (tab.basis[r] >= m + R) continue;  // redundant row
    const Scalar cb = tab.basis[r] < m ? c(tab.basis[r]) : 0;
    if (cb != 0) obj -= cb * tab.T.row(r).head(tab.cols + 1);
  }
  if (!tab.run(obj, m + R)) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  out.status = LpStatus::Optimal;
  out.x = Vector::Zero(m);
  for (int r = 0; r < R; ++r)
    if (tab.basis[r] < m) out.x(tab.basis[r]) = tab.T(r, tab.cols);
  out.objective = c.dot(out.x);
  return out;
}

}  // namespace pwa
