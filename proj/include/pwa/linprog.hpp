#pragma once

#include "pwa/types.hpp"

namespace pwa {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vector x;             // primal solution when status != Infeasible
  Scalar objective = 0;
};

/// Minimize c.x subject to A x >= b, x >= 0.
///
/// Dense two-phase simplex with Bland's rule, so runs are deterministic and
/// cycling-free. Sized for the small feasibility and L1 subproblems that
/// arise here (tens of rows), not a general-purpose LP package.
LpResult lp_min_geq(const Eigen::Ref<const Vector>& c,
                    const Eigen::Ref<const Matrix>& A,
                    const Eigen::Ref<const Vector>& b);

}  // namespace pwa
