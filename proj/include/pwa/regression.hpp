#pragma once

#include <utility>
#include <vector>

#include "pwa/types.hpp"

namespace pwa {

/// Pointwise loss: nonnegative and zero only at a zero residual.
Scalar loss_value(Loss loss, Scalar e);

struct AffineFit {
  Vector w;                    // d+1 coefficients, intercept last
  Scalar cost = 0;             // sum of pointwise losses over the subset
  bool rank_deficient = false; // fewer points than d+1 or a degenerate design
};

/// Fits one affine submodel to the rows of X against y.
///
/// Squared loss returns the minimum-norm least-squares solution (complete
/// orthogonal decomposition), so rank-deficient subsets still produce a
/// well-defined result. Absolute loss returns an L1 minimizer computed by
/// linear programming; L1 minimizers are not unique in general and ties are
/// resolved by the deterministic pivoting of the underlying solver.
/// An empty subset yields the zero submodel at zero cost.
AffineFit fit_affine(const Eigen::Ref<const Matrix>& X,
                     const Eigen::Ref<const Vector>& y,
                     Loss loss = Loss::Squared);

struct LabelingCost {
  Scalar total = 0;              // J = (1/N) * sum of mode costs
  std::vector<AffineFit> fits;   // mode j at index j-1
  std::vector<bool> empty_mode;  // modes with no points contribute zero cost
  int rank_deficient_modes = 0;
};

/// PWA cost of a fixed labeling: fits each mode independently on its points
/// and averages the residual losses over the whole sample.
LabelingCost cost_of_labeling(const Dataset& data, const Labeling& q, int n,
                              Loss loss = Loss::Squared);

/// Classifier decision and submodel value at x. The binary rule follows
/// sign(u) = 1 iff u >= 0; the multiclass rule is argmax with ties broken
/// toward the smallest mode index.
Prediction predict(const PWAModel& model, const Eigen::Ref<const Vector>& x);

/// predict() for every row of X.
std::pair<Labeling, Vector> predict_all(const PWAModel& model,
                                        const Eigen::Ref<const Matrix>& X);

/// Decision margin of x: |h.x + b| for a binary classifier, top-1 minus
/// top-2 score otherwise.
Scalar classifier_margin(const PWAModel& model,
                         const Eigen::Ref<const Vector>& x);

}  // namespace pwa
