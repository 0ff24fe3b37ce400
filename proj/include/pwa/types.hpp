#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace pwa {

template <typename S>
using VectorT = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <typename S>
using MatrixT = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using Scalar = double;
using Vector = VectorT<Scalar>;
using Matrix = MatrixT<Scalar>;

/// One mode label per data point, values in {1, ..., n}. In the binary case
/// mode 1 is the nonnegative side of the separating hyperplane and mode 2 the
/// strictly negative side, matching sign(u) = 1 iff u >= 0.
using Labeling = Eigen::VectorXi;

// Shared tolerances.
inline constexpr Scalar kUnitTol = 1e-12;  // unit-norm slack for hyperplane normals
inline constexpr Scalar kOnTol = 1e-9;     // |h.x + b| <= kOnTol counts as "on" the plane
inline constexpr Scalar kZeroCost = 1e-9;  // costs at or below are treated as exact fits

// Preconditions and guards throw; data-dependent degeneracies are skipped
// and counted by the enumeration loops instead.
struct DegenerateSubset : std::runtime_error {
  explicit DegenerateSubset(const std::string& what) : std::runtime_error(what) {}
};
struct AllSubsetsDegenerate : std::runtime_error {
  explicit AllSubsetsDegenerate(const std::string& what) : std::runtime_error(what) {}
};
struct NoRealizableLabeling : std::runtime_error {
  explicit NoRealizableLabeling(const std::string& what) : std::runtime_error(what) {}
};
struct InstanceTooSmall : std::invalid_argument {
  explicit InstanceTooSmall(const std::string& what) : std::invalid_argument(what) {}
};
struct InstanceTooLarge : std::invalid_argument {
  explicit InstanceTooLarge(const std::string& what) : std::invalid_argument(what) {}
};
struct NotAPartition : std::invalid_argument {
  explicit NotAPartition(const std::string& what) : std::invalid_argument(what) {}
};
struct SequenceTooShort : std::invalid_argument {
  explicit SequenceTooShort(const std::string& what) : std::invalid_argument(what) {}
};
struct BadInput : std::runtime_error {
  explicit BadInput(const std::string& what) : std::runtime_error(what) {}
};

enum class Side { Plus, Minus, On };

/// Separating hyperplane {x : normal.x + offset = 0} with a unit normal.
/// Normals are sign-canonicalized (first nonzero coordinate positive) so the
/// two orientations of the same plane deduplicate to one representative.
struct Hyperplane {
  Vector normal;
  Scalar offset = 0;

  Scalar value_at(const Eigen::Ref<const Vector>& x) const {
    return normal.dot(x) + offset;
  }
  Eigen::Index dim() const { return normal.size(); }
};

enum class Loss { Squared, Absolute };

/// Regression sample: one regressor per row of X, one target per entry of y.
struct Dataset {
  Matrix X;
  Vector y;

  Eigen::Index size() const { return X.rows(); }
  Eigen::Index dim() const { return X.cols(); }
};

/// Linear multiclass classifier: mode = argmax_k h_k.x + b_k, ties broken
/// toward the smallest index. Row k of H is h_k.
struct MulticlassClassifier {
  Matrix H;
  Vector b;
};

/// Piecewise affine model: n affine submodels selected by a linear
/// classifier. Submodel row j is w_j in R^{d+1}, the last entry being the
/// intercept (the regressor is extended as [x, 1]).
struct PWAModel {
  int n = 2;
  Matrix submodels;
  std::variant<Hyperplane, MulticlassClassifier> classifier;
  Loss loss = Loss::Squared;

  Eigen::Index dim() const { return submodels.cols() - 1; }
};

struct Prediction {
  int mode = 1;
  Scalar yhat = 0;
};

}  // namespace pwa
