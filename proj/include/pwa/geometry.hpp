#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pwa/types.hpp"

namespace pwa {

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(int n, int k);

/// Streaming lexicographic enumeration of the C(n, k) index subsets of
/// {0, ..., n-1}. Construction by rank allows splitting the range into
/// contiguous chunks for parallel consumption.
class SubsetIterator {
 public:
  SubsetIterator(int n, int k);
  SubsetIterator(int n, int k, std::uint64_t start_rank);

  bool done() const { return rank_ >= count_; }
  const std::vector<int>& current() const { return idx_; }
  std::uint64_t rank() const { return rank_; }
  std::uint64_t count() const { return count_; }
  void advance();

 private:
  int n_ = 0;
  int k_ = 0;
  std::uint64_t rank_ = 0;
  std::uint64_t count_ = 0;
  std::vector<int> idx_;
};

/// Side of x relative to hp: Plus if h.x + b > tol, Minus if < -tol, On
/// otherwise.
Side side_of(const Hyperplane& hp, const Eigen::Ref<const Vector>& x,
             Scalar tol = kOnTol);

/// Hyperplane through the d points given as the rows of `points` (a d x d
/// matrix). The normal is a unit vector in the null space of
/// [x_2 - x_1, ..., x_d - x_1]^T and the offset is -h.x_1. Deterministic for
/// a fixed input order; the result is sign-canonicalized.
/// Throws DegenerateSubset when the points are affinely dependent (null
/// space of dimension > 1).
Hyperplane hyperplane_through(const Eigen::Ref<const Matrix>& points);

/// Non-throwing variant used by the enumeration loops; nullopt on a
/// degenerate subset.
std::optional<Hyperplane> try_hyperplane_through(
    const Eigen::Ref<const Matrix>& points);

struct GeneralPositionReport {
  bool ok = true;
  std::vector<int> violating;  // first offending (d+1)-subset when !ok
};

/// Exhaustively checks that no hyperplane contains more than d of the rows
/// of X, i.e. every (d+1)-subset is affinely independent. O(N^(d+1)) and
/// meant for validating fixtures; refuses N > 200 unless force is set.
GeneralPositionReport check_general_position(const Eigen::Ref<const Matrix>& X,
                                             bool force = false);

}  // namespace pwa
