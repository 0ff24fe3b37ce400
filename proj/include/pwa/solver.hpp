#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "pwa/enumeration.hpp"
#include "pwa/regression.hpp"
#include "pwa/types.hpp"

namespace pwa {

struct RealizabilityWitness {
  bool feasible = false;
  MulticlassClassifier classifier;  // achieves every label with margin >= 1
};

/// Decides whether the labeling q of the rows of X is achievable by a linear
/// classifier: solves the feasibility problem
///   (h_{q_i} - h_k).x_i + (b_{q_i} - b_k) >= 1   for all i and k != q_i,
/// the unit margin being free by positive scaling. This is strict-separation
/// realizability; boundary ties allowed by the argmax rule are excluded.
RealizabilityWitness check_realizability(const Eigen::Ref<const Matrix>& X,
                                         const Labeling& q, int n);

struct SolveOptions {
  Loss loss = Loss::Squared;
  int workers = 0;              // <= 0 means all hardware threads
  bool symmetry_prune = false;  // skip candidates whose mode-swapped twin was seen
  bool early_skip = false;      // skip undersized modes once the incumbent is zero
  bool collect_zero_cost = false;  // gather distinct labelings with J <= kZeroCost
};

struct SolveResult {
  Scalar best_cost = std::numeric_limits<Scalar>::infinity();
  PWAModel model;
  Labeling labeling;
  std::uint64_t iterations = 0;          // candidate evaluations (binary) or tuples (multiclass)
  std::uint64_t skipped_degenerate = 0;  // affinely dependent d-subsets
  bool certified = false;                // enumeration ran to completion
  Scalar unverified_best_cost = std::numeric_limits<Scalar>::infinity();
  std::uint64_t on_points_reassigned = 0;
  // Points inside the on band whose assigned label disagrees with the
  // sign-rule decision of the returned classifier. Such labelings need an
  // infinitesimal perturbation of the hyperplane to be realized exactly.
  int boundary_pattern_mismatches = 0;
  bool labeling_realizable = false;  // returned classifier reproduces the labeling
  std::vector<Labeling> zero_cost_labelings;  // when collect_zero_cost is set
};

/// Exact global solution for n = 2: for every d-subset, the hyperplane
/// through it, the strict-side classification, and all 2^d assignments of
/// the subset points, keeping the cheapest candidate. 2^d * C(N, d)
/// evaluations when no subset is degenerate. Ties go to the earliest
/// candidate in (subset rank, on-pattern) order.
SolveResult solve_binary_exact(const Dataset& data, SolveOptions opts = {});

/// Exact global solution for n >= 3 via the pairwise-hyperplane tuple
/// enumeration. The tuple yield can over-approximate the projection, so
/// candidate labelings are certified by check_realizability in ascending
/// cost order; the raw enumeration minimum is reported alongside.
SolveResult solve_multiclass_exact(const Dataset& data, int n,
                                   SolveOptions opts = {});

/// Dispatches on n.
SolveResult solve_exact(const Dataset& data, int n, SolveOptions opts = {});

struct OracleOptions {
  Loss loss = Loss::Squared;
  bool realizable_only = true;
  std::uint64_t guard = 10'000'000;  // refuse n^N above this
};

/// Enumerates all n^N labelings, optionally filtered by realizability.
/// Exponential; a test oracle, not a solver.
SolveResult brute_force_oracle(const Dataset& data, int n,
                               OracleOptions opts = {});

}  // namespace pwa
