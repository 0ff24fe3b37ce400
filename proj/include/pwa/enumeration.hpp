#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "pwa/geometry.hpp"
#include "pwa/types.hpp"

namespace pwa {

struct LabelingHash {
  std::size_t operator()(const Labeling& q) const {
    std::size_t h = 1469598103934665603ull;  // FNV-1a
    for (Eigen::Index i = 0; i < q.size(); ++i) {
      h ^= static_cast<std::size_t>(q(i));
      h *= 1099511628211ull;
    }
    return h;
  }
};
struct LabelingEq {
  bool operator()(const Labeling& a, const Labeling& b) const {
    return a.size() == b.size() && (a.array() == b.array()).all();
  }
};
using LabelingSet = std::unordered_set<Labeling, LabelingHash, LabelingEq>;

/// Mode-swapped twin of a binary labeling (1 <-> 2).
Labeling swap_binary(const Labeling& q);

struct EnumOptions {
  bool dedup = true;            // drop repeats of the same labeling
  bool symmetry_prune = false;  // binary: yield one of each {q, -q} pair
  bool verify_general_position = false;
  std::uint64_t dedup_limit = 10'000'000;  // past this, novel repeats may leak
};

struct EnumStats {
  std::uint64_t candidates = 0;            // labelings built, with multiplicity
  std::uint64_t yielded = 0;               // labelings actually returned
  std::uint64_t tuples = 0;                // multiclass: hyperplane tuples visited
  std::uint64_t degenerate_subsets = 0;    // skipped affinely dependent subsets
  std::uint64_t on_points_reassigned = 0;  // off-subset points inside the on band
  bool dedup_overflow = false;
};

/// Streams the binary labelings of the rows of X realizable by a separating
/// hyperplane: every d-subset, the hyperplane through it, both orientations,
/// and the 2^d sign assignments of the subset points, giving at most
/// 2^(d+1) * C(N, d) candidates. Off-subset points that fall inside the on
/// band are assigned the nonnegative side and counted.
class BinaryLabelingStream {
 public:
  BinaryLabelingStream(const Eigen::Ref<const Matrix>& X, EnumOptions opts = {});

  std::optional<Labeling> next();
  const EnumStats& stats() const { return stats_; }

 private:
  void prepare_subset();
  Labeling make_candidate() const;
  void step();

  Matrix X_;
  EnumOptions opts_;
  EnumStats stats_;
  int N_ = 0;
  int d_ = 0;
  SubsetIterator subsets_;
  bool exhausted_ = false;
  std::vector<int> subset_;
  Labeling base_plus_;   // strict sides for the canonical orientation
  Labeling base_minus_;  // same with the strict sides swapped
  int orientation_ = 0;
  std::uint32_t pattern_ = 0;
  LabelingSet seen_;
};

/// Collects the deduplicated binary yield set.
std::vector<Labeling> enumerate_binary_labelings(
    const Eigen::Ref<const Matrix>& X, EnumOptions opts = {},
    EnumStats* stats = nullptr);

/// Index of the ordered pair (j, k), 1 <= j < k <= n, in the flat pair list
/// (1,2),(1,3),...,(1,n),(2,3),...
int pair_index(int j, int k, int n);

/// Pairwise-sign decision rule: the unique mode j with g_jk >= 0 for all
/// k > j and g_kj < 0 for all k < j, or nullopt when the signs form a cycle.
/// signs[t] is +1 when g of pair t is nonnegative, -1 otherwise.
std::optional<int> label_from_pairs(const std::vector<int>& signs, int n);

/// Bitmask variant: bit t set means pair t is nonnegative. Returns 0 when no
/// mode satisfies the rule.
int label_from_pair_mask(std::uint32_t mask, int n);

/// Streams candidate multiclass labelings per the pairwise construction: one
/// sign-resolved hyperplane candidate per mode pair, all tuples, each point
/// labeled by the pairwise rule; tuples with any cyclic point are dropped.
/// The yield is a superset of the true projection for n >= 3 (the pairwise
/// planes are enumerated independently) and contains every labeling
/// realizable by a linear classifier; callers certify winners separately.
class MulticlassLabelingStream {
 public:
  MulticlassLabelingStream(const Eigen::Ref<const Matrix>& X, int n,
                           EnumOptions opts = {});

  std::optional<Labeling> next();
  const EnumStats& stats() const { return stats_; }
  std::uint64_t candidate_masks() const { return masks_.size(); }

 private:
  Matrix X_;
  EnumOptions opts_;
  EnumStats stats_;
  int N_ = 0;
  int d_ = 0;
  int n_ = 0;
  int n_pairs_ = 0;
  std::vector<std::uint64_t> masks_;  // bit i = point i on the nonnegative side
  std::vector<std::size_t> slot_;     // odometer over masks_, one per pair
  bool exhausted_ = false;
  std::vector<std::int8_t> rule_lut_;  // mask -> label, 0 = inconsistent
  LabelingSet seen_;
};

/// Candidate sign-resolved hyperplane masks shared by the multiclass
/// machinery: bit i of a mask is the side of point i. Exposed for the solver.
std::vector<std::uint64_t> binary_side_masks(const Eigen::Ref<const Matrix>& X,
                                             EnumStats* stats = nullptr);

/// Collects the deduplicated multiclass yield set; n = 2 delegates to the
/// binary enumeration.
std::vector<Labeling> enumerate_multiclass_labelings(
    const Eigen::Ref<const Matrix>& X, int n, EnumOptions opts = {},
    EnumStats* stats = nullptr);

}  // namespace pwa
