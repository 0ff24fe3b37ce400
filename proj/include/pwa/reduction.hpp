#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pwa/solver.hpp"
#include "pwa/types.hpp"

namespace pwa {

/// Multiset of d positive integers to be split into two equal-sum halves.
struct PartitionInstance {
  std::vector<std::int64_t> s;

  int size() const { return static_cast<int>(s.size()); }
  std::int64_t total() const;
  /// Throws BadInput unless every element is a positive integer.
  void validate() const;
};

enum class GadgetCase : std::uint8_t {
  PositiveUnit,  // (s_i e_i, s_i)
  NegativeUnit,  // (-s_i e_i, s_i)
  SumAnchor,     // (s, 0)
  NegSumAnchor,  // (-s, 0)
  Origin,        // (0, 0)
};

/// The 2d+3-point regression dataset whose PWA error can reach zero exactly
/// when the instance admits an equal-sum split. All values are integers.
struct GadgetDataset {
  Dataset data;
  std::vector<GadgetCase> provenance;
};

GadgetDataset partition_to_dataset(const PartitionInstance& inst);

/// The zero-cost model encoding a valid split: w_1 has +1 on the chosen
/// indices and -1 elsewhere (intercept 0), w_2 = -w_1, and the classifier
/// normal follows the same sign pattern through the origin. Throws
/// NotAPartition when the two sides do not balance. Indices are 0-based.
PWAModel witness_to_model(const PartitionInstance& inst,
                          const std::vector<int>& chosen);

struct PartitionDecision {
  bool yes = false;
  std::vector<int> witness;  // 0-based indices of one side, when yes
  SolveResult solve;         // the underlying PWA solve, for reporting
  // The solve reached zero cost but no zero-cost labeling produced an exact
  // split. Possible only through labelings unrealizable by any linear
  // classifier, which the gadget's collinear anchors can admit; such a
  // labeling does not certify a split, so the answer stays no.
  bool zero_cost_unrecovered = false;
};

/// Decides the Partition instance by running the exact binary PWA solver on
/// the gadget: yes exactly when some zero-cost labeling recovers an
/// equal-sum split (checked in exact integer arithmetic). Exponential in d;
/// guarded at d <= 10.
PartitionDecision decide_partition_via_pwa(const PartitionInstance& inst,
                                           SolveOptions opts = {});

/// Exhaustive 2^d reference search; nullopt when no split exists.
std::optional<std::vector<int>> exhaustive_partition_search(
    const PartitionInstance& inst);

}  // namespace pwa
