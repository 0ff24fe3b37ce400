#include "pwa/enumeration.hpp"

#include <stdexcept>

namespace pwa {

namespace {

int require_more_points_than_dim(const Eigen::Ref<const Matrix>& X) {
  if (X.rows() <= X.cols())
    throw InstanceTooSmall("enumeration: need N > d points");
  return static_cast<int>(X.rows());
}

}  // namespace

Labeling swap_binary(const Labeling& q) {
  Labeling s(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) s(i) = q(i) == 1 ? 2 : 1;
  return s;
}

BinaryLabelingStream::BinaryLabelingStream(const Eigen::Ref<const Matrix>& X,
                                           EnumOptions opts)
    : X_(X),
      opts_(opts),
      N_(require_more_points_than_dim(X)),
      d_(static_cast<int>(X.cols())),
      subsets_(N_, d_) {
  if (opts_.verify_general_position) {
    const auto rep = check_general_position(X_);
    if (!rep.ok) throw BadInput("enumeration: points are not in general position");
  }
  prepare_subset();
}

void BinaryLabelingStream::prepare_subset() {
  Matrix pts(d_, d_);
  while (!subsets_.done()) {
    subset_ = subsets_.current();
    for (int r = 0; r < d_; ++r) pts.row(r) = X_.row(subset_[r]);
    const auto hp = try_hyperplane_through(pts);
    if (!hp) {
      ++stats_.degenerate_subsets;
      subsets_.advance();
      continue;
    }
    base_plus_.resize(N_);
    base_minus_.resize(N_);
    int member = 0;
    for (int i = 0; i < N_; ++i) {
      if (member < d_ && subset_[member] == i) {
        ++member;
        base_plus_(i) = base_minus_(i) = 0;  // filled by the on-pattern
        continue;
      }
      const Scalar v = hp->value_at(X_.row(i));
      if (v > kOnTol) {
        base_plus_(i) = 1;
        base_minus_(i) = 2;
      } else if (v < -kOnTol) {
        base_plus_(i) = 2;
        base_minus_(i) = 1;
      } else {
        // Possible only when general position fails or the tolerance is
        // slack: treated as the nonnegative side under both orientations.
        ++stats_.on_points_reassigned;
        base_plus_(i) = 1;
        base_minus_(i) = 1;
      }
    }
    orientation_ = 0;
    pattern_ = 0;
    return;
  }
  exhausted_ = true;
}

Labeling BinaryLabelingStream::make_candidate() const {
  Labeling q = orientation_ == 0 ? base_plus_ : base_minus_;
  for (int t = 0; t < d_; ++t)
    q(subset_[t]) = ((pattern_ >> t) & 1u) ? 2 : 1;
  return q;
}

void BinaryLabelingStream::step() {
  if (++pattern_ < (1u << d_)) return;
  pattern_ = 0;
  if (++orientation_ < 2) return;
  subsets_.advance();
  prepare_subset();
}

std::optional<Labeling> BinaryLabelingStream::next() {
  while (!exhausted_) {
    Labeling q = make_candidate();
    ++stats_.candidates;
    step();
    if (opts_.symmetry_prune && q(0) != 1) continue;
    if (opts_.dedup) {
      if (seen_.size() >= opts_.dedup_limit) {
        if (seen_.count(q)) continue;
        stats_.dedup_overflow = true;  // novel labelings may repeat from here
      } else if (!seen_.insert(q).second) {
        continue;
      }
    }
    ++stats_.yielded;
    return q;
  }
  return std::nullopt;
}

std::vector<Labeling> enumerate_binary_labelings(
    const Eigen::Ref<const Matrix>& X, EnumOptions opts, EnumStats* stats) {
  BinaryLabelingStream stream(X, opts);
  std::vector<Labeling> out;
  while (auto q = stream.next()) out.push_back(std::move(*q));
  if (stats) *stats = stream.stats();
  return out;
}

int pair_index(int j, int k, int n) {
  // (j, k) with 1 <= j < k <= n, pairs listed lexicographically.
  return (j - 1) * (2 * n - j) / 2 + (k - j - 1);
}

int label_from_pair_mask(std::uint32_t mask, int n) {
  for (int j = 1; j <= n; ++j) {
    bool wins = true;
    for (int k = j + 1; k <= n && wins; ++k)
      wins = (mask >> pair_index(j, k, n)) & 1u;
    for (int k = 1; k < j && wins; ++k)
      wins = !((mask >> pair_index(k, j, n)) & 1u);
    if (wins) return j;
  }
  return 0;
}

std::optional<int> label_from_pairs(const std::vector<int>& signs, int n) {
  const int n_pairs = n * (n - 1) / 2;
  if (static_cast<int>(signs.size()) != n_pairs)
    throw std::invalid_argument("label_from_pairs: expected n(n-1)/2 signs");
  std::uint32_t mask = 0;
  for (int t = 0; t < n_pairs; ++t)
    if (signs[t] >= 0) mask |= 1u << t;
  const int label = label_from_pair_mask(mask, n);
  if (label == 0) return std::nullopt;
  return label;
}

std::vector<std::uint64_t> binary_side_masks(const Eigen::Ref<const Matrix>& X,
                                             EnumStats* stats) {
  const int N = require_more_points_than_dim(X);
  const int d = static_cast<int>(X.cols());
  if (N > 64)
    throw InstanceTooLarge("binary_side_masks: bitmask construction limited to N <= 64");

  std::vector<std::uint64_t> masks;
  Matrix pts(d, d);
  EnumStats local;
  for (SubsetIterator it(N, d); !it.done(); it.advance()) {
    const auto& subset = it.current();
    for (int r = 0; r < d; ++r) pts.row(r) = X.row(subset[r]);
    const auto hp = try_hyperplane_through(pts);
    if (!hp) {
      ++local.degenerate_subsets;
      continue;
    }
    std::uint64_t plus = 0;   // nonnegative side, canonical orientation
    std::uint64_t minus = 0;  // same for the flipped orientation
    int member = 0;
    for (int i = 0; i < N; ++i) {
      if (member < d && subset[member] == i) {
        ++member;
        continue;
      }
      const Scalar v = hp->value_at(X.row(i));
      if (v > kOnTol) {
        plus |= 1ull << i;
      } else if (v < -kOnTol) {
        minus |= 1ull << i;
      } else {
        ++local.on_points_reassigned;
        plus |= 1ull << i;
        minus |= 1ull << i;
      }
    }
    for (int orientation = 0; orientation < 2; ++orientation) {
      const std::uint64_t base = orientation == 0 ? plus : minus;
      for (std::uint32_t p = 0; p < (1u << d); ++p) {
        std::uint64_t m = base;
        for (int t = 0; t < d; ++t)
          if (!((p >> t) & 1u)) m |= 1ull << subset[t];
        masks.push_back(m);
      }
    }
  }
  if (stats) {
    stats->degenerate_subsets += local.degenerate_subsets;
    stats->on_points_reassigned += local.on_points_reassigned;
  }
  return masks;
}

MulticlassLabelingStream::MulticlassLabelingStream(
    const Eigen::Ref<const Matrix>& X, int n, EnumOptions opts)
    : X_(X),
      opts_(opts),
      N_(require_more_points_than_dim(X)),
      d_(static_cast<int>(X.cols())),
      n_(n),
      n_pairs_(n * (n - 1) / 2) {
  if (n_ < 3)
    throw std::invalid_argument("MulticlassLabelingStream: need n >= 3 (n = 2 is the binary stream)");
  if (opts_.verify_general_position) {
    const auto rep = check_general_position(X_);
    if (!rep.ok) throw BadInput("enumeration: points are not in general position");
  }
  masks_ = binary_side_masks(X_, &stats_);
  if (masks_.empty())
    throw AllSubsetsDegenerate("MulticlassLabelingStream: every d-subset is degenerate");
  if (n_pairs_ <= 20) {
    rule_lut_.resize(std::size_t(1) << n_pairs_);
    for (std::size_t m = 0; m < rule_lut_.size(); ++m)
      rule_lut_[m] = static_cast<std::int8_t>(
          label_from_pair_mask(static_cast<std::uint32_t>(m), n_));
  }
  slot_.assign(n_pairs_, 0);
}

std::optional<Labeling> MulticlassLabelingStream::next() {
  Labeling q(N_);
  while (!exhausted_) {
    ++stats_.tuples;
    bool consistent = true;
    for (int i = 0; i < N_ && consistent; ++i) {
      std::uint32_t pair_mask = 0;
      for (int t = 0; t < n_pairs_; ++t)
        pair_mask |= static_cast<std::uint32_t>((masks_[slot_[t]] >> i) & 1ull) << t;
      const int label = rule_lut_.empty() ? label_from_pair_mask(pair_mask, n_)
                                          : rule_lut_[pair_mask];
      if (label == 0)
        consistent = false;
      else
        q(i) = label;
    }

    // Advance the odometer, most significant slot first.
    int t = n_pairs_ - 1;
    while (t >= 0 && ++slot_[t] == masks_.size()) slot_[t--] = 0;
    if (t < 0) exhausted_ = true;

    if (!consistent) continue;
    ++stats_.candidates;
    if (opts_.dedup) {
      if (seen_.size() >= opts_.dedup_limit) {
        if (seen_.count(q)) continue;
        stats_.dedup_overflow = true;
      } else if (!seen_.insert(q).second) {
        continue;
      }
    }
    ++stats_.yielded;
    return q;
  }
  return std::nullopt;
}

std::vector<Labeling> enumerate_multiclass_labelings(
    const Eigen::Ref<const Matrix>& X, int n, EnumOptions opts,
    EnumStats* stats) {
  if (n == 2) return enumerate_binary_labelings(X, opts, stats);
  MulticlassLabelingStream stream(X, n, opts);
  std::vector<Labeling> out;
  while (auto q = stream.next()) out.push_back(std::move(*q));
  if (stats) *stats = stream.stats();
  return out;
}

}  // namespace pwa
