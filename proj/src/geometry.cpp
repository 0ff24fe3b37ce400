#include "pwa/geometry.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pwa {

namespace {

// Relative threshold deciding that a singular value is numerically zero.
constexpr Scalar kRankTol = 1e-9;

void canonicalize(Hyperplane& hp) {
  for (Eigen::Index i = 0; i < hp.normal.size(); ++i) {
    if (std::abs(hp.normal(i)) > kUnitTol) {
      if (hp.normal(i) < 0) {
        hp.normal = -hp.normal;
        hp.offset = -hp.offset;
      }
      return;
    }
  }
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    std::uint64_t t = 0;
    if (__builtin_mul_overflow(r, static_cast<std::uint64_t>(n - k + i), &t))
      return UINT64_MAX;
    r = t / static_cast<std::uint64_t>(i);
  }
  return r;
}

SubsetIterator::SubsetIterator(int n, int k) : n_(n), k_(k) {
  if (k < 1 || k > n) throw std::invalid_argument("SubsetIterator: need 1 <= k <= n");
  count_ = binomial(n, k);
  idx_.resize(k);
  std::iota(idx_.begin(), idx_.end(), 0);
}

SubsetIterator::SubsetIterator(int n, int k, std::uint64_t start_rank)
    : n_(n), k_(k), rank_(start_rank) {
  if (k < 1 || k > n) throw std::invalid_argument("SubsetIterator: need 1 <= k <= n");
  count_ = binomial(n, k);
  idx_.resize(k);
  if (done()) return;
  // Combinatorial number system, lexicographic order.
  std::uint64_t r = start_rank;
  int x = 0;
  for (int pos = 0; pos < k; ++pos) {
    for (;;) {
      const std::uint64_t c = binomial(n - 1 - x, k - pos - 1);
      if (c <= r) {
        r -= c;
        ++x;
      } else {
        break;
      }
    }
    idx_[pos] = x++;
  }
}

void SubsetIterator::advance() {
  if (done()) return;
  ++rank_;
  if (done()) return;
  int i = k_ - 1;
  while (i >= 0 && idx_[i] == n_ - k_ + i) --i;
  ++idx_[i];
  for (int j = i + 1; j < k_; ++j) idx_[j] = idx_[j - 1] + 1;
}

Side side_of(const Hyperplane& hp, const Eigen::Ref<const Vector>& x, Scalar tol) {
  const Scalar v = hp.value_at(x);
  if (v > tol) return Side::Plus;
  if (v < -tol) return Side::Minus;
  return Side::On;
}

std::optional<Hyperplane> try_hyperplane_through(
    const Eigen::Ref<const Matrix>& points) {
  const Eigen::Index d = points.cols();
  if (d < 1 || points.rows() != d)
    throw std::invalid_argument("hyperplane_through: expected exactly d points of dimension d");

  Hyperplane hp;
  if (d == 1) {
    hp.normal = Vector::Ones(1);
    hp.offset = -points(0, 0);
    return hp;
  }

  Matrix diffs(d - 1, d);
  for (Eigen::Index r = 0; r + 1 < d; ++r)
    diffs.row(r) = points.row(r + 1) - points.row(0);

  Eigen::JacobiSVD<Matrix> svd(diffs, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const Scalar smax = sv(0);
  if (sv(d - 2) <= kRankTol * std::max(Scalar(1), smax))
    return std::nullopt;  // affinely dependent: null space larger than a line

  hp.normal = svd.matrixV().col(d - 1);
  hp.offset = -hp.normal.dot(points.row(0));
  canonicalize(hp);
  return hp;
}

Hyperplane hyperplane_through(const Eigen::Ref<const Matrix>& points) {
  auto hp = try_hyperplane_through(points);
  if (!hp)
    throw DegenerateSubset("hyperplane_through: points are affinely dependent");
  return *hp;
}

GeneralPositionReport check_general_position(const Eigen::Ref<const Matrix>& X,
                                             bool force) {
  const int N = static_cast<int>(X.rows());
  const int d = static_cast<int>(X.cols());
  if (N < d + 1)
    throw InstanceTooSmall("check_general_position: need at least d+1 points");
  if (N > 200 && !force)
    throw InstanceTooLarge(
        "check_general_position: exhaustive check refused for N > 200 (use force)");

  Matrix diffs(d, d);
  for (SubsetIterator it(N, d + 1); !it.done(); it.advance()) {
    const auto& s = it.current();
    for (int r = 1; r <= d; ++r) diffs.row(r - 1) = X.row(s[r]) - X.row(s[0]);
    Eigen::JacobiSVD<Matrix> svd(diffs);
    const Vector& sv = svd.singularValues();
    if (sv(d - 1) <= kRankTol * std::max(Scalar(1), sv(0)))
      return {false, s};
  }
  return {true, {}};
}

}  // namespace pwa
