#include "pwa/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <utility>

#include "pwa/linprog.hpp"

namespace pwa {

namespace {

Matrix with_intercept(const Matrix& X) {
  Matrix Xb(X.rows(), X.cols() + 1);
  Xb.leftCols(X.cols()) = X;
  Xb.col(X.cols()).setOnes();
  return Xb;
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Minimum-norm solution of the (possibly singular) PSD normal equations,
// Cholesky first with a residual check, spectral pseudoinverse as fallback.
// Only the lower triangles of the Gram matrices are maintained.
struct PsdSolver {
  Eigen::LLT<Matrix> llt;
  Eigen::SelfAdjointEigenSolver<Matrix> es;
  Vector tmp;

  void minnorm(const Matrix& G, const Vector& r, Vector& w) {
    llt.compute(G);
    if (llt.info() == Eigen::Success) {
      w = llt.solve(r);
      tmp.noalias() = G.selfadjointView<Eigen::Lower>() * w;
      const Scalar scale = std::max(Scalar(1), r.cwiseAbs().maxCoeff());
      if ((tmp - r).cwiseAbs().maxCoeff() <= 1e-8 * scale) return;
    }
    es.compute(G);
    const Vector& ev = es.eigenvalues();
    const Scalar cut = std::max(ev(ev.size() - 1), Scalar(0)) * 1e-10;
    tmp.noalias() = es.eigenvectors().transpose() * r;
    for (Eigen::Index i = 0; i < tmp.size(); ++i)
      tmp(i) = ev(i) > cut ? tmp(i) / ev(i) : 0;
    w.noalias() = es.eigenvectors() * tmp;
  }
};

// Squared-loss cost of a labeling through the Gram fast path.
Scalar gram_labeling_cost(const Matrix& Xb, const Vector& y, const Labeling& q,
                          int n, PsdSolver& ps) {
  const Eigen::Index N = Xb.rows();
  const Eigen::Index k = Xb.cols();
  Scalar total = 0;
  Matrix G(k, k);
  Vector r(k), w(k);
  for (int j = 1; j <= n; ++j) {
    G.setZero();
    r.setZero();
    int count = 0;
    for (Eigen::Index i = 0; i < N; ++i) {
      if (q(i) != j) continue;
      G.selfadjointView<Eigen::Lower>().rankUpdate(Xb.row(i).transpose());
      r += y(i) * Xb.row(i).transpose();
      ++count;
    }
    if (count == 0) continue;
    ps.minnorm(G, r, w);
    for (Eigen::Index i = 0; i < N; ++i) {
      if (q(i) != j) continue;
      const Scalar e = y(i) - Xb.row(i).dot(w);
      total += e * e;
    }
  }
  return total / static_cast<Scalar>(N);
}

struct CandKey {
  std::uint64_t subset_rank = UINT64_MAX;
  std::uint32_t pattern = UINT32_MAX;

  bool operator<(const CandKey& o) const {
    return subset_rank != o.subset_rank ? subset_rank < o.subset_rank
                                        : pattern < o.pattern;
  }
};

using ZeroMap = std::unordered_map<Labeling, CandKey, LabelingHash, LabelingEq>;

struct BinaryShard {
  std::uint64_t iterations = 0;
  std::uint64_t degenerate = 0;
  std::uint64_t on_reassigned = 0;
  bool found = false;
  Scalar J = std::numeric_limits<Scalar>::infinity();
  CandKey key;
  Labeling q;
  Hyperplane hp;
  ZeroMap zeros;
};

void run_binary_shard(const Dataset& data, const Matrix& Xb,
                      const SolveOptions& opts, std::uint64_t rank_begin,
                      std::uint64_t rank_end, BinaryShard& out) {
  const int N = static_cast<int>(data.size());
  const int d = static_cast<int>(data.dim());
  const int k = d + 1;

  Matrix pts(d, d);
  std::vector<int> plus_idx, minus_idx;
  plus_idx.reserve(N);
  minus_idx.reserve(N);
  Matrix G1b(k, k), G2b(k, k), G1(k, k), G2(k, k);
  Vector r1b(k), r2b(k), r1(k), r2(k), w1(k), w2(k);
  std::vector<Matrix> sub_outer(d, Matrix(k, k));
  std::vector<Vector> sub_rhs(d, Vector(k));
  PsdSolver ps;
  LabelingSet sym_seen;
  Labeling q(N);

  for (SubsetIterator it(N, d, rank_begin); !it.done() && it.rank() < rank_end;
       it.advance()) {
    const auto& subset = it.current();
    for (int r = 0; r < d; ++r) pts.row(r) = data.X.row(subset[r]);
    const auto hp = try_hyperplane_through(pts);
    if (!hp) {
      ++out.degenerate;
      continue;
    }

    plus_idx.clear();
    minus_idx.clear();
    int member = 0;
    for (int i = 0; i < N; ++i) {
      if (member < d && subset[member] == i) {
        ++member;
        continue;
      }
      const Scalar v = hp->value_at(data.X.row(i));
      if (v > kOnTol) {
        plus_idx.push_back(i);
      } else if (v < -kOnTol) {
        minus_idx.push_back(i);
      } else {
        ++out.on_reassigned;
        plus_idx.push_back(i);
      }
    }

    const bool squared = opts.loss == Loss::Squared;
    if (squared) {
      G1b.setZero();
      r1b.setZero();
      for (int i : plus_idx) {
        G1b.selfadjointView<Eigen::Lower>().rankUpdate(Xb.row(i).transpose());
        r1b += data.y(i) * Xb.row(i).transpose();
      }
      G2b.setZero();
      r2b.setZero();
      for (int i : minus_idx) {
        G2b.selfadjointView<Eigen::Lower>().rankUpdate(Xb.row(i).transpose());
        r2b += data.y(i) * Xb.row(i).transpose();
      }
      for (int t = 0; t < d; ++t) {
        sub_outer[t].setZero();
        sub_outer[t].selfadjointView<Eigen::Lower>().rankUpdate(
            Xb.row(subset[t]).transpose());
        sub_rhs[t] = data.y(subset[t]) * Xb.row(subset[t]).transpose();
      }
    }

    const auto fill_labels = [&](std::uint32_t p) {
      for (int i : plus_idx) q(i) = 1;
      for (int i : minus_idx) q(i) = 2;
      for (int t = 0; t < d; ++t) q(subset[t]) = ((p >> t) & 1u) ? 2 : 1;
    };

    for (std::uint32_t p = 0; p < (1u << d); ++p) {
      int m1 = static_cast<int>(plus_idx.size());
      int m2 = static_cast<int>(minus_idx.size());
      for (int t = 0; t < d; ++t) ((p >> t) & 1u) ? ++m2 : ++m1;

      if (opts.early_skip && out.found && out.J <= kZeroCost &&
          (m1 < k || m2 < k))
        continue;
      if (opts.symmetry_prune) {
        fill_labels(p);
        Labeling canon = q(0) == 1 ? q : swap_binary(q);
        if (!sym_seen.insert(std::move(canon)).second) continue;
      }

      Scalar c1 = 0, c2 = 0;
      if (squared) {
        G1 = G1b;
        r1 = r1b;
        G2 = G2b;
        r2 = r2b;
        for (int t = 0; t < d; ++t) {
          if ((p >> t) & 1u) {
            G2 += sub_outer[t];
            r2 += sub_rhs[t];
          } else {
            G1 += sub_outer[t];
            r1 += sub_rhs[t];
          }
        }
        if (m1 > 0)
          ps.minnorm(G1, r1, w1);
        else
          w1.setZero();
        if (m2 > 0)
          ps.minnorm(G2, r2, w2);
        else
          w2.setZero();
        for (int i : plus_idx) {
          const Scalar e = data.y(i) - Xb.row(i).dot(w1);
          c1 += e * e;
        }
        for (int i : minus_idx) {
          const Scalar e = data.y(i) - Xb.row(i).dot(w2);
          c2 += e * e;
        }
        for (int t = 0; t < d; ++t) {
          if ((p >> t) & 1u) {
            const Scalar e = data.y(subset[t]) - Xb.row(subset[t]).dot(w2);
            c2 += e * e;
          } else {
            const Scalar e = data.y(subset[t]) - Xb.row(subset[t]).dot(w1);
            c1 += e * e;
          }
        }
      } else {
        fill_labels(p);
        Matrix X1(m1, d), X2(m2, d);
        Vector y1(m1), y2(m2);
        int a = 0, b = 0;
        for (int i = 0; i < N; ++i) {
          if (q(i) == 1) {
            X1.row(a) = data.X.row(i);
            y1(a++) = data.y(i);
          } else {
            X2.row(b) = data.X.row(i);
            y2(b++) = data.y(i);
          }
        }
        c1 = fit_affine(X1, y1, opts.loss).cost;
        c2 = fit_affine(X2, y2, opts.loss).cost;
      }

      // Costs inside the zero band are compared as exact zeros so that the
      // canonical-order tie-break decides among them instead of fp noise.
      Scalar J = (c1 + c2) / static_cast<Scalar>(N);
      if (J <= kZeroCost) J = 0;
      ++out.iterations;
      const CandKey key{it.rank(), p};
      if (!out.found || J < out.J || (J == out.J && key < out.key)) {
        fill_labels(p);
        out.found = true;
        out.J = J;
        out.key = key;
        out.q = q;
        out.hp = *hp;
      }
      if (opts.collect_zero_cost && J <= kZeroCost) {
        fill_labels(p);
        auto [pos, inserted] = out.zeros.try_emplace(q, key);
        if (!inserted && key < pos->second) pos->second = key;
      }
    }
  }
}

}  // namespace

RealizabilityWitness check_realizability(const Eigen::Ref<const Matrix>& X,
                                         const Labeling& q, int n) {
  const int N = static_cast<int>(X.rows());
  const int d = static_cast<int>(X.cols());
  if (q.size() != N) throw BadInput("check_realizability: labeling size mismatch");
  if (n < 1) throw BadInput("check_realizability: need n >= 1");
  for (int i = 0; i < N; ++i)
    if (q(i) < 1 || q(i) > n)
      throw BadInput("check_realizability: label out of {1..n}");

  const int m = n * (d + 1);
  const int R = N * (n - 1);
  Matrix A = Matrix::Zero(R, 2 * m);
  int row = 0;
  for (int i = 0; i < N; ++i) {
    for (int k = 1; k <= n; ++k) {
      if (k == q(i)) continue;
      const int win = (q(i) - 1) * (d + 1);
      const int lose = (k - 1) * (d + 1);
      A.row(row).segment(win, d) = X.row(i);
      A(row, win + d) = 1;
      A.row(row).segment(lose, d) = -X.row(i);
      A(row, lose + d) = -1;
      ++row;
    }
  }
  A.rightCols(m) = -A.leftCols(m);

  RealizabilityWitness out;
  const LpResult lp = lp_min_geq(Vector::Zero(2 * m), A, Vector::Ones(R));
  if (lp.status != LpStatus::Optimal) return out;

  const Vector z = lp.x.head(m) - lp.x.tail(m);
  out.classifier.H.resize(n, d);
  out.classifier.b.resize(n);
  for (int k = 0; k < n; ++k) {
    out.classifier.H.row(k) = z.segment(k * (d + 1), d);
    out.classifier.b(k) = z(k * (d + 1) + d);
  }
  // The witness must reproduce every label with the promised margin.
  for (int i = 0; i < N; ++i) {
    const Vector scores = out.classifier.H * X.row(i).transpose() + out.classifier.b;
    for (int k = 0; k < n; ++k) {
      if (k + 1 == q(i)) continue;
      if (scores(q(i) - 1) - scores(k) < 1 - 1e-7)
        throw std::logic_error("check_realizability: witness violates its own margin");
    }
  }
  out.feasible = true;
  return out;
}

SolveResult solve_binary_exact(const Dataset& data, SolveOptions opts) {
  const int N = static_cast<int>(data.size());
  const int d = static_cast<int>(data.dim());
  if (data.y.size() != N) throw BadInput("solve_binary_exact: dataset size mismatch");
  if (N <= d || N < 2 * (d + 1))
    throw InstanceTooSmall("solve_binary_exact: need N > d and N >= 2(d+1)");

  const Matrix Xb = with_intercept(data.X);
  const std::uint64_t total = binomial(N, d);
  int workers = resolve_workers(opts.workers);
  workers = static_cast<int>(std::min<std::uint64_t>(workers, total));

  std::vector<BinaryShard> shards(workers);
  if (workers == 1) {
    run_binary_shard(data, Xb, opts, 0, total, shards[0]);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    const std::uint64_t chunk = total / workers;
    const std::uint64_t extra = total % workers;
    std::uint64_t begin = 0;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t end = begin + chunk + (w < static_cast<int>(extra) ? 1 : 0);
      threads.emplace_back([&, w, begin, end] {
        try {
          run_binary_shard(data, Xb, opts, begin, end, shards[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
      begin = end;
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  // Deterministic reduction: cost first, then canonical candidate order.
  BinaryShard best;
  ZeroMap zeros;
  SolveResult res;
  for (auto& s : shards) {
    res.iterations += s.iterations;
    res.skipped_degenerate += s.degenerate;
    res.on_points_reassigned += s.on_reassigned;
    if (s.found && (!best.found || s.J < best.J ||
                    (s.J == best.J && s.key < best.key))) {
      best.found = true;
      best.J = s.J;
      best.key = s.key;
      best.q = s.q;
      best.hp = s.hp;
    }
    for (auto& [labeling, key] : s.zeros) {
      auto [pos, inserted] = zeros.try_emplace(labeling, key);
      if (!inserted && key < pos->second) pos->second = key;
    }
  }
  if (!best.found)
    throw AllSubsetsDegenerate("solve_binary_exact: every d-subset is degenerate");

  // Returned values go through the public fitting path so that best_cost
  // matches cost_of_labeling on the returned labeling.
  const LabelingCost cl = cost_of_labeling(data, best.q, 2, opts.loss);
  res.best_cost = cl.total;
  res.unverified_best_cost = cl.total;
  res.labeling = best.q;
  res.model.n = 2;
  res.model.loss = opts.loss;
  res.model.submodels.resize(2, d + 1);
  res.model.submodels.row(0) = cl.fits[0].w;
  res.model.submodels.row(1) = cl.fits[1].w;
  res.model.classifier = best.hp;
  for (int i = 0; i < N; ++i) {
    const Scalar v = best.hp.value_at(data.X.row(i));
    if (std::abs(v) <= kOnTol && best.q(i) == 2) ++res.boundary_pattern_mismatches;
  }
  res.labeling_realizable = res.boundary_pattern_mismatches == 0;
  res.certified = true;

  if (opts.collect_zero_cost) {
    std::vector<std::pair<CandKey, const Labeling*>> order;
    order.reserve(zeros.size());
    for (const auto& [labeling, key] : zeros) order.emplace_back(key, &labeling);
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    res.zero_cost_labelings.reserve(order.size());
    for (const auto& [key, labeling] : order)
      res.zero_cost_labelings.push_back(*labeling);
  }
  return res;
}

namespace {

struct MulticlassShard {
  std::uint64_t tuples = 0;
  std::unordered_map<Labeling, std::pair<Scalar, std::uint64_t>, LabelingHash,
                     LabelingEq>
      found;
};

void run_multiclass_shard(const Dataset& data, const Matrix& Xb,
                          const std::vector<std::uint64_t>& masks,
                          const std::vector<std::int8_t>& lut, int n,
                          const SolveOptions& opts, std::size_t slot0_begin,
                          std::size_t slot0_end, MulticlassShard& out) {
  const int N = static_cast<int>(data.size());
  const int n_pairs = n * (n - 1) / 2;
  const std::size_t C = masks.size();

  std::uint64_t inner_total = 1;
  for (int t = 1; t < n_pairs; ++t) inner_total *= C;

  std::vector<std::size_t> slot(n_pairs, 0);
  Labeling q(N);
  PsdSolver ps;

  for (std::size_t s0 = slot0_begin; s0 < slot0_end; ++s0) {
    slot.assign(n_pairs, 0);
    slot[0] = s0;
    std::uint64_t rank = static_cast<std::uint64_t>(s0) * inner_total;
    for (std::uint64_t step = 0; step < inner_total; ++step, ++rank) {
      ++out.tuples;
      bool consistent = true;
      for (int i = 0; i < N && consistent; ++i) {
        std::uint32_t pair_mask = 0;
        for (int t = 0; t < n_pairs; ++t)
          pair_mask |=
              static_cast<std::uint32_t>((masks[slot[t]] >> i) & 1ull) << t;
        const int label = lut.empty() ? label_from_pair_mask(pair_mask, n)
                                      : lut[pair_mask];
        if (label == 0)
          consistent = false;
        else
          q(i) = label;
      }
      if (consistent && !out.found.count(q)) {
        Scalar J = opts.loss == Loss::Squared
                       ? gram_labeling_cost(Xb, data.y, q, n, ps)
                       : cost_of_labeling(data, q, n, opts.loss).total;
        if (J <= kZeroCost) J = 0;  // tie zero-band costs canonically
        out.found.emplace(q, std::make_pair(J, rank));
      }
      // Advance the inner odometer (slots 1..n_pairs-1).
      int t = n_pairs - 1;
      while (t >= 1 && ++slot[t] == C) slot[t--] = 0;
    }
  }
}

}  // namespace

SolveResult solve_multiclass_exact(const Dataset& data, int n, SolveOptions opts) {
  const int N = static_cast<int>(data.size());
  const int d = static_cast<int>(data.dim());
  if (n < 3)
    throw std::invalid_argument("solve_multiclass_exact: need n >= 3 (use solve_binary_exact)");
  if (data.y.size() != N) throw BadInput("solve_multiclass_exact: dataset size mismatch");
  // Well-posed instances have N >= n(d+1); the enumeration itself only needs
  // N > d, and undersized modes fall back to rank-deficient fits, so the
  // stricter bound is enforced at the CLI and not here.
  if (N <= d)
    throw InstanceTooSmall("solve_multiclass_exact: need N > d");

  EnumStats mask_stats;
  const std::vector<std::uint64_t> masks = binary_side_masks(data.X, &mask_stats);
  if (masks.empty())
    throw AllSubsetsDegenerate("solve_multiclass_exact: every d-subset is degenerate");

  const int n_pairs = n * (n - 1) / 2;
  std::vector<std::int8_t> lut;
  if (n_pairs <= 20) {
    lut.resize(std::size_t(1) << n_pairs);
    for (std::size_t m = 0; m < lut.size(); ++m)
      lut[m] = static_cast<std::int8_t>(
          label_from_pair_mask(static_cast<std::uint32_t>(m), n));
  }

  const Matrix Xb = with_intercept(data.X);
  const std::size_t C = masks.size();
  int workers = resolve_workers(opts.workers);
  workers = static_cast<int>(std::min<std::size_t>(workers, C));

  std::vector<MulticlassShard> shards(workers);
  if (workers == 1) {
    run_multiclass_shard(data, Xb, masks, lut, n, opts, 0, C, shards[0]);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = C / workers;
    const std::size_t extra = C % workers;
    std::size_t begin = 0;
    for (int w = 0; w < workers; ++w) {
      const std::size_t end = begin + chunk + (w < static_cast<int>(extra) ? 1 : 0);
      threads.emplace_back([&, w, begin, end] {
        try {
          run_multiclass_shard(data, Xb, masks, lut, n, opts, begin, end, shards[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
      begin = end;
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  SolveResult res;
  res.skipped_degenerate = mask_stats.degenerate_subsets;
  res.on_points_reassigned = mask_stats.on_points_reassigned;
  std::unordered_map<Labeling, std::pair<Scalar, std::uint64_t>, LabelingHash,
                     LabelingEq>
      merged;
  for (auto& s : shards) {
    res.iterations += s.tuples;
    for (auto& [labeling, jr] : s.found) {
      auto [pos, inserted] = merged.emplace(labeling, jr);
      if (!inserted && jr.second < pos->second.second) pos->second = jr;
    }
  }
  if (merged.empty())
    throw NoRealizableLabeling("solve_multiclass_exact: no consistent labeling (cannot happen)");

  struct Entry {
    Scalar J;
    std::uint64_t rank;
    const Labeling* q;
  };
  std::vector<Entry> entries;
  entries.reserve(merged.size());
  for (const auto& [labeling, jr] : merged)
    entries.push_back({jr.first, jr.second, &labeling});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.J != b.J ? a.J < b.J : a.rank < b.rank;
  });

  res.unverified_best_cost = cost_of_labeling(data, *entries.front().q, n, opts.loss).total;

  const Entry* winner = nullptr;
  RealizabilityWitness witness;
  for (const Entry& e : entries) {
    witness = check_realizability(data.X, *e.q, n);
    if (witness.feasible) {
      winner = &e;
      break;
    }
  }
  if (!winner)
    throw NoRealizableLabeling("solve_multiclass_exact: no realizable labeling (cannot happen)");

  const LabelingCost cl = cost_of_labeling(data, *winner->q, n, opts.loss);
  res.best_cost = cl.total;
  res.labeling = *winner->q;
  res.model.n = n;
  res.model.loss = opts.loss;
  res.model.submodels.resize(n, d + 1);
  for (int j = 0; j < n; ++j) res.model.submodels.row(j) = cl.fits[j].w;
  res.model.classifier = witness.classifier;
  res.labeling_realizable = true;
  res.certified = true;

  if (opts.collect_zero_cost) {
    std::vector<std::pair<std::uint64_t, const Labeling*>> zeros;
    for (const auto& [labeling, jr] : merged)
      if (jr.first <= kZeroCost) zeros.emplace_back(jr.second, &labeling);
    std::sort(zeros.begin(), zeros.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [rank, labeling] : zeros)
      res.zero_cost_labelings.push_back(*labeling);
  }
  return res;
}

SolveResult solve_exact(const Dataset& data, int n, SolveOptions opts) {
  if (n < 2) throw std::invalid_argument("solve_exact: need n >= 2");
  return n == 2 ? solve_binary_exact(data, opts)
                : solve_multiclass_exact(data, n, opts);
}

SolveResult brute_force_oracle(const Dataset& data, int n, OracleOptions opts) {
  const int N = static_cast<int>(data.size());
  if (n < 1) throw BadInput("brute_force_oracle: need n >= 1");
  if (data.y.size() != N) throw BadInput("brute_force_oracle: dataset size mismatch");

  std::uint64_t total = 1;
  for (int i = 0; i < N; ++i) {
    if (total > opts.guard / static_cast<std::uint64_t>(n))
      throw InstanceTooLarge("brute_force_oracle: n^N exceeds the guard");
    total *= static_cast<std::uint64_t>(n);
  }
  if (total > opts.guard)
    throw InstanceTooLarge("brute_force_oracle: n^N exceeds the guard");

  const auto decode = [&](std::uint64_t rank, Labeling& q) {
    for (int i = 0; i < N; ++i) {
      q(i) = static_cast<int>(rank % n) + 1;
      rank /= n;
    }
  };

  std::vector<std::pair<Scalar, std::uint64_t>> cand;
  cand.reserve(total);
  Labeling q(N);
  for (std::uint64_t rank = 0; rank < total; ++rank) {
    decode(rank, q);
    Scalar J = cost_of_labeling(data, q, n, opts.loss).total;
    if (J <= kZeroCost) J = 0;  // same zero-band tie rule as the solvers
    cand.emplace_back(J, rank);
  }
  std::sort(cand.begin(), cand.end());

  SolveResult res;
  res.iterations = total;
  res.unverified_best_cost = cand.front().first;

  RealizabilityWitness witness;
  std::uint64_t winner = cand.front().second;
  bool have_winner = false;
  if (opts.realizable_only) {
    for (const auto& [J, rank] : cand) {
      decode(rank, q);
      witness = check_realizability(data.X, q, n);
      if (witness.feasible) {
        winner = rank;
        have_winner = true;
        break;
      }
    }
    if (!have_winner)
      throw NoRealizableLabeling("brute_force_oracle: no realizable labeling (cannot happen)");
  } else {
    decode(winner, q);
    witness = check_realizability(data.X, q, n);
  }

  decode(winner, q);
  const LabelingCost cl = cost_of_labeling(data, q, n, opts.loss);
  res.best_cost = cl.total;
  res.labeling = q;
  res.model.n = n;
  res.model.loss = opts.loss;
  res.model.submodels.resize(n, data.dim() + 1);
  for (int j = 0; j < n; ++j) res.model.submodels.row(j) = cl.fits[j].w;
  if (witness.feasible) {
    res.model.classifier = witness.classifier;
    res.labeling_realizable = true;
  } else {
    MulticlassClassifier zero;
    zero.H = Matrix::Zero(n, data.dim());
    zero.b = Vector::Zero(n);
    res.model.classifier = zero;
  }
  res.certified = true;
  return res;
}

}  // namespace pwa
