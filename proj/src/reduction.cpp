#include "pwa/reduction.hpp"

#include <cmath>
#include <numeric>

#include "pwa/regression.hpp"

namespace pwa {

std::int64_t PartitionInstance::total() const {
  return std::accumulate(s.begin(), s.end(), std::int64_t(0));
}

void PartitionInstance::validate() const {
  if (s.empty()) throw BadInput("partition instance: need at least one element");
  for (const auto v : s)
    if (v < 1) throw BadInput("partition instance: elements must be positive integers");
}

GadgetDataset partition_to_dataset(const PartitionInstance& inst) {
  inst.validate();
  const int d = inst.size();
  const int N = 2 * d + 3;

  GadgetDataset g;
  g.data.X = Matrix::Zero(N, d);
  g.data.y = Vector::Zero(N);
  g.provenance.resize(N);

  Vector sum = Vector::Zero(d);
  for (int i = 0; i < d; ++i) sum(i) = static_cast<Scalar>(inst.s[i]);

  for (int i = 0; i < d; ++i) {
    g.data.X(i, i) = static_cast<Scalar>(inst.s[i]);
    g.data.y(i) = static_cast<Scalar>(inst.s[i]);
    g.provenance[i] = GadgetCase::PositiveUnit;

    g.data.X(d + i, i) = -static_cast<Scalar>(inst.s[i]);
    g.data.y(d + i) = static_cast<Scalar>(inst.s[i]);
    g.provenance[d + i] = GadgetCase::NegativeUnit;
  }
  g.data.X.row(2 * d) = sum;
  g.provenance[2 * d] = GadgetCase::SumAnchor;
  g.data.X.row(2 * d + 1) = -sum;
  g.provenance[2 * d + 1] = GadgetCase::NegSumAnchor;
  g.provenance[2 * d + 2] = GadgetCase::Origin;  // row stays zero
  return g;
}

PWAModel witness_to_model(const PartitionInstance& inst,
                          const std::vector<int>& chosen) {
  inst.validate();
  const int d = inst.size();
  std::vector<bool> in_chosen(d, false);
  for (const int i : chosen) {
    if (i < 0 || i >= d) throw BadInput("witness_to_model: index out of range");
    if (in_chosen[i]) throw BadInput("witness_to_model: duplicate index");
    in_chosen[i] = true;
  }
  std::int64_t lhs = 0;
  for (int i = 0; i < d; ++i) lhs += in_chosen[i] ? inst.s[i] : -inst.s[i];
  if (lhs != 0) throw NotAPartition("witness_to_model: the two sides do not balance");

  Vector w1 = Vector::Zero(d + 1);
  for (int i = 0; i < d; ++i) w1(i) = in_chosen[i] ? 1 : -1;

  Hyperplane hp;
  hp.normal = w1.head(d) / std::sqrt(static_cast<Scalar>(d));
  hp.offset = 0;

  PWAModel model;
  model.n = 2;
  model.submodels.resize(2, d + 1);
  // Mode 1 is the nonnegative side; canonicalizing the normal's sign may
  // swap which submodel that is.
  bool flip = false;
  for (int i = 0; i < d; ++i) {
    if (std::abs(hp.normal(i)) > kUnitTol) {
      flip = hp.normal(i) < 0;
      break;
    }
  }
  if (flip) {
    hp.normal = -hp.normal;
    model.submodels.row(0) = -w1;
    model.submodels.row(1) = w1;
  } else {
    model.submodels.row(0) = w1;
    model.submodels.row(1) = -w1;
  }
  model.classifier = hp;
  return model;
}

namespace {

// Residual-based recovery from one submodel of a zero-cost model: collect
// the axis points the submodel reproduces and test the split in exact
// integer arithmetic.
std::optional<std::vector<int>> recover_from_submodel(
    const PartitionInstance& inst, const GadgetDataset& g, const Vector& w) {
  const int d = inst.size();
  std::vector<int> chosen;
  std::int64_t lhs = 0;
  for (int i = 0; i < d; ++i) {
    const Scalar pred = g.data.X.row(i).dot(w.head(d)) + w(d);
    if (std::abs(pred - g.data.y(i)) <= 1e-6) {
      chosen.push_back(i);
      lhs += inst.s[i];
    } else {
      lhs -= inst.s[i];
    }
  }
  if (lhs != 0) return std::nullopt;
  return chosen;
}

}  // namespace

PartitionDecision decide_partition_via_pwa(const PartitionInstance& inst,
                                           SolveOptions opts) {
  inst.validate();
  if (inst.size() > 10)
    throw InstanceTooLarge("decide_partition_via_pwa: guarded at d <= 10");

  const GadgetDataset g = partition_to_dataset(inst);
  opts.loss = Loss::Squared;
  opts.collect_zero_cost = true;

  PartitionDecision dec;
  dec.solve = solve_binary_exact(g.data, opts);
  if (dec.solve.best_cost > kZeroCost) return dec;

  for (const Labeling& q : dec.solve.zero_cost_labelings) {
    const LabelingCost cl = cost_of_labeling(g.data, q, 2, Loss::Squared);
    for (const auto& fit : cl.fits) {
      if (auto chosen = recover_from_submodel(inst, g, fit.w)) {
        dec.yes = true;
        dec.witness = std::move(*chosen);
        return dec;
      }
    }
  }
  dec.zero_cost_unrecovered = true;
  return dec;
}

std::optional<std::vector<int>> exhaustive_partition_search(
    const PartitionInstance& inst) {
  inst.validate();
  const int d = inst.size();
  const std::int64_t total = inst.total();
  if (total % 2 != 0) return std::nullopt;
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    std::int64_t lhs = 0;
    for (int i = 0; i < d; ++i)
      if ((mask >> i) & 1u) lhs += inst.s[i];
    if (2 * lhs == total) {
      std::vector<int> chosen;
      for (int i = 0; i < d; ++i)
        if ((mask >> i) & 1u) chosen.push_back(i);
      return chosen;
    }
  }
  return std::nullopt;
}

}  // namespace pwa
