#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "pwa/data.hpp"
#include "pwa/solver.hpp"
#include "oracles.hpp"

using namespace pwa;

namespace {

Dataset dataset_1d(std::initializer_list<double> xs,
                   std::initializer_list<double> ys) {
  Dataset d;
  d.X.resize(xs.size(), 1);
  d.y.resize(ys.size());
  int i = 0;
  for (const double x : xs) d.X(i++, 0) = x;
  i = 0;
  for (const double y : ys) d.y(i++) = y;
  return d;
}

Labeling labels(std::initializer_list<int> q) {
  Labeling out(q.size());
  int i = 0;
  for (const int v : q) out(i++) = v;
  return out;
}

// Checks that two solve results are bit-identical where it matters.
void check_identical(const SolveResult& a, const SolveResult& b) {
  CHECK(a.best_cost == b.best_cost);
  CHECK((a.labeling.array() == b.labeling.array()).all());
  CHECK(a.iterations == b.iterations);
  CHECK((a.model.submodels.array() == b.model.submodels.array()).all());
}

}  // namespace

TEST_CASE("realizability witnesses") {
  Matrix X(3, 1);
  X << 0, 1, 2;

  const auto feasible = check_realizability(X, labels({2, 2, 1}), 2);
  REQUIRE(feasible.feasible);
  // The implied threshold -(b1-b2)/(h1-h2) must separate x=1 from x=2.
  const double h = feasible.classifier.H(0, 0) - feasible.classifier.H(1, 0);
  const double b = feasible.classifier.b(0) - feasible.classifier.b(1);
  REQUIRE(h != 0.0);
  const double threshold = -b / h;
  CHECK(threshold > 1.0);
  CHECK(threshold < 2.0);

  CHECK(!check_realizability(X, labels({1, 2, 1}), 2).feasible);

  Matrix X6(6, 1);
  X6 << 0, 1, 2, 3, 4, 5;
  CHECK(check_realizability(X6, labels({1, 1, 2, 2, 3, 3}), 3).feasible);
}

TEST_CASE("the witness reproduces its labeling through the pairwise rule") {
  std::mt19937_64 rng(41);
  const Dataset data = oracle::random_gp_dataset(6, 2, rng);
  for (const auto& q : enumerate_multiclass_labelings(data.X, 3)) {
    const auto wit = check_realizability(data.X, q, 3);
    if (!wit.feasible) continue;
    for (int i = 0; i < 6; ++i) {
      std::vector<int> signs;
      for (int j = 1; j <= 3; ++j)
        for (int k = j + 1; k <= 3; ++k) {
          const double g = (wit.classifier.H.row(j - 1) - wit.classifier.H.row(k - 1))
                               .dot(data.X.row(i)) +
                           wit.classifier.b(j - 1) - wit.classifier.b(k - 1);
          signs.push_back(g >= 0 ? 1 : -1);
        }
      CHECK(label_from_pairs(signs, 3) == q(i));
    }
  }
}

TEST_CASE("four-point binary instance solves to zero cost") {
  const Dataset data = dataset_1d({0, 1, 2, 3}, {0, 1, 2, 1});
  const SolveResult res = solve_binary_exact(data);
  CHECK(res.best_cost == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(res.certified);
  CHECK(res.iterations == 8);  // 2^1 * C(4,1)

  // The earliest zero-cost candidate under the canonical order is the split
  // {(0,0),(1,1)} | {(2,2),(3,1)} generated by the hyperplane through x = 1.
  CHECK(oracle::to_vec(res.labeling) == std::vector<int>{2, 2, 1, 1});
  CHECK(res.model.submodels(0, 0) == doctest::Approx(-1.0));
  CHECK(res.model.submodels(0, 1) == doctest::Approx(4.0));
  CHECK(res.model.submodels(1, 0) == doctest::Approx(1.0));
  CHECK(res.model.submodels(1, 1) == doctest::Approx(0.0).epsilon(1e-12));
  const auto& hp = std::get<Hyperplane>(res.model.classifier);
  CHECK(hp.normal(0) == doctest::Approx(1.0));
  CHECK(hp.offset == doctest::Approx(-1.0));
  // x = 1 sits on the returned hyperplane but is labeled with mode 2.
  CHECK(res.boundary_pattern_mismatches == 1);

  // The brute force agrees on the optimum.
  const SolveResult ref = brute_force_oracle(data, 2);
  CHECK(ref.best_cost == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ref.iterations == 16);
}

TEST_CASE("iteration count equals the candidate budget") {
  std::mt19937_64 rng(42);
  const Dataset data = oracle::random_gp_dataset(10, 2, rng);
  const SolveResult res = solve_binary_exact(data);
  CHECK(res.iterations == 180);  // 2^2 * C(10,2)
  CHECK(res.skipped_degenerate == 0);

  SolveOptions pruned;
  pruned.symmetry_prune = true;
  pruned.workers = 1;
  const SolveResult res2 = solve_binary_exact(data, pruned);
  CHECK(res2.iterations <= 180);
  CHECK(res2.best_cost == doctest::Approx(res.best_cost).epsilon(1e-12));
}

TEST_CASE("binary solver matches the realizable brute force") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 12; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 2);
    const int N = 6 + static_cast<int>(rng() % 4);
    const Dataset data = oracle::random_gp_dataset(N, d, rng);
    const SolveResult fast = solve_binary_exact(data);
    const SolveResult ref = brute_force_oracle(data, 2);
    CHECK(fast.best_cost == doctest::Approx(ref.best_cost).epsilon(1e-9));
    // The unfiltered minimum ranges over a superset of labelings.
    CHECK(ref.unverified_best_cost <= fast.best_cost + 1e-9);
  }
}

TEST_CASE("planted binary data is recovered at zero cost") {
  GeneratorConfig cfg;
  cfg.model = random_pwa_model(2, 2, 7);
  cfg.N = 50;
  cfg.seed = 7;
  const GeneratedData gen = generate_pwa_dataset(cfg);
  const SolveResult res = solve_binary_exact(gen.data);
  CHECK(res.best_cost <= 1e-9);

  // Up to a mode swap the returned labeling matches the planted one on all
  // points with a comfortable margin.
  std::map<int, int> mapping;
  bool consistent = true;
  for (int i = 0; i < 50; ++i) {
    if (classifier_margin(cfg.model, gen.data.X.row(i)) <= 1e-3) continue;
    const auto [pos, inserted] = mapping.emplace(res.labeling(i), gen.labels(i));
    if (!inserted && pos->second != gen.labels(i)) consistent = false;
  }
  CHECK(consistent);
  CHECK(mapping.size() <= 2);
}

TEST_CASE("multiclass solver on three ordered segments") {
  const Dataset data =
      dataset_1d({0, 1, 2, 3, 4, 5}, {0, 1, 5, 6, 2, 1});  // three affine pieces
  const SolveResult res = solve_multiclass_exact(data, 3);
  CHECK(res.best_cost <= 1e-9);
  CHECK(res.certified);
  CHECK(res.labeling_realizable);
  // Segment membership up to a relabeling of the three modes.
  CHECK(res.labeling(0) == res.labeling(1));
  CHECK(res.labeling(2) == res.labeling(3));
  CHECK(res.labeling(4) == res.labeling(5));
  CHECK(res.labeling(0) != res.labeling(2));
  CHECK(res.labeling(2) != res.labeling(4));
  CHECK(res.labeling(0) != res.labeling(4));
}

TEST_CASE("multiclass solver matches the realizable brute force") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 4; ++trial) {
    const int d = 1 + trial % 2;
    const int N = 6;
    const Dataset data = oracle::random_gp_dataset(N, d, rng);
    const SolveResult fast = solve_multiclass_exact(data, 3);
    const SolveResult ref = brute_force_oracle(data, 3);
    CHECK(fast.best_cost == doctest::Approx(ref.best_cost).epsilon(1e-9));
    CHECK(fast.unverified_best_cost <= fast.best_cost + 1e-12);
  }
}

TEST_CASE("multiclass tuple budget") {
  const Dataset data = dataset_1d({0, 1, 2, 3, 4}, {0, 1, 0, 1, 0});
  const SolveResult small = solve_multiclass_exact(data, 3);
  CHECK(small.iterations == 8000);  // [2^2 * C(5,1)]^3

  const Dataset data6 = dataset_1d({0, 1, 2, 3, 4, 5}, {0, 1, 0, 1, 0, 1});
  const SolveResult res = solve_multiclass_exact(data6, 3);
  CHECK(res.iterations == 13824);  // [2^2 * C(6,1)]^3

  Dataset tiny;
  tiny.X = Matrix::Zero(1, 1);
  tiny.y = Vector::Zero(1);
  CHECK_THROWS_AS(solve_multiclass_exact(tiny, 3), InstanceTooSmall);
}

TEST_CASE("adding a mode never raises the optimum") {
  std::mt19937_64 rng(45);
  const Dataset data = oracle::random_gp_dataset(7, 1, rng);
  const double two = solve_binary_exact(data).best_cost;
  const double three = solve_multiclass_exact(data, 3).best_cost;
  CHECK(three <= two + 1e-12);
}

TEST_CASE("solver runs are deterministic across workers and repetitions") {
  std::mt19937_64 rng(46);
  const Dataset data = oracle::random_gp_dataset(9, 2, rng);

  SolveOptions serial;
  serial.workers = 1;
  SolveOptions wide;
  wide.workers = 8;
  const SolveResult a = solve_binary_exact(data, serial);
  const SolveResult b = solve_binary_exact(data, wide);
  const SolveResult c = solve_binary_exact(data, wide);
  check_identical(a, b);
  check_identical(b, c);

  const SolveResult m1 = solve_multiclass_exact(data, 3, serial);
  const SolveResult m8 = solve_multiclass_exact(data, 3, wide);
  check_identical(m1, m8);
}

TEST_CASE("zero-cost collection is ordered and deterministic") {
  const Dataset data = dataset_1d({0, 1, 2, 3}, {0, 1, 2, 1});
  SolveOptions opts;
  opts.collect_zero_cost = true;
  opts.workers = 1;
  const SolveResult serial = solve_binary_exact(data, opts);
  opts.workers = 8;
  const SolveResult wide = solve_binary_exact(data, opts);
  REQUIRE(!serial.zero_cost_labelings.empty());
  REQUIRE(serial.zero_cost_labelings.size() == wide.zero_cost_labelings.size());
  for (std::size_t i = 0; i < serial.zero_cost_labelings.size(); ++i)
    CHECK((serial.zero_cost_labelings[i].array() ==
           wide.zero_cost_labelings[i].array())
              .all());
  CHECK(oracle::to_vec(serial.zero_cost_labelings.front()) ==
        oracle::to_vec(serial.labeling));
}

TEST_CASE("absolute loss is solved exactly at desk scale") {
  const Dataset data = dataset_1d({0, 1, 2, 3}, {0, 1, 2, 1});
  SolveOptions opts;
  opts.loss = Loss::Absolute;
  const SolveResult fast = solve_binary_exact(data, opts);
  OracleOptions oopts;
  oopts.loss = Loss::Absolute;
  const SolveResult ref = brute_force_oracle(data, 2, oopts);
  CHECK(fast.best_cost == doctest::Approx(ref.best_cost).epsilon(1e-9));
  CHECK(fast.best_cost <= 1e-12);
}

TEST_CASE("guards") {
  const Dataset tiny = dataset_1d({0, 1, 2}, {0, 1, 2});
  CHECK_THROWS_AS(solve_binary_exact(tiny), InstanceTooSmall);

  Dataset big;
  big.X = Matrix::Random(40, 1);
  big.y = Vector::Random(40);
  CHECK_THROWS_AS(brute_force_oracle(big, 2), InstanceTooLarge);  // 2^40 labelings

  CHECK_THROWS_AS(solve_exact(tiny, 1), std::invalid_argument);
}

TEST_CASE("oracle superset inequality without the realizability filter") {
  std::mt19937_64 rng(47);
  const Dataset data = oracle::random_gp_dataset(7, 1, rng);
  OracleOptions unfiltered;
  unfiltered.realizable_only = false;
  const SolveResult loose = brute_force_oracle(data, 2, unfiltered);
  const SolveResult exact = solve_binary_exact(data);
  CHECK(loose.best_cost <= exact.best_cost + 1e-12);
}
