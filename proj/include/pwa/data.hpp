#pragma once

#include <cstdint>
#include <string>

#include "pwa/types.hpp"

namespace pwa {

/// ARX lag structure; the regressor stacks n_y past outputs, the current
/// input, and n_u past inputs, so d = n_y + n_u + 1.
struct ArxOrders {
  int n_y = 0;
  int n_u = 0;

  int dim() const { return n_y + n_u + 1; }
};

/// Builds the regressor/target pairs
///   x_i = [y_{i-1}, ..., y_{i-n_y}, u_i, ..., u_{i-n_u}],  target y_i,
/// one per valid time index, ordered by time. Sequences must have equal
/// length >= max(n_y, n_u) + 1.
Dataset build_regressors(const Eigen::Ref<const Vector>& u,
                         const Eigen::Ref<const Vector>& y, ArxOrders orders);

struct GeneratorConfig {
  PWAModel model;           // planted ground truth
  int N = 100;
  Scalar noise_std = 0;     // Gaussian output noise
  Scalar box_low = -10;     // regressors drawn uniformly from a box
  Scalar box_high = 10;
  Scalar min_margin = 1e-6; // resample points closer to the boundary
  std::uint64_t seed = 0;
};

struct GeneratedData {
  Dataset data;
  Labeling labels;  // planted mode per point
};

/// Samples regressors i.i.d. from the box, labels them with the planted
/// classifier, and emits y = f(x) + noise. Fully determined by the seed;
/// points with classifier margin below min_margin are redrawn so instances
/// stay well posed.
GeneratedData generate_pwa_dataset(const GeneratorConfig& cfg);

/// A random planted model with unit classifier normals and coefficients of
/// moderate size; convenient for demos and benchmarks.
PWAModel random_pwa_model(int n, int d, std::uint64_t seed);

// Dataset CSV: header x1,...,xd,y; one row per pair; '.' decimal; values
// round-trip exactly.
void write_dataset_csv(const Dataset& data, const std::string& path);
Dataset read_dataset_csv(const std::string& path);

// Labeled CSV: the input columns plus label and yhat.
void write_labeled_csv(const Dataset& data, const Labeling& labels,
                       const Vector& yhat, const std::string& path);

// Model JSON: n, d, loss, submodels, classifier (binary {normal, offset} or
// an array of {h, b}).
void write_model_json(const PWAModel& model, const std::string& path);
PWAModel read_model_json(const std::string& path);
std::string model_to_json_string(const PWAModel& model);
PWAModel model_from_json_string(const std::string& text);

}  // namespace pwa
