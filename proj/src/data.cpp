#include "pwa/data.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "pwa/regression.hpp"

namespace pwa {

Dataset build_regressors(const Eigen::Ref<const Vector>& u,
                         const Eigen::Ref<const Vector>& y, ArxOrders orders) {
  if (orders.n_y < 0 || orders.n_u < 0)
    throw BadInput("build_regressors: lag orders must be nonnegative");
  if (u.size() != y.size())
    throw BadInput("build_regressors: input and output sequences must have equal length");
  const int L = static_cast<int>(y.size());
  const int start = std::max(orders.n_y, orders.n_u);
  if (L < start + 1)
    throw SequenceTooShort("build_regressors: need length >= max(n_y, n_u) + 1");

  const int d = orders.dim();
  const int count = L - start;
  Dataset out;
  out.X.resize(count, d);
  out.y.resize(count);
  for (int i = start; i < L; ++i) {
    const int r = i - start;
    int c = 0;
    for (int lag = 1; lag <= orders.n_y; ++lag) out.X(r, c++) = y(i - lag);
    for (int lag = 0; lag <= orders.n_u; ++lag) out.X(r, c++) = u(i - lag);
    out.y(r) = y(i);
  }
  return out;
}

GeneratedData generate_pwa_dataset(const GeneratorConfig& cfg) {
  const int d = static_cast<int>(cfg.model.dim());
  if (cfg.N < 1) throw BadInput("generate_pwa_dataset: need N >= 1");
  if (cfg.box_high <= cfg.box_low)
    throw BadInput("generate_pwa_dataset: empty sampling box");

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<Scalar> box(cfg.box_low, cfg.box_high);
  std::normal_distribution<Scalar> noise(0, 1);

  GeneratedData out;
  out.data.X.resize(cfg.N, d);
  out.data.y.resize(cfg.N);
  out.labels.resize(cfg.N);

  Vector x(d);
  for (int i = 0; i < cfg.N; ++i) {
    int tries = 0;
    for (;;) {
      for (int c = 0; c < d; ++c) x(c) = box(rng);
      if (classifier_margin(cfg.model, x) >= cfg.min_margin) break;
      if (++tries > 10000)
        throw BadInput("generate_pwa_dataset: cannot sample away from the classifier boundary");
    }
    const Prediction p = predict(cfg.model, x);
    out.data.X.row(i) = x;
    out.labels(i) = p.mode;
    out.data.y(i) = p.yhat;
    if (cfg.noise_std > 0) out.data.y(i) += cfg.noise_std * noise(rng);
  }
  return out;
}

PWAModel random_pwa_model(int n, int d, std::uint64_t seed) {
  if (n < 2 || d < 1) throw BadInput("random_pwa_model: need n >= 2, d >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Scalar> coef(-3, 3);
  std::normal_distribution<Scalar> gauss(0, 1);

  PWAModel model;
  model.n = n;
  model.submodels.resize(n, d + 1);
  for (int j = 0; j < n; ++j)
    for (int c = 0; c <= d; ++c) model.submodels(j, c) = coef(rng);

  const auto unit = [&] {
    Vector v(d);
    do {
      for (int c = 0; c < d; ++c) v(c) = gauss(rng);
    } while (v.norm() < 1e-6);
    return Vector(v / v.norm());
  };

  if (n == 2) {
    Hyperplane hp;
    hp.normal = unit();
    for (int c = 0; c < d; ++c) {
      if (std::abs(hp.normal(c)) > kUnitTol) {
        if (hp.normal(c) < 0) hp.normal = -hp.normal;
        break;
      }
    }
    hp.offset = std::uniform_real_distribution<Scalar>(-3, 3)(rng);
    model.classifier = hp;
  } else {
    MulticlassClassifier mc;
    mc.H.resize(n, d);
    mc.b.resize(n);
    for (int k = 0; k < n; ++k) {
      mc.H.row(k) = unit();
      mc.b(k) = std::uniform_real_distribution<Scalar>(-3, 3)(rng);
    }
    model.classifier = mc;
  }
  return model;
}

namespace {

std::string format_value(Scalar v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Scalar parse_value(const std::string& field, const std::string& path) {
  Scalar v = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end)
    throw BadInput(path + ": malformed numeric field '" + field + "'");
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void write_dataset_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw BadInput(path + ": cannot open for writing");
  for (Eigen::Index c = 0; c < data.dim(); ++c) out << "x" << (c + 1) << ",";
  out << "y\n";
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    for (Eigen::Index c = 0; c < data.dim(); ++c)
      out << format_value(data.X(i, c)) << ",";
    out << format_value(data.y(i)) << "\n";
  }
}

Dataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput(path + ": cannot open");
  std::string line;
  if (!std::getline(in, line)) throw BadInput(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto header = split_csv_line(line);
  const int d = static_cast<int>(header.size()) - 1;
  if (d < 1 || header.back() != "y")
    throw BadInput(path + ": expected header x1,...,xd,y");
  for (int c = 0; c < d; ++c)
    if (header[c] != "x" + std::to_string(c + 1))
      throw BadInput(path + ": expected header x1,...,xd,y");

  std::vector<Vector> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != d + 1)
      throw BadInput(path + ": row with wrong column count");
    Vector row(d + 1);
    for (int c = 0; c <= d; ++c) row(c) = parse_value(fields[c], path);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw BadInput(path + ": no data rows");

  Dataset out;
  out.X.resize(rows.size(), d);
  out.y.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.X.row(i) = rows[i].head(d);
    out.y(i) = rows[i](d);
  }
  return out;
}

void write_labeled_csv(const Dataset& data, const Labeling& labels,
                       const Vector& yhat, const std::string& path) {
  if (labels.size() != data.size() || yhat.size() != data.size())
    throw BadInput("write_labeled_csv: size mismatch");
  std::ofstream out(path);
  if (!out) throw BadInput(path + ": cannot open for writing");
  for (Eigen::Index c = 0; c < data.dim(); ++c) out << "x" << (c + 1) << ",";
  out << "y,label,yhat\n";
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    for (Eigen::Index c = 0; c < data.dim(); ++c)
      out << format_value(data.X(i, c)) << ",";
    out << format_value(data.y(i)) << "," << labels(i) << ","
        << format_value(yhat(i)) << "\n";
  }
}

namespace {

nlohmann::json vector_to_json(const Eigen::Ref<const Vector>& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Vector vector_from_json(const nlohmann::json& arr) {
  if (!arr.is_array()) throw BadInput("model json: expected an array");
  Vector v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v(i) = arr[i].get<Scalar>();
  return v;
}

}  // namespace

std::string model_to_json_string(const PWAModel& model) {
  nlohmann::json j;
  j["n"] = model.n;
  j["d"] = model.dim();
  j["loss"] = model.loss == Loss::Squared ? "squared" : "abs";
  j["submodels"] = nlohmann::json::array();
  for (Eigen::Index r = 0; r < model.submodels.rows(); ++r)
    j["submodels"].push_back(vector_to_json(model.submodels.row(r)));
  if (std::holds_alternative<Hyperplane>(model.classifier)) {
    const auto& hp = std::get<Hyperplane>(model.classifier);
    j["classifier"] = {{"normal", vector_to_json(hp.normal)},
                       {"offset", hp.offset}};
  } else {
    const auto& mc = std::get<MulticlassClassifier>(model.classifier);
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index k = 0; k < mc.H.rows(); ++k)
      arr.push_back({{"h", vector_to_json(mc.H.row(k))}, {"b", mc.b(k)}});
    j["classifier"] = arr;
  }
  return j.dump(2);
}

PWAModel model_from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw BadInput(std::string("model json: ") + e.what());
  }
  try {
    PWAModel model;
    model.n = j.at("n").get<int>();
    const int d = j.at("d").get<int>();
    const std::string loss = j.at("loss").get<std::string>();
    if (loss == "squared")
      model.loss = Loss::Squared;
    else if (loss == "abs")
      model.loss = Loss::Absolute;
    else
      throw BadInput("model json: unknown loss '" + loss + "'");

    const auto& subs = j.at("submodels");
    if (!subs.is_array() || static_cast<int>(subs.size()) != model.n)
      throw BadInput("model json: submodels must list one row per mode");
    model.submodels.resize(model.n, d + 1);
    for (int r = 0; r < model.n; ++r) {
      const Vector w = vector_from_json(subs[r]);
      if (w.size() != d + 1) throw BadInput("model json: submodel of wrong size");
      model.submodels.row(r) = w;
    }

    const auto& cls = j.at("classifier");
    if (cls.is_object()) {
      if (model.n != 2)
        throw BadInput("model json: hyperplane classifier requires n = 2");
      Hyperplane hp;
      hp.normal = vector_from_json(cls.at("normal"));
      hp.offset = cls.at("offset").get<Scalar>();
      if (hp.normal.size() != d) throw BadInput("model json: normal of wrong size");
      model.classifier = hp;
    } else if (cls.is_array()) {
      if (static_cast<int>(cls.size()) != model.n)
        throw BadInput("model json: classifier must list one pair per mode");
      MulticlassClassifier mc;
      mc.H.resize(model.n, d);
      mc.b.resize(model.n);
      for (int k = 0; k < model.n; ++k) {
        const Vector h = vector_from_json(cls[k].at("h"));
        if (h.size() != d) throw BadInput("model json: h of wrong size");
        mc.H.row(k) = h;
        mc.b(k) = cls[k].at("b").get<Scalar>();
      }
      model.classifier = mc;
    } else {
      throw BadInput("model json: classifier must be an object or an array");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw BadInput(std::string("model json: ") + e.what());
  }
}

void write_model_json(const PWAModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw BadInput(path + ": cannot open for writing");
  out << model_to_json_string(model) << "\n";
}

PWAModel read_model_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json_string(ss.str());
}

}  // namespace pwa
