#include "ecbe/generators.hpp"

#include <algorithm>
#include <cmath>

#include "ecbe/errors.hpp"
#include "ecbe/rng.hpp"

namespace ecbe {

namespace {

Schema numeric_schema(int features, int labels, const std::string& prefix) {
  Schema schema;
  schema.attributes.reserve(features);
  for (int j = 0; j < features; ++j)
    schema.attributes.push_back({prefix + std::to_string(j + 1),
                                 AttributeKind::numeric, {}});
  for (int y = 0; y < labels; ++y) schema.labels.push_back(std::to_string(y));
  return schema;
}

class HyperplaneSource : public StreamSource {
public:
  explicit HyperplaneSource(const HyperplaneConfig& cfg)
      : cfg_(cfg), rng_(cfg.seed) {
    if (cfg.features < 2)
      throw config_error("hyperplane: needs at least 2 features");
    if (cfg.noise < 0.0 || cfg.noise > 1.0)
      throw config_error("hyperplane: noise must be in [0,1]");
    schema_ = numeric_schema(cfg.features, 2, "x");
    if (!cfg.coefficients.empty()) {
      if (static_cast<int>(cfg.coefficients.size()) != cfg.features)
        throw config_error("hyperplane: coefficient count != features");
      coefficients_ = Eigen::Map<const Eigen::VectorXd>(
          cfg.coefficients.data(), cfg.features);
    } else {
      coefficients_.resize(cfg.features);
      for (int j = 0; j < cfg.features; ++j) coefficients_[j] = rng_.uniform();
    }
    directions_.resize(cfg.features);
    for (int j = 0; j < cfg.features; ++j)
      directions_[j] = rng_.bernoulli(0.5) ? 1.0 : -1.0;
  }

  const Schema& schema() const override { return schema_; }

private:
  std::optional<Instance> produce() override {
    if (cursor() >= cfg_.total_instances) return std::nullopt;
    Instance instance;
    instance.features.resize(cfg_.features);
    for (int j = 0; j < cfg_.features; ++j) instance.features[j] = rng_.uniform();
    if (cfg_.drift_magnitude != 0.0)
      coefficients_ += cfg_.drift_magnitude * directions_;
    const double threshold = 0.5 * coefficients_.sum();
    int label = coefficients_.dot(instance.features) >= threshold ? 1 : 0;
    if (cfg_.noise > 0.0 && rng_.bernoulli(cfg_.noise)) label = 1 - label;
    instance.label = label;
    return instance;
  }

  HyperplaneConfig cfg_;
  Rng rng_;
  Schema schema_;
  Eigen::VectorXd coefficients_;
  Eigen::VectorXd directions_;
};

class SeaSource : public StreamSource {
public:
  explicit SeaSource(const SeaConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    if (cfg.thresholds.empty()) throw config_error("sea: empty threshold schedule");
    schema_ = numeric_schema(3, 2, "a");
    segment_length_ =
        std::max<long>(1, cfg.total_instances /
                              static_cast<long>(cfg.thresholds.size()));
  }

  const Schema& schema() const override { return schema_; }

private:
  std::optional<Instance> produce() override {
    if (cursor() >= cfg_.total_instances) return std::nullopt;
    const auto segment = std::min<std::size_t>(
        static_cast<std::size_t>(cursor() / segment_length_),
        cfg_.thresholds.size() - 1);
    const double theta = cfg_.thresholds[segment];
    Instance instance;
    instance.features.resize(3);
    for (int j = 0; j < 3; ++j) instance.features[j] = rng_.uniform(0.0, 10.0);
    instance.label =
        instance.features[0] + instance.features[1] <= theta ? 1 : 0;
    return instance;
  }

  SeaConfig cfg_;
  Rng rng_;
  Schema schema_;
  long segment_length_ = 1;
};

class LedSource : public StreamSource {
public:
  explicit LedSource(const LedConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    if (cfg.noise < 0.0 || cfg.noise > 1.0)
      throw config_error("led: noise must be in [0,1]");
    for (int j = 0; j < 24; ++j) {
      std::string name = j < 7 ? "seg" + std::to_string(j + 1)
                               : "irr" + std::to_string(j - 6);
      schema_.attributes.push_back(
          {std::move(name), AttributeKind::categorical, {"0", "1"}});
    }
    for (int digit = 0; digit < 10; ++digit)
      schema_.labels.push_back(std::to_string(digit));
  }

  const Schema& schema() const override { return schema_; }

private:
  std::optional<Instance> produce() override {
    if (cursor() >= cfg_.total_instances) return std::nullopt;
    Instance instance;
    instance.features.resize(24);
    const int digit = static_cast<int>(rng_.uniform_int(10));
    for (int j = 0; j < 7; ++j)
      instance.features[j] = static_cast<double>(kLedSegments[digit][j]);
    for (int j = 7; j < 24; ++j)
      instance.features[j] = static_cast<double>(rng_.uniform_int(2));
    if (cfg_.noise > 0.0)
      for (int j = 0; j < 24; ++j)
        if (rng_.bernoulli(cfg_.noise))
          instance.features[j] = 1.0 - instance.features[j];
    instance.label = digit;
    return instance;
  }

  LedConfig cfg_;
  Rng rng_;
  Schema schema_;
};

class RbfSource : public StreamSource {
public:
  explicit RbfSource(const RbfConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    if (cfg.classes < 2) throw config_error("rbf: needs at least 2 classes");
    schema_ = numeric_schema(cfg.features, cfg.classes, "x");
    if (!cfg.explicit_centroids.empty()) {
      centroids_ = cfg.explicit_centroids;
      for (const auto& c : centroids_) {
        if (c.center.size() != cfg.features)
          throw config_error("rbf: centroid dimension != features");
        if (c.label < 0 || c.label >= cfg.classes)
          throw config_error("rbf: centroid label outside class count");
      }
    } else {
      if (cfg.centroids < 2) throw config_error("rbf: needs at least 2 centroids");
      centroids_.resize(cfg.centroids);
      for (auto& c : centroids_) {
        c.center.resize(cfg.features);
        for (int j = 0; j < cfg.features; ++j) c.center[j] = rng_.uniform();
        c.label = static_cast<int>(rng_.uniform_int(cfg.classes));
        c.weight = 0.1 + 0.9 * rng_.uniform();
        c.spread = 0.05 + 0.2 * rng_.uniform();
      }
    }
    directions_.resize(centroids_.size());
    for (auto& dir : directions_) {
      dir.resize(cfg.features);
      double norm = 0.0;
      while (norm == 0.0) {
        for (int j = 0; j < cfg.features; ++j) dir[j] = rng_.gaussian();
        norm = dir.norm();
      }
      dir /= norm;
    }
    total_weight_ = 0.0;
    for (const auto& c : centroids_) total_weight_ += c.weight;
  }

  const Schema& schema() const override { return schema_; }

private:
  std::optional<Instance> produce() override {
    if (cursor() >= cfg_.total_instances) return std::nullopt;
    // Weight-proportional centroid choice.
    double pick = rng_.uniform() * total_weight_;
    std::size_t chosen = 0;
    for (; chosen + 1 < centroids_.size(); ++chosen) {
      pick -= centroids_[chosen].weight;
      if (pick < 0.0) break;
    }
    const auto& centroid = centroids_[chosen];
    const double displacement =
        static_cast<double>(cursor()) * cfg_.drift_speed;
    Instance instance;
    instance.features = centroid.center + displacement * directions_[chosen];
    for (int j = 0; j < cfg_.features; ++j)
      instance.features[j] += centroid.spread * rng_.gaussian();
    instance.label = centroid.label;
    return instance;
  }

  RbfConfig cfg_;
  Rng rng_;
  Schema schema_;
  std::vector<RbfCentroid> centroids_;
  std::vector<Eigen::VectorXd> directions_;
  double total_weight_ = 0.0;
};

class AbruptDriftSource : public StreamSource {
public:
  AbruptDriftSource(std::unique_ptr<StreamSource> inner,
                    std::vector<long> positions, std::pair<int, int> swap)
      : inner_(std::move(inner)), positions_(std::move(positions)), swap_(swap) {
    const int labels = inner_->schema().label_count();
    if (swap_.first < 0 || swap_.first >= labels || swap_.second < 0 ||
        swap_.second >= labels)
      throw config_error("inject_abrupt_drift: swap labels outside schema");
    for (std::size_t i = 1; i < positions_.size(); ++i)
      if (positions_[i] <= positions_[i - 1])
        throw config_error("inject_abrupt_drift: positions must be strictly increasing");
  }

  const Schema& schema() const override { return inner_->schema(); }

private:
  std::optional<Instance> produce() override {
    auto instance = inner_->next();
    if (!instance) return instance;
    const long index = cursor();  // index of the instance being emitted
    while (next_position_ < positions_.size() &&
           positions_[next_position_] <= index) {
      active_ = !active_;
      ++next_position_;
    }
    if (active_) {
      if (instance->label == swap_.first)
        instance->label = swap_.second;
      else if (instance->label == swap_.second)
        instance->label = swap_.first;
    }
    return instance;
  }

  std::unique_ptr<StreamSource> inner_;
  std::vector<long> positions_;
  std::pair<int, int> swap_;
  std::size_t next_position_ = 0;
  bool active_ = false;
};

class LabelNoiseSource : public StreamSource {
public:
  LabelNoiseSource(std::unique_ptr<StreamSource> inner, double p,
                   std::uint64_t seed)
      : inner_(std::move(inner)), p_(p), rng_(seed) {
    if (p < 0.0 || p > 1.0)
      throw config_error("add_label_noise: probability must be in [0,1]");
  }

  const Schema& schema() const override { return inner_->schema(); }

private:
  std::optional<Instance> produce() override {
    auto instance = inner_->next();
    if (!instance) return instance;
    if (p_ > 0.0 && rng_.bernoulli(p_)) {
      const int labels = inner_->schema().label_count();
      int other = static_cast<int>(rng_.uniform_int(labels - 1));
      if (other >= instance->label) ++other;
      instance->label = other;
    }
    return instance;
  }

  std::unique_ptr<StreamSource> inner_;
  double p_;
  Rng rng_;
};

}  // namespace

const int kLedSegments[10][7] = {
    {1, 1, 1, 0, 1, 1, 1}, {0, 0, 1, 0, 0, 1, 0}, {1, 0, 1, 1, 1, 0, 1},
    {1, 0, 1, 1, 0, 1, 1}, {0, 1, 1, 1, 0, 1, 0}, {1, 1, 0, 1, 0, 1, 1},
    {1, 1, 0, 1, 1, 1, 1}, {1, 0, 1, 0, 0, 1, 0}, {1, 1, 1, 1, 1, 1, 1},
    {1, 1, 1, 1, 0, 1, 1}};

std::unique_ptr<StreamSource> hyperplane_stream(const HyperplaneConfig& cfg) {
  return std::make_unique<HyperplaneSource>(cfg);
}

std::unique_ptr<StreamSource> sea_stream(const SeaConfig& cfg) {
  return std::make_unique<SeaSource>(cfg);
}

std::unique_ptr<StreamSource> led_stream(const LedConfig& cfg) {
  return std::make_unique<LedSource>(cfg);
}

std::unique_ptr<StreamSource> rbf_stream(const RbfConfig& cfg) {
  return std::make_unique<RbfSource>(cfg);
}

std::unique_ptr<StreamSource> inject_abrupt_drift(
    std::unique_ptr<StreamSource> source, std::vector<long> positions,
    std::pair<int, int> swap) {
  return std::make_unique<AbruptDriftSource>(std::move(source),
                                             std::move(positions), swap);
}

std::unique_ptr<StreamSource> add_label_noise(std::unique_ptr<StreamSource> source,
                                              double p, std::uint64_t seed) {
  return std::make_unique<LabelNoiseSource>(std::move(source), p, seed);
}

GeneratorKind generator_kind_from_name(const std::string& name) {
  if (name == "sea") return GeneratorKind::sea;
  if (name == "hyperplane") return GeneratorKind::hyperplane;
  if (name == "led") return GeneratorKind::led;
  if (name == "rbf") return GeneratorKind::rbf;
  throw config_error("unknown generator kind '" + name + "'");
}

std::string generator_kind_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::sea: return "sea";
    case GeneratorKind::hyperplane: return "hyperplane";
    case GeneratorKind::led: return "led";
    case GeneratorKind::rbf: return "rbf";
  }
  return "?";
}

GeneratedStream make_stream(const GeneratorConfig& cfg) {
  GeneratedStream out;
  out.manifest.seed = cfg.seed;
  std::unique_ptr<StreamSource> source;
  switch (cfg.kind) {
    case GeneratorKind::sea: {
      SeaConfig sea;
      sea.seed = cfg.seed;
      sea.total_instances = cfg.total_instances;
      if (!cfg.thresholds.empty()) sea.thresholds = cfg.thresholds;
      const long segment =
          std::max<long>(1, sea.total_instances /
                                static_cast<long>(sea.thresholds.size()));
      for (std::size_t s = 1; s < sea.thresholds.size(); ++s)
        out.manifest.drifts.push_back(
            {segment * static_cast<long>(s), "threshold-step"});
      source = sea_stream(sea);
      break;
    }
    case GeneratorKind::hyperplane: {
      HyperplaneConfig hp;
      hp.seed = cfg.seed;
      hp.total_instances = cfg.total_instances;
      hp.features = cfg.features;
      hp.drift_magnitude = cfg.drift_magnitude;
      if (cfg.generator_noise >= 0.0) hp.noise = cfg.generator_noise;
      source = hyperplane_stream(hp);
      break;
    }
    case GeneratorKind::led: {
      LedConfig led;
      led.seed = cfg.seed;
      led.total_instances = cfg.total_instances;
      if (cfg.generator_noise >= 0.0) led.noise = cfg.generator_noise;
      source = led_stream(led);
      break;
    }
    case GeneratorKind::rbf: {
      RbfConfig rbf;
      rbf.seed = cfg.seed;
      rbf.total_instances = cfg.total_instances;
      rbf.features = cfg.features;
      rbf.classes = cfg.classes;
      rbf.centroids = cfg.centroids;
      rbf.drift_speed = cfg.drift_speed;
      source = rbf_stream(rbf);
      break;
    }
  }
  if (!cfg.drift_positions.empty()) {
    source = inject_abrupt_drift(std::move(source), cfg.drift_positions,
                                 cfg.swap_labels);
    for (long position : cfg.drift_positions)
      out.manifest.drifts.push_back({position, "label-swap"});
    std::sort(out.manifest.drifts.begin(), out.manifest.drifts.end(),
              [](const DriftEvent& a, const DriftEvent& b) {
                return a.position < b.position;
              });
  }
  if (cfg.label_noise > 0.0) {
    // Child seed so the corruption pattern is independent of the base stream.
    Rng fork(cfg.seed ^ 0x9e3779b97f4a7c15ull);
    source = add_label_noise(std::move(source), cfg.label_noise, fork.fork());
  }
  out.source = std::move(source);
  return out;
}

}  // namespace ecbe
