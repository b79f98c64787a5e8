#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ecbe/stream.hpp"

namespace ecbe {

struct HyperplaneConfig {
  std::uint64_t seed = 1;
  long total_instances = 50000;
  int features = 10;
  double drift_magnitude = 0.0;  // per-instance coefficient movement; 0 = stationary
  double noise = 0.1;            // label flip probability
  std::vector<double> coefficients;  // fixed coefficients; empty = random from seed
};

struct SeaConfig {
  std::uint64_t seed = 1;
  long total_instances = 50000;
  std::vector<double> thresholds{8.0, 9.0, 7.0, 9.5};  // one concept per segment
};

struct LedConfig {
  std::uint64_t seed = 1;
  long total_instances = 50000;
  double noise = 0.05;  // independent flip probability per binary attribute
};

struct RbfCentroid {
  Eigen::VectorXd center;
  int label = 0;
  double weight = 1.0;
  double spread = 0.1;
};

struct RbfConfig {
  std::uint64_t seed = 1;
  long total_instances = 50000;
  int features = 10;
  int classes = 2;
  int centroids = 50;
  double drift_speed = 0.0;  // per-instance centroid displacement
  std::vector<RbfCentroid> explicit_centroids;  // overrides random placement
};

/// Linear-threshold stream: x uniform in [0,1]^d, label positive when
/// sum a_i x_i >= a_0 with a_0 = half the coefficient sum. Coefficients move
/// by drift_magnitude per instance along fixed random directions.
std::unique_ptr<StreamSource> hyperplane_stream(const HyperplaneConfig& cfg);

/// Three uniform attributes in [0,10]; label 1 when attr1 + attr2 <= theta.
/// Theta steps through the schedule in equal-length segments.
std::unique_ptr<StreamSource> sea_stream(const SeaConfig& cfg);

/// Seven-segment digit display with 17 irrelevant uniform bits; every binary
/// attribute flips independently with the noise probability.
std::unique_ptr<StreamSource> led_stream(const LedConfig& cfg);

/// Gaussian mixture over weight-chosen centroids whose centers move at
/// drift_speed along fixed random unit directions.
std::unique_ptr<StreamSource> rbf_stream(const RbfConfig& cfg);

/// Seven-segment encodings of the digits 0-9 (exposed for tests).
extern const int kLedSegments[10][7];

/// Exchanges two labels on all instances after each position, toggling at
/// every position (two consecutive positions restore the original labels).
std::unique_ptr<StreamSource> inject_abrupt_drift(std::unique_ptr<StreamSource> source,
                                                  std::vector<long> positions,
                                                  std::pair<int, int> swap);

/// Replaces each label with a uniformly random different one with
/// probability p.
std::unique_ptr<StreamSource> add_label_noise(std::unique_ptr<StreamSource> source,
                                              double p, std::uint64_t seed);

struct DriftEvent {
  long position = 0;   // first affected instance index
  std::string kind;    // "label-swap" or "threshold-step"
};

/// Ground-truth drift record emitted alongside generated streams.
struct DriftManifest {
  std::uint64_t seed = 0;
  std::vector<DriftEvent> drifts;

  std::vector<long> positions() const {
    std::vector<long> out;
    out.reserve(drifts.size());
    for (const auto& d : drifts) out.push_back(d.position);
    return out;
  }
};

enum class GeneratorKind { sea, hyperplane, led, rbf };

GeneratorKind generator_kind_from_name(const std::string& name);
std::string generator_kind_name(GeneratorKind kind);

/// One-stop generator description as used by the CLI: a kind plus its
/// parameters and the optional drift/noise wrappers.
struct GeneratorConfig {
  GeneratorKind kind = GeneratorKind::sea;
  std::uint64_t seed = 1;
  long total_instances = 50000;

  // Kind-specific knobs; the ones for other kinds are ignored.
  int features = 10;
  double drift_magnitude = 0.0;
  double generator_noise = -1.0;  // hyperplane/LED noise; negative = kind default
  std::vector<double> thresholds;
  int classes = 2;
  int centroids = 50;
  double drift_speed = 0.0;

  // Wrappers, applied in this order.
  std::vector<long> drift_positions;
  std::pair<int, int> swap_labels{0, 1};
  double label_noise = 0.0;
};

struct GeneratedStream {
  std::unique_ptr<StreamSource> source;
  DriftManifest manifest;
};

GeneratedStream make_stream(const GeneratorConfig& cfg);

}  // namespace ecbe
