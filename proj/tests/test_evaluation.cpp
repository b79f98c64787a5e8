#include <doctest.h>

#include <cmath>
#include <numeric>

#include "ecbe/evaluation.hpp"
#include "ecbe/generators.hpp"
#include "ecbe/rng.hpp"

using namespace ecbe;

namespace {

// Deterministic NB-learnable stream (segment-threshold rule on one feature).
std::unique_ptr<StreamSource> learnable_stream(long total, std::uint64_t seed) {
  RbfConfig cfg;
  cfg.seed = seed;
  cfg.total_instances = total;
  cfg.features = 2;
  cfg.classes = 2;
  RbfCentroid a, b;
  a.center = Eigen::VectorXd::Constant(2, 0.0);
  a.label = 0;
  a.weight = 1.0;
  a.spread = 0.15;
  b.center = Eigen::VectorXd::Constant(2, 2.0);
  b.label = 1;
  b.weight = 1.0;
  b.spread = 0.15;
  cfg.explicit_centroids = {a, b};
  return rbf_stream(cfg);
}

}  // namespace

TEST_CASE("prequential run on a learnable stream reaches high accuracy") {
  auto source = learnable_stream(20000, 31);
  EcbeConfig config;
  config.k = 5;
  config.winsize = 500;
  const auto result = prequential_run(config, *source);
  CHECK(result.summary.average_accuracy >= 0.99);
  CHECK(result.summary.blocks == 40);
  CHECK(result.summary.instances == 20000);
  // First block has no predictions and is excluded.
  CHECK_FALSE(result.summary.block_accuracies[0].has_value());
  CHECK(result.summary.block_accuracies[1].has_value());
}

TEST_CASE("a 5456-instance stream with winsize 200 makes 28 blocks") {
  auto source = learnable_stream(5456, 32);
  EcbeConfig config;
  config.k = 3;
  config.winsize = 200;
  const auto result = prequential_run(config, *source);
  CHECK(result.summary.blocks == 28);
  CHECK(result.reports.back().n == 56);
  // Block-size weighted average equals the recomputation from per-block rows.
  double weighted = 0.0;
  long counted = 0;
  for (const auto& r : result.reports) {
    if (!r.accuracy) continue;
    weighted += *r.accuracy * r.n;
    counted += r.n;
  }
  CHECK(result.summary.average_accuracy ==
        doctest::Approx(weighted / counted).epsilon(1e-12));
}

TEST_CASE("empty stream is an error") {
  Schema schema;
  schema.attributes.push_back({"x", AttributeKind::numeric, {}});
  schema.labels = {"0", "1"};
  MemorySource source(schema, {});
  EcbeConfig config;
  CHECK_THROWS_AS(static_cast<void>(prequential_run(config, source)), data_error);
}

TEST_CASE("identical seeds and config produce identical CSV bytes") {
  EcbeConfig config;
  config.k = 4;
  config.winsize = 250;
  RunOptions options;
  options.measure_time = false;  // wallclock column pinned to zero
  auto first = run_csv(prequential_run(config, *learnable_stream(6000, 77), options));
  auto second = run_csv(prequential_run(config, *learnable_stream(6000, 77), options));
  CHECK(first == second);
  CHECK(first.find("block_index,n,accuracy,psi_prev,psi_curr,epsilon,drift,"
                   "theta_weight,ensemble_size,deleted_floor,deleted_drift,"
                   "deleted_capacity,wallclock_ms") == 0);
}

TEST_CASE("wall clock total stays within 5% of the per-block sum") {
  EcbeConfig config;
  config.k = 5;
  config.winsize = 500;
  auto source = learnable_stream(30000, 41);
  const auto result = prequential_run(config, *source);
  const double block_sum_s =
      std::accumulate(result.block_ms.begin(), result.block_ms.end(), 0.0) / 1e3;
  CHECK(result.summary.wall_seconds > 0.0);
  CHECK(std::abs(result.summary.wall_seconds - block_sum_s) <=
        0.05 * result.summary.wall_seconds + 0.002);
}

TEST_CASE("collapse_flag_events merges consecutive flags") {
  CHECK(collapse_flag_events({}) == std::vector<long>{});
  CHECK(collapse_flag_events({4}) == std::vector<long>{4});
  CHECK(collapse_flag_events({4, 5, 6, 9, 12, 13}) ==
        std::vector<long>{4, 9, 12});
}

TEST_CASE("score_detection_events covers the stated outcomes") {
  const std::vector<long> truths{5, 10, 15, 20, 25};

  SUBCASE("flags exactly at truth blocks") {
    const auto score = score_detection_events({5, 10, 15, 20, 25}, truths, 3);
    CHECK(score.true_detections == 5);
    CHECK(score.false_alarms == 0);
    CHECK(score.missed == 0);
  }
  SUBCASE("six flags, five truths matched, one extra") {
    const auto score = score_detection_events({5, 8, 10, 16, 21, 25}, truths, 3);
    CHECK(score.true_detections == 5);
    CHECK(score.false_alarms == 1);
    CHECK(score.missed == 0);
  }
  SUBCASE("no flags at all") {
    const auto score = score_detection_events({}, truths, 3);
    CHECK(score.true_detections == 0);
    CHECK(score.false_alarms == 0);
    CHECK(score.missed == 5);
  }
  SUBCASE("a flag before the truth window does not match") {
    const auto score = score_detection_events({4}, {5}, 3);
    CHECK(score.true_detections == 0);
    CHECK(score.false_alarms == 1);
    CHECK(score.missed == 1);
  }
  SUBCASE("each truth matches at most one flag") {
    const auto score = score_detection_events({5, 7}, {5}, 3);
    CHECK(score.true_detections == 1);
    CHECK(score.false_alarms == 1);
  }
}

TEST_CASE("score_detections converts manifest positions to blocks") {
  std::vector<DriftRecord> log;
  for (long b = 0; b < 12; ++b) {
    DriftRecord r;
    r.block_index = b;
    r.drift = b == 6 || b == 7;  // one event spanning two blocks
    log.push_back(r);
  }
  const auto score = score_detections(log, {550}, 100, 3);  // truth block 5
  CHECK(score.true_detections == 1);
  CHECK(score.false_alarms == 0);
  CHECK(score.missed == 0);
}

TEST_CASE("baseline ensemble matches ECBE on a stationary stream") {
  EcbeConfig config;
  config.k = 5;
  config.winsize = 500;
  auto ecbe_result = prequential_run(config, *learnable_stream(15000, 51));
  auto base_result = run_baseline(config, *learnable_stream(15000, 51));
  CHECK(base_result.summary.algorithm == "baseline");
  CHECK(base_result.summary.drift_flags == 0);
  CHECK(std::abs(ecbe_result.summary.average_accuracy -
                 base_result.summary.average_accuracy) < 0.05);
}

TEST_CASE("baseline is deterministic") {
  EcbeConfig config;
  config.k = 3;
  config.winsize = 300;
  RunOptions options;
  options.measure_time = false;
  auto a = run_csv(run_baseline(config, *learnable_stream(4000, 52), options));
  auto b = run_csv(run_baseline(config, *learnable_stream(4000, 52), options));
  CHECK(a == b);
}

TEST_CASE("ECBE recovers faster than the baseline after abrupt swaps") {
  // Paired runs over ten seeds on a mid-block swap stream.
  auto make_swapped = [](std::uint64_t seed) {
    GeneratorConfig cfg;
    cfg.kind = GeneratorKind::sea;
    cfg.seed = seed;
    cfg.total_instances = 6000;
    cfg.thresholds = {8.0};
    cfg.drift_positions = {2050, 4050};
    return make_stream(cfg);
  };
  EcbeConfig config;
  config.k = 5;
  config.winsize = 100;

  auto recovery_blocks = [](const RunResult& result, long truth_block) {
    // Pre-drift mean over the five blocks before the truth block.
    double pre = 0.0;
    int counted = 0;
    for (const auto& r : result.reports) {
      if (r.block_index >= truth_block - 5 && r.block_index < truth_block &&
          r.accuracy) {
        pre += *r.accuracy;
        ++counted;
      }
    }
    pre /= counted;
    for (const auto& r : result.reports) {
      if (r.block_index <= truth_block + 1 || !r.accuracy) continue;
      if (*r.accuracy >= pre - 0.05)
        return static_cast<int>(r.block_index - truth_block);
    }
    return 1000;
  };

  int ecbe_faster = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto ecbe_stream = make_swapped(seed);
    auto base_stream = make_swapped(seed);
    const auto ecbe_result = prequential_run(config, *ecbe_stream.source);
    const auto base_result = run_baseline(config, *base_stream.source);
    int ecbe_total = 0, base_total = 0;
    for (long truth : {20L, 40L}) {
      ecbe_total += recovery_blocks(ecbe_result, truth);
      base_total += recovery_blocks(base_result, truth);
    }
    if (ecbe_total < base_total) ++ecbe_faster;
  }
  CHECK(ecbe_faster >= 8);
}

TEST_CASE("sweep emits one row per cell plus aggregate rows") {
  EcbeConfig config;
  config.k = 3;
  config.winsize = 200;
  SweepSpec spec;
  spec.param = SweepParam::winsize;
  spec.values = {200, 400, 800};
  spec.seeds = {1, 2};
  SourceFactory factory = [](std::uint64_t seed, SweepParam, double) {
    return learnable_stream(4000, seed);
  };
  RunOptions options;
  options.measure_time = false;
  const auto result = sweep(spec, config, factory, options);
  CHECK(result.cells.size() == 6);
  CHECK(result.value_means.size() == 3);

  const auto csv = sweep_csv(result);
  long rows = std::count(csv.begin(), csv.end(), '\n') - 1;  // minus header
  CHECK(rows == 9);  // 6 cells + 3 aggregates
  CHECK(csv.find(",mean,") != std::string::npos);
}

TEST_CASE("a single-value sweep equals one prequential run") {
  EcbeConfig config;
  config.k = 3;
  config.winsize = 250;
  SweepSpec spec;
  spec.param = SweepParam::winsize;
  spec.values = {250};
  spec.seeds = {9};
  SourceFactory factory = [](std::uint64_t seed, SweepParam, double) {
    return learnable_stream(3000, seed);
  };
  RunOptions options;
  options.measure_time = false;
  const auto swept = sweep(spec, config, factory, options);
  const auto direct = prequential_run(config, *learnable_stream(3000, 9), options);
  CHECK(swept.cells[0].summary.average_accuracy ==
        direct.summary.average_accuracy);
  CHECK(swept.value_means[0] == direct.summary.average_accuracy);
}

TEST_CASE("noise sweep trends downward on a noisy stream") {
  EcbeConfig config;
  config.k = 3;
  config.winsize = 400;
  SweepSpec spec;
  spec.param = SweepParam::noise;
  spec.values = {0.05, 0.20};
  spec.seeds = {3};
  SourceFactory factory = [](std::uint64_t seed, SweepParam, double value) {
    return add_label_noise(learnable_stream(8000, seed), value, seed + 1000);
  };
  RunOptions options;
  options.measure_time = false;
  const auto result = sweep(spec, config, factory, options);
  CHECK(result.value_means[0] > result.value_means[1]);
}
