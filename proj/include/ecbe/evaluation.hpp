#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ecbe/ensemble.hpp"
#include "ecbe/stream.hpp"

namespace ecbe {

struct DetectionScore {
  int true_detections = 0;
  int false_alarms = 0;
  int missed = 0;
};

struct RunOptions {
  bool measure_time = true;  // when off, wallclock columns are written as 0
  std::vector<long> manifest_positions;  // ground-truth drift instance indices
  int tolerance_blocks = 3;
};

struct RunSummary {
  std::string algorithm;  // "ecbe" or "baseline"
  double average_accuracy = 0.0;  // block-size weighted, first block excluded
  std::vector<std::optional<double>> block_accuracies;
  long instances = 0;
  long blocks = 0;
  int drift_flags = 0;   // flagged blocks
  int drift_events = 0;  // runs of consecutive flags
  std::optional<DetectionScore> detection;
  double wall_seconds = 0.0;
  EcbeConfig config;
};

struct RunResult {
  RunSummary summary;
  std::vector<BlockReport> reports;
  std::vector<double> block_ms;  // same length as reports
};

/// Test-then-train evaluation of the entropy-weighted ensemble over every
/// block of the source. Block accuracy is measured on the pre-training
/// predictions; the first block (no predictor yet) is excluded from the
/// average.
RunResult prequential_run(const EcbeConfig& config, StreamSource& source,
                          const RunOptions& options = {});

/// Same harness with the unweighted majority-vote baseline.
RunResult run_baseline(const EcbeConfig& config, StreamSource& source,
                       const RunOptions& options = {});

/// Collapses consecutive flagged blocks into single detection events
/// (first block of each run).
std::vector<long> collapse_flag_events(const std::vector<long>& flagged_blocks);

/// Matches detection events against ground-truth blocks: an event within
/// tolerance blocks at or after a truth is a true detection (each truth
/// matched at most once); unmatched events are false alarms; unmatched
/// truths are misses.
DetectionScore score_detection_events(const std::vector<long>& event_blocks,
                                      const std::vector<long>& truth_blocks,
                                      int tolerance_blocks);

/// Scores a drift log against manifest instance positions; consecutive
/// flagged blocks count as one detection event.
DetectionScore score_detections(const std::vector<DriftRecord>& log,
                                const std::vector<long>& manifest_positions,
                                int winsize, int tolerance_blocks);

/// Per-block CSV with the stable column set.
std::string run_csv(const RunResult& result);
std::string summary_json(const RunSummary& summary);

enum class SweepParam { winsize, noise, alpha, beta, k };

SweepParam sweep_param_from_name(const std::string& name);
std::string sweep_param_name(SweepParam param);

struct SweepSpec {
  SweepParam param = SweepParam::winsize;
  std::vector<double> values;
  std::vector<std::uint64_t> seeds{1};
};

struct SweepCell {
  double value = 0.0;
  std::uint64_t seed = 0;
  RunSummary summary;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepCell> cells;        // one per (value, seed), value-major
  std::vector<double> value_means;     // mean average-accuracy per value
};

/// Builds a fresh source for one sweep cell. For the noise parameter the
/// factory applies the value to the stream itself; for the others it only
/// varies the seed.
using SourceFactory = std::function<std::unique_ptr<StreamSource>(
    std::uint64_t seed, SweepParam param, double value)>;

/// Runs one prequential evaluation per (value, seed) cell; cells execute in
/// parallel. Config parameters other than the swept one come from `base`.
SweepResult sweep(const SweepSpec& spec, const EcbeConfig& base,
                  const SourceFactory& make_source,
                  const RunOptions& options = {});

/// Sweep table CSV: one row per cell plus one aggregate row per value.
std::string sweep_csv(const SweepResult& result);

}  // namespace ecbe
