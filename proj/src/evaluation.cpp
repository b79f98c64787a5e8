#include "ecbe/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ecbe/baseline.hpp"
#include "ecbe/errors.hpp"
#include "ecbe/format.hpp"

namespace ecbe {

namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

template <typename Ensemble>
RunResult drive(const std::string& algorithm, const EcbeConfig& config,
                Ensemble& ensemble, StreamSource& source,
                const RunOptions& options) {
  RunResult result;
  result.summary.algorithm = algorithm;
  result.summary.config = config;

  const auto run_start = Clock::now();
  double weighted_correct = 0.0;
  long scored_instances = 0;

  while (true) {
    const auto block_start = Clock::now();
    auto block = next_block(source, config.winsize);
    if (!block) break;
    BlockReport report = ensemble.process_block(*block);
    result.summary.block_accuracies.push_back(report.accuracy);
    result.summary.instances += report.n;
    ++result.summary.blocks;
    if (report.accuracy) {
      weighted_correct += *report.accuracy * report.n;
      scored_instances += report.n;
    }
    if (report.drift) ++result.summary.drift_flags;
    result.reports.push_back(std::move(report));
    result.block_ms.push_back(
        options.measure_time ? ms_between(block_start, Clock::now()) : 0.0);
  }
  if (result.summary.blocks == 0) throw data_error("prequential_run: empty stream");

  result.summary.average_accuracy =
      scored_instances > 0 ? weighted_correct / scored_instances : 0.0;
  result.summary.wall_seconds =
      options.measure_time
          ? std::chrono::duration<double>(Clock::now() - run_start).count()
          : 0.0;

  std::vector<long> flagged;
  for (const auto& r : result.reports)
    if (r.drift) flagged.push_back(r.block_index);
  result.summary.drift_events =
      static_cast<int>(collapse_flag_events(flagged).size());
  if (!options.manifest_positions.empty()) {
    std::vector<long> truth_blocks;
    for (long p : options.manifest_positions)
      truth_blocks.push_back(p / config.winsize);
    result.summary.detection = score_detection_events(
        collapse_flag_events(flagged), truth_blocks, options.tolerance_blocks);
  }
  return result;
}

}  // namespace

RunResult prequential_run(const EcbeConfig& config, StreamSource& source,
                          const RunOptions& options) {
  EcbeEnsemble ensemble(config, source.schema());
  return drive("ecbe", config, ensemble, source, options);
}

RunResult run_baseline(const EcbeConfig& config, StreamSource& source,
                       const RunOptions& options) {
  MajorityEnsemble ensemble(config, source.schema());
  return drive("baseline", config, ensemble, source, options);
}

std::vector<long> collapse_flag_events(const std::vector<long>& flagged_blocks) {
  std::vector<long> events;
  for (std::size_t i = 0; i < flagged_blocks.size(); ++i)
    if (i == 0 || flagged_blocks[i] != flagged_blocks[i - 1] + 1)
      events.push_back(flagged_blocks[i]);
  return events;
}

DetectionScore score_detection_events(const std::vector<long>& event_blocks,
                                      const std::vector<long>& truth_blocks,
                                      int tolerance_blocks) {
  DetectionScore score;
  std::vector<bool> used(event_blocks.size(), false);
  for (long truth : truth_blocks) {
    bool matched = false;
    for (std::size_t i = 0; i < event_blocks.size(); ++i) {
      if (used[i]) continue;
      if (event_blocks[i] >= truth &&
          event_blocks[i] <= truth + tolerance_blocks) {
        used[i] = true;
        matched = true;
        break;
      }
    }
    if (matched)
      ++score.true_detections;
    else
      ++score.missed;
  }
  score.false_alarms =
      static_cast<int>(event_blocks.size()) - score.true_detections;
  return score;
}

DetectionScore score_detections(const std::vector<DriftRecord>& log,
                                const std::vector<long>& manifest_positions,
                                int winsize, int tolerance_blocks) {
  std::vector<long> flagged;
  for (const auto& r : log)
    if (r.drift) flagged.push_back(r.block_index);
  std::vector<long> truth_blocks;
  for (long p : manifest_positions) truth_blocks.push_back(p / winsize);
  return score_detection_events(collapse_flag_events(flagged), truth_blocks,
                                tolerance_blocks);
}

std::string run_csv(const RunResult& result) {
  std::ostringstream out;
  out << "block_index,n,accuracy,psi_prev,psi_curr,epsilon,drift,theta_weight,"
         "ensemble_size,deleted_floor,deleted_drift,deleted_capacity,"
         "wallclock_ms\n";
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    const auto& r = result.reports[i];
    out << r.block_index << ',' << r.n << ',';
    if (r.accuracy) out << format_double(*r.accuracy);
    out << ',';
    if (r.psi_prev) out << format_double(*r.psi_prev);
    out << ',';
    if (r.psi_curr) out << format_double(*r.psi_curr);
    out << ',';
    if (r.epsilon) out << format_double(*r.epsilon);
    out << ',' << (r.drift ? 1 : 0) << ',';
    if (r.theta_weight) out << format_double(*r.theta_weight);
    out << ',' << r.ensemble_size << ',' << r.deleted_floor << ','
        << r.deleted_drift << ',' << r.deleted_capacity << ','
        << format_double(result.block_ms[i]) << '\n';
  }
  return out.str();
}

std::string summary_json(const RunSummary& summary) {
  nlohmann::json j;
  j["algorithm"] = summary.algorithm;
  j["average_accuracy"] = summary.average_accuracy;
  j["instances"] = summary.instances;
  j["blocks"] = summary.blocks;
  j["drift_flags"] = summary.drift_flags;
  j["drift_events"] = summary.drift_events;
  j["wall_seconds"] = summary.wall_seconds;
  nlohmann::json accuracies = nlohmann::json::array();
  for (const auto& a : summary.block_accuracies) {
    if (a)
      accuracies.push_back(*a);
    else
      accuracies.push_back(nullptr);
  }
  j["block_accuracies"] = accuracies;
  if (summary.detection) {
    j["detection"] = {{"true_detections", summary.detection->true_detections},
                      {"false_alarms", summary.detection->false_alarms},
                      {"missed", summary.detection->missed}};
  }
  j["config"] = {{"k", summary.config.k},
                 {"winsize", summary.config.winsize},
                 {"alpha", summary.config.alpha},
                 {"beta", summary.config.beta},
                 {"range_r", summary.config.range_r},
                 {"hoeffding_n_multiplier", summary.config.hoeffding_n_multiplier}};
  return j.dump(2) + "\n";
}

SweepParam sweep_param_from_name(const std::string& name) {
  if (name == "winsize") return SweepParam::winsize;
  if (name == "noise") return SweepParam::noise;
  if (name == "alpha") return SweepParam::alpha;
  if (name == "beta") return SweepParam::beta;
  if (name == "k") return SweepParam::k;
  throw config_error("unknown sweep parameter '" + name + "'");
}

std::string sweep_param_name(SweepParam param) {
  switch (param) {
    case SweepParam::winsize: return "winsize";
    case SweepParam::noise: return "noise";
    case SweepParam::alpha: return "alpha";
    case SweepParam::beta: return "beta";
    case SweepParam::k: return "k";
  }
  return "?";
}

namespace {

EcbeConfig apply_param(EcbeConfig config, SweepParam param, double value) {
  switch (param) {
    case SweepParam::winsize:
      config.winsize = static_cast<int>(value);
      break;
    case SweepParam::alpha:
      config.alpha = value;
      break;
    case SweepParam::beta:
      config.beta = value;
      break;
    case SweepParam::k:
      config.k = static_cast<int>(value);
      break;
    case SweepParam::noise:
      break;  // applied by the source factory
  }
  return config;
}

void validate_spec(const SweepSpec& spec, const EcbeConfig& base) {
  if (spec.values.empty()) throw config_error("sweep: no values");
  if (spec.seeds.empty()) throw config_error("sweep: no seeds");
  for (double value : spec.values)
    apply_param(base, spec.param, value).validate();
  if (spec.param == SweepParam::noise)
    for (double value : spec.values)
      if (value < 0.0 || value > 1.0)
        throw config_error("sweep: noise values must be in [0,1]");
}

}  // namespace

SweepResult sweep(const SweepSpec& spec, const EcbeConfig& base,
                  const SourceFactory& make_source, const RunOptions& options) {
  validate_spec(spec, base);
  SweepResult result;
  result.spec = spec;

  struct Cell {
    double value;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (double value : spec.values)
    for (std::uint64_t seed : spec.seeds) cells.push_back({value, seed});

  std::vector<std::future<RunSummary>> futures;
  futures.reserve(cells.size());
  for (const auto& cell : cells) {
    futures.push_back(std::async(std::launch::async, [&, cell]() {
      auto source = make_source(cell.seed, spec.param, cell.value);
      const EcbeConfig config = apply_param(base, spec.param, cell.value);
      return prequential_run(config, *source, options).summary;
    }));
  }
  for (std::size_t i = 0; i < cells.size(); ++i)
    result.cells.push_back({cells[i].value, cells[i].seed, futures[i].get()});

  for (std::size_t v = 0; v < spec.values.size(); ++v) {
    double sum = 0.0;
    for (std::size_t s = 0; s < spec.seeds.size(); ++s)
      sum += result.cells[v * spec.seeds.size() + s].summary.average_accuracy;
    result.value_means.push_back(sum / static_cast<double>(spec.seeds.size()));
  }
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "param,value,seed,average_accuracy,blocks,drift_flags,drift_events,"
         "true_detections,false_alarms,missed,wall_seconds\n";
  const auto param = sweep_param_name(result.spec.param);
  const auto seeds = result.spec.seeds.size();
  for (std::size_t v = 0; v < result.spec.values.size(); ++v) {
    for (std::size_t s = 0; s < seeds; ++s) {
      const auto& cell = result.cells[v * seeds + s];
      out << param << ',' << format_double(cell.value) << ',' << cell.seed
          << ',' << format_double(cell.summary.average_accuracy) << ','
          << cell.summary.blocks << ',' << cell.summary.drift_flags << ','
          << cell.summary.drift_events << ',';
      if (cell.summary.detection)
        out << cell.summary.detection->true_detections << ','
            << cell.summary.detection->false_alarms << ','
            << cell.summary.detection->missed;
      else
        out << ",,";
      out << ',' << format_double(cell.summary.wall_seconds) << '\n';
    }
    out << param << ',' << format_double(result.spec.values[v]) << ",mean,"
        << format_double(result.value_means[v]) << ",,,,,,,\n";
  }
  return out.str();
}

}  // namespace ecbe
