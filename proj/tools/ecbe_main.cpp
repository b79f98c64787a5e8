// ecbe: stream generation, prequential evaluation, and parameter sweeps for
// the entropy-weighted block ensemble.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ecbe/csv.hpp"
#include "ecbe/drift.hpp"
#include "ecbe/errors.hpp"
#include "ecbe/evaluation.hpp"
#include "ecbe/generators.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    const auto range = token.find("..");
    if (range == std::string::npos) {
      values.push_back(std::stod(token));
      continue;
    }
    const double lo = std::stod(token.substr(0, range));
    std::string rest = token.substr(range + 2);
    double step = 1.0;
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
      step = std::stod(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    const double hi = std::stod(rest);
    if (step <= 0.0) throw ecbe::config_error("values: step must be positive");
    for (double v = lo; v <= hi + 1e-9; v += step) values.push_back(v);
  }
  if (values.empty()) throw ecbe::config_error("values: empty list");
  return values;
}

std::vector<long> parse_positions(const std::string& text) {
  std::vector<long> positions;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) positions.push_back(std::stol(token));
  return positions;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ecbe::data_error("cannot write '" + path + "'");
  out << content;
}

json generator_config_json(const ecbe::GeneratorConfig& cfg) {
  json j;
  j["kind"] = ecbe::generator_kind_name(cfg.kind);
  j["seed"] = cfg.seed;
  j["instances"] = cfg.total_instances;
  switch (cfg.kind) {
    case ecbe::GeneratorKind::hyperplane:
      j["features"] = cfg.features;
      j["drift_magnitude"] = cfg.drift_magnitude;
      if (cfg.generator_noise >= 0.0) j["noise"] = cfg.generator_noise;
      break;
    case ecbe::GeneratorKind::led:
      if (cfg.generator_noise >= 0.0) j["noise"] = cfg.generator_noise;
      break;
    case ecbe::GeneratorKind::sea:
      if (!cfg.thresholds.empty()) j["thresholds"] = cfg.thresholds;
      break;
    case ecbe::GeneratorKind::rbf:
      j["features"] = cfg.features;
      j["classes"] = cfg.classes;
      j["centroids"] = cfg.centroids;
      j["drift_speed"] = cfg.drift_speed;
      break;
  }
  if (!cfg.drift_positions.empty()) {
    j["drift_at"] = cfg.drift_positions;
    j["swap"] = {cfg.swap_labels.first, cfg.swap_labels.second};
  }
  if (cfg.label_noise > 0.0) j["label_noise"] = cfg.label_noise;
  return j;
}

struct GenerateArgs {
  std::string kind = "sea";
  std::uint64_t seed = 1;
  long instances = 50000;
  double noise = -1.0;
  double label_noise = 0.0;
  int features = 10;
  int classes = 2;
  int centroids = 50;
  double drift_magnitude = 0.0;
  double drift_speed = 0.0;
  std::string thresholds;
  std::string drift_at;
  std::string swap = "0,1";
  std::string out;
};

int run_generate(const GenerateArgs& args) {
  ecbe::GeneratorConfig cfg;
  cfg.kind = ecbe::generator_kind_from_name(args.kind);
  cfg.seed = args.seed;
  cfg.total_instances = args.instances;
  cfg.features = args.features;
  cfg.classes = args.classes;
  cfg.centroids = args.centroids;
  cfg.drift_magnitude = args.drift_magnitude;
  cfg.drift_speed = args.drift_speed;
  cfg.generator_noise = args.noise;
  cfg.label_noise = args.label_noise;
  if (!args.thresholds.empty())
    for (double v : parse_values(args.thresholds)) cfg.thresholds.push_back(v);
  if (!args.drift_at.empty()) {
    cfg.drift_positions = parse_positions(args.drift_at);
    auto pair = parse_positions(args.swap);
    if (pair.size() != 2)
      throw ecbe::config_error("--swap expects two label indices");
    cfg.swap_labels = {static_cast<int>(pair[0]), static_cast<int>(pair[1])};
  }

  auto generated = ecbe::make_stream(cfg);
  ecbe::write_schema_file(generated.source->schema(), args.out + ".schema.json");
  ecbe::write_stream_csv(*generated.source, args.out);
  write_file(args.out + ".manifest.json",
             ecbe::manifest_to_json(generated.manifest,
                                    generator_config_json(cfg).dump()));
  std::cout << "wrote " << args.out << " (" << cfg.total_instances
            << " instances), schema and manifest sidecars\n";
  return kExitOk;
}

struct RunArgs {
  std::string data;
  std::string manifest;
  std::string schema;
  std::string out = ".";
  bool baseline = false;
  bool no_timing = false;
  int tolerance_blocks = 3;
  ecbe::EcbeConfig config;
};

int run_run(const RunArgs& args) {
  ecbe::CsvOptions csv_options;
  csv_options.schema_path = args.schema;
  auto source = ecbe::open_csv(args.data, csv_options);

  ecbe::RunOptions options;
  options.measure_time = !args.no_timing;
  options.tolerance_blocks = args.tolerance_blocks;
  if (!args.manifest.empty())
    options.manifest_positions = ecbe::load_manifest(args.manifest).positions();

  args.config.validate();
  std::filesystem::create_directories(args.out);

  ecbe::RunResult result;
  if (args.baseline) {
    result = ecbe::run_baseline(args.config, *source, options);
    write_file(args.out + "/baseline_blocks.csv", ecbe::run_csv(result));
    write_file(args.out + "/baseline_summary.json",
               ecbe::summary_json(result.summary));
  } else {
    result = ecbe::prequential_run(args.config, *source, options);
    write_file(args.out + "/blocks.csv", ecbe::run_csv(result));
    write_file(args.out + "/summary.json", ecbe::summary_json(result.summary));
    std::vector<ecbe::DriftRecord> log;
    for (const auto& r : result.reports) {
      if (!r.psi_curr) continue;
      ecbe::DriftRecord record;
      record.block_index = r.block_index;
      record.psi_prev = r.psi_prev;
      record.psi_curr = *r.psi_curr;
      record.epsilon = *r.epsilon;
      record.drift = r.drift;
      log.push_back(record);
    }
    write_file(args.out + "/drift_log.csv", ecbe::drift_log_csv(log));
  }

  std::cout << result.summary.algorithm
            << ": average accuracy " << result.summary.average_accuracy << " over "
            << result.summary.blocks << " blocks, " << result.summary.drift_events
            << " drift events";
  if (result.summary.detection)
    std::cout << " (true " << result.summary.detection->true_detections
              << ", false " << result.summary.detection->false_alarms
              << ", missed " << result.summary.detection->missed << ")";
  std::cout << ", " << result.summary.wall_seconds << " s\n";
  return kExitOk;
}

struct SweepArgs {
  std::string param = "winsize";
  std::string values;
  int seeds = 1;
  std::uint64_t seed = 1;
  std::string data;
  std::string schema;
  std::string kind;
  long instances = 50000;
  double noise = -1.0;
  std::string out = ".";
  bool no_timing = false;
  ecbe::EcbeConfig config;
};

int run_sweep(const SweepArgs& args) {
  ecbe::SweepSpec spec;
  spec.param = ecbe::sweep_param_from_name(args.param);
  spec.values = parse_values(args.values);
  spec.seeds.clear();
  for (int s = 0; s < args.seeds; ++s) spec.seeds.push_back(args.seed + s);

  if (args.data.empty() == args.kind.empty())
    throw ecbe::config_error("sweep: exactly one of --data or --kind is required");

  ecbe::SourceFactory factory;
  if (!args.data.empty()) {
    const std::string data = args.data;
    const std::string schema = args.schema;
    factory = [data, schema](std::uint64_t seed, ecbe::SweepParam param,
                             double value) -> std::unique_ptr<ecbe::StreamSource> {
      ecbe::CsvOptions csv_options;
      csv_options.schema_path = schema;
      auto source = ecbe::open_csv(data, csv_options);
      if (param == ecbe::SweepParam::noise)
        return ecbe::add_label_noise(std::move(source), value, seed);
      return source;
    };
  } else {
    ecbe::GeneratorConfig base;
    base.kind = ecbe::generator_kind_from_name(args.kind);
    base.total_instances = args.instances;
    base.generator_noise = args.noise;
    factory = [base](std::uint64_t seed, ecbe::SweepParam param,
                     double value) -> std::unique_ptr<ecbe::StreamSource> {
      ecbe::GeneratorConfig cfg = base;
      cfg.seed = seed;
      if (param == ecbe::SweepParam::noise) cfg.label_noise = value;
      return ecbe::make_stream(cfg).source;
    };
  }

  ecbe::RunOptions options;
  options.measure_time = !args.no_timing;
  auto result = ecbe::sweep(spec, args.config, factory, options);
  std::filesystem::create_directories(args.out);
  write_file(args.out + "/sweep.csv", ecbe::sweep_csv(result));
  for (std::size_t v = 0; v < spec.values.size(); ++v)
    std::cout << args.param << "=" << spec.values[v]
              << " mean accuracy " << result.value_means[v] << "\n";
  return kExitOk;
}

void add_config_options(CLI::App* cmd, ecbe::EcbeConfig& config) {
  cmd->add_option("--k", config.k, "ensemble capacity");
  cmd->add_option("--winsize", config.winsize, "block size");
  cmd->add_option("--alpha", config.alpha, "confidence parameter in (0,1)");
  cmd->add_option("--beta", config.beta, "weight growth factor (> 1)");
  cmd->add_option("--range-r", config.range_r,
                  "entropy range R (0 = ln of label count)");
  cmd->add_option("--hoeffding-n-multiplier", config.hoeffding_n_multiplier,
                  "multiplier on n in the Hoeffding radius");
}

/// Fills options the command line left at their defaults from a JSON file.
void apply_json_config(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw ecbe::data_error("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ecbe::config_error(std::string("config json: ") + e.what());
  }
  for (const auto& [key, value] : j.items()) {
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr)
      throw ecbe::config_error("config json: unknown option '" + key + "'");
    if (opt->count() > 0) continue;  // command line wins
    std::string text =
        value.is_string() ? value.get<std::string>() : value.dump();
    opt->add_result(text);
    opt->run_callback();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy-weighted block ensemble for drifting streams"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "write a synthetic stream CSV");
  generate->add_option("--kind", gen.kind, "sea|hyperplane|led|rbf")->required();
  generate->add_option("--seed", gen.seed, "generator seed");
  generate->add_option("--instances", gen.instances, "stream length");
  generate->add_option("--noise", gen.noise,
                       "generator noise (hyperplane label flips, LED bit flips)");
  generate->add_option("--label-noise", gen.label_noise,
                       "post-hoc label corruption probability");
  generate->add_option("--features", gen.features, "attribute count");
  generate->add_option("--classes", gen.classes, "label count (rbf)");
  generate->add_option("--centroids", gen.centroids, "centroid count (rbf)");
  generate->add_option("--drift-magnitude", gen.drift_magnitude,
                       "hyperplane coefficient movement per instance");
  generate->add_option("--drift-speed", gen.drift_speed,
                       "rbf centroid movement per instance");
  generate->add_option("--thresholds", gen.thresholds,
                       "sea threshold schedule, e.g. 8,9,7,9.5");
  generate->add_option("--drift-at", gen.drift_at,
                       "label-swap positions, e.g. 750,1250");
  generate->add_option("--swap", gen.swap, "swapped label pair, e.g. 0,1");
  generate->add_option("--out", gen.out, "output CSV path")->required();

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "prequential evaluation on a CSV");
  run_cmd->add_option("--data", run.data, "input CSV")->required();
  run_cmd->add_option("--manifest", run.manifest, "ground-truth drift manifest");
  run_cmd->add_option("--schema", run.schema, "sidecar schema JSON");
  run_cmd->add_option("--out", run.out, "output directory");
  run_cmd->add_flag("--baseline", run.baseline,
                    "run the unweighted majority baseline instead");
  run_cmd->add_flag("--no-timing", run.no_timing,
                    "write zero wallclock columns (byte-reproducible output)");
  run_cmd->add_option("--tolerance-blocks", run.tolerance_blocks,
                      "detection scoring window");
  add_config_options(run_cmd, run.config);
  std::string run_config_file;
  run_cmd->add_option("--config", run_config_file,
                      "JSON config; command-line flags override");

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep");
  sweep_cmd->add_option("--param", sw.param, "winsize|noise|alpha|beta|k")
      ->required();
  sweep_cmd->add_option("--values", sw.values,
                        "comma list or lo..hi:step, e.g. 800..2400:200")
      ->required();
  sweep_cmd->add_option("--seeds", sw.seeds, "repetitions with distinct seeds");
  sweep_cmd->add_option("--seed", sw.seed, "base seed");
  sweep_cmd->add_option("--data", sw.data, "input CSV (alternative to --kind)");
  sweep_cmd->add_option("--schema", sw.schema, "sidecar schema JSON");
  sweep_cmd->add_option("--kind", sw.kind, "generator kind (alternative to --data)");
  sweep_cmd->add_option("--instances", sw.instances, "generated stream length");
  sweep_cmd->add_option("--noise", sw.noise, "generator noise");
  sweep_cmd->add_option("--out", sw.out, "output directory");
  sweep_cmd->add_flag("--no-timing", sw.no_timing, "write zero wallclock columns");
  add_config_options(sweep_cmd, sw.config);
  std::string sweep_config_file;
  sweep_cmd->add_option("--config", sweep_config_file,
                        "JSON config; command-line flags override");

  try {
    app.parse(argc, argv);
    apply_json_config(run_cmd, run_config_file);
    apply_json_config(sweep_cmd, sweep_config_file);
    if (generate->parsed()) return run_generate(gen);
    if (run_cmd->parsed()) return run_run(run);
    if (sweep_cmd->parsed()) return run_sweep(sw);
    return kExitConfig;
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const ecbe::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ecbe::data_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
