#include "fisgen/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "fisgen/csv.hpp"
#include "fisgen/experiment.hpp"
#include "fisgen/random.hpp"
#include "fisgen/serialization.hpp"
#include "fisgen/version.hpp"

namespace fisgen {

namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
};

ExperimentConfig resolve_config(const GlobalOptions& global) {
  ExperimentConfig config;
  if (!global.config_path.empty())
    config = config_from_json(read_json_file(global.config_path));
  if (global.seed) config.seed = *global.seed;
  return config;
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

void write_manifest(const ExperimentConfig& config, const std::string& data_path,
                    const std::string& out_dir) {
  const Json manifest{{"config", config_to_json(config)},
                      {"dataset_path", data_path},
                      {"dataset_digest", file_digest(data_path)},
                      {"tool_version", kVersion},
                      {"timestamp", utc_timestamp()}};
  write_json_file(manifest, (fs::path(out_dir) / "manifest.json").string());
}

std::string format_full(double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

int run_synth(const GlobalOptions& global, int n_override, double noise_override,
              const std::string& out_path) {
  SyntheticSpec spec = default_synthetic_spec();
  if (!global.config_path.empty())
    spec = synthetic_spec_from_json(read_json_file(global.config_path));
  if (n_override > 0) spec.n = n_override;
  if (noise_override >= 0.0) spec.noise = noise_override;
  if (global.seed) spec.seed = *global.seed;

  const Dataset dataset = generate_synthetic(spec);
  if (out_path.empty() || out_path == "-") {
    write_dataset_csv(dataset, std::cout);
  } else {
    save_dataset(dataset, out_path);
    std::cerr << "wrote " << dataset.rows.rows() << " rows to " << out_path << '\n';
  }
  return 0;
}

int run_fit(const GlobalOptions& global, const std::string& data_path, int k,
            const std::string& out_path) {
  const ExperimentConfig config = resolve_config(global);
  const Dataset dataset = load_dataset(data_path, config.predictors, config.target);

  const Eigen::MatrixXd variables = dataset.variable_matrix();
  const std::vector<Partition> partitions =
      build_variable_partitions(variables, config, 0);
  RuleSet rules =
      extract_rules(variables, partitions, k, config.weight_scheme,
                    config.combine_scheme, config.fcm_config(mix_seed(config.seed, 0, k)));
  if (config.normalize_rule_weights) rules = normalize_weights(rules);

  FisModel model;
  model.input_partitions.assign(partitions.begin(), partitions.end() - 1);
  model.output_partition = partitions.back();
  model.rules = std::move(rules);
  model.firing_scheme = config.firing_scheme;
  model.use_rule_weights = config.use_rule_weights;

  write_json_file(fis_model_to_json(model), out_path);
  std::cerr << "wrote model with " << model.rules.size() << " rules to " << out_path
            << '\n';
  return 0;
}

int run_predict(const std::string& model_path, const std::string& data_path,
                const std::string& out_path) {
  const FisModel model = fis_model_from_json(read_json_file(model_path));
  std::vector<std::string> predictors;
  predictors.reserve(model.input_partitions.size());
  for (const Partition& partition : model.input_partitions)
    predictors.push_back(partition.variable);

  // The target column is optional for prediction: include actuals/residuals
  // only when present.
  bool has_target = false;
  {
    std::ifstream file(data_path);
    if (!file) throw EmptyFile("cannot open file: " + data_path);
    const std::vector<std::vector<std::string>> rows = read_csv(file);
    if (!rows.empty()) {
      for (const std::string& name : rows[0])
        if (name == model.output_partition.variable) has_target = true;
    }
  }
  const Dataset dataset =
      load_dataset(data_path, predictors,
                   has_target ? model.output_partition.variable : std::string{});

  std::ofstream out(out_path);
  if (!out) throw EmptyFile("cannot write file: " + out_path);
  out << (has_target ? "row,covered,predicted,actual,abs_residual\n"
                     : "row,covered,predicted\n");
  Eigen::VectorXd x(predictors.size());
  for (Eigen::Index i = 0; i < dataset.rows.rows(); ++i) {
    for (std::size_t v = 0; v < predictors.size(); ++v)
      x(static_cast<Eigen::Index>(v)) =
          dataset.rows(i, dataset.column_index(predictors[v]));
    const Prediction prediction = predict(model, x);
    std::vector<std::string> fields = {std::to_string(i + 1),
                                       prediction.value ? "1" : "0",
                                       prediction.value ? format_full(*prediction.value)
                                                        : std::string{}};
    if (has_target) {
      const double actual =
          dataset.rows(i, dataset.column_index(model.output_partition.variable));
      fields.push_back(format_full(actual));
      fields.push_back(prediction.value
                           ? format_full(std::fabs(*prediction.value - actual))
                           : std::string{});
    }
    write_csv_row(out, fields);
  }
  return 0;
}

int run_sweep(const GlobalOptions& global, const std::string& data_path,
              const std::string& test_path, int rmax, const std::string& out_path) {
  ExperimentConfig config = resolve_config(global);
  if (rmax > 0) config.rule_sweep_max = rmax;

  const Dataset build = load_dataset(data_path, config.predictors, config.target);
  const Eigen::MatrixXd build_points = build.variable_matrix();
  const Eigen::MatrixXd test_points =
      test_path.empty()
          ? build_points
          : load_dataset(test_path, config.predictors, config.target).variable_matrix();

  const std::vector<Partition> partitions =
      build_variable_partitions(build_points, config, 0);

  std::ofstream out(out_path);
  if (!out) throw EmptyFile("cannot write file: " + out_path);
  out << kRecordsCsvHeader << '\n';
  for (int k = 1; k <= config.rule_sweep_max; ++k) {
    RuleSet rules = extract_rules(build_points, partitions, k, config.weight_scheme,
                                  config.combine_scheme,
                                  config.fcm_config(mix_seed(config.seed, 0, k)));
    if (config.normalize_rule_weights) rules = normalize_weights(rules);

    FisModel model;
    model.input_partitions.assign(partitions.begin(), partitions.end() - 1);
    model.output_partition = partitions.back();
    model.rules = std::move(rules);
    model.firing_scheme = config.firing_scheme;
    model.use_rule_weights = config.use_rule_weights;

    const SetPrediction set = predict_set(model, test_points);
    int made = 0;
    for (const Prediction& prediction : set.predictions)
      if (prediction.value) ++made;
    double abs_sum = 0.0;
    double mean = 0.0;
    double median = 0.0;
    if (made > 0) {
      const ResidualSummary summary = residual_metrics(
          set.predictions, test_points.col(test_points.cols() - 1));
      abs_sum = summary.abs_sum;
      mean = config.ave_over_test_size
                 ? summary.abs_sum / static_cast<double>(test_points.rows())
                 : summary.mean;
      median = summary.median;
    }
    write_csv_row(out, {"1", "sweep", std::to_string(k),
                        std::to_string(std::llround(100.0 * set.coverage)),
                        std::to_string(std::llround(abs_sum)),
                        std::to_string(std::llround(mean)),
                        std::to_string(std::llround(median)),
                        std::to_string(made)});
  }
  return 0;
}

int run_experiment_command(const GlobalOptions& global, const std::string& data_path) {
  const ExperimentConfig config = resolve_config(global);
  const Dataset dataset = load_dataset(data_path, config.predictors, config.target);
  const ExperimentReport report = run_experiment(dataset, config);
  write_report_files(report, global.out_dir);
  write_manifest(config, data_path, global.out_dir);
  std::cerr << "experiment complete: " << global.out_dir << "/report.json\n";
  for (const std::string& warning : report.warnings)
    std::cerr << "warning: " << warning << '\n';
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
  CLI::App app{"Fuzzy inference system generation and sampling experiments"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--config", global.config_path, "JSON configuration file");
  std::uint64_t seed_value = 0;
  CLI::Option* seed_option =
      app.add_option("--seed", seed_value, "Override the configured seed");
  app.add_option("--out-dir", global.out_dir, "Output directory (experiment)");

  auto* synth = app.add_subcommand("synth", "Emit a synthetic dataset CSV");
  int synth_n = 0;
  double synth_noise = -1.0;
  std::string synth_out;
  synth->add_option("--n", synth_n, "Number of rows");
  synth->add_option("--noise", synth_noise, "Noise level (sigma / column range)");
  synth->add_option("--out", synth_out, "Output CSV path (default stdout)");

  auto* fit = app.add_subcommand("fit", "Build one FIS from a dataset");
  std::string fit_data;
  int fit_k = 7;
  std::string fit_out = "model.json";
  fit->add_option("--data", fit_data, "Dataset CSV")->required();
  fit->add_option("--k", fit_k, "Cluster/rule count");
  fit->add_option("--out", fit_out, "Model JSON path");

  auto* predict_cmd = app.add_subcommand("predict", "Apply a model to a dataset");
  std::string predict_model;
  std::string predict_data;
  std::string predict_out = "predictions.csv";
  predict_cmd->add_option("--model", predict_model, "Model JSON")->required();
  predict_cmd->add_option("--data", predict_data, "Dataset CSV")->required();
  predict_cmd->add_option("--out", predict_out, "Predictions CSV path");

  auto* sweep = app.add_subcommand("sweep", "Sweep rule counts on one build set");
  std::string sweep_data;
  std::string sweep_test;
  int sweep_rmax = 0;
  std::string sweep_out = "records.csv";
  sweep->add_option("--data", sweep_data, "Build dataset CSV")->required();
  sweep->add_option("--test", sweep_test, "Test dataset CSV (default: build set)");
  sweep->add_option("--rmax", sweep_rmax, "Maximum rule count");
  sweep->add_option("--out", sweep_out, "Records CSV path");

  auto* experiment = app.add_subcommand("experiment", "Run the full pipeline");
  std::string experiment_data;
  experiment->add_option("--data", experiment_data, "Dataset CSV")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("fisgen");
  for (const std::string& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? 0 : 1;
  }
  if (seed_option->count() > 0) global.seed = seed_value;

  try {
    if (synth->parsed()) return run_synth(global, synth_n, synth_noise, synth_out);
    if (fit->parsed()) return run_fit(global, fit_data, fit_k, fit_out);
    if (predict_cmd->parsed())
      return run_predict(predict_model, predict_data, predict_out);
    if (sweep->parsed())
      return run_sweep(global, sweep_data, sweep_test, sweep_rmax, sweep_out);
    if (experiment->parsed())
      return run_experiment_command(global, experiment_data);
  } catch (const UsageError& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 1;
  } catch (const DataError& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 2;
  } catch (const NumericError& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 3;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 3;
  }
  return 1;
}

}  // namespace fisgen
