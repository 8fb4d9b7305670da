#include "fisgen/experiment.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "fisgen/random.hpp"

namespace fisgen {

namespace {

// Seed stream tags: partitions for variable v use index kPartitionStream + v,
// rule extraction for rule count k uses index k.
constexpr std::uint64_t kPartitionStream = 1000000;

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& matrix,
                            const std::vector<int>& indices) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(indices.size()), matrix.cols());
  for (std::size_t i = 0; i < indices.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = matrix.row(indices[i]);
  return out;
}

AccuracyRecord make_record(const FisModel& model, const Eigen::MatrixXd& test_points,
                           int rule_count, const ExperimentConfig& config) {
  const SetPrediction set = predict_set(model, test_points);
  AccuracyRecord record;
  record.rule_count = rule_count;
  record.coverage = set.coverage;
  int made = 0;
  for (const Prediction& prediction : set.predictions)
    if (prediction.value) ++made;
  record.predictions_made = made;
  if (made > 0) {
    const Eigen::VectorXd actuals = test_points.col(test_points.cols() - 1);
    const ResidualSummary summary = residual_metrics(set.predictions, actuals);
    record.abs_residual_sum = summary.abs_sum;
    record.mean_abs_residual =
        config.ave_over_test_size
            ? summary.abs_sum / static_cast<double>(test_points.rows())
            : summary.mean;
    record.median_abs_residual = summary.median;
  }
  return record;
}

FisModel assemble_model(const std::vector<Partition>& partitions, RuleSet rules,
                        const ExperimentConfig& config) {
  FisModel model;
  model.input_partitions.assign(partitions.begin(), partitions.end() - 1);
  model.output_partition = partitions.back();
  model.rules = std::move(rules);
  model.firing_scheme = config.firing_scheme;
  model.use_rule_weights = config.use_rule_weights;
  return model;
}

// The k-rule models for one build matrix: each rule count is an independent
// clustering run with its own derived seed.
std::vector<RuleSet> sweep_rule_sets(const Eigen::MatrixXd& build_points,
                                     const std::vector<Partition>& partitions,
                                     const ExperimentConfig& config,
                                     std::uint64_t sample_stream) {
  std::vector<RuleSet> sets;
  sets.reserve(config.rule_sweep_max);
  for (int k = 1; k <= config.rule_sweep_max; ++k) {
    const FcmConfig fcm =
        config.fcm_config(mix_seed(config.seed, sample_stream, k));
    RuleSet rules = extract_rules(build_points, partitions, k,
                                  config.weight_scheme, config.combine_scheme, fcm);
    if (config.normalize_rule_weights) rules = normalize_weights(rules);
    rules.provenance.sample_index = sample_stream == 0
                                        ? std::optional<int>{}
                                        : std::optional<int>{static_cast<int>(sample_stream)};
    sets.push_back(std::move(rules));
  }
  return sets;
}

}  // namespace

std::vector<std::string> ExperimentConfig::effective_labels() const {
  if (!labels.empty()) return labels;
  if (mf_count == 7)
    return {"VerySmall", "Small", "SmallMedium", "Medium",
            "MediumLarge", "Large", "VeryLarge"};
  std::vector<std::string> generated;
  generated.reserve(mf_count);
  for (int j = 1; j <= mf_count; ++j) generated.push_back("MF" + std::to_string(j));
  return generated;
}

FcmConfig ExperimentConfig::fcm_config(std::uint64_t derived_seed) const {
  FcmConfig fcm;
  fcm.fuzzifier = fuzzifier;
  fcm.tolerance = fcm_tolerance;
  fcm.max_iterations = fcm_max_iterations;
  fcm.min_max_scale = min_max_scale;
  fcm.seed = derived_seed;
  return fcm;
}

void ExperimentConfig::validate(const Dataset& dataset) const {
  if (predictors.empty()) throw InvalidConfig("config: at least one predictor");
  if (target.empty()) throw InvalidConfig("config: target column required");
  if (mf_count < 2) throw InvalidConfig("config: mf_count must be >= 2");
  if (!labels.empty() && static_cast<int>(labels.size()) != mf_count)
    throw InvalidConfig("config: label count must equal mf_count");
  if (rule_sweep_max < 1) throw InvalidConfig("config: rule_sweep_max must be >= 1");
  if (top_n < 1) throw InvalidConfig("config: top_n must be >= 1");
  if (sample_count < 1) throw InvalidConfig("config: sample_count must be >= 1");
  if (build_size < 1 || build_size >= dataset.rows.rows())
    throw InvalidConfig("config: build_size must be in [1, rows)");
  if (rule_sweep_max > build_size)
    throw InvalidConfig("config: rule_sweep_max cannot exceed build_size");
  if (!(fuzzifier > 1.0)) throw InvalidConfig("config: fuzzifier must be > 1");
  for (const std::string& name : predictors) dataset.column_index(name);
  dataset.column_index(target);
}

std::string approach_name(Approach approach) {
  switch (approach) {
    case Approach::full:
      return "full";
    case Approach::sampled:
      return "sampled";
    case Approach::top_n:
    default:
      return "top_n";
  }
}

std::vector<Partition> build_variable_partitions(const Eigen::MatrixXd& variables,
                                                 const ExperimentConfig& config,
                                                 std::uint64_t sample_stream) {
  const std::vector<std::string> labels = config.effective_labels();
  std::vector<std::string> names = config.predictors;
  names.push_back(config.target);

  std::vector<Partition> partitions;
  partitions.reserve(names.size());
  for (std::size_t v = 0; v < names.size(); ++v) {
    const FcmConfig fcm =
        config.fcm_config(mix_seed(config.seed, sample_stream, kPartitionStream + v));
    Partition partition =
        build_partition(variables.col(v), config.mf_count, labels, fcm);
    partition.variable = names[v];
    partitions.push_back(std::move(partition));
  }
  return partitions;
}

std::vector<SweepResult> run_full(const Dataset& dataset,
                                  const ExperimentConfig& config) {
  config.validate(dataset);
  const Eigen::MatrixXd variables = dataset.variable_matrix();
  const std::vector<SplitPlan> splits =
      make_splits(static_cast<int>(variables.rows()), config.build_size,
                  config.sample_count, config.seed);

  const std::vector<Partition> partitions =
      build_variable_partitions(variables, config, 0);
  const std::vector<RuleSet> rule_sets =
      sweep_rule_sets(variables, partitions, config, 0);

  std::vector<SweepResult> sweeps;
  sweeps.reserve(splits.size());
  for (const SplitPlan& split : splits) {
    const Eigen::MatrixXd test_points = select_rows(variables, split.test_indices);
    SweepResult sweep;
    sweep.approach = Approach::full;
    sweep.sample_index = split.sample_index;
    sweep.rule_sets = rule_sets;
    sweep.records.reserve(rule_sets.size());
    for (std::size_t k = 0; k < rule_sets.size(); ++k) {
      const FisModel model = assemble_model(partitions, rule_sets[k], config);
      sweep.records.push_back(
          make_record(model, test_points, static_cast<int>(k) + 1, config));
    }
    sweeps.push_back(std::move(sweep));
  }
  return sweeps;
}

std::vector<SweepResult> run_sampled(const Dataset& dataset,
                                     const ExperimentConfig& config) {
  config.validate(dataset);
  const Eigen::MatrixXd variables = dataset.variable_matrix();
  const std::vector<SplitPlan> splits =
      make_splits(static_cast<int>(variables.rows()), config.build_size,
                  config.sample_count, config.seed);

  std::vector<SweepResult> sweeps;
  sweeps.reserve(splits.size());
  for (const SplitPlan& split : splits) {
    const Eigen::MatrixXd build_points = select_rows(variables, split.build_indices);
    const Eigen::MatrixXd test_points = select_rows(variables, split.test_indices);
    const std::uint64_t stream = static_cast<std::uint64_t>(split.sample_index);

    const std::vector<Partition> partitions =
        build_variable_partitions(build_points, config, stream);
    SweepResult sweep;
    sweep.approach = Approach::sampled;
    sweep.sample_index = split.sample_index;
    sweep.rule_sets = sweep_rule_sets(build_points, partitions, config, stream);
    sweep.records.reserve(sweep.rule_sets.size());
    for (std::size_t k = 0; k < sweep.rule_sets.size(); ++k) {
      const FisModel model = assemble_model(partitions, sweep.rule_sets[k], config);
      sweep.records.push_back(
          make_record(model, test_points, static_cast<int>(k) + 1, config));
    }
    sweeps.push_back(std::move(sweep));
  }
  return sweeps;
}

std::vector<RuleFrequency> rule_frequency(const std::vector<SweepResult>& sweeps) {
  if (sweeps.empty()) throw EmptyInput("rule_frequency: no sweeps");
  std::unordered_map<std::string, RuleFrequency> counts;
  for (const SweepResult& sweep : sweeps) {
    for (const RuleSet& set : sweep.rule_sets) {
      for (const Rule& rule : set.rules) {
        const std::string id = rule_id(rule);
        auto [it, inserted] = counts.try_emplace(id);
        if (inserted) {
          it->second.id = id;
          it->second.rule = rule;
          it->second.rule.weight = 1.0;
        }
        ++it->second.count;
      }
    }
  }
  std::vector<RuleFrequency> ordered;
  ordered.reserve(counts.size());
  for (auto& [id, frequency] : counts) ordered.push_back(std::move(frequency));
  std::sort(ordered.begin(), ordered.end(),
            [](const RuleFrequency& lhs, const RuleFrequency& rhs) {
              if (lhs.count != rhs.count) return lhs.count > rhs.count;
              return lhs.id < rhs.id;
            });
  return ordered;
}

std::vector<SweepResult> run_top_n(const std::vector<SweepResult>& sampled_sweeps,
                                   const Dataset& dataset,
                                   const ExperimentConfig& config,
                                   std::vector<std::string>* warnings) {
  config.validate(dataset);
  if (sampled_sweeps.empty()) throw EmptyInput("run_top_n: no sampled sweeps");

  const std::vector<RuleFrequency> frequency = rule_frequency(sampled_sweeps);
  const int available = static_cast<int>(frequency.size());
  const int mega_size = std::min(config.top_n, available);
  if (available < config.top_n && warnings) {
    warnings->push_back("top_n: only " + std::to_string(available) +
                        " distinct rules available, requested " +
                        std::to_string(config.top_n) + "; using all");
  }

  RuleSet mega;
  mega.rules.reserve(mega_size);
  for (int r = 0; r < mega_size; ++r) {
    Rule rule = frequency[r].rule;
    rule.weight = static_cast<double>(frequency[r].count);
    mega.rules.push_back(std::move(rule));
  }
  mega = normalize_weights(mega);

  const Eigen::MatrixXd variables = dataset.variable_matrix();
  const std::vector<SplitPlan> splits =
      make_splits(static_cast<int>(variables.rows()), config.build_size,
                  config.sample_count, config.seed);
  // Membership geometry for the aggregated set comes from the full dataset,
  // keeping it fixed across the prefix sweep.
  const std::vector<Partition> partitions =
      build_variable_partitions(variables, config, 0);

  std::vector<RuleSet> prefixes;
  prefixes.reserve(mega_size);
  for (int t = 1; t <= mega_size; ++t) {
    RuleSet prefix;
    prefix.rules.assign(mega.rules.begin(), mega.rules.begin() + t);
    prefixes.push_back(std::move(prefix));
  }

  std::vector<SweepResult> sweeps;
  sweeps.reserve(splits.size());
  for (const SplitPlan& split : splits) {
    const Eigen::MatrixXd test_points = select_rows(variables, split.test_indices);
    SweepResult sweep;
    sweep.approach = Approach::top_n;
    sweep.sample_index = split.sample_index;
    sweep.rule_sets = prefixes;
    sweep.records.reserve(prefixes.size());
    for (std::size_t t = 0; t < prefixes.size(); ++t) {
      const FisModel model = assemble_model(partitions, prefixes[t], config);
      sweep.records.push_back(
          make_record(model, test_points, static_cast<int>(t) + 1, config));
    }
    sweeps.push_back(std::move(sweep));
  }
  return sweeps;
}

ExperimentReport run_experiment(const Dataset& dataset,
                                const ExperimentConfig& config) {
  config.validate(dataset);

  ExperimentReport report;
  report.config = config;
  report.dataset_rows = static_cast<int>(dataset.rows.rows());
  report.column_names = dataset.column_names;
  report.splits = make_splits(report.dataset_rows, config.build_size,
                              config.sample_count, config.seed);

  report.full = run_full(dataset, config);
  report.sampled = run_sampled(dataset, config);
  report.top = run_top_n(report.sampled, dataset, config, &report.warnings);

  // Best-model rows (one per sample and coverage mode, keyed on the absolute
  // residual sum) for the approaches with per-sample sweeps.
  for (const Approach approach : {Approach::sampled, Approach::full}) {
    const std::vector<SweepResult>& sweeps =
        approach == Approach::sampled ? report.sampled : report.full;
    for (const CoverageMode mode : {CoverageMode::ignore, CoverageMode::max_coverage}) {
      for (const SweepResult& sweep : sweeps) {
        BestModelRow row;
        row.approach = approach;
        row.coverage_mode = mode;
        row.sample_index = sweep.sample_index;
        row.record = select_best(sweep.records, Measure::abs_sum, mode);
        report.best_models.push_back(std::move(row));
      }
    }
  }

  // Sampled vs Top-N, aligned over the rule counts both sweeps cover.
  for (std::size_t s = 0; s < report.sampled.size(); ++s) {
    const std::vector<AccuracyRecord>& sampled_records = report.sampled[s].records;
    const std::vector<AccuracyRecord>& top_records = report.top[s].records;
    const std::size_t aligned =
        std::min(sampled_records.size(), top_records.size());
    const std::vector<AccuracyRecord> a(sampled_records.begin(),
                                        sampled_records.begin() + aligned);
    const std::vector<AccuracyRecord> b(top_records.begin(),
                                        top_records.begin() + aligned);
    std::array<ComparisonCell, 3> cells;
    for (const Measure measure : {Measure::abs_sum, Measure::mean, Measure::median})
      cells[static_cast<std::size_t>(measure)] = compare_approaches(a, b, measure);
    report.comparison.emplace(report.sampled[s].sample_index, cells);
  }
  report.comparison_summary = summarize_comparison(report.comparison);

  const PairwiseTTests ttests = pairwise_uniformity(
      report.splits, dataset.column(config.target), config.ttest_subset);
  report.ttest_sample_count = ttests.sample_count();
  report.ttest_cells.reserve(ttests.pair_count());
  for (int i = 0; i < ttests.sample_count(); ++i)
    for (int j = i + 1; j < ttests.sample_count(); ++j)
      report.ttest_cells.push_back(ttests.at(i, j));

  report.frequency = rule_frequency(report.sampled);
  report.rule_slots_per_sample =
      static_cast<long long>(config.rule_sweep_max) * (config.rule_sweep_max + 1) / 2;
  for (const SweepResult& sweep : report.sampled) {
    SampleRuleStats stats;
    stats.sample_index = sweep.sample_index;
    stats.rule_slots = report.rule_slots_per_sample;
    std::unordered_map<std::string, bool> distinct;
    for (const RuleSet& set : sweep.rule_sets) {
      stats.rules_generated += set.size();
      for (const Rule& rule : set.rules) distinct[rule_id(rule)] = true;
    }
    stats.distinct_rules = static_cast<long long>(distinct.size());
    report.sample_rule_stats.push_back(stats);
  }

  report.possible_rules = 1;
  for (std::size_t v = 0; v < config.predictors.size() + 1; ++v)
    report.possible_rules *= config.mf_count;

  return report;
}

}  // namespace fisgen
