#include "fisgen/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fisgen/csv.hpp"

namespace fisgen {

namespace {

std::string shape_name(MfShape shape) {
  switch (shape) {
    case MfShape::left_shoulder:
      return "left_shoulder";
    case MfShape::right_shoulder:
      return "right_shoulder";
    case MfShape::interior:
    default:
      return "interior";
  }
}

MfShape shape_from_name(const std::string& name) {
  if (name == "left_shoulder") return MfShape::left_shoulder;
  if (name == "right_shoulder") return MfShape::right_shoulder;
  if (name == "interior") return MfShape::interior;
  throw JsonSchemaError("unknown membership shape: " + name);
}

const Json& require(const Json& json, const char* key) {
  const auto found = json.find(key);
  if (found == json.end())
    throw JsonSchemaError(std::string("missing key: ") + key);
  return *found;
}

std::string measure_csv_name(Measure measure) {
  switch (measure) {
    case Measure::abs_sum:
      return "abs_res";
    case Measure::mean:
      return "ave_res";
    case Measure::median:
    default:
      return "med_res";
  }
}

std::string coverage_mode_name(CoverageMode mode) {
  return mode == CoverageMode::ignore ? "ignore" : "max_coverage";
}

// Report CSVs display residuals and percentages as integers, like the source
// tables; report.json keeps full precision.
long long display_round(double value) {
  return static_cast<long long>(std::llround(value));
}

std::string format_double(double value) {
  std::ostringstream out;
  out.precision(12);
  out << value;
  return out.str();
}

}  // namespace

Json partition_to_json(const Partition& partition) {
  Json mfs = Json::array();
  for (const TriangularMf& mf : partition.mfs) {
    mfs.push_back(Json{{"a", mf.a}, {"b", mf.b}, {"c", mf.c},
                       {"shape", shape_name(mf.shape)}});
  }
  return Json{{"variable", partition.variable},
              {"labels", partition.labels},
              {"mfs", mfs}};
}

Partition partition_from_json(const Json& json) {
  Partition partition;
  partition.variable = require(json, "variable").get<std::string>();
  partition.labels = require(json, "labels").get<std::vector<std::string>>();
  for (const Json& entry : require(json, "mfs")) {
    TriangularMf mf;
    mf.a = require(entry, "a").get<double>();
    mf.b = require(entry, "b").get<double>();
    mf.c = require(entry, "c").get<double>();
    mf.shape = shape_from_name(require(entry, "shape").get<std::string>());
    partition.mfs.push_back(mf);
  }
  validate(partition);
  return partition;
}

Json rule_set_to_json(const RuleSet& rules) {
  Json provenance = Json::object();
  if (rules.provenance.sample_index)
    provenance["sample_index"] = *rules.provenance.sample_index;
  if (rules.provenance.cluster_count)
    provenance["cluster_count"] = *rules.provenance.cluster_count;
  Json entries = Json::array();
  for (const Rule& rule : rules.rules) {
    entries.push_back(Json{{"antecedents", rule.antecedents},
                           {"consequent", rule.consequent},
                           {"weight", rule.weight}});
  }
  return Json{{"provenance", provenance}, {"rules", entries}};
}

RuleSet rule_set_from_json(const Json& json) {
  RuleSet rules;
  const Json& provenance = require(json, "provenance");
  if (provenance.contains("sample_index"))
    rules.provenance.sample_index = provenance["sample_index"].get<int>();
  if (provenance.contains("cluster_count"))
    rules.provenance.cluster_count = provenance["cluster_count"].get<int>();
  for (const Json& entry : require(json, "rules")) {
    Rule rule;
    rule.antecedents = require(entry, "antecedents").get<std::vector<int>>();
    rule.consequent = require(entry, "consequent").get<int>();
    rule.weight = require(entry, "weight").get<double>();
    if (!(rule.weight > 0.0) || !std::isfinite(rule.weight))
      throw JsonSchemaError("rule weight must be a finite positive real");
    rules.rules.push_back(std::move(rule));
  }
  return rules;
}

Json fis_model_to_json(const FisModel& model) {
  Json inputs = Json::array();
  for (const Partition& partition : model.input_partitions)
    inputs.push_back(partition_to_json(partition));
  return Json{{"input_partitions", inputs},
              {"output_partition", partition_to_json(model.output_partition)},
              {"rules", rule_set_to_json(model.rules)},
              {"firing_scheme",
               model.firing_scheme == FiringScheme::product ? "product" : "min"},
              {"defuzz_scheme", "weighted_centers"},
              {"use_rule_weights", model.use_rule_weights}};
}

FisModel fis_model_from_json(const Json& json) {
  FisModel model;
  for (const Json& entry : require(json, "input_partitions"))
    model.input_partitions.push_back(partition_from_json(entry));
  model.output_partition = partition_from_json(require(json, "output_partition"));
  model.rules = rule_set_from_json(require(json, "rules"));
  const std::string firing = require(json, "firing_scheme").get<std::string>();
  if (firing == "product")
    model.firing_scheme = FiringScheme::product;
  else if (firing == "min")
    model.firing_scheme = FiringScheme::min;
  else
    throw JsonSchemaError("unknown firing scheme: " + firing);
  const std::string defuzz = require(json, "defuzz_scheme").get<std::string>();
  if (defuzz != "weighted_centers")
    throw JsonSchemaError("unknown defuzzification scheme: " + defuzz);
  if (json.contains("use_rule_weights"))
    model.use_rule_weights = json["use_rule_weights"].get<bool>();
  validate(model);
  return model;
}

Json splits_to_json(std::uint64_t seed, const std::vector<SplitPlan>& splits) {
  Json samples = Json::array();
  for (const SplitPlan& plan : splits) {
    samples.push_back(Json{{"index", plan.sample_index},
                           {"build", plan.build_indices},
                           {"test", plan.test_indices}});
  }
  return Json{{"seed", seed}, {"samples", samples}};
}

std::vector<SplitPlan> splits_from_json(const Json& json, std::uint64_t* seed) {
  if (seed) *seed = require(json, "seed").get<std::uint64_t>();
  std::vector<SplitPlan> splits;
  for (const Json& entry : require(json, "samples")) {
    SplitPlan plan;
    plan.sample_index = require(entry, "index").get<int>();
    plan.build_indices = require(entry, "build").get<std::vector<int>>();
    plan.test_indices = require(entry, "test").get<std::vector<int>>();
    splits.push_back(std::move(plan));
  }
  return splits;
}

namespace {

template <typename Enum>
std::string enum_name(Enum value,
                      std::initializer_list<std::pair<Enum, const char*>> names) {
  for (const auto& [candidate, name] : names)
    if (candidate == value) return name;
  throw JsonSchemaError("unmapped enum value");
}

template <typename Enum>
Enum enum_value(const std::string& name,
                std::initializer_list<std::pair<Enum, const char*>> names) {
  for (const auto& [candidate, candidate_name] : names)
    if (name == candidate_name) return candidate;
  throw InvalidConfig("unknown option: " + name);
}

constexpr std::initializer_list<std::pair<WeightScheme, const char*>> kWeightNames = {
    {WeightScheme::product, "product"}, {WeightScheme::sum, "sum"}};
constexpr std::initializer_list<std::pair<CombineScheme, const char*>> kCombineNames =
    {{CombineScheme::sum, "sum"},
     {CombineScheme::product, "product"},
     {CombineScheme::bounded_sum, "bounded_sum"}};
constexpr std::initializer_list<std::pair<FiringScheme, const char*>> kFiringNames = {
    {FiringScheme::product, "product"}, {FiringScheme::min, "min"}};
constexpr std::initializer_list<std::pair<SubsetKind, const char*>> kSubsetNames = {
    {SubsetKind::build, "build"}, {SubsetKind::test, "test"}};

}  // namespace

Json config_to_json(const ExperimentConfig& config) {
  return Json{{"predictors", config.predictors},
              {"target", config.target},
              {"mf_count", config.mf_count},
              {"labels", config.labels},
              {"rule_sweep_max", config.rule_sweep_max},
              {"sample_count", config.sample_count},
              {"build_size", config.build_size},
              {"top_n", config.top_n},
              {"seed", config.seed},
              {"weight_scheme", enum_name(config.weight_scheme, kWeightNames)},
              {"combine_scheme", enum_name(config.combine_scheme, kCombineNames)},
              {"firing_scheme", enum_name(config.firing_scheme, kFiringNames)},
              {"normalize_rule_weights", config.normalize_rule_weights},
              {"use_rule_weights", config.use_rule_weights},
              {"fuzzifier", config.fuzzifier},
              {"fcm_tolerance", config.fcm_tolerance},
              {"fcm_max_iterations", config.fcm_max_iterations},
              {"min_max_scale", config.min_max_scale},
              {"ave_over_test_size", config.ave_over_test_size},
              {"ttest_subset", enum_name(config.ttest_subset, kSubsetNames)}};
}

ExperimentConfig config_from_json(const Json& json) {
  static const std::vector<std::string> known = {
      "predictors",       "target",         "mf_count",
      "labels",           "rule_sweep_max", "sample_count",
      "build_size",       "top_n",          "seed",
      "weight_scheme",    "combine_scheme", "firing_scheme",
      "normalize_rule_weights", "use_rule_weights", "fuzzifier",
      "fcm_tolerance",    "fcm_max_iterations", "min_max_scale",
      "ave_over_test_size", "ttest_subset"};
  for (const auto& [key, value] : json.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw InvalidConfig("unknown config key: " + key);
  }

  ExperimentConfig config;
  if (json.contains("predictors"))
    config.predictors = json["predictors"].get<std::vector<std::string>>();
  if (json.contains("target")) config.target = json["target"].get<std::string>();
  if (json.contains("mf_count")) config.mf_count = json["mf_count"].get<int>();
  if (json.contains("labels"))
    config.labels = json["labels"].get<std::vector<std::string>>();
  if (json.contains("rule_sweep_max"))
    config.rule_sweep_max = json["rule_sweep_max"].get<int>();
  if (json.contains("sample_count"))
    config.sample_count = json["sample_count"].get<int>();
  if (json.contains("build_size")) config.build_size = json["build_size"].get<int>();
  if (json.contains("top_n")) config.top_n = json["top_n"].get<int>();
  if (json.contains("seed")) config.seed = json["seed"].get<std::uint64_t>();
  if (json.contains("weight_scheme"))
    config.weight_scheme =
        enum_value<WeightScheme>(json["weight_scheme"].get<std::string>(), kWeightNames);
  if (json.contains("combine_scheme"))
    config.combine_scheme = enum_value<CombineScheme>(
        json["combine_scheme"].get<std::string>(), kCombineNames);
  if (json.contains("firing_scheme"))
    config.firing_scheme =
        enum_value<FiringScheme>(json["firing_scheme"].get<std::string>(), kFiringNames);
  if (json.contains("normalize_rule_weights"))
    config.normalize_rule_weights = json["normalize_rule_weights"].get<bool>();
  if (json.contains("use_rule_weights"))
    config.use_rule_weights = json["use_rule_weights"].get<bool>();
  if (json.contains("fuzzifier")) config.fuzzifier = json["fuzzifier"].get<double>();
  if (json.contains("fcm_tolerance"))
    config.fcm_tolerance = json["fcm_tolerance"].get<double>();
  if (json.contains("fcm_max_iterations"))
    config.fcm_max_iterations = json["fcm_max_iterations"].get<int>();
  if (json.contains("min_max_scale"))
    config.min_max_scale = json["min_max_scale"].get<bool>();
  if (json.contains("ave_over_test_size"))
    config.ave_over_test_size = json["ave_over_test_size"].get<bool>();
  if (json.contains("ttest_subset"))
    config.ttest_subset =
        enum_value<SubsetKind>(json["ttest_subset"].get<std::string>(), kSubsetNames);
  return config;
}

Json synthetic_spec_to_json(const SyntheticSpec& spec) {
  Json centers = Json::array();
  for (Eigen::Index r = 0; r < spec.centers.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < spec.centers.cols(); ++c)
      row.push_back(spec.centers(r, c));
    centers.push_back(row);
  }
  return Json{{"n", spec.n},
              {"columns", spec.column_names},
              {"centers", centers},
              {"noise", spec.noise},
              {"seed", spec.seed}};
}

SyntheticSpec synthetic_spec_from_json(const Json& json) {
  SyntheticSpec spec = default_synthetic_spec();
  if (json.contains("n")) spec.n = json["n"].get<int>();
  if (json.contains("columns"))
    spec.column_names = json["columns"].get<std::vector<std::string>>();
  if (json.contains("noise")) spec.noise = json["noise"].get<double>();
  if (json.contains("seed")) spec.seed = json["seed"].get<std::uint64_t>();
  if (json.contains("centers")) {
    const Json& centers = json["centers"];
    if (centers.empty()) throw InvalidSpec("synthetic spec: empty centers");
    spec.centers.resize(centers.size(), centers[0].size());
    for (std::size_t r = 0; r < centers.size(); ++r) {
      if (centers[r].size() != static_cast<std::size_t>(spec.centers.cols()))
        throw InvalidSpec("synthetic spec: ragged centers");
      for (std::size_t c = 0; c < centers[r].size(); ++c)
        spec.centers(r, c) = centers[r][c].get<double>();
    }
  }
  return spec;
}

namespace {

Json record_to_json(int sample, Approach approach, const AccuracyRecord& record) {
  return Json{{"sample", sample},
              {"approach", approach_name(approach)},
              {"rule_count", record.rule_count},
              {"coverage", record.coverage},
              {"abs_res", record.abs_residual_sum},
              {"ave_res", record.mean_abs_residual},
              {"med_res", record.median_abs_residual},
              {"predictions_made", record.predictions_made}};
}

Json ttest_to_json(int a, int b, const TTestResult& cell) {
  Json significant = Json::object();
  for (const auto& [alpha, flag] : cell.significant_at)
    significant[format_double(alpha)] = flag;
  return Json{{"sample_a", a},
              {"sample_b", b},
              {"t", cell.t_statistic},
              {"df", cell.degrees_of_freedom},
              {"p", cell.p_value},
              {"significant", significant}};
}

}  // namespace

Json report_to_json(const ExperimentReport& report) {
  Json json;
  json["config"] = config_to_json(report.config);
  json["dataset"] = Json{{"rows", report.dataset_rows},
                         {"columns", report.column_names}};
  json["splits"] = splits_to_json(report.config.seed, report.splits);
  json["counts"] = Json{
      {"rule_slots_per_sample", report.rule_slots_per_sample},
      {"possible_rules", report.possible_rules},
      {"comparison_cells", static_cast<int>(report.comparison.size()) * 3},
      {"ttest_pairs", static_cast<int>(report.ttest_cells.size())}};

  Json records = Json::array();
  for (const std::vector<SweepResult>* sweeps :
       {&report.full, &report.sampled, &report.top}) {
    for (const SweepResult& sweep : *sweeps)
      for (const AccuracyRecord& record : sweep.records)
        records.push_back(record_to_json(sweep.sample_index, sweep.approach, record));
  }
  json["records"] = records;

  Json best = Json::array();
  for (const BestModelRow& row : report.best_models) {
    Json entry = record_to_json(row.sample_index, row.approach, row.record);
    entry["coverage_mode"] = coverage_mode_name(row.coverage_mode);
    best.push_back(entry);
  }
  json["best_models"] = best;

  Json per_sample = Json::array();
  for (const auto& [sample, cells] : report.comparison) {
    for (const Measure measure :
         {Measure::abs_sum, Measure::mean, Measure::median}) {
      const ComparisonCell& cell = cells[static_cast<std::size_t>(measure)];
      per_sample.push_back(Json{{"sample", sample},
                                {"measure", measure_csv_name(measure)},
                                {"sampled_pct", cell.pct_a},
                                {"top_pct", cell.pct_b},
                                {"sampled_best", cell.best_a},
                                {"top_best", cell.best_b},
                                {"total", cell.total}});
    }
  }
  Json summary = Json::object();
  for (const char* stat : {"mean", "median"}) {
    Json rows = Json::array();
    const auto& source = std::string(stat) == "mean" ? report.comparison_summary.mean
                                                     : report.comparison_summary.median;
    for (const Measure measure :
         {Measure::abs_sum, Measure::mean, Measure::median}) {
      const ApproachPcts& pcts = source[static_cast<std::size_t>(measure)];
      rows.push_back(Json{{"measure", measure_csv_name(measure)},
                          {"sampled_pct", pcts.pct_a},
                          {"top_pct", pcts.pct_b}});
    }
    summary[stat] = rows;
  }
  json["comparison"] = Json{{"per_sample", per_sample}, {"summary", summary}};

  Json ttests = Json::array();
  int cell_index = 0;
  for (int i = 0; i < report.ttest_sample_count; ++i)
    for (int j = i + 1; j < report.ttest_sample_count; ++j)
      ttests.push_back(ttest_to_json(report.splits[i].sample_index,
                                     report.splits[j].sample_index,
                                     report.ttest_cells[cell_index++]));
  json["ttests"] = ttests;

  Json per_sample_rules = Json::array();
  for (const SampleRuleStats& stats : report.sample_rule_stats) {
    per_sample_rules.push_back(Json{{"sample", stats.sample_index},
                                    {"rule_slots", stats.rule_slots},
                                    {"rules_generated", stats.rules_generated},
                                    {"distinct_rules", stats.distinct_rules}});
  }
  Json frequency = Json::array();
  for (const RuleFrequency& entry : report.frequency)
    frequency.push_back(Json{{"id", entry.id}, {"count", entry.count}});
  json["rule_frequency"] =
      Json{{"per_sample", per_sample_rules},
           {"overall_distinct", static_cast<long long>(report.frequency.size())},
           {"rules", frequency}};

  json["warnings"] = report.warnings;
  return json;
}

void write_report_files(const ExperimentReport& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  write_json_file(report_to_json(report), (fs::path(out_dir) / "report.json").string());

  const auto open = [&](const char* name) {
    std::ofstream file(fs::path(out_dir) / name);
    if (!file) throw EmptyFile(std::string("cannot write ") + name);
    return file;
  };

  {
    std::ofstream file = open("records.csv");
    file << kRecordsCsvHeader << '\n';
    for (const std::vector<SweepResult>* sweeps :
         {&report.full, &report.sampled, &report.top}) {
      for (const SweepResult& sweep : *sweeps) {
        for (const AccuracyRecord& record : sweep.records) {
          write_csv_row(
              file,
              {std::to_string(sweep.sample_index), approach_name(sweep.approach),
               std::to_string(record.rule_count),
               std::to_string(display_round(100.0 * record.coverage)),
               std::to_string(display_round(record.abs_residual_sum)),
               std::to_string(display_round(record.mean_abs_residual)),
               std::to_string(display_round(record.median_abs_residual)),
               std::to_string(record.predictions_made)});
        }
      }
    }
  }

  {
    std::ofstream file = open("best_models.csv");
    file << "sample,approach,coverage_mode,rule_count,coverage,abs_res,ave_res,"
            "med_res,predictions_made\n";
    for (const BestModelRow& row : report.best_models) {
      write_csv_row(
          file,
          {std::to_string(row.sample_index), approach_name(row.approach),
           coverage_mode_name(row.coverage_mode),
           std::to_string(row.record.rule_count),
           std::to_string(display_round(100.0 * row.record.coverage)),
           std::to_string(display_round(row.record.abs_residual_sum)),
           std::to_string(display_round(row.record.mean_abs_residual)),
           std::to_string(display_round(row.record.median_abs_residual)),
           std::to_string(row.record.predictions_made)});
    }
  }

  {
    std::ofstream file = open("comparison.csv");
    file << "sample,measure,sampled_best_pct,top_best_pct\n";
    for (const auto& [sample, cells] : report.comparison) {
      for (const Measure measure :
           {Measure::abs_sum, Measure::mean, Measure::median}) {
        const ComparisonCell& cell = cells[static_cast<std::size_t>(measure)];
        write_csv_row(file, {std::to_string(sample), measure_csv_name(measure),
                             std::to_string(display_round(cell.pct_a)),
                             std::to_string(display_round(cell.pct_b))});
      }
    }
  }

  {
    std::ofstream file = open("ttests.csv");
    file << "sample_a,sample_b,t,df,p,significant_05\n";
    int cell_index = 0;
    for (int i = 0; i < report.ttest_sample_count; ++i) {
      for (int j = i + 1; j < report.ttest_sample_count; ++j) {
        const TTestResult& cell = report.ttest_cells[cell_index++];
        write_csv_row(file,
                      {std::to_string(report.splits[i].sample_index),
                       std::to_string(report.splits[j].sample_index),
                       format_double(cell.t_statistic),
                       format_double(cell.degrees_of_freedom),
                       format_double(cell.p_value),
                       cell.significant_at.at(0.05) ? "1" : "0"});
      }
    }
  }

  {
    std::ofstream file = open("rule_frequency.csv");
    file << "rule_id,count\n";
    for (const RuleFrequency& entry : report.frequency)
      write_csv_row(file, {entry.id, std::to_string(entry.count)});
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw EmptyFile("cannot open file: " + path);
  try {
    return Json::parse(file);
  } catch (const Json::parse_error& error) {
    throw JsonSchemaError(std::string("invalid JSON in ") + path + ": " +
                          error.what());
  }
}

void write_json_file(const Json& json, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw EmptyFile("cannot write file: " + path);
  file << json.dump(2) << '\n';
}

}  // namespace fisgen
