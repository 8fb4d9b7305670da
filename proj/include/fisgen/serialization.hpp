#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "fisgen/experiment.hpp"
#include "fisgen/inference.hpp"

namespace fisgen {

using Json = nlohmann::json;

// Partition document: {"variable", "labels", "mfs": [{"a","b","c","shape"}]}.
Json partition_to_json(const Partition& partition);
Partition partition_from_json(const Json& json);

// Rule set document: {"provenance", "rules": [{"antecedents","consequent","weight"}]}.
Json rule_set_to_json(const RuleSet& rules);
RuleSet rule_set_from_json(const Json& json);

// Full model document embedding partitions and rules.
Json fis_model_to_json(const FisModel& model);
FisModel fis_model_from_json(const Json& json);

// Split archive: {"seed", "samples": [{"index","build","test"}]}.
Json splits_to_json(std::uint64_t seed, const std::vector<SplitPlan>& splits);
std::vector<SplitPlan> splits_from_json(const Json& json, std::uint64_t* seed = nullptr);

// Config document mirroring ExperimentConfig field-for-field; unknown keys
// are rejected.
Json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const Json& json);

Json synthetic_spec_to_json(const SyntheticSpec& spec);
SyntheticSpec synthetic_spec_from_json(const Json& json);

Json report_to_json(const ExperimentReport& report);

/// Writes report.json plus the flat CSV views (records.csv, best_models.csv,
/// comparison.csv, ttests.csv, rule_frequency.csv) into `out_dir`.
void write_report_files(const ExperimentReport& report, const std::string& out_dir);

Json read_json_file(const std::string& path);
void write_json_file(const Json& json, const std::string& path);

}  // namespace fisgen
