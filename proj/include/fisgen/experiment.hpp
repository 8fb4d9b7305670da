#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fisgen/dataset.hpp"
#include "fisgen/metrics.hpp"
#include "fisgen/sampling.hpp"

namespace fisgen {

/// Every knob of the three model-building regimes. Defaults reproduce the
/// reference setup: 70 observations split 50/20 ten times, rule sweeps to 50,
/// a Top-50 aggregated rule set, and 7 membership functions per variable.
struct ExperimentConfig {
  std::vector<std::string> predictors = {"Attrib", "Nonmenu"};
  std::string target = "Size";
  int mf_count = 7;
  /// Labels per membership function; empty selects the default vocabulary
  /// (VerySmall..VeryLarge for 7, "MF<i>" otherwise).
  std::vector<std::string> labels;
  int rule_sweep_max = 50;  // R: rule counts 1..R
  int sample_count = 10;    // S
  int build_size = 50;
  int top_n = 50;           // N
  std::uint64_t seed = 1;

  WeightScheme weight_scheme = WeightScheme::product;
  CombineScheme combine_scheme = CombineScheme::sum;
  FiringScheme firing_scheme = FiringScheme::product;
  bool normalize_rule_weights = true;
  bool use_rule_weights = true;

  double fuzzifier = 2.0;
  double fcm_tolerance = 1e-6;
  int fcm_max_iterations = 300;
  bool min_max_scale = false;

  /// Divide the mean absolute residual by the test-set size instead of the
  /// number of predictions made.
  bool ave_over_test_size = false;
  /// Which subsets the pairwise uniformity t-tests compare.
  SubsetKind ttest_subset = SubsetKind::build;

  std::vector<std::string> effective_labels() const;
  FcmConfig fcm_config(std::uint64_t derived_seed) const;
  void validate(const Dataset& dataset) const;
};

enum class Approach { full, sampled, top_n };

std::string approach_name(Approach approach);

/// One approach's sweep for one sample: accuracy records and the rule set
/// behind each rule count.
struct SweepResult {
  Approach approach = Approach::sampled;
  int sample_index = 1;
  std::vector<AccuracyRecord> records;  // one per rule count, ascending
  std::vector<RuleSet> rule_sets;       // aligned with records
};

struct RuleFrequency {
  std::string id;
  Rule rule;  // exemplar carrying the antecedent/consequent indices
  long long count = 0;
};

/// Occurrence counts of each distinct rule across all rule sets of all given
/// sweeps (a rule present in both the k-rule and (k+1)-rule set counts
/// twice). Ordered by descending count, ties by ascending id string.
std::vector<RuleFrequency> rule_frequency(const std::vector<SweepResult>& sweeps);

/// Builds partitions and rules from the whole dataset and evaluates each
/// rule-count model against every sample's test subset.
std::vector<SweepResult> run_full(const Dataset& dataset,
                                  const ExperimentConfig& config);

/// Per sample: builds partitions and rules from the build subset only and
/// evaluates against that sample's own test subset.
std::vector<SweepResult> run_sampled(const Dataset& dataset,
                                     const ExperimentConfig& config);

/// Aggregates the N most frequent rules across the sampled sweeps into one
/// frequency-weighted rule set (partitions rebuilt from the full dataset) and
/// evaluates every prefix size 1..N against every sample's test subset.
/// When fewer than N distinct rules exist, all are used and a warning is
/// appended to `warnings`.
std::vector<SweepResult> run_top_n(const std::vector<SweepResult>& sampled_sweeps,
                                   const Dataset& dataset,
                                   const ExperimentConfig& config,
                                   std::vector<std::string>* warnings = nullptr);

struct BestModelRow {
  Approach approach = Approach::sampled;
  CoverageMode coverage_mode = CoverageMode::ignore;
  int sample_index = 1;
  AccuracyRecord record;
};

struct SampleRuleStats {
  int sample_index = 1;
  long long rule_slots = 0;       // sum of k over the sweep, R(R+1)/2
  long long rules_generated = 0;  // post-merge total across the sweep's sets
  long long distinct_rules = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  int dataset_rows = 0;
  std::vector<std::string> column_names;
  std::vector<SplitPlan> splits;

  std::vector<SweepResult> full;
  std::vector<SweepResult> sampled;
  std::vector<SweepResult> top;

  /// One row per sample and coverage mode for the sampled and full
  /// approaches, selected by the absolute-residual-sum measure.
  std::vector<BestModelRow> best_models;

  /// Sampled (A) vs Top-N (B) per sample and measure.
  ComparisonGrid comparison;
  ComparisonSummary comparison_summary;

  std::vector<TTestResult> ttest_cells;  // upper triangle, row-major
  int ttest_sample_count = 0;

  std::vector<RuleFrequency> frequency;  // across all sampled sweeps
  std::vector<SampleRuleStats> sample_rule_stats;
  long long possible_rules = 0;
  long long rule_slots_per_sample = 0;

  std::vector<std::string> warnings;
};

/// Runs all three regimes and assembles the full report; a pure function of
/// (dataset, config).
ExperimentReport run_experiment(const Dataset& dataset,
                                const ExperimentConfig& config);

/// Partitions for all experiment variables built from the given rows (used
/// by run_full/run_top_n with the whole dataset and by the CLI `fit`
/// command). `sample_stream` selects the seed stream (0 for full-data
/// builds, the sample index for per-sample builds).
std::vector<Partition> build_variable_partitions(const Eigen::MatrixXd& variables,
                                                 const ExperimentConfig& config,
                                                 std::uint64_t sample_stream);

}  // namespace fisgen
