#include <doctest.h>

#include <cmath>
#include <set>

#include "fisgen/experiment.hpp"
#include "fisgen/serialization.hpp"

using namespace fisgen;

namespace {

Dataset small_dataset() {
  SyntheticSpec spec;
  spec.n = 30;
  spec.noise = 0.08;
  spec.seed = 77;
  spec.centers.resize(5, 3);
  spec.centers << 10, 5, 200,
                  25, 11, 500,
                  40, 18, 900,
                  60, 27, 1400,
                  85, 38, 2100;
  return generate_synthetic(spec);
}

ExperimentConfig small_config() {
  ExperimentConfig config;
  config.mf_count = 4;  // auto-generated MF1..MF4 labels
  config.rule_sweep_max = 8;
  config.sample_count = 3;
  config.build_size = 20;
  config.top_n = 8;
  config.seed = 123;
  return config;
}

Rule triple(int a1, int a2, int c) {
  Rule rule;
  rule.antecedents = {a1, a2};
  rule.consequent = c;
  rule.weight = 1.0;
  return rule;
}

}  // namespace

TEST_CASE("rule_frequency counts across sets and orders by count then id") {
  SweepResult sweep;
  sweep.approach = Approach::sampled;
  sweep.sample_index = 1;
  const Rule a = triple(1, 1, 1);
  const Rule b = triple(1, 1, 2);
  const Rule c = triple(2, 1, 1);
  sweep.rule_sets.push_back(RuleSet{{a}, {}});
  sweep.rule_sets.push_back(RuleSet{{a, b}, {}});
  sweep.rule_sets.push_back(RuleSet{{a, b, c}, {}});

  const auto frequency = rule_frequency({sweep});
  REQUIRE(frequency.size() == 3);
  CHECK(frequency[0].id == "1,1,1");
  CHECK(frequency[0].count == 3);
  CHECK(frequency[1].id == "1,1,2");
  CHECK(frequency[1].count == 2);
  CHECK(frequency[2].id == "2,1,1");
  CHECK(frequency[2].count == 1);

  SUBCASE("ties order by ascending id string") {
    SweepResult tied;
    tied.rule_sets.push_back(RuleSet{{triple(2, 2, 2), triple(1, 3, 1)}, {}});
    const auto ordered = rule_frequency({tied});
    CHECK(ordered[0].id == "1,3,1");
    CHECK(ordered[1].id == "2,2,2");
  }
}

TEST_CASE("rule_frequency format fixture: 47 distinct rules, top count 112") {
  // Three hand-built sweeps shaped after the reported distribution: the top
  // triple "3,3,4" totals 112 occurrences and 47 distinct triples appear.
  std::vector<Rule> rules;
  rules.push_back(triple(3, 3, 4));
  for (int j = 2; rules.size() < 47; ++j) {
    const int a1 = 1 + (j - 1) % 7;
    const int a2 = 1 + ((j - 1) / 7) % 7;
    const int cq = 1 + ((j - 1) / 49) % 7;
    if (a1 == 3 && a2 == 3 && cq == 4) continue;
    rules.push_back(triple(a1, a2, cq));
  }

  SweepResult first;
  SweepResult second;
  SweepResult third;
  for (int k = 1; k <= 50; ++k) {
    RuleSet grows;
    grows.rules.assign(rules.begin(), rules.begin() + std::min(k, 47));
    first.rule_sets.push_back(grows);
    second.rule_sets.push_back(RuleSet{{rules[0]}, {}});
    third.rule_sets.push_back(k >= 39 ? RuleSet{{rules[0]}, {}}
                                      : RuleSet{{rules[1]}, {}});
  }

  const auto frequency = rule_frequency({first, second, third});
  CHECK(frequency.size() == 47);
  CHECK(frequency[0].id == "3,3,4");
  CHECK(frequency[0].count == 112);
  for (std::size_t r = 1; r < frequency.size(); ++r)
    CHECK(frequency[r].count < 112);
}

TEST_CASE("default label vocabulary for seven functions") {
  ExperimentConfig config;
  CHECK(config.effective_labels() ==
        std::vector<std::string>{"VerySmall", "Small", "SmallMedium", "Medium",
                                 "MediumLarge", "Large", "VeryLarge"});
  config.mf_count = 3;
  CHECK(config.effective_labels() == std::vector<std::string>{"MF1", "MF2", "MF3"});
  config.labels = {"lo", "mid", "hi"};
  CHECK(config.effective_labels() == config.labels);
}

TEST_CASE("full approach reaches high coverage at large rule counts") {
  // Models built from all rows have seen every test observation, so coverage
  // climbs with the rule count on the bundled generator's data.
  const Dataset dataset = generate_synthetic(default_synthetic_spec());
  ExperimentConfig config;
  config.rule_sweep_max = 20;
  config.sample_count = 3;
  const auto full = run_full(dataset, config);
  double at_first = 0.0;
  double at_last = 0.0;
  for (const SweepResult& sweep : full) {
    at_first += sweep.records.front().coverage;
    at_last += sweep.records.back().coverage;
  }
  CHECK(at_last >= at_first);
  CHECK(at_last / full.size() >= 0.85);
}

TEST_CASE("run_full and run_sampled produce S x R records") {
  const Dataset dataset = small_dataset();
  const ExperimentConfig config = small_config();

  const auto full = run_full(dataset, config);
  REQUIRE(full.size() == 3);
  for (const SweepResult& sweep : full) {
    CHECK(sweep.approach == Approach::full);
    CHECK(sweep.records.size() == 8);
    CHECK(sweep.rule_sets.size() == 8);
    for (std::size_t k = 0; k < sweep.rule_sets.size(); ++k) {
      CHECK(sweep.rule_sets[k].size() >= 1);
      CHECK(sweep.rule_sets[k].size() <= static_cast<int>(k) + 1);
      CHECK(sweep.records[k].rule_count == static_cast<int>(k) + 1);
    }
  }
  // The full approach shares one model family across samples.
  CHECK(full[0].rule_sets[3].rules.size() == full[2].rule_sets[3].rules.size());

  const auto sampled = run_sampled(dataset, config);
  REQUIRE(sampled.size() == 3);
  for (const SweepResult& sweep : sampled) {
    CHECK(sweep.records.size() == 8);
    for (const RuleSet& set : sweep.rule_sets)
      CHECK(set.provenance.sample_index == sweep.sample_index);
  }
}

TEST_CASE("run_top_n evaluates frequency-ordered prefixes") {
  const Dataset dataset = small_dataset();
  const ExperimentConfig config = small_config();
  const auto sampled = run_sampled(dataset, config);

  std::vector<std::string> warnings;
  const auto top = run_top_n(sampled, dataset, config, &warnings);
  REQUIRE(top.size() == 3);

  const auto frequency = rule_frequency(sampled);
  const std::size_t mega_size =
      std::min<std::size_t>(config.top_n, frequency.size());

  for (const SweepResult& sweep : top) {
    CHECK(sweep.approach == Approach::top_n);
    REQUIRE(sweep.rule_sets.size() == mega_size);
    // Prefix construction: set t has exactly t rules, nested in set t+1.
    for (std::size_t t = 0; t < sweep.rule_sets.size(); ++t) {
      CHECK(sweep.rule_sets[t].size() == static_cast<int>(t) + 1);
      CHECK(rule_id(sweep.rule_sets[t].rules[t]) == frequency[t].id);
    }
    // Nested rule sets make coverage monotone in the prefix size.
    for (std::size_t t = 1; t < sweep.records.size(); ++t)
      CHECK(sweep.records[t].coverage >= sweep.records[t - 1].coverage - 1e-12);
  }

  // Mega-set weights are frequency-proportional with mean 1.
  const RuleSet& mega = top[0].rule_sets.back();
  double mean = 0.0;
  for (const Rule& rule : mega.rules) mean += rule.weight;
  mean /= mega.rules.size();
  CHECK(std::fabs(mean - 1.0) <= 1e-9);
  if (mega.rules.size() >= 2 && frequency[1].count > 0) {
    CHECK(mega.rules[0].weight / mega.rules[1].weight ==
          doctest::Approx(static_cast<double>(frequency[0].count) /
                          frequency[1].count));
  }
}

TEST_CASE("run_top_n warns when fewer distinct rules than requested") {
  const Dataset dataset = small_dataset();
  ExperimentConfig config = small_config();
  config.top_n = 1000;
  const auto sampled = run_sampled(dataset, config);
  std::vector<std::string> warnings;
  const auto top = run_top_n(sampled, dataset, config, &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(top[0].rule_sets.size() == rule_frequency(sampled).size());
}

TEST_CASE("run_experiment assembles the report shapes") {
  const Dataset dataset = small_dataset();
  const ExperimentConfig config = small_config();
  const ExperimentReport report = run_experiment(dataset, config);

  CHECK(report.dataset_rows == 30);
  CHECK(report.splits.size() == 3);
  CHECK(report.full.size() == 3);
  CHECK(report.sampled.size() == 3);
  CHECK(report.top.size() == 3);

  // 2 approaches x 2 coverage modes x 3 samples.
  CHECK(report.best_models.size() == 12);
  int sampled_ignore_rows = 0;
  for (const BestModelRow& row : report.best_models)
    if (row.approach == Approach::sampled &&
        row.coverage_mode == CoverageMode::ignore)
      ++sampled_ignore_rows;
  CHECK(sampled_ignore_rows == 3);

  CHECK(report.comparison.size() == 3);            // one per sample
  CHECK(report.ttest_cells.size() == 3);           // C(3,2) pairs
  CHECK(report.rule_slots_per_sample == 36);       // 1+2+...+8
  CHECK(report.possible_rules == 64);              // 4^3
  for (const SampleRuleStats& stats : report.sample_rule_stats) {
    CHECK(stats.rule_slots == 36);
    CHECK(stats.rules_generated <= 36);
    CHECK(stats.distinct_rules <= std::min<long long>(64, stats.rules_generated));
  }
  CHECK(static_cast<long long>(report.frequency.size()) <= 64);

  // Frequency mass equals the post-merge set sizes.
  long long mass = 0;
  for (const RuleFrequency& entry : report.frequency) mass += entry.count;
  long long expected_mass = 0;
  for (const SampleRuleStats& stats : report.sample_rule_stats)
    expected_mass += stats.rules_generated;
  CHECK(mass == expected_mass);
}

TEST_CASE("run_experiment is deterministic") {
  const Dataset dataset = small_dataset();
  const ExperimentConfig config = small_config();
  const Json a = report_to_json(run_experiment(dataset, config));
  const Json b = report_to_json(run_experiment(dataset, config));
  CHECK(a == b);

  ExperimentConfig reseeded = config;
  reseeded.seed = 124;
  const Json c = report_to_json(run_experiment(dataset, reseeded));
  CHECK(a != c);
  CHECK(a.at("counts") == c.at("counts"));  // schema and shape survive reseeding
}

TEST_CASE("experiment config validation") {
  const Dataset dataset = small_dataset();
  ExperimentConfig config = small_config();

  config.build_size = 30;
  CHECK_THROWS_AS(run_experiment(dataset, config), InvalidConfig);
  config = small_config();
  config.rule_sweep_max = 25;  // exceeds build_size=20
  CHECK_THROWS_AS(run_experiment(dataset, config), InvalidConfig);
  config = small_config();
  config.target = "Bogus";
  CHECK_THROWS_AS(run_experiment(dataset, config), MissingColumn);
  config = small_config();
  config.labels = {"one", "two"};  // mf_count is 4
  CHECK_THROWS_AS(run_experiment(dataset, config), InvalidConfig);
}
