#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "fisgen/membership.hpp"

namespace fisgen {

/// How a freshly extracted rule is weighted from the per-dimension maximal
/// membership degrees of its cluster center.
enum class WeightScheme { product, sum };

/// How the weights of rules with identical antecedents and consequent are
/// combined when duplicates are merged.
enum class CombineScheme { sum, product, bounded_sum };

/// Weighted IF-THEN rule. Antecedent and consequent entries are 1-based
/// membership-function indices into the corresponding partitions, matching
/// the "3,3,4" identity strings.
struct Rule {
  std::vector<int> antecedents;
  int consequent = 1;
  double weight = 1.0;
};

struct RuleProvenance {
  std::optional<int> sample_index;
  std::optional<int> cluster_count;
};

struct RuleSet {
  std::vector<Rule> rules;
  RuleProvenance provenance;

  int size() const { return static_cast<int>(rules.size()); }
};

/// Extracts at most `k` weighted rules from a d-dimensional fuzzy c-means
/// clustering of `build_points` (inputs with the target as last column).
/// Each cluster center is labeled per dimension by the maximal-degree
/// membership function; duplicates are merged per `combine_scheme`.
/// The cluster count of `fcm_config` is overridden by `k`.
RuleSet extract_rules(const Eigen::MatrixXd& build_points,
                      const std::vector<Partition>& partitions, int k,
                      WeightScheme weight_scheme, CombineScheme combine_scheme,
                      const FcmConfig& fcm_config);

/// Merges rules sharing (antecedents, consequent); first-occurrence order is
/// preserved.
std::vector<Rule> merge_rules(const std::vector<Rule>& rules,
                              CombineScheme combine_scheme);

/// Ratio-scales all weights so the mean weight equals 1.0; order preserved.
RuleSet normalize_weights(const RuleSet& rules);

/// Comma-joined antecedent indices followed by the consequent, e.g. "3,3,4".
std::string rule_id(const Rule& rule);

/// Number of distinct rules the partitions admit: the product of partition
/// sizes over all variables, target included.
long long possible_rule_count(const std::vector<Partition>& partitions);

/// Human-readable rendering:
/// "IF <Attrib> IS [Small] AND <Nonmenu> IS [Medium] THEN <Size> IS [Small] (w=1.25)".
std::string rule_text(const Rule& rule, const std::vector<Partition>& input_partitions,
                      const Partition& output_partition);

}  // namespace fisgen
