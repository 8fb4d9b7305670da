#include "fisgen/rulegen.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace fisgen {

RuleSet extract_rules(const Eigen::MatrixXd& build_points,
                      const std::vector<Partition>& partitions, int k,
                      WeightScheme weight_scheme, CombineScheme combine_scheme,
                      const FcmConfig& fcm_config) {
  const Eigen::Index n = build_points.rows();
  const Eigen::Index d = build_points.cols();
  if (static_cast<Eigen::Index>(partitions.size()) != d)
    throw DimensionMismatch("extract_rules: one partition per column required");
  if (k < 1 || k > n) throw InvalidK("extract_rules: k must satisfy 1 <= k <= n");

  FcmConfig config = fcm_config;
  config.cluster_count = k;
  const FcmResult clustered = fcm_cluster(build_points, config);

  std::vector<Rule> raw;
  raw.reserve(k);
  for (int cluster = 0; cluster < k; ++cluster) {
    Rule rule;
    rule.antecedents.reserve(d - 1);
    double product = 1.0;
    double sum = 0.0;
    for (Eigen::Index v = 0; v < d; ++v) {
      const double coordinate = clustered.centers(cluster, v);
      const int index = argmax_label(partitions[v], coordinate);
      const double degree = eval_mf(partitions[v].mf(index), coordinate);
      product *= degree;
      sum += degree;
      if (v < d - 1)
        rule.antecedents.push_back(index);
      else
        rule.consequent = index;
    }
    rule.weight = weight_scheme == WeightScheme::product ? product : sum;
    // A zero weight can only arise from hand-crafted partitions with coverage
    // gaps; such a rule can never fire and is dropped.
    if (rule.weight > 0.0) raw.push_back(rule);
  }

  RuleSet result;
  result.rules = merge_rules(raw, combine_scheme);
  result.provenance.cluster_count = k;
  return result;
}

std::vector<Rule> merge_rules(const std::vector<Rule>& rules,
                              CombineScheme combine_scheme) {
  std::vector<Rule> merged;
  std::unordered_map<std::string, std::size_t> position;
  for (const Rule& rule : rules) {
    const std::string id = rule_id(rule);
    auto found = position.find(id);
    if (found == position.end()) {
      position.emplace(id, merged.size());
      merged.push_back(rule);
      continue;
    }
    double& weight = merged[found->second].weight;
    switch (combine_scheme) {
      case CombineScheme::sum:
        weight += rule.weight;
        break;
      case CombineScheme::product:
        weight *= rule.weight;
        break;
      case CombineScheme::bounded_sum:
        weight = std::min(1.0, weight + rule.weight);
        break;
    }
  }
  return merged;
}

RuleSet normalize_weights(const RuleSet& rules) {
  if (rules.rules.empty()) throw EmptyRuleSet("normalize_weights: no rules");
  double total = 0.0;
  for (const Rule& rule : rules.rules) total += rule.weight;
  const double scale = static_cast<double>(rules.size()) / total;
  RuleSet normalized = rules;
  for (Rule& rule : normalized.rules) rule.weight *= scale;
  return normalized;
}

std::string rule_id(const Rule& rule) {
  std::string id;
  for (const int antecedent : rule.antecedents) {
    id += std::to_string(antecedent);
    id += ',';
  }
  id += std::to_string(rule.consequent);
  return id;
}

long long possible_rule_count(const std::vector<Partition>& partitions) {
  if (partitions.empty()) throw EmptyInput("possible_rule_count: no partitions");
  long long count = 1;
  for (const Partition& partition : partitions) count *= partition.size();
  return count;
}

std::string rule_text(const Rule& rule, const std::vector<Partition>& input_partitions,
                      const Partition& output_partition) {
  if (rule.antecedents.size() != input_partitions.size())
    throw DimensionMismatch("rule_text: antecedent count != input partition count");
  std::ostringstream text;
  text << "IF ";
  for (std::size_t v = 0; v < input_partitions.size(); ++v) {
    if (v > 0) text << " AND ";
    text << '<' << input_partitions[v].variable << "> IS ["
         << input_partitions[v].labels[rule.antecedents[v] - 1] << ']';
  }
  text << " THEN <" << output_partition.variable << "> IS ["
       << output_partition.labels[rule.consequent - 1] << "] (w=" << rule.weight
       << ')';
  return text.str();
}

}  // namespace fisgen
