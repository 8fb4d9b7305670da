#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "fisgen/rulegen.hpp"

namespace fisgen {

/// Conjunction operator over a rule's antecedent degrees.
enum class FiringScheme { product, min };

/// Crisp-output computation. Only the height method is provided: the
/// prediction is the firing-strength-weighted mean of the consequent
/// function centers.
enum class DefuzzScheme { weighted_centers };

/// A deployable fuzzy inference system: one partition per input variable,
/// an output partition, and a weighted rule base.
struct FisModel {
  std::vector<Partition> input_partitions;
  Partition output_partition;
  RuleSet rules;
  FiringScheme firing_scheme = FiringScheme::product;
  DefuzzScheme defuzz_scheme = DefuzzScheme::weighted_centers;
  /// When false, rule weights are excluded from firing strengths (predictions
  /// then depend on membership degrees alone).
  bool use_rule_weights = true;
};

/// Checks rule indices against partition sizes and that at least one rule is
/// present; throws JsonSchemaError on violation.
void validate(const FisModel& model);

struct Prediction {
  std::optional<double> value;  // absent when no rule fired
  int fired_rule_count = 0;
  double total_firing_mass = 0.0;
};

/// Firing strength of one rule at input x: weight times the product (or min)
/// of the antecedent membership degrees.
double fire_rule(const Rule& rule, const std::vector<Partition>& input_partitions,
                 const Eigen::VectorXd& x, FiringScheme scheme,
                 bool use_rule_weight = true);

/// Crisp prediction for one input vector, or an absent value when the total
/// firing mass is zero (the observation is uncovered).
Prediction predict(const FisModel& model, const Eigen::VectorXd& x);

struct SetPrediction {
  std::vector<Prediction> predictions;  // ordered as the input rows
  double coverage = 0.0;                // fraction of rows with a prediction
};

/// Evaluates the model over a test matrix whose last column is the target
/// (ignored for prediction, carried for the caller's residuals).
SetPrediction predict_set(const FisModel& model, const Eigen::MatrixXd& test_points);

}  // namespace fisgen
