#include "fisgen/inference.hpp"

#include <algorithm>

namespace fisgen {

void validate(const FisModel& model) {
  if (model.rules.rules.empty())
    throw JsonSchemaError("model: at least one rule required");
  for (const Rule& rule : model.rules.rules) {
    if (rule.antecedents.size() != model.input_partitions.size())
      throw JsonSchemaError("model: rule antecedent count != input variable count");
    for (std::size_t v = 0; v < rule.antecedents.size(); ++v) {
      if (rule.antecedents[v] < 1 ||
          rule.antecedents[v] > model.input_partitions[v].size())
        throw JsonSchemaError("model: antecedent index out of range");
    }
    if (rule.consequent < 1 || rule.consequent > model.output_partition.size())
      throw JsonSchemaError("model: consequent index out of range");
  }
}

double fire_rule(const Rule& rule, const std::vector<Partition>& input_partitions,
                 const Eigen::VectorXd& x, FiringScheme scheme,
                 bool use_rule_weight) {
  const std::size_t d = rule.antecedents.size();
  if (input_partitions.size() != d || static_cast<std::size_t>(x.size()) != d)
    throw DimensionMismatch("fire_rule: input dimension mismatch");
  double conjunction = 1.0;
  for (std::size_t v = 0; v < d; ++v) {
    const double degree =
        eval_mf(input_partitions[v].mf(rule.antecedents[v]), x(static_cast<int>(v)));
    if (scheme == FiringScheme::product)
      conjunction *= degree;
    else
      conjunction = std::min(conjunction, degree);
  }
  return use_rule_weight ? rule.weight * conjunction : conjunction;
}

Prediction predict(const FisModel& model, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != model.input_partitions.size())
    throw DimensionMismatch("predict: input dimension mismatch");
  Prediction prediction;
  double weighted_centers = 0.0;
  for (const Rule& rule : model.rules.rules) {
    const double strength = fire_rule(rule, model.input_partitions, x,
                                      model.firing_scheme, model.use_rule_weights);
    if (strength > 0.0) {
      ++prediction.fired_rule_count;
      prediction.total_firing_mass += strength;
      weighted_centers += strength * model.output_partition.mf(rule.consequent).b;
    }
  }
  if (prediction.total_firing_mass > 0.0)
    prediction.value = weighted_centers / prediction.total_firing_mass;
  return prediction;
}

SetPrediction predict_set(const FisModel& model, const Eigen::MatrixXd& test_points) {
  if (test_points.rows() == 0) throw EmptyTestSet("predict_set: empty test set");
  if (test_points.cols() !=
      static_cast<Eigen::Index>(model.input_partitions.size()) + 1)
    throw DimensionMismatch("predict_set: expected inputs plus target column");

  SetPrediction result;
  result.predictions.reserve(test_points.rows());
  int covered = 0;
  for (Eigen::Index i = 0; i < test_points.rows(); ++i) {
    const Eigen::VectorXd x = test_points.row(i).head(test_points.cols() - 1);
    Prediction prediction = predict(model, x);
    if (prediction.value) ++covered;
    result.predictions.push_back(std::move(prediction));
  }
  result.coverage = static_cast<double>(covered) /
                    static_cast<double>(test_points.rows());
  return result;
}

}  // namespace fisgen
