#include "fisgen/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fisgen {

ResidualSummary residual_metrics(const std::vector<Prediction>& predictions,
                                 const Eigen::VectorXd& actuals) {
  if (static_cast<Eigen::Index>(predictions.size()) != actuals.size())
    throw DimensionMismatch("residual_metrics: predictions and actuals differ in length");

  std::vector<double> residuals;
  residuals.reserve(predictions.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i].value)
      residuals.push_back(std::fabs(*predictions[i].value -
                                    actuals(static_cast<Eigen::Index>(i))));
  }
  if (residuals.empty())
    throw NoPredictionsMade("residual_metrics: no prediction present");

  std::sort(residuals.begin(), residuals.end());
  ResidualSummary summary;
  summary.count = static_cast<int>(residuals.size());
  for (const double r : residuals) summary.abs_sum += r;
  summary.mean = summary.abs_sum / static_cast<double>(summary.count);
  const std::size_t mid = residuals.size() / 2;
  summary.median = residuals.size() % 2 == 1
                       ? residuals[mid]
                       : 0.5 * (residuals[mid - 1] + residuals[mid]);
  return summary;
}

double measure_value(const AccuracyRecord& record, Measure measure) {
  if (record.predictions_made == 0)
    return std::numeric_limits<double>::infinity();
  switch (measure) {
    case Measure::abs_sum:
      return record.abs_residual_sum;
    case Measure::mean:
      return record.mean_abs_residual;
    case Measure::median:
    default:
      return record.median_abs_residual;
  }
}

namespace {

std::array<double, 3> measure_vector(const AccuracyRecord& record) {
  return {measure_value(record, Measure::abs_sum),
          measure_value(record, Measure::mean),
          measure_value(record, Measure::median)};
}

}  // namespace

AccuracyRecord select_best(const std::vector<AccuracyRecord>& records,
                           Measure measure, CoverageMode coverage_mode) {
  if (records.empty()) throw EmptyRecords("select_best: no records");

  std::vector<AccuracyRecord> candidates;
  if (coverage_mode == CoverageMode::max_coverage) {
    double max_coverage = 0.0;
    for (const AccuracyRecord& record : records)
      max_coverage = std::max(max_coverage, record.coverage);
    for (const AccuracyRecord& record : records)
      if (record.coverage == max_coverage) candidates.push_back(record);
  } else {
    candidates = records;
  }

  return *std::min_element(
      candidates.begin(), candidates.end(),
      [measure](const AccuracyRecord& lhs, const AccuracyRecord& rhs) {
        const double lv = measure_value(lhs, measure);
        const double rv = measure_value(rhs, measure);
        if (lv != rv) return lv < rv;
        if (lhs.rule_count != rhs.rule_count) return lhs.rule_count < rhs.rule_count;
        return measure_vector(lhs) < measure_vector(rhs);
      });
}

ComparisonCell compare_approaches(const std::vector<AccuracyRecord>& records_a,
                                  const std::vector<AccuracyRecord>& records_b,
                                  Measure measure) {
  if (records_a.size() != records_b.size() || records_a.empty())
    throw MisalignedRecords("compare_approaches: record sequences differ in length");
  for (std::size_t i = 0; i < records_a.size(); ++i)
    if (records_a[i].rule_count != records_b[i].rule_count)
      throw MisalignedRecords("compare_approaches: rule counts not aligned");

  ComparisonCell cell;
  cell.total = static_cast<int>(records_a.size());
  for (std::size_t i = 0; i < records_a.size(); ++i) {
    const double va = measure_value(records_a[i], measure);
    const double vb = measure_value(records_b[i], measure);
    if (va <= vb) ++cell.best_a;
    if (vb <= va) ++cell.best_b;
  }
  cell.pct_a = 100.0 * cell.best_a / cell.total;
  cell.pct_b = 100.0 * cell.best_b / cell.total;
  return cell;
}

namespace {

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid]
                                : 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace

ComparisonSummary summarize_comparison(const ComparisonGrid& per_sample) {
  if (per_sample.empty()) throw EmptyRecords("summarize_comparison: empty grid");

  ComparisonSummary summary;
  summary.per_sample = per_sample;
  for (std::size_t m = 0; m < 3; ++m) {
    std::vector<double> a;
    std::vector<double> b;
    a.reserve(per_sample.size());
    b.reserve(per_sample.size());
    for (const auto& [sample, cells] : per_sample) {
      a.push_back(cells[m].pct_a);
      b.push_back(cells[m].pct_b);
    }
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      sum_a += a[i];
      sum_b += b[i];
    }
    summary.mean[m] = {sum_a / a.size(), sum_b / b.size()};
    summary.median[m] = {median_of(a), median_of(b)};
  }
  return summary;
}

}  // namespace fisgen
