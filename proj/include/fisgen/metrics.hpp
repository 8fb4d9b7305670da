#pragma once

#include <Eigen/Dense>

#include <array>
#include <map>
#include <vector>

#include "fisgen/inference.hpp"

namespace fisgen {

/// Accuracy and coverage of one model on one test subset. Residual fields
/// are computed over covered observations only; when predictions_made is 0
/// they are stored as 0 and the record ranks worst in every selection.
struct AccuracyRecord {
  int rule_count = 0;
  double coverage = 0.0;            // fraction of test observations covered
  double abs_residual_sum = 0.0;
  double mean_abs_residual = 0.0;
  double median_abs_residual = 0.0;
  int predictions_made = 0;
};

struct ResidualSummary {
  double abs_sum = 0.0;
  double mean = 0.0;
  double median = 0.0;
  int count = 0;
};

/// Absolute residuals |prediction - actual| over present predictions; the
/// median of an even count is the mean of the two middle values.
ResidualSummary residual_metrics(const std::vector<Prediction>& predictions,
                                 const Eigen::VectorXd& actuals);

enum class Measure { abs_sum, mean, median };
enum class CoverageMode { ignore, max_coverage };

/// The measure value used for ranking; a record with no predictions ranks
/// worst (positive infinity).
double measure_value(const AccuracyRecord& record, Measure measure);

/// Record with the minimal measure value, optionally restricted to records
/// attaining the maximum coverage present. Ties break toward the smaller
/// rule count, then the lexicographically smaller (abs, mean, median) vector.
AccuracyRecord select_best(const std::vector<AccuracyRecord>& records,
                           Measure measure, CoverageMode coverage_mode);

/// Outcome of comparing two approaches over aligned rule counts: the lower
/// measure wins at each count and exact ties count for both sides, so
/// pct_a + pct_b can exceed 100.
struct ComparisonCell {
  double pct_a = 0.0;
  double pct_b = 0.0;
  int best_a = 0;
  int best_b = 0;
  int total = 0;
};

/// Compares two record sequences that must cover identical rule counts in
/// identical order; percentages are kept at full precision (display rounding
/// happens at the report layer).
ComparisonCell compare_approaches(const std::vector<AccuracyRecord>& records_a,
                                  const std::vector<AccuracyRecord>& records_b,
                                  Measure measure);

/// Per-sample comparison cells for all three measures, indexed by Measure.
using ComparisonGrid = std::map<int, std::array<ComparisonCell, 3>>;

struct ApproachPcts {
  double pct_a = 0.0;
  double pct_b = 0.0;
};

struct ComparisonSummary {
  ComparisonGrid per_sample;
  std::array<ApproachPcts, 3> mean;    // across samples, per measure
  std::array<ApproachPcts, 3> median;
};

ComparisonSummary summarize_comparison(const ComparisonGrid& per_sample);

/// Exact header of the per-record CSV rows.
inline constexpr char kRecordsCsvHeader[] =
    "sample,approach,rule_count,coverage,abs_res,ave_res,med_res,predictions_made";

}  // namespace fisgen
