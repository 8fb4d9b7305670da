#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <vector>

#include "fisgen/errors.hpp"

namespace fisgen {

/// One build/test split: a disjoint, exhaustive partition of the row indices
/// 0..n-1. sample_index is 1-based.
struct SplitPlan {
  int sample_index = 1;
  std::vector<int> build_indices;  // sorted ascending
  std::vector<int> test_indices;   // sorted ascending
};

/// Draws `sample_count` independent uniform random build/test partitions.
/// Deterministic: sample s shuffles 0..n-1 with mt19937_64 seeded by
/// child_seed = seed XOR (s * 0x9E3779B97F4A7C15)
/// and takes the first `build_size` indices as the build subset.
std::vector<SplitPlan> make_splits(int n, int build_size, int sample_count,
                                   std::uint64_t seed);

struct TTestResult {
  double t_statistic = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;
  std::map<double, bool> significant_at;  // alpha -> p < alpha
};

/// Regularized incomplete beta function I_x(a,b), evaluated with the
/// continued-fraction expansion (modified Lentz); absolute accuracy target
/// 1e-10 over a,b >= 0.5.
double regularized_incomplete_beta(double a, double b, double x);

/// Two-sided p-value of a Student-t statistic with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

/// Welch's unequal-variance t-test with the Welch-Satterthwaite degrees of
/// freedom and a two-sided p-value. Both samples constant and equal has no
/// defined statistic and raises ZeroVariance; both constant but different
/// yields t = +/-inf, p = 0, df = nx+ny-2.
TTestResult welch_t_test(const std::vector<double>& x, const std::vector<double>& y);

enum class SubsetKind { build, test };

/// Symmetric matrix of Welch t-tests over one data column restricted to every
/// pair of subsets; the diagonal is undefined and not stored.
class PairwiseTTests {
 public:
  PairwiseTTests(int sample_count, std::vector<TTestResult> upper_triangle);

  int sample_count() const { return sample_count_; }
  int pair_count() const { return static_cast<int>(cells_.size()); }
  /// Cell for the pair at positions (i, j), 0-based, i != j.
  const TTestResult& at(int i, int j) const;

 private:
  int sample_count_;
  std::vector<TTestResult> cells_;  // row-major upper triangle, i < j
};

/// Welch t-tests of `column` values between the chosen subset of every pair
/// of splits (the build subsets by default, matching how sample uniformity is
/// assessed).
PairwiseTTests pairwise_uniformity(const std::vector<SplitPlan>& splits,
                                   const Eigen::VectorXd& column,
                                   SubsetKind kind = SubsetKind::build);

}  // namespace fisgen
