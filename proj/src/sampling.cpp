#include "fisgen/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fisgen/random.hpp"

namespace fisgen {

std::vector<SplitPlan> make_splits(int n, int build_size, int sample_count,
                                   std::uint64_t seed) {
  if (build_size <= 0 || build_size >= n)
    throw InvalidSizes("make_splits: need 0 < build_size < n");
  if (sample_count < 1) throw InvalidSizes("make_splits: sample_count must be >= 1");

  std::vector<SplitPlan> plans;
  plans.reserve(sample_count);
  for (int s = 1; s <= sample_count; ++s) {
    const std::uint64_t child_seed =
        seed ^ (static_cast<std::uint64_t>(s) * 0x9E3779B97F4A7C15ull);
    Rng rng(child_seed);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    deterministic_shuffle(order, rng);

    SplitPlan plan;
    plan.sample_index = s;
    plan.build_indices.assign(order.begin(), order.begin() + build_size);
    plan.test_indices.assign(order.begin() + build_size, order.end());
    std::sort(plan.build_indices.begin(), plan.build_indices.end());
    std::sort(plan.test_indices.begin(), plan.test_indices.end());
    plans.push_back(std::move(plan));
  }
  return plans;
}

namespace {

// Continued-fraction kernel for I_x(a,b) (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-15;
  constexpr int max_terms = 500;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_terms; ++m) {
    const double m2 = 2.0 * m;
    double numerator = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + numerator * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + numerator / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    numerator = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + numerator * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + numerator / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < eps) break;
  }
  return h;
}

double sample_mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (const double value : v) sum += value;
  return sum / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v, double mean) {
  double sum = 0.0;
  for (const double value : v) sum += (value - mean) * (value - mean);
  return sum / static_cast<double>(v.size() - 1);
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0) || !(x <= 1.0))
    throw InvalidConfig("regularized_incomplete_beta: domain violation");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = a * std::log(x) + b * std::log1p(-x) -
                           (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
  // Continued fraction converges fastest for x below the split point.
  if (x < (a + 1.0) / (a + b + 2.0))
    return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
  return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw InvalidConfig("student_t_two_sided_p: df must be > 0");
  if (std::isinf(t)) return 0.0;
  return regularized_incomplete_beta(0.5 * df, 0.5, df / (t * t + df));
}

TTestResult welch_t_test(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2 || y.size() < 2)
    throw TooFewObservations("welch_t_test: need at least 2 observations per sample");
  for (const double value : x)
    if (!std::isfinite(value)) throw NonFiniteInput("welch_t_test: non-finite value");
  for (const double value : y)
    if (!std::isfinite(value)) throw NonFiniteInput("welch_t_test: non-finite value");

  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  const double mean_x = sample_mean(x);
  const double mean_y = sample_mean(y);
  const double var_x = sample_variance(x, mean_x);
  const double var_y = sample_variance(y, mean_y);

  TTestResult result;
  if (var_x == 0.0 && var_y == 0.0) {
    if (mean_x == mean_y)
      throw ZeroVariance("welch_t_test: both samples constant and equal");
    result.t_statistic = mean_x > mean_y ? std::numeric_limits<double>::infinity()
                                         : -std::numeric_limits<double>::infinity();
    result.degrees_of_freedom = nx + ny - 2.0;
    result.p_value = 0.0;
  } else {
    const double se_x = var_x / nx;
    const double se_y = var_y / ny;
    result.t_statistic = (mean_x - mean_y) / std::sqrt(se_x + se_y);
    result.degrees_of_freedom =
        (se_x + se_y) * (se_x + se_y) /
        (se_x * se_x / (nx - 1.0) + se_y * se_y / (ny - 1.0));
    result.p_value =
        student_t_two_sided_p(result.t_statistic, result.degrees_of_freedom);
  }
  for (const double alpha : {0.01, 0.05, 0.10})
    result.significant_at[alpha] = result.p_value < alpha;
  return result;
}

PairwiseTTests::PairwiseTTests(int sample_count, std::vector<TTestResult> upper_triangle)
    : sample_count_(sample_count), cells_(std::move(upper_triangle)) {
  if (static_cast<int>(cells_.size()) != sample_count_ * (sample_count_ - 1) / 2)
    throw DimensionMismatch("PairwiseTTests: triangle size mismatch");
}

const TTestResult& PairwiseTTests::at(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= sample_count_ || j >= sample_count_)
    throw DimensionMismatch("PairwiseTTests::at: invalid pair");
  if (i > j) std::swap(i, j);
  // Row-major upper triangle offset for row i, column j.
  const int offset = i * sample_count_ - i * (i + 1) / 2 + (j - i - 1);
  return cells_[offset];
}

PairwiseTTests pairwise_uniformity(const std::vector<SplitPlan>& splits,
                                   const Eigen::VectorXd& column, SubsetKind kind) {
  if (splits.size() < 2)
    throw InvalidSizes("pairwise_uniformity: need at least two splits");

  const auto subset_values = [&](const SplitPlan& plan) {
    const std::vector<int>& indices =
        kind == SubsetKind::build ? plan.build_indices : plan.test_indices;
    std::vector<double> values;
    values.reserve(indices.size());
    for (const int row : indices) {
      if (row < 0 || row >= column.size())
        throw DimensionMismatch("pairwise_uniformity: split index out of range");
      values.push_back(column(row));
    }
    return values;
  };

  std::vector<TTestResult> cells;
  cells.reserve(splits.size() * (splits.size() - 1) / 2);
  for (std::size_t i = 0; i < splits.size(); ++i) {
    const std::vector<double> x = subset_values(splits[i]);
    for (std::size_t j = i + 1; j < splits.size(); ++j)
      cells.push_back(welch_t_test(x, subset_values(splits[j])));
  }
  return PairwiseTTests(static_cast<int>(splits.size()), std::move(cells));
}

}  // namespace fisgen
