#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <vector>

#include "fisgen/errors.hpp"
#include "fisgen/random.hpp"

namespace fisgen {

/// Hyperparameters for fuzzy c-means clustering.
///
/// Convergence is declared when the largest absolute change in any
/// membership entry between consecutive iterations drops below `tolerance`.
struct FcmConfig {
  int cluster_count = 1;
  double fuzzifier = 2.0;
  double tolerance = 1e-6;
  int max_iterations = 300;
  std::uint64_t seed = 0;
  /// Min-max scale each dimension to [0,1] before clustering (centers are
  /// reported in original units either way). Off by default: distances are
  /// taken on raw values.
  bool min_max_scale = false;

  void validate() const {
    if (cluster_count < 1) throw InvalidConfig("cluster_count must be >= 1");
    if (!(fuzzifier > 1.0) || !std::isfinite(fuzzifier))
      throw InvalidConfig("fuzzifier must be a finite real > 1");
    if (!(tolerance > 0.0) || !std::isfinite(tolerance))
      throw InvalidConfig("tolerance must be a finite real > 0");
    if (max_iterations < 1) throw InvalidConfig("max_iterations must be >= 1");
  }
};

template <typename Scalar>
struct FcmResultT {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix centers;      // k x d, one row per cluster
  Matrix memberships;  // n x k, rows sum to 1
  std::vector<Scalar> objective_history;  // one entry per iteration, non-increasing
  int iterations_run = 0;
  bool converged = false;
};

using FcmResult = FcmResultT<double>;

/// Points closer than this (Euclidean) to a center are treated as coincident
/// with it; membership mass 1 is then split equally among all coincident
/// centers, which is the limit of the update formula.
inline constexpr double kCoincidentDistance = 1e-12;

namespace detail {

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> random_row_stochastic(
    Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> u(rows, cols);
  Rng rng(seed);
  for (Eigen::Index i = 0; i < rows; ++i) {
    Scalar sum{0};
    do {
      sum = Scalar{0};
      for (Eigen::Index j = 0; j < cols; ++j) {
        u(i, j) = static_cast<Scalar>(uniform01(rng));
        sum += u(i, j);
      }
    } while (!(sum > Scalar{0}));
    u.row(i) /= sum;
  }
  return u;
}

}  // namespace detail

/// Squared-error clustering objective J = sum_i sum_k U(i,k)^m |x_i - c_k|^2.
template <typename DerivedX, typename DerivedC, typename DerivedU>
typename DerivedX::Scalar fcm_objective(const Eigen::MatrixBase<DerivedX>& points,
                                        const Eigen::MatrixBase<DerivedC>& centers,
                                        const Eigen::MatrixBase<DerivedU>& memberships,
                                        double fuzzifier) {
  using Scalar = typename DerivedX::Scalar;
  if (points.cols() != centers.cols())
    throw DimensionMismatch("fcm_objective: points and centers dimension differ");
  if (memberships.rows() != points.rows() || memberships.cols() != centers.rows())
    throw DimensionMismatch("fcm_objective: membership matrix shape mismatch");
  Scalar objective{0};
  for (Eigen::Index j = 0; j < centers.rows(); ++j) {
    const auto d2 =
        (points.rowwise() - centers.row(j)).rowwise().squaredNorm().eval();
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      objective += std::pow(memberships(i, j), static_cast<Scalar>(fuzzifier)) * d2(i);
    }
  }
  return objective;
}

/// Membership update for fixed centers:
/// U(i,k) = 1 / sum_j (d_ik / d_ij)^(2/(m-1)), computed from squared
/// distances normalized by the row minimum so the powers stay in (0,1].
template <typename DerivedX, typename DerivedC>
Eigen::Matrix<typename DerivedX::Scalar, Eigen::Dynamic, Eigen::Dynamic>
update_memberships(const Eigen::MatrixBase<DerivedX>& points,
                   const Eigen::MatrixBase<DerivedC>& centers, double fuzzifier) {
  using Scalar = typename DerivedX::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (centers.rows() < 1) throw DimensionMismatch("update_memberships: no centers");
  if (points.cols() != centers.cols())
    throw DimensionMismatch("update_memberships: points and centers dimension differ");

  const Eigen::Index n = points.rows();
  const Eigen::Index k = centers.rows();
  const Scalar coincident2 =
      static_cast<Scalar>(kCoincidentDistance * kCoincidentDistance);
  const Scalar exponent = static_cast<Scalar>(1.0 / (fuzzifier - 1.0));

  Matrix d2(n, k);
  for (Eigen::Index j = 0; j < k; ++j)
    d2.col(j) = (points.rowwise() - centers.row(j)).rowwise().squaredNorm();

  Matrix u(n, k);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights(k);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index coincident = 0;
    for (Eigen::Index j = 0; j < k; ++j)
      if (d2(i, j) < coincident2) ++coincident;
    if (coincident > 0) {
      for (Eigen::Index j = 0; j < k; ++j)
        u(i, j) = d2(i, j) < coincident2 ? Scalar{1} / static_cast<Scalar>(coincident)
                                         : Scalar{0};
      continue;
    }
    const Scalar d2min = d2.row(i).minCoeff();
    Scalar total{0};
    for (Eigen::Index j = 0; j < k; ++j) {
      weights(j) = std::pow(d2min / d2(i, j), exponent);
      total += weights(j);
    }
    u.row(i) = weights.transpose() / total;
  }
  return u;
}

/// Center update for fixed memberships: each center is the U^m-weighted mean
/// of the points. A cluster whose total weight underflows to zero cannot be
/// placed and raises DegenerateCluster.
template <typename DerivedX, typename DerivedU>
Eigen::Matrix<typename DerivedX::Scalar, Eigen::Dynamic, Eigen::Dynamic>
update_centers(const Eigen::MatrixBase<DerivedX>& points,
               const Eigen::MatrixBase<DerivedU>& memberships, double fuzzifier) {
  using Scalar = typename DerivedX::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (memberships.rows() != points.rows())
    throw DimensionMismatch("update_centers: membership rows != point rows");

  const Eigen::Index k = memberships.cols();
  Matrix weighted = memberships.derived().array()
                        .pow(static_cast<Scalar>(fuzzifier))
                        .matrix();
  Matrix centers(k, points.cols());
  for (Eigen::Index j = 0; j < k; ++j) {
    const Scalar total = weighted.col(j).sum();
    if (!(total > Scalar{0}))
      throw DegenerateCluster("cluster with zero total membership weight");
    centers.row(j) = (weighted.col(j).transpose() * points.derived()) / total;
  }
  return centers;
}

/// Alternating optimization from an explicit initial membership matrix.
/// Exposed separately so callers can control the initialization (the seeded
/// wrapper below is the normal entry point).
template <typename DerivedX, typename DerivedU>
FcmResultT<typename DerivedX::Scalar> fcm_cluster_from(
    const Eigen::MatrixBase<DerivedX>& points,
    const Eigen::MatrixBase<DerivedU>& initial_memberships, const FcmConfig& config) {
  using Scalar = typename DerivedX::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  config.validate();

  const Eigen::Index n = points.rows();
  const Eigen::Index k = config.cluster_count;
  if (n == 0) throw EmptyInput("fcm_cluster: no points");
  if (!points.allFinite()) throw NonFiniteInput("fcm_cluster: non-finite coordinate");
  if (n < k) throw TooFewPoints("fcm_cluster: fewer points than clusters");
  if (initial_memberships.rows() != n || initial_memberships.cols() != k)
    throw DimensionMismatch("fcm_cluster: initial membership shape mismatch");

  Matrix data = points;
  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> offset(points.cols());
  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> scale(points.cols());
  offset.setZero();
  scale.setOnes();
  if (config.min_max_scale) {
    for (Eigen::Index c = 0; c < data.cols(); ++c) {
      const Scalar lo = data.col(c).minCoeff();
      const Scalar hi = data.col(c).maxCoeff();
      offset(c) = lo;
      scale(c) = hi > lo ? hi - lo : Scalar{1};
      data.col(c) = (data.col(c).array() - lo) / scale(c);
    }
  }

  FcmResultT<Scalar> result;
  Matrix u = initial_memberships;
  Matrix centers;
  for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
    centers = update_centers(data, u, config.fuzzifier);
    Matrix next = update_memberships(data, centers, config.fuzzifier);
    const Scalar delta = (next - u).cwiseAbs().maxCoeff();
    u.swap(next);
    result.objective_history.push_back(
        fcm_objective(data, centers, u, config.fuzzifier));
    result.iterations_run = iteration;
    if (delta < static_cast<Scalar>(config.tolerance)) {
      result.converged = true;
      break;
    }
  }

  if (config.min_max_scale)
    centers = ((centers.array().rowwise() * scale.array()).rowwise() + offset.array())
                  .matrix();
  result.centers = centers;
  result.memberships = u;
  return result;
}

/// Fuzzy c-means over the rows of `points` (n x d). Deterministic given
/// (points, config): the initial memberships are drawn from mt19937_64 seeded
/// with config.seed. A degenerate cluster triggers re-initialization with
/// seed+1, at most 3 retries, then the error propagates.
template <typename DerivedX>
FcmResultT<typename DerivedX::Scalar> fcm_cluster(
    const Eigen::MatrixBase<DerivedX>& points, const FcmConfig& config) {
  using Scalar = typename DerivedX::Scalar;
  config.validate();
  if (points.rows() == 0) throw EmptyInput("fcm_cluster: no points");
  if (!points.allFinite()) throw NonFiniteInput("fcm_cluster: non-finite coordinate");
  if (points.rows() < config.cluster_count)
    throw TooFewPoints("fcm_cluster: fewer points than clusters");

  for (int attempt = 0;; ++attempt) {
    const auto u0 = detail::random_row_stochastic<Scalar>(
        points.rows(), config.cluster_count, config.seed + attempt);
    try {
      return fcm_cluster_from(points, u0, config);
    } catch (const DegenerateCluster&) {
      if (attempt == 3) throw;
    }
  }
}

}  // namespace fisgen
