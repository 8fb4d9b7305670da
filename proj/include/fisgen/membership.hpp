#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "fisgen/fcm.hpp"

namespace fisgen {

enum class MfShape { left_shoulder, interior, right_shoulder };

/// Triangular membership function defined by three abscissae a <= b <= c.
/// Shoulder shapes clamp to 1 on their outer side so a partition covers the
/// whole real line.
struct TriangularMf {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  MfShape shape = MfShape::interior;
};

/// Membership degree of `x` in [0,1]. Total over all inputs.
double eval_mf(const TriangularMf& mf, double x);

/// Ordered family of triangular membership functions over one variable.
/// Centers are strictly increasing; interior functions take their feet from
/// the adjacent centers, so degrees of adjacent functions sum to 1 between
/// consecutive centers; the extreme functions are shoulders.
struct Partition {
  std::string variable;
  std::vector<TriangularMf> mfs;
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(mfs.size()); }
  /// Membership function for a 1-based index (rule indices are 1-based
  /// throughout, matching the "3,3,4" rule identity strings).
  const TriangularMf& mf(int index1) const { return mfs[index1 - 1]; }
};

/// Builds a partition of `mf_count` functions from 1-D fuzzy c-means cluster
/// centers of `values` (sorted ascending). `labels` are assigned in center
/// order. The cluster count of `fcm_config` is overridden by `mf_count`.
///
/// Throws TooFewPoints when values has fewer entries than mf_count and
/// DuplicateCenters when two sorted centers are within 1e-9 (mf_count is too
/// large for the data).
Partition build_partition(const Eigen::VectorXd& values, int mf_count,
                          const std::vector<std::string>& labels,
                          const FcmConfig& fcm_config);

/// Degrees of all member functions at x, in partition order.
Eigen::VectorXd eval_partition(const Partition& partition, double x);

/// 1-based index of the maximal-degree function at x; ties break toward the
/// smaller index.
int argmax_label(const Partition& partition, double x);

/// Validates the structural invariants (ordering, adjacency of feet, shoulder
/// placement, label count); throws JsonSchemaError on violation. Used when
/// accepting partitions from external JSON.
void validate(const Partition& partition);

}  // namespace fisgen
