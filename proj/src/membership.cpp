#include "fisgen/membership.hpp"

#include <algorithm>
#include <cmath>

namespace fisgen {

double eval_mf(const TriangularMf& mf, double x) {
  switch (mf.shape) {
    case MfShape::left_shoulder:
      if (x <= mf.b) return 1.0;
      if (x >= mf.c || mf.c <= mf.b) return 0.0;
      return (mf.c - x) / (mf.c - mf.b);
    case MfShape::right_shoulder:
      if (x >= mf.b) return 1.0;
      if (x <= mf.a || mf.a >= mf.b) return 0.0;
      return (x - mf.a) / (mf.b - mf.a);
    case MfShape::interior:
    default:
      if (x <= mf.a || x >= mf.c) return 0.0;
      return std::max(0.0, std::min((x - mf.a) / (mf.b - mf.a),
                                    (mf.c - x) / (mf.c - mf.b)));
  }
}

Partition build_partition(const Eigen::VectorXd& values, int mf_count,
                          const std::vector<std::string>& labels,
                          const FcmConfig& fcm_config) {
  if (mf_count < 2) throw InvalidConfig("build_partition: mf_count must be >= 2");
  if (static_cast<int>(labels.size()) != mf_count)
    throw InvalidConfig("build_partition: label count must equal mf_count");
  if (values.size() < mf_count)
    throw TooFewPoints("build_partition: fewer values than membership functions");

  FcmConfig config = fcm_config;
  config.cluster_count = mf_count;
  const FcmResult clustered = fcm_cluster(values, config);

  std::vector<double> centers(clustered.centers.data(),
                              clustered.centers.data() + mf_count);
  std::sort(centers.begin(), centers.end());
  for (int j = 1; j < mf_count; ++j) {
    if (centers[j] - centers[j - 1] <= 1e-9)
      throw DuplicateCenters("build_partition: adjacent cluster centers coincide");
  }

  Partition partition;
  partition.labels = labels;
  partition.mfs.reserve(mf_count);
  for (int j = 0; j < mf_count; ++j) {
    TriangularMf mf;
    mf.b = centers[j];
    if (j == 0) {
      mf.shape = MfShape::left_shoulder;
      mf.a = centers[j];
      mf.c = centers[j + 1];
    } else if (j == mf_count - 1) {
      mf.shape = MfShape::right_shoulder;
      mf.a = centers[j - 1];
      mf.c = centers[j];
    } else {
      mf.shape = MfShape::interior;
      mf.a = centers[j - 1];
      mf.c = centers[j + 1];
    }
    partition.mfs.push_back(mf);
  }
  return partition;
}

Eigen::VectorXd eval_partition(const Partition& partition, double x) {
  Eigen::VectorXd degrees(partition.size());
  for (int j = 0; j < partition.size(); ++j)
    degrees(j) = eval_mf(partition.mfs[j], x);
  return degrees;
}

int argmax_label(const Partition& partition, double x) {
  int best = 1;
  double best_degree = eval_mf(partition.mfs[0], x);
  for (int j = 1; j < partition.size(); ++j) {
    const double degree = eval_mf(partition.mfs[j], x);
    if (degree > best_degree) {
      best = j + 1;
      best_degree = degree;
    }
  }
  return best;
}

void validate(const Partition& partition) {
  const int m = partition.size();
  if (m < 2) throw JsonSchemaError("partition: needs at least 2 functions");
  if (static_cast<int>(partition.labels.size()) != m)
    throw JsonSchemaError("partition: label count != function count");
  for (int j = 0; j < m; ++j) {
    const TriangularMf& mf = partition.mfs[j];
    if (!(mf.a <= mf.b && mf.b <= mf.c))
      throw JsonSchemaError("partition: function abscissae not ordered");
    const MfShape expected = j == 0 ? MfShape::left_shoulder
                             : j == m - 1 ? MfShape::right_shoulder
                                          : MfShape::interior;
    if (mf.shape != expected)
      throw JsonSchemaError("partition: shoulder/interior layout violated");
    if (mf.shape == MfShape::interior && !(mf.a < mf.b && mf.b < mf.c))
      throw JsonSchemaError("partition: interior function must have a < b < c");
    if (j > 0) {
      const TriangularMf& prev = partition.mfs[j - 1];
      if (!(mf.b > prev.b))
        throw JsonSchemaError("partition: centers must be strictly increasing");
      if (mf.a != prev.b)
        throw JsonSchemaError("partition: interior foot must sit on previous center");
      if (prev.c != mf.b)
        throw JsonSchemaError("partition: interior foot must sit on next center");
    }
  }
}

}  // namespace fisgen
