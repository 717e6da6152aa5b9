#pragma once

#include <vector>

#include <Eigen/Dense>

#include "core/ingest.hpp"
#include "core/juxtapose.hpp"

namespace rjc {

struct InitResult {
  Partition partition;
  double loglik = 0.0;
  bool singleton_detected = false;
  int iterations = 0;
  bool converged = false;
  Eigen::MatrixXd responsibilities;
  // Log-likelihood at the start of every iteration.
  std::vector<double> loglik_trace;
};

/// Ward minimum-variance agglomeration of the rows of J (Lance-Williams on
/// squared Euclidean distances), cut at `num_clusters`. Ties go to the lowest
/// (i, j) pair of cluster representatives. Labels are canonical.
Partition ward_agglomerate(const JuxtaposedMatrix& j, int num_clusters);
Partition ward_agglomerate(const Eigen::MatrixXd& rows, int num_clusters);

/// Gaussian mixture EM with per-cluster, per-coordinate variances started from
/// a hard partition. Variances are floored at 1e-12 times the coordinate's
/// overall variance. singleton_detected is set when any cluster ends with at
/// most one MAP member.
InitResult diagonal_em(const JuxtaposedMatrix& j, const Partition& init, int max_iter = 200,
                       double tol = 1e-6);
InitResult diagonal_em(const Eigen::MatrixXd& rows, const Partition& init, int max_iter = 200,
                       double tol = 1e-6);

// Row-wise argmax with lowest-index tie-break.
Partition map_partition(const Eigen::MatrixXd& responsibilities);

// Stable log(sum(exp(v))).
double log_sum_exp(const Eigen::Ref<const Eigen::VectorXd>& v);

}  // namespace rjc
