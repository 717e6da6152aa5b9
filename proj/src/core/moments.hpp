#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace rjc {

// Structured mixture parameters shared by every row of J.
//   mu_diag[a]         mean of the self-similarity column for cluster a
//   mu_pair(a,b)       mean of an off-diagonal entry J_km, k in a, m in b
//   var_diag[a]        variance of the self-similarity column
//   var_pair(a,b)      variance of J_km
//   cov_triple[a](b,d) covariance of J_km and J_kl, k in a, m in b, l in d
struct MixtureParams {
  int num_clusters = 0;
  Eigen::VectorXd weights;
  Eigen::VectorXd mu_diag;
  Eigen::MatrixXd mu_pair;
  Eigen::VectorXd var_diag;
  Eigen::MatrixXd var_pair;
  std::vector<Eigen::MatrixXd> cov_triple;

  static MixtureParams zeros(int num_clusters);
};

// Mean and covariance of one (N+1)-long row of J under a cluster hypothesis.
struct RowModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

inline constexpr double kDefaultRelFloor = 1e-8;

/// Builds the model for row `item` assuming it belongs to `cluster`, with every
/// other item placed by `labels` (0-based). The substituted diagonal entry is
/// the average of the row's other off-diagonal entries, so its mean, variance
/// and covariances are the matching linear combinations. The self-similarity
/// coordinate is uncorrelated with the rest.
RowModel assemble_row_model(const MixtureParams& params, std::span<const int> labels,
                            Eigen::Index item, int cluster);

/// Eigenvalue clamp: values below rel_floor * max(lambda_max, tiny) are raised
/// to that bound. Throws ErrorKind::Contract for asymmetric input.
Eigen::MatrixXd floor_covariance(const Eigen::MatrixXd& cov, double rel_floor = kDefaultRelFloor);

/// Multivariate normal log-density through a Cholesky factor. Throws
/// ErrorKind::Numerical when the covariance is not positive definite.
double log_density(const Eigen::VectorXd& row, const RowModel& model);

// Distinct parameters estimated by the M-step for C clusters.
long param_count(int num_clusters);
// The covariance-only part of param_count (var_diag + var_pair + cov_triple).
long covariance_param_count(int num_clusters);

void to_json(nlohmann::json& j, const MixtureParams& p);
void from_json(const nlohmann::json& j, MixtureParams& p);

}  // namespace rjc
