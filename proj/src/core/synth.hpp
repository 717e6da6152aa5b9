#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "core/ingest.hpp"
#include "core/moments.hpp"

namespace rjc {

enum class NoiseKind { Gaussian, Uniform };

// x_np = theta(c_n, p) + noise, noise independent with the given sd.
struct MixtureSpec {
  std::vector<int> n_per_cluster;
  int n_features = 0;
  // C x P cluster means; drawn N(0, theta_sd^2) from the seed when empty.
  Eigen::MatrixXd theta;
  double theta_sd = 1.0;
  // Scalar noise sd, or a C x P matrix that overrides it when non-empty.
  double noise_sd = 1.0;
  Eigen::MatrixXd noise_sd_matrix;
  NoiseKind noise = NoiseKind::Gaussian;
  std::uint64_t seed = 0;
  // Randomly permute item order (labels follow the items).
  bool shuffle = true;

  int num_clusters() const { return static_cast<int>(n_per_cluster.size()); }
  int n_items() const;
};

void validate(const MixtureSpec& spec);

// The theta used by generate(): the explicit one or the seeded draw.
Eigen::MatrixXd resolve_theta(const MixtureSpec& spec);
// C x P noise standard deviations.
Eigen::MatrixXd resolve_noise_sd(const MixtureSpec& spec);

struct SyntheticData {
  FeatureMatrix matrix;
  Partition labels;
};

SyntheticData generate(const MixtureSpec& spec);
// Same theta and item order as generate(spec), fresh noise from `stream`.
SyntheticData generate_replicate(const MixtureSpec& spec, std::uint64_t stream);

/// Closed-form structured parameters for the spec's distribution, with
/// weights equal to the cluster proportions.
MixtureParams analytic_moments(const MixtureSpec& spec);

enum class MomentKind { Mean, Variance, Covariance, MeanDifference };

// Entries are (row, column) of J, 0-based; column N is the self-similarity.
struct MomentQuery {
  std::string tag;
  MomentKind kind = MomentKind::Mean;
  int row1 = 0, col1 = 0;
  int row2 = 0, col2 = 0;
};

struct MomentEstimate {
  MomentQuery query;
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Checklist covering every mean, variance and covariance statement for the
/// spec's first items per cluster (tags "1".."8"), plus the equal-expectation
/// differences for items of the same cluster (tags "lemma1.1", "lemma1.2").
std::vector<MomentQuery> default_moment_queries(const MixtureSpec& spec, const Partition& labels);

/// Monte-Carlo estimates over `replicates` independent datasets sharing the
/// spec's theta and item order.
std::vector<MomentEstimate> empirical_moments(const MixtureSpec& spec, int replicates,
                                              const std::vector<MomentQuery>& queries,
                                              int threads = 1);

void to_json(nlohmann::json& j, const MixtureSpec& s);
void from_json(const nlohmann::json& j, MixtureSpec& s);

}  // namespace rjc
