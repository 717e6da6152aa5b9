#pragma once

#include <vector>

#include <Eigen/Dense>

#include "core/ingest.hpp"
#include "core/juxtapose.hpp"
#include "core/moments.hpp"

namespace rjc {

// N x C posterior cluster probabilities.
using Responsibilities = Eigen::MatrixXd;

struct EStepResult {
  Responsibilities resp;
  double loglik = 0.0;
};

struct FitOptions {
  int max_iter = 100;
  double tol = 1e-6;
  double rel_floor = kDefaultRelFloor;
  int threads = 1;
};

struct FitResult {
  MixtureParams params;
  Responsibilities resp;
  Partition map_labels;
  double loglik = 0.0;
  int iterations = 0;
  bool converged = false;
  // E-step log-likelihood of every iteration, in order.
  std::vector<double> loglik_trace;
};

/// Posterior cluster probabilities for every row of J. Row models are
/// assembled with the other items placed by `labels`, floored, and scored
/// independently per row; the log-likelihood is the sum of per-row
/// log-mixture densities.
EStepResult e_step(const JuxtaposedMatrix& j, const MixtureParams& params,
                   const Partition& labels, double rel_floor = kDefaultRelFloor,
                   int threads = 1);

/// Weighted moment estimators for all structured parameters. Off-diagonal
/// sums run over k != m (and pairwise distinct k, m, l for the triple term).
/// Throws ErrorKind::DegenerateCluster when a normalising weight falls
/// below 1e-10.
MixtureParams m_step(const JuxtaposedMatrix& j, const Responsibilities& q);

/// Alternates E and M steps from a hard initial partition, re-deriving MAP
/// labels after every E-step. Returns the iterate with the highest
/// log-likelihood.
FitResult fit(const JuxtaposedMatrix& j, const Partition& init, const FitOptions& options = {});

Responsibilities one_hot(const Partition& p);

}  // namespace rjc
