#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/ingest.hpp"
#include "core/juxtapose.hpp"
#include "core/moments.hpp"
#include "core/structured_em.hpp"

namespace rjc {

enum class CandidateStatus { Ok, Shrunk, Rejected };

const char* to_string(CandidateStatus s);
CandidateStatus candidate_status_from(const std::string& s);

struct BicEntry {
  int num_clusters = 0;
  double loglik = 0.0;  // NaN unless status is Ok
  long param_count = 0;
  double bic = 0.0;     // NaN unless status is Ok
  CandidateStatus status = CandidateStatus::Ok;
  std::string message;
  int iterations = 0;
  bool converged = false;
};

struct SelectConfig {
  int cmax = 0;  // 0 selects default_cmax(N)
  int init_max_iter = 200;
  double init_tol = 1e-6;
  int max_iter = 100;
  double tol = 1e-6;
  double rel_floor = kDefaultRelFloor;
  int threads = 1;
  std::uint64_t seed = 0;
};

struct ClusterResult {
  int selected_c = 0;
  Partition labels;
  Responsibilities responsibilities;
  std::vector<BicEntry> bic_trace;
  MixtureParams params;
};

// 2 * loglik - M * ln(N).
double bic(double loglik, long param_count, double n_items);

// min(9, N - 2), but never below 1.
int default_cmax(Eigen::Index n_items);

/// For C = 1..C_max: Ward initialisation, diagonal EM, shrink check (stops the
/// loop), structured fit, BIC. The winner maximises BIC among fitted
/// candidates with ties going to the smaller C.
ClusterResult select(const JuxtaposedMatrix& j, const SelectConfig& config);

}  // namespace rjc
