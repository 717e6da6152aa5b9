#include "core/model_select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/errors.hpp"
#include "core/init_cluster.hpp"

namespace rjc {

const char* to_string(CandidateStatus s) {
  switch (s) {
    case CandidateStatus::Ok:
      return "ok";
    case CandidateStatus::Shrunk:
      return "shrunk";
    case CandidateStatus::Rejected:
      return "rejected";
  }
  return "unknown";
}

CandidateStatus candidate_status_from(const std::string& s) {
  if (s == "ok") return CandidateStatus::Ok;
  if (s == "shrunk") return CandidateStatus::Shrunk;
  if (s == "rejected") return CandidateStatus::Rejected;
  throw Error(ErrorKind::Format, "unknown candidate status '" + s + "'");
}

double bic(double loglik, long param_count, double n_items) {
  return 2.0 * loglik - static_cast<double>(param_count) * std::log(n_items);
}

int default_cmax(Eigen::Index n_items) {
  return static_cast<int>(std::max<Eigen::Index>(1, std::min<Eigen::Index>(9, n_items - 2)));
}

ClusterResult select(const JuxtaposedMatrix& j, const SelectConfig& config) {
  const Eigen::Index n = j.n_items();
  const int cmax = config.cmax == 0 ? default_cmax(n) : config.cmax;
  if (cmax < 1 || cmax > n - 1) {
    throw Error(ErrorKind::Domain, "C_max must lie in [1, " + std::to_string(n - 1) + "], got " +
                                       std::to_string(cmax));
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  FitOptions options{config.max_iter, config.tol, config.rel_floor, config.threads};

  ClusterResult result;
  FitResult winner;
  double best_bic = -std::numeric_limits<double>::infinity();
  for (int c = 1; c <= cmax; ++c) {
    BicEntry entry;
    entry.num_clusters = c;
    entry.param_count = param_count(c);
    entry.loglik = nan;
    entry.bic = nan;

    const Partition start = ward_agglomerate(j, c);
    const InitResult init = diagonal_em(j, start, config.init_max_iter, config.init_tol);
    if (init.singleton_detected) {
      entry.status = CandidateStatus::Shrunk;
      entry.message = "a cluster shrank to at most one item during initialisation";
      result.bic_trace.push_back(entry);
      break;
    }

    try {
      FitResult f = fit(j, init.partition, options);
      entry.loglik = f.loglik;
      entry.bic = bic(f.loglik, entry.param_count, static_cast<double>(n));
      entry.iterations = f.iterations;
      entry.converged = f.converged;
      entry.status = CandidateStatus::Ok;
      if (entry.bic > best_bic) {
        best_bic = entry.bic;
        result.selected_c = c;
        winner = std::move(f);
      }
    } catch (const Error& e) {
      if (e.is_input_error()) throw;
      entry.status = CandidateStatus::Rejected;
      entry.message = e.what();
    }
    result.bic_trace.push_back(entry);
  }

  if (result.selected_c == 0) {
    throw Error(ErrorKind::Numerical, "every candidate cluster count was rejected");
  }
  result.labels = winner.map_labels;
  result.responsibilities = winner.resp;
  result.params = winner.params;
  return result;
}

}  // namespace rjc
