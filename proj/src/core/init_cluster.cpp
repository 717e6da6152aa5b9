#include "core/init_cluster.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "core/errors.hpp"

namespace rjc {

double log_sum_exp(const Eigen::Ref<const Eigen::VectorXd>& v) {
  const double top = v.maxCoeff();
  if (!std::isfinite(top)) return top;
  return top + std::log((v.array() - top).exp().sum());
}

Partition map_partition(const Eigen::MatrixXd& responsibilities) {
  Partition p;
  p.num_clusters = static_cast<int>(responsibilities.cols());
  p.labels.resize(static_cast<std::size_t>(responsibilities.rows()));
  for (Eigen::Index k = 0; k < responsibilities.rows(); ++k) {
    Eigen::Index best = 0;
    for (Eigen::Index a = 1; a < responsibilities.cols(); ++a) {
      if (responsibilities(k, a) > responsibilities(k, best)) best = a;
    }
    p.labels[static_cast<std::size_t>(k)] = static_cast<int>(best);
  }
  return p;
}

Partition ward_agglomerate(const Eigen::MatrixXd& rows, int num_clusters) {
  const Eigen::Index n = rows.rows();
  if (num_clusters < 1) throw Error(ErrorKind::Domain, "target cluster count must be at least 1");
  if (num_clusters > n) {
    throw Error(ErrorKind::Domain, "target cluster count " + std::to_string(num_clusters) +
                                       " exceeds item count " + std::to_string(n));
  }

  Eigen::MatrixXd dist(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    dist(i, i) = 0.0;
    for (Eigen::Index k = i + 1; k < n; ++k) {
      const double d = (rows.row(i) - rows.row(k)).squaredNorm();
      dist(i, k) = d;
      dist(k, i) = d;
    }
  }

  // Each active cluster is keyed by its smallest member index.
  std::vector<int> owner(static_cast<std::size_t>(n));
  std::vector<double> size(static_cast<std::size_t>(n), 1.0);
  std::vector<bool> active(static_cast<std::size_t>(n), true);
  for (Eigen::Index i = 0; i < n; ++i) owner[static_cast<std::size_t>(i)] = static_cast<int>(i);

  for (Eigen::Index remaining = n; remaining > num_clusters; --remaining) {
    Eigen::Index bi = -1;
    Eigen::Index bj = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!active[static_cast<std::size_t>(i)]) continue;
      for (Eigen::Index k = i + 1; k < n; ++k) {
        if (!active[static_cast<std::size_t>(k)]) continue;
        if (dist(i, k) < best) {
          best = dist(i, k);
          bi = i;
          bj = k;
        }
      }
    }

    const double ni = size[static_cast<std::size_t>(bi)];
    const double nj = size[static_cast<std::size_t>(bj)];
    for (Eigen::Index k = 0; k < n; ++k) {
      if (!active[static_cast<std::size_t>(k)] || k == bi || k == bj) continue;
      const double nk = size[static_cast<std::size_t>(k)];
      const double d = ((ni + nk) * dist(bi, k) + (nj + nk) * dist(bj, k) - nk * dist(bi, bj)) /
                       (ni + nj + nk);
      dist(bi, k) = d;
      dist(k, bi) = d;
    }
    size[static_cast<std::size_t>(bi)] = ni + nj;
    active[static_cast<std::size_t>(bj)] = false;
    for (auto& o : owner) {
      if (o == static_cast<int>(bj)) o = static_cast<int>(bi);
    }
  }
  return canonicalize(owner);
}

Partition ward_agglomerate(const JuxtaposedMatrix& j, int num_clusters) {
  return ward_agglomerate(j.values, num_clusters);
}

namespace {

struct DiagonalParams {
  Eigen::VectorXd weights;
  Eigen::MatrixXd means;      // C x D
  Eigen::MatrixXd variances;  // C x D
};

void diagonal_m_step(const Eigen::MatrixXd& y, const Eigen::MatrixXd& resp,
                     const Eigen::VectorXd& floor, DiagonalParams& params) {
  const Eigen::Index n = y.rows();
  const Eigen::Index c = resp.cols();
  for (Eigen::Index a = 0; a < c; ++a) {
    const double mass = resp.col(a).sum();
    params.weights[a] = mass / static_cast<double>(n);
    // An emptied component keeps its last mean and variance at zero weight.
    if (mass <= std::numeric_limits<double>::min()) continue;
    const Eigen::RowVectorXd mean = (resp.col(a).transpose() * y) / mass;
    Eigen::RowVectorXd var = Eigen::RowVectorXd::Zero(y.cols());
    for (Eigen::Index k = 0; k < n; ++k) {
      var += resp(k, a) * (y.row(k) - mean).array().square().matrix();
    }
    var /= mass;
    params.means.row(a) = mean;
    params.variances.row(a) = var.cwiseMax(floor.transpose());
  }
}

double diagonal_e_step(const Eigen::MatrixXd& y, const DiagonalParams& params,
                       Eigen::MatrixXd& resp) {
  const Eigen::Index n = y.rows();
  const Eigen::Index c = params.weights.size();
  const double log_2pi = std::log(2.0 * std::numbers::pi);
  Eigen::MatrixXd log_var = params.variances.array().log().matrix();

  double total = 0.0;
  Eigen::VectorXd lp(c);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index a = 0; a < c; ++a) {
      if (params.weights[a] <= 0.0) {
        lp[a] = -std::numeric_limits<double>::infinity();
        continue;
      }
      const double quad =
          ((y.row(k) - params.means.row(a)).array().square() / params.variances.row(a).array())
              .sum();
      lp[a] = std::log(params.weights[a]) -
              0.5 * (static_cast<double>(y.cols()) * log_2pi + log_var.row(a).sum() + quad);
    }
    const double norm = log_sum_exp(lp);
    if (!std::isfinite(norm)) {
      throw Error(ErrorKind::Numerical,
                  "diagonal EM density underflow for row " + std::to_string(k + 1));
    }
    resp.row(k) = (lp.array() - norm).exp().matrix().transpose();
    total += norm;
  }
  return total;
}

}  // namespace

InitResult diagonal_em(const Eigen::MatrixXd& y, const Partition& init, int max_iter, double tol) {
  const Eigen::Index n = y.rows();
  const Eigen::Index d = y.cols();
  const int c = init.num_clusters;
  if (static_cast<Eigen::Index>(init.size()) != n) {
    throw Error(ErrorKind::Dimension, "initial partition length differs from row count");
  }
  if (c < 1) throw Error(ErrorKind::Domain, "initial partition has no clusters");
  for (int count : init.counts()) {
    if (count == 0) throw Error(ErrorKind::Domain, "initial partition has an empty cluster");
  }

  // Per-coordinate variance floor relative to the pooled data variance.
  const Eigen::RowVectorXd overall_mean = y.colwise().mean();
  Eigen::VectorXd floor(d);
  for (Eigen::Index q = 0; q < d; ++q) {
    floor[q] = (y.col(q).array() - overall_mean[q]).square().mean();
  }
  double fallback = floor.mean();
  if (!(fallback > 0.0)) fallback = 1.0;
  for (Eigen::Index q = 0; q < d; ++q) {
    floor[q] = 1e-12 * (floor[q] > 0.0 ? floor[q] : fallback);
  }

  Eigen::MatrixXd resp = Eigen::MatrixXd::Zero(n, c);
  for (Eigen::Index k = 0; k < n; ++k) resp(k, init.labels[static_cast<std::size_t>(k)]) = 1.0;

  DiagonalParams params{Eigen::VectorXd::Zero(c), Eigen::MatrixXd::Zero(c, d),
                        Eigen::MatrixXd::Ones(c, d)};
  diagonal_m_step(y, resp, floor, params);

  InitResult result;
  double previous = -std::numeric_limits<double>::infinity();
  for (int it = 1; it <= max_iter; ++it) {
    const double loglik = diagonal_e_step(y, params, resp);
    result.loglik_trace.push_back(loglik);
    result.loglik = loglik;
    result.iterations = it;
    if (it > 1 && std::abs(loglik - previous) < tol * std::abs(loglik)) {
      result.converged = true;
      break;
    }
    previous = loglik;
    diagonal_m_step(y, resp, floor, params);
  }

  result.responsibilities = resp;
  result.partition = map_partition(resp);
  for (int count : result.partition.counts()) {
    if (count <= 1) result.singleton_detected = true;
  }
  return result;
}

InitResult diagonal_em(const JuxtaposedMatrix& j, const Partition& init, int max_iter, double tol) {
  return diagonal_em(j.values, init, max_iter, tol);
}

}  // namespace rjc
