#include "core/structured_em.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "core/errors.hpp"
#include "core/init_cluster.hpp"
#include "core/parallel.hpp"

namespace rjc {

namespace {

constexpr double kMinDenominator = 1e-10;

void check_denominator(double value, const char* what) {
  if (!(value >= kMinDenominator)) {
    throw Error(ErrorKind::DegenerateCluster,
                std::string("degenerate cluster: weight for ") + what + " is below 1e-10");
  }
}

}  // namespace

Responsibilities one_hot(const Partition& p) {
  Responsibilities q = Responsibilities::Zero(static_cast<Eigen::Index>(p.size()), p.num_clusters);
  for (std::size_t k = 0; k < p.size(); ++k) q(static_cast<Eigen::Index>(k), p.labels[k]) = 1.0;
  return q;
}

EStepResult e_step(const JuxtaposedMatrix& j, const MixtureParams& params,
                   const Partition& labels, double rel_floor, int threads) {
  const Eigen::Index n = j.n_items();
  const int c = params.num_clusters;
  if (static_cast<Eigen::Index>(labels.size()) != n) {
    throw Error(ErrorKind::Dimension, "label count differs from the number of rows");
  }

  Eigen::MatrixXd log_joint(n, c);
  const std::span<const int> label_view(labels.labels);
  parallel_for(static_cast<std::size_t>(n * c), threads, [&](std::size_t idx) {
    const auto k = static_cast<Eigen::Index>(idx) / c;
    const int a = static_cast<int>(static_cast<Eigen::Index>(idx) % c);
    if (!(params.weights[a] > 0.0)) {
      log_joint(k, a) = -std::numeric_limits<double>::infinity();
      return;
    }
    RowModel model = assemble_row_model(params, label_view, k, a);
    model.cov = floor_covariance(model.cov, rel_floor);
    const Eigen::VectorXd row = j.values.row(k).transpose();
    log_joint(k, a) = std::log(params.weights[a]) + log_density(row, model);
  });

  EStepResult out;
  out.resp.resize(n, c);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double norm = log_sum_exp(log_joint.row(k).transpose());
    if (!std::isfinite(norm)) {
      throw Error(ErrorKind::Numerical,
                  "all cluster densities underflow for row " + std::to_string(k + 1));
    }
    out.resp.row(k) = (log_joint.row(k).array() - norm).exp();
    out.loglik += norm;
  }
  return out;
}

MixtureParams m_step(const JuxtaposedMatrix& j, const Responsibilities& q) {
  const Eigen::Index n = j.n_items();
  const Eigen::Index c = q.cols();
  if (q.rows() != n) throw Error(ErrorKind::Dimension, "responsibility rows differ from items");
  if (c < 1) throw Error(ErrorKind::Domain, "responsibilities have no clusters");

  const Eigen::MatrixXd& jv = j.values;
  const Eigen::Index self = j.self_column();
  MixtureParams p = MixtureParams::zeros(static_cast<int>(c));

  const Eigen::VectorXd mass = q.colwise().sum().transpose();
  p.weights = mass / static_cast<double>(n);

  for (Eigen::Index a = 0; a < c; ++a) {
    check_denominator(mass[a], "the self-similarity mean");
    double mean = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) mean += q(k, a) * jv(k, self);
    mean /= mass[a];
    double var = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double dev = jv(k, self) - mean;
      var += q(k, a) * dev * dev;
    }
    p.mu_diag[a] = mean;
    p.var_diag[a] = var / mass[a];
  }

  // Pair weights: sum over k != m of q_ka q_mb.
  const Eigen::MatrixXd gram_q = q.transpose() * q;
  const Eigen::MatrixXd pair_den = mass * mass.transpose() - gram_q;

  Eigen::MatrixXd off = jv.leftCols(n);
  off.diagonal().setZero();
  const Eigen::MatrixXd pair_num = q.transpose() * off * q;
  for (Eigen::Index a = 0; a < c; ++a) {
    for (Eigen::Index b = 0; b < c; ++b) {
      check_denominator(pair_den(a, b), "a pair mean");
    }
  }
  Eigen::MatrixXd mu = pair_num.cwiseQuotient(pair_den);
  p.mu_pair = 0.5 * (mu + mu.transpose());

  Eigen::MatrixXd var_num = Eigen::MatrixXd::Zero(c, c);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index m = 0; m < n; ++m) {
      if (m == k) continue;
      const double x = jv(k, m);
      for (Eigen::Index a = 0; a < c; ++a) {
        const double qa = q(k, a);
        for (Eigen::Index b = 0; b < c; ++b) {
          const double dev = x - p.mu_pair(a, b);
          var_num(a, b) += qa * q(m, b) * dev * dev;
        }
      }
    }
  }
  Eigen::MatrixXd var = var_num.cwiseQuotient(pair_den);
  p.var_pair = 0.5 * (var + var.transpose());

  // Triple term via per-row accumulators:
  //   sum_{m != l, both != k} q_mb q_ld e_kmb e_kld
  //     = (sum_m q_mb e_kmb)(sum_l q_ld e_kld) - sum_m q_mb q_md e_kmb e_kmd
  // with e_kmb = J_km - mu_pair(a, b).
  std::vector<Eigen::MatrixXd> triple_num(static_cast<std::size_t>(c), Eigen::MatrixXd::Zero(c, c));
  std::vector<Eigen::MatrixXd> triple_den(static_cast<std::size_t>(c), Eigen::MatrixXd::Zero(c, c));
  Eigen::VectorXd lin(c);
  Eigen::MatrixXd quad(c, c);
  Eigen::VectorXd dev(c);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::VectorXd rest_mass = mass - q.row(k).transpose();
    const Eigen::MatrixXd rest_gram = gram_q - q.row(k).transpose() * q.row(k);
    const Eigen::MatrixXd den_k = rest_mass * rest_mass.transpose() - rest_gram;
    for (Eigen::Index a = 0; a < c; ++a) {
      const double qa = q(k, a);
      triple_den[static_cast<std::size_t>(a)] += qa * den_k;
      if (qa == 0.0) continue;
      lin.setZero();
      quad.setZero();
      for (Eigen::Index m = 0; m < n; ++m) {
        if (m == k) continue;
        for (Eigen::Index b = 0; b < c; ++b) dev[b] = q(m, b) * (jv(k, m) - p.mu_pair(a, b));
        lin += dev;
        quad.noalias() += dev * dev.transpose();
      }
      triple_num[static_cast<std::size_t>(a)].noalias() += qa * (lin * lin.transpose() - quad);
    }
  }
  for (Eigen::Index a = 0; a < c; ++a) {
    const auto& den = triple_den[static_cast<std::size_t>(a)];
    for (Eigen::Index b = 0; b < c; ++b) {
      for (Eigen::Index d = 0; d < c; ++d) check_denominator(den(b, d), "a triple covariance");
    }
    Eigen::MatrixXd t = triple_num[static_cast<std::size_t>(a)].cwiseQuotient(den);
    p.cov_triple[static_cast<std::size_t>(a)] = 0.5 * (t + t.transpose());
  }
  return p;
}

FitResult fit(const JuxtaposedMatrix& j, const Partition& init, const FitOptions& options) {
  if (static_cast<Eigen::Index>(init.size()) != j.n_items()) {
    throw Error(ErrorKind::Dimension, "initial partition length differs from item count");
  }

  Partition labels = init;
  MixtureParams params = m_step(j, one_hot(init));

  FitResult best;
  best.loglik = -std::numeric_limits<double>::infinity();
  double previous = -std::numeric_limits<double>::infinity();
  for (int it = 1; it <= options.max_iter; ++it) {
    EStepResult e = e_step(j, params, labels, options.rel_floor, options.threads);
    best.loglik_trace.push_back(e.loglik);
    best.iterations = it;
    Partition next_labels = map_partition(e.resp);
    if (e.loglik > best.loglik) {
      best.loglik = e.loglik;
      best.params = params;
      best.resp = e.resp;
      best.map_labels = next_labels;
    }
    if (it > 1 && std::abs(e.loglik - previous) < options.tol * std::abs(e.loglik)) {
      best.converged = true;
      break;
    }
    previous = e.loglik;
    labels = std::move(next_labels);
    params = m_step(j, e.resp);
  }
  return best;
}

}  // namespace rjc
