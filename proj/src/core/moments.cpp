#include "core/moments.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "core/errors.hpp"

namespace rjc {

MixtureParams MixtureParams::zeros(int num_clusters) {
  MixtureParams p;
  p.num_clusters = num_clusters;
  p.weights = Eigen::VectorXd::Zero(num_clusters);
  p.mu_diag = Eigen::VectorXd::Zero(num_clusters);
  p.mu_pair = Eigen::MatrixXd::Zero(num_clusters, num_clusters);
  p.var_diag = Eigen::VectorXd::Zero(num_clusters);
  p.var_pair = Eigen::MatrixXd::Zero(num_clusters, num_clusters);
  p.cov_triple.assign(static_cast<std::size_t>(num_clusters),
                      Eigen::MatrixXd::Zero(num_clusters, num_clusters));
  return p;
}

RowModel assemble_row_model(const MixtureParams& params, std::span<const int> labels,
                            Eigen::Index item, int cluster) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  const int c = params.num_clusters;
  if (n < 2) throw Error(ErrorKind::Dimension, "row model needs at least 2 items");
  if (item < 0 || item >= n) throw Error(ErrorKind::Index, "item index out of range");
  if (cluster < 0 || cluster >= c) {
    throw Error(ErrorKind::Index, "cluster " + std::to_string(cluster + 1) + " out of range");
  }
  for (Eigen::Index m = 0; m < n; ++m) {
    if (m == item) continue;
    const int b = labels[static_cast<std::size_t>(m)];
    if (b < 0 || b >= c) {
      throw Error(ErrorKind::Index, "label " + std::to_string(b + 1) + " of item " +
                                        std::to_string(m + 1) + " out of range");
    }
  }

  const auto a = static_cast<Eigen::Index>(cluster);
  const Eigen::MatrixXd& triple = params.cov_triple[static_cast<std::size_t>(cluster)];
  const double inv = 1.0 / static_cast<double>(n - 1);

  // Cluster sizes among the other items.
  Eigen::VectorXd others = Eigen::VectorXd::Zero(c);
  for (Eigen::Index m = 0; m < n; ++m) {
    if (m != item) others[labels[static_cast<std::size_t>(m)]] += 1.0;
  }

  RowModel model;
  model.mean.resize(n + 1);
  model.cov = Eigen::MatrixXd::Zero(n + 1, n + 1);

  double mean_sum = 0.0;
  for (Eigen::Index m = 0; m < n; ++m) {
    if (m == item) continue;
    const auto bm = static_cast<Eigen::Index>(labels[static_cast<std::size_t>(m)]);
    model.mean[m] = params.mu_pair(a, bm);
    mean_sum += model.mean[m];
    for (Eigen::Index l = 0; l < n; ++l) {
      if (l == item) continue;
      const auto bl = static_cast<Eigen::Index>(labels[static_cast<std::size_t>(l)]);
      model.cov(m, l) = (l == m) ? params.var_pair(a, bm) : triple(bm, bl);
    }
  }
  model.mean[item] = mean_sum * inv;
  model.mean[n] = params.mu_diag[a];

  // Cov(J_kk, J_km) = (1/(N-1)) sum_{l != k} Cov(J_kl, J_km), and Var(J_kk)
  // averages those once more.
  double kk = 0.0;
  for (Eigen::Index m = 0; m < n; ++m) {
    if (m == item) continue;
    const auto bm = static_cast<Eigen::Index>(labels[static_cast<std::size_t>(m)]);
    double row_sum = params.var_pair(a, bm) - triple(bm, bm);
    for (Eigen::Index b = 0; b < c; ++b) row_sum += others[b] * triple(bm, b);
    const double cross = row_sum * inv;
    model.cov(item, m) = cross;
    model.cov(m, item) = cross;
    kk += cross;
  }
  model.cov(item, item) = kk * inv;
  model.cov(n, n) = params.var_diag[a];
  return model;
}

Eigen::MatrixXd floor_covariance(const Eigen::MatrixXd& cov, double rel_floor) {
  if (cov.rows() != cov.cols()) throw Error(ErrorKind::Contract, "covariance must be square");
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw Error(ErrorKind::Contract, "covariance is not symmetric");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorKind::Numerical, "eigendecomposition of covariance failed");
  }
  Eigen::VectorXd lambda = eig.eigenvalues();
  const double top = std::max(lambda.maxCoeff(), std::numeric_limits<double>::min());
  const double eps = rel_floor * top;
  lambda = lambda.cwiseMax(eps);

  const Eigen::MatrixXd& v = eig.eigenvectors();
  Eigen::MatrixXd out = v * lambda.asDiagonal() * v.transpose();
  return 0.5 * (out + out.transpose());
}

double log_density(const Eigen::VectorXd& row, const RowModel& model) {
  const Eigen::Index d = row.size();
  if (model.mean.size() != d || model.cov.rows() != d || model.cov.cols() != d) {
    throw Error(ErrorKind::Dimension, "row and model dimensions differ");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(model.cov);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::Numerical, "covariance is not positive definite");
  }
  const Eigen::MatrixXd& factor = llt.matrixLLT();
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) log_det += std::log(factor(i, i));
  log_det *= 2.0;

  const Eigen::VectorXd z = llt.matrixL().solve(row - model.mean);
  const double quad = z.squaredNorm();
  const double value =
      -0.5 * (static_cast<double>(d) * std::log(2.0 * std::numbers::pi) + log_det + quad);
  if (!std::isfinite(value)) throw Error(ErrorKind::Numerical, "non-finite log-density");
  return value;
}

long covariance_param_count(int num_clusters) {
  if (num_clusters < 1) throw Error(ErrorKind::Domain, "cluster count must be at least 1");
  const long c = num_clusters;
  const long sym = c * (c + 1) / 2;
  return c + sym + c * sym;
}

long param_count(int num_clusters) {
  if (num_clusters < 1) throw Error(ErrorKind::Domain, "cluster count must be at least 1");
  const long c = num_clusters;
  const long sym = c * (c + 1) / 2;
  // weights, mu_diag, mu_pair, then the covariance blocks.
  return (c - 1) + c + sym + covariance_param_count(num_clusters);
}

namespace {

nlohmann::json vector_json(const Eigen::VectorXd& v) {
  return nlohmann::json(std::vector<double>(v.data(), v.data() + v.size()));
}

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Eigen::VectorXd r = m.row(i).transpose();
    rows.push_back(vector_json(r));
  }
  return rows;
}

Eigen::VectorXd vector_from(const nlohmann::json& j, Eigen::Index n, const char* name) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
    throw Error(ErrorKind::Format, std::string("field '") + name + "' has the wrong length");
  }
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = j[static_cast<std::size_t>(i)].get<double>();
  return v;
}

Eigen::MatrixXd matrix_from(const nlohmann::json& j, Eigen::Index n, const char* name) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
    throw Error(ErrorKind::Format, std::string("field '") + name + "' has the wrong shape");
  }
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m.row(i) = vector_from(j[static_cast<std::size_t>(i)], n, name).transpose();
  }
  return m;
}

}  // namespace

void to_json(nlohmann::json& j, const MixtureParams& p) {
  nlohmann::json triple = nlohmann::json::array();
  for (const auto& t : p.cov_triple) triple.push_back(matrix_json(t));
  j = nlohmann::json{{"C", p.num_clusters},
                     {"w", vector_json(p.weights)},
                     {"mu_diag", vector_json(p.mu_diag)},
                     {"mu_pair", matrix_json(p.mu_pair)},
                     {"var_diag", vector_json(p.var_diag)},
                     {"var_pair", matrix_json(p.var_pair)},
                     {"cov_triple", std::move(triple)}};
}

void from_json(const nlohmann::json& j, MixtureParams& p) {
  const int c = j.at("C").get<int>();
  if (c < 1) throw Error(ErrorKind::Format, "mixture parameters need C >= 1");
  p = MixtureParams::zeros(c);
  p.weights = vector_from(j.at("w"), c, "w");
  p.mu_diag = vector_from(j.at("mu_diag"), c, "mu_diag");
  p.mu_pair = matrix_from(j.at("mu_pair"), c, "mu_pair");
  p.var_diag = vector_from(j.at("var_diag"), c, "var_diag");
  p.var_pair = matrix_from(j.at("var_pair"), c, "var_pair");
  const auto& triple = j.at("cov_triple");
  if (!triple.is_array() || static_cast<int>(triple.size()) != c) {
    throw Error(ErrorKind::Format, "field 'cov_triple' has the wrong shape");
  }
  for (int a = 0; a < c; ++a) {
    p.cov_triple[static_cast<std::size_t>(a)] =
        matrix_from(triple[static_cast<std::size_t>(a)], c, "cov_triple");
  }
}

}  // namespace rjc
