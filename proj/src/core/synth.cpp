#include "core/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/errors.hpp"
#include "core/juxtapose.hpp"
#include "core/parallel.hpp"
#include "core/random.hpp"

namespace rjc {

namespace {

constexpr std::uint64_t kThetaStream = 0;
constexpr std::uint64_t kOrderStream = 1;
constexpr std::uint64_t kNoiseStream = 2;

std::vector<int> item_order(const MixtureSpec& spec) {
  std::vector<int> labels;
  for (int c = 0; c < spec.num_clusters(); ++c) {
    labels.insert(labels.end(), static_cast<std::size_t>(spec.n_per_cluster[static_cast<std::size_t>(c)]), c);
  }
  if (spec.shuffle) {
    Rng rng(derive_seed(spec.seed, kOrderStream));
    for (std::size_t i = labels.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(rng.below(i));
      std::swap(labels[i - 1], labels[j]);
    }
  }
  return labels;
}

}  // namespace

int MixtureSpec::n_items() const {
  return std::accumulate(n_per_cluster.begin(), n_per_cluster.end(), 0);
}

void validate(const MixtureSpec& spec) {
  if (spec.n_per_cluster.empty()) throw Error(ErrorKind::Domain, "spec needs at least one cluster");
  for (int n : spec.n_per_cluster) {
    if (n < 1) throw Error(ErrorKind::Domain, "every cluster needs at least one item");
  }
  if (spec.n_features < 1) throw Error(ErrorKind::Domain, "spec needs at least one feature");
  if (spec.theta.size() != 0 &&
      (spec.theta.rows() != spec.num_clusters() || spec.theta.cols() != spec.n_features)) {
    throw Error(ErrorKind::Dimension, "theta must be C x P");
  }
  if (spec.noise_sd_matrix.size() != 0 &&
      (spec.noise_sd_matrix.rows() != spec.num_clusters() ||
       spec.noise_sd_matrix.cols() != spec.n_features)) {
    throw Error(ErrorKind::Dimension, "noise_sd_matrix must be C x P");
  }
  if (!(spec.noise_sd >= 0.0)) throw Error(ErrorKind::Domain, "noise_sd must be non-negative");
  if (spec.noise_sd_matrix.size() != 0 && !(spec.noise_sd_matrix.array() >= 0.0).all()) {
    throw Error(ErrorKind::Domain, "noise_sd_matrix must be non-negative");
  }
}

Eigen::MatrixXd resolve_theta(const MixtureSpec& spec) {
  validate(spec);
  if (spec.theta.size() != 0) return spec.theta;
  Rng rng(derive_seed(spec.seed, kThetaStream));
  Eigen::MatrixXd theta(spec.num_clusters(), spec.n_features);
  for (Eigen::Index c = 0; c < theta.rows(); ++c) {
    for (Eigen::Index p = 0; p < theta.cols(); ++p) theta(c, p) = spec.theta_sd * rng.normal();
  }
  return theta;
}

Eigen::MatrixXd resolve_noise_sd(const MixtureSpec& spec) {
  if (spec.noise_sd_matrix.size() != 0) return spec.noise_sd_matrix;
  return Eigen::MatrixXd::Constant(spec.num_clusters(), spec.n_features, spec.noise_sd);
}

SyntheticData generate_replicate(const MixtureSpec& spec, std::uint64_t stream) {
  const Eigen::MatrixXd theta = resolve_theta(spec);
  const Eigen::MatrixXd sd = resolve_noise_sd(spec);
  const std::vector<int> labels = item_order(spec);
  const auto n = static_cast<Eigen::Index>(labels.size());

  SyntheticData out;
  out.matrix.values.resize(n, spec.n_features);
  Rng rng(derive_seed(derive_seed(spec.seed, kNoiseStream), stream));
  const double uniform_scale = std::sqrt(3.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int c = labels[static_cast<std::size_t>(i)];
    for (Eigen::Index p = 0; p < spec.n_features; ++p) {
      const double e = spec.noise == NoiseKind::Gaussian
                           ? rng.normal()
                           : uniform_scale * (2.0 * rng.uniform() - 1.0);
      out.matrix.values(i, p) = theta(c, p) + sd(c, p) * e;
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) out.matrix.item_ids.push_back("item" + std::to_string(i + 1));
  for (Eigen::Index p = 0; p < spec.n_features; ++p) {
    out.matrix.feature_ids.push_back("f" + std::to_string(p + 1));
  }
  out.labels.labels = labels;
  out.labels.num_clusters = spec.num_clusters();
  return out;
}

SyntheticData generate(const MixtureSpec& spec) { return generate_replicate(spec, 0); }

MixtureParams analytic_moments(const MixtureSpec& spec) {
  const Eigen::MatrixXd theta = resolve_theta(spec);
  const Eigen::MatrixXd sd = resolve_noise_sd(spec);
  const int c = spec.num_clusters();
  const double p = spec.n_features;

  // Raw moments of x = theta + s e for symmetric unit-variance noise e.
  const Eigen::ArrayXXd t = theta.array();
  const Eigen::ArrayXXd s2 = sd.array().square();
  const double e4 = spec.noise == NoiseKind::Gaussian ? 3.0 : 1.8;
  const Eigen::ArrayXXd second = t.square() + s2;
  const Eigen::ArrayXXd fourth = t.square().square() + 6.0 * t.square() * s2 + e4 * s2.square();

  MixtureParams m = MixtureParams::zeros(c);
  const double n = spec.n_items();
  for (int a = 0; a < c; ++a) {
    m.weights[a] = spec.n_per_cluster[static_cast<std::size_t>(a)] / n;
    m.mu_diag[a] = second.row(a).sum() / p;
    m.var_diag[a] = (fourth.row(a) - second.row(a).square()).sum() / (p * p);
    for (int b = 0; b < c; ++b) {
      m.mu_pair(a, b) = (t.row(a) * t.row(b)).sum() / p;
      m.var_pair(a, b) =
          (second.row(a) * second.row(b) - t.row(a).square() * t.row(b).square()).sum() / (p * p);
      for (int d = 0; d < c; ++d) {
        m.cov_triple[static_cast<std::size_t>(a)](b, d) =
            ((second.row(a) - t.row(a).square()) * t.row(b) * t.row(d)).sum() / (p * p);
      }
    }
  }
  return m;
}

std::vector<MomentQuery> default_moment_queries(const MixtureSpec& spec, const Partition& labels) {
  const int c = spec.num_clusters();
  const int n = static_cast<int>(labels.size());
  std::vector<std::vector<int>> members(static_cast<std::size_t>(c));
  for (int i = 0; i < n; ++i) members[static_cast<std::size_t>(labels.labels[static_cast<std::size_t>(i)])].push_back(i);

  auto pick = [&](int cluster, std::initializer_list<int> exclude) {
    for (int i : members[static_cast<std::size_t>(cluster)]) {
      if (std::find(exclude.begin(), exclude.end(), i) == exclude.end()) return i;
    }
    return -1;
  };

  std::vector<MomentQuery> q;
  for (int a = 0; a < c; ++a) {
    const int k = pick(a, {});
    q.push_back({"1", MomentKind::Mean, k, n, 0, 0});
    q.push_back({"3", MomentKind::Mean, k, k, 0, 0});
    q.push_back({"4", MomentKind::Variance, k, n, 0, 0});
    q.push_back({"7", MomentKind::Variance, k, k, 0, 0});
    for (int b = 0; b < c; ++b) {
      const int m = pick(b, {k});
      if (m < 0) continue;
      q.push_back({"2", MomentKind::Mean, k, m, 0, 0});
      q.push_back({"5", MomentKind::Variance, k, m, 0, 0});
      q.push_back({"8", MomentKind::Covariance, k, k, k, m});
      for (int d = b; d < c; ++d) {
        const int l = pick(d, {k, m});
        if (l < 0) continue;
        q.push_back({"6", MomentKind::Covariance, k, m, k, l});
      }
    }
    const auto& mem = members[static_cast<std::size_t>(a)];
    if (mem.size() >= 2) {
      q.push_back({"lemma1.1", MomentKind::MeanDifference, mem[0], n, mem[1], n});
    }
    if (mem.size() >= 4) {
      q.push_back({"lemma1.2", MomentKind::MeanDifference, mem[0], mem[2], mem[1], mem[3]});
    }
  }
  return q;
}

std::vector<MomentEstimate> empirical_moments(const MixtureSpec& spec, int replicates,
                                              const std::vector<MomentQuery>& queries,
                                              int threads) {
  if (replicates < 2) throw Error(ErrorKind::Domain, "need at least 2 replicates");
  const std::size_t nq = queries.size();
  const auto reps = static_cast<std::size_t>(replicates);
  Eigen::MatrixXd first(static_cast<Eigen::Index>(nq), static_cast<Eigen::Index>(reps));
  Eigen::MatrixXd second(static_cast<Eigen::Index>(nq), static_cast<Eigen::Index>(reps));

  parallel_for(reps, threads, [&](std::size_t r) {
    const SyntheticData data = generate_replicate(spec, r + 1);
    const JuxtaposedMatrix j = build_juxtaposed(build_gram(data.matrix));
    for (std::size_t i = 0; i < nq; ++i) {
      const auto& qi = queries[i];
      const auto qr = static_cast<Eigen::Index>(i);
      const auto rr = static_cast<Eigen::Index>(r);
      first(qr, rr) = j.values(qi.row1, qi.col1);
      second(qr, rr) = j.values(qi.row2, qi.col2);
    }
  });

  const double count = static_cast<double>(replicates);
  std::vector<MomentEstimate> out;
  out.reserve(nq);
  for (std::size_t i = 0; i < nq; ++i) {
    const auto qr = static_cast<Eigen::Index>(i);
    const Eigen::ArrayXd x = first.row(qr).transpose().array();
    const Eigen::ArrayXd y = second.row(qr).transpose().array();

    // Every statistic is the mean of a per-replicate quantity; its standard
    // error is the quantity's sample sd over sqrt(R).
    Eigen::ArrayXd quantity;
    double scale = 1.0;
    switch (queries[i].kind) {
      case MomentKind::Mean:
        quantity = x;
        break;
      case MomentKind::MeanDifference:
        quantity = x - y;
        break;
      case MomentKind::Variance:
        quantity = (x - x.mean()).square();
        scale = count / (count - 1.0);
        break;
      case MomentKind::Covariance:
        quantity = (x - x.mean()) * (y - y.mean());
        scale = count / (count - 1.0);
        break;
    }
    const double mean = quantity.mean();
    const double sd = std::sqrt((quantity - mean).square().sum() / (count - 1.0));
    out.push_back({queries[i], scale * mean, scale * sd / std::sqrt(count)});
  }
  return out;
}

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> r(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index k = 0; k < m.cols(); ++k) r[static_cast<std::size_t>(k)] = m(i, k);
    rows.push_back(r);
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) return {};
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& r = j[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(r.size()) != cols) throw Error(ErrorKind::Format, "ragged matrix in spec");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = r[static_cast<std::size_t>(k)].get<double>();
  }
  return m;
}

}  // namespace

void to_json(nlohmann::json& j, const MixtureSpec& s) {
  j = nlohmann::json{{"n_per_cluster", s.n_per_cluster},
                     {"n_features", s.n_features},
                     {"theta_sd", s.theta_sd},
                     {"noise_sd", s.noise_sd},
                     {"noise", s.noise == NoiseKind::Gaussian ? "gaussian" : "uniform"},
                     {"seed", s.seed},
                     {"shuffle", s.shuffle}};
  if (s.theta.size() != 0) j["theta"] = matrix_to_json(s.theta);
  if (s.noise_sd_matrix.size() != 0) j["noise_sd_matrix"] = matrix_to_json(s.noise_sd_matrix);
}

void from_json(const nlohmann::json& j, MixtureSpec& s) {
  s = MixtureSpec{};
  s.n_per_cluster = j.at("n_per_cluster").get<std::vector<int>>();
  s.n_features = j.at("n_features").get<int>();
  s.theta_sd = j.value("theta_sd", 1.0);
  s.noise_sd = j.value("noise_sd", 1.0);
  const std::string noise = j.value("noise", std::string("gaussian"));
  if (noise == "gaussian") {
    s.noise = NoiseKind::Gaussian;
  } else if (noise == "uniform") {
    s.noise = NoiseKind::Uniform;
  } else {
    throw Error(ErrorKind::Format, "unknown noise kind '" + noise + "'");
  }
  s.seed = j.value("seed", std::uint64_t{0});
  s.shuffle = j.value("shuffle", true);
  if (j.contains("theta")) s.theta = matrix_from_json(j.at("theta"));
  if (j.contains("noise_sd_matrix")) s.noise_sd_matrix = matrix_from_json(j.at("noise_sd_matrix"));
  validate(s);
}

}  // namespace rjc
