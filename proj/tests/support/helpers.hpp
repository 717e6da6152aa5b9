#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "core/errors.hpp"
#include "core/ingest.hpp"

namespace testing {

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed,
                                     double lo = -1.0, double hi = 1.0) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = u(gen);
  return m;
}

// Random responsibilities with rows on the simplex.
inline Eigen::MatrixXd random_resp(Eigen::Index n, Eigen::Index c, unsigned seed) {
  Eigen::MatrixXd q = random_matrix(n, c, seed, 0.05, 1.0);
  for (Eigen::Index i = 0; i < n; ++i) q.row(i) /= q.row(i).sum();
  return q;
}

inline rjc::Partition partition(std::vector<int> zero_based) {
  return rjc::canonicalize(zero_based);
}

// Per-test scratch directory under the system temp dir.
inline std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("rjc_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

template <typename F>
rjc::ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const rjc::Error& e) {
    return e.kind();
  }
  FAIL("expected rjc::Error");
  return rjc::ErrorKind::Contract;
}

}  // namespace testing

#include "core/juxtapose.hpp"
#include "core/synth.hpp"

namespace testing {

// Two or more clusters whose mean vectors are far apart relative to the noise.
inline rjc::MixtureSpec separated_spec(std::vector<int> sizes, int features, double noise_sd,
                                       std::uint64_t seed) {
  rjc::MixtureSpec s;
  s.n_per_cluster = std::move(sizes);
  s.n_features = features;
  s.theta_sd = 1.0;
  s.noise_sd = noise_sd;
  s.seed = seed;
  return s;
}

struct Dataset {
  rjc::SyntheticData data;
  rjc::JuxtaposedMatrix j;
};

inline Dataset make_dataset(const rjc::MixtureSpec& spec) {
  Dataset d{rjc::generate(spec), {}};
  d.j = rjc::build_juxtaposed(rjc::build_gram(d.data.matrix));
  return d;
}

// Reorders items: new item i is old item perm[i]. Rebuilds J from X.
inline rjc::JuxtaposedMatrix permuted_j(const Eigen::MatrixXd& x, const std::vector<int>& perm) {
  Eigen::MatrixXd y(x.rows(), x.cols());
  for (std::size_t i = 0; i < perm.size(); ++i) y.row(static_cast<Eigen::Index>(i)) = x.row(perm[i]);
  return rjc::build_juxtaposed(rjc::build_gram(y));
}

inline std::vector<int> shuffled(int n, unsigned seed) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  std::mt19937 gen(seed);
  std::shuffle(p.begin(), p.end(), gen);
  return p;
}

}  // namespace testing
