#include "core/juxtapose.hpp"

#include <fstream>
#include <iomanip>

#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace rjc {

GramMatrix build_gram(const Eigen::MatrixXd& x, int threads) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  if (p < 1) throw Error(ErrorKind::Dimension, "gram matrix needs at least one feature");

  GramMatrix r;
  r.n_features = p;
  r.values.resize(n, n);
  // Upper triangle by row; the lower triangle is mirrored afterwards.
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t ku) {
    const auto k = static_cast<Eigen::Index>(ku);
    for (Eigen::Index l = k; l < n; ++l) {
      long double acc = 0.0L;
      for (Eigen::Index q = 0; q < p; ++q) {
        acc += static_cast<long double>(x(k, q)) * static_cast<long double>(x(l, q));
      }
      r.values(k, l) = static_cast<double>(acc / static_cast<long double>(p));
    }
  });
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < k; ++l) r.values(k, l) = r.values(l, k);
  }
  return r;
}

GramMatrix build_gram(const FeatureMatrix& x, int threads) { return build_gram(x.values, threads); }

JuxtaposedMatrix build_juxtaposed(const GramMatrix& r) {
  const Eigen::Index n = r.size();
  if (n < 2) throw Error(ErrorKind::Dimension, "juxtaposed matrix needs at least 2 items");

  JuxtaposedMatrix j;
  j.values.resize(n, n + 1);
  for (Eigen::Index k = 0; k < n; ++k) {
    double off_sum = 0.0;
    for (Eigen::Index l = 0; l < n; ++l) {
      if (l == k) continue;
      j.values(k, l) = r.values(k, l);
      off_sum += r.values(k, l);
    }
    j.values(k, k) = off_sum / static_cast<double>(n - 1);
    j.values(k, n) = r.values(k, k);
  }
  return j;
}

void write_csv(const Eigen::MatrixXd& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

}  // namespace rjc
