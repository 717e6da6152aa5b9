#include "core/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace rjc {

ContingencyTable contingency(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::Dimension, "partitions have different lengths (" +
                                          std::to_string(a.size()) + " vs " +
                                          std::to_string(b.size()) + ")");
  }
  if (a.size() == 0) throw Error(ErrorKind::Dimension, "partitions are empty");
  const Partition ca = canonicalize(a.labels);
  const Partition cb = canonicalize(b.labels);

  ContingencyTable t;
  t.counts = Eigen::MatrixXi::Zero(ca.num_clusters, cb.num_clusters);
  for (std::size_t i = 0; i < ca.size(); ++i) ++t.counts(ca.labels[i], cb.labels[i]);
  t.row_sums.resize(static_cast<std::size_t>(ca.num_clusters));
  t.col_sums.resize(static_cast<std::size_t>(cb.num_clusters));
  for (int r = 0; r < ca.num_clusters; ++r) t.row_sums[static_cast<std::size_t>(r)] = t.counts.row(r).sum();
  for (int c = 0; c < cb.num_clusters; ++c) t.col_sums[static_cast<std::size_t>(c)] = t.counts.col(c).sum();
  t.total = static_cast<long>(ca.size());
  return t;
}

double entropy(const std::vector<long>& cluster_sizes) {
  long n = 0;
  for (long s : cluster_sizes) n += s;
  if (n == 0) return 0.0;
  double h = 0.0;
  for (long s : cluster_sizes) {
    if (s == 0) continue;
    const double p = static_cast<double>(s) / static_cast<double>(n);
    h -= p * std::log(p);
  }
  return h;
}

double entropy(const Partition& p) {
  if (p.size() == 0) throw Error(ErrorKind::Dimension, "entropy of an empty partition");
  const Partition c = canonicalize(p.labels);
  const auto counts = c.counts();
  return entropy(std::vector<long>(counts.begin(), counts.end()));
}

double mutual_information(const ContingencyTable& t) {
  const double n = static_cast<double>(t.total);
  double mi = 0.0;
  for (Eigen::Index i = 0; i < t.counts.rows(); ++i) {
    for (Eigen::Index j = 0; j < t.counts.cols(); ++j) {
      const int nij = t.counts(i, j);
      if (nij == 0) continue;
      const double a = static_cast<double>(t.row_sums[static_cast<std::size_t>(i)]);
      const double b = static_cast<double>(t.col_sums[static_cast<std::size_t>(j)]);
      mi += (nij / n) * std::log(n * nij / (a * b));
    }
  }
  return mi;
}

double expected_mi(const ContingencyTable& t) {
  const long n = t.total;
  const double nd = static_cast<double>(n);
  const double lg_n = std::lgamma(nd + 1.0);
  double emi = 0.0;
  for (long a : t.row_sums) {
    for (long b : t.col_sums) {
      const double common = std::lgamma(a + 1.0) + std::lgamma(b + 1.0) +
                            std::lgamma(nd - a + 1.0) + std::lgamma(nd - b + 1.0) - lg_n;
      const long lo = std::max(1L, a + b - n);
      const long hi = std::min(a, b);
      for (long k = lo; k <= hi; ++k) {
        const double log_p = common - std::lgamma(k + 1.0) - std::lgamma(a - k + 1.0) -
                             std::lgamma(b - k + 1.0) - std::lgamma(nd - a - b + k + 1.0);
        const double term = (k / nd) * std::log(nd * k / (static_cast<double>(a) * b));
        emi += term * std::exp(log_p);
      }
    }
  }
  return emi;
}

bool same_partition(const Partition& a, const Partition& b) {
  return a.size() == b.size() && canonicalize(a.labels).labels == canonicalize(b.labels).labels;
}

double ami(const Partition& a, const Partition& b) {
  const ContingencyTable t = contingency(a, b);
  if (same_partition(a, b)) return 1.0;

  const double h_a = entropy(std::vector<long>(t.row_sums));
  const double h_b = entropy(std::vector<long>(t.col_sums));
  const double mi = mutual_information(t);
  const double emi = expected_mi(t);
  const double denom = std::sqrt(h_a * h_b) - emi;
  if (denom == 0.0) return 0.0;
  return (mi - emi) / denom;
}

}  // namespace rjc
