#pragma once

#include <vector>

#include <Eigen/Dense>

#include "core/ingest.hpp"

namespace rjc {

struct ContingencyTable {
  Eigen::MatrixXi counts;
  std::vector<long> row_sums;
  std::vector<long> col_sums;
  long total = 0;
};

ContingencyTable contingency(const Partition& a, const Partition& b);

// All logarithms are natural.
double entropy(const Partition& p);
double entropy(const std::vector<long>& cluster_sizes);
double mutual_information(const ContingencyTable& t);

/// Expectation of MI over all tables with the margins of `t` under the
/// hypergeometric (permutation) model; factorials via lgamma.
double expected_mi(const ContingencyTable& t);

// True when both partitions group the items identically.
bool same_partition(const Partition& a, const Partition& b);

/// (MI - E[MI]) / (sqrt(H(A) H(B)) - E[MI]). A zero denominator yields 1 for
/// identical partitions and 0 otherwise.
double ami(const Partition& a, const Partition& b);

}  // namespace rjc
