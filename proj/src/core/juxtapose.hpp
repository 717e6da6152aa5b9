#pragma once

#include <string>

#include <Eigen/Dense>

#include "core/ingest.hpp"

namespace rjc {

// R = X X^T / P.
struct GramMatrix {
  Eigen::MatrixXd values;
  Eigen::Index n_features = 0;

  Eigen::Index size() const { return values.rows(); }
};

// N x (N+1) rearrangement of R: off-diagonals kept, the diagonal of R moved to
// the last column, and each diagonal slot replaced by its row's off-diagonal
// mean.
struct JuxtaposedMatrix {
  Eigen::MatrixXd values;

  Eigen::Index n_items() const { return values.rows(); }
  Eigen::Index self_column() const { return values.rows(); }
};

GramMatrix build_gram(const FeatureMatrix& x, int threads = 1);
GramMatrix build_gram(const Eigen::MatrixXd& x, int threads = 1);

JuxtaposedMatrix build_juxtaposed(const GramMatrix& r);

// Row-major CSV with 17 significant digits, no header.
void write_csv(const Eigen::MatrixXd& m, const std::string& path);

}  // namespace rjc
