#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rjc {

// N x P data; rows are items, columns are features.
struct FeatureMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> item_ids;
  std::vector<std::string> feature_ids;

  Eigen::Index n_items() const { return values.rows(); }
  Eigen::Index n_features() const { return values.cols(); }
};

// Hard cluster assignment. Labels are 0-based in memory and 1-based on disk.
struct Partition {
  std::vector<int> labels;
  int num_clusters = 0;

  std::size_t size() const { return labels.size(); }
  std::vector<int> counts() const;
};

enum class Orientation { ItemsInRows, ItemsInColumns };
enum class TransformMode { Auto, Force, Off };

// Relabels to 0..C-1 in order of first occurrence.
Partition canonicalize(const std::vector<int>& raw_labels);
Partition canonicalize(const std::vector<std::string>& raw_labels);

// Checks the FeatureMatrix invariants (finite entries, N >= 2, P >= 1, id
// lengths). Throws rjc::Error on violation.
void validate(const FeatureMatrix& x);

/// Reads a comma, tab or semicolon separated numeric table. A header row is
/// recognised when every cell after the first is non-numeric; an identifier
/// column when the first cell of every data row is non-numeric.
FeatureMatrix load_matrix(const std::string& path, Orientation orientation);
FeatureMatrix parse_matrix(const std::string& text, Orientation orientation);

/// Writes items in rows with an identifier header, 17 significant digits.
void write_matrix(const FeatureMatrix& x, const std::string& path);

struct TransformOutcome {
  FeatureMatrix matrix;
  bool applied = false;
};

/// Per feature: log, subtract the median over items, divide by the sample
/// standard deviation (n-1) of the logs. Auto applies this only when every
/// entry is strictly positive.
TransformOutcome gene_transform(const FeatureMatrix& x, TransformMode mode);

// Median with the mean-of-middle-two rule for even lengths.
double median(std::vector<double> values);

/// One label per line (the last field is used when a line has several), or a
/// single line of delimited labels.
Partition load_labels(const std::string& path);
Partition parse_labels(const std::string& text);
void write_labels(const Partition& p, const std::string& path);

std::string read_text_file(const std::string& path);
char detect_delimiter(const std::string& first_line);

}  // namespace rjc
