#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/ingest.hpp"
#include "core/juxtapose.hpp"
#include "core/model_select.hpp"

namespace rjc {

inline constexpr int kReportSchema = 1;

struct InputDescriptor {
  std::string path;
  std::string orientation = "rows";
  std::string transform = "auto";
  bool transform_applied = false;
  long n_items = 0;
  long n_features = 0;
  std::vector<std::string> item_ids;
};

struct RunReport {
  int schema = kReportSchema;
  InputDescriptor input;
  SelectConfig config;
  ClusterResult result;
  // Wall-clock seconds per stage; excluded from determinism comparisons.
  std::map<std::string, double> timings;
};

void to_json(nlohmann::json& j, const ClusterResult& r);
void from_json(const nlohmann::json& j, ClusterResult& r);
void to_json(nlohmann::json& j, const RunReport& r);
void from_json(const nlohmann::json& j, RunReport& r);

// Linear-interpolation percentile (q in [0, 1]).
double percentile(std::vector<double> values, double q);

/// Plain (P3) pixmap of R with rows and columns grouped by cluster. Grey
/// levels map the 1st..99th percentile range of R linearly onto 0..255.
std::string render_heatmap(const GramMatrix& r, const Partition& labels);
void write_heatmap(const GramMatrix& r, const Partition& labels, const std::string& path);

// Item order that groups clusters together, stable within a cluster.
std::vector<Eigen::Index> cluster_order(const Partition& labels);

}  // namespace rjc
