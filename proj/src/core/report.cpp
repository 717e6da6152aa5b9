#include "core/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "core/errors.hpp"

namespace rjc {

namespace {

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

double number_from(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

void to_json(nlohmann::json& j, const ClusterResult& r) {
  std::vector<int> labels;
  for (int l : r.labels.labels) labels.push_back(l + 1);

  nlohmann::json resp = nlohmann::json::array();
  for (Eigen::Index k = 0; k < r.responsibilities.rows(); ++k) {
    std::vector<double> row(static_cast<std::size_t>(r.responsibilities.cols()));
    for (Eigen::Index a = 0; a < r.responsibilities.cols(); ++a) {
      row[static_cast<std::size_t>(a)] = r.responsibilities(k, a);
    }
    resp.push_back(row);
  }

  nlohmann::json trace = nlohmann::json::array();
  for (const auto& e : r.bic_trace) {
    nlohmann::json t{{"C", e.num_clusters},
                     {"loglik", number_or_null(e.loglik)},
                     {"M", e.param_count},
                     {"bic", number_or_null(e.bic)},
                     {"status", to_string(e.status)},
                     {"iterations", e.iterations},
                     {"converged", e.converged}};
    if (!e.message.empty()) t["message"] = e.message;
    trace.push_back(std::move(t));
  }

  j = nlohmann::json{{"selected_C", r.selected_c},
                     {"labels", labels},
                     {"responsibilities", std::move(resp)},
                     {"bic_trace", std::move(trace)},
                     {"params", r.params}};
}

void from_json(const nlohmann::json& j, ClusterResult& r) {
  r = ClusterResult{};
  r.selected_c = j.at("selected_C").get<int>();
  std::vector<int> labels = j.at("labels").get<std::vector<int>>();
  for (int& l : labels) --l;
  r.labels.labels = std::move(labels);
  r.labels.num_clusters = r.selected_c;

  const auto& resp = j.at("responsibilities");
  r.responsibilities.resize(static_cast<Eigen::Index>(resp.size()), r.selected_c);
  for (std::size_t k = 0; k < resp.size(); ++k) {
    const auto row = resp[k].get<std::vector<double>>();
    if (static_cast<int>(row.size()) != r.selected_c) {
      throw Error(ErrorKind::Format, "responsibility row has the wrong width");
    }
    for (int a = 0; a < r.selected_c; ++a) {
      r.responsibilities(static_cast<Eigen::Index>(k), a) = row[static_cast<std::size_t>(a)];
    }
  }

  for (const auto& t : j.at("bic_trace")) {
    BicEntry e;
    e.num_clusters = t.at("C").get<int>();
    e.loglik = number_from(t.at("loglik"));
    e.param_count = t.at("M").get<long>();
    e.bic = number_from(t.at("bic"));
    e.status = candidate_status_from(t.at("status").get<std::string>());
    e.iterations = t.value("iterations", 0);
    e.converged = t.value("converged", false);
    e.message = t.value("message", std::string());
    r.bic_trace.push_back(std::move(e));
  }
  r.params = j.at("params").get<MixtureParams>();
}

void to_json(nlohmann::json& j, const RunReport& r) {
  j = nlohmann::json{
      {"schema", r.schema},
      {"input",
       {{"path", r.input.path},
        {"orientation", r.input.orientation},
        {"transform", r.input.transform},
        {"transform_applied", r.input.transform_applied},
        {"n_items", r.input.n_items},
        {"n_features", r.input.n_features},
        {"item_ids", r.input.item_ids}}},
      {"config",
       {{"cmax", r.config.cmax},
        {"init_max_iter", r.config.init_max_iter},
        {"init_tol", r.config.init_tol},
        {"max_iter", r.config.max_iter},
        {"tol", r.config.tol},
        {"rel_floor", r.config.rel_floor},
        {"seed", r.config.seed}}},
      {"result", r.result},
      {"timings", r.timings}};
}

void from_json(const nlohmann::json& j, RunReport& r) {
  r = RunReport{};
  r.schema = j.at("schema").get<int>();
  if (r.schema != kReportSchema) {
    throw Error(ErrorKind::Format, "unsupported report schema " + std::to_string(r.schema));
  }
  const auto& in = j.at("input");
  r.input.path = in.at("path").get<std::string>();
  r.input.orientation = in.at("orientation").get<std::string>();
  r.input.transform = in.at("transform").get<std::string>();
  r.input.transform_applied = in.at("transform_applied").get<bool>();
  r.input.n_items = in.at("n_items").get<long>();
  r.input.n_features = in.at("n_features").get<long>();
  r.input.item_ids = in.at("item_ids").get<std::vector<std::string>>();

  const auto& c = j.at("config");
  r.config.cmax = c.at("cmax").get<int>();
  r.config.init_max_iter = c.at("init_max_iter").get<int>();
  r.config.init_tol = c.at("init_tol").get<double>();
  r.config.max_iter = c.at("max_iter").get<int>();
  r.config.tol = c.at("tol").get<double>();
  r.config.rel_floor = c.at("rel_floor").get<double>();
  r.config.seed = c.at("seed").get<std::uint64_t>();

  r.result = j.at("result").get<ClusterResult>();
  r.timings = j.value("timings", std::map<std::string, double>{});
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw Error(ErrorKind::Dimension, "percentile of empty sequence");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<Eigen::Index> cluster_order(const Partition& labels) {
  std::vector<Eigen::Index> order(labels.size());
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return labels.labels[static_cast<std::size_t>(x)] < labels.labels[static_cast<std::size_t>(y)];
  });
  return order;
}

std::string render_heatmap(const GramMatrix& r, const Partition& labels) {
  const Eigen::Index n = r.size();
  if (static_cast<Eigen::Index>(labels.size()) != n) {
    throw Error(ErrorKind::Dimension, "heatmap labels do not match the matrix size");
  }
  std::vector<double> all(r.values.data(), r.values.data() + r.values.size());
  const double lo = percentile(all, 0.01);
  const double hi = percentile(all, 0.99);
  const auto order = cluster_order(labels);

  std::ostringstream out;
  out << "P3\n" << n << ' ' << n << "\n255\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double v = r.values(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(k)]);
      int level = 128;
      if (hi > lo) {
        const double t = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
        level = static_cast<int>(std::lround(255.0 * t));
      }
      if (k) out << ' ';
      out << level << ' ' << level << ' ' << level;
    }
    out << '\n';
  }
  return out.str();
}

void write_heatmap(const GramMatrix& r, const Partition& labels, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << render_heatmap(r, labels);
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

}  // namespace rjc
