#include "rjc/rjc.h"

#include <chrono>
#include <cstring>
#include <new>
#include <string>

#include "core/errors.hpp"
#include "core/evaluation.hpp"
#include "core/ingest.hpp"
#include "core/juxtapose.hpp"
#include "core/model_select.hpp"
#include "core/parallel.hpp"
#include "core/report.hpp"
#include "core/synth.hpp"

struct rjc_matrix {
  rjc::FeatureMatrix data;
  std::string source;
  std::string orientation = "rows";
  std::string transform = "off";
  bool transform_applied = false;
  double ingest_seconds = 0.0;
};

struct rjc_partition {
  rjc::Partition partition;
};

struct rjc_spec {
  rjc::MixtureSpec spec;
};

struct rjc_result {
  rjc::RunReport report;
  rjc::GramMatrix gram;
};

namespace {

thread_local std::string g_last_error;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

rjc_status status_for(rjc::ErrorKind kind) {
  switch (kind) {
    case rjc::ErrorKind::Io:
      return RJC_ERR_IO;
    case rjc::ErrorKind::Parse:
      return RJC_ERR_PARSE;
    case rjc::ErrorKind::Format:
      return RJC_ERR_FORMAT;
    case rjc::ErrorKind::Dimension:
    case rjc::ErrorKind::Index:
      return RJC_ERR_DIMENSION;
    case rjc::ErrorKind::Domain:
      return RJC_ERR_DOMAIN;
    case rjc::ErrorKind::DegenerateFeature:
      return RJC_ERR_DEGENERATE_FEATURE;
    case rjc::ErrorKind::DegenerateCluster:
      return RJC_ERR_DEGENERATE_CLUSTER;
    case rjc::ErrorKind::Numerical:
      return RJC_ERR_NUMERICAL;
    case rjc::ErrorKind::Contract:
      return RJC_ERR_INTERNAL;
  }
  return RJC_ERR_INTERNAL;
}

rjc_status fail(rjc_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename Body>
rjc_status guarded(Body&& body) {
  try {
    g_last_error.clear();
    body();
    return RJC_OK;
  } catch (const rjc::Error& e) {
    return fail(status_for(e.kind()), e.what());
  } catch (const nlohmann::json::parse_error& e) {
    return fail(RJC_ERR_PARSE, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(RJC_ERR_FORMAT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RJC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RJC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RJC_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define RJC_REQUIRE(cond, what) \
  do {                          \
    if (!(cond)) return fail(RJC_ERR_INVALID_ARGUMENT, what); \
  } while (0)

}  // namespace

extern "C" {

int rjc_status_is_input_error(rjc_status status) {
  return status != RJC_OK && status != RJC_ERR_NUMERICAL &&
         status != RJC_ERR_DEGENERATE_CLUSTER && status != RJC_ERR_INTERNAL;
}

const char* rjc_status_name(rjc_status status) {
  switch (status) {
    case RJC_OK: return "ok";
    case RJC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RJC_ERR_IO: return "i/o error";
    case RJC_ERR_PARSE: return "parse error";
    case RJC_ERR_FORMAT: return "format error";
    case RJC_ERR_DIMENSION: return "dimension error";
    case RJC_ERR_DOMAIN: return "domain error";
    case RJC_ERR_DEGENERATE_FEATURE: return "degenerate feature";
    case RJC_ERR_DEGENERATE_CLUSTER: return "degenerate cluster";
    case RJC_ERR_NUMERICAL: return "numerical error";
    case RJC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* rjc_last_error(void) { return g_last_error.c_str(); }

void rjc_string_free(char* s) { delete[] s; }

const char* rjc_version(void) { return "1.0.0"; }

void rjc_config_default(rjc_config* config) {
  if (!config) return;
  const rjc::SelectConfig d;
  config->cmax = d.cmax;
  config->init_max_iter = d.init_max_iter;
  config->init_tol = d.init_tol;
  config->max_iter = d.max_iter;
  config->tol = d.tol;
  config->rel_floor = d.rel_floor;
  config->threads = 0;
  config->seed = d.seed;
}

rjc_status rjc_matrix_load(const char* path, rjc_orientation orientation, rjc_matrix** out) {
  RJC_REQUIRE(path && out, "null argument");
  RJC_REQUIRE(orientation == RJC_ITEMS_IN_ROWS || orientation == RJC_ITEMS_IN_COLUMNS,
              "unknown orientation");
  return guarded([&] {
    const auto start = Clock::now();
    auto m = std::make_unique<rjc_matrix>();
    m->data = rjc::load_matrix(path, orientation == RJC_ITEMS_IN_ROWS
                                         ? rjc::Orientation::ItemsInRows
                                         : rjc::Orientation::ItemsInColumns);
    m->source = path;
    m->orientation = orientation == RJC_ITEMS_IN_ROWS ? "rows" : "columns";
    m->ingest_seconds = seconds_since(start);
    *out = m.release();
  });
}

rjc_status rjc_matrix_from_values(const double* values, size_t n_items, size_t n_features,
                                  rjc_matrix** out) {
  RJC_REQUIRE(values && out, "null argument");
  return guarded([&] {
    auto m = std::make_unique<rjc_matrix>();
    m->data.values.resize(static_cast<Eigen::Index>(n_items), static_cast<Eigen::Index>(n_features));
    for (size_t i = 0; i < n_items; ++i) {
      for (size_t p = 0; p < n_features; ++p) {
        m->data.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p)) =
            values[i * n_features + p];
      }
      m->data.item_ids.push_back("item" + std::to_string(i + 1));
    }
    for (size_t p = 0; p < n_features; ++p) m->data.feature_ids.push_back("f" + std::to_string(p + 1));
    rjc::validate(m->data);
    m->source = "<memory>";
    *out = m.release();
  });
}

void rjc_matrix_free(rjc_matrix* m) { delete m; }

size_t rjc_matrix_items(const rjc_matrix* m) {
  return m ? static_cast<size_t>(m->data.n_items()) : 0;
}

size_t rjc_matrix_features(const rjc_matrix* m) {
  return m ? static_cast<size_t>(m->data.n_features()) : 0;
}

rjc_status rjc_matrix_value(const rjc_matrix* m, size_t item, size_t feature, double* out) {
  RJC_REQUIRE(m && out, "null argument");
  if (item >= rjc_matrix_items(m) || feature >= rjc_matrix_features(m)) {
    return fail(RJC_ERR_DIMENSION, "matrix index out of range");
  }
  *out = m->data.values(static_cast<Eigen::Index>(item), static_cast<Eigen::Index>(feature));
  return RJC_OK;
}

rjc_status rjc_matrix_transform(rjc_matrix* m, rjc_transform mode, int* applied) {
  RJC_REQUIRE(m, "null matrix");
  RJC_REQUIRE(mode == RJC_TRANSFORM_AUTO || mode == RJC_TRANSFORM_FORCE || mode == RJC_TRANSFORM_OFF,
              "unknown transform mode");
  return guarded([&] {
    const auto start = Clock::now();
    const rjc::TransformMode tm = mode == RJC_TRANSFORM_AUTO    ? rjc::TransformMode::Auto
                                  : mode == RJC_TRANSFORM_FORCE ? rjc::TransformMode::Force
                                                                : rjc::TransformMode::Off;
    auto outcome = rjc::gene_transform(m->data, tm);
    m->data = std::move(outcome.matrix);
    m->transform = mode == RJC_TRANSFORM_AUTO ? "auto" : mode == RJC_TRANSFORM_FORCE ? "force" : "off";
    m->transform_applied = outcome.applied;
    m->ingest_seconds += seconds_since(start);
    if (applied) *applied = outcome.applied ? 1 : 0;
  });
}

rjc_status rjc_matrix_write(const rjc_matrix* m, const char* path) {
  RJC_REQUIRE(m && path, "null argument");
  return guarded([&] { rjc::write_matrix(m->data, path); });
}

rjc_status rjc_matrix_export_gram(const rjc_matrix* m, const char* path) {
  RJC_REQUIRE(m && path, "null argument");
  return guarded([&] { rjc::write_csv(rjc::build_gram(m->data).values, path); });
}

rjc_status rjc_matrix_export_juxtaposed(const rjc_matrix* m, const char* path) {
  RJC_REQUIRE(m && path, "null argument");
  return guarded(
      [&] { rjc::write_csv(rjc::build_juxtaposed(rjc::build_gram(m->data)).values, path); });
}

rjc_status rjc_partition_load(const char* path, rjc_partition** out) {
  RJC_REQUIRE(path && out, "null argument");
  return guarded([&] {
    auto p = std::make_unique<rjc_partition>();
    p->partition = rjc::load_labels(path);
    *out = p.release();
  });
}

rjc_status rjc_partition_from_labels(const int* labels, size_t n, rjc_partition** out) {
  RJC_REQUIRE(labels && out, "null argument");
  RJC_REQUIRE(n > 0, "empty label array");
  return guarded([&] {
    auto p = std::make_unique<rjc_partition>();
    p->partition = rjc::canonicalize(std::vector<int>(labels, labels + n));
    *out = p.release();
  });
}

void rjc_partition_free(rjc_partition* p) { delete p; }

size_t rjc_partition_size(const rjc_partition* p) { return p ? p->partition.size() : 0; }

int rjc_partition_clusters(const rjc_partition* p) { return p ? p->partition.num_clusters : 0; }

rjc_status rjc_partition_labels(const rjc_partition* p, int* out, size_t n) {
  RJC_REQUIRE(p && out, "null argument");
  if (n != p->partition.size()) return fail(RJC_ERR_DIMENSION, "label buffer has the wrong size");
  for (size_t i = 0; i < n; ++i) out[i] = p->partition.labels[i] + 1;
  return RJC_OK;
}

rjc_status rjc_partition_write(const rjc_partition* p, const char* path) {
  RJC_REQUIRE(p && path, "null argument");
  return guarded([&] { rjc::write_labels(p->partition, path); });
}

rjc_status rjc_ami(const rjc_partition* a, const rjc_partition* b, double* out) {
  RJC_REQUIRE(a && b && out, "null argument");
  return guarded([&] { *out = rjc::ami(a->partition, b->partition); });
}

rjc_status rjc_spec_create(const int* n_per_cluster, size_t n_clusters, int n_features,
                           double noise_sd, uint64_t seed, rjc_spec** out) {
  RJC_REQUIRE(n_per_cluster && out, "null argument");
  return guarded([&] {
    auto s = std::make_unique<rjc_spec>();
    s->spec.n_per_cluster.assign(n_per_cluster, n_per_cluster + n_clusters);
    s->spec.n_features = n_features;
    s->spec.noise_sd = noise_sd;
    s->spec.seed = seed;
    rjc::validate(s->spec);
    *out = s.release();
  });
}

rjc_status rjc_spec_from_json(const char* json, rjc_spec** out) {
  RJC_REQUIRE(json && out, "null argument");
  return guarded([&] {
    auto s = std::make_unique<rjc_spec>();
    s->spec = nlohmann::json::parse(json).get<rjc::MixtureSpec>();
    *out = s.release();
  });
}

rjc_status rjc_spec_to_json(const rjc_spec* s, char** out) {
  RJC_REQUIRE(s && out, "null argument");
  return guarded([&] { *out = copy_string(nlohmann::json(s->spec).dump(2)); });
}

void rjc_spec_free(rjc_spec* s) { delete s; }

rjc_status rjc_generate(const rjc_spec* s, rjc_matrix** matrix, rjc_partition** labels) {
  RJC_REQUIRE(s && matrix && labels, "null argument");
  return guarded([&] {
    auto data = rjc::generate(s->spec);
    auto m = std::make_unique<rjc_matrix>();
    m->data = std::move(data.matrix);
    m->source = "<synthetic>";
    auto p = std::make_unique<rjc_partition>();
    p->partition = std::move(data.labels);
    *matrix = m.release();
    *labels = p.release();
  });
}

rjc_status rjc_cluster(const rjc_matrix* m, const rjc_config* config, rjc_result** out) {
  RJC_REQUIRE(m && out, "null argument");
  rjc_config cfg;
  rjc_config_default(&cfg);
  if (config) cfg = *config;
  RJC_REQUIRE(cfg.cmax >= 0, "cmax must be non-negative");
  RJC_REQUIRE(cfg.max_iter >= 1 && cfg.init_max_iter >= 1, "iteration limits must be positive");
  RJC_REQUIRE(cfg.tol > 0.0 && cfg.init_tol > 0.0, "tolerances must be positive");
  RJC_REQUIRE(cfg.rel_floor > 0.0 && cfg.rel_floor < 1.0, "rel_floor must lie in (0, 1)");
  RJC_REQUIRE(cfg.threads >= 0, "threads must be non-negative");

  return guarded([&] {
    const auto start = Clock::now();
    auto r = std::make_unique<rjc_result>();
    rjc::SelectConfig sc;
    sc.cmax = cfg.cmax;
    sc.init_max_iter = cfg.init_max_iter;
    sc.init_tol = cfg.init_tol;
    sc.max_iter = cfg.max_iter;
    sc.tol = cfg.tol;
    sc.rel_floor = cfg.rel_floor;
    sc.threads = rjc::resolve_threads(cfg.threads);
    sc.seed = cfg.seed;

    const auto construct_start = Clock::now();
    r->gram = rjc::build_gram(m->data, sc.threads);
    const rjc::JuxtaposedMatrix j = rjc::build_juxtaposed(r->gram);
    const double construct_seconds = seconds_since(construct_start);

    const auto select_start = Clock::now();
    rjc::ClusterResult result = rjc::select(j, sc);
    const double select_seconds = seconds_since(select_start);

    auto& report = r->report;
    report.input.path = m->source;
    report.input.orientation = m->orientation;
    report.input.transform = m->transform;
    report.input.transform_applied = m->transform_applied;
    report.input.n_items = static_cast<long>(m->data.n_items());
    report.input.n_features = static_cast<long>(m->data.n_features());
    report.input.item_ids = m->data.item_ids;
    report.config = sc;
    report.config.cmax = sc.cmax == 0 ? rjc::default_cmax(m->data.n_items()) : sc.cmax;
    report.result = std::move(result);
    report.timings = {{"ingest", m->ingest_seconds},
                      {"construct", construct_seconds},
                      {"select", select_seconds},
                      {"total", seconds_since(start) + m->ingest_seconds}};
    *out = r.release();
  });
}

void rjc_result_free(rjc_result* r) { delete r; }

int rjc_result_selected_clusters(const rjc_result* r) {
  return r ? r->report.result.selected_c : 0;
}

rjc_status rjc_result_partition(const rjc_result* r, rjc_partition** out) {
  RJC_REQUIRE(r && out, "null argument");
  return guarded([&] {
    auto p = std::make_unique<rjc_partition>();
    p->partition = r->report.result.labels;
    *out = p.release();
  });
}

rjc_status rjc_result_to_json(const rjc_result* r, char** out) {
  RJC_REQUIRE(r && out, "null argument");
  return guarded([&] { *out = copy_string(nlohmann::json(r->report).dump(2)); });
}

rjc_status rjc_result_export_heatmap(const rjc_result* r, const char* path) {
  RJC_REQUIRE(r && path, "null argument");
  return guarded([&] { rjc::write_heatmap(r->gram, r->report.result.labels, path); });
}

}  // extern "C"
