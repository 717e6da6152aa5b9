// rjc command-line front end. Talks to the library only through rjc.h.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rjc/rjc.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

// Thrown to abort a subcommand with a given exit code.
struct ExitError {
  int code;
  std::string message;
};

void check(rjc_status status, const std::string& context) {
  if (status == RJC_OK) return;
  std::string msg = context + ": " + rjc_status_name(status);
  const char* detail = rjc_last_error();
  if (detail && *detail) msg += ": " + std::string(detail);
  throw ExitError{rjc_status_is_input_error(status) ? kExitInput : kExitNumerical, msg};
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() {
    if (ptr) Free(ptr);
  }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using Matrix = Handle<rjc_matrix, rjc_matrix_free>;
using Labels = Handle<rjc_partition, rjc_partition_free>;
using Result = Handle<rjc_result, rjc_result_free>;
using Spec = Handle<rjc_spec, rjc_spec_free>;

std::string take_string(char* s) {
  std::string out(s ? s : "");
  rjc_string_free(s);
  return out;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ExitError{kExitInput, "cannot write '" + path + "'"};
  out << contents;
  if (!out) throw ExitError{kExitInput, "write failed for '" + path + "'"};
}

int threads_from_env(int flag_value) {
  if (flag_value >= 0) return flag_value;
  if (const char* env = std::getenv("RJC_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 0) return v;
    } catch (const std::exception&) {
    }
    throw ExitError{kExitInput, std::string("RJC_THREADS must be a non-negative integer, got '") +
                                    env + "'"};
  }
  return 0;
}

const std::map<std::string, rjc_orientation> kOrientations{
    {"rows", RJC_ITEMS_IN_ROWS}, {"columns", RJC_ITEMS_IN_COLUMNS}};
const std::map<std::string, rjc_transform> kTransforms{
    {"auto", RJC_TRANSFORM_AUTO}, {"force", RJC_TRANSFORM_FORCE}, {"off", RJC_TRANSFORM_OFF}};

struct FitFlags {
  std::string orientation = "rows";
  std::string transform = "auto";
  std::optional<int> cmax;
  std::uint64_t seed = 0;
  int threads = -1;
  int max_iter = 100;
  double tol = 1e-6;
  int init_max_iter = 200;
  double init_tol = 1e-6;
  double rel_floor = 1e-8;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--orientation", orientation, "Items in 'rows' or 'columns' of the file")
        ->check(CLI::IsMember({"rows", "columns"}));
    cmd->add_option("--transform", transform, "Log/median/sd transform: auto, force or off")
        ->check(CLI::IsMember({"auto", "force", "off"}));
    cmd->add_option("--cmax", cmax, "Largest cluster count tried (default min(9, N-2))");
    cmd->add_option("--seed", seed, "Seed echoed into the report");
    cmd->add_option("--threads", threads, "Worker threads (0 = all cores; default $RJC_THREADS or 0)");
    cmd->add_option("--max-iter", max_iter, "Structured EM iteration limit");
    cmd->add_option("--tol", tol, "Structured EM relative log-likelihood tolerance");
    cmd->add_option("--init-max-iter", init_max_iter, "Diagonal EM iteration limit");
    cmd->add_option("--init-tol", init_tol, "Diagonal EM relative tolerance");
    cmd->add_option("--rel-floor", rel_floor, "Relative eigenvalue floor for row covariances");
  }

  rjc_config config() const {
    rjc_config c;
    rjc_config_default(&c);
    if (cmax) {
      if (*cmax < 1) throw ExitError{kExitInput, "--cmax must be at least 1"};
      c.cmax = *cmax;
    }
    c.seed = seed;
    c.threads = threads_from_env(threads);
    c.max_iter = max_iter;
    c.tol = tol;
    c.init_max_iter = init_max_iter;
    c.init_tol = init_tol;
    c.rel_floor = rel_floor;
    return c;
  }
};

void load_prepared(const std::string& path, const FitFlags& flags, Matrix& m) {
  check(rjc_matrix_load(path.c_str(), kOrientations.at(flags.orientation), m.out()),
        "loading '" + path + "'");
  check(rjc_matrix_transform(m.get(), kTransforms.at(flags.transform), nullptr),
        "transforming '" + path + "'");
}

// ---- cluster -------------------------------------------------------------

struct ClusterFlags {
  std::string input;
  std::string out;
  std::string heatmap;
  std::string gram;
  std::string juxtaposed;
  FitFlags fit;
};

int run_cluster(const ClusterFlags& f) {
  const rjc_config config = f.fit.config();
  Matrix m;
  load_prepared(f.input, f.fit, m);
  if (!f.gram.empty()) check(rjc_matrix_export_gram(m.get(), f.gram.c_str()), "exporting R");
  if (!f.juxtaposed.empty()) {
    check(rjc_matrix_export_juxtaposed(m.get(), f.juxtaposed.c_str()), "exporting J");
  }

  Result r;
  check(rjc_cluster(m.get(), &config, r.out()), "clustering");
  char* json = nullptr;
  check(rjc_result_to_json(r.get(), &json), "serialising report");
  const std::string report = take_string(json) + "\n";
  if (f.out.empty() || f.out == "-") {
    std::cout << report;
  } else {
    write_file(f.out, report);
  }
  if (!f.heatmap.empty()) {
    check(rjc_result_export_heatmap(r.get(), f.heatmap.c_str()), "exporting heatmap");
  }
  std::cerr << "selected C = " << rjc_result_selected_clusters(r.get()) << " for "
            << rjc_matrix_items(m.get()) << " items\n";
  return kExitOk;
}

// ---- eval ----------------------------------------------------------------

int run_eval(const std::string& pred_path, const std::string& truth_path) {
  Labels pred;
  Labels truth;
  check(rjc_partition_load(pred_path.c_str(), pred.out()), "loading '" + pred_path + "'");
  check(rjc_partition_load(truth_path.c_str(), truth.out()), "loading '" + truth_path + "'");
  double value = 0.0;
  check(rjc_ami(pred.get(), truth.get(), &value), "computing AMI");

  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", value);
  std::cout << "AMI " << buf << '\n';
  nlohmann::json line{{"ami", value},
                      {"n", rjc_partition_size(pred.get())},
                      {"pred_clusters", rjc_partition_clusters(pred.get())},
                      {"truth_clusters", rjc_partition_clusters(truth.get())}};
  std::cout << line.dump() << '\n';
  return kExitOk;
}

// ---- synth ---------------------------------------------------------------

struct SynthFlags {
  std::string spec_path;
  std::vector<int> sizes{13, 13, 14};
  int features = 300;
  double noise_sd = 1.0;
  double theta_sd = 1.0;
  std::string noise = "gaussian";
  std::uint64_t seed = 1;
  bool no_shuffle = false;
  std::string out;
};

int run_synth(const SynthFlags& f) {
  std::string spec_json;
  if (!f.spec_path.empty()) {
    std::ifstream in(f.spec_path);
    if (!in) throw ExitError{kExitInput, "cannot open '" + f.spec_path + "'"};
    std::stringstream ss;
    ss << in.rdbuf();
    spec_json = ss.str();
  } else {
    spec_json = nlohmann::json{{"n_per_cluster", f.sizes},
                               {"n_features", f.features},
                               {"noise_sd", f.noise_sd},
                               {"theta_sd", f.theta_sd},
                               {"noise", f.noise},
                               {"seed", f.seed},
                               {"shuffle", !f.no_shuffle}}
                    .dump();
  }

  Spec spec;
  check(rjc_spec_from_json(spec_json.c_str(), spec.out()), "reading spec");
  Matrix m;
  Labels labels;
  check(rjc_generate(spec.get(), m.out(), labels.out()), "generating data");

  const std::string matrix_path = f.out + ".csv";
  const std::string labels_path = f.out + ".labels";
  check(rjc_matrix_write(m.get(), matrix_path.c_str()), "writing matrix");
  check(rjc_partition_write(labels.get(), labels_path.c_str()), "writing labels");
  char* echo = nullptr;
  check(rjc_spec_to_json(spec.get(), &echo), "serialising spec");
  write_file(f.out + ".spec.json", take_string(echo) + "\n");
  std::cerr << "wrote " << matrix_path << " (" << rjc_matrix_items(m.get()) << " x "
            << rjc_matrix_features(m.get()) << ") and " << labels_path << '\n';
  return kExitOk;
}

// ---- bench ---------------------------------------------------------------

struct BenchFlags {
  std::string data_dir;
  std::string out;
  FitFlags fit;
};

int run_bench(const BenchFlags& f) {
  std::error_code ec;
  if (!fs::is_directory(f.data_dir, ec)) {
    throw ExitError{kExitInput, "'" + f.data_dir + "' is not a directory"};
  }
  const rjc_config config = f.fit.config();

  std::map<std::string, fs::path> matrices;
  std::map<std::string, fs::path> label_files;
  for (const auto& entry : fs::directory_iterator(f.data_dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    const auto stem = entry.path().stem().string();
    if (ext == ".labels") {
      label_files[stem] = entry.path();
    } else if (ext == ".csv" || ext == ".tsv" || ext == ".txt") {
      matrices[stem] = entry.path();
    }
  }

  std::ostringstream table;
  table << "dataset,N,P,selected_C,AMI,seconds\n";
  int rows = 0;
  for (const auto& [name, matrix_path] : matrices) {
    const auto lab = label_files.find(name);
    if (lab == label_files.end()) {
      std::cerr << "warning: skipping '" << name << "': no " << name << ".labels\n";
      continue;
    }
    try {
      const auto start = std::chrono::steady_clock::now();
      Matrix m;
      load_prepared(matrix_path.string(), f.fit, m);
      Labels truth;
      check(rjc_partition_load(lab->second.string().c_str(), truth.out()), "loading labels");
      Result r;
      check(rjc_cluster(m.get(), &config, r.out()), "clustering");
      Labels pred;
      check(rjc_result_partition(r.get(), pred.out()), "reading partition");
      double value = 0.0;
      check(rjc_ami(pred.get(), truth.get(), &value), "computing AMI");
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      char buf[128];
      std::snprintf(buf, sizeof buf, "%zu,%zu,%d,%.3f,%.3f", rjc_matrix_items(m.get()),
                    rjc_matrix_features(m.get()), rjc_result_selected_clusters(r.get()), value,
                    secs);
      table << name << ',' << buf << '\n';
      ++rows;
    } catch (const ExitError& e) {
      std::cerr << "warning: skipping '" << name << "': " << e.message << '\n';
    }
  }
  for (const auto& [name, path] : label_files) {
    if (!matrices.count(name)) std::cerr << "warning: '" << path.string() << "' has no matrix\n";
  }
  if (rows == 0) std::cerr << "warning: no datasets were benchmarked\n";

  if (f.out.empty() || f.out == "-") {
    std::cout << table.str();
  } else {
    write_file(f.out, table.str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster items through the juxtaposed similarity matrix"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rjc_version());

  ClusterFlags cluster;
  auto* cmd_cluster = app.add_subcommand("cluster", "Select C and cluster a feature matrix");
  cmd_cluster->add_option("--input", cluster.input, "Delimited numeric matrix")->required();
  cmd_cluster->add_option("--out", cluster.out, "JSON report path ('-' for stdout)");
  cmd_cluster->add_option("--export-heatmap", cluster.heatmap, "Write R as a plain pixmap");
  cmd_cluster->add_option("--export-gram", cluster.gram, "Write R as CSV");
  cmd_cluster->add_option("--export-juxtaposed", cluster.juxtaposed, "Write J as CSV");
  cluster.fit.add_to(cmd_cluster);

  std::string pred_path;
  std::string truth_path;
  auto* cmd_eval = app.add_subcommand("eval", "Adjusted mutual information of two label files");
  cmd_eval->add_option("--pred", pred_path, "Predicted labels")->required();
  cmd_eval->add_option("--truth", truth_path, "Reference labels")->required();

  SynthFlags synth;
  auto* cmd_synth = app.add_subcommand("synth", "Write a synthetic mixture dataset");
  cmd_synth->add_option("--spec", synth.spec_path, "JSON mixture spec (overrides other flags)");
  cmd_synth->add_option("--sizes", synth.sizes, "Items per cluster")->delimiter(',');
  cmd_synth->add_option("--features", synth.features, "Number of features");
  cmd_synth->add_option("--noise-sd", synth.noise_sd, "Noise standard deviation");
  cmd_synth->add_option("--theta-sd", synth.theta_sd, "Standard deviation of cluster means");
  cmd_synth->add_option("--noise", synth.noise, "gaussian or uniform")
      ->check(CLI::IsMember({"gaussian", "uniform"}));
  cmd_synth->add_option("--seed", synth.seed, "Random seed");
  cmd_synth->add_flag("--no-shuffle", synth.no_shuffle, "Keep items grouped by cluster");
  cmd_synth->add_option("--out", synth.out, "Output prefix (.csv, .labels, .spec.json)")->required();

  BenchFlags bench;
  auto* cmd_bench = app.add_subcommand("bench", "AMI table over <name>.csv + <name>.labels pairs");
  cmd_bench->add_option("--data-dir", bench.data_dir, "Directory of datasets")->required();
  cmd_bench->add_option("--out", bench.out, "CSV output path ('-' for stdout)");
  bench.fit.add_to(cmd_bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*cmd_cluster) return run_cluster(cluster);
    if (*cmd_eval) return run_eval(pred_path, truth_path);
    if (*cmd_synth) return run_synth(synth);
    if (*cmd_bench) return run_bench(bench);
  } catch (const ExitError& e) {
    std::cerr << "rjc: " << e.message << '\n';
    return e.code;
  }
  return kExitInput;
}
