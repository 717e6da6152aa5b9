// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exit status is non-zero when any blocking criterion fails, unless every
// failure is listed in --known-failures (comma-separated criterion ids).

#include <algorithm>
#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/evaluation.hpp"
#include "core/ingest.hpp"
#include "core/init_cluster.hpp"
#include "core/juxtapose.hpp"
#include "core/model_select.hpp"
#include "core/moments.hpp"
#include "core/parallel.hpp"
#include "core/structured_em.hpp"
#include "core/synth.hpp"
#include "support/oracles.hpp"

using namespace rjc;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void note(const char* fmt, ...) __attribute__((format(printf, 2, 3)));
};

void Outcome::note(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  notes.emplace_back(buf);
}

std::vector<int> g_failed;

void report(int id, const char* title, const Outcome& o, bool blocking = true) {
  const char* tag = o.pass ? "PASS" : (blocking ? "FAIL" : "DEVIATION");
  std::printf("[%s] %d. %s\n", tag, id, title);
  for (const auto& n : o.notes) std::printf("       %s\n", n.c_str());
  std::fflush(stdout);
  if (!o.pass && blocking) g_failed.push_back(id);
}

void report_skip(int id, const char* title, const std::string& why) {
  std::printf("[SKIP] %d. %s\n       %s\n", id, title, why.c_str());
  std::fflush(stdout);
}

// ---- 1 -------------------------------------------------------------------

Outcome criterion_1() {
  Outcome o;
  GramMatrix r;
  r.values.resize(3, 3);
  r.values << 1, 2, 3, 2, 4, 5, 3, 5, 6;
  r.n_features = 1;
  // Row k: (R_k1..R_kN with R_kk replaced by the mean of the others, R_kk).
  Eigen::MatrixXd expect(3, 4);
  expect << (2.0 + 3.0) / 2, 2, 3, 1,
            2, (2.0 + 5.0) / 2, 5, 4,
            3, 5, (3.0 + 5.0) / 2, 6;

  std::vector<double> times;
  JuxtaposedMatrix j;
  for (int i = 0; i < 101; ++i) {
    const auto t0 = Clock::now();
    j = build_juxtaposed(r);
    times.push_back(seconds_since(t0));
  }
  std::sort(times.begin(), times.end());
  const bool exact = j.values == expect;
  o.pass = exact && times[50] < 1e-3;
  o.note("exact equality: %s; median build time %.2e s over 101 runs", exact ? "yes" : "no", times[50]);
  return o;
}

// ---- 2 -------------------------------------------------------------------

double analytic_target(const MomentQuery& q, const MixtureParams& m, const Partition& labels) {
  const auto lab = [&](int i) { return labels.labels[static_cast<std::size_t>(i)]; };
  const int n = static_cast<int>(labels.size());
  const int a = lab(q.row1);
  if (q.kind == MomentKind::MeanDifference) return 0.0;
  if (q.col1 == n && q.kind == MomentKind::Mean) return m.mu_diag[a];
  if (q.col1 == n && q.kind == MomentKind::Variance) return m.var_diag[a];
  const RowModel row = assemble_row_model(m, labels.labels, q.row1, a);
  switch (q.kind) {
    case MomentKind::Mean:
      return row.mean[q.col1];
    case MomentKind::Variance:
      return row.cov(q.col1, q.col1);
    case MomentKind::Covariance:
      return row.cov(q.col1, q.col2);
    default:
      return 0.0;
  }
}

// Direct per-statement value, independent of the row assembly, for the
// statements the assembly copies verbatim.
double statement_value(const MomentQuery& q, const MixtureParams& m, const Partition& labels) {
  const auto lab = [&](int i) { return labels.labels[static_cast<std::size_t>(i)]; };
  const int a = lab(q.row1);
  if (q.tag == "1") return m.mu_diag[a];
  if (q.tag == "2") return m.mu_pair(a, lab(q.col1));
  if (q.tag == "4") return m.var_diag[a];
  if (q.tag == "5") return m.var_pair(a, lab(q.col1));
  if (q.tag == "6") return m.cov_triple[static_cast<std::size_t>(a)](lab(q.col1), lab(q.col2));
  return std::nan("");
}

Outcome criterion_2() {
  Outcome o;
  const auto t0 = Clock::now();
  const int replicates = 2000;
  int checked = 0, failed = 0;
  double worst_z = 0.0;
  std::string worst;
  double identity_err = 0.0;

  for (std::uint64_t s = 1; s <= 3; ++s) {
    MixtureSpec spec;
    spec.n_per_cluster = {4, 4};
    spec.n_features = 200;
    spec.theta_sd = 1.0;
    spec.noise_sd = 1.0;
    spec.seed = 1000 + s;
    const Partition labels = generate(spec).labels;
    const MixtureParams m = analytic_moments(spec);
    const auto queries = default_moment_queries(spec, labels);
    const auto est = empirical_moments(spec, replicates, queries, resolve_threads(0));

    for (const auto& e : est) {
      const double target = analytic_target(e.query, m, labels);
      const double direct = statement_value(e.query, m, labels);
      if (!std::isnan(direct) && std::abs(direct - target) > 1e-15) {
        ++failed;
        o.note("spec %llu statement %s: assembled value disagrees with the statement",
               static_cast<unsigned long long>(s), e.query.tag.c_str());
      }
      const double z = std::abs(e.estimate - target) / e.std_error;
      ++checked;
      if (z > worst_z) {
        worst_z = z;
        worst = "spec " + std::to_string(s) + " statement " + e.query.tag;
      }
      if (!(z <= 4.0)) {
        ++failed;
        o.note("spec %llu statement %s (J[%d,%d]): empirical %.6g vs analytic %.6g, %.2f SE",
               static_cast<unsigned long long>(s), e.query.tag.c_str(), e.query.row1,
               e.query.col1, e.estimate, target, z);
      }
    }

    // Statements 7 and 8 as exact linear combinations.
    const int n = static_cast<int>(labels.size());
    for (int k = 0; k < n; ++k) {
      for (int a = 0; a < 2; ++a) {
        const RowModel row = assemble_row_model(m, labels.labels, k, a);
        const Eigen::MatrixXd ref = oracle::row_covariance(m, labels.labels, k, a);
        identity_err = std::max(identity_err, (row.cov - ref).cwiseAbs().maxCoeff());
      }
    }
  }
  const double elapsed = seconds_since(t0);
  o.pass = failed == 0 && identity_err <= 1e-12 && elapsed < 120.0;
  o.note("%d Monte-Carlo checks (statements 1-8 and the equal-expectation differences), "
         "%d outside 4 SE; largest deviation %.2f SE (%s)", checked, failed, worst_z, worst.c_str());
  o.note("statements 7-8 linear-combination identity: max error %.2e (limit 1e-12)", identity_err);
  o.note("runtime %.1f s (limit 120 s)", elapsed);
  return o;
}

// ---- 3 -------------------------------------------------------------------

Outcome criterion_3() {
  Outcome o;
  double worst = 0.0;
  std::mt19937 gen(2024);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (auto [n, c] : {std::pair{5, 2}, std::pair{6, 3}}) {
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::MatrixXd x(n, 25);
      for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = u(gen) - 0.5;
      const JuxtaposedMatrix j = build_juxtaposed(build_gram(x));
      Eigen::MatrixXd q(n, c);
      for (Eigen::Index i = 0; i < q.size(); ++i) q.data()[i] = u(gen);
      for (int k = 0; k < n; ++k) q.row(k) /= q.row(k).sum();
      const MixtureParams got = m_step(j, q);
      const MixtureParams ref = oracle::m_step(j.values, q);
      worst = std::max({worst, (got.weights - ref.weights).cwiseAbs().maxCoeff(),
                        (got.mu_diag - ref.mu_diag).cwiseAbs().maxCoeff(),
                        (got.mu_pair - ref.mu_pair).cwiseAbs().maxCoeff(),
                        (got.var_diag - ref.var_diag).cwiseAbs().maxCoeff(),
                        (got.var_pair - ref.var_pair).cwiseAbs().maxCoeff()});
      for (int a = 0; a < c; ++a) {
        worst = std::max(worst, (got.cov_triple[static_cast<std::size_t>(a)] -
                                 ref.cov_triple[static_cast<std::size_t>(a)]).cwiseAbs().maxCoeff());
      }
    }
  }
  o.pass = worst <= 1e-10;
  o.note("5 random Q each at (N=5, C=2) and (N=6, C=3): max abs difference %.2e (limit 1e-10)", worst);
  return o;
}

// ---- 4 -------------------------------------------------------------------

// All integer partitions of n as non-increasing part lists.
void integer_partitions(int n, int max_part, std::vector<long>& cur,
                        std::vector<std::vector<long>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    integer_partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

Partition from_sizes(const std::vector<long>& sizes) {
  std::vector<int> raw;
  for (std::size_t c = 0; c < sizes.size(); ++c)
    for (long i = 0; i < sizes[c]; ++i) raw.push_back(static_cast<int>(c));
  return canonicalize(raw);
}

Outcome criterion_4() {
  Outcome o;
  std::mt19937 gen(77);

  int self_fail = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 3 + static_cast<int>(gen() % 40);
    std::vector<int> raw(static_cast<std::size_t>(n));
    for (auto& x : raw) x = static_cast<int>(gen() % 5);
    raw[0] = 0;
    raw[1] = 1;  // nontrivial
    const Partition a = canonicalize(raw);
    if (ami(a, a) != 1.0) ++self_fail;
  }

  int pairs = 0;
  double emi_err = 0.0;
  for (int n = 1; n <= 8; ++n) {
    std::vector<std::vector<long>> parts;
    std::vector<long> cur;
    integer_partitions(n, n, cur, parts);
    // The permutation-model expectation depends on the margins only, not on
    // their order, so each unordered pair of integer partitions covers every
    // ordering of its margins.
    for (const auto& ra : parts) {
      for (const auto& rb : parts) {
        const ContingencyTable t = contingency(from_sizes(ra), from_sizes(rb));
        emi_err = std::max(emi_err, std::abs(expected_mi(t) - oracle::expected_mi(ra, rb)));
        ++pairs;
      }
    }
  }

  double sym_err = 0.0, relabel_err = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = 5 + static_cast<int>(gen() % 60);
    std::vector<int> ra(static_cast<std::size_t>(n)), rb(static_cast<std::size_t>(n));
    const unsigned ca = 2 + gen() % 4, cb = 2 + gen() % 4;
    for (auto& x : ra) x = static_cast<int>(gen() % ca);
    for (auto& x : rb) x = static_cast<int>(gen() % cb);
    const Partition a = canonicalize(ra), b = canonicalize(rb);
    const double v = ami(a, b);
    sym_err = std::max(sym_err, std::abs(v - ami(b, a)));
    std::vector<int> perm(ca);
    for (unsigned i = 0; i < ca; ++i) perm[i] = static_cast<int>(i);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<int> relabelled;
    for (int x : ra) relabelled.push_back(perm[static_cast<std::size_t>(x)] * 3 + 11);
    relabel_err = std::max(relabel_err, std::abs(v - ami(canonicalize(relabelled), b)));
  }

  o.pass = self_fail == 0 && emi_err <= 1e-10 && sym_err <= 1e-12 && relabel_err <= 1e-12;
  o.note("ami(A,A) == 1 exactly in %d/100 random partitions", 100 - self_fail);
  o.note("E[MI] vs exhaustive table enumeration over %d margin pairs (N<=8): max error %.2e",
         pairs, emi_err);
  o.note("100 random pairs: symmetry error %.1e, relabelling error %.1e", sym_err, relabel_err);
  return o;
}

// ---- 5 and 6 -------------------------------------------------------------

Outcome recovery(const std::vector<int>& sizes, int cmax, int expect_c, bool check_ami) {
  Outcome o;
  int hits = 0;
  double slowest = 0.0;
  std::string picks;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    MixtureSpec spec;
    spec.n_per_cluster = sizes;
    spec.n_features = 300;
    spec.theta_sd = 1.0;
    spec.noise_sd = 1.0;
    spec.seed = seed;
    const auto t0 = Clock::now();
    const SyntheticData data = generate(spec);
    const JuxtaposedMatrix j = build_juxtaposed(build_gram(data.matrix));
    SelectConfig cfg;
    cfg.cmax = cmax;
    cfg.seed = seed;
    cfg.threads = resolve_threads(0);
    const ClusterResult r = select(j, cfg);
    const double secs = seconds_since(t0);
    slowest = std::max(slowest, secs);
    const double score = ami(r.labels, data.labels);
    const bool hit = r.selected_c == expect_c && (!check_ami || score == 1.0);
    if (hit) ++hits;
    picks += (picks.empty() ? "" : " ") + std::to_string(r.selected_c);

    std::string trace;
    for (const auto& e : r.bic_trace) {
      char buf[64];
      if (e.status == CandidateStatus::Ok) {
        std::snprintf(buf, sizeof buf, " C%d=%.1f", e.num_clusters, e.bic);
      } else {
        std::snprintf(buf, sizeof buf, " C%d=%s", e.num_clusters, to_string(e.status));
      }
      trace += buf;
    }
    o.note("seed %2llu: selected C=%d, AMI %.3f, %.2f s; BIC%s",
           static_cast<unsigned long long>(seed), r.selected_c, score, secs, trace.c_str());
  }
  o.pass = hits >= 9 && slowest < 60.0;
  o.note("%d/10 seeds correct (need >= 9); selected C per seed: %s; slowest seed %.2f s",
         hits, picks.c_str(), slowest);
  return o;
}

// ---- 7 -------------------------------------------------------------------

Outcome criterion_7() {
  Outcome o;
  bool exact = true;
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u(-1e4, 0.0);
  for (int t = 0; t < 100; ++t) {
    const double l = u(gen);
    const long m = 1 + static_cast<long>(gen() % 200);
    const long n = 2 + static_cast<long>(gen() % 500);
    const double expect = 2.0 * l - static_cast<double>(m) * std::log(static_cast<double>(n));
    if (bic(l, m, static_cast<double>(n)) != expect) exact = false;
  }
  const long c2 = covariance_param_count(2);
  const long displayed = 4 * 2 + 3 * 1 + 0;  // 4 C(2,1) + 3 C(2,2) + C(2,3)
  o.pass = exact && param_count(2) == 17 && c2 == displayed;
  o.note("bic == 2L - M ln N bit-exactly on 100 random inputs: %s", exact ? "yes" : "no");
  o.note("param_count(1,2,3) = %ld, %ld, %ld; covariance-only count at C=2: %ld (formula: %ld)",
         param_count(1), param_count(2), param_count(3), c2, displayed);
  return o;
}

// ---- 8 -------------------------------------------------------------------

Outcome criterion_8() {
  Outcome o;
  MixtureSpec spec;
  spec.n_per_cluster = {8, 7, 7};
  spec.n_features = 150;
  spec.noise_sd = 1.0;
  spec.seed = 8;
  const SyntheticData data = generate(spec);
  const JuxtaposedMatrix j = build_juxtaposed(build_gram(data.matrix));
  const int n = static_cast<int>(j.n_items());
  std::mt19937 gen(88);

  int dem_ok = 0, fit_ok = 0, fit_run = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int c = 2 + trial % 3;
    // Random labels with at least three items per cluster.
    std::vector<int> raw(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) raw[static_cast<std::size_t>(i)] = i < 3 * c ? i % c : static_cast<int>(gen() % c);
    std::shuffle(raw.begin(), raw.end(), gen);
    const Partition init = canonicalize(raw);

    const InitResult dem = diagonal_em(j, init, 200, 1e-10);
    bool mono = true;
    for (std::size_t t = 1; t < dem.loglik_trace.size(); ++t) {
      const double prev = dem.loglik_trace[t - 1];
      if (dem.loglik_trace[t] < prev - 1e-8 * std::abs(prev)) mono = false;
    }
    if (mono) ++dem_ok;

    // Structured fit from the diagonal EM partition, as in model selection.
    if (dem.singleton_detected) {
      o.note("trial %d: diagonal EM left a singleton, structured fit skipped", trial + 1);
      continue;
    }
    try {
      const FitResult f = fit(j, dem.partition);
      ++fit_run;
      if (f.loglik >= f.loglik_trace.front()) ++fit_ok;
    } catch (const Error& e) {
      o.note("trial %d: structured fit rejected (%s)", trial + 1, e.what());
    }
  }
  o.pass = dem_ok == 20 && fit_ok == fit_run && fit_run > 0;
  o.note("diagonal EM non-decreasing in %d/20 random initialisations", dem_ok);
  o.note("structured fit reported loglik >= first iteration in %d/%d fits", fit_ok, fit_run);
  return o;
}

// ---- 9 -------------------------------------------------------------------

Outcome criterion_9() {
  Outcome o;
  // Two tight groups plus one distant item. Ward isolates the distant item at
  // C = 3, the diagonal EM keeps it alone, and the loop must stop there.
  std::mt19937 gen(9);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  Eigen::MatrixXd x(13, 30);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = u(gen);
  for (int k = 0; k < 6; ++k) x.row(k).array() += 1.0;
  for (int k = 6; k < 12; ++k) x.row(k).array() -= 1.0;
  x.row(12).setZero();
  x(12, 0) = 8.0;
  const JuxtaposedMatrix j = build_juxtaposed(build_gram(x));

  int first_shrink = 0;
  for (int c = 1; c <= 8 && first_shrink == 0; ++c) {
    if (diagonal_em(j, ward_agglomerate(j, c)).singleton_detected) first_shrink = c;
  }
  SelectConfig cfg;
  cfg.cmax = 8;
  const ClusterResult r = select(j, cfg);

  bool ok = first_shrink == 3 && static_cast<int>(r.bic_trace.size()) == first_shrink;
  for (std::size_t i = 0; ok && i < r.bic_trace.size(); ++i) {
    const bool last = i + 1 == r.bic_trace.size();
    const auto& e = r.bic_trace[i];
    ok = e.num_clusters == static_cast<int>(i) + 1 &&
         ((e.status == CandidateStatus::Shrunk) == last);
  }
  ok = ok && r.selected_c < first_shrink;
  o.pass = ok;
  std::string statuses;
  for (const auto& e : r.bic_trace) {
    statuses += " C" + std::to_string(e.num_clusters) + "=" + to_string(e.status);
  }
  o.note("first singleton at C=%d; C_max=8 requested; trace:%s; selected C=%d", first_shrink,
         statuses.c_str(), r.selected_c);
  return o;
}

// ---- 10 ------------------------------------------------------------------

void criterion_10() {
  const char* title = "Dataset reproduction (non-blocking)";
  const char* dir = std::getenv("RJC_DATA_DIR");
  if (!dir || !*dir) {
    report_skip(10, title, "set RJC_DATA_DIR to a directory holding Dyrskjot-2003 and "
                           "Alizadeh-2000-v2 as <name>.{csv,tsv,txt} plus <name>.labels");
    return;
  }
  const char* orient_env = std::getenv("RJC_DATA_ORIENTATION");
  const Orientation orientation = orient_env && std::string(orient_env) == "rows"
                                      ? Orientation::ItemsInRows
                                      : Orientation::ItemsInColumns;
  struct Target {
    const char* name;
    double ami;
    double tol;
  };
  Outcome o;
  int found = 0;
  for (const Target t : {Target{"Dyrskjot-2003", 0.623, 0.10}, Target{"Alizadeh-2000-v2", 1.000, 0.05}}) {
    std::filesystem::path matrix;
    for (const char* ext : {".csv", ".tsv", ".txt"}) {
      const auto p = std::filesystem::path(dir) / (std::string(t.name) + ext);
      if (std::filesystem::exists(p)) matrix = p;
    }
    const auto labels = std::filesystem::path(dir) / (std::string(t.name) + ".labels");
    if (matrix.empty() || !std::filesystem::exists(labels)) {
      o.note("%s: not found", t.name);
      continue;
    }
    ++found;
    try {
      const FeatureMatrix x =
          gene_transform(load_matrix(matrix.string(), orientation), TransformMode::Auto).matrix;
      const Partition truth = load_labels(labels.string());
      SelectConfig cfg;
      cfg.threads = resolve_threads(0);
      const auto t0 = Clock::now();
      const ClusterResult r = select(build_juxtaposed(build_gram(x, cfg.threads)), cfg);
      const double score = ami(r.labels, truth);
      const bool within = std::abs(score - t.ami) <= t.tol;
      if (!within) o.pass = false;
      o.note("%s: N=%ld P=%ld selected C=%d AMI %.3f (reference %.3f +/- %.2f) %s, %.1f s", t.name,
             static_cast<long>(x.n_items()), static_cast<long>(x.n_features()), r.selected_c, score,
             t.ami, t.tol, within ? "within" : "outside", seconds_since(t0));
    } catch (const std::exception& e) {
      o.pass = false;
      o.note("%s: %s", t.name, e.what());
    }
  }
  if (found == 0) {
    report_skip(10, title, std::string("no dataset pairs found in ") + dir);
    return;
  }
  report(10, title, o, false);
}

std::set<int> parse_ids(const std::string& text) {
  std::set<int> ids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) ids.insert(std::stoi(item));
  }
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--known-failures" && i + 1 < argc) {
      known = parse_ids(argv[++i]);
    } else if (arg.rfind("--known-failures=", 0) == 0) {
      known = parse_ids(arg.substr(17));
    } else {
      std::fprintf(stderr, "usage: %s [--known-failures ID[,ID...]]\n", argv[0]);
      return 2;
    }
  }
  const auto t0 = Clock::now();
  report(1, "J-construction exactness", criterion_1());
  report(2, "Moment suite (Monte-Carlo vs analytic)", criterion_2());
  report(3, "M-step oracle equivalence", criterion_3());
  report(4, "AMI correctness", criterion_4());
  report(5, "End-to-end recovery (N=40, C=3, P=300, C_max=8)", recovery({13, 13, 14}, 8, 3, true));
  report(6, "Null-model sanity (C=1, N=40, P=300, C_max=5)", recovery({40}, 5, 1, false));
  report(7, "BIC formula and parameter count", criterion_7());
  report(8, "EM behaviour", criterion_8());
  report(9, "Shrink rule", criterion_9());
  criterion_10();
  std::string failed, unexpected;
  for (int id : g_failed) {
    failed += (failed.empty() ? "" : ",") + std::to_string(id);
    if (!known.count(id)) unexpected += (unexpected.empty() ? "" : ",") + std::to_string(id);
  }
  std::printf("%zu blocking criteria failed%s%s; total %.1f s\n", g_failed.size(),
              failed.empty() ? "" : ": ", failed.c_str(), seconds_since(t0));
  if (!known.empty()) {
    std::printf("known failures: %s; unexpected failures: %s\n",
                [&] {
                  std::string k;
                  for (int id : known) k += (k.empty() ? "" : ",") + std::to_string(id);
                  return k;
                }().c_str(),
                unexpected.empty() ? "none" : unexpected.c_str());
  }
  return unexpected.empty() ? 0 : 1;
}
