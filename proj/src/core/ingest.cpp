#include "core/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "core/errors.hpp"

namespace rjc {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
  std::string out(s.substr(b, e - b));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') {
    out = out.substr(1, out.size() - 2);
  }
  return out;
}

std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (*first == '+') ++first;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return v;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split_cells(const std::string& line, char delim) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    if (pos == std::string::npos) {
      cells.push_back(trim(std::string_view(line).substr(start)));
      break;
    }
    cells.push_back(trim(std::string_view(line).substr(start, pos - start)));
    start = pos + 1;
  }
  return cells;
}

// Non-numeric so that a written file's header is recognised when read back.
std::string index_id(const char* prefix, std::size_t i) { return prefix + std::to_string(i + 1); }

}  // namespace

std::vector<int> Partition::counts() const {
  std::vector<int> c(static_cast<std::size_t>(std::max(num_clusters, 0)), 0);
  for (int l : labels) ++c[static_cast<std::size_t>(l)];
  return c;
}

Partition canonicalize(const std::vector<int>& raw_labels) {
  Partition p;
  std::unordered_map<int, int> remap;
  p.labels.reserve(raw_labels.size());
  for (int raw : raw_labels) {
    auto [it, inserted] = remap.try_emplace(raw, static_cast<int>(remap.size()));
    p.labels.push_back(it->second);
  }
  p.num_clusters = static_cast<int>(remap.size());
  return p;
}

Partition canonicalize(const std::vector<std::string>& raw_labels) {
  Partition p;
  std::unordered_map<std::string, int> remap;
  p.labels.reserve(raw_labels.size());
  for (const auto& raw : raw_labels) {
    auto [it, inserted] = remap.try_emplace(raw, static_cast<int>(remap.size()));
    p.labels.push_back(it->second);
  }
  p.num_clusters = static_cast<int>(remap.size());
  return p;
}

void validate(const FeatureMatrix& x) {
  if (x.n_items() < 2) {
    throw Error(ErrorKind::Dimension,
                "feature matrix needs at least 2 items, got " + std::to_string(x.n_items()));
  }
  if (x.n_features() < 1) throw Error(ErrorKind::Dimension, "feature matrix has no features");
  if (static_cast<Eigen::Index>(x.item_ids.size()) != x.n_items() ||
      static_cast<Eigen::Index>(x.feature_ids.size()) != x.n_features()) {
    throw Error(ErrorKind::Dimension, "identifier count does not match matrix shape");
  }
  for (Eigen::Index i = 0; i < x.n_items(); ++i) {
    for (Eigen::Index j = 0; j < x.n_features(); ++j) {
      if (!std::isfinite(x.values(i, j))) {
        throw Error(ErrorKind::Domain, "non-finite value for item '" + x.item_ids[i] +
                                           "', feature '" + x.feature_ids[j] + "'");
      }
    }
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

char detect_delimiter(const std::string& first_line) {
  const char candidates[] = {',', '\t', ';'};
  char best = ',';
  long best_count = 0;
  for (char c : candidates) {
    const long n = std::count(first_line.begin(), first_line.end(), c);
    if (n > best_count) {
      best = c;
      best_count = n;
    }
  }
  return best;
}

FeatureMatrix parse_matrix(const std::string& text, Orientation orientation) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error(ErrorKind::Format, "matrix file is empty");

  const char delim = detect_delimiter(lines.front());
  std::vector<std::vector<std::string>> rows;
  rows.reserve(lines.size());
  for (const auto& line : lines) rows.push_back(split_cells(line, delim));

  bool header_row = false;
  if (rows.front().size() >= 2) {
    header_row = std::all_of(rows.front().begin() + 1, rows.front().end(),
                             [](const std::string& c) { return !parse_number(c); });
  }
  const std::size_t first_data = header_row ? 1 : 0;
  if (first_data >= rows.size()) throw Error(ErrorKind::Format, "matrix file has no data rows");

  bool id_column = true;
  for (std::size_t r = first_data; r < rows.size(); ++r) {
    if (parse_number(rows[r].front())) {
      id_column = false;
      break;
    }
  }
  if (id_column && rows[first_data].size() < 2) id_column = false;

  const bool rows_are_items = orientation == Orientation::ItemsInRows;
  const char* row_prefix = rows_are_items ? "item" : "f";
  const char* col_prefix = rows_are_items ? "f" : "item";

  const std::size_t width = rows[first_data].size();
  const std::size_t skip = id_column ? 1 : 0;
  const std::size_t n_rows = rows.size() - first_data;
  const std::size_t n_cols = width - skip;

  Eigen::MatrixXd values(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_cols));
  std::vector<std::string> row_ids;
  for (std::size_t r = first_data; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    if (cells.size() != width) {
      throw Error(ErrorKind::Format, "ragged row at line " + std::to_string(r + 1) + ": expected " +
                                         std::to_string(width) + " fields, found " +
                                         std::to_string(cells.size()));
    }
    row_ids.push_back(id_column ? cells.front() : index_id(row_prefix, r - first_data));
    for (std::size_t c = skip; c < width; ++c) {
      const auto v = parse_number(cells[c]);
      if (!v) {
        throw Error(ErrorKind::Parse, "non-numeric cell '" + cells[c] + "' at line " +
                                          std::to_string(r + 1) + ", column " +
                                          std::to_string(c + 1));
      }
      values(static_cast<Eigen::Index>(r - first_data), static_cast<Eigen::Index>(c - skip)) = *v;
    }
  }

  std::vector<std::string> col_ids;
  if (header_row) {
    const auto& h = rows.front();
    // A header may or may not carry a corner cell above the id column.
    const std::size_t offset = h.size() == n_cols ? 0 : 1;
    if (h.size() != n_cols && h.size() != n_cols + 1) {
      throw Error(ErrorKind::Format, "header has " + std::to_string(h.size()) +
                                         " fields but data rows have " + std::to_string(width));
    }
    for (std::size_t c = 0; c < n_cols; ++c) col_ids.push_back(h[c + offset]);
  } else {
    for (std::size_t c = 0; c < n_cols; ++c) col_ids.push_back(index_id(col_prefix, c));
  }

  FeatureMatrix x;
  if (rows_are_items) {
    x.values = std::move(values);
    x.item_ids = std::move(row_ids);
    x.feature_ids = std::move(col_ids);
  } else {
    x.values = values.transpose();
    x.item_ids = std::move(col_ids);
    x.feature_ids = std::move(row_ids);
  }
  validate(x);
  return x;
}

FeatureMatrix load_matrix(const std::string& path, Orientation orientation) {
  return parse_matrix(read_text_file(path), orientation);
}

void write_matrix(const FeatureMatrix& x, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << std::setprecision(17);
  out << "item";
  for (const auto& f : x.feature_ids) out << ',' << f;
  out << '\n';
  for (Eigen::Index i = 0; i < x.n_items(); ++i) {
    out << x.item_ids[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < x.n_features(); ++j) out << ',' << x.values(i, j);
    out << '\n';
  }
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::Dimension, "median of empty sequence");
  const std::size_t n = values.size();
  const std::size_t mid = n / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (n % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

TransformOutcome gene_transform(const FeatureMatrix& x, TransformMode mode) {
  if (mode == TransformMode::Off) return {x, false};

  const bool all_positive = (x.values.array() > 0.0).all();
  if (mode == TransformMode::Auto && !all_positive) return {x, false};
  if (!all_positive) {
    throw Error(ErrorKind::Domain, "log transform requires strictly positive values");
  }

  FeatureMatrix y = x;
  const Eigen::Index n = x.n_items();
  for (Eigen::Index p = 0; p < x.n_features(); ++p) {
    std::vector<double> logs(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) logs[static_cast<std::size_t>(i)] = std::log(x.values(i, p));

    double mean = 0.0;
    for (double v : logs) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : logs) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sd > 0.0)) {
      throw Error(ErrorKind::DegenerateFeature,
                  "feature '" + x.feature_ids[static_cast<std::size_t>(p)] +
                      "' has zero standard deviation after log transform");
    }

    const double center = median(logs);
    for (Eigen::Index i = 0; i < n; ++i) {
      y.values(i, p) = (logs[static_cast<std::size_t>(i)] - center) / sd;
    }
  }
  return {std::move(y), true};
}

Partition parse_labels(const std::string& text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error(ErrorKind::Format, "labels file is empty");

  std::vector<std::string> raw;
  if (lines.size() == 1) {
    for (auto& cell : split_cells(lines.front(), detect_delimiter(lines.front()))) {
      if (!cell.empty()) raw.push_back(std::move(cell));
    }
  } else {
    for (const auto& line : lines) {
      auto cells = split_cells(line, detect_delimiter(line));
      raw.push_back(cells.back());
    }
  }
  if (raw.empty()) throw Error(ErrorKind::Format, "labels file contains no labels");
  return canonicalize(raw);
}

Partition load_labels(const std::string& path) { return parse_labels(read_text_file(path)); }

void write_labels(const Partition& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  for (int l : p.labels) out << (l + 1) << '\n';
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

}  // namespace rjc
