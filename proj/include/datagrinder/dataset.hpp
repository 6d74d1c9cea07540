#pragma once

// Tabular dataset support for the classifier: CSV load/save (features
// first, label in the last column, optional header), dense label ids in
// first-appearance order, stratified fold assignment and min-max scaling.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgr {

// Unreadable or malformed data input.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Dataset {
  std::size_t feature_count = 0;
  std::vector<std::vector<double>> rows;   // n x feature_count
  std::vector<int> labels;                 // dense ids, first-appearance order
  std::vector<std::string> label_names;    // id -> original token
  std::vector<std::string> feature_names;  // empty when the file had no header

  std::size_t size() const { return rows.size(); }
  int class_count() const { return static_cast<int>(label_names.size()); }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

inline bool parse_double(const std::string& tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last && !tok.empty();
}

inline int label_id(Dataset& ds, const std::string& token) {
  for (std::size_t i = 0; i < ds.label_names.size(); ++i)
    if (ds.label_names[i] == token) return static_cast<int>(i);
  ds.label_names.push_back(token);
  return static_cast<int>(ds.label_names.size() - 1);
}

}  // namespace detail

// Parse a CSV dataset: every column but the last must be a finite real,
// the last column is the label token. A first line with any non-numeric
// column before the label position is treated as a header. (A fully
// numeric header is indistinguishable from data and read as a row.)
inline Dataset load_csv(std::istream& in, const std::string& origin = "<stream>") {
  Dataset ds;
  std::string line;
  std::size_t line_no = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto cols = detail::split_csv_line(line);
    if (cols.size() < 2)
      throw DataError(origin + ":" + std::to_string(line_no) + ": expected at least 2 columns");

    if (!saw_data) {
      bool header = false;
      for (std::size_t c = 0; c + 1 < cols.size(); ++c) {
        double v;
        if (!detail::parse_double(cols[c], v)) header = true;
      }
      if (header) {
        ds.feature_names.assign(cols.begin(), cols.end() - 1);
        ds.feature_count = cols.size() - 1;
        continue;
      }
    }

    if (!saw_data && ds.feature_count == 0) ds.feature_count = cols.size() - 1;
    if (cols.size() - 1 != ds.feature_count)
      throw DataError(origin + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(ds.feature_count + 1) + " columns, got " +
                      std::to_string(cols.size()));
    saw_data = true;

    std::vector<double> row(ds.feature_count);
    for (std::size_t c = 0; c < ds.feature_count; ++c) {
      if (!detail::parse_double(cols[c], row[c]) || !std::isfinite(row[c]))
        throw DataError(origin + ":" + std::to_string(line_no) + ": column " + std::to_string(c + 1) +
                        " is not a finite number: '" + cols[c] + "'");
    }
    ds.rows.push_back(std::move(row));
    ds.labels.push_back(detail::label_id(ds, cols.back()));
  }
  if (ds.rows.empty()) throw DataError(origin + ": no data rows");
  return ds;
}

inline Dataset load_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  return load_csv(in, path);
}

inline void format_double(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

inline void save_csv(const Dataset& ds, std::ostream& out) {
  std::string line;
  for (std::size_t f = 0; f < ds.feature_count; ++f) {
    line += ds.feature_names.size() == ds.feature_count ? ds.feature_names[f] : "f" + std::to_string(f);
    line += ',';
  }
  line += "label\n";
  out << line;
  for (std::size_t r = 0; r < ds.rows.size(); ++r) {
    line.clear();
    for (double v : ds.rows[r]) {
      format_double(line, v);
      line += ',';
    }
    line += ds.label_names[static_cast<std::size_t>(ds.labels[r])];
    line += '\n';
    out << line;
  }
}

// ---- stratified folds ----

struct FoldPlan {
  std::vector<int> fold_of_row;
  int fold_count = 0;
  bool reduced = false;  // true when k had to shrink to the smallest class
};

// Shuffle each class's rows with the seeded generator, then deal them
// round-robin, so fold sizes differ by at most one within every class.
// k shrinks to the smallest class size when a class has fewer than k rows.
inline FoldPlan stratified_folds(const std::vector<int>& labels, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("stratified_folds: need at least 2 folds");
  if (labels.empty()) throw std::invalid_argument("stratified_folds: no rows");
  int classes = 0;
  for (int l : labels) classes = std::max(classes, l + 1);
  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(classes));
  for (std::size_t i = 0; i < labels.size(); ++i)
    by_class[static_cast<std::size_t>(labels[i])].push_back(i);

  std::size_t smallest = labels.size();
  for (const auto& g : by_class) smallest = std::min(smallest, g.size());
  FoldPlan plan;
  plan.fold_count = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(k), smallest));
  plan.reduced = plan.fold_count < k;
  if (plan.fold_count < 2)
    throw DataError("stratified_folds: a class has fewer than 2 rows; cannot cross-validate");

  plan.fold_of_row.assign(labels.size(), 0);
  std::mt19937_64 gen(seed);
  for (auto& group : by_class) {
    std::shuffle(group.begin(), group.end(), gen);
    for (std::size_t pos = 0; pos < group.size(); ++pos)
      plan.fold_of_row[group[pos]] = static_cast<int>(pos % static_cast<std::size_t>(plan.fold_count));
  }
  return plan;
}

// ---- per-feature min-max scaling ----

struct MinMaxScaler {
  std::vector<double> feat_min, feat_range;

  static MinMaxScaler fit(const std::vector<std::vector<double>>& rows, std::size_t feature_count) {
    if (rows.empty()) throw std::invalid_argument("MinMaxScaler: no rows");
    MinMaxScaler s;
    s.feat_min.assign(feature_count, 0.0);
    s.feat_range.assign(feature_count, 0.0);
    for (std::size_t f = 0; f < feature_count; ++f) {
      double lo = rows[0][f], hi = rows[0][f];
      for (const auto& row : rows) {
        lo = std::min(lo, row[f]);
        hi = std::max(hi, row[f]);
      }
      s.feat_min[f] = lo;
      s.feat_range[f] = hi - lo;
    }
    return s;
  }

  // Constant features map to 0 (the range carries no information).
  std::vector<double> apply(const std::vector<double>& row) const {
    std::vector<double> out(row.size());
    for (std::size_t f = 0; f < row.size(); ++f)
      out[f] = feat_range[f] > 0.0 ? (row[f] - feat_min[f]) / feat_range[f] : 0.0;
    return out;
  }
};

}  // namespace dgr
