#pragma once

// The DataGrinder classifier: one 2D convex hull per (class, feature pair).
// A test row votes for every class whose hull contains its projection on
// that pair; the argmax class wins (ties -> smallest class id). Rows outside
// every hull fall back to the 1-NN label over the retained training rows,
// except when filtering removed all hulls, in which case class 0 is returned.
//
// Hulls whose training projection is degenerate (a single point or a
// collinear set) are stored with upper == lower and use inclusive
// point/segment containment.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "datagrinder/dataset.hpp"
#include "datagrinder/geometry.hpp"

namespace dgr {

struct TwoDAspect {
  int class_label = 0;
  std::size_t f1 = 0, f2 = 1;  // f1 < f2
  Hull hull;                   // canonical chains; degenerate: upper == lower
  double train_accuracy = -1.0;  // negative until evaluate_aspects runs
};

struct DataGrinderModel {
  int class_count = 0;
  std::size_t feature_count = 0;
  double theta = 0.0;  // filtering ratio already applied to `aspects`
  std::vector<std::string> label_names;
  std::optional<MinMaxScaler> scaler;  // set when trained with normalization
  std::vector<TwoDAspect> aspects;
  // Training data retained for the nearest-neighbour fallback, stored in
  // model space (scaled when a scaler is present).
  std::vector<std::vector<double>> train_rows;
  std::vector<int> train_labels;
};

using ScoreVector = std::vector<int>;

namespace detail {

inline std::vector<double> model_space(const DataGrinderModel& m, const std::vector<double>& raw) {
  if (raw.size() != m.feature_count)
    throw std::invalid_argument("row has " + std::to_string(raw.size()) + " features, model expects " +
                                std::to_string(m.feature_count));
  return m.scaler ? m.scaler->apply(raw) : raw;
}

}  // namespace detail

// Builds the raw model: C * d(d-1)/2 aspects ordered by class id, then by
// (f1, f2) lexicographically. Every class must contribute at least one row.
inline DataGrinderModel train(const Dataset& data, bool normalize = false) {
  if (data.feature_count < 2) throw std::invalid_argument("train: need at least 2 features");
  if (data.rows.empty()) throw std::invalid_argument("train: empty dataset");
  const int classes = data.class_count();
  std::vector<std::size_t> class_size(static_cast<std::size_t>(classes), 0);
  for (int l : data.labels) ++class_size[static_cast<std::size_t>(l)];
  for (int c = 0; c < classes; ++c)
    if (class_size[static_cast<std::size_t>(c)] == 0)
      throw DataError("train: class '" + data.label_names[static_cast<std::size_t>(c)] + "' has no rows");

  DataGrinderModel m;
  m.class_count = classes;
  m.feature_count = data.feature_count;
  m.label_names = data.label_names;
  if (normalize) m.scaler = MinMaxScaler::fit(data.rows, data.feature_count);
  m.train_rows.reserve(data.size());
  for (const auto& row : data.rows) m.train_rows.push_back(m.scaler ? m.scaler->apply(row) : row);
  m.train_labels = data.labels;

  for (int c = 0; c < classes; ++c) {
    for (std::size_t f1 = 0; f1 + 1 < data.feature_count; ++f1) {
      for (std::size_t f2 = f1 + 1; f2 < data.feature_count; ++f2) {
        std::vector<Point2> proj;
        proj.reserve(class_size[static_cast<std::size_t>(c)]);
        for (std::size_t r = 0; r < m.train_rows.size(); ++r)
          if (m.train_labels[r] == c) proj.push_back({m.train_rows[r][f1], m.train_rows[r][f2]});
        TwoDAspect a;
        a.class_label = c;
        a.f1 = f1;
        a.f2 = f2;
        try {
          a.hull = canonicalize_hull(candidate_elimination_convex_hull(proj));
        } catch (const DegenerateHull& dh) {
          a.hull.upper = dh.chain;
          a.hull.lower = dh.chain;
        }
        m.aspects.push_back(std::move(a));
      }
    }
  }
  return m;
}

// Boundary-inclusive containment of the row's (f1, f2) projection.
inline bool aspect_contains(const TwoDAspect& a, const std::vector<double>& row) {
  return point_in_hull(a.hull, {row[a.f1], row[a.f2]});
}

// One containment vote per surviving aspect, accumulated per class.
inline ScoreVector score(const DataGrinderModel& m, const std::vector<double>& raw_row) {
  const auto row = detail::model_space(m, raw_row);
  ScoreVector counts(static_cast<std::size_t>(m.class_count), 0);
  for (const auto& a : m.aspects)
    if (aspect_contains(a, row)) ++counts[static_cast<std::size_t>(a.class_label)];
  return counts;
}

// Label of the Euclidean-nearest training row; distance ties keep the first
// occurrence. `row` must already be in the same space as `rows`.
inline int nn_baseline(const std::vector<std::vector<double>>& rows, const std::vector<int>& labels,
                       const std::vector<double>& row) {
  if (rows.empty()) throw std::invalid_argument("nn_baseline: empty training set");
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double d2 = 0.0;
    for (std::size_t f = 0; f < row.size(); ++f) {
      const double d = rows[i][f] - row[f];
      d2 += d * d;
    }
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return labels[best];
}

// Argmax class over containment votes (ties -> smallest class id). With no
// vote anywhere the 1-NN fallback over the retained training rows decides.
// A model whose aspects were all filtered away always answers class 0.
inline int classify(const DataGrinderModel& m, const std::vector<double>& raw_row) {
  if (m.aspects.empty()) return 0;
  const auto row = detail::model_space(m, raw_row);
  std::vector<int> counts(static_cast<std::size_t>(m.class_count), 0);
  for (const auto& a : m.aspects)
    if (aspect_contains(a, row)) ++counts[static_cast<std::size_t>(a.class_label)];
  int best_class = 0, best_count = 0;
  for (int c = 0; c < m.class_count; ++c) {
    if (counts[static_cast<std::size_t>(c)] > best_count) {
      best_count = counts[static_cast<std::size_t>(c)];
      best_class = c;
    }
  }
  if (best_count > 0) return best_class;
  return nn_baseline(m.train_rows, m.train_labels, row);
}

// Fills train_accuracy for every aspect from the retained training rows:
// the share of ALL training rows that both carry the aspect's class label
// and fall inside its hull (the denominator is the full training size).
inline void evaluate_aspects(DataGrinderModel& m) {
  if (m.train_rows.empty()) throw std::logic_error("evaluate_aspects: model retains no training rows");
  const double n = static_cast<double>(m.train_rows.size());
  for (auto& a : m.aspects) {
    std::size_t own_inside = 0;
    for (std::size_t r = 0; r < m.train_rows.size(); ++r)
      if (m.train_labels[r] == a.class_label && aspect_contains(a, m.train_rows[r])) ++own_inside;
    a.train_accuracy = static_cast<double>(own_inside) / n;
  }
}

// Keeps aspects with train_accuracy >= theta. theta = 0 keeps everything;
// theta = 1 empties the model whenever classes share the training set
// (every accuracy is then < 1), turning classify into the constant class 0.
inline DataGrinderModel filter_aspects(const DataGrinderModel& m, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("filter_aspects: theta must be in [0,1]");
  for (const auto& a : m.aspects)
    if (a.train_accuracy < 0.0)
      throw std::logic_error("filter_aspects: run evaluate_aspects first");
  DataGrinderModel out = m;
  out.theta = theta;
  out.aspects.clear();
  for (const auto& a : m.aspects)
    if (a.train_accuracy >= theta) out.aspects.push_back(a);
  return out;
}

// Share of rows whose predicted label NAME matches the row's label name,
// so train and test files may map label ids in different orders.
inline double accuracy(const DataGrinderModel& m, const Dataset& test) {
  if (test.rows.empty()) throw std::invalid_argument("accuracy: empty dataset");
  std::size_t hits = 0;
  for (std::size_t r = 0; r < test.rows.size(); ++r) {
    const int pred = classify(m, test.rows[r]);
    if (m.label_names[static_cast<std::size_t>(pred)] ==
        test.label_names[static_cast<std::size_t>(test.labels[r])])
      ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(test.rows.size());
}

struct ThetaPoint {
  double theta = 0.0;
  double accuracy = 0.0;
};

struct ThetaSweep {
  std::vector<ThetaPoint> curve;
  double best_theta = 0.0;
  double best_accuracy = 0.0;
};

// Grid {0, step, 2*step, ...} up to and always including exactly 1.0.
inline std::vector<double> theta_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("theta step must be in (0,1]");
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double t = static_cast<double>(i) * step;
    if (t >= 1.0 - 1e-12) break;
    grid.push_back(t);
  }
  grid.push_back(1.0);
  return grid;
}

// Trains and evaluates once, then measures test accuracy at every theta on
// the grid. Accuracy ties keep the smallest theta as best.
inline ThetaSweep sweep_theta(const Dataset& train_set, const Dataset& test_set, double step = 0.01,
                              bool normalize = false) {
  DataGrinderModel m = train(train_set, normalize);
  evaluate_aspects(m);
  ThetaSweep out;
  out.best_accuracy = -1.0;
  for (double t : theta_grid(step)) {
    const DataGrinderModel filtered = filter_aspects(m, t);
    const double acc = accuracy(filtered, test_set);
    out.curve.push_back({t, acc});
    if (acc > out.best_accuracy) {
      out.best_accuracy = acc;
      out.best_theta = t;
    }
  }
  return out;
}

// ---- persistence (JSON, schema documented in the README) ----

namespace detail {

inline nlohmann::json chain_to_json(const std::vector<Point2>& chain) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : chain) arr.push_back({p.x, p.y});
  return arr;
}

inline std::vector<Point2> chain_from_json(const nlohmann::json& arr) {
  std::vector<Point2> chain;
  for (const auto& e : arr) chain.push_back({e.at(0).get<double>(), e.at(1).get<double>()});
  return chain;
}

}  // namespace detail

inline void save_model(const DataGrinderModel& m, std::ostream& out) {
  nlohmann::json j;
  j["format"] = "datagrinder-model";
  j["version"] = 1;
  j["class_count"] = m.class_count;
  j["feature_count"] = m.feature_count;
  j["theta"] = m.theta;
  j["label_names"] = m.label_names;
  if (m.scaler) {
    j["normalization"] = {{"min", m.scaler->feat_min}, {"range", m.scaler->feat_range}};
  } else {
    j["normalization"] = nullptr;
  }
  j["aspects"] = nlohmann::json::array();
  for (const auto& a : m.aspects) {
    j["aspects"].push_back({{"class_label", a.class_label},
                            {"f1", a.f1},
                            {"f2", a.f2},
                            {"train_accuracy", a.train_accuracy},
                            {"upper", detail::chain_to_json(a.hull.upper)},
                            {"lower", detail::chain_to_json(a.hull.lower)}});
  }
  j["train_rows"] = m.train_rows;
  j["train_labels"] = m.train_labels;
  out << j.dump(2) << '\n';
}

inline void save_model_file(const DataGrinderModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write model file: " + path);
  save_model(m, out);
}

inline DataGrinderModel load_model(std::istream& in, const std::string& origin = "<stream>") {
  nlohmann::json j;
  try {
    in >> j;
    if (j.at("format").get<std::string>() != "datagrinder-model")
      throw DataError(origin + ": not a model file");
    if (j.at("version").get<int>() != 1)
      throw DataError(origin + ": unsupported model version");
    DataGrinderModel m;
    m.class_count = j.at("class_count").get<int>();
    m.feature_count = j.at("feature_count").get<std::size_t>();
    m.theta = j.at("theta").get<double>();
    m.label_names = j.at("label_names").get<std::vector<std::string>>();
    if (!j.at("normalization").is_null()) {
      MinMaxScaler s;
      s.feat_min = j["normalization"].at("min").get<std::vector<double>>();
      s.feat_range = j["normalization"].at("range").get<std::vector<double>>();
      if (s.feat_min.size() != m.feature_count || s.feat_range.size() != m.feature_count)
        throw DataError(origin + ": normalization size mismatch");
      m.scaler = std::move(s);
    }
    for (const auto& e : j.at("aspects")) {
      TwoDAspect a;
      a.class_label = e.at("class_label").get<int>();
      a.f1 = e.at("f1").get<std::size_t>();
      a.f2 = e.at("f2").get<std::size_t>();
      a.train_accuracy = e.at("train_accuracy").get<double>();
      a.hull.upper = detail::chain_from_json(e.at("upper"));
      a.hull.lower = detail::chain_from_json(e.at("lower"));
      if (a.class_label < 0 || a.class_label >= m.class_count || a.f1 >= a.f2 || a.f2 >= m.feature_count ||
          a.hull.upper.empty() || a.hull.lower.empty())
        throw DataError(origin + ": malformed aspect");
      m.aspects.push_back(std::move(a));
    }
    m.train_rows = j.at("train_rows").get<std::vector<std::vector<double>>>();
    m.train_labels = j.at("train_labels").get<std::vector<int>>();
    if (m.train_rows.size() != m.train_labels.size())
      throw DataError(origin + ": training row/label size mismatch");
    for (const auto& row : m.train_rows)
      if (row.size() != m.feature_count) throw DataError(origin + ": training row width mismatch");
    if (m.class_count < 1 || static_cast<std::size_t>(m.class_count) != m.label_names.size())
      throw DataError(origin + ": class_count does not match label_names");
    return m;
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(origin + ": invalid model file: " + ex.what());
  }
}

inline DataGrinderModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file: " + path);
  return load_model(in, path);
}

}  // namespace dgr
