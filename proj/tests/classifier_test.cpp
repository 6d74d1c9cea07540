#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "datagrinder/classifier.hpp"
#include "datagrinder/datagen.hpp"

using dgr::Dataset;
using dgr::DataGrinderModel;
using dgr::GenConfig;

namespace {

Dataset make_dataset(std::vector<std::vector<double>> rows, std::vector<int> labels, int classes) {
  Dataset ds;
  ds.feature_count = rows.front().size();
  ds.rows = std::move(rows);
  ds.labels = std::move(labels);
  for (int c = 0; c < classes; ++c) ds.label_names.push_back(std::to_string(c));
  return ds;
}

GenConfig base_config(int classes, std::size_t dims, double lambda, std::size_t samples, std::uint64_t seed) {
  GenConfig cfg;
  cfg.classes = classes;
  cfg.dims = dims;
  cfg.lambda = lambda;
  cfg.samples = samples;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("raw model holds class_count * pairs aspects in canonical order") {
  const Dataset d5c2 = dgr::generate(base_config(2, 5, 1.0, 200, 1));
  const DataGrinderModel m2 = dgr::train(d5c2);
  REQUIRE(m2.aspects.size() == 20);

  const Dataset d5c5 = dgr::generate(base_config(5, 5, 1.0, 500, 2));
  const DataGrinderModel m5 = dgr::train(d5c5);
  REQUIRE(m5.aspects.size() == 50);

  const std::vector<std::pair<std::size_t, std::size_t>> pair_order = {
      {0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  for (std::size_t i = 0; i < m5.aspects.size(); ++i) {
    REQUIRE(m5.aspects[i].class_label == static_cast<int>(i / 10));
    REQUIRE(m5.aspects[i].f1 == pair_order[i % 10].first);
    REQUIRE(m5.aspects[i].f2 == pair_order[i % 10].second);
    REQUIRE(m5.aspects[i].f1 < m5.aspects[i].f2);
  }
}

TEST_CASE("train validates feature count and per-class coverage") {
  Dataset one_feature;
  one_feature.feature_count = 1;
  one_feature.rows = {{1.0}, {2.0}};
  one_feature.labels = {0, 1};
  one_feature.label_names = {"a", "b"};
  REQUIRE_THROWS_AS(dgr::train(one_feature), std::invalid_argument);

  Dataset missing_class;
  missing_class.feature_count = 2;
  missing_class.rows = {{1.0, 2.0}, {3.0, 4.0}};
  missing_class.labels = {0, 0};
  missing_class.label_names = {"zero", "uno"};
  REQUIRE_THROWS_WITH(dgr::train(missing_class), Catch::Matchers::ContainsSubstring("uno"));

  Dataset empty;
  empty.feature_count = 2;
  REQUIRE_THROWS_AS(dgr::train(empty), std::invalid_argument);
}

TEST_CASE("one training point per class gives exact-match point aspects") {
  const Dataset ds = make_dataset({{0.0, 0.0, 0.0}, {5.0, 5.0, 5.0}}, {0, 1}, 2);
  const DataGrinderModel m = dgr::train(ds);
  REQUIRE(m.aspects.size() == 6);
  for (const auto& a : m.aspects) {
    REQUIRE(a.hull.upper.size() == 1);
    REQUIRE(a.hull.upper == a.hull.lower);
  }

  REQUIRE(dgr::score(m, {0.0, 0.0, 0.0}) == dgr::ScoreVector{3, 0});
  REQUIRE(dgr::score(m, {5.0, 5.0, 5.0}) == dgr::ScoreVector{0, 3});
  // Nudging one coordinate leaves only the untouched pair's vote.
  REQUIRE(dgr::score(m, {0.0, 0.0, 0.1}) == dgr::ScoreVector{1, 0});
  REQUIRE(dgr::classify(m, {0.0, 0.0, 0.1}) == 0);
  // A row outside every aspect falls back to the nearest training row.
  REQUIRE(dgr::score(m, {0.1, 0.1, 0.1}) == dgr::ScoreVector{0, 0});
  REQUIRE(dgr::classify(m, {0.1, 0.1, 0.1}) == 0);
  REQUIRE(dgr::classify(m, {4.9, 4.9, 4.9}) == 1);
}

TEST_CASE("separable generated classes yield disjoint boxes and perfect accuracy") {
  const auto [train_set, test_set] = dgr::generate_train_test(base_config(2, 5, 1.0, 400, 2718));
  const DataGrinderModel m = dgr::train(train_set);

  for (const auto& a : m.aspects) {
    const double lo = static_cast<double>(a.class_label);
    for (const auto* chain : {&a.hull.upper, &a.hull.lower}) {
      for (const auto& p : *chain) {
        REQUIRE(p.x >= lo);
        REQUIRE(p.x < lo + 1.0);
        REQUIRE(p.y >= lo);
        REQUIRE(p.y < lo + 1.0);
      }
    }
    // Stored chains are canonical: re-canonicalizing changes nothing.
    REQUIRE(dgr::canonicalize_hull(a.hull) == a.hull);
  }

  REQUIRE(dgr::accuracy(m, train_set) == 1.0);
  REQUIRE(dgr::accuracy(m, test_set) == 1.0);

  // Every training row is inside all 10 of its own class's aspects.
  for (std::size_t r = 0; r < 50; ++r) {
    const auto counts = dgr::score(m, train_set.rows[r]);
    REQUIRE(counts[static_cast<std::size_t>(train_set.labels[r])] == 10);
  }
}

TEST_CASE("aspect containment is boundary-inclusive on the projected pair") {
  const Dataset square = make_dataset({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}, {0, 0, 0, 0}, 1);
  const DataGrinderModel m = dgr::train(square);
  REQUIRE(m.aspects.size() == 1);
  const auto& a = m.aspects.front();
  REQUIRE(dgr::aspect_contains(a, {0.5, 0.5}));
  REQUIRE_FALSE(dgr::aspect_contains(a, {1.5, 0.5}));
  REQUIRE(dgr::aspect_contains(a, {1.0, 0.5}));
  REQUIRE(dgr::aspect_contains(a, {0.0, 0.0}));
}

TEST_CASE("overlapping classes can collect votes for several classes at once") {
  const auto [train_set, test_set] = dgr::generate_train_test(base_config(2, 5, 5.0, 1000, 31));
  const DataGrinderModel m = dgr::train(train_set);
  bool multi_positive = false;
  for (const auto& row : test_set.rows) {
    const auto counts = dgr::score(m, row);
    if (counts[0] > 0 && counts[1] > 0) {
      multi_positive = true;
      break;
    }
  }
  REQUIRE(multi_positive);
}

TEST_CASE("classify breaks vote ties toward the smallest class id") {
  // Two classes with identical square hulls: every interior row ties 1-1.
  const Dataset ds = make_dataset({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0},
                                   {0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}},
                                  {0, 0, 0, 0, 1, 1, 1, 1}, 2);
  const DataGrinderModel m = dgr::train(ds);
  REQUIRE(dgr::score(m, {0.5, 0.5}) == dgr::ScoreVector{1, 1});
  REQUIRE(dgr::classify(m, {0.5, 0.5}) == 0);
}

TEST_CASE("aspect accuracies divide own-class containment by the full training size") {
  const Dataset ds = make_dataset({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {5.0, 5.0}}, {0, 0, 0, 1}, 2);
  DataGrinderModel m = dgr::train(ds);
  dgr::evaluate_aspects(m);
  REQUIRE(m.aspects.size() == 2);
  REQUIRE(m.aspects[0].train_accuracy == 0.75);  // 3 own rows of 4 total
  REQUIRE(m.aspects[1].train_accuracy == 0.25);  // 1 own row of 4 total

  // Nested squares: each aspect contains 4 own rows out of 8 -> exactly 1/2,
  // even though the outer hull also contains the other class's rows.
  const Dataset nested = make_dataset({{0.0, 0.0}, {0.0, 10.0}, {10.0, 0.0}, {10.0, 10.0},
                                       {4.0, 4.0}, {4.0, 6.0}, {6.0, 4.0}, {6.0, 6.0}},
                                      {0, 0, 0, 0, 1, 1, 1, 1}, 2);
  DataGrinderModel nm = dgr::train(nested);
  dgr::evaluate_aspects(nm);
  REQUIRE(nm.aspects[0].train_accuracy == 0.5);
  REQUIRE(nm.aspects[1].train_accuracy == 0.5);
}

TEST_CASE("separable equal-sized classes give every aspect accuracy exactly one half") {
  const Dataset ds = dgr::generate(base_config(2, 5, 1.0, 300, 77));
  DataGrinderModel m = dgr::train(ds);
  dgr::evaluate_aspects(m);
  for (const auto& a : m.aspects) REQUIRE(a.train_accuracy == 0.5);
}

TEST_CASE("filtering keeps aspects at or above theta") {
  const Dataset ds = make_dataset({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {5.0, 5.0}}, {0, 0, 0, 1}, 2);
  DataGrinderModel m = dgr::train(ds);

  REQUIRE_THROWS_AS(dgr::filter_aspects(m, 0.5), std::logic_error);
  dgr::evaluate_aspects(m);
  REQUIRE_THROWS_AS(dgr::filter_aspects(m, -0.1), std::invalid_argument);
  REQUIRE_THROWS_AS(dgr::filter_aspects(m, 1.1), std::invalid_argument);

  REQUIRE(dgr::filter_aspects(m, 0.0).aspects.size() == 2);
  REQUIRE(dgr::filter_aspects(m, 0.25).aspects.size() == 2);
  REQUIRE(dgr::filter_aspects(m, 0.3).aspects.size() == 1);
  REQUIRE(dgr::filter_aspects(m, 0.3).aspects[0].class_label == 0);
  REQUIRE(dgr::filter_aspects(m, 0.76).aspects.empty());

  const DataGrinderModel all_filtered = dgr::filter_aspects(m, 1.0);
  REQUIRE(all_filtered.aspects.empty());
  REQUIRE(all_filtered.theta == 1.0);
  // Constant class 0, even right on top of a class-1 training row: the
  // nearest-neighbour fallback is bypassed when filtering removed everything.
  REQUIRE(dgr::classify(all_filtered, {5.0, 5.0}) == 0);
  REQUIRE(dgr::classify(all_filtered, {0.0, 0.0}) == 0);
}

TEST_CASE("aspect survival shrinks monotonically as theta grows") {
  const Dataset ds = dgr::generate(base_config(3, 4, 5.0, 240, 12));
  DataGrinderModel m = dgr::train(ds);
  dgr::evaluate_aspects(m);

  using Key = std::tuple<int, std::size_t, std::size_t>;
  std::set<Key> previous;
  bool first = true;
  for (double theta : dgr::theta_grid(0.05)) {
    std::set<Key> current;
    for (const auto& a : dgr::filter_aspects(m, theta).aspects)
      current.insert({a.class_label, a.f1, a.f2});
    if (!first) {
      for (const auto& k : current) REQUIRE(previous.count(k) == 1);
      REQUIRE(current.size() <= previous.size());
    }
    previous = std::move(current);
    first = false;
  }
}

TEST_CASE("theta grid runs from zero to exactly one") {
  const auto fine = dgr::theta_grid(0.01);
  REQUIRE(fine.size() == 101);
  REQUIRE(fine.front() == 0.0);
  REQUIRE(fine.back() == 1.0);

  const auto coarse = dgr::theta_grid(0.3);
  REQUIRE(coarse.size() == 5);
  REQUIRE(coarse.front() == 0.0);
  REQUIRE(coarse.back() == 1.0);

  REQUIRE(dgr::theta_grid(1.0) == std::vector<double>{0.0, 1.0});
  REQUIRE_THROWS_AS(dgr::theta_grid(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(dgr::theta_grid(1.5), std::invalid_argument);
}

TEST_CASE("theta sweep is perfect through 0.5 and constant class 0 at 1") {
  const auto [train_set, test_set] = dgr::generate_train_test(base_config(2, 5, 1.0, 300, 5));
  const dgr::ThetaSweep sweep = dgr::sweep_theta(train_set, test_set, 0.05);
  REQUIRE(sweep.curve.size() == 21);

  std::size_t zeros = 0;
  for (std::size_t r = 0; r < test_set.size(); ++r)
    if (test_set.label_names[static_cast<std::size_t>(test_set.labels[r])] == "0") ++zeros;
  const double zero_freq = static_cast<double>(zeros) / static_cast<double>(test_set.size());

  for (const auto& pt : sweep.curve) {
    if (pt.theta <= 0.5) REQUIRE(pt.accuracy == 1.0);
  }
  REQUIRE(sweep.curve.back().theta == 1.0);
  REQUIRE(sweep.curve.back().accuracy == zero_freq);
  REQUIRE(sweep.best_accuracy == 1.0);
  REQUIRE(sweep.best_theta == 0.0);  // ties resolve to the smallest theta
}

TEST_CASE("nearest neighbour baseline breaks distance ties by first occurrence") {
  const std::vector<std::vector<double>> rows = {{0.0, 0.0}, {2.0, 0.0}};
  const std::vector<int> labels = {0, 1};
  REQUIRE(dgr::nn_baseline(rows, labels, {1.0, 0.0}) == 0);
  REQUIRE(dgr::nn_baseline(rows, labels, {1.5, 0.0}) == 1);
  REQUIRE(dgr::nn_baseline(rows, labels, {2.0, 0.0}) == 1);
  REQUIRE_THROWS_AS(dgr::nn_baseline({}, {}, {1.0}), std::invalid_argument);
}

TEST_CASE("rows of the wrong width are rejected") {
  const Dataset ds = make_dataset({{0.0, 0.0}, {5.0, 5.0}}, {0, 1}, 2);
  const DataGrinderModel m = dgr::train(ds);
  REQUIRE_THROWS_AS(dgr::classify(m, {1.0, 2.0, 3.0}), std::invalid_argument);
  REQUIRE_THROWS_AS(dgr::score(m, {1.0}), std::invalid_argument);
}

TEST_CASE("normalization is fit on training rows and applied to queries") {
  GenConfig cfg = base_config(2, 2, 1.0, 200, 44);
  auto [train_set, test_set] = dgr::generate_train_test(cfg);
  // Stretch one axis by a million so raw and scaled spaces differ wildly.
  for (auto& row : train_set.rows) row[1] *= 1e6;
  for (auto& row : test_set.rows) row[1] *= 1e6;

  const DataGrinderModel m = dgr::train(train_set, true);
  REQUIRE(m.scaler.has_value());
  REQUIRE(m.scaler->feat_range[1] > 1e5);
  for (const auto& row : m.train_rows)
    for (double v : row) {
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0);
    }
  REQUIRE(dgr::accuracy(m, test_set) == 1.0);
}

TEST_CASE("saved models load back with byte-identical serialization and predictions") {
  const auto [train_set, test_set] = dgr::generate_train_test(base_config(3, 4, 5.0, 240, 9));
  DataGrinderModel m = dgr::train(train_set, true);
  dgr::evaluate_aspects(m);
  const DataGrinderModel filtered = dgr::filter_aspects(m, 0.3);

  std::ostringstream first;
  dgr::save_model(filtered, first);
  std::istringstream in(first.str());
  const DataGrinderModel loaded = dgr::load_model(in);

  std::ostringstream second;
  dgr::save_model(loaded, second);
  REQUIRE(first.str() == second.str());

  REQUIRE(loaded.aspects.size() == filtered.aspects.size());
  REQUIRE(loaded.theta == filtered.theta);
  for (std::size_t r = 0; r < test_set.size(); ++r) {
    REQUIRE(dgr::classify(loaded, test_set.rows[r]) == dgr::classify(filtered, test_set.rows[r]));
    if (r < 40) REQUIRE(dgr::score(loaded, test_set.rows[r]) == dgr::score(filtered, test_set.rows[r]));
  }
}

TEST_CASE("malformed model files raise DataError") {
  {
    std::istringstream in("{}");
    REQUIRE_THROWS_AS(dgr::load_model(in), dgr::DataError);
  }
  {
    std::istringstream in("not json at all");
    REQUIRE_THROWS_AS(dgr::load_model(in), dgr::DataError);
  }
  {
    std::istringstream in(R"({"format":"something-else","version":1})");
    REQUIRE_THROWS_AS(dgr::load_model(in), dgr::DataError);
  }
  REQUIRE_THROWS_AS(dgr::load_model_file("/nonexistent/model.json"), dgr::DataError);
}
