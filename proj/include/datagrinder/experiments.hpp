#pragma once

// Experiment drivers shared by the CLI and the acceptance suite:
// cross-validation (optionally with a theta sweep and a 1-NN baseline),
// hull read-count benchmarks, and the synthetic-data sweeps.
//
// Every routine is deterministic given its seed; wall-clock time never
// influences reported numbers (it can only truncate benchmark trials, see
// BenchOptions::budget_ms).

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "datagrinder/classifier.hpp"
#include "datagrinder/datagen.hpp"
#include "datagrinder/dataset.hpp"
#include "datagrinder/pointgen.hpp"
#include "datagrinder/random.hpp"

namespace dgr {

inline Dataset subset_rows(const Dataset& ds, const std::vector<std::size_t>& idx) {
  Dataset out;
  out.feature_count = ds.feature_count;
  out.label_names = ds.label_names;
  out.feature_names = ds.feature_names;
  out.rows.reserve(idx.size());
  out.labels.reserve(idx.size());
  for (std::size_t i : idx) {
    out.rows.push_back(ds.rows[i]);
    out.labels.push_back(ds.labels[i]);
  }
  return out;
}

// ---- cross-validation ----

struct CvOptions {
  int folds = 10;
  std::uint64_t seed = 0;
  double theta = 0.0;
  bool sweep = false;       // when set, theta is ignored and a grid is swept
  double sweep_step = 0.01;
  bool normalize = true;
  bool baseline = false;    // also score the 1-NN baseline per fold
};

struct CvResult {
  int fold_count = 0;
  bool folds_reduced = false;
  std::vector<double> fold_accuracy;  // at opt.theta (grid point 0 when sweeping)
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation over folds

  bool has_baseline = false;
  std::vector<double> baseline_fold_accuracy;
  double baseline_mean = 0.0;
  double baseline_stddev = 0.0;

  bool swept = false;
  std::vector<ThetaPoint> mean_curve;  // per grid theta, mean accuracy over folds
  double best_theta = 0.0;
  double best_mean_accuracy = 0.0;
};

namespace detail {

inline void mean_stddev(const std::vector<double>& v, double& mean, double& sd) {
  mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  sd = std::sqrt(var / static_cast<double>(v.size()));
}

}  // namespace detail

inline CvResult run_cv(const Dataset& data, const CvOptions& opt) {
  const FoldPlan plan = stratified_folds(data.labels, opt.folds, opt.seed);
  CvResult res;
  res.fold_count = plan.fold_count;
  res.folds_reduced = plan.reduced;
  res.swept = opt.sweep;

  const std::vector<double> grid = opt.sweep ? theta_grid(opt.sweep_step) : std::vector<double>{opt.theta};
  std::vector<double> curve_sum(grid.size(), 0.0);

  for (int f = 0; f < plan.fold_count; ++f) {
    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t r = 0; r < data.size(); ++r)
      (plan.fold_of_row[r] == f ? test_idx : train_idx).push_back(r);
    const Dataset train_set = subset_rows(data, train_idx);
    const Dataset test_set = subset_rows(data, test_idx);

    DataGrinderModel m = train(train_set, opt.normalize);
    evaluate_aspects(m);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const double acc = accuracy(filter_aspects(m, grid[g]), test_set);
      curve_sum[g] += acc;
      if (g == 0) res.fold_accuracy.push_back(acc);
    }

    if (opt.baseline) {
      std::size_t hits = 0;
      for (std::size_t r = 0; r < test_set.size(); ++r) {
        const int pred = nn_baseline(m.train_rows, m.train_labels,
                                     detail::model_space(m, test_set.rows[r]));
        if (m.label_names[static_cast<std::size_t>(pred)] ==
            test_set.label_names[static_cast<std::size_t>(test_set.labels[r])])
          ++hits;
      }
      res.baseline_fold_accuracy.push_back(static_cast<double>(hits) /
                                           static_cast<double>(test_set.size()));
    }
  }

  detail::mean_stddev(res.fold_accuracy, res.mean, res.stddev);
  if (opt.baseline) {
    res.has_baseline = true;
    detail::mean_stddev(res.baseline_fold_accuracy, res.baseline_mean, res.baseline_stddev);
  }
  if (opt.sweep) {
    res.best_mean_accuracy = -1.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const double mean_acc = curve_sum[g] / static_cast<double>(plan.fold_count);
      res.mean_curve.push_back({grid[g], mean_acc});
      if (mean_acc > res.best_mean_accuracy) {
        res.best_mean_accuracy = mean_acc;
        res.best_theta = grid[g];
      }
    }
  }
  return res;
}

// ---- hull benchmarks ----

struct BenchOptions {
  std::vector<std::size_t> sizes = {100, 1000, 10000};
  int trials = 5;
  std::uint64_t seed = 0;
  std::string distribution = "uniform";  // or "normal"
  std::size_t naive_cap = 2000;          // naive is skipped above this size
  double budget_ms = 60000.0;            // per table cell; stops further trials
};

struct BenchRow {
  std::size_t n = 0;
  std::string algorithm;  // "naive" | "classic" | "grind"
  int trials = 0;         // trials actually run (0 when skipped)
  double mean_reads = 0.0;
  double reads_per_n = 0.0;
  double mean_ms = 0.0;   // wall time; report separately from deterministic fields
  std::string status;     // "ok" or the reason the cell was skipped/truncated
};

inline std::vector<BenchRow> bench_hulls(const BenchOptions& opt) {
  if (opt.trials < 1) throw std::invalid_argument("bench_hulls: need at least 1 trial");
  std::vector<BenchRow> rows;
  const std::vector<std::string> algos = {"naive", "classic", "grind"};
  for (std::size_t si = 0; si < opt.sizes.size(); ++si) {
    const std::size_t n = opt.sizes[si];
    if (n < 3) throw std::invalid_argument("bench_hulls: sizes must be at least 3");
    for (const auto& algo : algos) {
      BenchRow row;
      row.n = n;
      row.algorithm = algo;
      if (algo == "naive" && n > opt.naive_cap) {
        row.status = "skipped: above naive cap " + std::to_string(opt.naive_cap);
        rows.push_back(row);
        continue;
      }
      double reads_sum = 0.0, ms_sum = 0.0;
      int done = 0;
      for (int t = 0; t < opt.trials; ++t) {
        const auto pts =
            named_points(opt.distribution, n, sub_seed(sub_seed(opt.seed, si), static_cast<std::uint64_t>(t)));
        ReadCounter rc;
        const auto t0 = std::chrono::steady_clock::now();
        try {
          if (algo == "naive")
            naive_convex_hull(pts, &rc);
          else if (algo == "classic")
            classic_convex_hull(pts, &rc);
          else
            candidate_elimination_convex_hull(pts, &rc);
        } catch (const DegenerateHull&) {
          // Random clouds never degenerate; counters still reflect the work.
        }
        const auto t1 = std::chrono::steady_clock::now();
        reads_sum += static_cast<double>(rc.reads);
        ms_sum += std::chrono::duration<double, std::milli>(t1 - t0).count();
        ++done;
        if (ms_sum > opt.budget_ms && t + 1 < opt.trials) break;
      }
      row.trials = done;
      row.mean_reads = reads_sum / done;
      row.reads_per_n = row.mean_reads / static_cast<double>(n);
      row.mean_ms = ms_sum / done;
      row.status = done == opt.trials ? "ok" : "truncated: time budget";
      rows.push_back(row);
    }
  }
  return rows;
}

// ---- synthetic-data sweeps ----

struct SweepOptions {
  std::vector<double> values;  // lambda values, or class counts for class_sweep
  int seeds = 5;               // independent datasets averaged per value
  std::size_t samples = 1000;  // per split (train and test each)
  std::size_t dims = 5;
  double lambda = 5.0;         // fixed lambda for class_sweep
  std::uint64_t seed = 0;
  bool normalize = false;      // generated data is already commensurate
};

struct SweepRow {
  double value = 0.0;
  int seeds = 0;
  double mean_accuracy = 0.0;
};

namespace detail {

inline double mean_generated_accuracy(const GenConfig& base, int seeds, std::uint64_t master,
                                      std::uint64_t value_index, bool normalize) {
  double sum = 0.0;
  for (int s = 0; s < seeds; ++s) {
    GenConfig cfg = base;
    cfg.seed = sub_seed(sub_seed(master, value_index), static_cast<std::uint64_t>(s));
    const auto [train_set, test_set] = generate_train_test(cfg);
    // theta = 0 keeps every aspect, so the raw trained model scores directly.
    sum += accuracy(train(train_set, normalize), test_set);
  }
  return sum / seeds;
}

}  // namespace detail

// Fixes C = 2 and varies lambda (harder as lambda grows).
inline std::vector<SweepRow> lambda_sweep(const SweepOptions& opt) {
  if (opt.values.empty()) throw std::invalid_argument("lambda_sweep: no lambda values");
  if (opt.seeds < 1) throw std::invalid_argument("lambda_sweep: need at least 1 seed");
  std::vector<SweepRow> rows;
  for (std::size_t vi = 0; vi < opt.values.size(); ++vi) {
    GenConfig cfg;
    cfg.classes = 2;
    cfg.dims = opt.dims;
    cfg.lambda = opt.values[vi];
    cfg.samples = opt.samples;
    rows.push_back({opt.values[vi], opt.seeds,
                    detail::mean_generated_accuracy(cfg, opt.seeds, opt.seed, vi, opt.normalize)});
  }
  return rows;
}

// Fixes lambda (default 5) and varies the class count.
inline std::vector<SweepRow> class_sweep(const SweepOptions& opt) {
  if (opt.values.empty()) throw std::invalid_argument("class_sweep: no class counts");
  if (opt.seeds < 1) throw std::invalid_argument("class_sweep: need at least 1 seed");
  std::vector<SweepRow> rows;
  for (std::size_t vi = 0; vi < opt.values.size(); ++vi) {
    const int classes = static_cast<int>(opt.values[vi]);
    if (classes < 2 || static_cast<double>(classes) != opt.values[vi])
      throw std::invalid_argument("class_sweep: class counts must be integers >= 2");
    GenConfig cfg;
    cfg.classes = classes;
    cfg.dims = opt.dims;
    cfg.lambda = opt.lambda;
    cfg.samples = opt.samples;
    rows.push_back({opt.values[vi], opt.seeds,
                    detail::mean_generated_accuracy(cfg, opt.seeds, opt.seed, vi, opt.normalize)});
  }
  return rows;
}

// Full (theta, test accuracy) curve on one generated train/test pair.
inline ThetaSweep theta_curve_generated(const GenConfig& cfg, double step, bool normalize = false) {
  const auto [train_set, test_set] = generate_train_test(cfg);
  return sweep_theta(train_set, test_set, step, normalize);
}

}  // namespace dgr
