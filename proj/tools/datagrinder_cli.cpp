// Command-line harness: hull computations and benchmarks, synthetic data
// generation, classifier training/prediction, cross-validation, and the
// sweep experiments. All reports go to stdout (or --out) and are
// deterministic under a fixed --seed; wall-clock timings go to stderr only.
//
// Exit codes: 0 success, 1 usage error (bad flags or parameter values),
// 2 data error (unreadable/malformed/degenerate input).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "datagrinder/classifier.hpp"
#include "datagrinder/datagen.hpp"
#include "datagrinder/dataset.hpp"
#include "datagrinder/experiments.hpp"
#include "datagrinder/geometry.hpp"
#include "datagrinder/parallel_hull.hpp"
#include "datagrinder/pointgen.hpp"

namespace {

std::string fmt(double v) {
  std::string s;
  dgr::format_double(s, v);
  return s;
}

// Routes report output to --out when given, else stdout.
class Report {
 public:
  explicit Report(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw dgr::DataError("cannot write output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// Point list CSV: two numeric columns per row, optional header line.
std::vector<dgr::Point2> load_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dgr::DataError("cannot open file: " + path);
  std::vector<dgr::Point2> pts;
  std::string line;
  std::size_t line_no = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (dgr::detail::trim(line).empty()) continue;
    const auto cols = dgr::detail::split_csv_line(line);
    if (cols.size() != 2)
      throw dgr::DataError(path + ":" + std::to_string(line_no) + ": expected 2 columns, got " +
                           std::to_string(cols.size()));
    double x, y;
    const bool ok = dgr::detail::parse_double(cols[0], x) && dgr::detail::parse_double(cols[1], y);
    if (!ok) {
      if (!saw_data) continue;  // header line
      throw dgr::DataError(path + ":" + std::to_string(line_no) + ": not numeric");
    }
    if (!std::isfinite(x) || !std::isfinite(y))
      throw dgr::DataError(path + ":" + std::to_string(line_no) + ": non-finite coordinate");
    pts.push_back({x, y});
    saw_data = true;
  }
  if (pts.empty()) throw dgr::DataError(path + ": no points");
  return pts;
}

struct HullArgs {
  std::string algorithm = "grind";
  std::string data;
  std::string gen = "uniform";
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::size_t partitions = 1;
  std::size_t naive_cap = 2000;
  std::string out;
};

int cmd_hull(const HullArgs& a) {
  std::vector<dgr::Point2> pts =
      a.data.empty() ? dgr::named_points(a.gen, a.n, a.seed) : load_points_csv(a.data);

  std::size_t partitions = a.partitions;
  if (a.algorithm == "dc" && partitions <= 1) partitions = 4;
  const bool use_dc = partitions > 1;
  if (a.algorithm == "naive" && pts.size() > a.naive_cap) {
    std::cerr << "error: naive algorithm is O(n^3) and refused for n > " << a.naive_cap
              << " (raise --naive-cap to override)\n";
    return 1;
  }

  dgr::ReadCounter rc;
  dgr::Hull hull;
  if (use_dc)
    hull = dgr::divide_conquer_hull(pts, partitions, &rc);
  else if (a.algorithm == "naive")
    hull = dgr::naive_convex_hull(pts, &rc);
  else if (a.algorithm == "classic")
    hull = dgr::classic_convex_hull(pts, &rc);
  else
    hull = dgr::candidate_elimination_convex_hull(pts, &rc);
  hull = dgr::canonicalize_hull(hull);

  Report report(a.out);
  std::ostream& os = report.stream();
  const std::size_t vertices = hull.upper.size() + hull.lower.size() - 2;
  const std::string algo_name = use_dc ? "dc" : a.algorithm;
  os << "algorithm,n,partitions,reads,reads_per_n,hull_vertices\n"
     << algo_name << ',' << pts.size() << ',' << (use_dc ? partitions : 1) << ',' << rc.reads << ','
     << fmt(static_cast<double>(rc.reads) / static_cast<double>(pts.size())) << ',' << vertices << "\n\n";
  os << "chain,index,x,y\n";
  for (std::size_t i = 0; i < hull.upper.size(); ++i)
    os << "upper," << i << ',' << fmt(hull.upper[i].x) << ',' << fmt(hull.upper[i].y) << '\n';
  for (std::size_t i = 0; i < hull.lower.size(); ++i)
    os << "lower," << i << ',' << fmt(hull.lower[i].x) << ',' << fmt(hull.lower[i].y) << '\n';
  return 0;
}

struct BenchArgs {
  dgr::BenchOptions opt;
  std::string out;
};

int cmd_bench(const BenchArgs& a) {
  const auto rows = dgr::bench_hulls(a.opt);
  Report report(a.out);
  std::ostream& os = report.stream();
  os << "n,algorithm,trials,mean_reads,reads_per_n,status\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.algorithm << ',' << r.trials << ',';
    if (r.trials > 0)
      os << fmt(r.mean_reads) << ',' << fmt(r.reads_per_n);
    else
      os << ',';
    os << ",\"" << r.status << "\"\n";
    if (r.trials > 0)
      std::cerr << "timing: n=" << r.n << " algorithm=" << r.algorithm << " mean_ms=" << r.mean_ms
                << '\n';
  }
  return 0;
}

struct GenArgs {
  dgr::GenConfig cfg;
  std::string out;
  std::string test_out;
};

int cmd_gen(const GenArgs& a) {
  if (a.test_out.empty()) {
    const dgr::Dataset ds = dgr::generate(a.cfg);
    std::ofstream f(a.out);
    if (!f) throw dgr::DataError("cannot write output file: " + a.out);
    dgr::save_csv(ds, f);
  } else {
    const auto [train_set, test_set] = dgr::generate_train_test(a.cfg);
    std::ofstream f(a.out);
    if (!f) throw dgr::DataError("cannot write output file: " + a.out);
    dgr::save_csv(train_set, f);
    std::ofstream g(a.test_out);
    if (!g) throw dgr::DataError("cannot write output file: " + a.test_out);
    dgr::save_csv(test_set, g);
  }
  std::cout << "key,value\nclasses," << a.cfg.classes << "\ndims," << a.cfg.dims << "\nlambda,"
            << fmt(a.cfg.lambda) << "\nsamples," << a.cfg.samples << "\nseed," << a.cfg.seed
            << "\nout," << a.out << '\n';
  if (!a.test_out.empty()) std::cout << "test_out," << a.test_out << '\n';
  return 0;
}

struct TrainArgs {
  std::string data;
  std::string model;
  double theta = 0.0;
  std::string normalize = "on";
  std::uint64_t unused_seed = 0;  // accepted for interface uniformity
};

// The dataset came from a file, so contract violations raised by train()
// (too few features, an empty class) are data errors here, not usage.
dgr::DataGrinderModel train_from_file(const dgr::Dataset& ds, bool normalize) {
  try {
    return dgr::train(ds, normalize);
  } catch (const std::invalid_argument& e) {
    throw dgr::DataError(e.what());
  }
}

int cmd_train(const TrainArgs& a) {
  const dgr::Dataset ds = dgr::load_csv_file(a.data);
  dgr::DataGrinderModel m = train_from_file(ds, a.normalize == "on");
  dgr::evaluate_aspects(m);
  const std::size_t total = m.aspects.size();
  const dgr::DataGrinderModel filtered = dgr::filter_aspects(m, a.theta);
  if (filtered.aspects.empty() && total > 0)
    std::cerr << "notice: theta " << fmt(a.theta) << " filtered out every aspect; the model predicts the "
              << "constant class '" << filtered.label_names.front()
              << "' (aspect accuracy is the share of all training rows captured, at most 1/classes "
              << "for balanced data)\n";
  dgr::save_model_file(filtered, a.model);
  std::cout << "key,value\nclasses," << filtered.class_count << "\nfeatures," << filtered.feature_count
            << "\nrows," << ds.size() << "\naspects_total," << total << "\naspects_kept,"
            << filtered.aspects.size() << "\ntheta," << fmt(a.theta) << "\nnormalize," << a.normalize
            << "\nmodel," << a.model << '\n';
  return 0;
}

struct PredictArgs {
  std::string model;
  std::string data;
  std::string out;
};

int cmd_predict(const PredictArgs& a) {
  const dgr::DataGrinderModel m = dgr::load_model_file(a.model);
  const dgr::Dataset ds = dgr::load_csv_file(a.data);
  if (ds.feature_count != m.feature_count)
    throw dgr::DataError("dimension mismatch: data has " + std::to_string(ds.feature_count) +
                         " features, model expects " + std::to_string(m.feature_count));

  Report report(a.out);
  std::ostream& os = report.stream();
  for (std::size_t f = 0; f < ds.feature_count; ++f) {
    os << (ds.feature_names.size() == ds.feature_count ? ds.feature_names[f] : "f" + std::to_string(f))
       << ',';
  }
  os << "label,predicted_label\n";
  std::size_t hits = 0;
  for (std::size_t r = 0; r < ds.size(); ++r) {
    std::string line;
    for (double v : ds.rows[r]) {
      dgr::format_double(line, v);
      line += ',';
    }
    const int pred = dgr::classify(m, ds.rows[r]);
    const std::string& pred_name = m.label_names[static_cast<std::size_t>(pred)];
    const std::string& true_name = ds.label_names[static_cast<std::size_t>(ds.labels[r])];
    if (pred_name == true_name) ++hits;
    os << line << true_name << ',' << pred_name << '\n';
  }
  std::cerr << "accuracy: " << fmt(static_cast<double>(hits) / static_cast<double>(ds.size())) << '\n';
  return 0;
}

struct CvArgs {
  std::string data;
  dgr::CvOptions opt;
  std::string normalize = "on";
  std::string baseline;
  std::string out;
};

int cmd_cv(const CvArgs& a) {
  dgr::CvOptions opt = a.opt;
  opt.normalize = a.normalize == "on";
  opt.baseline = a.baseline == "nn";
  const dgr::Dataset ds = dgr::load_csv_file(a.data);
  dgr::CvResult res;
  try {
    res = dgr::run_cv(ds, opt);
  } catch (const std::invalid_argument& e) {
    throw dgr::DataError(e.what());
  }
  if (res.folds_reduced)
    std::cerr << "warning: smallest class is smaller than --folds; using " << res.fold_count
              << " folds\n";

  Report report(a.out);
  std::ostream& os = report.stream();
  os << "metric,fold,value\n";
  for (std::size_t f = 0; f < res.fold_accuracy.size(); ++f)
    os << "accuracy," << f << ',' << fmt(res.fold_accuracy[f]) << '\n';
  os << "accuracy,mean," << fmt(res.mean) << '\n';
  os << "accuracy,stddev," << fmt(res.stddev) << '\n';
  if (res.has_baseline) {
    for (std::size_t f = 0; f < res.baseline_fold_accuracy.size(); ++f)
      os << "baseline_nn," << f << ',' << fmt(res.baseline_fold_accuracy[f]) << '\n';
    os << "baseline_nn,mean," << fmt(res.baseline_mean) << '\n';
    os << "baseline_nn,stddev," << fmt(res.baseline_stddev) << '\n';
  }
  if (res.swept) {
    for (const auto& pt : res.mean_curve)
      os << "theta_curve," << fmt(pt.theta) << ',' << fmt(pt.accuracy) << '\n';
    os << "best_theta,," << fmt(res.best_theta) << '\n';
    os << "best_theta_accuracy,," << fmt(res.best_mean_accuracy) << '\n';
  }
  return 0;
}

struct ExperimentArgs {
  std::string kind;
  std::vector<double> values;
  dgr::SweepOptions sweep;
  dgr::GenConfig gen;  // theta-curve on generated data
  double sweep_step = 0.01;
  std::string data;  // theta-curve on a CSV file instead
  int folds = 10;
  std::string normalize;  // empty = auto: off for generated data, on for --data
  std::string out;
};

int cmd_experiment(const ExperimentArgs& a) {
  Report report(a.out);
  std::ostream& os = report.stream();
  const bool normalize = a.normalize.empty() ? !a.data.empty() : a.normalize == "on";

  if (a.kind == "lambda-sweep") {
    dgr::SweepOptions opt = a.sweep;
    opt.values = a.values.empty() ? std::vector<double>{1, 2, 3, 4, 5, 6, 8, 10} : a.values;
    opt.normalize = normalize;
    os << "lambda,seeds,mean_accuracy\n";
    for (const auto& row : dgr::lambda_sweep(opt))
      os << fmt(row.value) << ',' << row.seeds << ',' << fmt(row.mean_accuracy) << '\n';
    return 0;
  }
  if (a.kind == "class-sweep") {
    dgr::SweepOptions opt = a.sweep;
    opt.values = a.values.empty() ? std::vector<double>{2, 3, 4, 5, 6, 8, 10} : a.values;
    opt.normalize = normalize;
    os << "classes,seeds,mean_accuracy\n";
    for (const auto& row : dgr::class_sweep(opt))
      os << fmt(row.value) << ',' << row.seeds << ',' << fmt(row.mean_accuracy) << '\n';
    return 0;
  }
  // theta-curve
  os << "theta,accuracy\n";
  if (!a.data.empty()) {
    dgr::CvOptions opt;
    opt.folds = a.folds;
    opt.seed = a.sweep.seed;
    opt.sweep = true;
    opt.sweep_step = a.sweep_step;
    opt.normalize = normalize;
    const dgr::Dataset ds = dgr::load_csv_file(a.data);
    dgr::CvResult res;
    try {
      res = dgr::run_cv(ds, opt);
    } catch (const std::invalid_argument& e) {
      throw dgr::DataError(e.what());
    }
    for (const auto& pt : res.mean_curve) os << fmt(pt.theta) << ',' << fmt(pt.accuracy) << '\n';
    std::cerr << "best theta " << fmt(res.best_theta) << " accuracy " << fmt(res.best_mean_accuracy)
              << " over " << res.fold_count << " folds\n";
  } else {
    const dgr::ThetaSweep sweep = dgr::theta_curve_generated(a.gen, a.sweep_step, normalize);
    for (const auto& pt : sweep.curve) os << fmt(pt.theta) << ',' << fmt(pt.accuracy) << '\n';
    std::cerr << "best theta " << fmt(sweep.best_theta) << " accuracy " << fmt(sweep.best_accuracy)
              << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex-hull toolkit and hull-ensemble classifier"};
  app.require_subcommand(1);

  HullArgs hull_args;
  auto* hull = app.add_subcommand("hull", "Compute one convex hull and report point reads");
  hull->add_option("--algorithm", hull_args.algorithm, "Hull algorithm")
      ->check(CLI::IsMember({"grind", "classic", "naive", "dc"}));
  hull->add_option("--data", hull_args.data, "Point CSV (x,y per row; optional header)");
  hull->add_option("--gen", hull_args.gen, "Generated point distribution")
      ->check(CLI::IsMember({"uniform", "normal"}));
  hull->add_option("--n", hull_args.n, "Generated point count")->check(CLI::Range(std::size_t{3}, std::size_t{100000000}));
  hull->add_option("--seed", hull_args.seed, "Generator seed");
  hull->add_option("--partitions", hull_args.partitions, "Partition count (>1 uses divide and conquer)")
      ->check(CLI::PositiveNumber);
  hull->add_option("--naive-cap", hull_args.naive_cap, "Refuse naive algorithm above this size");
  hull->add_option("--out", hull_args.out, "Write the report here instead of stdout");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Benchmark hull algorithms over sizes and trials");
  bench->add_option("--sizes", bench_args.opt.sizes, "Point counts to benchmark")->delimiter(',');
  bench->add_option("--trials", bench_args.opt.trials, "Trials per table cell")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_args.opt.seed, "Master seed");
  bench->add_option("--gen", bench_args.opt.distribution, "Point distribution")
      ->check(CLI::IsMember({"uniform", "normal"}));
  bench->add_option("--naive-cap", bench_args.opt.naive_cap, "Skip naive above this size");
  bench->add_option("--budget-ms", bench_args.opt.budget_ms, "Per-cell wall-time budget in ms");
  bench->add_option("--out", bench_args.out, "Write the report here instead of stdout");

  GenArgs gen_args;
  gen_args.cfg.dims = 5;
  gen_args.cfg.samples = 1000;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset CSV");
  gen->add_option("--classes", gen_args.cfg.classes, "Class count")->check(CLI::PositiveNumber);
  gen->add_option("--dims", gen_args.cfg.dims, "Feature count")->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
  gen->add_option("--lambda", gen_args.cfg.lambda, "Class spread lambda")->check(CLI::PositiveNumber);
  gen->add_option("--samples", gen_args.cfg.samples, "Total rows per split")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_args.cfg.seed, "Generator seed");
  gen->add_option("--out", gen_args.out, "Output CSV path")->required();
  gen->add_option("--test-out", gen_args.test_out,
                  "Also write a test split (train/test then use sub-seeds of --seed)");

  TrainArgs train_args;
  auto* train = app.add_subcommand("train", "Train a model from a labeled CSV");
  train->add_option("--data", train_args.data, "Training CSV")->required();
  train->add_option("--model", train_args.model, "Model output path")->required();
  train->add_option("--theta", train_args.theta, "Filtering ratio")->check(CLI::Range(0.0, 1.0));
  train->add_option("--normalize", train_args.normalize, "Min-max normalization")
      ->check(CLI::IsMember({"on", "off"}));

  PredictArgs predict_args;
  auto* predict = app.add_subcommand("predict", "Predict labels for a CSV with a saved model");
  predict->add_option("--model", predict_args.model, "Model path")->required();
  predict->add_option("--data", predict_args.data, "Input CSV")->required();
  predict->add_option("--out", predict_args.out, "Predictions CSV path (default stdout)");

  CvArgs cv_args;
  auto* cv = app.add_subcommand("cv", "Stratified k-fold cross-validation");
  cv->add_option("--data", cv_args.data, "Labeled CSV")->required();
  cv->add_option("--folds", cv_args.opt.folds, "Fold count")->check(CLI::Range(2, 1000));
  cv->add_option("--seed", cv_args.opt.seed, "Fold shuffle seed");
  cv->add_option("--theta", cv_args.opt.theta, "Fixed filtering ratio")->check(CLI::Range(0.0, 1.0));
  cv->add_flag("--sweep", cv_args.opt.sweep, "Sweep theta over a grid instead of --theta");
  cv->add_option("--sweep-step", cv_args.opt.sweep_step, "Theta grid step")
      ->check(CLI::Range(1e-6, 1.0));
  cv->add_option("--normalize", cv_args.normalize, "Min-max normalization")
      ->check(CLI::IsMember({"on", "off"}));
  cv->add_option("--baseline", cv_args.baseline, "Also report a baseline")
      ->check(CLI::IsMember({"nn"}));
  cv->add_option("--out", cv_args.out, "Write the report here instead of stdout");

  ExperimentArgs exp_args;
  auto* exp = app.add_subcommand("experiment", "Synthetic sweeps and theta curves");
  exp->add_option("--kind", exp_args.kind, "Experiment kind")
      ->required()
      ->check(CLI::IsMember({"lambda-sweep", "class-sweep", "theta-curve"}));
  exp->add_option("--values", exp_args.values, "Lambda values or class counts")->delimiter(',');
  exp->add_option("--seeds", exp_args.sweep.seeds, "Datasets averaged per value")
      ->check(CLI::PositiveNumber);
  exp->add_option("--samples", exp_args.sweep.samples, "Rows per split")->check(CLI::PositiveNumber);
  exp->add_option("--dims", exp_args.sweep.dims, "Feature count")
      ->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
  exp->add_option("--lambda", exp_args.sweep.lambda, "Fixed lambda (class-sweep, theta-curve)")
      ->check(CLI::PositiveNumber);
  exp->add_option("--classes", exp_args.gen.classes, "Class count (theta-curve)")
      ->check(CLI::PositiveNumber);
  exp->add_option("--seed", exp_args.sweep.seed, "Master seed");
  exp->add_option("--sweep-step", exp_args.sweep_step, "Theta grid step")->check(CLI::Range(1e-6, 1.0));
  exp->add_option("--data", exp_args.data, "CSV dataset for theta-curve (cross-validated)");
  exp->add_option("--folds", exp_args.folds, "Folds for theta-curve on --data")
      ->check(CLI::Range(2, 1000));
  exp->add_option("--normalize", exp_args.normalize, "Min-max normalization")
      ->check(CLI::IsMember({"on", "off"}));
  exp->add_option("--out", exp_args.out, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (hull->parsed()) return cmd_hull(hull_args);
    if (bench->parsed()) return cmd_bench(bench_args);
    if (gen->parsed()) return cmd_gen(gen_args);
    if (train->parsed()) return cmd_train(train_args);
    if (predict->parsed()) return cmd_predict(predict_args);
    if (cv->parsed()) return cmd_cv(cv_args);
    if (exp->parsed()) {
      exp_args.gen.dims = exp_args.sweep.dims;
      exp_args.gen.lambda = exp_args.sweep.lambda;
      exp_args.gen.samples = exp_args.sweep.samples;
      exp_args.gen.seed = exp_args.sweep.seed;
      return cmd_experiment(exp_args);
    }
  } catch (const dgr::DegenerateHull& e) {
    std::cerr << "error: degenerate input: " << e.what() << '\n';
    return 2;
  } catch (const dgr::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
