#pragma once

// Synthetic dataset generator. Every feature of a class-c sample is drawn
// uniformly from [c, c + lambda): lambda < 1 leaves a gap between classes,
// lambda = 1 tiles the line exactly, lambda > 1 overlaps adjacent classes
// by (lambda - 1) / lambda of each class's mass per axis.

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "datagrinder/dataset.hpp"
#include "datagrinder/random.hpp"

namespace dgr {

struct GenConfig {
  int classes = 2;
  std::size_t dims = 2;
  double lambda = 1.0;
  std::size_t samples = 100;  // total rows in the split, spread over classes
  std::uint64_t seed = 0;
};

// Rows are emitted in rounds over the class ids (0,1,...,C-1,0,1,...) until
// each class has its share; when samples % classes != 0 the lowest class ids
// receive one extra row, so class sizes differ by at most one.
inline Dataset generate(const GenConfig& cfg) {
  if (cfg.classes < 1) throw std::invalid_argument("generate: need at least 1 class");
  if (cfg.dims < 1) throw std::invalid_argument("generate: need at least 1 feature");
  if (cfg.lambda <= 0.0) throw std::invalid_argument("generate: lambda must be positive");
  if (cfg.samples < static_cast<std::size_t>(cfg.classes))
    throw std::invalid_argument("generate: need at least one sample per class");

  const std::size_t classes = static_cast<std::size_t>(cfg.classes);
  std::vector<std::size_t> quota(classes, cfg.samples / classes);
  for (std::size_t c = 0; c < cfg.samples % classes; ++c) ++quota[c];

  Dataset ds;
  ds.feature_count = cfg.dims;
  ds.rows.reserve(cfg.samples);
  ds.labels.reserve(cfg.samples);
  for (std::size_t c = 0; c < classes; ++c) ds.label_names.push_back(std::to_string(c));

  std::mt19937_64 gen(cfg.seed);
  for (std::size_t round = 0;; ++round) {
    bool emitted = false;
    for (std::size_t c = 0; c < classes; ++c) {
      if (round >= quota[c]) continue;
      emitted = true;
      std::vector<double> row(cfg.dims);
      for (std::size_t f = 0; f < cfg.dims; ++f)
        row[f] = static_cast<double>(c) + cfg.lambda * unit_double(gen);
      ds.rows.push_back(std::move(row));
      ds.labels.push_back(static_cast<int>(c));
    }
    if (!emitted) break;
  }
  return ds;
}

// Train and test splits of the same shape from decorrelated sub-seeds of
// cfg.seed (streams 0 and 1).
inline std::pair<Dataset, Dataset> generate_train_test(const GenConfig& cfg) {
  GenConfig train_cfg = cfg;
  train_cfg.seed = sub_seed(cfg.seed, 0);
  GenConfig test_cfg = cfg;
  test_cfg.seed = sub_seed(cfg.seed, 1);
  return {generate(train_cfg), generate(test_cfg)};
}

}  // namespace dgr
