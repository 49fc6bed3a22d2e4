#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ksep/boolfn.hpp"
#include "ksep/learner.hpp"

namespace ksep {

// Two-class dataset of real vectors. Labels are normalized to -1/+1; the
// original label strings are kept for reporting.
struct LabeledDataset {
  std::vector<std::vector<double>> points;
  std::vector<int> labels;  // +1 / -1
  std::vector<std::string> feature_names;
  std::string label_names[2];  // [0] -> -1, [1] -> +1
  std::string provenance;      // file path or "function:n=3,index=27"
  bool degenerate = false;     // single class present

  int dim() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
  std::size_t size() const { return points.size(); }
};

struct CsvOptions {
  char delimiter = ',';
  bool header = true;
  int label_column = -1;  // -1 = last column
};

// RFC-4180-style reader (quoted fields, doubled quotes). Rejects rows with
// missing values and non-numeric features, reporting row and column; rejects
// more than two distinct label values, naming them.
LabeledDataset load_csv(const std::string& path, const CsvOptions& opts = {});

void save_csv(const LabeledDataset& data, const std::string& path, char delimiter = ',');

// One point per hypercube vertex (coordinates MSB-first), labels from the
// truth table: false -> -1, true -> +1.
LabeledDataset from_boolean(const BooleanFunction& f);

// Zero mean, unit variance per feature (opt-in; never applied implicitly,
// Boolean geometry must stay exact). Constant features are left unscaled.
void standardize(LabeledDataset& data);

struct CVPlan {
  enum class Scheme { stratified_kfold, leave_one_out };
  Scheme scheme = Scheme::stratified_kfold;
  int folds = 5;
  std::uint64_t seed = 1;
};

struct CVResult {
  std::vector<double> fold_accuracy;
  std::vector<int> fold_k;
  double mean_accuracy = 0.0;
  double stddev_accuracy = 0.0;
  std::vector<std::string> warnings;
};

// Per-fold fit + held-out accuracy. Stratified fold assignment is a seeded
// per-class shuffle dealt round-robin, so class counts per fold differ by at
// most one from proportionality; results are reproducible for a fixed seed.
CVResult crossvalidate(const LabeledDataset& data, const TrainConfig& cfg,
                       const CVPlan& plan);

// Fitted k as a data-complexity summary, with the margin structure of the
// fitted projection.
struct ComplexityReport {
  int k = 0;
  bool pure = false;
  double min_gap = 0.0;     // smallest opposite-class gap along the projection
  bool gap_infinite = false;
  std::vector<int> cluster_sizes;  // points per interval
  double accuracy = 0.0;
};

ComplexityReport complexity_index(const LabeledDataset& data, const TrainConfig& cfg);

}  // namespace ksep
