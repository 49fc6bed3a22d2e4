#include "ksep/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ksep/profile.hpp"

namespace ksep {

namespace {

// One CSV record, quotes resolved. Returns false on EOF with nothing read.
bool read_record(std::istream& in, char delim, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool in_quotes = false, any = false;
  int ch;
  while ((ch = in.get()) != EOF) {
    any = true;
    char c = static_cast<char>(ch);
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == delim) {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

double parse_feature(const std::string& s, std::size_t row, std::size_t col) {
  auto fail = [&](const char* what) {
    std::ostringstream msg;
    msg << what << " at row " << row << ", column " << col + 1 << " ('" << s << "')";
    throw std::runtime_error(msg.str());
  };
  std::string trimmed = s;
  trimmed.erase(0, trimmed.find_first_not_of(" \t"));
  trimmed.erase(trimmed.find_last_not_of(" \t") + 1);
  if (trimmed.empty()) fail("missing value");
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(trimmed, &pos);
  } catch (const std::exception&) {
    fail("non-numeric feature");
  }
  if (pos != trimmed.size()) fail("non-numeric feature");
  if (std::isnan(v)) fail("missing value");
  return v;
}

}  // namespace

LabeledDataset load_csv(const std::string& path, const CsvOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");

  LabeledDataset data;
  data.provenance = path;
  std::vector<std::string> fields;
  std::size_t row = 0;
  std::size_t width = 0;
  int label_col = opts.label_column;

  std::vector<std::string> raw_labels;
  if (opts.header) {
    if (!read_record(in, opts.delimiter, fields))
      throw std::runtime_error("empty file '" + path + "'");
    ++row;
    width = fields.size();
    if (label_col < 0) label_col = static_cast<int>(width) - 1;
    if (label_col >= static_cast<int>(width))
      throw std::runtime_error("label column out of range");
    for (std::size_t c = 0; c < width; ++c)
      if (static_cast<int>(c) != label_col) data.feature_names.push_back(fields[c]);
  }

  while (read_record(in, opts.delimiter, fields)) {
    ++row;
    if (fields.size() == 1 && fields[0].empty()) continue;  // trailing blank line
    if (width == 0) {
      width = fields.size();
      if (label_col < 0) label_col = static_cast<int>(width) - 1;
      if (label_col >= static_cast<int>(width))
        throw std::runtime_error("label column out of range");
    }
    if (fields.size() != width) {
      std::ostringstream msg;
      msg << "row " << row << " has " << fields.size() << " fields, expected " << width;
      throw std::runtime_error(msg.str());
    }
    std::vector<double> x;
    for (std::size_t c = 0; c < width; ++c) {
      if (static_cast<int>(c) == label_col) continue;
      x.push_back(parse_feature(fields[c], row, c));
    }
    data.points.push_back(std::move(x));
    raw_labels.push_back(fields[label_col]);
  }
  if (data.points.empty()) throw std::runtime_error("no data rows in '" + path + "'");
  if (data.feature_names.empty())
    for (int c = 0; c < data.dim(); ++c) data.feature_names.push_back("x" + std::to_string(c + 1));

  std::set<std::string> distinct(raw_labels.begin(), raw_labels.end());
  if (distinct.size() > 2) {
    std::ostringstream msg;
    msg << "more than two label values:";
    for (const auto& v : distinct) msg << " '" << v << "'";
    throw std::runtime_error(msg.str());
  }
  auto it = distinct.begin();
  data.label_names[0] = *it;
  if (distinct.size() == 2) {
    data.label_names[1] = *std::next(it);
  } else {
    data.label_names[1] = data.label_names[0];
    data.degenerate = true;
  }
  for (const auto& v : raw_labels)
    data.labels.push_back(v == data.label_names[1] && !data.degenerate ? 1 : -1);
  return data;
}

void save_csv(const LabeledDataset& data, const std::string& path, char delimiter) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  for (std::size_t c = 0; c < data.feature_names.size(); ++c)
    out << data.feature_names[c] << delimiter;
  out << "label\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.points[i]) {
      if (v == static_cast<long long>(v))
        out << static_cast<long long>(v);
      else
        out << v;
      out << delimiter;
    }
    out << data.label_names[data.labels[i] > 0 ? 1 : 0] << "\n";
  }
}

LabeledDataset from_boolean(const BooleanFunction& f) {
  LabeledDataset data;
  data.provenance = "function:n=" + std::to_string(f.n());
  if (f.n() <= 6) data.provenance += ",index=" + std::to_string(f.to_index());
  for (int i = 0; i < f.n(); ++i) data.feature_names.push_back("x" + std::to_string(i + 1));
  data.label_names[0] = "-1";
  data.label_names[1] = "1";
  for (std::uint64_t v = 0; v < f.vertex_count(); ++v) {
    auto coords = BooleanFunction::vertex_coordinates(f.n(), v);
    data.points.emplace_back(coords.begin(), coords.end());
    data.labels.push_back(f.value(v) ? 1 : -1);
  }
  data.degenerate = f.is_constant();
  return data;
}

void standardize(LabeledDataset& data) {
  const int n = data.dim();
  const double m = static_cast<double>(data.size());
  for (int j = 0; j < n; ++j) {
    double mean = 0;
    for (const auto& x : data.points) mean += x[j];
    mean /= m;
    double var = 0;
    for (const auto& x : data.points) var += (x[j] - mean) * (x[j] - mean);
    var /= m;
    double sd = std::sqrt(var);
    if (sd <= 0) continue;  // constant feature: nothing to normalize
    for (auto& x : data.points) x[j] = (x[j] - mean) / sd;
  }
}

namespace {

// Seeded Fisher-Yates; std::shuffle's draw sequence is not pinned by the
// standard, and fold assignments must be reproducible.
void shuffle_indices(std::vector<int>& idx, std::mt19937_64& rng) {
  for (std::size_t i = idx.size(); i > 1; --i)
    std::swap(idx[i - 1], idx[rng() % i]);
}

}  // namespace

CVResult crossvalidate(const LabeledDataset& data, const TrainConfig& cfg,
                       const CVPlan& plan) {
  if (data.degenerate) throw std::invalid_argument("single-class data cannot be cross-validated");
  const std::size_t m = data.size();
  const int folds = plan.scheme == CVPlan::Scheme::leave_one_out
                        ? static_cast<int>(m)
                        : plan.folds;
  if (folds < 2 || folds > static_cast<int>(m))
    throw std::invalid_argument("fold count out of range");

  std::vector<int> fold_of(m, 0);
  if (plan.scheme == CVPlan::Scheme::leave_one_out) {
    for (std::size_t i = 0; i < m; ++i) fold_of[i] = static_cast<int>(i);
  } else {
    std::seed_seq seq{plan.seed, std::uint64_t{0x666f6c64}};
    std::mt19937_64 rng(seq);
    for (int cls : {-1, 1}) {
      std::vector<int> idx;
      for (std::size_t i = 0; i < m; ++i)
        if (data.labels[i] == cls) idx.push_back(static_cast<int>(i));
      shuffle_indices(idx, rng);
      for (std::size_t p = 0; p < idx.size(); ++p) fold_of[idx[p]] = static_cast<int>(p % folds);
    }
  }

  CVResult result;
  std::size_t smallest_fold = m;
  for (int fold = 0; fold < folds; ++fold) {
    std::vector<std::vector<double>> train_x, test_x;
    std::vector<int> train_y, test_y;
    for (std::size_t i = 0; i < m; ++i) {
      if (fold_of[i] == fold) {
        test_x.push_back(data.points[i]);
        test_y.push_back(data.labels[i]);
      } else {
        train_x.push_back(data.points[i]);
        train_y.push_back(data.labels[i]);
      }
    }
    if (test_x.empty()) continue;  // more folds than points in a class
    smallest_fold = std::min(smallest_fold, test_x.size());
    bool train_single_class =
        std::all_of(train_y.begin(), train_y.end(), [&](int v) { return v == train_y[0]; });
    if (train_single_class)
      result.warnings.push_back("fold " + std::to_string(fold) +
                                ": training split lost a class");

    FitReport rep;
    IntervalModel model = fit_interval_model(train_x, train_y, cfg, &rep);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < test_x.size(); ++i)
      if (model.predict(test_x[i]) == test_y[i]) ++hits;
    result.fold_accuracy.push_back(static_cast<double>(hits) /
                                   static_cast<double>(test_x.size()));
    result.fold_k.push_back(model.k);
  }

  if (smallest_fold < 2)
    result.warnings.push_back(
        "folds hold fewer than 2 points; accuracy estimates from so little "
        "held-out data say almost nothing about generalization");

  double mean = 0;
  for (double a : result.fold_accuracy) mean += a;
  mean /= result.fold_accuracy.empty() ? 1 : static_cast<double>(result.fold_accuracy.size());
  double var = 0;
  for (double a : result.fold_accuracy) var += (a - mean) * (a - mean);
  if (!result.fold_accuracy.empty()) var /= static_cast<double>(result.fold_accuracy.size());
  result.mean_accuracy = mean;
  result.stddev_accuracy = std::sqrt(var);
  return result;
}

ComplexityReport complexity_index(const LabeledDataset& data, const TrainConfig& cfg) {
  FitReport rep;
  IntervalModel model = fit_interval_model(data.points, data.labels, cfg, &rep);

  ComplexityReport out;
  out.k = model.k;
  out.pure = model.pure;
  out.accuracy = rep.accuracy;

  PointProfile p = profile_points(data.points, data.labels, model.w);
  if (p.valid) {
    out.min_gap = p.min_gap;
    out.gap_infinite = p.gap_infinite;
    for (const auto& r : p.run_pattern) out.cluster_sizes.push_back(r.vertices);
  } else {
    // projection ties across classes: fall back to interval occupancy
    out.gap_infinite = false;
    out.cluster_sizes.assign(model.k, 0);
    for (std::size_t i = 0; i < data.size(); ++i) {
      double y = model.project(data.points[i]);
      std::size_t idx = std::upper_bound(model.thresholds.begin(), model.thresholds.end(), y) -
                        model.thresholds.begin();
      ++out.cluster_sizes[idx];
    }
  }
  return out;
}

}  // namespace ksep
