// Command-line front end: censuses over direction sets, single-function
// analysis, interval-model learning, and the per-direction report, all with
// deterministic JSON/CSV output suitable for golden-diffing.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ksep/dataset.hpp"
#include "ksep/enumeration.hpp"
#include "ksep/learner.hpp"
#include "ksep/linsep.hpp"
#include "ksep/profile.hpp"
#include "ksep/serialize.hpp"

namespace {

using ksep::json;

struct CommonOpts {
  std::string format = "json";
  std::string output;  // empty = stdout
  int threads = 0;     // 0 = hardware/KSEP_THREADS
};

void emit(const std::string& text, const CommonOpts& common) {
  if (common.output.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(common.output);
    if (!out) throw std::runtime_error("cannot write " + common.output);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
  }
}

void emit_json(const json& j, const CommonOpts& common) { emit(j.dump(2), common); }

struct GoldenDiff {
  std::string key;
  std::string expected;
  std::string actual;
};

json golden_json(const std::vector<GoldenDiff>& diffs) {
  json g;
  g["match"] = diffs.empty();
  g["diffs"] = json::array();
  for (const auto& d : diffs) {
    json row;
    row["key"] = d.key;
    row["expected"] = d.expected;
    row["actual"] = d.actual;
    g["diffs"].push_back(row);
  }
  return g;
}

void report_diffs(const std::vector<GoldenDiff>& diffs) {
  for (const auto& d : diffs)
    std::cerr << "golden mismatch: " << d.key << " expected " << d.expected
              << ", got " << d.actual << "\n";
}

void check_count(std::vector<GoldenDiff>& diffs, const std::string& key,
                 std::uint64_t expected, std::uint64_t actual) {
  if (expected != actual)
    diffs.push_back({key, std::to_string(expected), std::to_string(actual)});
}

// Embedded expected censuses. Keyed by (set, n); absent = no expectation.
bool golden_census_full(const std::string& set, int n,
                        std::map<int, std::uint64_t>& hist) {
  if (n == 3 && (set == "perturbed-canonical" || set == "grid")) {
    hist = {{1, 2}, {2, 102}, {3, 126}, {4, 26}};
    return true;
  }
  if (n == 4 && set == "perturbed-canonical") {
    hist = {{1, 2},     {2, 1228},  {3, 6836}, {4, 19110},
            {5, 25198}, {6, 12014}, {7, 1132}, {8, 16}};
    return true;
  }
  return false;
}

std::vector<GoldenDiff> diff_census(const std::string& set, int n,
                                    const ksep::SeparabilityCensus& c, bool& known) {
  std::vector<GoldenDiff> diffs;
  known = true;
  std::map<int, std::uint64_t> expected;
  if (golden_census_full(set, n, expected)) {
    int hi = std::max(c.histogram.empty() ? 0 : c.histogram.rbegin()->first,
                      expected.rbegin()->first);
    for (int k = 1; k <= hi; ++k) {
      auto e = expected.count(k) ? expected.at(k) : 0;
      auto a = c.histogram.count(k) ? c.histogram.at(k) : 0;
      check_count(diffs, "histogram[" + std::to_string(k) + "]", e, a);
    }
    check_count(diffs, "unresolved", 0, c.unresolved);
    return diffs;
  }
  if (n == 4 && set == "grid") {
    // pinned published claims: the linearly-separable count and the largest
    // interval count any 4-bit function should need
    check_count(diffs, "histogram[2]",
                1880, c.histogram.count(2) ? c.histogram.at(2) : 0);
    check_count(diffs, "max_k", 5, static_cast<std::uint64_t>(c.max_k()));
    check_count(diffs, "unresolved", 0, c.unresolved);
    return diffs;
  }
  known = false;
  return diffs;
}

ksep::DirectionSet make_set(const std::string& name, int n) {
  if (name == "canonical") return ksep::canonical_directions(n);
  if (name == "perturbed-canonical") return ksep::perturb(ksep::canonical_directions(n));
  if (name == "grid") return ksep::fractional_grid(n);
  throw std::runtime_error("unknown direction set '" + name + "'");
}

// Alternative tie-breaking convention: shift the stored representatives only,
// without re-admitting their negations.
ksep::DirectionSet shift_representatives_only(const ksep::DirectionSet& in) {
  ksep::DirectionSet out;
  out.generator = "perturbed-representatives-" + in.generator;
  for (const auto& d : in.directions) {
    ksep::Direction p;
    p.tag = ksep::Provenance::perturbed;
    p.den = d.den * 100;
    for (std::size_t i = 0; i < d.num.size(); ++i)
      p.num.push_back(d.num[i] * 100 + static_cast<long long>(i + 1) * d.den);
    out.directions.push_back(std::move(p));
  }
  return out;
}

std::vector<double> direction_as_doubles(const ksep::Direction& w) {
  std::vector<double> v;
  v.reserve(w.num.size());
  for (long long q : w.num) v.push_back(static_cast<double>(q) / static_cast<double>(w.den));
  return v;
}

int require_census_n(int n) {
  if (n >= 1 && n <= 4) return 0;
  std::cerr << "census requires 1 <= n <= 4: a full sweep visits 2^(2^n) truth "
               "tables, which is already 2^32 at n=5\n";
  return 2;
}

// ---------------------------------------------------------------- census ---

int cmd_census(int n, const std::string& set_name, const std::string& dir_str,
               bool golden, bool sweep, const CommonOpts& common) {
  if (int rc = require_census_n(n)) return rc;

  json out;
  out["command"] = "census";
  out["n"] = n;

  if (!dir_str.empty()) {
    auto w = ksep::Direction::parse(dir_str);
    if (static_cast<int>(w.num.size()) != n)
      throw std::runtime_error("direction has " + std::to_string(w.num.size()) +
                               " weights, function space has " + std::to_string(n));
    auto c = ksep::census_fixed(n, w);
    out["direction"] = ksep::direction_json(w);
    out["census"] = ksep::census_json(c);
    if (golden) {
      std::cerr << "no embedded expectation for a fixed direction\n";
      return 2;
    }
    if (common.format == "csv") {
      emit(ksep::census_csv(c), common);
    } else {
      emit_json(out, common);
    }
    return 0;
  }

  auto set = make_set(set_name, n);
  out["set"] = set_name;
  out["directions"] = set.directions.size();
  auto c = ksep::census_best(n, set, common.threads);
  out["census"] = ksep::census_json(c);

  if (sweep) {
    // same census under the rejected tie-breaking convention, for comparison
    json variants = json::array();
    auto add = [&](const std::string& name, const ksep::DirectionSet& s) {
      json v;
      v["convention"] = name;
      v["directions"] = s.directions.size();
      v["census"] = ksep::census_json(ksep::census_best(n, s, common.threads));
      variants.push_back(v);
    };
    add("shift-both-orientations", set);
    add("shift-representatives-only",
        shift_representatives_only(ksep::canonical_directions(n)));
    out["convention_sweep"] = variants;
  }

  int rc = 0;
  if (golden) {
    bool known = false;
    auto diffs = diff_census(set_name, n, c, known);
    if (!known) {
      std::cerr << "no embedded expectation for set '" << set_name << "' at n="
                << n << "\n";
      return 2;
    }
    out["golden"] = golden_json(diffs);
    report_diffs(diffs);
    rc = diffs.empty() ? 0 : 1;
  }

  if (common.format == "csv") {
    std::string text = ksep::census_csv(c);
    if (golden) {
      std::ostringstream extra;
      extra << "\ngolden_key,expected,actual\n";
      for (const auto& d : out["golden"]["diffs"])
        extra << d["key"].get<std::string>() << "," << d["expected"].get<std::string>()
              << "," << d["actual"].get<std::string>() << "\n";
      text += extra.str();
    }
    emit(text, common);
  } else {
    emit_json(out, common);
  }
  return rc;
}

// --------------------------------------------------------------- analyze ---

json margin_json(const ksep::MarginScore& s) {
  json j;
  j["k"] = s.k;
  j["min_gap"] = s.gap_infinite ? "inf" : s.min_gap.str();
  j["smallest_cluster"] = s.smallest_cluster;
  return j;
}

int cmd_analyze(int n, long long fn, const std::string& dir_str,
                const std::string& set_name, const std::string& csv_path,
                double tol, int top, const CommonOpts& common) {
  json out;
  out["command"] = "analyze";

  if (!csv_path.empty()) {
    auto data = ksep::load_csv(csv_path);
    if (dir_str.empty()) {
      std::cerr << "dataset analysis needs --dir (there is no finite direction "
                   "set to search for real-valued points)\n";
      return 2;
    }
    auto w = ksep::Direction::parse(dir_str);
    if (static_cast<int>(w.num.size()) != data.dim())
      throw std::runtime_error("direction/dataset dimension mismatch");
    auto p = ksep::profile_points(data.points, data.labels,
                                  direction_as_doubles(w), tol);
    out["csv"] = csv_path;
    out["direction"] = ksep::direction_json(w);
    out["tolerance"] = tol;
    out["profile"] = ksep::point_profile_json(p);
    if (common.format == "csv") {
      std::ostringstream os;
      os << "group,value,label,points\n";
      for (std::size_t g = 0; g < p.groups.size(); ++g)
        os << g << "," << p.groups[g].value << "," << p.groups[g].label << ","
           << p.groups[g].members.size() << "\n";
      emit(os.str(), common);
    } else {
      emit_json(out, common);
    }
    return 0;
  }

  if (n < 1 || n > 6) {
    std::cerr << "function analysis supports 1 <= n <= 6\n";
    return 2;
  }
  auto f = ksep::BooleanFunction::from_index(n, static_cast<std::uint64_t>(fn));
  out["n"] = n;
  out["fn"] = fn;

  if (!dir_str.empty()) {
    auto w = ksep::Direction::parse(dir_str);
    auto p = ksep::profile(f, w);
    out["direction"] = ksep::direction_json(w);
    out["profile"] = ksep::profile_json(p);
    if (common.format == "csv") {
      std::ostringstream os;
      os << "group,value,label,vertices\n";
      for (std::size_t g = 0; g < p.groups.size(); ++g)
        os << g << "," << p.groups[g].value.str() << "," << p.groups[g].label
           << "," << p.groups[g].vertices.size() << "\n";
      emit(os.str(), common);
    } else {
      emit_json(out, common);
    }
    return 0;
  }

  if (n > 4) {
    std::cerr << "direction-set search is enumerated for n <= 4; give --dir\n";
    return 2;
  }
  auto set = make_set(set_name, n);
  auto best = ksep::min_k_over(f, set.directions);
  out["set"] = set_name;
  out["directions"] = set.directions.size();
  out["resolved"] = best.resolved;
  if (best.resolved) out["k"] = best.k;
  json list = json::array();
  for (std::size_t i = 0; i < best.best.size() && static_cast<int>(i) < top; ++i) {
    auto& w = set.directions[best.best[i]];
    auto p = ksep::profile(f, w);
    json row;
    row["direction"] = ksep::direction_json(w);
    row["margin"] = margin_json(ksep::margin_score(p, w));
    row["profile"] = ksep::profile_json(p);
    list.push_back(row);
  }
  out["best_directions"] = list;

  if (common.format == "csv") {
    std::ostringstream os;
    os << "rank,direction,k,min_gap,smallest_cluster\n";
    int rank = 0;
    for (const auto& row : list) {
      os << rank++ << ",\"" << row["direction"]["weights"].get<std::string>()
         << "\"," << row["margin"]["k"].get<int>() << ","
         << row["margin"]["min_gap"].get<std::string>() << ","
         << row["margin"]["smallest_cluster"].get<int>() << "\n";
    }
    emit(os.str(), common);
  } else {
    emit_json(out, common);
  }
  return 0;
}

// ----------------------------------------------------------------- learn ---

int cmd_learn(int parity_n, int fn_n, long long fn, const std::string& csv_path,
              const ksep::TrainConfig& cfg, int cv_folds, bool loo,
              const CommonOpts& common) {
  ksep::LabeledDataset data;
  int sources = (parity_n > 0) + (fn >= 0) + (!csv_path.empty());
  if (sources != 1) {
    std::cerr << "give exactly one of --parity, --fn, --csv\n";
    return 2;
  }
  if (parity_n > 0) {
    if (parity_n > 12) {
      std::cerr << "--parity is capped at 12 (4096 vertices)\n";
      return 2;
    }
    data = ksep::from_boolean(ksep::BooleanFunction::parity(parity_n));
  } else if (fn >= 0) {
    if (fn_n < 1 || fn_n > 6) {
      std::cerr << "--fn needs --fn-n in 1..6\n";
      return 2;
    }
    data = ksep::from_boolean(
        ksep::BooleanFunction::from_index(fn_n, static_cast<std::uint64_t>(fn)));
  } else {
    data = ksep::load_csv(csv_path);
  }
  if (data.degenerate) {
    std::cerr << "dataset holds a single class; there is nothing to separate\n";
    return 2;
  }

  ksep::FitReport rep;
  auto model = ksep::fit_interval_model(data.points, data.labels, cfg, &rep);

  json out;
  out["command"] = "learn";
  out["input"] = data.provenance;
  out["points"] = data.size();
  out["model"] = ksep::model_json(model, rep, cfg);

  ksep::CVResult cv;
  bool ran_cv = cv_folds > 0 || loo;
  if (ran_cv) {
    ksep::CVPlan plan;
    plan.scheme = loo ? ksep::CVPlan::Scheme::leave_one_out
                      : ksep::CVPlan::Scheme::stratified_kfold;
    plan.folds = cv_folds;
    plan.seed = cfg.seed;
    cv = ksep::crossvalidate(data, cfg, plan);
    out["cv"] = ksep::cv_json(cv);
  }

  if (common.format == "csv") {
    std::ostringstream os;
    os << "key,value\n";
    os << "k," << model.k << "\n";
    os << "pure," << (model.pure ? 1 : 0) << "\n";
    os << "accuracy," << rep.accuracy << "\n";
    os << "seed," << cfg.seed << "\n";
    os << "attempted_k," << rep.attempted_k << "\n";
    os << "epochs," << rep.epochs << "\n";
    os << "\ninterval,lower,upper,label\n";
    for (int i = 0; i < model.k; ++i) {
      std::string lo = i == 0 ? "-inf" : std::to_string(model.thresholds[i - 1]);
      std::string hi = i + 1 == model.k ? "inf" : std::to_string(model.thresholds[i]);
      os << i << "," << lo << "," << hi << "," << model.labels[i] << "\n";
    }
    if (ran_cv) {
      os << "\nfold,accuracy,k\n";
      for (std::size_t i = 0; i < cv.fold_accuracy.size(); ++i)
        os << i << "," << cv.fold_accuracy[i] << "," << cv.fold_k[i] << "\n";
    }
    emit(os.str(), common);
  } else {
    emit_json(out, common);
  }

  if (!model.pure) {
    std::cerr << "no label-pure projection found with k <= " << rep.attempted_k
              << "; best training accuracy " << rep.accuracy << "\n";
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------- table1 ---

int cmd_table1(bool golden, const CommonOpts& common) {
  auto rep = ksep::table1_report();
  json out;
  out["command"] = "table1";
  out["report"] = ksep::table1_json(rep);

  int rc = 0;
  if (golden) {
    std::vector<GoldenDiff> diffs;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
      const auto& row = rep.rows[i];
      int nz = 0;
      for (auto v : row.dir.num) nz += v != 0;
      std::uint64_t e2 = nz == 1 ? 2 : nz == 2 ? 4 : 6;
      std::uint64_t e3 = nz == 1 ? 0 : nz == 2 ? 2 : 6;
      std::uint64_t e4 = nz == 3 ? 2 : 0;
      std::string key = "row[" + row.dir.str() + "]";
      check_count(diffs, key + ".k2", e2, row.sep2);
      check_count(diffs, key + ".k3", e3, row.sep3);
      check_count(diffs, key + ".k4", e4, row.sep4);
    }
    check_count(diffs, "total.k2", 54, rep.total2);
    check_count(diffs, "total.k3", 36, rep.total3);
    check_count(diffs, "total.k4", 8, rep.total4);
    check_count(diffs, "projections", 98, rep.projections_2to4);
    check_count(diffs, "distinct_functions", 86, rep.distinct_functions_2to4);
    out["golden"] = golden_json(diffs);
    report_diffs(diffs);
    rc = diffs.empty() ? 0 : 1;
  }

  if (common.format == "csv") {
    emit(ksep::table1_csv(rep), common);
  } else {
    emit_json(out, common);
  }
  return rc;
}

// ---------------------------------------------------------- parity-check ---

int cmd_parity_check(int n, const CommonOpts& common) {
  if (n < 1 || n > 20) {
    std::cerr << "parity-check supports 1 <= n <= 20\n";
    return 2;
  }
  std::uint64_t total = 1ull << n;
  std::uint64_t mismatches = 0;
  std::vector<int> x(n);
  for (std::uint64_t v = 0; v < total; ++v) {
    int ones = 0;
    for (int i = 0; i < n; ++i) {
      x[i] = static_cast<int>((v >> i) & 1);
      ones += x[i];
    }
    int expected = (ones % 2 == 0) ? 1 : -1;
    mismatches += ksep::parity_cos(x) != expected;
  }
  json out;
  out["command"] = "parity-check";
  out["n"] = n;
  out["inputs"] = total;
  out["mismatches"] = mismatches;
  out["match"] = mismatches == 0;
  if (common.format == "csv") {
    std::ostringstream os;
    os << "n,inputs,mismatches\n" << n << "," << total << "," << mismatches << "\n";
    emit(os.str(), common);
  } else {
    emit_json(out, common);
  }
  return mismatches == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-separability: interval censuses and projection learning"};
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--format", common.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--output", common.output, "write the report here instead of stdout");
  app.add_option("--threads", common.threads,
                 "worker threads (0 = hardware count, or KSEP_THREADS)");

  // census
  auto* census = app.add_subcommand("census", "k histogram over all n-bit functions");
  census->fallthrough();
  int census_n = 3;
  std::string census_set = "perturbed-canonical";
  std::string census_dir;
  bool census_golden = false, census_sweep = false;
  census->add_option("--n", census_n, "input bits")->required();
  census->add_option("--set", census_set, "direction set")
      ->check(CLI::IsMember({"canonical", "perturbed-canonical", "grid"}))
      ->capture_default_str();
  census->add_option("--dir", census_dir,
                     "census a single fixed direction instead of a set");
  census->add_flag("--golden", census_golden, "diff against the embedded counts");
  census->add_flag("--convention-sweep", census_sweep,
                   "also census the rejected tie-shift convention")
      ->excludes("--golden");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "projection profile of one function or dataset");
  analyze->fallthrough();
  int analyze_n = 0;
  long long analyze_fn = -1;
  std::string analyze_dir, analyze_set = "grid", analyze_csv;
  double analyze_tol = 0.0;
  int analyze_top = 5;
  analyze->add_option("--n", analyze_n, "input bits");
  analyze->add_option("--fn", analyze_fn, "truth-table index");
  analyze->add_option("--dir", analyze_dir, "projection direction (e.g. 3/4,1,-1/4)");
  analyze->add_option("--set", analyze_set, "direction set searched when --dir is absent")
      ->check(CLI::IsMember({"canonical", "perturbed-canonical", "grid"}))
      ->capture_default_str();
  analyze->add_option("--csv", analyze_csv, "analyze a CSV dataset instead of a function");
  analyze->add_option("--tol", analyze_tol, "projection grouping tolerance for datasets");
  analyze->add_option("--top", analyze_top, "best directions to list")
      ->capture_default_str();

  // learn
  auto* learn = app.add_subcommand("learn", "fit an interval model");
  learn->fallthrough();
  int learn_parity = 0, learn_fn_n = 0;
  long long learn_fn = -1;
  std::string learn_csv;
  ksep::TrainConfig cfg;
  int learn_cv = 0;
  bool learn_loo = false, learn_hard = false;
  learn->add_option("--parity", learn_parity, "fit the n-bit parity function");
  learn->add_option("--fn-n", learn_fn_n, "input bits for --fn");
  learn->add_option("--fn", learn_fn, "truth-table index to fit");
  learn->add_option("--csv", learn_csv, "fit a CSV dataset");
  learn->add_option("--restarts", cfg.restarts)->capture_default_str();
  learn->add_option("--max-iters", cfg.max_iters,
                    "epoch cap per restart (0 = 150 per input dimension)");
  learn->add_option("--lr", cfg.learning_rate)->capture_default_str();
  learn->add_option("--patience", cfg.stall_patience)->capture_default_str();
  learn->add_option("--k-max", cfg.k_max,
                    "largest interval count tried (0 = auto)");
  learn->add_option("--seed", cfg.seed)->capture_default_str();
  learn->add_option("--beta", cfg.beta)->capture_default_str();
  learn->add_flag("--hard", learn_hard, "hard half-splits in the 3-interval loss");
  learn->add_option("--cv", learn_cv, "stratified k-fold cross-validation");
  learn->add_flag("--loo", learn_loo, "leave-one-out cross-validation")
      ->excludes("--cv");

  // table1
  auto* table1 = app.add_subcommand("table1", "per-direction separability table, n=3");
  table1->fallthrough();
  bool table1_golden = false;
  table1->add_flag("--golden", table1_golden, "diff against the embedded counts");

  // parity-check
  auto* pcheck = app.add_subcommand("parity-check", "cosine parity gate vs popcount");
  pcheck->fallthrough();
  int pcheck_n = 10;
  pcheck->add_option("--n", pcheck_n, "input bits")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (census->parsed())
      return cmd_census(census_n, census_set, census_dir, census_golden,
                        census_sweep, common);
    if (analyze->parsed())
      return cmd_analyze(analyze_n, analyze_fn, analyze_dir, analyze_set,
                         analyze_csv, analyze_tol, analyze_top, common);
    if (learn->parsed()) {
      cfg.smooth = !learn_hard;
      return cmd_learn(learn_parity, learn_fn_n, learn_fn, learn_csv, cfg,
                       learn_cv, learn_loo, common);
    }
    if (table1->parsed()) return cmd_table1(table1_golden, common);
    if (pcheck->parsed()) return cmd_parity_check(pcheck_n, common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
