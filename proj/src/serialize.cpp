#include "ksep/serialize.hpp"

#include <sstream>

namespace ksep {

std::string run_pattern_str(const std::vector<RunEntry>& runs) {
  std::string s;
  for (const auto& r : runs) {
    if (!s.empty()) s.push_back('|');
    s.append(r.vertices, r.label > 0 ? '+' : '-');
  }
  return s;
}

namespace {

const char* label_str(int label) {
  return label > 0 ? "+" : (label < 0 ? "-" : "mixed");
}

json runs_json(const std::vector<RunEntry>& runs) {
  json arr = json::array();
  for (const auto& r : runs)
    arr.push_back({{"label", label_str(r.label)},
                   {"groups", r.groups},
                   {"vertices", r.vertices}});
  return arr;
}

}  // namespace

json profile_json(const ProjectionProfile& p) {
  json j;
  j["valid"] = p.valid;
  if (p.valid) {
    j["k"] = p.k;
    if (p.gap_infinite)
      j["min_gap"] = "inf";
    else
      j["min_gap"] = p.min_gap.str();
    j["run_pattern"] = run_pattern_str(p.run_pattern);
    j["runs"] = runs_json(p.run_pattern);
  }
  json groups = json::array();
  for (const auto& g : p.groups) {
    json gj;
    gj["value"] = g.value.str();
    gj["label"] = label_str(g.label);
    gj["vertices"] = g.vertices;
    groups.push_back(std::move(gj));
  }
  j["groups"] = std::move(groups);
  return j;
}

json point_profile_json(const PointProfile& p) {
  json j;
  j["valid"] = p.valid;
  if (p.valid) {
    j["k"] = p.k;
    if (p.gap_infinite)
      j["min_gap"] = "inf";
    else
      j["min_gap"] = p.min_gap;
    j["run_pattern"] = run_pattern_str(p.run_pattern);
    j["runs"] = runs_json(p.run_pattern);
  }
  json groups = json::array();
  for (const auto& g : p.groups) {
    json gj;
    gj["value"] = g.value;
    gj["label"] = label_str(g.label);
    gj["points"] = g.members;
    groups.push_back(std::move(gj));
  }
  j["groups"] = std::move(groups);
  return j;
}

json direction_json(const Direction& d) {
  json j;
  j["weights"] = d.str();
  j["provenance"] = provenance_name(d.tag);
  return j;
}

json census_json(const SeparabilityCensus& c) {
  json j;
  j["n"] = c.n;
  j["mode"] = c.mode;
  json hist;
  for (const auto& [k, count] : c.histogram) hist[std::to_string(k)] = count;
  j["histogram"] = std::move(hist);
  j["unresolved"] = c.unresolved;
  if (c.mode == "best-over-set") j["degenerate_only"] = c.degenerate_only;
  j["total"] = c.total();
  j["max_k"] = c.max_k();
  return j;
}

json table1_json(const PerDirectionReport& rep) {
  json j;
  json rows = json::array();
  for (const auto& r : rep.rows) {
    json row;
    row["direction"] = r.dir.str();
    row["sep2"] = r.sep2;
    row["sep3"] = r.sep3;
    row["sep4"] = r.sep4;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["totals"] = {{"sep2", rep.total2}, {"sep3", rep.total3}, {"sep4", rep.total4}};
  j["projections_2to4"] = rep.projections_2to4;
  j["distinct_functions_2to4"] = rep.distinct_functions_2to4;
  return j;
}

json model_json(const IntervalModel& m, const FitReport& rep, const TrainConfig& cfg) {
  json j;
  j["k"] = m.k;
  j["pure"] = m.pure;
  j["weights"] = m.w;
  j["thresholds"] = m.thresholds;
  json labels = json::array();
  for (int l : m.labels) labels.push_back(l);
  j["interval_labels"] = std::move(labels);
  j["beta"] = m.beta;
  // two defensible parameter counts: weights + thresholds, and the same
  // plus the shared slope
  j["parameters"] = {{"weights_and_thresholds", m.w.size() + m.thresholds.size()},
                     {"including_slope", m.w.size() + m.thresholds.size() + 1}};
  j["training"] = {{"seed", cfg.seed},
                   {"restarts", cfg.restarts},
                   {"attempted_k", rep.attempted_k},
                   {"chosen_restart", rep.restart},
                   {"epochs", rep.epochs},
                   {"final_loss", rep.final_loss},
                   {"accuracy", rep.accuracy}};
  j["loss_trace"] = rep.loss_trace;
  return j;
}

json cv_json(const CVResult& r) {
  json j;
  j["fold_accuracy"] = r.fold_accuracy;
  j["fold_k"] = r.fold_k;
  j["mean_accuracy"] = r.mean_accuracy;
  j["stddev_accuracy"] = r.stddev_accuracy;
  j["warnings"] = r.warnings;
  return j;
}

std::string census_csv(const SeparabilityCensus& c) {
  std::ostringstream out;
  out << "k,count\n";
  for (const auto& [k, count] : c.histogram) out << k << "," << count << "\n";
  out << "unresolved," << c.unresolved << "\n";
  return out.str();
}

std::string table1_csv(const PerDirectionReport& rep) {
  std::ostringstream out;
  out << "direction,sep2,sep3,sep4\n";
  for (const auto& r : rep.rows)
    out << "\"" << r.dir.str() << "\"," << r.sep2 << "," << r.sep3 << "," << r.sep4 << "\n";
  out << "\"total\"," << rep.total2 << "," << rep.total3 << "," << rep.total4 << "\n";
  return out.str();
}

}  // namespace ksep
