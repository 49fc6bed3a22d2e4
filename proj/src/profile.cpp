#include "ksep/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ksep {

namespace {

std::size_t group_size(const Group& g) { return g.vertices.size(); }
std::size_t group_size(const PointGroup& g) { return g.members.size(); }

// Shared run/gap bookkeeping once groups and labels are known.
template <typename Profile, typename GapOf>
void finish_profile(Profile& p, GapOf gap_of) {
  p.valid = true;
  for (const auto& g : p.groups)
    if (g.label == label_mixed) {
      p.valid = false;
      p.k = 0;
      return;
    }

  p.run_pattern.clear();
  for (const auto& g : p.groups) {
    if (!p.run_pattern.empty() && p.run_pattern.back().label == g.label) {
      p.run_pattern.back().groups += 1;
      p.run_pattern.back().vertices += static_cast<int>(group_size(g));
    } else {
      p.run_pattern.push_back({g.label, 1, static_cast<int>(group_size(g))});
    }
  }
  p.k = static_cast<int>(p.run_pattern.size());

  p.gap_infinite = true;
  for (std::size_t i = 0; i + 1 < p.groups.size(); ++i) {
    if (p.groups[i].label == p.groups[i + 1].label) continue;
    auto gap = gap_of(p.groups[i], p.groups[i + 1]);
    if (p.gap_infinite || gap < p.min_gap) {
      p.min_gap = gap;
      p.gap_infinite = false;
    }
  }
}

}  // namespace

ProjectionProfile profile(const BooleanFunction& f, const Direction& w) {
  if (w.dim() != f.n()) throw std::invalid_argument("direction/function dimension mismatch");

  const std::uint64_t m = f.vertex_count();
  std::vector<std::pair<long long, std::uint64_t>> proj(m);
  for (std::uint64_t v = 0; v < m; ++v) proj[v] = {w.project_num(v), v};
  std::sort(proj.begin(), proj.end());

  ProjectionProfile p;
  for (std::uint64_t i = 0; i < m; ++i) {
    bool val = f.value(proj[i].second);
    int lab = val ? label_plus : label_minus;
    if (!p.groups.empty() && p.groups.back().value == Rat(proj[i].first, w.den)) {
      auto& g = p.groups.back();
      g.vertices.push_back(static_cast<int>(proj[i].second));
      if (g.label != lab) g.label = label_mixed;
    } else {
      Group g;
      g.value = Rat(proj[i].first, w.den);
      g.vertices.push_back(static_cast<int>(proj[i].second));
      g.label = lab;
      p.groups.push_back(std::move(g));
    }
  }
  finish_profile(p, [](const Group& a, const Group& b) { return b.value - a.value; });
  return p;
}

PointProfile profile_points(const std::vector<std::vector<double>>& points,
                            const std::vector<int>& labels,
                            const std::vector<double>& w, double tol) {
  if (points.empty()) throw std::invalid_argument("no points");
  if (points.size() != labels.size()) throw std::invalid_argument("points/labels size mismatch");
  const std::size_t n = w.size();
  for (const auto& x : points)
    if (x.size() != n) throw std::invalid_argument("point dimension mismatch");

  std::vector<std::pair<double, int>> proj(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    double y = 0;
    for (std::size_t j = 0; j < n; ++j) y += w[j] * points[i][j];
    proj[i] = {y, static_cast<int>(i)};
  }
  std::stable_sort(proj.begin(), proj.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  PointProfile p;
  double anchor = 0;
  for (const auto& [y, idx] : proj) {
    int lab = labels[idx] > 0 ? label_plus : label_minus;
    if (!p.groups.empty() && y - anchor <= tol) {
      auto& g = p.groups.back();
      g.members.push_back(idx);
      if (g.label != lab) g.label = label_mixed;
    } else {
      PointGroup g;
      g.value = y;
      g.members.push_back(idx);
      g.label = lab;
      p.groups.push_back(std::move(g));
      anchor = y;
    }
  }
  finish_profile(p, [](const PointGroup& a, const PointGroup& b) { return b.value - a.value; });
  return p;
}

MarginScore margin_score(const ProjectionProfile& p, const Direction& w) {
  if (!p.valid) throw std::invalid_argument("margin of an invalid profile");
  MarginScore s;
  s.k = p.k;
  s.gap_infinite = p.gap_infinite;
  if (!p.gap_infinite) {
    // gap at unit maximum weight magnitude, so scaled copies of one
    // direction score identically and sets with mixed scales compare fairly
    long long amp = 0;
    for (long long q : w.num) amp = std::max(amp, q < 0 ? -q : q);
    s.min_gap = p.min_gap * Rat(w.den, amp);
  }
  s.smallest_cluster = std::numeric_limits<int>::max();
  for (const auto& r : p.run_pattern) s.smallest_cluster = std::min(s.smallest_cluster, r.vertices);
  return s;
}

namespace {

// gap comparison where "infinite" beats any finite gap
int cmp_gap(const MarginScore& a, const MarginScore& b) {
  if (a.gap_infinite && b.gap_infinite) return 0;
  if (a.gap_infinite) return 1;
  if (b.gap_infinite) return -1;
  if (a.min_gap == b.min_gap) return 0;
  return a.min_gap > b.min_gap ? 1 : -1;
}

}  // namespace

bool margin_better(const MarginScore& a, const MarginScore& b) {
  if (a.k != b.k) return a.k < b.k;
  if (int c = cmp_gap(a, b)) return c > 0;
  return a.smallest_cluster > b.smallest_cluster;
}

bool margin_better_cluster_first(const MarginScore& a, const MarginScore& b) {
  if (a.smallest_cluster != b.smallest_cluster) return a.smallest_cluster > b.smallest_cluster;
  if (a.k != b.k) return a.k < b.k;
  return cmp_gap(a, b) > 0;
}

BestK min_k_over(const BooleanFunction& f, const std::vector<Direction>& ws) {
  if (ws.empty()) throw std::invalid_argument("empty direction set");
  BestK out;
  std::vector<std::pair<MarginScore, std::size_t>> achieving;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    auto p = profile(f, ws[i]);
    if (!p.valid) continue;
    if (!out.resolved || p.k < out.k) {
      out.resolved = true;
      out.k = p.k;
      achieving.clear();
    }
    if (p.k == out.k) achieving.emplace_back(margin_score(p, ws[i]), i);
  }
  std::stable_sort(achieving.begin(), achieving.end(),
                   [](const auto& a, const auto& b) { return margin_better(a.first, b.first); });
  for (auto& [s, i] : achieving) out.best.push_back(i);
  return out;
}

}  // namespace ksep
