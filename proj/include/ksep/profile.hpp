#pragma once

#include <cstdint>
#include <vector>

#include "ksep/boolfn.hpp"
#include "ksep/direction.hpp"
#include "ksep/rat.hpp"

namespace ksep {

// Group labels: +1 / -1 for pure groups, 0 for a mixed group (which makes
// the whole profile invalid for that function).
constexpr int label_plus = 1;
constexpr int label_minus = -1;
constexpr int label_mixed = 0;

struct Group {
  Rat value;                  // shared exact projection value
  std::vector<int> vertices;  // ascending vertex indices
  int label = label_mixed;
};

// One maximal block of consecutive same-label groups along the projection.
// Vertex counts are what a printed pattern like "000 11 0 11" counts; group
// counts are kept alongside since merged groups make the two differ.
struct RunEntry {
  int label = 0;
  int groups = 0;
  int vertices = 0;
};

struct ProjectionProfile {
  bool valid = false;  // false iff some group is label-mixed
  int k = 0;           // run count; defined when valid
  Rat min_gap;         // smallest gap between adjacent opposite-label groups
  bool gap_infinite = false;  // single-class profiles have no opposing pair
  std::vector<Group> groups;  // strictly increasing projection values
  std::vector<RunEntry> run_pattern;
};

// Exact profile of a Boolean function under a direction. Vertices with equal
// projection are grouped; a group containing both classes invalidates the
// direction for this function (never "approximately separated").
ProjectionProfile profile(const BooleanFunction& f, const Direction& w);

// Same semantics for real-valued points. Projections within `tol` of the
// previous one (along the sorted order) are grouped; tol=0 means exact.
struct PointGroup {
  double value = 0.0;
  std::vector<int> members;
  int label = label_mixed;
};

struct PointProfile {
  bool valid = false;
  int k = 0;
  double min_gap = 0.0;
  bool gap_infinite = false;
  std::vector<PointGroup> groups;
  std::vector<RunEntry> run_pattern;
};

PointProfile profile_points(const std::vector<std::vector<double>>& points,
                            const std::vector<int>& labels,
                            const std::vector<double>& w, double tol = 0.0);

// Lexicographic projection quality: fewer intervals, then wider margin, then
// larger smallest run. The margin is the profile's min_gap rescaled to unit
// maximum weight magnitude, making the score invariant under scaling of the
// direction. An alternative comparator putting the smallest-run size first
// is available for callers that prefer to trade one extra interval for less
// fragile clusters; it is never the default.
struct MarginScore {
  int k = 0;
  Rat min_gap;  // normalized: gap per unit of the largest |weight|
  bool gap_infinite = false;
  int smallest_cluster = 0;  // vertex count of the smallest run
};

MarginScore margin_score(const ProjectionProfile& p, const Direction& w);

// true if a scores strictly better than b
bool margin_better(const MarginScore& a, const MarginScore& b);
bool margin_better_cluster_first(const MarginScore& a, const MarginScore& b);

// Minimum k over a direction set, with the achieving directions ordered by
// margin quality (widest min_gap first, ties by set order). resolved=false
// when no direction in the set yields a valid profile.
struct BestK {
  bool resolved = false;
  int k = 0;
  std::vector<std::size_t> best;  // indices into the input set
};

BestK min_k_over(const BooleanFunction& f, const std::vector<Direction>& ws);

// Interval edges for a three-interval split [-inf,a], [a,b], [b,+inf];
// t is the midpoint separating the two outer penalty regimes.
struct ThreeSepParams {
  double a = 0.0;
  double b = 0.0;
  double t() const { return 0.5 * (a + b); }
};

}  // namespace ksep
