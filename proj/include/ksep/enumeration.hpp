#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ksep/direction.hpp"
#include "ksep/profile.hpp"

namespace ksep {

// All weight vectors with entries in {0,+1,-1} except zero, one
// representative per {w,-w} pair (first nonzero entry positive):
// 3 axes + 6 face diagonals + 4 main diagonals at n=3, (3^n-1)/2 in general.
// Ordered by number of nonzero weights, then lexicographically.
DirectionSet canonical_directions(int n);

// Tie-breaking shift: weight i (1-based) gains i/100, exactly. Both
// orientations of every input direction are emitted (the +/- pair stops
// being redundant once shifted, and dropping one of them loses solutions).
DirectionSet perturb(const DirectionSet& in);

// Every weight a multiple of 1/3, 1/4, 1/5 or 1/6 inside [-1,1]; that is 25
// values per coordinate, all representable over denominator 60. The zero
// vector is excluded, sign pairs are collapsed, and directions inducing an
// ordered vertex partition already seen are dropped (counted in
// dedupe_removed).
DirectionSet fractional_grid(int n);

// Ordered partition of the 2^n vertices by projection value: the only part
// of a direction a census depends on.
struct Partition {
  std::vector<std::uint32_t> masks;  // vertex bitmask per group, ascending value
  std::vector<long long> values;     // projection numerators
  long long den = 1;
  bool tie_free = false;  // every group a single vertex
};

Partition build_partition(const Direction& w, int n);

// Groups directions by induced partition; one representative direction index
// is kept per distinct partition, in first-seen order.
struct PartitionedSet {
  std::vector<Partition> partitions;
  std::vector<std::size_t> representative;  // direction index per partition
  std::size_t duplicates = 0;
};

PartitionedSet distinct_partitions(const std::vector<Direction>& ws, int n);

struct SeparabilityCensus {
  int n = 0;
  std::string mode;  // "fixed-direction" | "best-over-set"
  std::map<int, std::uint64_t> histogram;
  std::uint64_t unresolved = 0;
  // Functions whose best k is achieved only at partitions with merged
  // multi-vertex groups (never by a tie-free direction of the set).
  std::uint64_t degenerate_only = 0;
  // best mode only: per-function best k, 255 = no valid direction.
  std::vector<std::uint8_t> best_k;

  std::uint64_t total() const {
    std::uint64_t t = unresolved;
    for (auto& [k, c] : histogram) t += c;
    return t;
  }
  int max_k() const {
    int m = 0;
    for (auto& [k, c] : histogram)
      if (c) m = std::max(m, k);
    return m;
  }
};

// Full sweep over all 2^(2^n) functions for one direction. n <= 4.
SeparabilityCensus census_fixed(int n, const Direction& w);

// Minimum k per function over the whole set; deterministic for any thread
// count (threads=0 picks hardware concurrency, or the KSEP_THREADS
// environment variable when set).
SeparabilityCensus census_best(int n, const DirectionSet& set, int threads = 0);

// Per-direction 2-/3-/4-separable function counts for the 13 canonical
// 3-bit directions, plus column totals. Totals count projections, so a
// function separated by several directions is counted once per direction;
// the distinct-function counts from the matching best census are carried
// alongside for comparison.
struct PerDirectionRow {
  Direction dir;
  std::uint64_t sep2 = 0, sep3 = 0, sep4 = 0;
};

struct PerDirectionReport {
  std::vector<PerDirectionRow> rows;
  std::uint64_t total2 = 0, total3 = 0, total4 = 0;
  std::uint64_t projections_2to4 = 0;        // total2+total3+total4
  std::uint64_t distinct_functions_2to4 = 0;  // best-census count, k in 2..4
};

PerDirectionReport table1_report();

// Counting bound: any direction set resolving all 2-separable functions
// needs at least ceil(count / per-direction capacity) members.
std::uint64_t direction_lower_bound(const SeparabilityCensus& census,
                                    std::uint64_t per_direction_capacity);

int resolve_thread_count(int requested);

}  // namespace ksep
