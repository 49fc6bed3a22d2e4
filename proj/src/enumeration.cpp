#include "ksep/enumeration.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace ksep {

namespace {

void check_census_n(int n) {
  if (n < 1 || n > 4)
    throw std::out_of_range("exhaustive censuses need n <= 4 (2^(2^n) functions)");
}

}  // namespace

DirectionSet canonical_directions(int n) {
  check_census_n(n);
  DirectionSet set;
  set.generator = "canonical";
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (long long code = 1; code < total; ++code) {
    Direction d;
    d.den = 1;
    d.tag = Provenance::canonical;
    long long c = code;
    for (int i = n - 1; i >= 0; --i) {
      int t = static_cast<int>(c % 3);
      c /= 3;
      d.num.insert(d.num.begin(), t == 2 ? -1 : t);
    }
    // keep the representative whose first nonzero weight is positive
    for (auto v : d.num) {
      if (v > 0) {
        set.directions.push_back(d);
        break;
      }
      if (v < 0) break;
    }
  }
  std::stable_sort(set.directions.begin(), set.directions.end(),
                   [](const Direction& a, const Direction& b) {
                     int na = 0, nb = 0;
                     for (auto v : a.num) na += v != 0;
                     for (auto v : b.num) nb += v != 0;
                     if (na != nb) return na < nb;
                     return std::lexicographical_compare(b.num.begin(), b.num.end(),
                                                         a.num.begin(), a.num.end());
                   });
  return set;
}

DirectionSet perturb(const DirectionSet& in) {
  DirectionSet out;
  out.generator = in.generator.empty() ? "perturbed" : "perturbed-" + in.generator;
  for (const Direction& d0 : in.directions) {
    for (Direction d : {d0, d0.negated()}) {
      Direction p;
      p.tag = Provenance::perturbed;
      p.den = d.den * 100;
      for (int i = 0; i < d.dim(); ++i)
        p.num.push_back(d.num[i] * 100 + (i + 1) * d.den);
      out.directions.push_back(std::move(p));
    }
  }
  return out;
}

Partition build_partition(const Direction& w, int n) {
  if (w.dim() != n) throw std::invalid_argument("direction dimension mismatch");
  const std::uint32_t m = std::uint32_t{1} << n;
  std::vector<std::pair<long long, std::uint32_t>> proj(m);
  for (std::uint32_t v = 0; v < m; ++v) proj[v] = {w.project_num(v), v};
  std::sort(proj.begin(), proj.end());

  Partition part;
  part.den = w.den;
  for (std::uint32_t i = 0; i < m; ++i) {
    if (!part.values.empty() && part.values.back() == proj[i].first) {
      part.masks.back() |= std::uint32_t{1} << proj[i].second;
    } else {
      part.values.push_back(proj[i].first);
      part.masks.push_back(std::uint32_t{1} << proj[i].second);
    }
  }
  part.tie_free = part.masks.size() == m;
  return part;
}

PartitionedSet distinct_partitions(const std::vector<Direction>& ws, int n) {
  PartitionedSet out;
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    Partition p = build_partition(ws[i], n);
    std::string key;
    key.reserve(p.masks.size() * 4);
    for (auto mask : p.masks)
      for (int b = 0; b < 4; ++b) key.push_back(static_cast<char>((mask >> (8 * b)) & 0xff));
    auto [it, inserted] = seen.emplace(std::move(key), i);
    if (inserted) {
      out.partitions.push_back(std::move(p));
      out.representative.push_back(i);
    } else {
      ++out.duplicates;
    }
  }
  return out;
}

DirectionSet fractional_grid(int n) {
  check_census_n(n);
  // numerators over 60 that are multiples of 20 (1/3), 15 (1/4), 12 (1/5)
  // or 10 (1/6); 25 distinct values in [-1,1]
  std::vector<long long> values;
  for (long long i = -60; i <= 60; ++i)
    if (i % 20 == 0 || i % 15 == 0 || i % 12 == 0 || i % 10 == 0) values.push_back(i);

  DirectionSet out;
  out.generator = "fractional-grid";
  std::vector<Direction> raw;
  const long long V = static_cast<long long>(values.size());
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= V;
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    Direction d;
    d.den = 60;
    d.tag = Provenance::grid;
    d.num.resize(n);
    for (int i = n - 1; i >= 0; --i) {
      d.num[i] = values[c % V];
      c /= V;
    }
    if (d.is_zero()) continue;
    bool keep = false;
    for (auto v : d.num) {
      if (v > 0) keep = true;
      if (v != 0) break;
    }
    if (keep) raw.push_back(std::move(d));
  }

  PartitionedSet ps = distinct_partitions(raw, n);
  out.dedupe_removed = ps.duplicates;
  for (auto i : ps.representative) out.directions.push_back(raw[i]);
  return out;
}

namespace {

// Census hot path. For one partition, two byte-indexed tables map any
// function's low/high truth-table byte to the set of groups containing a
// true vertex. Groups touched by both the function and its complement are
// mixed; otherwise the touched-group word doubles as the per-group label
// sequence and k is one plus the number of adjacent label changes.
struct GroupTables {
  std::uint32_t t0[256];
  std::uint32_t t1[256];
  std::uint32_t run_mask;  // m-1 low bits
  int m = 0;

  explicit GroupTables(const Partition& p) {
    m = static_cast<int>(p.masks.size());
    run_mask = (m > 1) ? ((std::uint32_t{1} << (m - 1)) - 1) : 0;
    std::uint32_t group_of[16] = {};
    for (int g = 0; g < m; ++g) {
      std::uint32_t mask = p.masks[g];
      while (mask) {
        int v = std::countr_zero(mask);
        mask &= mask - 1;
        group_of[v] = std::uint32_t{1} << g;
      }
    }
    for (int byte = 0; byte < 256; ++byte) {
      std::uint32_t lo = 0, hi = 0;
      for (int b = 0; b < 8; ++b) {
        if (!((byte >> b) & 1)) continue;
        lo |= group_of[b];
        hi |= group_of[b + 8];
      }
      t0[byte] = lo;
      t1[byte] = hi;
    }
  }

  // k of function f, or 0 if some group is mixed
  inline int k_of(std::uint32_t f, std::uint32_t f_complement) const {
    std::uint32_t on = t0[f & 0xff] | t1[(f >> 8) & 0xff];
    std::uint32_t off = t0[f_complement & 0xff] | t1[(f_complement >> 8) & 0xff];
    if (on & off) return 0;
    return std::popcount((on ^ (on >> 1)) & run_mask) + 1;
  }
};

}  // namespace

SeparabilityCensus census_fixed(int n, const Direction& w) {
  check_census_n(n);
  Partition part = build_partition(w, n);
  GroupTables tab(part);
  const std::uint64_t fn_count = std::uint64_t{1} << (std::uint64_t{1} << n);
  const std::uint32_t fn_mask = static_cast<std::uint32_t>(fn_count - 1);

  SeparabilityCensus out;
  out.n = n;
  out.mode = "fixed-direction";
  std::vector<std::uint64_t> hist(17, 0);
  for (std::uint64_t f = 0; f < fn_count; ++f) {
    int k = tab.k_of(static_cast<std::uint32_t>(f), static_cast<std::uint32_t>(~f) & fn_mask);
    if (k)
      ++hist[k];
    else
      ++out.unresolved;
  }
  for (int k = 1; k <= 16; ++k)
    if (hist[k]) out.histogram[k] = hist[k];
  return out;
}

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("KSEP_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

SeparabilityCensus census_best(int n, const DirectionSet& set, int threads) {
  check_census_n(n);
  if (set.directions.empty()) throw std::invalid_argument("empty direction set");

  PartitionedSet ps = distinct_partitions(set.directions, n);
  const std::uint64_t fn_count = std::uint64_t{1} << (std::uint64_t{1} << n);
  const std::uint32_t fn_mask = static_cast<std::uint32_t>(fn_count - 1);
  const int nthreads = std::min<int>(resolve_thread_count(threads),
                                     static_cast<int>(ps.partitions.size()));

  // Per-worker minima merged with elementwise min: associative and
  // commutative, so the result is independent of the partition schedule.
  std::vector<std::vector<std::uint8_t>> best_all(nthreads),
      best_tie_free(nthreads);
  auto worker = [&](int t) {
    auto& best = best_all[t];
    auto& best_tf = best_tie_free[t];
    best.assign(fn_count, 255);
    best_tf.assign(fn_count, 255);
    for (std::size_t pi = t; pi < ps.partitions.size(); pi += nthreads) {
      const Partition& part = ps.partitions[pi];
      GroupTables tab(part);
      for (std::uint64_t f = 0; f < fn_count; ++f) {
        int k = tab.k_of(static_cast<std::uint32_t>(f),
                         static_cast<std::uint32_t>(~f) & fn_mask);
        if (!k) continue;
        auto k8 = static_cast<std::uint8_t>(k);
        if (k8 < best[f]) best[f] = k8;
        if (part.tie_free && k8 < best_tf[f]) best_tf[f] = k8;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& th : pool) th.join();
  for (int t = 1; t < nthreads; ++t)
    for (std::uint64_t f = 0; f < fn_count; ++f) {
      best_all[0][f] = std::min(best_all[0][f], best_all[t][f]);
      best_tie_free[0][f] = std::min(best_tie_free[0][f], best_tie_free[t][f]);
    }

  SeparabilityCensus out;
  out.n = n;
  out.mode = "best-over-set";
  out.best_k = std::move(best_all[0]);
  std::vector<std::uint64_t> hist(17, 0);
  for (std::uint64_t f = 0; f < fn_count; ++f) {
    std::uint8_t k = out.best_k[f];
    if (k == 255) {
      ++out.unresolved;
      continue;
    }
    ++hist[k];
    if (best_tie_free[0][f] > k) ++out.degenerate_only;
  }
  for (int k = 1; k <= 16; ++k)
    if (hist[k]) out.histogram[k] = hist[k];
  return out;
}

PerDirectionReport table1_report() {
  PerDirectionReport rep;
  DirectionSet canon = canonical_directions(3);
  for (const Direction& d : canon.directions) {
    SeparabilityCensus c = census_fixed(3, d);
    PerDirectionRow row;
    row.dir = d;
    auto at = [&](int k) {
      auto it = c.histogram.find(k);
      return it == c.histogram.end() ? 0ull : it->second;
    };
    row.sep2 = at(2);
    row.sep3 = at(3);
    row.sep4 = at(4);
    rep.total2 += row.sep2;
    rep.total3 += row.sep3;
    rep.total4 += row.sep4;
    rep.rows.push_back(std::move(row));
  }
  rep.projections_2to4 = rep.total2 + rep.total3 + rep.total4;

  SeparabilityCensus best = census_best(3, canon, 1);
  for (int k = 2; k <= 4; ++k) {
    auto it = best.histogram.find(k);
    if (it != best.histogram.end()) rep.distinct_functions_2to4 += it->second;
  }
  return rep;
}

std::uint64_t direction_lower_bound(const SeparabilityCensus& census,
                                    std::uint64_t per_direction_capacity) {
  if (per_direction_capacity == 0) throw std::invalid_argument("zero per-direction capacity");
  auto it = census.histogram.find(2);
  std::uint64_t sep2 = it == census.histogram.end() ? 0 : it->second;
  return (sep2 + per_direction_capacity - 1) / per_direction_capacity;
}

}  // namespace ksep
