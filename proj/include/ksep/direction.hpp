#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ksep/rat.hpp"

namespace ksep {

enum class Provenance { canonical, perturbed, grid, learned, explicit_input };

const char* provenance_name(Provenance p);

// A projection direction: n exact-rational weights stored as integer
// numerators over one common denominator, so vertex projections are exact
// integers. Never normalized automatically; scale invariance of profiles is
// a tested property, not an assumption.
struct Direction {
  std::vector<long long> num;
  long long den = 1;
  Provenance tag = Provenance::explicit_input;

  int dim() const { return static_cast<int>(num.size()); }

  bool is_zero() const {
    for (auto v : num)
      if (v) return false;
    return true;
  }

  // Projection numerator of vertex v (coordinates read MSB-first); the
  // common denominator is carried separately.
  long long project_num(std::uint64_t v) const {
    long long s = 0;
    int n = dim();
    for (int i = 0; i < n; ++i)
      if ((v >> (n - 1 - i)) & 1) s += num[i];
    return s;
  }

  Rat weight(int i) const { return Rat(num[i], den); }

  Direction negated() const {
    Direction d = *this;
    for (auto& v : d.num) v = -v;
    return d;
  }

  std::string str() const;

  // Parses comma-separated weights, each "p", "p/q", or a plain decimal like
  // "1.01". Throws std::invalid_argument with the offending token.
  static Direction parse(const std::string& text);
};

struct DirectionSet {
  std::vector<Direction> directions;
  std::string generator;           // canonical | perturbed-canonical | fractional-grid | explicit
  std::size_t dedupe_removed = 0;  // dropped as inducing a duplicate ordered vertex partition
};

}  // namespace ksep
