#pragma once

#include <cstdint>
#include <vector>

#include "ksep/boolfn.hpp"

namespace ksep {

// Exact test: do a real weight vector and threshold strictly separate the
// true vertices from the false ones? Decided by a rational linear program
// (maximize the margin subject to |w_i| <= 1), no sampling, no tolerance,
// independent of any direction grid. Single-class functions are trivially
// separable.
bool linearly_separable(const BooleanFunction& f);

// Per-function results for every n-bit function (index = truth table).
// n <= 4; threads=0 picks hardware concurrency / KSEP_THREADS.
std::vector<bool> linearly_separable_map(int n, int threads = 0);

// Number of NON-constant separable functions.
std::uint64_t count_linearly_separable(int n, int threads = 0);

}  // namespace ksep
