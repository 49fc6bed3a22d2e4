#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ksep/enumeration.hpp"

using namespace ksep;

namespace {

std::uint64_t hist_at(const SeparabilityCensus& c, int k) {
  auto it = c.histogram.find(k);
  return it == c.histogram.end() ? 0 : it->second;
}

std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST_CASE("canonical direction sets have (3^n-1)/2 members") {
  auto c2 = canonical_directions(2);
  REQUIRE(c2.directions.size() == 4);
  std::set<std::string> got;
  for (const auto& d : c2.directions) got.insert(d.str());
  CHECK(got == std::set<std::string>{"1,0", "0,1", "1,1", "1,-1"});

  auto c3 = canonical_directions(3);
  CHECK(c3.directions.size() == 13);
  int by_weight[4] = {0, 0, 0, 0};
  for (const auto& d : c3.directions) {
    int nz = 0;
    for (auto v : d.num) nz += v != 0;
    ++by_weight[nz];
  }
  CHECK(by_weight[1] == 3);  // axes
  CHECK(by_weight[2] == 6);  // face diagonals
  CHECK(by_weight[3] == 4);  // main diagonals

  CHECK(canonical_directions(4).directions.size() == 40);
  CHECK_THROWS_AS(canonical_directions(5), std::out_of_range);
}

TEST_CASE("perturbation shifts weight i by i/100 on both orientations") {
  DirectionSet in;
  in.generator = "canonical";
  in.directions = {Direction::parse("1,1,1"), Direction::parse("1,0,0")};
  auto out = perturb(in);
  REQUIRE(out.directions.size() == 4);
  CHECK(out.directions[0].str() == "101/100,51/50,103/100");  // 1.01,1.02,1.03
  CHECK(out.directions[1].str() == "-99/100,-49/50,-97/100");
  CHECK(out.directions[2].str() == "101/100,1/50,3/100");     // 1.01,0.02,0.03
  CHECK(out.directions[3].str() == "-99/100,1/50,3/100");
  CHECK(out.generator == "perturbed-canonical");
}

TEST_CASE("perturbation does not clear every tie: exact equal-sum collisions survive") {
  // weight shifts i/100 keep any tie where both the weights and the shift
  // indices balance (e.g. {w3} against {w1,w2})
  auto p3 = perturb(canonical_directions(3));
  REQUIRE(p3.directions.size() == 26);
  int tie_free = 0;
  for (const auto& d : p3.directions)
    if (build_partition(d, 3).tie_free) ++tie_free;
  CHECK(tie_free == 20);

  auto p4 = perturb(canonical_directions(4));
  REQUIRE(p4.directions.size() == 80);
  tie_free = 0;
  for (const auto& d : p4.directions)
    if (build_partition(d, 4).tie_free) ++tie_free;
  CHECK(tie_free == 30);
}

TEST_CASE("fractional grid: 25 values per weight, partition-level dedupe") {
  auto g1 = fractional_grid(1);
  CHECK(g1.directions.size() == 1);  // every positive weight orders {0} < {1}
  CHECK(g1.dedupe_removed == 11);    // 12 sign-deduped values collapse to one

  auto g3 = fractional_grid(3);
  CHECK(g3.directions.size() == 145);
  CHECK(g3.directions.size() + g3.dedupe_removed == (25 * 25 * 25 - 1) / 2);

  auto g4 = fractional_grid(4);
  CHECK(g4.directions.size() == 11152);
  CHECK(g4.directions.size() + g4.dedupe_removed == (390625 - 1) / 2);
}

TEST_CASE("fixed census of a tie-free direction follows the run-count law") {
  auto c = census_fixed(3, Direction::parse("4,2,1"));
  CHECK(c.mode == "fixed-direction");
  CHECK(c.unresolved == 0);
  for (int k = 1; k <= 8; ++k) CHECK(hist_at(c, k) == 2 * binom(7, k - 1));
  CHECK(hist_at(c, 1) == 2);
  CHECK(hist_at(c, 2) == 14);
  CHECK(hist_at(c, 3) == 42);
  CHECK(hist_at(c, 4) == 70);
  CHECK(c.total() == 256);

  auto c2 = census_fixed(2, Direction::parse("2,1"));
  for (int k = 1; k <= 4; ++k) CHECK(hist_at(c2, k) == 2 * binom(3, k - 1));
}

TEST_CASE("fixed census of the 4-bit natural-binary direction is symmetric") {
  auto c = census_fixed(4, Direction::parse("8,4,2,1"));
  CHECK(c.unresolved == 0);
  CHECK(c.total() == 65536);
  CHECK(hist_at(c, 2) == 30);
  CHECK(hist_at(c, 3) == 210);
  CHECK(hist_at(c, 4) == 910);
  CHECK(hist_at(c, 5) == 2730);
  CHECK(hist_at(c, 6) == 6006);
  CHECK(hist_at(c, 7) == 10010);
  CHECK(hist_at(c, 8) == 12870);
  for (int k = 1; k <= 16; ++k) {
    CHECK(hist_at(c, k) == 2 * binom(15, k - 1));
    CHECK(hist_at(c, k) == hist_at(c, 17 - k));
    CHECK(hist_at(c, k) % 2 == 0);  // complements pair up
  }
}

TEST_CASE("fixed census of the 3-bit main diagonal counts level-constant functions") {
  auto c = census_fixed(3, Direction::parse("1,1,1"));
  CHECK(hist_at(c, 1) == 2);
  CHECK(hist_at(c, 2) == 6);
  CHECK(hist_at(c, 3) == 6);
  CHECK(hist_at(c, 4) == 2);
  CHECK(c.unresolved == 240);
}

TEST_CASE("fixed census of a direction that keeps one tie") {
  auto c = census_fixed(3, Direction::parse("1.01,0.02,1.03"));
  CHECK(hist_at(c, 1) == 2);
  CHECK(hist_at(c, 2) == 12);
  CHECK(hist_at(c, 3) == 30);
  CHECK(hist_at(c, 4) == 40);
  CHECK(hist_at(c, 5) == 30);
  CHECK(hist_at(c, 6) == 12);
  CHECK(hist_at(c, 7) == 2);
  CHECK(c.unresolved == 128);
}

TEST_CASE("best census over perturbed canonical directions, n=3") {
  auto c = census_best(3, perturb(canonical_directions(3)));
  CHECK(c.mode == "best-over-set");
  CHECK(hist_at(c, 1) == 2);
  CHECK(hist_at(c, 2) == 102);
  CHECK(hist_at(c, 3) == 126);
  CHECK(hist_at(c, 4) == 26);
  CHECK(c.unresolved == 0);
  CHECK(c.total() == 256);
  CHECK(c.best_k[27] == 4);
  CHECK(c.best_k[150] == 4);  // parity
}

TEST_CASE("best census over pure canonical directions, n=3") {
  auto c = census_best(3, canonical_directions(3));
  CHECK(hist_at(c, 1) == 2);
  CHECK(hist_at(c, 2) == 54);
  CHECK(hist_at(c, 3) == 30);
  CHECK(hist_at(c, 4) == 2);
  CHECK(c.unresolved == 168);
}

TEST_CASE("best census over the 3-bit fractional grid reaches the same optimum") {
  auto c = census_best(3, fractional_grid(3));
  CHECK(hist_at(c, 1) == 2);
  CHECK(hist_at(c, 2) == 102);
  CHECK(hist_at(c, 3) == 126);
  CHECK(hist_at(c, 4) == 26);
  CHECK(c.max_k() == 4);
  CHECK(c.degenerate_only == 0);
  CHECK(c.best_k[27] == 4);
}

TEST_CASE("best census over perturbed canonical directions, n=4 (regression)") {
  auto c = census_best(4, perturb(canonical_directions(4)));
  CHECK(hist_at(c, 1) == 2);
  CHECK(hist_at(c, 2) == 1230);
  CHECK(hist_at(c, 3) == 6628);
  CHECK(hist_at(c, 4) == 18358);
  CHECK(hist_at(c, 5) == 24422);
  CHECK(hist_at(c, 6) == 13344);
  CHECK(hist_at(c, 7) == 1492);
  CHECK(hist_at(c, 8) == 60);
  CHECK(c.unresolved == 0);
}

TEST_CASE("best census is schedule independent") {
  auto set = perturb(canonical_directions(3));
  auto a = census_best(3, set, 1);
  auto b = census_best(3, set, 4);
  CHECK(a.histogram == b.histogram);
  CHECK(a.best_k == b.best_k);
  CHECK(a.degenerate_only == b.degenerate_only);

  // permuting the set changes nothing either
  DirectionSet reversed = set;
  std::reverse(reversed.directions.begin(), reversed.directions.end());
  auto r = census_best(3, reversed, 3);
  CHECK(r.histogram == a.histogram);
  CHECK(r.best_k == a.best_k);
}

TEST_CASE("adding directions never increases any minimum") {
  auto small = canonical_directions(3);
  auto big = perturb(small);
  for (const auto& d : small.directions) big.directions.push_back(d);
  auto a = census_best(3, small);
  auto b = census_best(3, big);
  for (int f = 0; f < 256; ++f) CHECK(b.best_k[f] <= a.best_k[f]);
}

TEST_CASE("per-direction table: axes, face diagonals, main diagonals") {
  auto rep = table1_report();
  REQUIRE(rep.rows.size() == 13);
  for (const auto& row : rep.rows) {
    int nz = 0;
    for (auto v : row.dir.num) nz += v != 0;
    if (nz == 1) {
      CHECK(row.sep2 == 2);
      CHECK(row.sep3 == 0);
      CHECK(row.sep4 == 0);
    } else if (nz == 2) {
      CHECK(row.sep2 == 4);
      CHECK(row.sep3 == 2);
      CHECK(row.sep4 == 0);
    } else {
      CHECK(row.sep2 == 6);
      CHECK(row.sep3 == 6);
      CHECK(row.sep4 == 2);
    }
  }
  CHECK(rep.total2 == 54);
  CHECK(rep.total3 == 36);
  CHECK(rep.total4 == 8);
  CHECK(rep.projections_2to4 == 98);
  CHECK(rep.distinct_functions_2to4 == 86);
}

TEST_CASE("direction-count lower bound") {
  auto c3 = census_best(3, perturb(canonical_directions(3)));
  CHECK(direction_lower_bound(c3, 14) == 8);  // ceil(102/14)

  SeparabilityCensus fake;
  fake.histogram[2] = 1880;
  CHECK(direction_lower_bound(fake, 30) == 63);

  SeparabilityCensus empty;
  CHECK(direction_lower_bound(empty, 30) == 0);
  CHECK_THROWS_AS(direction_lower_bound(empty, 0), std::invalid_argument);
}
