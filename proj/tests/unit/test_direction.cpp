#include <doctest.h>

#include <stdexcept>

#include "ksep/direction.hpp"

using ksep::Direction;

TEST_CASE("direction parsing handles fractions and decimals") {
  auto d = Direction::parse("3/4,1,-1/4");
  CHECK(d.den == 4);
  CHECK(d.num == std::vector<long long>{3, 4, -1});

  auto p = Direction::parse("1.01,0.02,1.03");
  CHECK(p.den == 100);
  CHECK(p.num == std::vector<long long>{101, 2, 103});

  auto mixed = Direction::parse("1/2,0.25");
  CHECK(mixed.den == 4);
  CHECK(mixed.num == std::vector<long long>{2, 1});

  CHECK(Direction::parse("1,1").str() == "1,1");
  CHECK(Direction::parse("3/4,1,-1/4").str() == "3/4,1,-1/4");
}

TEST_CASE("direction parsing rejects junk") {
  CHECK_THROWS_AS(Direction::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Direction::parse("1,x"), std::invalid_argument);
  CHECK_THROWS_AS(Direction::parse("0,0,0"), std::invalid_argument);
  CHECK_THROWS_AS(Direction::parse("1,"), std::invalid_argument);
  CHECK_THROWS_AS(Direction::parse("1/0"), std::invalid_argument);
}

TEST_CASE("projection reads coordinates MSB-first") {
  auto d = Direction::parse("3/4,1,-1/4");
  // vertex 3 = (0,1,1): 1 - 1/4 = 3/4
  CHECK(d.project_num(3) == 3);
  // vertex 4 = (1,0,0): 3/4
  CHECK(d.project_num(4) == 3);
  // vertex 1 = (0,0,1): -1/4
  CHECK(d.project_num(1) == -1);
  CHECK(d.project_num(0) == 0);

  auto neg = d.negated();
  CHECK(neg.project_num(3) == -3);
}
