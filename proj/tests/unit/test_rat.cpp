#include <doctest.h>

#include <stdexcept>

#include "ksep/rat.hpp"

using ksep::Rat;

TEST_CASE("rationals normalize on construction") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-2, 4) == Rat(-1, 2));
  CHECK(Rat(2, -4) == Rat(-1, 2));
  CHECK(Rat(0, 7) == Rat(0));
  CHECK(Rat(-3, -9) == Rat(1, 3));
  CHECK_THROWS_AS(Rat(1, 0), std::invalid_argument);
}

TEST_CASE("rational arithmetic and comparison") {
  CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
  CHECK(Rat(3, 4) - Rat(1, 2) == Rat(1, 4));
  CHECK(Rat(2, 3) * Rat(3, 4) == Rat(1, 2));
  CHECK(-Rat(1, 2) == Rat(-1, 2));
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(-1, 2) < Rat(-1, 3));
  CHECK(Rat(7, 3) > Rat(2));
  CHECK(Rat(1, 2) <= Rat(1, 2));
  CHECK(Rat(101, 100) > Rat(1));
}

TEST_CASE("rational formatting") {
  CHECK(Rat(5).str() == "5");
  CHECK(Rat(1, 4).str() == "1/4");
  CHECK(Rat(-1, 4).str() == "-1/4");
  CHECK(Rat(0).str() == "0");
  CHECK(Rat(1, 2).to_double() == doctest::Approx(0.5));
}
