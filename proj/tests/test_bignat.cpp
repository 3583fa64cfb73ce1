#include <doctest.h>

#include "itl/bignat.hpp"

using namespace itl;

TEST_CASE("bignat arithmetic basics") {
  CHECK(BigNat(0).to_decimal() == "0");
  CHECK(BigNat(123456789).to_decimal() == "123456789");
  CHECK((BigNat(1) + BigNat(UINT64_MAX)).to_decimal() == "18446744073709551616");
  CHECK((BigNat(1000000007) * BigNat(998244353)).to_decimal() ==
        "998244359987710471");
  CHECK(BigNat::pow2(68).to_decimal() == "295147905179352825856");
  CHECK(BigNat(5) < BigNat(7));
  CHECK(BigNat::pow2(100).bit_length() == 101);
  CHECK(BigNat(255).bit_length() == 8);
}

TEST_CASE("E and Q recurrences at the base") {
  for (std::uint64_t n : {1, 2, 3, 4, 16}) {
    CHECK(e_number(n, 0).exact->to_decimal() == "0");
    CHECK(q_number(n, 0).exact->to_decimal() == "0");
    CHECK(q_number(n, 1).exact->to_decimal() == "1");
  }
  CHECK(e_number(1, 1).exact->to_decimal() == "1");
  CHECK(e_number(4, 1).exact->to_decimal() == "4");
  CHECK(e_number(4, 2).exact->to_decimal() == "68");
}

TEST_CASE("E(4,3) exactly") {
  // E_3 = 68 + 4*2^68
  BigNat expect = BigNat(68) + BigNat(4) * BigNat::pow2(68);
  Bound b = e_number(4, 3);
  REQUIRE(b.is_exact());
  CHECK(*b.exact == expect);
}

TEST_CASE("Q follows the recurrence") {
  // Q(2,2) = 1 + E(2,1) Q(2,1) = 3; Q(2,3) = 1 + E(2,2) Q(2,2) = 31
  CHECK(q_number(2, 2).exact->to_decimal() == "3");
  CHECK(e_number(2, 2).exact->to_decimal() == "10");
  CHECK(q_number(2, 3).exact->to_decimal() == "31");
  CHECK(e_number(2, 3).exact->to_decimal() == "2058");
}

TEST_CASE("towers past the cap turn symbolic, never fail") {
  Bound b = e_number(4, 4);
  CHECK(!b.is_exact());
  REQUIRE(b.tower_levels.size() == 4);
  CHECK(b.tower_levels[0] == BigNat(0));
  CHECK(b.tower_levels[1] == BigNat(4));
  CHECK(b.tower_levels[2] == BigNat(68));
  CHECK(b.tower_levels[3] == BigNat(68) + BigNat(4) * BigNat::pow2(68));
  CHECK(b.to_string().substr(0, 6) == "tower(");
  REQUIRE(b.digits10.has_value());
  CHECK(*b.digits10 > 1e20);
  CHECK(b.at_least(1ull << 62));
}

TEST_CASE("fmp bound is symbolic already at s = 1") {
  Bound b = fmp_bound(1);
  CHECK(!b.is_exact());
  REQUIRE(b.tower_levels.size() == 4);
  CHECK(b.tower_levels[3] == BigNat(68) + BigNat(4) * BigNat::pow2(68));
  REQUIRE(b.digits10.has_value());
  CHECK(*b.digits10 > 1e20);
}

TEST_CASE("exact bound comparisons") {
  Bound b = e_number(2, 3);
  CHECK(b.at_least(2058));
  CHECK(b.at_least(2059) == false);
}
