#include <doctest.h>

#include <random>

#include "graycensus/big_count.hpp"

using graycensus::BigCount;

TEST_SUITE("big_count") {
  TEST_CASE("decimal round trip with separators") {
    const auto h6 = BigCount::from_string("14,754,666,508,334,433,250,560");
    CHECK(h6.to_string() == "14754666508334433250560");
    CHECK(h6.to_grouped_string() == "14,754,666,508,334,433,250,560");
    CHECK_FALSE(h6.fits_u64());
    CHECK_THROWS_AS(BigCount::from_string("12a"), std::invalid_argument);
    CHECK_THROWS_AS(BigCount::from_string(""), std::invalid_argument);
  }

  TEST_CASE("represents values beyond 10^26 exactly") {
    const BigCount m6 = BigCount::from_string("16332454526976");
    const BigCount sq = m6 * m6;
    CHECK(sq.to_string() == "266749070875738835911704576");
    CHECK(sq.divide_exact(m6) == m6);
    CHECK(sq > BigCount::pow(10, 26));
  }

  TEST_CASE("exact division refuses remainders") {
    CHECK(BigCount(1344).divide_exact(12) == BigCount(112));
    CHECK_THROWS_AS(BigCount(1343).divide_exact(12), std::domain_error);
    CHECK_THROWS_AS(BigCount(1) - BigCount(2), std::domain_error);
    CHECK(BigCount(906545760).divisible_by(60));
  }

  TEST_CASE("byte encoding is little-endian and minimal") {
    CHECK(BigCount(0).to_bytes().empty());
    CHECK(BigCount(0x0102).to_bytes() == std::vector<std::uint8_t>{0x02, 0x01});
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
      const BigCount v = BigCount(rng()) * BigCount(rng()) + BigCount(rng() % 1000);
      CHECK(BigCount::from_bytes(v.to_bytes()) == v);
    }
  }

  TEST_CASE("u128 import") {
    const unsigned __int128 v = (static_cast<unsigned __int128>(0xFFFFFFFFFFFFFFFFull) << 64) | 5u;
    CHECK(BigCount::from_u128(v).to_string() == "340282366920938463444927863358058659845");
  }

  TEST_CASE("rounding to significant digits") {
    CHECK(graycensus::round_significant(BigCount(347138963225ull), 4).str() == "3.471e11");
    CHECK(graycensus::round_significant(BigCount::from_string("14754666508334433250560"), 4).str() == "1.475e22");
    CHECK(graycensus::round_significant(BigCount(99996), 4).str() == "1.000e5");
    CHECK(graycensus::round_significant(BigCount(4), 4).str() == "4e0");
  }

  TEST_CASE("factorial and log10") {
    CHECK(BigCount::factorial(6) == BigCount(720));
    CHECK(BigCount::factorial(0) == BigCount(1));
    CHECK(BigCount::from_string("14754666508334433250560").log10() == doctest::Approx(22.168928).epsilon(1e-7));
  }
}
