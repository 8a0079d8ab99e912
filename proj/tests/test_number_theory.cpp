#include <doctest.h>

#include <random>

#include "graycensus/number_theory.hpp"

using namespace graycensus;

namespace {

const BigCount kH6 = BigCount::from_string("14754666508334433250560");

}  // namespace

TEST_SUITE("number_theory") {
  TEST_CASE("factorizations of the census values") {
    CHECK(factorize(1344).str() == "2^6 * 3 * 7");
    CHECK(factorize(906545760).str() == "2^5 * 3 * 5 * 617 * 3061");
    CHECK(factorize(kH6).str() == "2^8 * 3^2 * 5 * 217199 * 1085989 * 5429923");
    CHECK(factorize(1).str() == "1");
    CHECK_THROWS_AS(factorize(0), std::domain_error);
  }

  TEST_CASE("published product forms") {
    CHECK(BigCount::factorial(4) * 8 * 7 == BigCount(1344));
    CHECK(BigCount::factorial(5) * 4 * 617 * 3061 == BigCount(906545760));
    CHECK(BigCount::factorial(6) * 16 * 217199 * 1085989 * 5429923 == kH6);
  }

  TEST_CASE("large factors of H_6 are prime") {
    for (std::uint64_t p : {217199ull, 1085989ull, 5429923ull}) CHECK(is_prime_u64(p));
    CHECK_FALSE(is_prime_u64(217199ull * 3));
  }

  TEST_CASE("recombination on random values up to 10^12") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 300; ++i) {
      const BigCount v = 1 + rng() % 1'000'000'000'000ull;
      const auto f = factorize(v);
      CHECK(f.product() == v);
      for (std::size_t k = 0; k < f.factors.size(); ++k) {
        CHECK(is_prime(f.factors[k].prime));
        CHECK(f.factors[k].exponent >= 1);
        if (k > 0) CHECK(f.factors[k - 1].prime < f.factors[k].prime);
      }
    }
  }

  TEST_CASE("cofactors beyond trial division") {
    // Two primes above 10^7.
    const BigCount semi = BigCount(1000000007) * BigCount(998244353);
    CHECK(factorize(semi).str() == "998244353 * 1000000007");
    CHECK(factorize(BigCount(18446744073709551557ull)).str() == "18446744073709551557");
    const BigCount big = BigCount::from_string("340282366920938463463374607431768211507");
    try {
      factorize(big * 4);
      FAIL("expected FactorRangeError");
    } catch (const FactorRangeError& e) {
      CHECK(e.partial().str() == "2^2");
      CHECK(e.cofactor() == big);
    }
  }

  TEST_CASE("Miller-Rabin on known cases") {
    CHECK_FALSE(is_prime_u64(0));
    CHECK_FALSE(is_prime_u64(1));
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(37));
    CHECK_FALSE(is_prime_u64(3215031751ull));          // strong pseudoprime to bases 2, 3, 5, 7
    CHECK_FALSE(is_prime_u64(3825123056546413051ull));  // strong pseudoprime to bases up to 23
    CHECK(is_prime_u64(18446744073709551557ull));
    CHECK_THROWS_AS(is_prime(BigCount::pow(2, 64)), std::out_of_range);
  }

  TEST_CASE("half-factorial divisibility") {
    CHECK(check_half_factorial_divisibility(6, 3));
    CHECK(check_half_factorial_divisibility(1344, 4));
    CHECK_FALSE(check_half_factorial_divisibility(1343, 4));
    CHECK(check_half_factorial_divisibility(906545760, 5));
    CHECK(check_half_factorial_divisibility(kH6, 6));
    CHECK_THROWS_AS(check_half_factorial_divisibility(1, 1), std::invalid_argument);
  }

  TEST_CASE("odd prime divisors of H_n / n!") {
    CHECK(odd_prime_divisor_count(6, 3) == 0);
    CHECK(odd_prime_divisor_count(1344, 4) == 1);
    CHECK(odd_prime_divisor_count(906545760, 5) == 2);
    CHECK(odd_prime_divisor_count(kH6, 6) == 3);
    CHECK_THROWS_AS(odd_prime_divisor_count(1343, 4), std::domain_error);
  }
}
