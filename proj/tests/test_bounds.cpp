#include <doctest.h>

#include <cmath>

#include "graycensus/bounds.hpp"

using namespace graycensus;

namespace {

// Reference evaluations in long double, independent of the module's
// multiprecision path.
long double pp_log10(int n, long double o, bool upper) {
  const long double e = std::ldexp(1.0L, upper ? n : n - 1) * (std::log(static_cast<long double>(n)) - 1 + o);
  return e / std::log(10.0L);
}

long double knuth_log10(int n) {
  return std::ldexp(1.0L, n) * std::log10(static_cast<long double>(n) / (4 * std::exp(1.0L)));
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("Perezhogin-Potapov values") {
    const auto [a2, b2] = perezhogin_potapov_bounds(2, 1 - std::log(2.0));
    CHECK(std::abs(a2.log10_value) < 1e-12);
    CHECK(a2.display() == "1.000e0");

    const auto [a6, b6] = perezhogin_potapov_bounds(6, 0);
    CHECK(a6.log10_value == doctest::Approx(static_cast<double>(pp_log10(6, 0, false))).epsilon(1e-12));
    CHECK(b6.log10_value == doctest::Approx(static_cast<double>(pp_log10(6, 0, true))).epsilon(1e-12));
    // Frozen from the reference evaluation above.
    CHECK(a6.display() == "1.008e11");
    CHECK(b6.display() == "1.016e22");
    CHECK(a6.asymptotic_only);
    CHECK(b6.asymptotic_only);

    const auto [a5, b5] = perezhogin_potapov_bounds(5, 0);
    CHECK(b5.display() == "2.949e8");
    CHECK_THROWS_AS(perezhogin_potapov_bounds(1, 0), std::invalid_argument);
  }

  TEST_CASE("Knuth lower bound") {
    const auto k6 = knuth_lower_bound(6, 0);
    CHECK(k6.log10_value == doctest::Approx(static_cast<double>(knuth_log10(6))).epsilon(1e-12));
    CHECK(k6.display() == "2.985e-17");
    CHECK(k6.vacuous);
    CHECK(k6.asymptotic_only);

    for (int n : {2, 6, 20}) {
      const auto z = knuth_lower_bound(n, n / (4 * std::exp(1.0)) + 0.5);
      CHECK(z.zero);
      CHECK(z.vacuous);
      CHECK(z.display() == "0");
    }

    const auto k100 = knuth_lower_bound(100, 0);
    CHECK(k100.exponent_only);
    CHECK_FALSE(k100.vacuous);
    CHECK(k100.log10_value == doctest::Approx(static_cast<double>(knuth_log10(100))).epsilon(1e-12));
    CHECK(k100.display().rfind("10^1.2215658", 0) == 0);
  }

  TEST_CASE("evaluation is deterministic") {
    const auto [a, b] = perezhogin_potapov_bounds(7, 0.25);
    const auto [a2, b2] = perezhogin_potapov_bounds(7, 0.25);
    CHECK(a.display() == a2.display());
    CHECK(b.log10_value == b2.log10_value);
  }

  TEST_CASE("formula bounds increase with n") {
    for (double o : {0.0, 1.0}) {
      for (int n = 3; n < 20; ++n) {
        const auto [a, b] = perezhogin_potapov_bounds(n, o);
        const auto [a1, b1] = perezhogin_potapov_bounds(n + 1, o);
        CHECK(a1.log10_value > a.log10_value);
        CHECK(b1.log10_value > b.log10_value);
      }
    }
    // The Knuth base n/(4e) is below 1 up to n = 10, so that bound shrinks
    // until n = 9 and grows from there on.
    for (int n = 2; n < 9; ++n) {
      CHECK(knuth_lower_bound(n + 1, 0).log10_value < knuth_lower_bound(n, 0).log10_value);
    }
    for (int n = 9; n < 30; ++n) {
      CHECK(knuth_lower_bound(n + 1, 0).log10_value > knuth_lower_bound(n, 0).log10_value);
    }
  }

  TEST_CASE("Feder-Subi upper value") {
    CHECK(feder_subi_upper(272) == BigCount(73984));
    CHECK(feder_subi_upper(589185) == BigCount(589185ull * 589185ull));
    CHECK(feder_subi_upper(589185) == BigCount(347138964225ull));
    CHECK(round_significant(feder_subi_upper(BigCount::from_string("16332454526976")), 4).str() == "2.667e26");
    CHECK_THROWS_AS(feder_subi_upper(0), std::invalid_argument);
  }

  TEST_CASE("historical table rows") {
    const auto& t = historical_bounds_table();
    REQUIRE(t.size() == 7);
    CHECK(t[0].source == "Dixon and Goodman, 1975");
    CHECK(t[0].display() == "1.5 * 10^40");
    CHECK(t[1].display() == "1.1 * 10^35");
    CHECK(t[2].source == "Silvermann et al., 1983");
    CHECK(t[2].display() == "3.7 * 10^29");
    CHECK(t[3].display() == "1.3 * 10^30");
    CHECK(t[4].source == "Perezhojin and Potapov, 2001");
    CHECK(t[4].display() == "4.1 * 10^24");
    CHECK(t[5].source == "Feder and Subi, 2009");
    CHECK(t[5].display() == "2.7 * 10^26");
    CHECK(t[6].source == "obtained value of H_6");
    CHECK(t[6].display() == "1.4 * 10^22");
  }

  TEST_CASE("CSV layout") {
    const auto csv = bounds_csv(6);
    CHECK(csv.rfind("name,o_term,log10_value,display,asymptotic_flag\n", 0) == 0);
    CHECK(csv.find("a_6,0,11.0034165") != std::string::npos);
    CHECK(csv.find("knuth_6,0,") != std::string::npos);
    CHECK(csv.find("\"Feder and Subi, 2009\",,") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
  }
}
