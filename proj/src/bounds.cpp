#include "graycensus/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace graycensus {

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;

// Beyond this many decimal digits the mantissa no longer means anything.
constexpr double kExponentOnlyAbove = 1e15;

std::string fixed(const Real& v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

std::string compact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void fill_from_ln(BoundValue& b, const Real& ln_value) {
  const Real l10 = ln_value / log(Real(10));
  b.log10_value = l10.convert_to<double>();
  const Real e = floor(l10);
  if (abs(l10) >= kExponentOnlyAbove) {
    b.exponent_only = true;
    b.exponent = 0;
    b.mantissa.clear();
    return;
  }
  Real m = pow(Real(10), l10 - e);
  std::int64_t exponent = e.convert_to<std::int64_t>();
  std::string text = fixed(m, 3);
  if (text.rfind("10.", 0) == 0) {  // rounded up to the next decade
    text = "1.000";
    ++exponent;
  }
  b.mantissa = text;
  b.exponent = exponent;
}

void require_n(int n, const char* what) {
  if (n < 2) throw std::invalid_argument(std::string(what) + ": n must be at least 2");
}

}  // namespace

std::string BoundValue::display() const {
  if (zero) return "0";
  if (exponent_only) return "10^" + compact(log10_value);
  return mantissa + "e" + std::to_string(exponent);
}

std::pair<BoundValue, BoundValue> perezhogin_potapov_bounds(int n, double o_term) {
  require_n(n, "perezhogin_potapov_bounds");
  const Real inner = log(Real(n)) - 1 + Real(o_term);
  const Real half = ldexp(Real(1), n - 1);

  BoundValue a;
  a.name = "a_" + std::to_string(n);
  a.formula = "exp(2^(n-1)*(ln n - 1 + o))";
  a.n = n;
  a.o_term = o_term;
  fill_from_ln(a, half * inner);

  BoundValue b = a;
  b.name = "b_" + std::to_string(n);
  b.formula = "exp(2^n*(ln n - 1 + o))";
  fill_from_ln(b, 2 * half * inner);
  return {a, b};
}

BoundValue knuth_lower_bound(int n, double big_o_term) {
  require_n(n, "knuth_lower_bound");
  BoundValue k;
  k.name = "knuth_" + std::to_string(n);
  k.formula = "(n/(4e) - O)^(2^n)";
  k.n = n;
  k.o_term = big_o_term;
  const Real base = Real(n) / (4 * exp(Real(1))) - Real(big_o_term);
  if (base <= 0) {
    k.zero = true;
    k.vacuous = true;
    k.log10_value = -INFINITY;
    return k;
  }
  fill_from_ln(k, ldexp(Real(1), n) * log(base));
  // Every Q_n with n >= 2 has a Hamiltonian cycle, so a bound <= 1 is empty.
  k.vacuous = k.log10_value <= 0;
  return k;
}

BigCount feder_subi_upper(const BigCount& m) {
  if (m.is_zero()) throw std::invalid_argument("feder_subi_upper: m must be at least 1");
  return m * m;
}

std::string HistoricalBound::display() const { return mantissa + " * 10^" + std::to_string(exponent); }

double HistoricalBound::log10_value() const { return std::log10(std::stod(mantissa)) + exponent; }

const std::vector<HistoricalBound>& historical_bounds_table() {
  static const std::vector<HistoricalBound> rows = {
      {"Dixon and Goodman, 1975", "1.5", 40},
      {"Douglas, 1977", "1.1", 35},
      {"Silvermann et al., 1983", "3.7", 29},
      {"Clark, 2000", "1.3", 30},
      {"Perezhojin and Potapov, 2001", "4.1", 24},
      {"Feder and Subi, 2009", "2.7", 26},
      {"obtained value of H_6", "1.4", 22},
  };
  return rows;
}

std::string bounds_csv(int n) {
  std::ostringstream out;
  out << "name,o_term,log10_value,display,asymptotic_flag\n";
  auto row = [&](const BoundValue& b) {
    out << b.name << "," << compact(b.o_term) << "," << (b.zero ? "-inf" : compact(b.log10_value)) << ","
        << b.display() << "," << (b.asymptotic_only ? "true" : "false") << "\n";
  };
  for (double o : {0.0, 1.0}) {
    const auto [a, b] = perezhogin_potapov_bounds(n, o);
    row(a);
    row(b);
  }
  row(knuth_lower_bound(n, 0.0));
  for (const auto& h : historical_bounds_table()) {
    out << "\"" << h.source << "\",," << compact(h.log10_value()) << "," << h.display() << ",false\n";
  }
  return out.str();
}

}  // namespace graycensus
