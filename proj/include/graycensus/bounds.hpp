#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "graycensus/big_count.hpp"

namespace graycensus {

/// A bound evaluated from an asymptotic formula with its o-term replaced by
/// a constant. Values are computed in log space.
struct BoundValue {
  std::string name;     // "a_6", "b_6", "knuth_6"
  std::string formula;  // human-readable formula with the substitution
  int n = 0;
  double o_term = 0;
  bool zero = false;             // non-positive base: the value is 0
  double log10_value = 0;        // meaningless when zero
  std::string mantissa = "0";    // 4 significant digits, e.g. "1.008"
  std::int64_t exponent = 0;     // value ~ mantissa * 10^exponent
  bool exponent_only = false;    // too large for a meaningful mantissa
  bool asymptotic_only = true;   // never a claim about finite n
  bool vacuous = false;          // lower bound that says nothing (value <= 1)

  /// "1.008e11", "0", or "10^1.222e30" in exponent-only form.
  std::string display() const;
};

/// a_n = e^{2^{n-1}(ln n - 1 + o)}, b_n = e^{2^n(ln n - 1 + o)}.
std::pair<BoundValue, BoundValue> perezhogin_potapov_bounds(int n, double o_term);

/// (n/(4e) - big_o)^{2^n}; a non-positive base yields 0.
BoundValue knuth_lower_bound(int n, double big_o_term);

/// m^2 exactly.
BigCount feder_subi_upper(const BigCount& m);

struct HistoricalBound {
  std::string source;    // "Dixon and Goodman, 1975"
  std::string mantissa;  // "1.5"
  int exponent = 0;      // 40

  /// "1.5 * 10^40"
  std::string display() const;
  double log10_value() const;
};

/// The seven published upper bounds on H_6, as printed.
const std::vector<HistoricalBound>& historical_bounds_table();

/// Formula bounds for n (o-term 0 and 1, Knuth with O-term 0) followed by
/// the historical rows. Columns: name,o_term,log10_value,display,asymptotic_flag
std::string bounds_csv(int n);

}  // namespace graycensus
