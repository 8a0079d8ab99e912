#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace graycensus {

/// Exact non-negative integer of unbounded size.
///
/// Census values outgrow 64 bits at n = 6 (H_6 is about 1.5e22 and M_6^2
/// about 2.7e26), so every count that leaves the counting engines is carried
/// in this type. Subtraction below zero and inexact division throw.
class BigCount {
 public:
  using Backend = boost::multiprecision::cpp_int;

  BigCount() = default;
  BigCount(std::uint64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  static BigCount from_u128(unsigned __int128 v);

  /// Parses a decimal string; digit-group commas are accepted ("1,344").
  static BigCount from_string(std::string_view text);

  /// Little-endian magnitude bytes; zero encodes as an empty span.
  static BigCount from_bytes(std::span<const std::uint8_t> bytes);
  std::vector<std::uint8_t> to_bytes() const;

  std::string to_string() const;
  /// Decimal with a comma every three digits.
  std::string to_grouped_string() const;

  bool is_zero() const { return value_.is_zero(); }
  bool fits_u64() const;
  std::uint64_t to_u64() const;
  double to_double() const;
  /// log10 of the value; -inf for zero.
  double log10() const;

  BigCount& operator+=(const BigCount& rhs);
  BigCount& operator-=(const BigCount& rhs);
  BigCount& operator*=(const BigCount& rhs);

  friend BigCount operator+(BigCount a, const BigCount& b) { return a += b; }
  friend BigCount operator-(BigCount a, const BigCount& b) { return a -= b; }
  friend BigCount operator*(BigCount a, const BigCount& b) { return a *= b; }
  friend BigCount operator/(const BigCount& a, const BigCount& b);
  friend BigCount operator%(const BigCount& a, const BigCount& b);

  friend bool operator==(const BigCount& a, const BigCount& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const BigCount& a, const BigCount& b);

  /// Quotient when `divisor` divides exactly; throws std::domain_error otherwise.
  BigCount divide_exact(const BigCount& divisor) const;
  bool divisible_by(const BigCount& divisor) const;

  static BigCount pow(const BigCount& base, unsigned exponent);
  static BigCount factorial(unsigned n);

  const Backend& backend() const { return value_; }

 private:
  explicit BigCount(Backend v) : value_(std::move(v)) {}

  Backend value_;
};

std::ostream& operator<<(std::ostream& os, const BigCount& v);

/// Rounds half-up to `digits` significant digits. Returns the mantissa text
/// (e.g. "3.471") and the decimal exponent (e.g. 11).
struct ScientificText {
  std::string mantissa;
  int exponent = 0;

  std::string str() const;  // "3.471e11"
};
ScientificText round_significant(const BigCount& v, int digits);

}  // namespace graycensus
