#include "graycensus/big_count.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int/import_export.hpp>

namespace graycensus {

namespace mp = boost::multiprecision;

BigCount BigCount::from_u128(unsigned __int128 v) {
  Backend hi = static_cast<std::uint64_t>(v >> 64);
  hi <<= 64;
  hi += static_cast<std::uint64_t>(v);
  return BigCount(std::move(hi));
}

BigCount BigCount::from_string(std::string_view text) {
  Backend out = 0;
  bool any = false;
  for (char c : text) {
    if (c == ',' || c == '_') continue;
    if (c < '0' || c > '9') throw std::invalid_argument("BigCount: not a decimal number: " + std::string(text));
    out *= 10;
    out += static_cast<unsigned>(c - '0');
    any = true;
  }
  if (!any) throw std::invalid_argument("BigCount: empty number");
  return BigCount(std::move(out));
}

BigCount BigCount::from_bytes(std::span<const std::uint8_t> bytes) {
  Backend out = 0;
  if (!bytes.empty()) mp::import_bits(out, bytes.rbegin(), bytes.rend(), 8);
  return BigCount(std::move(out));
}

std::vector<std::uint8_t> BigCount::to_bytes() const {
  std::vector<std::uint8_t> out;
  if (value_.is_zero()) return out;
  mp::export_bits(value_, std::back_inserter(out), 8);
  std::reverse(out.begin(), out.end());
  return out;
}

std::string BigCount::to_string() const { return value_.str(); }

std::string BigCount::to_grouped_string() const {
  const std::string digits = value_.str();
  std::string out;
  out.reserve(digits.size() + digits.size() / 3);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i != 0 && (digits.size() - i) % 3 == 0) out.push_back(',');
    out.push_back(digits[i]);
  }
  return out;
}

bool BigCount::fits_u64() const { return value_ <= std::numeric_limits<std::uint64_t>::max(); }

std::uint64_t BigCount::to_u64() const {
  if (!fits_u64()) throw std::overflow_error("BigCount: value exceeds 64 bits");
  return value_.convert_to<std::uint64_t>();
}

double BigCount::to_double() const { return value_.convert_to<double>(); }

double BigCount::log10() const {
  if (value_.is_zero()) return -std::numeric_limits<double>::infinity();
  const std::string digits = value_.str();
  // 17 leading digits carry all the precision a double can hold.
  const std::size_t head = std::min<std::size_t>(digits.size(), 17);
  const double lead = std::stod(digits.substr(0, head));
  return std::log10(lead) + static_cast<double>(digits.size() - head);
}

BigCount& BigCount::operator+=(const BigCount& rhs) {
  value_ += rhs.value_;
  return *this;
}

BigCount& BigCount::operator-=(const BigCount& rhs) {
  if (rhs.value_ > value_) throw std::domain_error("BigCount: subtraction below zero");
  value_ -= rhs.value_;
  return *this;
}

BigCount& BigCount::operator*=(const BigCount& rhs) {
  value_ *= rhs.value_;
  return *this;
}

BigCount operator/(const BigCount& a, const BigCount& b) {
  if (b.value_.is_zero()) throw std::domain_error("BigCount: division by zero");
  return BigCount(BigCount::Backend(a.value_ / b.value_));
}

BigCount operator%(const BigCount& a, const BigCount& b) {
  if (b.value_.is_zero()) throw std::domain_error("BigCount: division by zero");
  return BigCount(BigCount::Backend(a.value_ % b.value_));
}

std::strong_ordering operator<=>(const BigCount& a, const BigCount& b) {
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (a.value_ > b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

BigCount BigCount::divide_exact(const BigCount& divisor) const {
  if (divisor.value_.is_zero()) throw std::domain_error("BigCount: division by zero");
  Backend q, r;
  mp::divide_qr(value_, divisor.value_, q, r);
  if (!r.is_zero()) {
    throw std::domain_error("BigCount: " + to_string() + " is not divisible by " + divisor.to_string());
  }
  return BigCount(std::move(q));
}

bool BigCount::divisible_by(const BigCount& divisor) const {
  if (divisor.value_.is_zero()) throw std::domain_error("BigCount: division by zero");
  return Backend(value_ % divisor.value_).is_zero();
}

BigCount BigCount::pow(const BigCount& base, unsigned exponent) {
  return BigCount(Backend(mp::pow(base.value_, exponent)));
}

BigCount BigCount::factorial(unsigned n) {
  Backend out = 1;
  for (unsigned k = 2; k <= n; ++k) out *= k;
  return BigCount(std::move(out));
}

std::ostream& operator<<(std::ostream& os, const BigCount& v) { return os << v.to_string(); }

std::string ScientificText::str() const { return mantissa + "e" + std::to_string(exponent); }

ScientificText round_significant(const BigCount& v, int digits) {
  if (digits < 1) throw std::invalid_argument("round_significant: need at least one digit");
  if (v.is_zero()) return {"0", 0};
  std::string text = v.to_string();
  int exponent = static_cast<int>(text.size()) - 1;
  if (static_cast<int>(text.size()) > digits) {
    const bool round_up = text[static_cast<std::size_t>(digits)] >= '5';
    text.resize(static_cast<std::size_t>(digits));
    if (round_up) {
      int i = digits - 1;
      while (i >= 0 && text[static_cast<std::size_t>(i)] == '9') text[static_cast<std::size_t>(i--)] = '0';
      if (i < 0) {
        text.insert(text.begin(), '1');
        text.pop_back();
        ++exponent;
      } else {
        ++text[static_cast<std::size_t>(i)];
      }
    }
  }
  std::string mantissa(1, text[0]);
  if (text.size() > 1) mantissa += "." + text.substr(1);
  return {mantissa, exponent};
}

}  // namespace graycensus
