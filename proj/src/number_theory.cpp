#include "graycensus/number_theory.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace graycensus {

namespace {

constexpr std::uint32_t kTrialLimit = 10'000'000;

const std::vector<std::uint32_t>& small_primes() {
  static std::vector<std::uint32_t> primes;
  static std::once_flag once;
  std::call_once(once, [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    for (std::uint32_t p = 2; p <= kTrialLimit; ++p) {
      if (composite[p]) continue;
      primes.push_back(p);
      for (std::uint64_t q = std::uint64_t{p} * p; q <= kTrialLimit; q += p) composite[q] = true;
    }
  });
  return primes;
}

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Brent's variant; `v` odd composite.
std::uint64_t rho_divisor(std::uint64_t v) {
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    auto f = [&](std::uint64_t t) { return (mul_mod(t, t, v) + c) % v; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, v);
    }
    if (d != v) return d;
  }
}

void split_u64(std::uint64_t v, std::map<std::uint64_t, unsigned>& out) {
  if (v == 1) return;
  if (is_prime_u64(v)) {
    ++out[v];
    return;
  }
  const std::uint64_t d = rho_divisor(v);
  split_u64(d, out);
  split_u64(v / d, out);
}

}  // namespace

FactorRangeError::FactorRangeError(Factorization partial, BigCount cofactor)
    : std::runtime_error("cofactor " + cofactor.to_string() + " exceeds 64 bits; partial factorization " +
                         partial.str()),
      partial_(std::move(partial)),
      cofactor_(std::move(cofactor)) {}

BigCount Factorization::product() const {
  BigCount out = 1;
  for (const auto& f : factors) out *= BigCount::pow(f.prime, f.exponent);
  return out;
}

std::string Factorization::str() const { return format_factorization(*this); }

std::string format_factorization(const Factorization& f) {
  if (f.factors.empty()) return "1";
  std::string out;
  for (const auto& pp : f.factors) {
    if (!out.empty()) out += " * ";
    out += pp.prime.to_string();
    if (pp.exponent != 1) out += "^" + std::to_string(pp.exponent);
  }
  return out;
}

bool is_prime_u64(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (v % p == 0) return v == p;
  }
  std::uint64_t d = v - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases decide every n < 3.3 * 10^24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, v);
    if (x == 1 || x == v - 1) continue;
    bool witness = true;
    for (int r = 1; r < s && witness; ++r) {
      x = mul_mod(x, x, v);
      if (x == v - 1) witness = false;
    }
    if (witness) return false;
  }
  return true;
}

bool is_prime(const BigCount& v) {
  if (!v.fits_u64()) throw std::out_of_range("is_prime: value exceeds 64 bits");
  return is_prime_u64(v.to_u64());
}

Factorization factorize(const BigCount& v) {
  if (v.is_zero()) throw std::domain_error("factorize: zero has no factorization");
  std::map<BigCount, unsigned> found;
  BigCount rest = v;

  // Trial division, switching to machine words once the cofactor fits.
  for (std::uint32_t p : small_primes()) {
    if (rest.fits_u64()) break;
    const BigCount bp = p;
    while (rest.divisible_by(bp)) {
      rest = rest.divide_exact(bp);
      ++found[bp];
    }
  }
  if (!rest.fits_u64()) {
    Factorization partial;
    for (auto& [p, e] : found) partial.factors.push_back({p, e});
    throw FactorRangeError(std::move(partial), rest);
  }

  std::uint64_t r = rest.to_u64();
  std::map<std::uint64_t, unsigned> word;
  for (std::uint32_t p : small_primes()) {
    if (std::uint64_t{p} * p > r) break;
    while (r % p == 0) {
      r /= p;
      ++word[p];
    }
  }
  split_u64(r, word);
  for (auto [p, e] : word) found[BigCount(p)] += e;

  Factorization out;
  for (auto& [p, e] : found) out.factors.push_back({p, e});
  return out;
}

bool check_half_factorial_divisibility(const BigCount& h, int n) {
  if (n < 2) throw std::invalid_argument("check_half_factorial_divisibility: n must be at least 2");
  return h.divisible_by(BigCount::factorial(static_cast<unsigned>(n)).divide_exact(2));
}

int odd_prime_divisor_count(const BigCount& h, int n) {
  if (n < 1) throw std::invalid_argument("odd_prime_divisor_count: n must be positive");
  const BigCount quotient = h.divide_exact(BigCount::factorial(static_cast<unsigned>(n)));
  const auto f = factorize(quotient);
  return static_cast<int>(std::count_if(f.factors.begin(), f.factors.end(),
                                        [](const PrimePower& pp) { return pp.prime != BigCount(2); }));
}

}  // namespace graycensus
