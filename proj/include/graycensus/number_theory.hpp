#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "graycensus/big_count.hpp"

namespace graycensus {

struct PrimePower {
  BigCount prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  /// Primes strictly increasing.
  std::vector<PrimePower> factors;

  BigCount product() const;
  /// "p1^e1 * p2^e2 * ...", "^1" left out; "1" for the empty product.
  std::string str() const;
};

/// Thrown when a cofactor is beyond what factorize handles. `partial` holds
/// the primes found so far and `cofactor` the unfactored rest.
class FactorRangeError : public std::runtime_error {
 public:
  FactorRangeError(Factorization partial, BigCount cofactor);

  const Factorization& partial() const { return partial_; }
  const BigCount& cofactor() const { return cofactor_; }

 private:
  Factorization partial_;
  BigCount cofactor_;
};

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(std::uint64_t v);
bool is_prime(const BigCount& v);  // v < 2^64, otherwise std::out_of_range

/// Trial division to 10^7, then Miller-Rabin and Pollard rho on cofactors
/// below 2^64. Throws std::domain_error for v = 0.
Factorization factorize(const BigCount& v);

std::string format_factorization(const Factorization& f);

/// h mod (n!/2) == 0. Requires n >= 2.
bool check_half_factorial_divisibility(const BigCount& h, int n);

/// Distinct odd primes dividing h / n!. Throws std::domain_error when n!
/// does not divide h.
int odd_prime_divisor_count(const BigCount& h, int n);

}  // namespace graycensus
