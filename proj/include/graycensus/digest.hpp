#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

struct evp_md_ctx_st;

namespace graycensus {

using Sha256 = std::array<std::uint8_t, 32>;

Sha256 sha256(std::span<const std::uint8_t> bytes);

/// Incremental SHA-256.
class Sha256Stream {
 public:
  Sha256Stream();
  ~Sha256Stream();
  Sha256Stream(const Sha256Stream&) = delete;
  Sha256Stream& operator=(const Sha256Stream&) = delete;

  void update(std::span<const std::uint8_t> bytes);
  Sha256 finish();

 private:
  ::evp_md_ctx_st* ctx_;
};

std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace graycensus
