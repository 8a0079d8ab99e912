#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "graycensus/big_count.hpp"
#include "graycensus/digest.hpp"

namespace graycensus {

enum class CountTask : std::uint32_t { hamiltonian_cycles = 1, perfect_matchings = 2 };

std::string_view to_string(CountTask t);
CountTask parse_count_task(std::string_view text);  // "hamiltonian" | "matchings"

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Multiplicity of one frontier state. The sweep keeps these in 128 bits.
using Multiplicity = unsigned __int128;

/// Frozen state table of a frontier sweep at a level boundary.
///
/// File layout (all integers little-endian):
///
///     "GCKP" | version u32 | n u32 | edge-order sha256 [32] | level u32 | state count u64
///     task u32 | u32 len, partial total bytes
///     state count x { u32 len, state bytes | u32 len, multiplicity bytes }
///     sha256 of everything above [32]
///
/// `level` is the number of completed edge levels. State bytes hold one slot
/// code per frontier vertex: 0 unused, 1 saturated (degree 2, or matched),
/// 2+k endpoint of open path k, paths numbered in frontier order. Counts are
/// minimal little-endian magnitudes. Records are written sorted by state
/// bytes, so equal tables serialize to equal files.
struct Checkpoint {
  static constexpr std::uint32_t kVersion = 1;

  std::uint32_t version = kVersion;
  int n = 0;
  CountTask task = CountTask::hamiltonian_cycles;
  Sha256 order_hash{};
  std::uint32_t level = 0;
  BigCount partial_total;

  /// Bytes per state; every record of one table has the frontier's width.
  std::size_t width = 0;
  std::vector<std::uint8_t> states;  // record i at [i * width, (i + 1) * width)
  std::vector<Multiplicity> counts;

  std::size_t size() const { return counts.size(); }
  std::span<const std::uint8_t> state(std::size_t i) const { return {states.data() + i * width, width}; }
  void add(std::span<const std::uint8_t> state, Multiplicity count);
  /// Orders records by state bytes; encode() requires sorted records.
  void sort();

  std::vector<std::uint8_t> encode() const;
  void write(std::ostream& out) const;
  /// Throws CheckpointError on bad magic/version, truncation or digest mismatch.
  static Checkpoint decode(std::span<const std::uint8_t> bytes);
  static Checkpoint read(std::istream& in);

  /// The trailing content digest of the encoded form.
  Sha256 digest() const;
};

/// Writes atomically (temporary file, then rename).
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint read_checkpoint(const std::filesystem::path& path);

/// "<task>-n<N>-L<level>.gckp" inside `dir`.
std::filesystem::path checkpoint_path(const std::filesystem::path& dir, CountTask task, int n, std::uint32_t level);

}  // namespace graycensus
