#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>

#include "graycensus/big_count.hpp"
#include "graycensus/checkpoint.hpp"
#include "graycensus/edge_order.hpp"

namespace graycensus {

/// Raised when the next level would not fit in the memory budget. The last
/// completed level has been checkpointed when a checkpoint directory was set.
class ResourceExhausted : public std::runtime_error {
 public:
  ResourceExhausted(const std::string& what, std::size_t level, std::optional<std::filesystem::path> checkpoint)
      : std::runtime_error(what), level_(level), checkpoint_(std::move(checkpoint)) {}

  std::size_t level() const { return level_; }
  const std::optional<std::filesystem::path>& checkpoint() const { return checkpoint_; }

 private:
  std::size_t level_;
  std::optional<std::filesystem::path> checkpoint_;
};

struct LevelStats {
  std::size_t level = 0;  // completed levels
  std::size_t states = 0;
  std::size_t width = 0;
  double seconds = 0;
};

struct CountOptions {
  unsigned threads = 1;
  /// Bytes; 0 means no limit.
  std::uint64_t memory_limit = 0;
  /// Where checkpoints go; empty disables checkpoint files.
  std::filesystem::path checkpoint_dir;
  /// Also checkpoint every k completed levels (0: only on stop or abort).
  std::size_t checkpoint_every = 0;
  /// Stop cleanly once this many levels are complete.
  std::optional<std::size_t> stop_after_level;
  std::function<void(const LevelStats&)> on_level;
};

enum class RunStatus { completed, stopped, resource_abort };

struct CountResult {
  RunStatus status = RunStatus::completed;
  /// Final count when completed; otherwise the total closed so far.
  BigCount count;
  std::size_t levels_completed = 0;
  std::size_t total_levels = 0;
  std::size_t peak_states = 0;
  std::optional<std::filesystem::path> checkpoint;
  /// Digest of the state table at the level the run ended on.
  Sha256 table_digest{};
};

/// Frontier (mate-array) dynamic program over an edge order of Q_n.
///
/// Each state records, for the vertices on the frontier, whether they are
/// unused, saturated, or the end of a partial path (and which frontier vertex
/// is the other end). Hamiltonian cycles require degree 2 everywhere and are
/// counted at the edge that closes a single path through every vertex;
/// perfect matchings use degree cap 1 and are read off the empty final state.
///
/// Multiplicities are 128-bit with checked addition. States are striped by
/// hash and merged in parent order, so the table contents and order do not
/// depend on the thread count.
class FrontierCounter {
 public:
  FrontierCounter(CountTask task, EdgeOrder order);

  CountTask task() const { return task_; }
  const EdgeOrder& order() const { return order_; }

  CountResult run(const CountOptions& options = {}) const;
  /// Throws CheckpointError if the checkpoint's n, task or edge-order hash
  /// differ from this counter's.
  CountResult resume(const Checkpoint& checkpoint, const CountOptions& options = {}) const;

  /// Memory needed to hold one state of this sweep.
  std::size_t bytes_per_state() const;

 private:
  CountTask task_;
  EdgeOrder order_;
};

/// Runs to completion; throws ResourceExhausted on a budget abort.
BigCount count_hamiltonian_cycles(int n, const CountOptions& options = {},
                                  EdgeOrderKind order = EdgeOrderKind::layered);
BigCount count_perfect_matchings(int n, const CountOptions& options = {},
                                 EdgeOrderKind order = EdgeOrderKind::layered);

/// Reads `path` and continues the sweep it describes. The edge order is
/// recovered by matching the stored hash against the built-in orders.
/// `expected_n`, when given, must match the checkpoint.
CountResult resume_from_checkpoint(const std::filesystem::path& path, const CountOptions& options = {},
                                   std::optional<int> expected_n = std::nullopt);

/// OH_n = 2 H_n.
BigCount directed_count(const BigCount& h);
/// EH_n = H_n / (n!/2). Throws std::domain_error when the division is inexact.
BigCount equivalence_count(const BigCount& h, int n);

}  // namespace graycensus
