#include "graycensus/frontier.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstring>
#include <thread>

namespace graycensus {

namespace {

using u128 = unsigned __int128;

// 128-bit multiplicity, stored as two words so entries stay 8-byte aligned.
struct Count {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  static Count of(u128 v) { return {static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(v >> 64)}; }
  u128 value() const { return (static_cast<u128>(hi) << 64) | lo; }
  bool empty() const { return (lo | hi) == 0; }

  void add(const Count& rhs) {
    const u128 a = value();
    const u128 sum = a + rhs.value();
    if (sum < a) throw std::overflow_error("frontier: state multiplicity exceeds 128 bits");
    *this = of(sum);
  }
};

constexpr int kStripeBits = 6;
constexpr std::size_t kStripes = std::size_t{1} << kStripeBits;
constexpr std::size_t kMaxWidth = 96;
constexpr std::uint8_t kUnused = 0;
constexpr std::uint8_t kSaturated = 1;
constexpr std::uint8_t kFirstLabel = 2;

// Work for one edge level.
struct LevelPlan {
  std::size_t before = 0;  // frontier size entering the level
  std::size_t extended = 0;  // after adding entering vertices
  std::size_t a = 0, b = 0;  // slots of the edge endpoints
  std::vector<std::uint8_t> remaining;  // unprocessed edges per extended slot, after this level
  std::vector<std::uint8_t> keep;
  bool all_entered = false;
};

struct Layout {
  int bits = 1;
  int per_word = 64;
  int words = 1;
};

std::vector<LevelPlan> make_plans(const EdgeOrder& order) {
  const std::size_t vertex_count = std::size_t{1} << order.dimension();
  std::vector<std::size_t> last(vertex_count, 0), edges_left(vertex_count, 0);
  std::vector<bool> entered(vertex_count, false);
  std::size_t last_entry = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Vertex x : {order[i].u, order[i].v}) {
      if (!entered[x]) last_entry = i;
      entered[x] = true;
      last[x] = i;
      ++edges_left[x];
    }
  }
  std::fill(entered.begin(), entered.end(), false);

  std::vector<LevelPlan> plans(order.size());
  std::vector<Vertex> frontier;
  for (std::size_t i = 0; i < order.size(); ++i) {
    LevelPlan& p = plans[i];
    p.before = frontier.size();
    const Edge e = order[i];
    for (Vertex x : {e.u, e.v}) {
      if (!entered[x]) {
        entered[x] = true;
        frontier.push_back(x);
      }
    }
    p.extended = frontier.size();
    if (p.extended > kMaxWidth) throw std::length_error("frontier wider than the state encoding supports");
    p.a = static_cast<std::size_t>(std::find(frontier.begin(), frontier.end(), e.u) - frontier.begin());
    p.b = static_cast<std::size_t>(std::find(frontier.begin(), frontier.end(), e.v) - frontier.begin());
    --edges_left[e.u];
    --edges_left[e.v];
    p.remaining.resize(p.extended);
    p.keep.resize(p.extended);
    for (std::size_t j = 0; j < p.extended; ++j) {
      p.remaining[j] = static_cast<std::uint8_t>(std::min<std::size_t>(edges_left[frontier[j]], 255));
      p.keep[j] = last[frontier[j]] != i;
    }
    p.all_entered = i >= last_entry;
    std::erase_if(frontier, [&](Vertex x) { return last[x] == i; });
  }
  return plans;
}

Layout make_layout(CountTask task, const std::vector<LevelPlan>& plans) {
  std::size_t width = 1;
  for (const auto& p : plans) width = std::max(width, p.before);
  Layout l;
  l.bits = task == CountTask::perfect_matchings ? 1 : std::bit_width(width / 2 + kFirstLabel - 1);
  l.per_word = 64 / l.bits;
  l.words = static_cast<int>((width + static_cast<std::size_t>(l.per_word) - 1) / static_cast<std::size_t>(l.per_word));
  return l;
}

inline std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <int K>
struct Entry {
  std::array<std::uint64_t, K> key{};
  Count count;
};

template <int K>
std::uint64_t hash_key(const std::array<std::uint64_t, K>& key) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (auto w : key) h = mix(h ^ w) + 0x632be59bd9b4e019ULL;
  return h;
}

template <int K>
using Stripes = std::vector<std::vector<Entry<K>>>;

template <int K>
std::size_t table_size(const Stripes<K>& t) {
  std::size_t n = 0;
  for (const auto& s : t) n += s.size();
  return n;
}

template <int K>
class Sweep {
 public:
  Sweep(CountTask task, const EdgeOrder& order, const std::vector<LevelPlan>& plans, const Layout& layout)
      : task_(task), order_(order), plans_(plans), layout_(layout) {}

  CountResult run(Stripes<K> table, std::size_t start_level, BigCount closed, const CountOptions& opt) const;
  Stripes<K> load(const Checkpoint& ckpt) const;

 private:
  using E = Entry<K>;

  std::uint8_t code_at(const std::array<std::uint64_t, K>& key, std::size_t slot) const {
    const auto word = slot / static_cast<std::size_t>(layout_.per_word);
    const auto shift = (slot % static_cast<std::size_t>(layout_.per_word)) * static_cast<std::size_t>(layout_.bits);
    return static_cast<std::uint8_t>((key[word] >> shift) & ((1u << layout_.bits) - 1));
  }

  void put_code(std::array<std::uint64_t, K>& key, std::size_t slot, std::uint64_t code) const {
    const auto word = slot / static_cast<std::size_t>(layout_.per_word);
    const auto shift = (slot % static_cast<std::size_t>(layout_.per_word)) * static_cast<std::size_t>(layout_.bits);
    key[word] |= code << shift;
  }

  struct Expanded {
    Stripes<K> buffers = Stripes<K>(kStripes);
    Count closed;
  };

  void expand_range(const Stripes<K>& parents, std::size_t from, std::size_t to, const LevelPlan& plan,
                    Expanded& out) const;
  void emit(const LevelPlan& plan, const std::uint8_t* deg, const std::uint8_t* mate, const Count& c,
            Expanded& out) const;
  Stripes<K> step(Stripes<K>& parents, const LevelPlan& plan, unsigned threads, Count& closed) const;
  Checkpoint snapshot(const Stripes<K>& table, std::size_t level, const BigCount& closed) const;
  std::size_t width_at(std::size_t level) const;

  CountTask task_;
  const EdgeOrder& order_;
  const std::vector<LevelPlan>& plans_;
  Layout layout_;
};

template <int K>
void Sweep<K>::emit(const LevelPlan& plan, const std::uint8_t* deg, const std::uint8_t* mate, const Count& c,
                    Expanded& out) const {
  // Only the edge endpoints changed degree or budget, so only they can fail.
  const int target = task_ == CountTask::hamiltonian_cycles ? 2 : 1;
  for (std::size_t j : {plan.a, plan.b}) {
    if (target - deg[j] > plan.remaining[j]) return;
  }
  E child;
  std::array<std::uint8_t, kMaxWidth> label{};
  std::uint8_t next_label = kFirstLabel;
  std::size_t slot = 0;
  for (std::size_t j = 0; j < plan.extended; ++j) {
    if (!plan.keep[j]) continue;
    std::uint64_t code;
    if (deg[j] == 0) {
      code = kUnused;
    } else if (deg[j] >= target) {
      code = kSaturated;
    } else if (mate[j] > j) {
      label[j] = next_label++;
      code = label[j];
    } else {
      code = label[mate[j]];
    }
    put_code(child.key, slot++, code);
  }
  child.count = c;
  const auto h = hash_key<K>(child.key);
  out.buffers[h >> (64 - kStripeBits)].push_back(child);
}

template <int K>
void Sweep<K>::expand_range(const Stripes<K>& parents, std::size_t from, std::size_t to, const LevelPlan& plan,
                            Expanded& out) const {
  std::array<std::uint8_t, kMaxWidth> deg{}, mate{}, deg2{}, mate2{};
  std::array<std::uint8_t, 256> first_seen{};
  constexpr std::uint8_t kNone = 0xff;
  const std::size_t a = plan.a, b = plan.b;
  const bool hamiltonian = task_ == CountTask::hamiltonian_cycles;

  std::size_t index = 0;
  for (const auto& stripe : parents) {
    if (index + stripe.size() <= from) {
      index += stripe.size();
      continue;
    }
    for (const E& parent : stripe) {
      if (index >= to) return;
      if (index++ < from) continue;

      std::fill_n(first_seen.begin(), first_seen.size(), kNone);
      for (std::size_t j = 0; j < plan.before; ++j) {
        const auto code = code_at(parent.key, j);
        mate[j] = kNone;
        if (code == kUnused) {
          deg[j] = 0;
        } else if (code == kSaturated) {
          deg[j] = hamiltonian ? 2 : 1;
        } else {
          deg[j] = 1;
          if (first_seen[code] == kNone) {
            first_seen[code] = static_cast<std::uint8_t>(j);
          } else {
            mate[j] = first_seen[code];
            mate[first_seen[code]] = static_cast<std::uint8_t>(j);
          }
        }
      }
      for (std::size_t j = plan.before; j < plan.extended; ++j) {
        deg[j] = 0;
        mate[j] = kNone;
      }

      emit(plan, deg.data(), mate.data(), parent.count, out);

      if (hamiltonian) {
        if (deg[a] >= 2 || deg[b] >= 2) continue;
        if (deg[a] == 1 && mate[a] == b) {
          // Closing a path on itself: only a full Hamiltonian cycle survives.
          if (!plan.all_entered) continue;
          bool full = true;
          for (std::size_t j = 0; j < plan.extended && full; ++j) {
            if (j != a && j != b && deg[j] != 2) full = false;
          }
          if (full) out.closed.add(parent.count);
          continue;
        }
        std::copy_n(deg.begin(), plan.extended, deg2.begin());
        std::copy_n(mate.begin(), plan.extended, mate2.begin());
        const std::uint8_t end_a = deg2[a] == 0 ? static_cast<std::uint8_t>(a) : mate2[a];
        const std::uint8_t end_b = deg2[b] == 0 ? static_cast<std::uint8_t>(b) : mate2[b];
        ++deg2[a];
        ++deg2[b];
        mate2[end_a] = end_b;
        mate2[end_b] = end_a;
        emit(plan, deg2.data(), mate2.data(), parent.count, out);
      } else {
        if (deg[a] != 0 || deg[b] != 0) continue;
        std::copy_n(deg.begin(), plan.extended, deg2.begin());
        deg2[a] = deg2[b] = 1;
        emit(plan, deg2.data(), mate.data(), parent.count, out);
      }
    }
  }
}

template <int K>
Stripes<K> Sweep<K>::step(Stripes<K>& parents, const LevelPlan& plan, unsigned threads, Count& closed) const {
  const std::size_t total = table_size<K>(parents);
  threads = std::max(1u, threads);
  std::vector<Expanded> parts(threads);
  for (auto& p : parts) {
    const std::size_t share = 2 * total / threads / kStripes + 16;
    for (auto& buf : p.buffers) buf.reserve(share);
  }
  auto expand = [&](unsigned w) {
    expand_range(parents, total * w / threads, total * (w + 1) / threads, plan, parts[w]);
  };
  if (threads == 1) {
    expand(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(expand, w);
  }
  for (auto& p : parts) closed.add(p.closed);
  Stripes<K>().swap(parents);

  // Merge each stripe in worker order: insertion order, and therefore the
  // resulting table, matches a single-threaded run.
  Stripes<K> next(kStripes);
  auto merge = [&](unsigned w) {
    std::vector<E> slots;
    for (std::size_t s = w; s < kStripes; s += threads) {
      std::size_t incoming = 0;
      for (auto& p : parts) incoming += p.buffers[s].size();
      if (incoming == 0) continue;
      const std::size_t cap = std::bit_ceil(incoming + incoming / 2 + 1);
      slots.assign(cap, E{});
      std::size_t used = 0;
      for (auto& p : parts) {
        for (const E& child : p.buffers[s]) {
          std::size_t i = hash_key<K>(child.key) & (cap - 1);
          while (!slots[i].count.empty() && slots[i].key != child.key) i = (i + 1) & (cap - 1);
          if (slots[i].count.empty()) {
            slots[i] = child;
            ++used;
          } else {
            slots[i].count.add(child.count);
          }
        }
        std::vector<E>().swap(p.buffers[s]);
      }
      auto& out = next[s];
      out.reserve(used);
      for (const E& e : slots) {
        if (!e.count.empty()) out.push_back(e);
      }
    }
  };
  if (threads == 1) {
    merge(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(merge, w);
  }
  return next;
}

template <int K>
std::size_t Sweep<K>::width_at(std::size_t level) const {
  return level < plans_.size() ? plans_[level].before : 0;
}

template <int K>
Checkpoint Sweep<K>::snapshot(const Stripes<K>& table, std::size_t level, const BigCount& closed) const {
  Checkpoint c;
  c.n = order_.dimension();
  c.task = task_;
  c.order_hash = order_.hash();
  c.level = static_cast<std::uint32_t>(level);
  c.partial_total = closed;
  const std::size_t width = width_at(level);
  const std::size_t total = table_size<K>(table);
  c.width = width;
  c.states.reserve(total * width);
  c.counts.reserve(total);
  std::array<std::uint8_t, kMaxWidth> codes{};
  for (const auto& stripe : table) {
    for (const E& e : stripe) {
      for (std::size_t j = 0; j < width; ++j) codes[j] = code_at(e.key, j);
      c.add({codes.data(), width}, e.count.value());
    }
  }
  c.sort();
  return c;
}

template <int K>
Stripes<K> Sweep<K>::load(const Checkpoint& ckpt) const {
  const std::size_t level = ckpt.level;
  if (level > plans_.size()) throw CheckpointError("checkpoint level beyond the edge order");
  const std::size_t width = width_at(level);
  if (ckpt.size() != 0 && ckpt.width != width) throw CheckpointError("checkpoint state width does not match the frontier");
  const bool hamiltonian = task_ == CountTask::hamiltonian_cycles;
  const std::size_t max_code = hamiltonian ? width / 2 + kFirstLabel - 1 : kSaturated;
  Stripes<K> table(kStripes);
  std::array<std::uint8_t, kMaxWidth / 2 + kFirstLabel> seen{};
  for (std::size_t i = 0; i < ckpt.size(); ++i) {
    const auto state = ckpt.state(i);
    E e;
    seen.fill(0);
    std::uint8_t next_label = kFirstLabel;
    for (std::size_t j = 0; j < width; ++j) {
      const std::uint8_t code = state[j];
      if (code > max_code) throw CheckpointError("checkpoint state code out of range");
      if (code >= kFirstLabel) {
        // Paths must be numbered in order of first appearance, each with two ends.
        if (seen[code] == 0 && code != next_label++) throw CheckpointError("checkpoint state is not canonical");
        if (++seen[code] > 2) throw CheckpointError("checkpoint path has more than two ends");
      }
      put_code(e.key, j, code);
    }
    for (std::uint8_t l = kFirstLabel; l < next_label; ++l) {
      if (seen[l] != 2) throw CheckpointError("checkpoint path end without a partner");
    }
    if (ckpt.counts[i] == 0) throw CheckpointError("checkpoint multiplicity is zero");
    e.count = Count::of(ckpt.counts[i]);
    table[hash_key<K>(e.key) >> (64 - kStripeBits)].push_back(e);
  }
  return table;
}

template <int K>
CountResult Sweep<K>::run(Stripes<K> table, std::size_t level, BigCount closed, const CountOptions& opt) const {
  CountResult result;
  result.total_levels = plans_.size();
  result.peak_states = table_size<K>(table);

  auto save = [&](const Checkpoint& snap) -> std::optional<std::filesystem::path> {
    if (opt.checkpoint_dir.empty()) return std::nullopt;
    const auto path = checkpoint_path(opt.checkpoint_dir, task_, order_.dimension(), snap.level);
    write_checkpoint(path, snap);
    return path;
  };
  // Stops, aborts and completion all end with the table frozen and digested.
  auto finish = [&](RunStatus status) {
    const Checkpoint snap = snapshot(table, level, closed);
    if (status != RunStatus::completed) result.checkpoint = save(snap);
    result.status = status;
    result.levels_completed = level;
    result.count = closed;
    result.table_digest = snap.digest();
    return result;
  };

  std::optional<std::filesystem::path> periodic;
  const auto t0 = std::chrono::steady_clock::now();
  while (level < plans_.size()) {
    if (opt.stop_after_level && level >= *opt.stop_after_level) return finish(RunStatus::stopped);
    const std::size_t states = table_size<K>(table);
    // Parents, a child buffer of up to twice as many entries, and merge slack.
    const std::uint64_t projected = static_cast<std::uint64_t>(states) * sizeof(E) * 4;
    if (opt.memory_limit != 0 && projected > opt.memory_limit) return finish(RunStatus::resource_abort);
    Count level_closed;
    table = step(table, plans_[level], opt.threads, level_closed);
    closed += BigCount::from_u128(level_closed.value());
    ++level;
    const std::size_t now = table_size<K>(table);
    result.peak_states = std::max(result.peak_states, now);
    if (opt.on_level) {
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      opt.on_level({level, now, plans_[level - 1].extended, secs});
    }
    if (opt.checkpoint_every != 0 && level % opt.checkpoint_every == 0 && level < plans_.size()) {
      auto path = save(snapshot(table, level, closed));
      if (periodic && path && *periodic != *path) std::filesystem::remove(*periodic);
      periodic = path;
    }
  }
  if (task_ == CountTask::perfect_matchings) {
    // All vertices have left the frontier; the lone empty state holds the count.
    for (const auto& stripe : table) {
      for (const E& e : stripe) closed += BigCount::from_u128(e.count.value());
    }
  }
  if (periodic) std::filesystem::remove(*periodic);
  return finish(RunStatus::completed);
}

template <class F>
auto dispatch(int words, F&& f) {
  switch (words) {
    case 1: return f(std::integral_constant<int, 1>{});
    case 2: return f(std::integral_constant<int, 2>{});
    case 3: return f(std::integral_constant<int, 3>{});
    case 4: return f(std::integral_constant<int, 4>{});
    case 5: return f(std::integral_constant<int, 5>{});
    case 6: return f(std::integral_constant<int, 6>{});
    default: throw std::length_error("frontier wider than the state encoding supports");
  }
}

}  // namespace

FrontierCounter::FrontierCounter(CountTask task, EdgeOrder order) : task_(task), order_(std::move(order)) {
  if (task_ == CountTask::hamiltonian_cycles) require_dimension(order_.dimension(), 2, kMaxDimension, "count_hamiltonian_cycles");
}

std::size_t FrontierCounter::bytes_per_state() const {
  const auto plans = make_plans(order_);
  const auto layout = make_layout(task_, plans);
  return static_cast<std::size_t>(layout.words) * 8 + sizeof(Count);
}

CountResult FrontierCounter::run(const CountOptions& options) const {
  const auto plans = make_plans(order_);
  const auto layout = make_layout(task_, plans);
  return dispatch(layout.words, [&](auto k) {
    constexpr int K = decltype(k)::value;
    Sweep<K> sweep(task_, order_, plans, layout);
    Stripes<K> table(kStripes);
    table[hash_key<K>({}) >> (64 - kStripeBits)].push_back({{}, Count::of(1)});
    return sweep.run(std::move(table), 0, BigCount{}, options);
  });
}

CountResult FrontierCounter::resume(const Checkpoint& ckpt, const CountOptions& options) const {
  if (ckpt.n != order_.dimension()) {
    throw CheckpointError("checkpoint is for n=" + std::to_string(ckpt.n) + ", run expects n=" +
                          std::to_string(order_.dimension()));
  }
  if (ckpt.task != task_) throw CheckpointError("checkpoint task does not match");
  if (ckpt.order_hash != order_.hash()) throw CheckpointError("checkpoint edge-order hash does not match");
  const auto plans = make_plans(order_);
  const auto layout = make_layout(task_, plans);
  return dispatch(layout.words, [&](auto k) {
    constexpr int K = decltype(k)::value;
    Sweep<K> sweep(task_, order_, plans, layout);
    return sweep.run(sweep.load(ckpt), ckpt.level, ckpt.partial_total, options);
  });
}

namespace {

BigCount run_to_completion(CountTask task, int n, const CountOptions& options, EdgeOrderKind kind) {
  const FrontierCounter counter(task, EdgeOrder::make(n, kind));
  auto result = counter.run(options);
  if (result.status == RunStatus::resource_abort) {
    throw ResourceExhausted("state table exceeds the memory limit after " + std::to_string(result.levels_completed) +
                                " of " + std::to_string(result.total_levels) + " levels",
                            result.levels_completed, result.checkpoint);
  }
  if (result.status == RunStatus::stopped) throw std::logic_error("run stopped before completion");
  return result.count;
}

}  // namespace

BigCount count_hamiltonian_cycles(int n, const CountOptions& options, EdgeOrderKind order) {
  require_dimension(n, 2, kMaxDimension, "count_hamiltonian_cycles");
  return run_to_completion(CountTask::hamiltonian_cycles, n, options, order);
}

BigCount count_perfect_matchings(int n, const CountOptions& options, EdgeOrderKind order) {
  require_dimension(n, 1, kMaxDimension, "count_perfect_matchings");
  return run_to_completion(CountTask::perfect_matchings, n, options, order);
}

CountResult resume_from_checkpoint(const std::filesystem::path& path, const CountOptions& options,
                                   std::optional<int> expected_n) {
  const Checkpoint ckpt = read_checkpoint(path);
  if (expected_n && *expected_n != ckpt.n) {
    throw CheckpointError("checkpoint is for n=" + std::to_string(ckpt.n) + ", expected n=" +
                          std::to_string(*expected_n));
  }
  if (ckpt.n < 1 || ckpt.n > kMaxDimension) throw CheckpointError("checkpoint dimension out of range");
  for (auto kind : {EdgeOrderKind::layered, EdgeOrderKind::binary}) {
    auto order = EdgeOrder::make(ckpt.n, kind);
    if (order.hash() == ckpt.order_hash) return FrontierCounter(ckpt.task, std::move(order)).resume(ckpt, options);
  }
  throw CheckpointError("checkpoint edge-order hash matches no built-in order");
}

BigCount directed_count(const BigCount& h) { return h * 2; }

BigCount equivalence_count(const BigCount& h, int n) {
  require_dimension(n, 2, kMaxDimension, "equivalence_count");
  const BigCount half_factorial = BigCount::factorial(static_cast<unsigned>(n)).divide_exact(2);
  if (!h.divisible_by(half_factorial)) {
    throw std::domain_error("H=" + h.to_string() + " is not a multiple of n!/2=" + half_factorial.to_string() +
                            "; the count is wrong");
  }
  return h.divide_exact(half_factorial);
}

}  // namespace graycensus
