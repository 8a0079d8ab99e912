#include "graycensus/classification.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include <json.hpp>

namespace graycensus {

std::string WeightSpectrum::str() const {
  std::string out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i != 0) out.push_back('+');
    out += std::to_string(counts[i]);
  }
  return out;
}

WeightSpectrum weight_spectrum(const DeltaSequence& d) {
  if (!validate_delta(d)) throw std::invalid_argument("weight_spectrum: invalid delta sequence");
  WeightSpectrum w{direction_counts(d)};
  std::sort(w.counts.begin(), w.counts.end());
  return w;
}

// --- prefix-canonical enumeration --------------------------------------------

namespace {

constexpr int kMaxClassifyDimension = 5;

struct Frame {
  Vertex cur = 0;
  std::uint32_t visited = 1;
  int depth = 0;
  int max_label = 0;
  std::vector<Direction> path;
};

class PrefixSearch {
 public:
  explicit PrefixSearch(int n) : n_(n), length_(1 << n), full_(n == 5 ? ~0u : (1u << (1 << n)) - 1) {
    for (Vertex v = 0; v < static_cast<Vertex>(length_); ++v) {
      for (int d = 0; d < n; ++d) nbr_[v] |= 1u << (v ^ (1u << d));
    }
  }

  // Depth-first from `f`; calls `on_leaf` for complete cycles, or `on_cut`
  // for partial paths reaching `cut_depth`.
  template <class Leaf, class Cut>
  void run(Frame& f, int cut_depth, Leaf&& on_leaf, Cut&& on_cut) const {
    if (f.depth == cut_depth) {
      on_cut(f);
      return;
    }
    if (f.depth == length_ - 1) {
      if (std::has_single_bit(f.cur)) {
        f.path[static_cast<std::size_t>(f.depth)] = static_cast<Direction>(std::countr_zero(f.cur) + 1);
        on_leaf(std::span<const Direction>(f.path));
      }
      return;
    }
    const int top = std::min(f.max_label + 1, n_);
    for (int d = 1; d <= top; ++d) {
      const Vertex w = f.cur ^ (1u << (d - 1));
      if ((f.visited >> w) & 1u) continue;
      if (!feasible(f.cur, w, f.visited | (1u << w))) continue;
      const Vertex saved_cur = f.cur;
      const int saved_label = f.max_label;
      f.path[static_cast<std::size_t>(f.depth)] = static_cast<Direction>(d);
      f.visited |= 1u << w;
      f.cur = w;
      f.max_label = std::max(f.max_label, d);
      ++f.depth;
      run(f, cut_depth, on_leaf, on_cut);
      --f.depth;
      f.max_label = saved_label;
      f.cur = saved_cur;
      f.visited &= ~(1u << w);
    }
  }

  int length() const { return length_; }

 private:
  // After stepping cur -> w, every unvisited neighbour of cur still needs two
  // usable neighbours (unvisited, or one of the path ends w and 0), and 0
  // must keep a way back.
  bool feasible(Vertex cur, Vertex w, std::uint32_t visited) const {
    const std::uint32_t open = full_ & ~visited;
    if (open == 0) return true;
    const std::uint32_t usable = open | (1u << w) | 1u;
    std::uint32_t around = nbr_[cur] & open;
    while (around != 0) {
      const int x = std::countr_zero(around);
      around &= around - 1;
      if (std::popcount(nbr_[static_cast<std::size_t>(x)] & usable) < 2) return false;
    }
    return (nbr_[0] & (open | (1u << w))) != 0;
  }

  int n_;
  int length_;
  std::uint32_t full_;
  std::array<std::uint32_t, 32> nbr_{};
};

}  // namespace

std::uint64_t enumerate_canonical_prefix_cycles(int n, const PrefixCycleVisitor& visitor, unsigned threads) {
  require_dimension(n, 2, kMaxClassifyDimension, "enumerate_canonical_prefix_cycles");
  const PrefixSearch search(n);
  threads = std::max(1u, threads);
  auto fresh = [&] {
    Frame f;
    f.path.assign(static_cast<std::size_t>(search.length()), 0);
    return f;
  };

  if (threads == 1) {
    std::uint64_t visits = 0;
    Frame f = fresh();
    search.run(f, -1, [&](std::span<const Direction> p) { ++visits; visitor(0, p); }, [](Frame&) {});
    return visits;
  }

  // Fork on disjoint prefixes; worker w takes prefixes w, w + T, ...
  std::vector<Frame> prefixes;
  Frame root = fresh();
  const int cut = std::min(search.length() - 1, n + 4);
  std::uint64_t shallow = 0;
  search.run(root, cut, [&](std::span<const Direction> p) { ++shallow; visitor(0, p); },
             [&](Frame& f) { prefixes.push_back(f); });

  std::vector<std::uint64_t> visits(threads, 0);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < prefixes.size(); i += threads) {
          Frame f = prefixes[i];
          search.run(f, -1, [&](std::span<const Direction> p) { ++visits[w]; visitor(w, p); }, [](Frame&) {});
        }
      });
    }
  }
  std::uint64_t total = shallow;
  for (auto v : visits) total += v;
  return total;
}

// --- canonical form ----------------------------------------------------------

void canonical_form(std::span<const Direction> deltas, int n, std::span<Direction> out) {
  const std::size_t len = deltas.size();
  if (out.size() != len) throw std::invalid_argument("canonical_form: output size mismatch");
  std::array<Direction, kMaxDimension + 1> relabel{};
  bool have = false;
  for (int reverse = 0; reverse < 2; ++reverse) {
    for (std::size_t k = 0; k < len; ++k) {
      relabel.fill(0);
      Direction next = 1;
      bool smaller = !have;
      for (std::size_t i = 0; i < len; ++i) {
        // Backwards from vertex k the steps are d[k-1], d[k-2], ...
        const Direction x = reverse ? deltas[(k + len - 1 - i) % len] : deltas[(k + i) % len];
        if (x < 1 || x > n) throw std::invalid_argument("canonical_form: direction out of range");
        Direction& r = relabel[x];
        if (r == 0) r = next++;
        if (smaller) {
          out[i] = r;
        } else if (r < out[i]) {
          smaller = true;
          out[i] = r;
        } else if (r > out[i]) {
          break;
        }
      }
      have = true;
    }
  }
}

DeltaSequence canonical_form(const DeltaSequence& d) {
  if (!validate_delta(d)) throw std::invalid_argument("canonical_form: invalid delta sequence");
  DeltaSequence out{d.n, std::vector<Direction>(d.size())};
  canonical_form(d.deltas, d.n, out.deltas);
  return out;
}

DeltaSequence canonical_form(const CycleEdgeSet& c) { return canonical_form(edge_set_to_deltas(c)[0]); }

// --- orbit classification ----------------------------------------------------

OrbitSummary classify_automorphism(int n, const ClassifyOptions& options) {
  require_dimension(n, 2, kMaxClassifyDimension, "classify_automorphism");
  const unsigned threads = std::max(1u, options.threads);
  const std::size_t len = std::size_t{1} << n;

  struct Worker {
    std::unordered_map<std::string, std::uint64_t> hits;
    std::string scratch;
  };
  std::vector<Worker> workers(threads);
  for (auto& w : workers) w.scratch.assign(len, '\0');
  std::atomic<std::uint64_t> visited{0};
  std::mutex progress_mutex;

  enumerate_canonical_prefix_cycles(
      n,
      [&](unsigned w, std::span<const Direction> deltas) {
        auto& worker = workers[w];
        canonical_form(deltas, n, {reinterpret_cast<Direction*>(worker.scratch.data()), len});
        ++worker.hits[worker.scratch];
        const auto seen = visited.fetch_add(1, std::memory_order_relaxed) + 1;
        if (options.on_progress && (seen & ((1u << 20) - 1)) == 0) {
          std::lock_guard lock(progress_mutex);
          options.on_progress(seen);
        }
      },
      threads);

  std::map<std::string, std::uint64_t> merged;
  for (auto& w : workers) {
    for (auto& [key, count] : w.hits) merged[key] += count;
  }

  // A prefix-canonical traversal stands for n! directed cycles, i.e. n!/2 undirected ones.
  const BigCount per_hit = BigCount::factorial(static_cast<unsigned>(n)).divide_exact(2);
  OrbitSummary summary;
  summary.n = n;
  summary.orbits.reserve(merged.size());
  for (const auto& [key, count] : merged) {
    Orbit o;
    o.canonical = {n, std::vector<Direction>(key.begin(), key.end())};
    o.size = BigCount(count) * per_hit;
    o.spectrum = weight_spectrum(o.canonical);
    summary.total_cycles += o.size;
    summary.orbits.push_back(std::move(o));
  }
  return summary;
}

std::map<WeightSpectrum, SpectrumClass> classify_weights(const OrbitSummary& summary) {
  std::map<WeightSpectrum, SpectrumClass> out;
  for (const auto& o : summary.orbits) {
    auto& cls = out[o.spectrum];
    ++cls.orbits;
    cls.cycles += o.size;
  }
  return out;
}

std::map<WeightSpectrum, SpectrumClass> classify_weights(int n, const ClassifyOptions& options) {
  return classify_weights(classify_automorphism(n, options));
}

// --- brute force over all cycles (n <= 4) ------------------------------------

namespace {

constexpr int kMaxBruteDimension = 4;

std::vector<CycleEdgeSet> backtrack_cycles(int n) {
  const int len = 1 << n;
  std::vector<CycleEdgeSet> out;
  DeltaSequence d{n, std::vector<Direction>(static_cast<std::size_t>(len))};
  std::vector<bool> seen(static_cast<std::size_t>(len), false);
  seen[0] = true;
  auto dfs = [&](auto&& self, Vertex cur, int depth) -> void {
    for (int x = 1; x <= n; ++x) {
      const Vertex w = cur ^ (1u << (x - 1));
      d.deltas[static_cast<std::size_t>(depth)] = static_cast<Direction>(x);
      if (depth == len - 1) {
        // Keep one of the two traversals of each undirected cycle.
        if (w == 0 && d.deltas.front() < d.deltas.back()) out.push_back(delta_to_edge_set(d));
      } else if (!seen[w]) {
        seen[w] = true;
        self(self, w, depth + 1);
        seen[w] = false;
      }
    }
  };
  dfs(dfs, 0, 0);
  return out;
}

struct MaskedCycles {
  std::vector<std::uint64_t> masks;
};

const MaskedCycles& masked_cycles(int n) {
  static std::array<MaskedCycles, kMaxBruteDimension + 1> cache;
  static std::array<std::once_flag, kMaxBruteDimension + 1> once;
  std::call_once(once[static_cast<std::size_t>(n)], [n] {
    const CubeGraph cube(n);
    auto& m = cache[static_cast<std::size_t>(n)].masks;
    for (const auto& c : all_hamiltonian_cycles(n)) {
      std::uint64_t mask = 0;
      for (const Edge& e : c.edges) mask |= std::uint64_t{1} << cube.edge_index(e);
      m.push_back(mask);
    }
  });
  return cache[static_cast<std::size_t>(n)];
}

}  // namespace

const std::vector<CycleEdgeSet>& all_hamiltonian_cycles(int n) {
  require_dimension(n, 2, kMaxBruteDimension, "all_hamiltonian_cycles");
  static std::array<std::vector<CycleEdgeSet>, kMaxBruteDimension + 1> cache;
  static std::array<std::once_flag, kMaxBruteDimension + 1> once;
  std::call_once(once[static_cast<std::size_t>(n)], [n] { cache[static_cast<std::size_t>(n)] = backtrack_cycles(n); });
  return cache[static_cast<std::size_t>(n)];
}

BigCount count_fixed_cycles(const SignedPermutation& g, int n) {
  require_dimension(n, 2, kMaxBruteDimension, "count_fixed_cycles");
  if (g.dimension() != n) throw std::invalid_argument("count_fixed_cycles: dimension mismatch");
  const CubeGraph cube(n);
  const auto edges = cube.edges();
  std::vector<std::uint64_t> image(edges.size());
  for (const Edge& e : edges) image[cube.edge_index(e)] = cube.edge_index(g.apply(e));

  std::uint64_t fixed = 0;
  for (std::uint64_t mask : masked_cycles(n).masks) {
    std::uint64_t mapped = 0;
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
      mapped |= std::uint64_t{1} << image[static_cast<std::size_t>(std::countr_zero(rest))];
    }
    fixed += mapped == mask;
  }
  return fixed;
}

BigCount burnside_orbit_count(int n) {
  require_dimension(n, 2, kMaxBruteDimension, "burnside_orbit_count");
  BigCount sum;
  for (const auto& g : all_automorphisms(n)) sum += count_fixed_cycles(g, n);
  return sum.divide_exact(automorphism_group_order(n));
}

// --- output ------------------------------------------------------------------

std::string format_orbit_lines(const OrbitSummary& summary) {
  std::vector<std::string> lines;
  lines.reserve(summary.orbits.size());
  for (const auto& o : summary.orbits) {
    lines.push_back(format_delta(o.canonical) + " " + o.size.to_string() + " " + o.spectrum.str());
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

std::string orbit_summary_json(const OrbitSummary& summary) {
  nlohmann::ordered_json j;
  j["n"] = summary.n;
  j["aut_count"] = summary.aut_count();
  j["weight_count"] = classify_weights(summary).size();
  j["total_cycles"] = summary.total_cycles.to_string();
  return j.dump();
}

}  // namespace graycensus
