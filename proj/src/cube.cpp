#include "graycensus/cube.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace graycensus {

void require_dimension(int n, int lo, int hi, std::string_view what) {
  if (n < lo || n > hi) {
    throw std::out_of_range(std::string(what) + ": dimension " + std::to_string(n) + " outside [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

Direction Edge::direction() const {
  return static_cast<Direction>(std::countr_zero(u ^ v) + 1);
}

CubeGraph::CubeGraph(int n) : n_(n) { require_dimension(n, 1, kMaxDimension, "CubeGraph"); }

bool CubeGraph::adjacent(Vertex a, Vertex b) const {
  return contains(a) && contains(b) && std::has_single_bit(a ^ b);
}

std::vector<Vertex> CubeGraph::neighbors(Vertex v) const {
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(n_));
  for (int d = 0; d < n_; ++d) out.push_back(v ^ (1u << d));
  return out;
}

std::vector<Edge> CubeGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (int d = 0; d < n_; ++d) {
      const Vertex v = u ^ (1u << d);
      if (u < v) out.push_back({u, v});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t CubeGraph::edge_index(Edge e) const {
  const int bit = e.direction() - 1;
  const std::uint64_t low = e.u & ((1u << bit) - 1);
  const std::uint64_t high = (e.u >> (bit + 1)) << bit;
  return (static_cast<std::uint64_t>(bit) << (n_ - 1)) | high | low;
}

CubeGraph build_cube(int n) { return CubeGraph(n); }

// --- SignedPermutation -------------------------------------------------------

SignedPermutation SignedPermutation::identity(int n) {
  require_dimension(n, 1, kMaxDimension, "SignedPermutation");
  SignedPermutation g;
  g.n_ = n;
  for (int i = 0; i < n; ++i) g.perm_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  return g;
}

SignedPermutation SignedPermutation::from_images(std::span<const int> perm, std::uint32_t flips) {
  const int n = static_cast<int>(perm.size());
  require_dimension(n, 1, kMaxDimension, "SignedPermutation");
  std::uint32_t seen = 0;
  SignedPermutation g;
  g.n_ = n;
  for (int i = 0; i < n; ++i) {
    const int img = perm[static_cast<std::size_t>(i)];
    if (img < 0 || img >= n || (seen >> img) & 1u) throw std::invalid_argument("SignedPermutation: not a permutation");
    seen |= 1u << img;
    g.perm_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(img);
  }
  if (flips >> n) throw std::invalid_argument("SignedPermutation: flip mask wider than dimension");
  g.flips_ = flips;
  return g;
}

SignedPermutation SignedPermutation::complement(int n) {
  SignedPermutation g = identity(n);
  g.flips_ = (1u << n) - 1;
  return g;
}

SignedPermutation SignedPermutation::transposition(int n, Direction a, Direction b) {
  SignedPermutation g = identity(n);
  if (a < 1 || b < 1 || a > n || b > n) throw std::out_of_range("transposition: coordinate out of range");
  std::swap(g.perm_[a - 1u], g.perm_[b - 1u]);
  return g;
}

Vertex SignedPermutation::permute_bits(Vertex v) const {
  Vertex out = 0;
  while (v != 0) {
    const int i = std::countr_zero(v);
    out |= 1u << perm_[static_cast<std::size_t>(i)];
    v &= v - 1;
  }
  return out;
}

Vertex SignedPermutation::apply(Vertex v) const {
  if (v >> n_) throw std::out_of_range("SignedPermutation::apply: vertex outside the cube");
  return permute_bits(v) ^ flips_;
}

SignedPermutation SignedPermutation::compose(const SignedPermutation& rhs) const {
  if (rhs.n_ != n_) throw std::invalid_argument("compose: dimension mismatch");
  // g(h(v)) = Pg(Ph v ^ fh) ^ fg = (Pg Ph) v ^ (Pg fh ^ fg)
  SignedPermutation out;
  out.n_ = n_;
  for (int i = 0; i < n_; ++i) out.perm_[static_cast<std::size_t>(i)] = perm_[rhs.perm_[static_cast<std::size_t>(i)]];
  out.flips_ = permute_bits(rhs.flips_) ^ flips_;
  return out;
}

SignedPermutation SignedPermutation::inverse() const {
  // v = P^-1 (w ^ f) = P^-1 w ^ P^-1 f
  SignedPermutation out;
  out.n_ = n_;
  for (int i = 0; i < n_; ++i) out.perm_[perm_[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
  out.flips_ = out.permute_bits(flips_);
  return out;
}

std::vector<SignedPermutation> all_automorphisms(int n) {
  require_dimension(n, 1, 8, "all_automorphisms");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<SignedPermutation> out;
  do {
    for (std::uint32_t f = 0; f < (1u << n); ++f) out.push_back(SignedPermutation::from_images(perm, f));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

BigCount automorphism_group_order(int n) {
  return BigCount::pow(2, static_cast<unsigned>(n)) * BigCount::factorial(static_cast<unsigned>(n));
}

// --- cycles ------------------------------------------------------------------

namespace {

// Vertices of the closed walk, or empty if any step is out of range.
std::vector<Vertex> walk(const DeltaSequence& d) {
  std::vector<Vertex> out;
  out.reserve(d.deltas.size() + 1);
  Vertex v = 0;
  out.push_back(v);
  for (Direction x : d.deltas) {
    if (x < 1 || x > d.n) return {};
    v ^= 1u << (x - 1);
    out.push_back(v);
  }
  return out;
}

}  // namespace

bool validate_delta(const DeltaSequence& d) {
  if (d.n < 1 || d.n > kMaxDimension) return false;
  const std::size_t vertex_count = std::size_t{1} << d.n;
  if (d.deltas.size() != vertex_count) return false;
  const auto w = walk(d);
  if (w.empty() || w.back() != 0) return false;
  std::vector<bool> seen(vertex_count, false);
  for (std::size_t i = 0; i < vertex_count; ++i) {
    if (seen[w[i]]) return false;
    seen[w[i]] = true;
  }
  // n = 1: the walk 0 -> 1 -> 0 reuses its only edge.
  return d.n >= 2;
}

CycleEdgeSet delta_to_edge_set(const DeltaSequence& d) {
  if (!validate_delta(d)) throw std::invalid_argument("delta_to_edge_set: not a Hamiltonian delta sequence");
  const auto w = walk(d);
  CycleEdgeSet out{d.n, {}};
  out.edges.reserve(d.deltas.size());
  for (std::size_t i = 0; i + 1 < w.size(); ++i) out.edges.push_back(Edge::between(w[i], w[i + 1]));
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

namespace {

// Adjacency of a degree-2 edge set: slot [2v], [2v+1]. Returns false on bad degree.
bool cycle_adjacency(const CycleEdgeSet& c, std::vector<Vertex>& adj) {
  const std::size_t vertex_count = std::size_t{1} << c.n;
  constexpr Vertex kNone = ~Vertex{0};
  adj.assign(2 * vertex_count, kNone);
  for (const Edge& e : c.edges) {
    if (e.u >= e.v || e.v >= vertex_count || !std::has_single_bit(e.u ^ e.v)) return false;
    for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      if (adj[2 * a] == kNone) adj[2 * a] = b;
      else if (adj[2 * a + 1] == kNone) adj[2 * a + 1] = b;
      else return false;
    }
  }
  return std::none_of(adj.begin(), adj.end(), [](Vertex x) { return x == kNone; });
}

DeltaSequence trace(const std::vector<Vertex>& adj, int n, Vertex first) {
  DeltaSequence d{n, {}};
  const std::size_t len = std::size_t{1} << n;
  d.deltas.reserve(len);
  Vertex prev = 0, cur = first;
  d.deltas.push_back(Edge::between(0, first).direction());
  while (cur != 0 && d.deltas.size() <= len) {
    const Vertex next = adj[2 * cur] == prev ? adj[2 * cur + 1] : adj[2 * cur];
    d.deltas.push_back(Edge::between(cur, next).direction());
    prev = cur;
    cur = next;
  }
  return d;
}

}  // namespace

bool is_hamiltonian_cycle(const CycleEdgeSet& c) {
  if (c.n < 2 || c.n > kMaxDimension) return false;
  const std::size_t vertex_count = std::size_t{1} << c.n;
  if (c.edges.size() != vertex_count) return false;
  std::vector<Vertex> adj;
  if (!cycle_adjacency(c, adj)) return false;
  return trace(adj, c.n, adj[0]).size() == vertex_count;
}

std::array<DeltaSequence, 2> edge_set_to_deltas(const CycleEdgeSet& c) {
  std::vector<Vertex> adj;
  if (c.n < 2 || c.n > kMaxDimension || !cycle_adjacency(c, adj)) {
    throw std::invalid_argument("edge_set_to_deltas: vertex 0 is not on a degree-2 cycle");
  }
  std::array<DeltaSequence, 2> out{trace(adj, c.n, adj[0]), trace(adj, c.n, adj[1])};
  for (const auto& d : out) {
    if (!validate_delta(d)) throw std::invalid_argument("edge_set_to_deltas: edge set is not a Hamiltonian cycle");
  }
  if (out[1] < out[0]) std::swap(out[0], out[1]);
  return out;
}

CycleEdgeSet apply(const SignedPermutation& g, const CycleEdgeSet& c) {
  if (g.dimension() != c.n) throw std::invalid_argument("apply: dimension mismatch");
  CycleEdgeSet out{c.n, {}};
  out.edges.reserve(c.edges.size());
  for (const Edge& e : c.edges) out.edges.push_back(g.apply(e));
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

DeltaSequence apply(const SignedPermutation& g, const DeltaSequence& d) {
  if (g.dimension() != d.n) throw std::invalid_argument("apply: dimension mismatch");
  if (!validate_delta(d)) throw std::invalid_argument("apply: invalid delta sequence");
  // The image walk passes through 0 where the original is at g^-1(0) = P^-1(flips).
  const auto w = walk(d);
  const Vertex anchor = g.inverse().apply(Vertex{0});
  const auto start = static_cast<std::size_t>(std::find(w.begin(), w.end() - 1, anchor) - w.begin());
  DeltaSequence out{d.n, {}};
  out.deltas.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out.deltas.push_back(g.apply(d.deltas[(start + i) % d.size()]));
  return out;
}

std::vector<int> direction_counts(const DeltaSequence& d) {
  std::vector<int> counts(static_cast<std::size_t>(std::max(d.n, 0)), 0);
  for (Direction x : d.deltas) {
    if (x < 1 || x > d.n) throw std::invalid_argument("direction_counts: direction out of range");
    ++counts[x - 1u];
  }
  return counts;
}

// --- decompositions ----------------------------------------------------------

std::string_view to_string(PartitionReason r) {
  switch (r) {
    case PartitionReason::ok: return "ok";
    case PartitionReason::not_a_cycle: return "not-a-cycle";
    case PartitionReason::overlap: return "overlap";
    case PartitionReason::incomplete_cover: return "incomplete-cover";
    case PartitionReason::odd_dimension: return "odd-dimension";
  }
  return "unknown";
}

PartitionCheck verify_cycle_partition(int dimension, std::span<const CycleEdgeSet> parts) {
  if (dimension < 2 || dimension > kMaxDimension || dimension % 2 != 0) {
    return {false, PartitionReason::odd_dimension, 0};
  }
  const CubeGraph cube(dimension);
  std::vector<bool> used(cube.edge_count(), false);
  std::uint64_t covered = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].n != dimension || !is_hamiltonian_cycle(parts[i])) return {false, PartitionReason::not_a_cycle, i};
    for (const Edge& e : parts[i].edges) {
      const auto idx = cube.edge_index(e);
      if (used[idx]) return {false, PartitionReason::overlap, i};
      used[idx] = true;
      ++covered;
    }
  }
  if (covered != cube.edge_count()) return {false, PartitionReason::incomplete_cover, parts.size()};
  return {true, PartitionReason::ok, 0};
}

BigCount hamilton_orientations_per_partition(int half_dim) {
  if (half_dim < 1) throw std::out_of_range("hamilton_orientations_per_partition: need at least one cycle");
  return BigCount::pow(2, static_cast<unsigned>(half_dim - 1));
}

// --- text forms --------------------------------------------------------------

std::string format_delta(const DeltaSequence& d) {
  std::string out;
  for (std::size_t i = 0; i < d.deltas.size(); ++i) {
    if (i != 0) out.push_back(',');
    out += std::to_string(d.deltas[i]);
  }
  return out;
}

namespace {

unsigned parse_uint(std::string_view tok) {
  while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
  while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
    throw std::invalid_argument("expected an unsigned integer, got '" + std::string(tok) + "'");
  }
  return value;
}

template <class F>
void for_each_token(std::string_view text, char sep, F&& f) {
  while (!text.empty()) {
    const auto pos = text.find(sep);
    f(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
}

}  // namespace

DeltaSequence parse_delta(std::string_view text, int n) {
  DeltaSequence d{n, {}};
  unsigned max_dir = 0;
  for_each_token(text, ',', [&](std::string_view tok) {
    const unsigned x = parse_uint(tok);
    if (x < 1 || x > kMaxDimension) throw std::invalid_argument("parse_delta: direction out of range");
    max_dir = std::max(max_dir, x);
    d.deltas.push_back(static_cast<Direction>(x));
  });
  if (d.n == 0) d.n = static_cast<int>(max_dir);
  return d;
}

std::string format_edge_set(const CycleEdgeSet& c) {
  std::vector<Edge> sorted = c.edges;
  std::sort(sorted.begin(), sorted.end());
  std::string out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i != 0) out.push_back(',');
    out += std::to_string(sorted[i].u) + "-" + std::to_string(sorted[i].v);
  }
  return out;
}

CycleEdgeSet parse_edge_set(std::string_view text, int n) {
  const CubeGraph cube(n);
  CycleEdgeSet c{n, {}};
  for_each_token(text, ',', [&](std::string_view tok) {
    const auto dash = tok.find('-');
    if (dash == std::string_view::npos) throw std::invalid_argument("parse_edge_set: expected 'u-v'");
    const Vertex u = parse_uint(tok.substr(0, dash));
    const Vertex v = parse_uint(tok.substr(dash + 1));
    if (!cube.contains(u) || !cube.contains(v) || !cube.adjacent(u, v)) {
      throw std::invalid_argument("parse_edge_set: " + std::string(tok) + " is not an edge of Q" + std::to_string(n));
    }
    c.edges.push_back(Edge::between(u, v));
  });
  std::sort(c.edges.begin(), c.edges.end());
  return c;
}

}  // namespace graycensus
