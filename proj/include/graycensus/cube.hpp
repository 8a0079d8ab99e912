#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graycensus/big_count.hpp"

namespace graycensus {

/// A vertex of Q_n; bit d-1 is coordinate d.
using Vertex = std::uint32_t;
/// Coordinate flipped along an edge, 1-indexed (1..n).
using Direction = std::uint8_t;

inline constexpr int kMaxDimension = 16;

/// Throws std::out_of_range unless lo <= n <= hi.
void require_dimension(int n, int lo, int hi, std::string_view what);

struct Edge {
  Vertex u = 0;  // u < v
  Vertex v = 0;

  static Edge between(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  Direction direction() const;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// The n-cube: vertices 0..2^n-1, u ~ v iff u XOR v is a power of two.
class CubeGraph {
 public:
  explicit CubeGraph(int n);

  int dimension() const { return n_; }
  std::uint32_t vertex_count() const { return 1u << n_; }
  std::uint64_t edge_count() const { return static_cast<std::uint64_t>(n_) << (n_ - 1); }

  bool adjacent(Vertex a, Vertex b) const;
  bool contains(Vertex v) const { return v < vertex_count(); }
  std::vector<Vertex> neighbors(Vertex v) const;
  /// All edges sorted by (u, v).
  std::vector<Edge> edges() const;

  /// Dense index of an edge in [0, edge_count()): direction-major, then the
  /// lower endpoint with the flipped bit squeezed out.
  std::uint64_t edge_index(Edge e) const;

 private:
  int n_;
};

CubeGraph build_cube(int n);

/// An automorphism of Q_n: v -> permute_bits(v) XOR flips.
///
/// `image(i)` is the 0-based coordinate that coordinate i is sent to.
class SignedPermutation {
 public:
  static SignedPermutation identity(int n);
  /// `perm` holds 0-based images of each coordinate; throws if not a permutation.
  static SignedPermutation from_images(std::span<const int> perm, std::uint32_t flips);
  static SignedPermutation complement(int n);
  /// Swap of two 1-indexed coordinates.
  static SignedPermutation transposition(int n, Direction a, Direction b);

  int dimension() const { return n_; }
  int image(int coordinate) const { return perm_[static_cast<std::size_t>(coordinate)]; }
  std::uint32_t flips() const { return flips_; }

  Vertex apply(Vertex v) const;
  Direction apply(Direction d) const { return static_cast<Direction>(perm_[d - 1u] + 1); }
  Edge apply(Edge e) const { return Edge::between(apply(e.u), apply(e.v)); }

  /// (*this ∘ rhs): apply rhs first.
  SignedPermutation compose(const SignedPermutation& rhs) const;
  SignedPermutation inverse() const;

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;

 private:
  int n_ = 0;
  std::array<std::uint8_t, kMaxDimension> perm_{};
  std::uint32_t flips_ = 0;

  Vertex permute_bits(Vertex v) const;
};

/// All 2^n * n! automorphisms of Q_n, permutations in lexicographic order,
/// flips ascending within each.
std::vector<SignedPermutation> all_automorphisms(int n);
BigCount automorphism_group_order(int n);

/// A cyclic Gray code as the flipped coordinate at each step, starting at 0.
struct DeltaSequence {
  int n = 0;
  std::vector<Direction> deltas;

  std::size_t size() const { return deltas.size(); }
  friend auto operator<=>(const DeltaSequence&, const DeltaSequence&) = default;
};

/// Undirected edge set of a Hamiltonian cycle, kept sorted.
struct CycleEdgeSet {
  int n = 0;
  std::vector<Edge> edges;

  friend bool operator==(const CycleEdgeSet&, const CycleEdgeSet&) = default;
};

bool validate_delta(const DeltaSequence& d);
/// Throws std::invalid_argument unless validate_delta(d).
CycleEdgeSet delta_to_edge_set(const DeltaSequence& d);
/// The two traversals of `c` anchored at vertex 0, lower first delta first.
std::array<DeltaSequence, 2> edge_set_to_deltas(const CycleEdgeSet& c);
/// True iff every vertex has degree 2 and the edges form one cycle through all 2^n vertices.
bool is_hamiltonian_cycle(const CycleEdgeSet& c);

CycleEdgeSet apply(const SignedPermutation& g, const CycleEdgeSet& c);
/// Delta sequence from vertex 0 of the image cycle, in the direction that
/// follows g applied to d's traversal.
DeltaSequence apply(const SignedPermutation& g, const DeltaSequence& d);

/// Per-direction edge counts; entry d-1 is the count for direction d.
std::vector<int> direction_counts(const DeltaSequence& d);

enum class PartitionReason { ok, not_a_cycle, overlap, incomplete_cover, odd_dimension };

struct PartitionCheck {
  bool ok = false;
  PartitionReason reason = PartitionReason::ok;
  std::size_t part = 0;  // offending part for not_a_cycle / overlap

  explicit operator bool() const { return ok; }
};

std::string_view to_string(PartitionReason r);

/// Checks that `parts` are edge-disjoint Hamiltonian cycles of Q_dimension
/// covering every edge. `dimension` must be even.
PartitionCheck verify_cycle_partition(int dimension, std::span<const CycleEdgeSet> parts);

/// Hamilton orientations of the (2m)-cube induced by one decomposition into
/// m Hamiltonian cycles: 2^(m-1).
BigCount hamilton_orientations_per_partition(int half_dim);

// Text forms: "1,2,1,2" and "0-1,0-2,1-3,2-3".
std::string format_delta(const DeltaSequence& d);
DeltaSequence parse_delta(std::string_view text, int n = 0);
std::string format_edge_set(const CycleEdgeSet& c);
CycleEdgeSet parse_edge_set(std::string_view text, int n);

}  // namespace graycensus
