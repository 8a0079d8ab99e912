#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "graycensus/cube.hpp"
#include "graycensus/digest.hpp"

namespace graycensus {

enum class EdgeOrderKind {
  /// Vertices by Hamming weight, ties broken by lowest set bits first. Keeps
  /// the frontier close to the vertex-isoperimetric minimum (width 14 for Q5).
  layered,
  /// Vertices 0, 1, 2, ... in binary order. Frontier width 2^(n-1) + 1.
  binary,
  /// Caller-supplied permutation of the edges.
  custom,
};

std::string_view to_string(EdgeOrderKind k);

/// A total order on the edges of Q_n driving the frontier sweep.
///
/// Built-in orders walk the vertices in a vertex order and emit, for each
/// vertex, its edges to earlier vertices in increasing direction.
class EdgeOrder {
 public:
  static EdgeOrder make(int n, EdgeOrderKind kind = EdgeOrderKind::layered);
  /// Throws std::invalid_argument unless `edges` is a permutation of E(Q_n).
  static EdgeOrder from_edges(int n, std::vector<Edge> edges);

  int dimension() const { return n_; }
  EdgeOrderKind kind() const { return kind_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  const Edge& operator[](std::size_t i) const { return edges_[i]; }

  /// SHA-256 of n and the edge list; identifies the order in checkpoints.
  const Sha256& hash() const { return hash_; }

  /// Frontier size after each level: vertices touched by a processed edge
  /// that still have an unprocessed edge.
  std::vector<std::size_t> frontier_sizes() const;
  std::size_t max_frontier() const;

 private:
  EdgeOrder(int n, EdgeOrderKind kind, std::vector<Edge> edges);

  int n_;
  EdgeOrderKind kind_;
  std::vector<Edge> edges_;
  Sha256 hash_;
};

}  // namespace graycensus
