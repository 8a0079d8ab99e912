#include "graycensus/edge_order.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace graycensus {

std::string_view to_string(EdgeOrderKind k) {
  switch (k) {
    case EdgeOrderKind::layered: return "layered";
    case EdgeOrderKind::binary: return "binary";
    case EdgeOrderKind::custom: return "custom";
  }
  return "unknown";
}

EdgeOrder::EdgeOrder(int n, EdgeOrderKind kind, std::vector<Edge> edges)
    : n_(n), kind_(kind), edges_(std::move(edges)) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(4 + 8 * edges_.size());
  auto put = [&](std::uint32_t x) {
    for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<std::uint8_t>(x >> (8 * i)));
  };
  put(static_cast<std::uint32_t>(n_));
  for (const Edge& e : edges_) {
    put(e.u);
    put(e.v);
  }
  hash_ = sha256(bytes);
}

EdgeOrder EdgeOrder::make(int n, EdgeOrderKind kind) {
  require_dimension(n, 1, kMaxDimension, "EdgeOrder");
  if (kind == EdgeOrderKind::custom) throw std::invalid_argument("EdgeOrder::make: custom orders use from_edges");
  const Vertex count = 1u << n;
  std::vector<Vertex> vertices(count);
  std::iota(vertices.begin(), vertices.end(), Vertex{0});
  if (kind == EdgeOrderKind::layered) {
    std::stable_sort(vertices.begin(), vertices.end(), [](Vertex x, Vertex y) {
      const int px = std::popcount(x), py = std::popcount(y);
      if (px != py) return px < py;
      // Within a layer, a vertex owning the lowest differing bit comes first.
      const Vertex diff = x ^ y;
      return diff != 0 && ((x >> std::countr_zero(diff)) & 1u) != 0;
    });
  }
  std::vector<std::uint32_t> rank(count);
  for (Vertex i = 0; i < count; ++i) rank[vertices[i]] = i;

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) << (n - 1));
  for (Vertex v : vertices) {
    for (int d = 0; d < n; ++d) {
      const Vertex u = v ^ (1u << d);
      if (rank[u] < rank[v]) edges.push_back(Edge::between(u, v));
    }
  }
  return EdgeOrder(n, kind, std::move(edges));
}

EdgeOrder EdgeOrder::from_edges(int n, std::vector<Edge> edges) {
  const CubeGraph cube(n);
  if (edges.size() != cube.edge_count()) throw std::invalid_argument("EdgeOrder: wrong number of edges");
  std::vector<bool> seen(cube.edge_count(), false);
  for (Edge& e : edges) {
    e = Edge::between(e.u, e.v);
    if (!cube.adjacent(e.u, e.v)) throw std::invalid_argument("EdgeOrder: not a cube edge");
    const auto idx = cube.edge_index(e);
    if (seen[idx]) throw std::invalid_argument("EdgeOrder: repeated edge");
    seen[idx] = true;
  }
  return EdgeOrder(n, EdgeOrderKind::custom, std::move(edges));
}

std::vector<std::size_t> EdgeOrder::frontier_sizes() const {
  const std::size_t count = std::size_t{1} << n_;
  std::vector<std::size_t> first(count, edges_.size()), last(count, 0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    for (Vertex x : {edges_[i].u, edges_[i].v}) {
      first[x] = std::min(first[x], i);
      last[x] = i;
    }
  }
  // Difference array over levels: a vertex is on the frontier after levels first..last-1.
  std::vector<long long> delta(edges_.size() + 1, 0);
  for (std::size_t x = 0; x < count; ++x) {
    ++delta[first[x]];
    --delta[last[x]];
  }
  std::vector<std::size_t> out(edges_.size());
  long long running = 0;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    running += delta[i];
    out[i] = static_cast<std::size_t>(running);
  }
  return out;
}

std::size_t EdgeOrder::max_frontier() const {
  const auto sizes = frontier_sizes();
  return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

}  // namespace graycensus
