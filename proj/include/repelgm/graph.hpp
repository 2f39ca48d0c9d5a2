#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "repelgm/error.hpp"

namespace repelgm {

using Node = std::uint32_t;

/// Unordered node pair stored with u < v.
struct Edge {
  Node u = 0;
  Node v = 0;

  Edge() = default;
  Edge(Node a, Node b) : u(std::min(a, b)), v(std::max(a, b)) {}

  auto operator<=>(const Edge&) const = default;
};

/// Undirected simple graph on nodes 0..p-1. Immutable after construction.
class Graph {
public:
  Graph() = default;

  /// Builds the graph, normalizing each pair to (min, max) and dropping
  /// duplicates. Self-loops and out-of-range labels are rejected.
  explicit Graph(std::size_t p, std::span<const Edge> edges = {}) : p_(p), adj_(p) {
    edges_.reserve(edges.size());
    for (const Edge& e : edges) {
      if (e.v >= p) throw IndexError("edge endpoint " + std::to_string(e.v) + " out of range for p=" + std::to_string(p));
      if (e.u == e.v) throw DomainError("self-loop at node " + std::to_string(e.u));
      edges_.push_back(e);
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (const Edge& e : edges_) {
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
  }

  Graph(std::size_t p, std::initializer_list<Edge> edges)
      : Graph(p, std::span<const Edge>(edges.begin(), edges.size())) {}

  std::size_t num_nodes() const noexcept { return p_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const Node> neighbors(Node i) const { return adj_.at(i); }
  std::size_t degree(Node i) const { return adj_.at(i).size(); }

  std::size_t max_degree() const noexcept {
    std::size_t d = 0;
    for (const auto& nbrs : adj_) d = std::max(d, nbrs.size());
    return d;
  }

  bool has_edge(Node a, Node b) const {
    if (a >= p_ || b >= p_) throw IndexError("node out of range");
    const auto& nbrs = adj_[a];
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
  }

  /// Bitmask of neighbors; only meaningful when p <= 64.
  std::uint64_t neighbor_mask(Node i) const {
    std::uint64_t m = 0;
    for (Node j : adj_.at(i)) m |= std::uint64_t{1} << j;
    return m;
  }

  /// Component label per node (labels are 0.. in order of smallest member).
  std::vector<std::size_t> component_labels() const {
    constexpr auto kUnset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> label(p_, kUnset);
    std::size_t next = 0;
    std::vector<Node> stack;
    for (Node s = 0; s < p_; ++s) {
      if (label[s] != kUnset) continue;
      label[s] = next;
      stack.push_back(s);
      while (!stack.empty()) {
        Node x = stack.back();
        stack.pop_back();
        for (Node y : adj_[x]) {
          if (label[y] == kUnset) {
            label[y] = next;
            stack.push_back(y);
          }
        }
      }
      ++next;
    }
    return label;
  }

  /// Node sets of the connected components, each sorted ascending.
  std::vector<std::vector<Node>> components() const {
    auto label = component_labels();
    std::size_t count = 0;
    for (auto l : label) count = std::max(count, l + 1);
    std::vector<std::vector<Node>> out(count);
    for (Node i = 0; i < p_; ++i) out[label[i]].push_back(i);
    return out;
  }

  bool operator==(const Graph& o) const { return p_ == o.p_ && edges_ == o.edges_; }

private:
  std::size_t p_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Node>> adj_;
};

/// G1 ⊔ G2 with the nodes of g2 shifted by g1.num_nodes().
inline Graph disjoint_union(const Graph& g1, const Graph& g2) {
  std::vector<Edge> edges(g1.edges().begin(), g1.edges().end());
  const auto off = static_cast<Node>(g1.num_nodes());
  for (const Edge& e : g2.edges()) edges.emplace_back(e.u + off, e.v + off);
  return Graph(g1.num_nodes() + g2.num_nodes(), edges);
}

/// Sorted list of all C(p,2) pairs not in g.
inline std::vector<Edge> non_edges(const Graph& g) {
  std::vector<Edge> out;
  const auto p = static_cast<Node>(g.num_nodes());
  for (Node a = 0; a < p; ++a)
    for (Node b = a + 1; b < p; ++b)
      if (!g.has_edge(a, b)) out.emplace_back(a, b);
  return out;
}

/// Configuration σ ∈ {0,1}^p.
class BinaryConfig {
public:
  BinaryConfig() = default;
  explicit BinaryConfig(std::size_t p) : bits_(p, 0) {}
  BinaryConfig(std::initializer_list<int> bits) {
    bits_.reserve(bits.size());
    for (int b : bits) bits_.push_back(b ? 1 : 0);
  }
  explicit BinaryConfig(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto& b : bits_) b = b ? 1 : 0;
  }

  /// Decodes configuration index x: bit i of x is σ_i.
  static BinaryConfig from_index(std::uint64_t x, std::size_t p) {
    BinaryConfig c(p);
    for (std::size_t i = 0; i < p; ++i) c.bits_[i] = (x >> i) & 1u;
    return c;
  }

  std::uint64_t to_index() const {
    if (bits_.size() > 64) throw CapacityError("configuration index needs p <= 64");
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i) x |= std::uint64_t{bits_[i]} << i;
    return x;
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool v) { bits_.at(i) = v ? 1 : 0; }

  std::size_t ones() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
  }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  bool operator==(const BinaryConfig&) const = default;

private:
  std::vector<std::uint8_t> bits_;
};

/// Concatenation σ1 ⊕ σ2 (matches disjoint_union node numbering).
inline BinaryConfig concat(const BinaryConfig& a, const BinaryConfig& b) {
  std::vector<std::uint8_t> bits(a.bits().begin(), a.bits().end());
  bits.insert(bits.end(), b.bits().begin(), b.bits().end());
  return BinaryConfig(std::move(bits));
}

} // namespace repelgm
