#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "repelgm/error.hpp"
#include "repelgm/graph.hpp"
#include "repelgm/rng.hpp"

namespace repelgm {

inline Graph path_graph(std::size_t p) {
  if (p < 1) throw DomainError("path needs p >= 1");
  std::vector<Edge> e;
  for (Node i = 0; i + 1 < p; ++i) e.emplace_back(i, i + 1);
  return Graph(p, e);
}

inline Graph cycle_graph(std::size_t p) {
  if (p < 3) throw DomainError("cycle needs p >= 3");
  std::vector<Edge> e;
  for (Node i = 0; i < p; ++i) e.emplace_back(i, static_cast<Node>((i + 1) % p));
  return Graph(p, e);
}

/// r x c grid, node (i, j) at index i*c + j.
inline Graph grid_graph(std::size_t rows, std::size_t cols) {
  if (rows < 1 || cols < 1) throw DomainError("grid needs positive dimensions");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const auto v = static_cast<Node>(i * cols + j);
      if (j + 1 < cols) e.emplace_back(v, v + 1);
      if (i + 1 < rows) e.emplace_back(v, static_cast<Node>(v + cols));
    }
  return Graph(rows * cols, e);
}

inline Graph complete_graph(std::size_t p) {
  std::vector<Edge> e;
  for (Node a = 0; a < p; ++a)
    for (Node b = a + 1; b < p; ++b) e.emplace_back(a, b);
  return Graph(p, e);
}

/// Uniform d-regular graph from the pairing model: shuffle p*d half-edges,
/// pair them off, retry on any loop or repeated edge.
inline Graph random_regular(std::size_t p, std::size_t d, std::uint64_t seed, std::size_t max_attempts = 100000) {
  if ((p * d) % 2 != 0) throw DomainError("random regular graph needs p*d even");
  if (d >= p) throw DomainError("random regular graph needs d < p");
  std::vector<Node> stubs;
  for (Node v = 0; v < p; ++v)
    for (std::size_t k = 0; k < d; ++k) stubs.push_back(v);
  RngStream rng(seed, 0);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<Edge> edges;
    bool ok = true;
    for (std::size_t k = 0; k < stubs.size() && ok; k += 2) {
      if (stubs[k] == stubs[k + 1]) ok = false;
      else edges.emplace_back(stubs[k], stubs[k + 1]);
    }
    if (!ok) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    return Graph(p, edges);
  }
  throw DomainError("random regular graph: no simple pairing after " + std::to_string(max_attempts) + " attempts");
}

/// Star family for the sample-size lower bound: m stars, center c_k = k and
/// d-1 leaves each (leaves of star k at m + k(d-1) ...), optionally joined by
/// one center-center edge.
struct StarFamily {
  Graph graph;
  std::size_t stars = 0;
  std::size_t degree = 0;
  std::size_t centers = 0;
  std::size_t leaves = 0;
  std::size_t construction_nodes = 0; ///< m + m(d-1), what is built
  std::size_t stated_nodes = 0;       ///< m(d-1), the count quoted alongside the construction
  std::optional<Edge> center_edge;
};

inline StarFamily star_family(std::size_t m, std::size_t d, std::optional<Edge> center_edge = std::nullopt) {
  if (m < 1) throw DomainError("star family needs m >= 1");
  if (d < 2) throw DomainError("star family needs d >= 2");
  const std::size_t leaves = d - 1;
  const std::size_t p = m + m * leaves;
  std::vector<Edge> e;
  for (Node c = 0; c < m; ++c)
    for (std::size_t k = 0; k < leaves; ++k) e.emplace_back(c, static_cast<Node>(m + c * leaves + k));
  if (center_edge) {
    if (center_edge->v >= m) throw IndexError("center edge must join two star centers");
    if (center_edge->u == center_edge->v) throw DomainError("center edge must join distinct centers");
    e.push_back(*center_edge);
  }
  StarFamily sf;
  sf.graph = Graph(p, e);
  sf.stars = m;
  sf.degree = d;
  sf.centers = m;
  sf.leaves = m * leaves;
  sf.construction_nodes = p;
  sf.stated_nodes = m * leaves;
  sf.center_edge = center_edge;
  return sf;
}

/// Triangle {0,1,2} with a pendant node 3 attached to node 0.
inline Graph triangle_pendant() { return Graph(4, {Edge(0, 1), Edge(0, 2), Edge(1, 2), Edge(0, 3)}); }

} // namespace repelgm
