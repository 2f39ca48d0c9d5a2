#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "repelgm/error.hpp"
#include "repelgm/graph.hpp"
#include "repelgm/logspace.hpp"
#include "repelgm/model.hpp"
#include "repelgm/samples.hpp"

namespace repelgm {

inline constexpr std::size_t kDefaultEnumerationCap = 25;

/// All 2^p log-unnormalized weights of a model, indexed by configuration
/// (bit i of the index is σ_i), with the log partition function.
class ExactDistribution {
public:
  ExactDistribution(std::size_t p, std::vector<double> log_weights)
      : p_(p), log_weights_(std::move(log_weights)), log_z_(logsumexp(log_weights_)) {
    if (log_weights_.size() != (std::size_t{1} << p)) throw DimensionError("log-weight table must have 2^p entries");
    if (is_forbidden(log_z_)) throw DomainError("model assigns zero weight to every configuration");
  }

  std::size_t num_nodes() const noexcept { return p_; }
  std::span<const double> log_weights() const noexcept { return log_weights_; }
  double log_z() const noexcept { return log_z_; }

  double log_prob(std::uint64_t x) const { return log_weights_.at(x) - log_z_; }
  double prob(std::uint64_t x) const { return std::exp(log_prob(x)); }

  /// Normalized probabilities in linear space.
  std::vector<double> probabilities() const {
    std::vector<double> out(log_weights_.size());
    for (std::size_t x = 0; x < out.size(); ++x) out[x] = std::exp(log_weights_[x] - log_z_);
    return out;
  }

  /// log Σ_{x : x & mask == value} w(x).
  double log_mass(std::uint64_t mask, std::uint64_t value) const {
    LogSumExp acc;
    for (std::uint64_t x = 0; x < log_weights_.size(); ++x)
      if ((x & mask) == value) acc.add(log_weights_[x]);
    return acc.value();
  }

  double marginal(Node i) const { return std::exp(log_mass(bit(i), bit(i)) - log_z_); }

private:
  static std::uint64_t bit(Node i) { return std::uint64_t{1} << i; }

  std::size_t p_;
  std::vector<double> log_weights_;
  double log_z_;
};

/// Enumerates every configuration. Weights are built incrementally from the
/// highest occupied node, so the cost is O(2^p) regardless of edge count.
inline ExactDistribution enumerate(const Graph& g, const ModelSpec& model, std::size_t cap = kDefaultEnumerationCap) {
  const std::size_t p = g.num_nodes();
  if (p > cap || p > 62) throw CapacityError("exact enumeration limited to p <= " + std::to_string(std::min<std::size_t>(cap, 62)) + ", got p=" + std::to_string(p));
  model.check_nodes(p);

  std::vector<std::uint64_t> lower_nbrs(p, 0);
  for (const Edge& e : g.edges()) lower_nbrs[e.v] |= std::uint64_t{1} << e.u;

  const std::size_t size = std::size_t{1} << p;
  std::vector<double> logw(size);
  logw[0] = 0.0;
  if (model.is_hard_core()) {
    const double ll = std::log(model.hard_core_params().lambda);
    for (std::uint64_t x = 1; x < size; ++x) {
      const int top = 63 - std::countl_zero(x);
      const std::uint64_t rest = x & ~(std::uint64_t{1} << top);
      logw[x] = (rest & lower_nbrs[top]) ? kForbidden : logw[rest] + ll;
    }
  } else {
    const auto& m = model.ising_params();
    for (std::uint64_t x = 1; x < size; ++x) {
      const int top = 63 - std::countl_zero(x);
      const std::uint64_t rest = x & ~(std::uint64_t{1} << top);
      logw[x] = logw[rest] + m.fields[top] - m.beta * std::popcount(rest & lower_nbrs[top]);
    }
  }
  return ExactDistribution(p, std::move(logw));
}

inline std::uint64_t node_mask(std::span<const Node> nodes, std::size_t p) {
  std::uint64_t m = 0;
  for (Node u : nodes) {
    if (u >= p) throw IndexError("node " + std::to_string(u) + " out of range");
    m |= std::uint64_t{1} << u;
  }
  return m;
}

/// Exact P(σ_a = 1 | σ_b = 1, σ_U = 0).
inline double cond_prob_exact(const ExactDistribution& dist, Node a, Node b, std::span<const Node> zeroed = {}) {
  const std::size_t p = dist.num_nodes();
  if (a >= p || b >= p) throw IndexError("node out of range");
  if (a == b) throw DomainError("conditional needs a != b");
  const std::uint64_t u = node_mask(zeroed, p);
  const std::uint64_t ba = std::uint64_t{1} << a;
  const std::uint64_t bb = std::uint64_t{1} << b;
  if (u & (ba | bb)) throw DomainError("a and b must not be in the conditioning set");
  const double den = dist.log_mass(u | bb, bb);
  if (is_forbidden(den)) throw UndefinedConditionalError("conditioning event has probability zero");
  const double num = dist.log_mass(u | bb | ba, bb | ba);
  return std::exp(num - den);
}

/// Log partition function split by the states of nodes i and j:
/// Z = Z_∅∅ + Z_∅j + Z_i∅ + Z_ij (each a log-sum; kForbidden when empty).
struct PartitionParts {
  double neither = kForbidden; ///< σ_i = 0, σ_j = 0
  double only_j = kForbidden;  ///< σ_i = 0, σ_j = 1
  double only_i = kForbidden;  ///< σ_i = 1, σ_j = 0
  double both = kForbidden;    ///< σ_i = 1, σ_j = 1

  double log_total() const { return log_add(log_add(neither, only_j), log_add(only_i, both)); }
};

inline PartitionParts partition_decomposition(const ExactDistribution& dist, Node i, Node j) {
  const std::size_t p = dist.num_nodes();
  if (i >= p || j >= p) throw IndexError("node out of range");
  if (i == j) throw DomainError("decomposition needs i != j");
  LogSumExp parts[4];
  auto lw = dist.log_weights();
  for (std::uint64_t x = 0; x < lw.size(); ++x) parts[((x >> i) & 1u) * 2 + ((x >> j) & 1u)].add(lw[x]);
  return PartitionParts{parts[0].value(), parts[1].value(), parts[2].value(), parts[3].value()};
}

/// Probabilities of every cylinder event {σ_W = x_W}, W ⊆ V, stored in a
/// 3^p table (digit 0/1 fixes σ_i, digit 2 leaves it free). Lets the lemma
/// checks query arbitrary conditionals in O(1).
class CylinderTable {
public:
  static constexpr std::size_t kMaxNodes = 14;

  explicit CylinderTable(const ExactDistribution& dist) : p_(dist.num_nodes()) {
    if (p_ > kMaxNodes) throw CapacityError("cylinder table limited to p <= 14");
    pow3_.resize(p_ + 1);
    pow3_[0] = 1;
    for (std::size_t i = 1; i <= p_; ++i) pow3_[i] = pow3_[i - 1] * 3;
    table_.assign(pow3_[p_], 0.0);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << p_); ++x) {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < p_; ++i)
        if ((x >> i) & 1u) idx += pow3_[i];
      table_[idx] = dist.prob(x);
    }
    for (std::size_t i = 0; i < p_; ++i) {
      const std::size_t step = pow3_[i];
      for (std::size_t idx = 0; idx < table_.size(); ++idx)
        if ((idx / step) % 3 == 2) table_[idx] = table_[idx - 2 * step] + table_[idx - step];
    }
  }

  std::size_t num_nodes() const noexcept { return p_; }
  std::size_t size() const noexcept { return table_.size(); }

  /// Raw access by base-3 index; digit i sits at stride(i) = 3^i.
  double at(std::size_t idx) const { return table_.at(idx); }
  std::size_t stride(Node i) const { return pow3_.at(i); }

  /// P(σ_i = value_i for every i in mask).
  double prob(std::uint64_t mask, std::uint64_t value) const { return table_[index(mask, value)]; }

  /// P(σ_a = 1 | σ_mask = value); nullopt when the event has zero probability.
  std::optional<double> cond(Node a, std::uint64_t mask, std::uint64_t value) const {
    const double den = prob(mask, value);
    if (den <= 0.0) return std::nullopt;
    const std::uint64_t ba = std::uint64_t{1} << a;
    return prob(mask | ba, value | ba) / den;
  }

private:
  std::size_t index(std::uint64_t mask, std::uint64_t value) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < p_; ++i) {
      if ((mask >> i) & 1u) {
        if ((value >> i) & 1u) idx += pow3_[i];
      } else {
        idx += 2 * pow3_[i];
      }
    }
    return idx;
  }

  std::size_t p_;
  std::vector<std::size_t> pow3_;
  std::vector<double> table_;
};

/// Exhaustive maximum-likelihood graph under the hard-core model with known
/// fugacity, over all graphs on p <= 6 nodes with max degree <= degree_cap.
/// Ties (up to round-off) go to more edges, then to the lexicographically
/// smallest sorted edge list.
inline Graph ml_graph_search(const SampleSet& samples, double lambda, std::optional<std::size_t> degree_cap = std::nullopt) {
  const std::size_t p = samples.num_nodes();
  if (p > 6) throw CapacityError("ML graph search limited to p <= 6");
  if (p == 0) return Graph(0);
  const auto model = ModelSpec::hard_core(lambda);

  std::vector<Edge> pairs;
  for (Node a = 0; a < p; ++a)
    for (Node b = a + 1; b < p; ++b) pairs.emplace_back(a, b);

  std::vector<double> counts(std::size_t{1} << p, 0.0);
  for (std::size_t k = 0; k < samples.size(); ++k) counts[samples.row(k)[0]] += 1.0;
  const double n = static_cast<double>(samples.size());

  std::optional<double> best_ll;
  std::vector<Edge> best_edges;
  const std::uint64_t graphs = std::uint64_t{1} << pairs.size();
  for (std::uint64_t code = 0; code < graphs; ++code) {
    std::vector<Edge> edges;
    for (std::size_t e = 0; e < pairs.size(); ++e)
      if ((code >> e) & 1u) edges.push_back(pairs[e]);
    Graph g(p, edges);
    if (degree_cap && g.max_degree() > *degree_cap) continue;
    auto dist = enumerate(g, model);
    double ll = -n * dist.log_z();
    auto lw = dist.log_weights();
    for (std::size_t x = 0; x < counts.size() && std::isfinite(ll); ++x)
      if (counts[x] > 0.0) ll += is_forbidden(lw[x]) ? kForbidden : counts[x] * lw[x];
    if (!std::isfinite(ll)) continue;

    bool better = false;
    if (!best_ll) {
      better = true;
    } else {
      const double tol = 1e-9 * std::max(1.0, std::abs(*best_ll));
      if (ll > *best_ll + tol) better = true;
      else if (ll >= *best_ll - tol) {
        if (edges.size() != best_edges.size()) better = edges.size() > best_edges.size();
        else better = edges < best_edges;
      }
    }
    if (better) {
      best_ll = ll;
      best_edges = std::move(edges);
    }
  }
  if (!best_ll) throw DomainError("no graph within the degree cap explains the samples");
  return Graph(p, best_edges);
}

} // namespace repelgm
