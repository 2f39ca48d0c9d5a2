#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "repelgm/error.hpp"
#include "repelgm/graph.hpp"
#include "repelgm/logspace.hpp"

namespace repelgm {

/// Hard-core (independent set) model with fugacity λ.
struct HardCore {
  double lambda = 1.0;
  bool operator==(const HardCore&) const = default;
};

/// Antiferromagnetic Ising model in {0,1} variables:
/// H(σ) = -β Σ_{ij∈E} σ_i σ_j + Σ_i h_i σ_i, with |h_i| <= field_bound.
struct AntiferroIsing {
  double beta = 1.0;
  std::vector<double> fields;
  double field_bound = 0.0;
  bool operator==(const AntiferroIsing&) const = default;
};

class ModelSpec {
public:
  using Variant = std::variant<HardCore, AntiferroIsing>;

  static ModelSpec hard_core(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("hard-core fugacity must be positive and finite");
    return ModelSpec(HardCore{lambda});
  }

  static ModelSpec ising(double beta, std::vector<double> fields, double field_bound) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("repulsion strength beta must be positive and finite");
    if (!(field_bound >= 0.0)) throw DomainError("field bound must be nonnegative");
    for (double hi : fields)
      if (!(std::abs(hi) <= field_bound)) throw DomainError("field " + std::to_string(hi) + " exceeds bound " + std::to_string(field_bound));
    return ModelSpec(AntiferroIsing{beta, std::move(fields), field_bound});
  }

  /// Homogeneous fields h_i = h for all p nodes.
  static ModelSpec ising_uniform(double beta, double h, std::size_t p) {
    return ising(beta, std::vector<double>(p, h), std::abs(h));
  }

  bool is_hard_core() const noexcept { return std::holds_alternative<HardCore>(v_); }
  bool is_ising() const noexcept { return std::holds_alternative<AntiferroIsing>(v_); }
  const HardCore& hard_core_params() const { return std::get<HardCore>(v_); }
  const AntiferroIsing& ising_params() const { return std::get<AntiferroIsing>(v_); }
  const Variant& variant() const noexcept { return v_; }

  /// Throws DimensionError when the model does not fit a p-node graph.
  void check_nodes(std::size_t p) const {
    if (is_ising() && ising_params().fields.size() != p)
      throw DimensionError("model has " + std::to_string(ising_params().fields.size()) + " fields but graph has " + std::to_string(p) + " nodes");
  }

  /// Log-weight contribution of occupying node i alone (ln λ or h_i).
  double node_log_weight(Node i) const {
    if (is_hard_core()) return std::log(hard_core_params().lambda);
    return ising_params().fields.at(i);
  }

  bool operator==(const ModelSpec&) const = default;

private:
  explicit ModelSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

inline void check_config(const Graph& g, const BinaryConfig& sigma) {
  if (sigma.size() != g.num_nodes())
    throw DimensionError("configuration length " + std::to_string(sigma.size()) + " != p=" + std::to_string(g.num_nodes()));
}

inline bool is_independent_set(const Graph& g, const BinaryConfig& sigma) {
  check_config(g, sigma);
  for (const Edge& e : g.edges())
    if (sigma[e.u] && sigma[e.v]) return false;
  return true;
}

/// Log-unnormalized weight of σ. For the Ising variant this is H(σ); for
/// hard-core it is |σ| ln λ on independent sets and kForbidden otherwise.
inline double hamiltonian(const Graph& g, const ModelSpec& model, const BinaryConfig& sigma) {
  check_config(g, sigma);
  model.check_nodes(g.num_nodes());
  if (model.is_hard_core()) {
    if (!is_independent_set(g, sigma)) return kForbidden;
    return static_cast<double>(sigma.ones()) * std::log(model.hard_core_params().lambda);
  }
  const auto& m = model.ising_params();
  double energy = 0.0;
  for (const Edge& e : g.edges())
    if (sigma[e.u] && sigma[e.v]) energy -= m.beta;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    if (sigma[i]) energy += m.fields[i];
  return energy;
}

/// G \ U together with the node relabeling.
struct Restriction {
  static constexpr Node kRemoved = std::numeric_limits<Node>::max();

  Graph graph;
  ModelSpec model;
  std::vector<Node> old_to_new; ///< kRemoved for nodes in U
  std::vector<Node> new_to_old;
};

/// Deletes the nodes in U and their incident edges; survivors are relabeled
/// compactly in increasing order and Ising fields are restricted alongside.
inline Restriction restrict(const Graph& g, const ModelSpec& model, std::span<const Node> removed) {
  model.check_nodes(g.num_nodes());
  const std::size_t p = g.num_nodes();
  std::vector<bool> drop(p, false);
  for (Node u : removed) {
    if (u >= p) throw IndexError("node " + std::to_string(u) + " out of range for p=" + std::to_string(p));
    drop[u] = true;
  }
  std::vector<Node> old_to_new(p, Restriction::kRemoved);
  std::vector<Node> new_to_old;
  for (Node i = 0; i < p; ++i) {
    if (drop[i]) continue;
    old_to_new[i] = static_cast<Node>(new_to_old.size());
    new_to_old.push_back(i);
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (!drop[e.u] && !drop[e.v]) edges.emplace_back(old_to_new[e.u], old_to_new[e.v]);

  ModelSpec sub = model;
  if (model.is_ising()) {
    const auto& m = model.ising_params();
    std::vector<double> fields;
    fields.reserve(new_to_old.size());
    for (Node i : new_to_old) fields.push_back(m.fields[i]);
    sub = ModelSpec::ising(m.beta, std::move(fields), m.field_bound);
  }
  return Restriction{Graph(new_to_old.size(), edges), std::move(sub), std::move(old_to_new), std::move(new_to_old)};
}

inline Restriction restrict(const Graph& g, const ModelSpec& model, std::initializer_list<Node> removed) {
  return restrict(g, model, std::span<const Node>(removed.begin(), removed.size()));
}

} // namespace repelgm
