#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "repelgm/exact.hpp"
#include "repelgm/graph.hpp"
#include "repelgm/model.hpp"
#include "repelgm/rng.hpp"
#include "repelgm/samples.hpp"

namespace repelgm {

/// Stable 64-bit FNV-1a fingerprint of (graph, model), printed as hex.
inline std::string model_fingerprint(const Graph& g, const ModelSpec& model) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  auto feed = [&](const std::string& s) {
    for (unsigned char ch : s) {
      hash ^= ch;
      hash *= 0x100000001b3ull;
    }
  };
  char buf[64];
  feed("p=" + std::to_string(g.num_nodes()) + ";");
  for (const Edge& e : g.edges()) feed(std::to_string(e.u) + "-" + std::to_string(e.v) + ",");
  if (model.is_hard_core()) {
    std::snprintf(buf, sizeof buf, "hardcore:%.17g", model.hard_core_params().lambda);
    feed(buf);
  } else {
    const auto& m = model.ising_params();
    std::snprintf(buf, sizeof buf, "ising:%.17g:%.17g", m.beta, m.field_bound);
    feed(buf);
    for (double h : m.fields) {
      std::snprintf(buf, sizeof buf, ",%.17g", h);
      feed(buf);
    }
  }
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

/// Throws std::logic_error if a hard-core sample set contains an occupied edge.
inline void check_hard_core_samples(const Graph& g, const ModelSpec& model, const SampleSet& samples) {
  if (!model.is_hard_core()) return;
  for (const Edge& e : g.edges())
    if (and_count(samples.column(e.u), samples.column(e.v)) != 0)
      throw std::logic_error("hard-core sampler emitted a non-independent set on edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
}

namespace detail {

inline constexpr std::size_t kExactBlock = 1 << 16;

/// Inverse-CDF sampler over an enumerated table with a guide table, so a
/// draw costs O(1) expected time while returning exactly the index the
/// plain inverse CDF would.
class TableSampler {
public:
  explicit TableSampler(const ExactDistribution& dist) : cdf_(dist.probabilities()) {
    double acc = 0.0;
    for (auto& c : cdf_) {
      acc += c;
      c = acc;
    }
    total_ = acc;
    guide_.resize(std::min<std::size_t>(cdf_.size(), std::size_t{1} << 20));
    std::size_t x = 0;
    for (std::size_t j = 0; j < guide_.size(); ++j) {
      const double level = total_ * static_cast<double>(j) / static_cast<double>(guide_.size());
      while (x + 1 < cdf_.size() && cdf_[x] <= level) ++x;
      guide_[j] = x;
    }
  }

  std::uint64_t draw(RngStream& rng) const {
    const double u = rng.uniform();
    const double target = u * total_;
    auto slot = static_cast<std::size_t>(u * static_cast<double>(guide_.size()));
    if (slot >= guide_.size()) slot = guide_.size() - 1;
    std::size_t x = guide_[slot];
    while (x + 1 < cdf_.size() && cdf_[x] <= target) ++x;
    while (x > 0 && cdf_[x - 1] > target) --x;
    return x;
  }

private:
  std::vector<double> cdf_;
  std::vector<std::size_t> guide_;
  double total_ = 0.0;
};

/// Draws n configuration indices in blocks, block b using rng.child(b).
inline std::vector<std::uint64_t> draw_indices(const ExactDistribution& dist, std::size_t n, const RngStream& rng) {
  TableSampler sampler(dist);
  std::vector<std::uint64_t> out(n);
  for (std::size_t start = 0, block = 0; start < n; start += kExactBlock, ++block) {
    RngStream stream = rng.child(block);
    const std::size_t end = std::min(n, start + kExactBlock);
    for (std::size_t k = start; k < end; ++k) out[k] = sampler.draw(stream);
  }
  return out;
}

} // namespace detail

/// n i.i.d. draws from an enumerated distribution. Deterministic in (seed, index).
inline SampleSet sample_exact(const ExactDistribution& dist, std::size_t n, const RngStream& rng, std::string fingerprint = {}) {
  const std::size_t p = dist.num_nodes();
  auto idx = detail::draw_indices(dist, n, rng);
  SampleMeta meta;
  meta.sampler = "exact";
  meta.seed = rng.seed();
  meta.stream = rng.index();
  meta.model_fingerprint = std::move(fingerprint);
  if (p == 0) return SampleSet(0, n, {}, meta);
  return SampleSet(p, n, std::move(idx), std::move(meta));
}

/// Exact i.i.d. sampling that enumerates each connected component
/// separately; the components of a graphical model are independent, so this
/// is exact for any graph whose largest component fits under the cap.
inline SampleSet sample_exact(const Graph& g, const ModelSpec& model, std::size_t n, const RngStream& rng,
                              std::size_t cap = kDefaultEnumerationCap) {
  model.check_nodes(g.num_nodes());
  const std::size_t p = g.num_nodes();
  auto comps = g.components();
  if (comps.size() <= 1) {
    auto s = sample_exact(enumerate(g, model, cap), n, rng, model_fingerprint(g, model));
    check_hard_core_samples(g, model, s);
    return s;
  }
  for (const auto& c : comps)
    if (c.size() > cap) throw CapacityError("component of size " + std::to_string(c.size()) + " exceeds enumeration cap");

  const std::size_t rw = words_for(p);
  std::vector<std::uint64_t> rows(n * rw, 0);
  std::vector<bool> in_comp(p);
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    std::fill(in_comp.begin(), in_comp.end(), false);
    for (Node v : comps[ci]) in_comp[v] = true;
    std::vector<Node> others;
    for (Node v = 0; v < p; ++v)
      if (!in_comp[v]) others.push_back(v);
    auto sub = restrict(g, model, others);
    auto idx = detail::draw_indices(enumerate(sub.graph, sub.model, cap), n, rng.child(ci));
    for (std::size_t k = 0; k < n; ++k) {
      std::uint64_t x = idx[k];
      while (x) {
        const auto local = static_cast<std::size_t>(std::countr_zero(x));
        const Node v = sub.new_to_old[local];
        rows[k * rw + v / 64] |= std::uint64_t{1} << (v % 64);
        x &= x - 1;
      }
    }
  }
  SampleMeta meta;
  meta.sampler = "exact-components";
  meta.seed = rng.seed();
  meta.stream = rng.index();
  meta.model_fingerprint = model_fingerprint(g, model);
  SampleSet out(p, n, std::move(rows), std::move(meta));
  check_hard_core_samples(g, model, out);
  return out;
}

/// Heat-bath probability P(σ_i = 1 | rest) given k occupied neighbors.
inline double gibbs_update_prob(const ModelSpec& model, Node i, std::size_t occupied_neighbors) {
  if (model.is_hard_core()) {
    if (occupied_neighbors > 0) return 0.0;
    const double lambda = model.hard_core_params().lambda;
    return lambda / (1.0 + lambda);
  }
  const auto& m = model.ising_params();
  return 1.0 / (1.0 + std::exp(m.beta * static_cast<double>(occupied_neighbors) - m.fields.at(i)));
}

struct GibbsOptions {
  std::optional<std::uint64_t> burn_in;  ///< sweeps; default 1000 p
  std::optional<std::uint64_t> thinning; ///< sweeps; default 10 p
  std::size_t chains = 64;               ///< independent chains, one per child stream
};

inline std::uint64_t default_burn_in(std::size_t p) { return 1000 * static_cast<std::uint64_t>(p); }
inline std::uint64_t default_thinning(std::size_t p) { return 10 * static_cast<std::uint64_t>(p); }

/// Single-site systematic-scan heat-bath dynamics. Chain c runs on
/// rng.child(c) from the all-zero configuration, discards burn_in sweeps and
/// then records a sample after every `thinning` sweeps (at least one).
/// Rows are ordered by chain index.
inline SampleSet gibbs_sample(const Graph& g, const ModelSpec& model, std::size_t n, const RngStream& rng,
                              const GibbsOptions& opt = {}) {
  const std::size_t p = g.num_nodes();
  model.check_nodes(p);
  const std::uint64_t burn = opt.burn_in.value_or(default_burn_in(p));
  const std::uint64_t thin = opt.thinning.value_or(default_thinning(p));
  const std::uint64_t gap = std::max<std::uint64_t>(thin, 1);
  const std::size_t chains = std::max<std::size_t>(1, std::min(n, opt.chains));

  // Per-node acceptance probability indexed by occupied-neighbor count.
  std::vector<std::vector<double>> accept(p);
  for (Node i = 0; i < p; ++i)
    for (std::size_t k = 0; k <= g.degree(i); ++k) accept[i].push_back(gibbs_update_prob(model, i, k));

  const std::size_t rw = words_for(p);
  std::vector<std::uint64_t> rows(n * rw, 0);
  std::size_t next_row = 0;
  std::vector<std::uint8_t> sigma(p);
  std::vector<std::uint32_t> occupied(p);
  for (std::size_t c = 0; c < chains; ++c) {
    const std::size_t quota = n / chains + (c < n % chains ? 1 : 0);
    RngStream stream = rng.child(c);
    std::fill(sigma.begin(), sigma.end(), 0);
    std::fill(occupied.begin(), occupied.end(), 0);
    auto sweep = [&] {
      for (Node i = 0; i < p; ++i) {
        const std::uint8_t next = stream.uniform() < accept[i][occupied[i]] ? 1 : 0;
        if (next != sigma[i]) {
          sigma[i] = next;
          if (next)
            for (Node j : g.neighbors(i)) ++occupied[j];
          else
            for (Node j : g.neighbors(i)) --occupied[j];
        }
      }
    };
    for (std::uint64_t s = 0; s < burn; ++s) sweep();
    for (std::size_t r = 0; r < quota; ++r) {
      for (std::uint64_t s = 0; s < gap; ++s) sweep();
      std::uint64_t* row = rows.data() + next_row * rw;
      for (Node i = 0; i < p; ++i)
        if (sigma[i]) row[i / 64] |= std::uint64_t{1} << (i % 64);
      ++next_row;
    }
  }
  SampleMeta meta;
  meta.sampler = "gibbs";
  meta.seed = rng.seed();
  meta.stream = rng.index();
  meta.burn_in = burn;
  meta.thinning = thin;
  meta.chains = chains;
  meta.model_fingerprint = model_fingerprint(g, model);
  SampleSet out(p, n, std::move(rows), std::move(meta));
  check_hard_core_samples(g, model, out);
  return out;
}

/// Exact (per component) when every component fits under the cap, Gibbs otherwise.
inline SampleSet sample_auto(const Graph& g, const ModelSpec& model, std::size_t n, const RngStream& rng,
                             std::size_t cap = kDefaultEnumerationCap, const GibbsOptions& opt = {}) {
  std::size_t largest = 0;
  for (const auto& c : g.components()) largest = std::max(largest, c.size());
  if (largest <= cap) return sample_exact(g, model, n, rng, cap);
  return gibbs_sample(g, model, n, rng, opt);
}

} // namespace repelgm
