#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "repelgm/error.hpp"
#include "repelgm/graph.hpp"
#include "repelgm/samples.hpp"

namespace repelgm {

/// Which separation margin δ the repelling learners use.
///  - Theorem: 1/(4(1 + 2^{d-α} e^{h(d-α+1)})), the margin the recovery proof establishes.
///  - Printed: (1 + 2^d e^{h(d-1)})^{-2} for α = 0 (the StrongRepelling listing);
///    for α > 0 the WeakRepelling listing coincides with Theorem.
enum class DeltaRule { Theorem, Printed };

inline double ln2() { return std::numbers::ln2; }

/// ⌈d - β/(h + ln 2)⌉ clamped to [0, d].
inline std::size_t auto_alpha(double beta, double h, std::size_t d) {
  const double raw = std::ceil(static_cast<double>(d) - beta / (h + ln2()));
  if (raw <= 0.0) return 0;
  return std::min<std::size_t>(d, static_cast<std::size_t>(raw));
}

inline double theorem_delta(double h, std::size_t d, std::size_t alpha) {
  const double r = static_cast<double>(d - alpha);
  return 1.0 / (4.0 * (1.0 + std::pow(2.0, r) * std::exp(h * (r + 1.0))));
}

inline double printed_strong_delta(double h, std::size_t d) {
  const double dd = static_cast<double>(d);
  const double b = 1.0 + std::pow(2.0, dd) * std::exp(h * (dd - 1.0));
  return 1.0 / (b * b);
}

/// (1 + e^{β-h})^{-1}: upper bound on P(σ_a=1 | σ_b=1) across a true edge.
inline double edge_threshold(double beta, double h) { return 1.0 / (1.0 + std::exp(beta - h)); }

struct LearnConfig {
  double beta = 1.0;
  double h = 0.0;
  std::size_t d = 0;
  std::size_t alpha = 0;
  double delta = 0.0;
  double edge_threshold = 0.5;
  DeltaRule rule = DeltaRule::Theorem;
  /// Stop scanning conditioning sets for a pair once one certifies a non-edge.
  bool early_exit = true;

  double decision_threshold() const noexcept { return edge_threshold + delta; }

  /// Derives α (unless given), δ and the edge threshold from (β, h, d).
  static LearnConfig derive(double beta, double h, std::size_t d, std::optional<std::size_t> alpha = std::nullopt,
                            DeltaRule rule = DeltaRule::Theorem) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive");
    if (!(h >= 0.0) || !std::isfinite(h)) throw DomainError("field bound h must be nonnegative");
    LearnConfig cfg;
    cfg.beta = beta;
    cfg.h = h;
    cfg.d = d;
    cfg.alpha = alpha.value_or(auto_alpha(beta, h, d));
    if (cfg.alpha > d) throw DomainError("alpha must not exceed d");
    cfg.rule = rule;
    cfg.delta = (rule == DeltaRule::Printed && cfg.alpha == 0) ? printed_strong_delta(h, d) : theorem_delta(h, d, cfg.alpha);
    cfg.edge_threshold = repelgm::edge_threshold(beta, h);
    cfg.validate();
    return cfg;
  }

  void validate() const {
    if (alpha > d) throw DomainError("alpha must not exceed d");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0,1)");
    if (!(edge_threshold > 0.0 && edge_threshold < 1.0)) throw DomainError("edge threshold must lie in (0,1)");
  }
};

/// Per-pair decision statistic. `stat` is empty when every conditional the
/// learner tried was undefined (no sample had the conditioning node set).
struct PairDiagnostic {
  std::optional<double> stat;
  std::vector<Node> argmax_u;
  std::size_t filtered_samples = 0; ///< |A_U| for the argmax U
};

inline std::size_t pair_index(std::size_t p, Node a, Node b) {
  if (a > b) std::swap(a, b);
  return static_cast<std::size_t>(a) * p - static_cast<std::size_t>(a) * (a + 1) / 2 + (b - a - 1);
}

/// Learned edge set with per-pair diagnostics.
struct EdgeSet {
  std::size_t p = 0;
  std::vector<Edge> edges; ///< sorted
  std::vector<PairDiagnostic> diagnostics; ///< indexed by pair_index (empty if not recorded)
  std::vector<std::string> warnings;
  std::size_t undefined_pairs = 0;
  std::size_t min_filtered_samples = 0; ///< smallest |A_U| over the conditioning sets scanned

  bool contains(Node a, Node b) const { return std::binary_search(edges.begin(), edges.end(), Edge(a, b)); }
  const PairDiagnostic& diagnostic(Node a, Node b) const { return diagnostics.at(pair_index(p, a, b)); }
  Graph graph() const { return Graph(p, edges); }
};

/// Recovery error: size of the symmetric difference between learned and true edges.
inline std::size_t edit_distance(const EdgeSet& learned, const Graph& truth) {
  std::vector<Edge> diff;
  std::set_symmetric_difference(learned.edges.begin(), learned.edges.end(), truth.edges().begin(), truth.edges().end(),
                                std::back_inserter(diff));
  return diff.size();
}

inline bool exact_recovery(const EdgeSet& learned, const Graph& truth) {
  return learned.p == truth.num_nodes() && std::equal(learned.edges.begin(), learned.edges.end(), truth.edges().begin(), truth.edges().end());
}

/// Declares an edge for every pair never co-occupied in the samples.
/// The diagnostic stat is the number of witnesses (co-occupying samples).
inline EdgeSet simple_hc(const SampleSet& samples) {
  if (samples.empty()) throw DomainError("simple_hc needs at least one sample");
  const std::size_t p = samples.num_nodes();
  EdgeSet out;
  out.p = p;
  out.min_filtered_samples = samples.size();
  out.diagnostics.resize(p * (p - (p > 0 ? 1 : 0)) / 2);
  for (Node a = 0; a < p; ++a) {
    auto ca = samples.column(a);
    for (Node b = a + 1; b < p; ++b) {
      const std::size_t witnesses = and_count(ca, samples.column(b));
      auto& diag = out.diagnostics[pair_index(p, a, b)];
      diag.stat = static_cast<double>(witnesses);
      diag.filtered_samples = samples.size();
      if (witnesses == 0) out.edges.emplace_back(a, b);
    }
  }
  return out;
}

/// P̂(σ_a = 1 | σ_b = 1); empty when no sample has σ_b = 1.
inline std::optional<double> empirical_cond_prob(const SampleSet& samples, Node a, Node b) {
  const std::size_t p = samples.num_nodes();
  if (a >= p || b >= p) throw IndexError("node out of range");
  if (a == b) throw DomainError("empirical conditional needs a != b");
  const std::size_t nb = samples.ones(b);
  if (nb == 0) return std::nullopt;
  return static_cast<double>(and_count(samples.column(a), samples.column(b))) / static_cast<double>(nb);
}

/// Rows with σ_u = 0 for every u in U, original order preserved.
inline SampleSet filter_samples(const SampleSet& samples, std::span<const Node> zeroed) {
  const std::size_t p = samples.num_nodes();
  std::vector<std::uint64_t> mask(samples.row_words(), 0);
  for (Node u : zeroed) {
    if (u >= p) throw IndexError("node " + std::to_string(u) + " out of range");
    mask[u / 64] |= std::uint64_t{1} << (u % 64);
  }
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    auto r = samples.row(k);
    bool ok = true;
    for (std::size_t w = 0; w < r.size() && ok; ++w) ok = (r[w] & mask[w]) == 0;
    if (ok) keep.push_back(k);
  }
  SampleMeta meta = samples.meta();
  meta.conditioning.assign(zeroed.begin(), zeroed.end());
  std::sort(meta.conditioning.begin(), meta.conditioning.end());
  return samples.select(keep, std::move(meta));
}

inline SampleSet filter_samples(const SampleSet& samples, std::initializer_list<Node> zeroed) {
  return filter_samples(samples, std::span<const Node>(zeroed.begin(), zeroed.end()));
}

namespace detail {

/// Advances `combo` (sorted, distinct, values < p) to the next combination of
/// the same size in lexicographic order; false when exhausted.
inline bool next_combination(std::vector<Node>& combo, std::size_t p) {
  const std::size_t k = combo.size();
  for (std::size_t i = k; i-- > 0;) {
    if (combo[i] < p - (k - i)) {
      ++combo[i];
      for (std::size_t j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
      return true;
    }
  }
  return false;
}

/// Shared engine for StrongRepelling (α = 0) and WeakRepelling.
///
/// For each conditioning set U (sizes 0..α, lexicographic) the samples with
/// σ_U = 0 are selected by a column mask, and for every pair {a,b} disjoint
/// from U the statistic max(P̂(σ_a=1|σ_b=1), P̂(σ_b=1|σ_a=1)) is computed on
/// that subset. A pair's decision statistic is the maximum over U; the pair
/// is an edge iff that maximum is <= edge_threshold + δ.
inline EdgeSet repelling_scan(const SampleSet& samples, const LearnConfig& cfg) {
  cfg.validate();
  if (samples.empty()) throw DomainError("repelling learners need at least one sample");
  const std::size_t p = samples.num_nodes();
  const std::size_t words = samples.column_words();
  const double threshold = cfg.decision_threshold();
  const std::size_t alpha = std::min(cfg.alpha, p >= 2 ? p - 2 : 0);

  EdgeSet out;
  out.p = p;
  out.min_filtered_samples = samples.size();
  const std::size_t pairs = p < 2 ? 0 : p * (p - 1) / 2;
  out.diagnostics.resize(pairs);
  std::vector<std::uint8_t> certified(pairs, 0);

  std::vector<std::uint64_t> mask(words);
  std::vector<std::size_t> ones(p);
  std::vector<std::uint8_t> in_u(p, 0);
  std::vector<Node> combo;
  for (std::size_t size = 0; size <= alpha; ++size) {
    combo.resize(size);
    for (std::size_t i = 0; i < size; ++i) combo[i] = static_cast<Node>(i);
    do {
      std::fill(mask.begin(), mask.end(), ~std::uint64_t{0});
      if (samples.size() % 64 != 0) mask.back() = (std::uint64_t{1} << (samples.size() % 64)) - 1;
      for (Node u : combo) {
        auto cu = samples.column(u);
        for (std::size_t w = 0; w < words; ++w) mask[w] &= ~cu[w];
        in_u[u] = 1;
      }
      const std::size_t filtered = popcount(mask);
      out.min_filtered_samples = std::min(out.min_filtered_samples, filtered);
      if (filtered > 0) {
        for (Node i = 0; i < p; ++i) ones[i] = in_u[i] ? 0 : and_count(samples.column(i), mask);
        for (Node a = 0; a < p; ++a) {
          if (in_u[a]) continue;
          auto ca = samples.column(a);
          for (Node b = a + 1; b < p; ++b) {
            if (in_u[b]) continue;
            const std::size_t idx = pair_index(p, a, b);
            if (cfg.early_exit && certified[idx]) continue;
            if (ones[a] == 0 && ones[b] == 0) continue;
            const auto both = static_cast<double>(and_count(ca, samples.column(b), mask));
            double value = -1.0;
            if (ones[b] > 0) value = both / static_cast<double>(ones[b]);
            if (ones[a] > 0) value = std::max(value, both / static_cast<double>(ones[a]));
            auto& diag = out.diagnostics[idx];
            if (!diag.stat || value > *diag.stat) {
              diag.stat = value;
              diag.argmax_u = combo;
              diag.filtered_samples = filtered;
            }
            if (value > threshold) certified[idx] = 1;
          }
        }
      }
      for (Node u : combo) in_u[u] = 0;
    } while (size > 0 && next_combination(combo, p));
  }

  std::vector<std::string> undefined;
  for (Node a = 0; a < p; ++a) {
    for (Node b = a + 1; b < p; ++b) {
      const auto& diag = out.diagnostics[pair_index(p, a, b)];
      if (!diag.stat) {
        ++out.undefined_pairs;
        if (undefined.size() < 8) undefined.push_back(std::to_string(a) + "-" + std::to_string(b));
        continue;
      }
      if (*diag.stat <= threshold) out.edges.emplace_back(a, b);
    }
  }
  if (out.undefined_pairs > 0) {
    std::string msg = std::to_string(out.undefined_pairs) + " pair(s) had no usable conditioning samples and were declared non-edges:";
    for (const auto& s : undefined) msg += " " + s;
    if (out.undefined_pairs > undefined.size()) msg += " ...";
    out.warnings.push_back(std::move(msg));
  }
  return out;
}

} // namespace detail

/// StrongRepelling: pairwise conditional statistic against edge_threshold + δ.
inline EdgeSet strong_repelling(const SampleSet& samples, LearnConfig cfg) {
  cfg.alpha = 0;
  return detail::repelling_scan(samples, cfg);
}

/// WeakRepelling: maximizes the conditional over node deletions |U| <= α,
/// realized by conditioning the samples on σ_U = 0.
inline EdgeSet weak_repelling(const SampleSet& samples, const LearnConfig& cfg) {
  return detail::repelling_scan(samples, cfg);
}

// ---------------------------------------------------------------------------
// Sample-complexity calculators

/// (2^{2d+1} max{1, λ^{2d}})^{-1}: lower bound on the co-occupancy
/// probability of any non-edge in a hard-core model of max degree d.
inline double hard_core_gamma(std::size_t d, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  const double dd = static_cast<double>(d);
  return 1.0 / (std::pow(2.0, 2.0 * dd + 1.0) * std::max(1.0, std::pow(lambda, 2.0 * dd)));
}

/// 3 γ^{-1} ln p, rounded up.
inline std::uint64_t required_samples_simple_hc(std::size_t p, std::size_t d, double lambda) {
  if (p < 2) throw DomainError("need p >= 2");
  return static_cast<std::uint64_t>(std::ceil(3.0 / hard_core_gamma(d, lambda) * std::log(static_cast<double>(p))));
}

/// Samples for StrongRepelling / WeakRepelling: the conditional-probability
/// concentration bound n' = (2 / q² ε²) ln(8p² / ζ) with
/// q = (1 + 2^d e^{h(d+1)})^{-1}, ε = cfg.delta and ζ = 1/p by default,
/// inflated to n = 2 (1+e^h)^α n' so that every conditioning subset keeps at
/// least n' samples.
inline std::uint64_t required_samples_repelling(std::size_t p, const LearnConfig& cfg, std::optional<double> zeta = std::nullopt) {
  if (p < 2) throw DomainError("need p >= 2");
  cfg.validate();
  const double z = zeta.value_or(1.0 / static_cast<double>(p));
  if (!(z > 0.0 && z < 1.0)) throw DomainError("failure probability must lie in (0,1)");
  const double dd = static_cast<double>(cfg.d);
  const double q = 1.0 / (1.0 + std::pow(2.0, dd) * std::exp(cfg.h * (dd + 1.0)));
  const double pp = static_cast<double>(p);
  const double effective = 2.0 / (q * q * cfg.delta * cfg.delta) * std::log(8.0 * pp * pp / z);
  const double n = 2.0 * std::pow(1.0 + std::exp(cfg.h), static_cast<double>(cfg.alpha)) * effective;
  if (n >= 1.8e19) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(std::ceil(n));
}

enum class Algorithm { SimpleHC, Strong, Weak };

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::SimpleHC: return "simplehc";
    case Algorithm::Strong: return "strong";
    case Algorithm::Weak: return "weak";
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "simplehc") return Algorithm::SimpleHC;
  if (s == "strong") return Algorithm::Strong;
  if (s == "weak") return Algorithm::Weak;
  throw DomainError("unknown algorithm '" + s + "' (expected simplehc|strong|weak)");
}

/// Sample-size lower bound over the star family:
/// ln(m/3) / (-ln(1 - q²)) with q = (1+λ)^{-(d-2)}.
struct LowerBound {
  double samples = 0.0;
  double q = 0.0;
  std::size_t stars = 0;
  bool degenerate = false;
  std::string warning;
};

inline LowerBound lower_bound_samples_for_stars(std::size_t m, std::size_t d, double lambda) {
  if (d < 2) throw DomainError("lower bound needs d >= 2");
  if (!(lambda >= 0.0)) throw DomainError("lambda must be nonnegative");
  LowerBound out;
  out.stars = m;
  out.q = std::pow(1.0 + lambda, -static_cast<double>(d - 2));
  const double denom = -std::log1p(-out.q * out.q);
  const double numer = std::log(static_cast<double>(m) / 3.0);
  if (!std::isfinite(denom)) {
    out.samples = 0.0;
    out.degenerate = true;
    out.warning = "q = 1: every star center may be occupied; the witness-probability bound is vacuous";
    return out;
  }
  if (numer <= 0.0) {
    out.samples = 0.0;
    out.degenerate = true;
    out.warning = "m <= 3: the matching argument needs more than three stars";
    return out;
  }
  out.samples = numer / denom;
  return out;
}

/// Same bound with m = p / (d - 1) stars.
inline LowerBound lower_bound_samples(std::size_t p, std::size_t d, double lambda) {
  if (d < 2) throw DomainError("lower bound needs d >= 2");
  if (p % (d - 1) != 0) throw DomainError("p must be divisible by d-1");
  return lower_bound_samples_for_stars(p / (d - 1), d, lambda);
}

} // namespace repelgm
