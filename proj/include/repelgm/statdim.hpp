#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "repelgm/error.hpp"
#include "repelgm/graph.hpp"
#include "repelgm/rng.hpp"

namespace repelgm {

/// Configuration in {-1,+1}^p.
using SpinConfig = std::vector<std::int8_t>;

/// σ ↦ 2σ - 1.
inline SpinConfig to_spins(const BinaryConfig& sigma) {
  SpinConfig x(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) x[i] = sigma[i] ? 1 : -1;
  return x;
}

inline BinaryConfig to_binary(std::span<const std::int8_t> x) {
  BinaryConfig s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s.set(i, x[i] > 0);
  return s;
}

inline constexpr std::size_t kMaxBruteForceSpins = 20;

/// Soft parity p_S(x) ∝ exp(c · χ_S(x)) with χ_S(x) = Π_{i∈S} x_i.
class SoftParity {
public:
  SoftParity(std::size_t p, std::vector<Node> subset, double c) : p_(p), subset_(std::move(subset)), c_(c) {
    std::sort(subset_.begin(), subset_.end());
    if (subset_.empty()) throw DomainError("soft parity needs |S| >= 1");
    if (std::adjacent_find(subset_.begin(), subset_.end()) != subset_.end()) throw DomainError("parity subset has repeated nodes");
    if (subset_.back() >= p_) throw IndexError("parity subset exceeds p");
  }

  std::size_t num_nodes() const noexcept { return p_; }
  std::span<const Node> subset() const noexcept { return subset_; }
  double c() const noexcept { return c_; }

  int chi(std::span<const std::int8_t> x) const {
    if (x.size() != p_) throw DimensionError("spin configuration has wrong length");
    int s = 1;
    for (Node i : subset_) s *= x[i] > 0 ? 1 : -1;
    return s;
  }

  /// Bitmask of S (p <= 64); bit set means x_i = -1 in the mask encoding.
  std::uint64_t mask() const {
    std::uint64_t m = 0;
    for (Node i : subset_) m |= std::uint64_t{1} << i;
    return m;
  }

private:
  std::size_t p_;
  std::vector<Node> subset_;
  double c_;
};

/// Z = 2^{p-1} (e^c + e^{-c}); independent of S.
inline double parity_partition(std::size_t p, double c) {
  if (p < 1) throw DomainError("parity partition needs p >= 1");
  return std::ldexp(std::exp(c) + std::exp(-c), static_cast<int>(p) - 1);
}

inline double soft_parity_prob(const SoftParity& sp, std::span<const std::int8_t> x) {
  return std::exp(sp.c() * sp.chi(x)) / parity_partition(sp.num_nodes(), sp.c());
}

/// 1 - 4/(e^c + e^{-c})^2: correlation of a soft parity with itself.
inline double parity_self_correlation(double c) {
  const double s = std::exp(c) + std::exp(-c);
  return 1.0 - 4.0 / (s * s);
}

/// ⟨p_S/U - 1, p_T/U - 1⟩_U = Σ_x 2^p p_S(x) p_T(x) - 1, summed over all 2^p
/// configurations with both partition functions also summed explicitly.
inline double pairwise_correlation(std::span<const Node> s_set, std::span<const Node> t_set, double c, std::size_t p) {
  if (p > kMaxBruteForceSpins) throw CapacityError("pairwise correlation brute force limited to p <= 20");
  const SoftParity ps(p, {s_set.begin(), s_set.end()}, c);
  const SoftParity pt(p, {t_set.begin(), t_set.end()}, c);
  const std::uint64_t ms = ps.mask();
  const std::uint64_t mt = pt.mask();
  const double ep = std::exp(c);
  const double em = std::exp(-c);
  double zs = 0.0, zt = 0.0, cross = 0.0;
  const std::uint64_t total = std::uint64_t{1} << p;
  for (std::uint64_t x = 0; x < total; ++x) {
    const double ws = (std::popcount(x & ms) & 1) ? em : ep;
    const double wt = (std::popcount(x & mt) & 1) ? em : ep;
    zs += ws;
    zt += wt;
    cross += ws * wt;
  }
  return static_cast<double>(total) * cross / (zs * zt) - 1.0;
}

/// ρ(D', U): mean of |pairwise correlation| over all ordered pairs of the family.
inline double average_correlation(std::span<const std::vector<Node>> family, double c, std::size_t p) {
  if (family.empty()) throw DomainError("average correlation needs a nonempty family");
  double acc = 0.0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    acc += std::abs(pairwise_correlation(family[i], family[i], c, p));
    for (std::size_t j = i + 1; j < family.size(); ++j) acc += 2.0 * std::abs(pairwise_correlation(family[i], family[j], c, p));
  }
  const double k = static_cast<double>(family.size());
  return acc / (k * k);
}

inline double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

/// Every d-subset of {0..p-1}, lexicographic.
inline std::vector<std::vector<Node>> all_subsets(std::size_t p, std::size_t d) {
  std::vector<std::vector<Node>> out;
  if (d > p) return out;
  std::vector<Node> combo(d);
  for (std::size_t i = 0; i < d; ++i) combo[i] = static_cast<Node>(i);
  while (true) {
    out.push_back(combo);
    std::size_t i = d;
    while (i > 0 && combo[i - 1] == p - d + i - 1) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t j = i; j < d; ++j) combo[j] = combo[j - 1] + 1;
  }
  return out;
}

/// Query-complexity lower bound for unbiased statistical algorithms on the
/// soft-parity family: ℓ = p^{d/2}/d^d, γ = d^d p^{-d/2},
/// m = min{ ℓ(δ-η) / (2(1-η)), (δ-η)^2 / (12γ) }.
struct QueryBound {
  double ell = 0.0;
  double gamma = 0.0;
  double dimension_term = 0.0;
  double correlation_term = 0.0;
  double queries = 0.0;
  double simplified = 0.0; ///< min{ℓ/4, 1/(48γ)}, the η = 1/6, δ = 2/3 instance
};

inline QueryBound query_lower_bound(std::size_t p, std::size_t d, double eta, double success) {
  if (d < 1) throw DomainError("parity degree d must be >= 1");
  if (p < 1) throw DomainError("p must be >= 1");
  if (!(eta > 0.0 && eta < success && success <= 1.0)) throw DomainError("need 0 < eta < success <= 1");
  QueryBound qb;
  const double dd = static_cast<double>(d);
  const double half = std::pow(static_cast<double>(p), dd / 2.0);
  const double dpow = std::pow(dd, dd);
  qb.ell = half / dpow;
  qb.gamma = dpow / half;
  qb.dimension_term = qb.ell * (success - eta) / (2.0 * (1.0 - eta));
  qb.correlation_term = (success - eta) * (success - eta) / (12.0 * qb.gamma);
  qb.queries = std::min(qb.dimension_term, qb.correlation_term);
  qb.simplified = std::min(qb.ell / 4.0, 1.0 / (48.0 * qb.gamma));
  return qb;
}

struct SubsetAudit {
  std::size_t size = 0;
  double rho = 0.0;              ///< diagonal-only identity
  std::optional<double> rho_bruteforce; ///< full double sum, on the audited fraction
  bool within_inverse_size = false;     ///< ρ <= 1/|D'|
  bool within_bound = false;            ///< ρ <= d^d p^{-d/2}
};

struct SdaAuditReport {
  std::size_t p = 0;
  std::size_t d = 0;
  double c = 1.0;
  std::size_t family_size = 0;
  std::size_t min_subset_size = 0;
  double bound = 0.0;
  double self_correlation = 0.0;
  double max_offdiagonal = 0.0; ///< largest |⟨·,·⟩| for S≠T seen during brute-force audits
  double max_identity_gap = 0.0; ///< largest |ρ_bruteforce - ρ|
  std::vector<SubsetAudit> subsets;
  bool parity_corr_pass = true;
  bool large_set_corr_pass = true;
  std::string coverage_note;
};

/// Samples random subfamilies D' of size ⌈C(p,d)/p^{d/2}⌉ and checks
/// ρ(D',U) <= 1/|D'| <= d^d p^{-d/2}. ρ comes from the identity
/// ρ = self_correlation/|D'| (off-diagonal terms vanish); a fraction of the
/// subsets is recomputed with the full brute-force double sum.
inline SdaAuditReport sda_audit(std::size_t p, std::size_t d, double c, std::size_t subset_count, RngStream rng,
                                double audit_fraction = 0.05) {
  if (d < 1) throw DomainError("parity degree d must be >= 1");
  if (p > kMaxBruteForceSpins || d > 4) throw CapacityError("SDA audit limited to p <= 20, d <= 4");
  if (d > p) throw DomainError("d must not exceed p");
  SdaAuditReport rep;
  rep.p = p;
  rep.d = d;
  rep.c = c;
  const auto family = all_subsets(p, d);
  rep.family_size = family.size();
  const double dd = static_cast<double>(d);
  const double half = std::pow(static_cast<double>(p), dd / 2.0);
  rep.min_subset_size = static_cast<std::size_t>(std::ceil(static_cast<double>(family.size()) / half - 1e-12));
  rep.min_subset_size = std::clamp<std::size_t>(rep.min_subset_size, 1, family.size());
  rep.bound = std::pow(dd, dd) / half;
  rep.self_correlation = parity_self_correlation(c);

  const std::size_t audited = subset_count == 0 ? 0 : std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(audit_fraction * static_cast<double>(subset_count))));
  const std::size_t stride = audited == 0 ? 0 : std::max<std::size_t>(1, subset_count / audited);

  std::vector<std::size_t> order(family.size());
  for (std::size_t k = 0; k < subset_count; ++k) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const std::size_t m = rep.min_subset_size;
    for (std::size_t i = 0; i < m; ++i) std::swap(order[i], order[i + rng.below(order.size() - i)]);

    SubsetAudit sa;
    sa.size = m;
    sa.rho = std::abs(rep.self_correlation) / static_cast<double>(m);
    if (stride > 0 && k % stride == 0 && k / stride < audited) {
      double acc = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          const double corr = pairwise_correlation(family[order[i]], family[order[j]], c, p);
          if (i != j) rep.max_offdiagonal = std::max(rep.max_offdiagonal, std::abs(corr));
          acc += std::abs(corr);
        }
      }
      sa.rho_bruteforce = acc / static_cast<double>(m * m);
      rep.max_identity_gap = std::max(rep.max_identity_gap, std::abs(*sa.rho_bruteforce - sa.rho));
    }
    const double rho = sa.rho_bruteforce.value_or(sa.rho);
    sa.within_inverse_size = rho <= 1.0 / static_cast<double>(m) + 1e-12;
    sa.within_bound = rho <= rep.bound + 1e-12 && 1.0 / static_cast<double>(m) <= rep.bound + 1e-12;
    rep.large_set_corr_pass = rep.large_set_corr_pass && sa.within_inverse_size && sa.within_bound;
    rep.subsets.push_back(sa);
  }
  rep.parity_corr_pass = rep.max_offdiagonal <= 1e-10 && rep.max_identity_gap <= 1e-10;
  rep.coverage_note = "audited " + std::to_string(subset_count) + " random subfamilies of size " + std::to_string(rep.min_subset_size) +
                      " out of C(" + std::to_string(rep.family_size) + "," + std::to_string(rep.min_subset_size) +
                      ") possible; " + std::to_string(audited) + " recomputed by brute force, the rest use the diagonal-only identity";
  return rep;
}

/// Uniform distribution on {-1,+1}^p.
struct UniformSpins {
  std::size_t p = 0;
};

/// Unbiased oracle: each query draws a fresh sample x ~ D and returns h(x).
class OracleSession {
public:
  using Distribution = std::variant<UniformSpins, SoftParity>;
  using Predicate = std::function<bool(std::span<const std::int8_t>)>;

  OracleSession(Distribution dist, RngStream rng) : dist_(std::move(dist)), rng_(std::move(rng)) {}

  bool query(const Predicate& h) {
    draw();
    ++count_;
    return h(buffer_);
  }

  std::uint64_t query_count() const noexcept { return count_; }

  std::size_t num_nodes() const {
    return std::visit([](const auto& d) { return num_nodes_of(d); }, dist_);
  }

private:
  static std::size_t num_nodes_of(const UniformSpins& u) { return u.p; }
  static std::size_t num_nodes_of(const SoftParity& s) { return s.num_nodes(); }

  void draw() {
    const std::size_t p = num_nodes();
    buffer_.resize(p);
    for (std::size_t i = 0; i < p; i += 64) {
      std::uint64_t bits = rng_.next_u64();
      for (std::size_t j = i; j < std::min(p, i + 64); ++j, bits >>= 1) buffer_[j] = (bits & 1u) ? 1 : -1;
    }
    if (const auto* sp = std::get_if<SoftParity>(&dist_)) {
      // χ_S is uniform under the uniform draw; choose its sign with the
      // soft-parity odds and flip one member of S when it disagrees.
      const double plus = std::exp(sp->c()) / (std::exp(sp->c()) + std::exp(-sp->c()));
      const int want = rng_.uniform() < plus ? 1 : -1;
      if (sp->chi(buffer_) != want) buffer_[sp->subset().front()] = static_cast<std::int8_t>(-buffer_[sp->subset().front()]);
    }
  }

  Distribution dist_;
  RngStream rng_;
  std::uint64_t count_ = 0;
  SpinConfig buffer_;
};

} // namespace repelgm
