#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "repelgm/error.hpp"
#include "repelgm/graph.hpp"

namespace repelgm {

/// Provenance carried with every sample set.
struct SampleMeta {
  std::string sampler = "none"; ///< "exact", "exact-components", "gibbs", "filtered", "none"
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t burn_in = 0;   ///< sweeps
  std::uint64_t thinning = 0;  ///< sweeps between recorded samples
  std::uint64_t chains = 0;
  std::string model_fingerprint;
  std::vector<Node> conditioning; ///< U when produced by filter_samples

  bool operator==(const SampleMeta&) const = default;
};

inline std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

/// n configurations in {0,1}^p, bit-packed twice: row-major (one bit per node,
/// as stored on disk) and node-major (one bit per sample) so that pair
/// statistics reduce to AND + popcount over 64 samples at a time.
/// Immutable once built.
class SampleSet {
public:
  SampleSet() = default;

  /// rows holds n * words_for(p) words; bits at or beyond p must be zero.
  SampleSet(std::size_t p, std::size_t n, std::vector<std::uint64_t> rows, SampleMeta meta = {})
      : p_(p), n_(n), row_words_(words_for(p)), col_words_(words_for(n)), rows_(std::move(rows)), meta_(std::move(meta)) {
    if (rows_.size() != n_ * row_words_) throw DimensionError("row buffer size does not match p and n");
    if (p_ % 64 != 0) {
      const std::uint64_t tail = ~std::uint64_t{0} << (p_ % 64);
      for (std::size_t k = 0; k < n_; ++k)
        if (rows_[k * row_words_ + row_words_ - 1] & tail) throw DimensionError("row has bits set beyond p");
    }
    build_columns();
  }

  static SampleSet from_configs(std::size_t p, std::span<const BinaryConfig> configs, SampleMeta meta = {}) {
    const std::size_t rw = words_for(p);
    std::vector<std::uint64_t> rows(configs.size() * rw, 0);
    for (std::size_t k = 0; k < configs.size(); ++k) {
      if (configs[k].size() != p) throw DimensionError("sample " + std::to_string(k) + " has wrong length");
      for (std::size_t i = 0; i < p; ++i)
        if (configs[k][i]) rows[k * rw + i / 64] |= std::uint64_t{1} << (i % 64);
    }
    return SampleSet(p, configs.size(), std::move(rows), std::move(meta));
  }

  static SampleSet from_configs(std::size_t p, std::initializer_list<BinaryConfig> configs, SampleMeta meta = {}) {
    return from_configs(p, std::span<const BinaryConfig>(configs.begin(), configs.size()), std::move(meta));
  }

  std::size_t num_nodes() const noexcept { return p_; }
  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }
  std::size_t row_words() const noexcept { return row_words_; }
  std::size_t column_words() const noexcept { return col_words_; }
  const SampleMeta& meta() const noexcept { return meta_; }

  std::span<const std::uint64_t> row(std::size_t k) const {
    return std::span<const std::uint64_t>(rows_).subspan(k * row_words_, row_words_);
  }
  std::span<const std::uint64_t> rows() const noexcept { return rows_; }

  /// Bit k of column(i) is σ^(k)_i; bits past n are zero.
  std::span<const std::uint64_t> column(Node i) const {
    return std::span<const std::uint64_t>(cols_).subspan(static_cast<std::size_t>(i) * col_words_, col_words_);
  }

  bool get(std::size_t k, Node i) const { return (rows_[k * row_words_ + i / 64] >> (i % 64)) & 1u; }

  BinaryConfig config(std::size_t k) const {
    BinaryConfig c(p_);
    for (Node i = 0; i < p_; ++i) c.set(i, get(k, i));
    return c;
  }

  /// Number of samples with σ_i = 1.
  std::size_t ones(Node i) const {
    std::size_t c = 0;
    for (auto w : column(i)) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Rows selected by index, in the given order.
  SampleSet select(std::span<const std::size_t> keep, SampleMeta meta) const {
    std::vector<std::uint64_t> rows;
    rows.reserve(keep.size() * row_words_);
    for (auto k : keep) {
      auto r = row(k);
      rows.insert(rows.end(), r.begin(), r.end());
    }
    return SampleSet(p_, keep.size(), std::move(rows), std::move(meta));
  }

  bool operator==(const SampleSet& o) const { return p_ == o.p_ && n_ == o.n_ && rows_ == o.rows_ && meta_ == o.meta_; }

private:
  void build_columns() {
    cols_.assign(p_ * col_words_, 0);
    for (std::size_t k = 0; k < n_; ++k) {
      const std::uint64_t bit = std::uint64_t{1} << (k % 64);
      const std::size_t word = k / 64;
      for (std::size_t w = 0; w < row_words_; ++w) {
        std::uint64_t x = rows_[k * row_words_ + w];
        while (x) {
          const auto i = w * 64 + static_cast<std::size_t>(std::countr_zero(x));
          cols_[i * col_words_ + word] |= bit;
          x &= x - 1;
        }
      }
    }
  }

  std::size_t p_ = 0;
  std::size_t n_ = 0;
  std::size_t row_words_ = 0;
  std::size_t col_words_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> cols_;
  SampleMeta meta_;
};

/// Σ_w popcount(a_w & b_w).
inline std::size_t and_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::size_t c = 0;
  for (std::size_t w = 0; w < a.size(); ++w) c += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
  return c;
}

/// Σ_w popcount(a_w & b_w & c_w).
inline std::size_t and_count(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                             std::span<const std::uint64_t> c) {
  std::size_t n = 0;
  for (std::size_t w = 0; w < a.size(); ++w) n += static_cast<std::size_t>(std::popcount(a[w] & b[w] & c[w]));
  return n;
}

inline std::size_t popcount(std::span<const std::uint64_t> a) {
  std::size_t c = 0;
  for (auto w : a) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

} // namespace repelgm
