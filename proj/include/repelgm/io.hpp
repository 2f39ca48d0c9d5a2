#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "repelgm/error.hpp"
#include "repelgm/graph.hpp"
#include "repelgm/learner.hpp"
#include "repelgm/model.hpp"
#include "repelgm/samples.hpp"
#include "repelgm/statdim.hpp"

namespace repelgm {

using json = nlohmann::json;

// ---- graphs and models -----------------------------------------------------

/// {"p": p, "edges": [[i, j], ...]} with i < j, sorted.
inline json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"p", g.num_nodes()}, {"edges", std::move(edges)}};
}

inline Graph graph_from_json(const json& j) {
  try {
    const auto p = j.at("p").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw FormatError("edge entries must be [i, j] pairs");
      edges.emplace_back(e[0].get<Node>(), e[1].get<Node>());
    }
    return Graph(p, edges);
  } catch (const json::exception& ex) {
    throw FormatError(std::string("graph JSON: ") + ex.what());
  }
}

inline json model_to_json(const ModelSpec& m) {
  if (m.is_hard_core()) return {{"kind", "hardcore"}, {"lambda", m.hard_core_params().lambda}};
  const auto& is = m.ising_params();
  return {{"kind", "ising"}, {"beta", is.beta}, {"h", is.fields}, {"h_bound", is.field_bound}};
}

/// Ising fields may be given as a list or, with "p", as a scalar "h".
inline ModelSpec model_from_json(const json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "hardcore") return ModelSpec::hard_core(j.at("lambda").get<double>());
    if (kind == "ising") {
      const double beta = j.at("beta").get<double>();
      const auto& h = j.at("h");
      if (h.is_number()) {
        const double hv = h.get<double>();
        const double bound = j.value("h_bound", std::abs(hv));
        return ModelSpec::ising(beta, std::vector<double>(j.at("p").get<std::size_t>(), hv), bound);
      }
      auto fields = h.get<std::vector<double>>();
      double bound = 0.0;
      for (double x : fields) bound = std::max(bound, std::abs(x));
      return ModelSpec::ising(beta, std::move(fields), j.value("h_bound", bound));
    }
    throw FormatError("model kind must be hardcore or ising, got '" + kind + "'");
  } catch (const json::exception& ex) {
    throw FormatError(std::string("model JSON: ") + ex.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw FormatError(path + ": " + ex.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

// ---- sample sets -----------------------------------------------------------

inline json meta_to_json(const SampleMeta& m) {
  return {{"sampler", m.sampler},     {"seed", m.seed},         {"stream", m.stream},
          {"burn_in", m.burn_in},     {"thinning", m.thinning}, {"chains", m.chains},
          {"model_fingerprint", m.model_fingerprint}, {"conditioning", m.conditioning}};
}

inline SampleMeta meta_from_json(const json& j) {
  SampleMeta m;
  m.sampler = j.value("sampler", std::string("none"));
  m.seed = j.value("seed", std::uint64_t{0});
  m.stream = j.value("stream", std::uint64_t{0});
  m.burn_in = j.value("burn_in", std::uint64_t{0});
  m.thinning = j.value("thinning", std::uint64_t{0});
  m.chains = j.value("chains", std::uint64_t{0});
  m.model_fingerprint = j.value("model_fingerprint", std::string());
  m.conditioning = j.value("conditioning", std::vector<Node>{});
  return m;
}

/// Binary layout: "GMS1", p (u32 LE), n (u64 LE), then n rows of ⌈p/8⌉
/// bytes; node i is bit i%8 of byte i/8.
inline std::string encode_gms1(const SampleSet& s) {
  const std::size_t p = s.num_nodes();
  const std::size_t row_bytes = (p + 7) / 8;
  std::string out = "GMS1";
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((p >> (8 * k)) & 0xff));
  const auto n = static_cast<std::uint64_t>(s.size());
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<char>((n >> (8 * k)) & 0xff));
  out.reserve(out.size() + s.size() * row_bytes);
  for (std::size_t r = 0; r < s.size(); ++r) {
    auto row = s.row(r);
    for (std::size_t b = 0; b < row_bytes; ++b) out.push_back(static_cast<char>((row[b / 8] >> (8 * (b % 8))) & 0xff));
  }
  return out;
}

inline SampleSet decode_gms1(const std::string& bytes, SampleMeta meta = {}) {
  if (bytes.size() < 16 || bytes.compare(0, 4, "GMS1") != 0) throw FormatError("not a GMS1 sample file");
  auto byte = [&](std::size_t i) { return static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i])); };
  std::uint64_t p = 0, n = 0;
  for (int k = 0; k < 4; ++k) p |= byte(4 + k) << (8 * k);
  for (int k = 0; k < 8; ++k) n |= byte(8 + k) << (8 * k);
  const std::size_t row_bytes = (p + 7) / 8;
  if (row_bytes != 0 && n > (bytes.size() - 16) / row_bytes) throw FormatError("GMS1 file truncated");
  if (bytes.size() != 16 + n * row_bytes) throw FormatError("GMS1 file has trailing or missing bytes");
  const std::size_t rw = words_for(p);
  std::vector<std::uint64_t> rows(n * rw, 0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t b = 0; b < row_bytes; ++b) rows[r * rw + b / 8] |= byte(16 + r * row_bytes + b) << (8 * (b % 8));
  try {
    return SampleSet(p, n, std::move(rows), std::move(meta));
  } catch (const DimensionError&) {
    throw FormatError("GMS1 row has bits set beyond p");
  }
}

/// One configuration per line as 0/1 characters, node 0 first.
inline std::string encode_text(const SampleSet& s) {
  std::string out;
  out.reserve(s.size() * (s.num_nodes() + 1));
  for (std::size_t r = 0; r < s.size(); ++r) {
    for (Node i = 0; i < s.num_nodes(); ++i) out.push_back(s.get(r, i) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

inline SampleSet decode_text(const std::string& text, SampleMeta meta = {}) {
  std::istringstream in(text);
  std::string line;
  std::vector<BinaryConfig> rows;
  std::optional<std::size_t> p;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (p && line.size() != *p) throw FormatError("text sample rows have inconsistent length");
    p = line.size();
    BinaryConfig c(line.size());
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] != '0' && line[i] != '1') throw FormatError("text samples must contain only 0 and 1");
      c.set(i, line[i] == '1');
    }
    rows.push_back(std::move(c));
  }
  return SampleSet::from_configs(p.value_or(0), rows, std::move(meta));
}

inline std::string read_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Writes path (GMS1, or text when the path ends in .txt) plus path.meta.json.
inline void save_samples(const std::string& path, const SampleSet& s) {
  const bool text = path.size() >= 4 && path.compare(path.size() - 4, 4, ".txt") == 0;
  write_text_file(path, text ? encode_text(s) : encode_gms1(s));
  write_text_file(path + ".meta.json", meta_to_json(s.meta()).dump(2) + "\n");
}

inline SampleSet load_samples(const std::string& path) {
  SampleMeta meta;
  if (std::ifstream side(path + ".meta.json"); side) meta = meta_from_json(read_json_file(path + ".meta.json"));
  const std::string bytes = read_binary_file(path);
  if (bytes.compare(0, 4, "GMS1") == 0) return decode_gms1(bytes, std::move(meta));
  return decode_text(bytes, std::move(meta));
}

// ---- learner output --------------------------------------------------------

inline json edge_set_to_json(const EdgeSet& es) {
  json edges = json::array();
  for (const Edge& e : es.edges) edges.push_back({e.u, e.v});
  json diag = json::object();
  if (!es.diagnostics.empty()) {
    for (Node a = 0; a < es.p; ++a)
      for (Node b = a + 1; b < es.p; ++b) {
        const auto& d = es.diagnostic(a, b);
        json entry = {{"stat", d.stat ? json(*d.stat) : json(nullptr)}, {"argmax_U", d.argmax_u}};
        diag[std::to_string(a) + "-" + std::to_string(b)] = std::move(entry);
      }
  }
  json out = {{"p", es.p}, {"edges", std::move(edges)}, {"diagnostics", std::move(diag)}};
  if (!es.warnings.empty()) out["warnings"] = es.warnings;
  return out;
}

inline json learn_config_to_json(const LearnConfig& c) {
  return {{"beta", c.beta},   {"h", c.h},
          {"d", c.d},         {"alpha", c.alpha},
          {"delta", c.delta}, {"edge_threshold", c.edge_threshold},
          {"delta_rule", c.rule == DeltaRule::Theorem ? "theorem" : "printed"},
          {"early_exit", c.early_exit}};
}

// ---- statistical dimension -------------------------------------------------

inline json sda_report_to_json(const SdaAuditReport& r) {
  json subsets = json::array();
  for (const auto& s : r.subsets) {
    json e = {{"size", s.size}, {"rho", s.rho}, {"within_inverse_size", s.within_inverse_size}, {"within_bound", s.within_bound}};
    if (s.rho_bruteforce) e["rho_bruteforce"] = *s.rho_bruteforce;
    subsets.push_back(std::move(e));
  }
  return {{"p", r.p},
          {"d", r.d},
          {"c", r.c},
          {"family_size", r.family_size},
          {"subset_size", r.min_subset_size},
          {"bound", r.bound},
          {"inverse_size", 1.0 / static_cast<double>(r.min_subset_size)},
          {"self_correlation", r.self_correlation},
          {"max_offdiagonal", r.max_offdiagonal},
          {"max_identity_gap", r.max_identity_gap},
          {"pass",
           {{"pairwise_correlation_vanishes", r.parity_corr_pass}, {"large_subset_correlation_bound", r.large_set_corr_pass}}},
          {"coverage", r.coverage_note},
          {"subsets", std::move(subsets)}};
}

inline json query_bound_to_json(const QueryBound& q) {
  return {{"ell", q.ell},
          {"gamma", q.gamma},
          {"dimension_term", q.dimension_term},
          {"correlation_term", q.correlation_term},
          {"queries", q.queries},
          {"simplified", q.simplified}};
}

} // namespace repelgm
