#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "repelgm/error.hpp"
#include "repelgm/exact.hpp"
#include "repelgm/generators.hpp"
#include "repelgm/graph.hpp"
#include "repelgm/io.hpp"
#include "repelgm/learner.hpp"
#include "repelgm/model.hpp"
#include "repelgm/rng.hpp"
#include "repelgm/sampler.hpp"

namespace repelgm {

// ---- graph specs -----------------------------------------------------------

struct GeneratedGraph {
  Graph graph;
  json meta; ///< family, parameters, node accounting for the star family
};

/// Builds a graph from a JSON spec:
///   {"family": "path"|"cycle", "p": n}
///   {"family": "grid", "rows": r, "cols": c}
///   {"family": "random_regular", "p": n, "d": k, "seed": s}
///   {"family": "star_family", "m": m, "d": d, "pair": [i, j]}   (pair optional)
///   {"family": "triangle_pendant"}
///   {"family": "complete", "p": n}
///   {"family": "edges", "p": n, "edges": [[i, j], ...]}
inline GeneratedGraph gen_graph(const json& spec) {
  try {
    const auto family = spec.at("family").get<std::string>();
    GeneratedGraph out;
    out.meta = spec;
    if (family == "path") out.graph = path_graph(spec.at("p").get<std::size_t>());
    else if (family == "cycle") out.graph = cycle_graph(spec.at("p").get<std::size_t>());
    else if (family == "grid") out.graph = grid_graph(spec.at("rows").get<std::size_t>(), spec.at("cols").get<std::size_t>());
    else if (family == "random_regular")
      out.graph = random_regular(spec.at("p").get<std::size_t>(), spec.at("d").get<std::size_t>(), spec.value("seed", std::uint64_t{0}));
    else if (family == "complete") out.graph = complete_graph(spec.at("p").get<std::size_t>());
    else if (family == "triangle_pendant") out.graph = triangle_pendant();
    else if (family == "edges") out.graph = graph_from_json(spec);
    else if (family == "star_family") {
      std::optional<Edge> pair;
      if (spec.contains("pair") && !spec.at("pair").is_null()) {
        const auto& pr = spec.at("pair");
        pair = Edge(pr.at(0).get<Node>(), pr.at(1).get<Node>());
      }
      auto sf = star_family(spec.at("m").get<std::size_t>(), spec.at("d").get<std::size_t>(), pair);
      out.graph = std::move(sf.graph);
      out.meta["centers"] = sf.centers;
      out.meta["leaves"] = sf.leaves;
      out.meta["construction_nodes"] = sf.construction_nodes;
      out.meta["stated_nodes"] = sf.stated_nodes;
    } else {
      throw FormatError("unknown graph family '" + family + "'");
    }
    out.meta["p"] = out.graph.num_nodes();
    out.meta["max_degree"] = out.graph.max_degree();
    return out;
  } catch (const json::exception& ex) {
    throw FormatError(std::string("graph spec: ") + ex.what());
  }
}

// ---- configuration ---------------------------------------------------------

struct ExperimentConfig {
  std::vector<json> graphs;        ///< gen_graph specs
  std::vector<json> models;        ///< model specs; Ising may use "beta_factor" instead of "beta"
  json learner = {{"algo", "simplehc"}};
  std::vector<json> sample_counts; ///< integers, or "auto" for the sample-size calculator
  std::size_t replicates = 100;
  std::uint64_t seed = 0;
  std::uint64_t n_cap = 1000000;   ///< ceiling applied to "auto" sample counts
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  GibbsOptions gibbs;
  bool archive = true;             ///< keep each replicate's learned edge list
  std::string output;              ///< base path; writes .json, .csv and .timing.json

  static ExperimentConfig from_json(const json& j) {
    try {
      ExperimentConfig c;
      for (const auto& g : j.at("graphs")) c.graphs.push_back(g);
      for (const auto& m : j.at("models")) c.models.push_back(m);
      if (j.contains("learner")) c.learner = j.at("learner");
      for (const auto& n : j.at("sample_counts")) c.sample_counts.push_back(n);
      c.replicates = j.value("replicates", std::size_t{100});
      c.seed = j.at("seed").get<std::uint64_t>();
      c.n_cap = j.value("n_cap", std::uint64_t{1000000});
      c.enumeration_cap = j.value("enumeration_cap", kDefaultEnumerationCap);
      if (j.contains("gibbs")) {
        const auto& g = j.at("gibbs");
        if (g.contains("burn_in")) c.gibbs.burn_in = g.at("burn_in").get<std::uint64_t>();
        if (g.contains("thinning")) c.gibbs.thinning = g.at("thinning").get<std::uint64_t>();
        c.gibbs.chains = g.value("chains", std::size_t{64});
      }
      c.archive = j.value("archive", true);
      c.output = j.value("output", std::string());
      c.validate();
      return c;
    } catch (const json::exception& ex) {
      throw FormatError(std::string("experiment config: ") + ex.what());
    }
  }

  json to_json() const {
    json g = {{"chains", gibbs.chains}};
    if (gibbs.burn_in) g["burn_in"] = *gibbs.burn_in;
    if (gibbs.thinning) g["thinning"] = *gibbs.thinning;
    return {{"graphs", graphs},   {"models", models},   {"learner", learner},
            {"sample_counts", sample_counts}, {"replicates", replicates}, {"seed", seed},
            {"n_cap", n_cap},     {"enumeration_cap", enumeration_cap}, {"gibbs", g},
            {"archive", archive}};
  }

  void validate() const {
    if (replicates < 1) throw DomainError("replicates must be >= 1");
    if (graphs.empty() || models.empty() || sample_counts.empty()) throw DomainError("experiment grids must be nonempty");
    parse_algorithm(learner.value("algo", std::string("simplehc")));
  }
};

// ---- results ---------------------------------------------------------------

struct ReplicateRecord {
  std::uint64_t stream = 0;
  bool success = false;
  std::size_t edit_distance = 0;
  std::size_t min_filtered = 0;
  std::vector<Edge> edges;
};

struct CellResult {
  std::size_t index = 0;
  json graph;
  json model;
  json learn_config;
  std::string algorithm;
  std::uint64_t n = 0;
  std::size_t p = 0;
  std::size_t d = 0;
  std::vector<Edge> truth;
  std::string sampler;          ///< "exact", "exact-components" or "gibbs"
  bool approximate = false;     ///< Gibbs fallback was used
  std::size_t replicates = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  double mean_edit_distance = 0.0;
  std::size_t min_filtered = 0;   ///< smallest |A_U| seen in any replicate
  double mean_min_filtered = 0.0;
  std::size_t undefined_pairs = 0;
  std::vector<std::string> warnings;
  std::optional<std::string> failure;
  std::vector<ReplicateRecord> archive;
  std::vector<double> learn_seconds; ///< wall clock per learner call; kept out of the result JSON
};

struct ExperimentResult {
  json config;
  std::vector<CellResult> cells;
};

namespace detail {

inline json edges_json(std::span<const Edge> edges) {
  json a = json::array();
  for (const Edge& e : edges) a.push_back({e.u, e.v});
  return a;
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

/// Model for a p-node graph; a scalar Ising "h" becomes homogeneous fields,
/// and "beta_factor" f sets β = f (d + 2 - α)(h + ln 2).
inline ModelSpec instantiate_model(const json& spec, std::size_t p, std::size_t d, std::size_t alpha) {
  json m = spec;
  if (m.value("kind", std::string()) == "ising") {
    m["p"] = p;
    if (!m.contains("beta") && m.contains("beta_factor")) {
      const double h = m.at("h").is_number() ? std::abs(m.at("h").get<double>()) : m.value("h_bound", 0.0);
      m["beta"] = m.at("beta_factor").get<double>() * static_cast<double>(d + 2 - alpha) * (h + ln2());
    }
  }
  return model_from_json(m);
}

inline LearnConfig instantiate_learner(const json& spec, const ModelSpec& model, std::size_t d) {
  if (!model.is_ising()) throw DomainError("repelling learners need an Ising model");
  const auto& m = model.ising_params();
  std::optional<std::size_t> alpha;
  if (spec.contains("alpha") && !spec.at("alpha").is_null()) alpha = spec.at("alpha").get<std::size_t>();
  const auto rule = spec.value("delta_rule", std::string("theorem")) == "printed" ? DeltaRule::Printed : DeltaRule::Theorem;
  auto cfg = LearnConfig::derive(m.beta, m.field_bound, d, alpha, rule);
  cfg.early_exit = spec.value("early_exit", true);
  return cfg;
}

inline EdgeSet run_learner(Algorithm algo, const SampleSet& s, const LearnConfig& cfg) {
  switch (algo) {
    case Algorithm::SimpleHC: return simple_hc(s);
    case Algorithm::Strong: return strong_repelling(s, cfg);
    case Algorithm::Weak: return weak_repelling(s, cfg);
  }
  throw DomainError("unknown algorithm");
}

} // namespace detail

inline json cell_to_json(const CellResult& c) {
  json j = {{"cell", c.index},
            {"graph", c.graph},
            {"model", c.model},
            {"algorithm", c.algorithm},
            {"learn_config", c.learn_config},
            {"n", c.n},
            {"p", c.p},
            {"d", c.d},
            {"truth", detail::edges_json(c.truth)},
            {"sampler", c.sampler},
            {"approximate_sampling", c.approximate},
            {"replicates", c.replicates},
            {"successes", c.successes},
            {"success_rate", c.success_rate},
            {"mean_edit_distance", c.mean_edit_distance},
            {"min_effective_samples", c.min_filtered},
            {"mean_min_effective_samples", c.mean_min_filtered},
            {"undefined_pairs", c.undefined_pairs},
            {"warnings", c.warnings},
            {"failure", c.failure ? json(*c.failure) : json(nullptr)}};
  if (!c.archive.empty()) {
    json a = json::array();
    for (const auto& r : c.archive)
      a.push_back({{"stream", r.stream}, {"success", r.success}, {"edit_distance", r.edit_distance},
                   {"min_effective_samples", r.min_filtered}, {"edges", detail::edges_json(r.edges)}});
    j["archive"] = std::move(a);
  }
  return j;
}

inline json result_to_json(const ExperimentResult& r) {
  json cells = json::array();
  for (const auto& c : r.cells) cells.push_back(cell_to_json(c));
  return {{"config", r.config}, {"cells", std::move(cells)}};
}

inline std::string result_to_csv(const ExperimentResult& r) {
  std::string out = "cell,family,p,d,model,algorithm,n,sampler,replicates,successes,success_rate,mean_edit_distance,min_effective_samples,failure\n";
  for (const auto& c : r.cells) {
    std::string model = c.model.value("kind", std::string());
    if (c.model.contains("lambda")) model += " lambda=" + c.model.at("lambda").dump();
    if (c.model.contains("beta")) model += " beta=" + c.model.at("beta").dump();
    if (c.model.contains("h_bound")) model += " h=" + c.model.at("h_bound").dump();
    std::string failure = c.failure.value_or("");
    std::replace(failure.begin(), failure.end(), ',', ';');
    out += std::to_string(c.index) + "," + c.graph.value("family", std::string()) + "," + std::to_string(c.p) + "," + std::to_string(c.d) +
           "," + model + "," + c.algorithm + "," + std::to_string(c.n) + "," + c.sampler + "," + std::to_string(c.replicates) + "," +
           std::to_string(c.successes) + "," + json(c.success_rate).dump() + "," + json(c.mean_edit_distance).dump() + "," +
           std::to_string(c.min_filtered) + "," + failure + "\n";
  }
  return out;
}

inline json timing_to_json(const ExperimentResult& r) {
  json cells = json::array();
  for (const auto& c : r.cells) {
    double total = std::accumulate(c.learn_seconds.begin(), c.learn_seconds.end(), 0.0);
    cells.push_back({{"cell", c.index},
                     {"calls", c.learn_seconds.size()},
                     {"median_seconds", detail::median(c.learn_seconds)},
                     {"mean_seconds", c.learn_seconds.empty() ? 0.0 : total / static_cast<double>(c.learn_seconds.size())}});
  }
  return {{"cells", std::move(cells)}};
}

/// Runs every (graph, model, n) cell for cfg.replicates replicates. Replicate r
/// of cell c samples from RngStream(seed, c).child(r). A module error aborts
/// only its cell, whose failure reason is recorded.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult res;
  res.config = cfg.to_json();
  const Algorithm algo = parse_algorithm(cfg.learner.value("algo", std::string("simplehc")));
  std::size_t index = 0;
  for (const auto& gspec : cfg.graphs) {
    for (const auto& mspec : cfg.models) {
      for (const auto& nspec : cfg.sample_counts) {
        CellResult cell;
        cell.index = index++;
        cell.graph = gspec;
        cell.model = mspec;
        cell.algorithm = algorithm_name(algo);
        try {
          const auto gen = gen_graph(gspec);
          const Graph& g = gen.graph;
          cell.graph = gen.meta;
          cell.p = g.num_nodes();
          cell.d = cfg.learner.value("d", g.max_degree());
          cell.truth.assign(g.edges().begin(), g.edges().end());
          const std::size_t alpha_hint = algo == Algorithm::Weak ? cfg.learner.value("alpha", std::size_t{0}) : 0;
          const ModelSpec model = detail::instantiate_model(mspec, cell.p, cell.d, alpha_hint);
          cell.model = model_to_json(model);
          if (model.is_ising()) cell.model.erase("h");
          if (model.is_ising()) cell.model["h_fields"] = model.ising_params().fields;

          LearnConfig lc;
          if (algo != Algorithm::SimpleHC) {
            lc = detail::instantiate_learner(cfg.learner, model, cell.d);
            cell.learn_config = learn_config_to_json(lc);
          } else {
            if (!model.is_hard_core()) throw DomainError("simplehc needs a hard-core model");
            cell.learn_config = json::object();
          }

          if (nspec.is_string()) {
            if (nspec.get<std::string>() != "auto") throw FormatError("sample count must be an integer or \"auto\"");
            const std::uint64_t need = algo == Algorithm::SimpleHC
                                           ? required_samples_simple_hc(cell.p, cell.d, model.hard_core_params().lambda)
                                           : required_samples_repelling(cell.p, lc);
            cell.n = std::min(need, cfg.n_cap);
          } else {
            cell.n = nspec.get<std::uint64_t>();
          }
          if (cell.n == 0) throw DomainError("sample count must be positive");

          std::size_t largest = 0;
          for (const auto& comp : g.components()) largest = std::max(largest, comp.size());
          cell.approximate = largest > cfg.enumeration_cap;

          // One enumeration per cell when the graph is connected and small.
          std::optional<ExactDistribution> dist;
          if (!cell.approximate && g.components().size() <= 1) dist = enumerate(g, model, cfg.enumeration_cap);
          const std::string fp = model_fingerprint(g, model);

          const RngStream cell_rng(cfg.seed, cell.index);
          double edit_total = 0.0, filtered_total = 0.0;
          cell.min_filtered = std::numeric_limits<std::size_t>::max();
          for (std::size_t r = 0; r < cfg.replicates; ++r) {
            const RngStream rng = cell_rng.child(r);
            SampleSet s;
            if (cell.approximate) s = gibbs_sample(g, model, cell.n, rng, cfg.gibbs);
            else if (dist) {
              s = sample_exact(*dist, cell.n, rng, fp);
              check_hard_core_samples(g, model, s);
            } else {
              s = sample_exact(g, model, cell.n, rng, cfg.enumeration_cap);
            }
            cell.sampler = s.meta().sampler;

            const auto t0 = std::chrono::steady_clock::now();
            const EdgeSet learned = detail::run_learner(algo, s, lc);
            const auto t1 = std::chrono::steady_clock::now();
            cell.learn_seconds.push_back(std::chrono::duration<double>(t1 - t0).count());

            ReplicateRecord rec;
            rec.stream = rng.index();
            rec.success = exact_recovery(learned, g);
            rec.edit_distance = edit_distance(learned, g);
            rec.min_filtered = learned.min_filtered_samples;
            if (cfg.archive) rec.edges = learned.edges;
            cell.successes += rec.success ? 1 : 0;
            edit_total += static_cast<double>(rec.edit_distance);
            filtered_total += static_cast<double>(rec.min_filtered);
            cell.min_filtered = std::min(cell.min_filtered, rec.min_filtered);
            cell.undefined_pairs += learned.undefined_pairs;
            for (const auto& w : learned.warnings)
              if (cell.warnings.size() < 8) cell.warnings.push_back("replicate " + std::to_string(r) + ": " + w);
            if (cfg.archive) cell.archive.push_back(std::move(rec));
            ++cell.replicates;
          }
          cell.success_rate = static_cast<double>(cell.successes) / static_cast<double>(cell.replicates);
          cell.mean_edit_distance = edit_total / static_cast<double>(cell.replicates);
          cell.mean_min_filtered = filtered_total / static_cast<double>(cell.replicates);
        } catch (const Error& ex) {
          cell.failure = ex.what();
        } catch (const json::exception& ex) {
          cell.failure = std::string("config: ") + ex.what();
        }
        if (cell.replicates == 0) cell.min_filtered = 0;
        res.cells.push_back(std::move(cell));
      }
    }
  }
  return res;
}

/// Writes base.json, base.csv and base.timing.json (wall-clock numbers live
/// only in the timing file so the result file is reproducible byte for byte).
inline void write_experiment(const ExperimentResult& r, const std::string& base) {
  write_text_file(base + ".json", result_to_json(r).dump(2) + "\n");
  write_text_file(base + ".csv", result_to_csv(r));
  write_text_file(base + ".timing.json", timing_to_json(r).dump(2) + "\n");
}

/// True when every archived replicate's success flag matches Ê == E.
inline bool archive_consistent(const json& result) {
  for (const auto& cell : result.at("cells")) {
    if (!cell.contains("archive")) continue;
    const auto truth = cell.at("truth");
    for (const auto& rec : cell.at("archive"))
      if (rec.at("success").get<bool>() != (rec.at("edges") == truth)) return false;
  }
  return true;
}

// ---- minimal sample size ---------------------------------------------------

/// For simpleHC on a hard-core model, recovery at sample size n holds exactly
/// when every non-edge has a witness among the first n samples (true edges are
/// never co-occupied). completion_times draws one exact sample stream per
/// replicate (RngStream(seed, 0).child(r), in blocks) and returns, for each
/// replicate, the first n at which recovery holds; the success rate at n is
/// then the fraction of completion times <= n.
inline std::vector<std::uint64_t> simple_hc_completion_times(const Graph& g, const ModelSpec& model, std::size_t replicates,
                                                             std::uint64_t seed, std::uint64_t max_n = 100000000,
                                                             std::size_t block = 4096) {
  if (!model.is_hard_core()) throw DomainError("completion times need a hard-core model");
  const auto pairs = non_edges(g);
  std::vector<std::uint64_t> out;
  out.reserve(replicates);
  const RngStream base(seed, 0);
  for (std::size_t r = 0; r < replicates; ++r) {
    const RngStream rep = base.child(r);
    std::vector<std::uint64_t> first(pairs.size(), 0);
    std::size_t open = pairs.size();
    std::uint64_t seen = 0;
    for (std::uint64_t b = 0; open > 0; ++b) {
      if (seen >= max_n) throw CapacityError("recovery not reached within " + std::to_string(max_n) + " samples");
      const auto s = sample_exact(g, model, block, rep.child(b));
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (first[k] != 0) continue;
        auto ca = s.column(pairs[k].u);
        auto cb = s.column(pairs[k].v);
        for (std::size_t w = 0; w < ca.size(); ++w) {
          const std::uint64_t hit = ca[w] & cb[w];
          if (hit) {
            first[k] = seen + w * 64 + static_cast<std::uint64_t>(std::countr_zero(hit)) + 1;
            --open;
            break;
          }
        }
      }
      seen += block;
    }
    out.push_back(pairs.empty() ? 1 : *std::max_element(first.begin(), first.end()));
  }
  return out;
}

/// Smallest n whose empirical success rate over the given completion times
/// reaches `level` (the ⌈level R⌉-th order statistic).
inline std::uint64_t minimal_n_for_rate(std::vector<std::uint64_t> times, double level) {
  if (times.empty()) throw DomainError("no completion times");
  std::sort(times.begin(), times.end());
  auto k = static_cast<std::size_t>(std::ceil(level * static_cast<double>(times.size()) - 1e-9));
  k = std::clamp<std::size_t>(k, 1, times.size());
  return times[k - 1];
}

// ---- runtime scaling -------------------------------------------------------

struct ScalingRow {
  std::size_t p = 0;
  std::uint64_t n = 0;
  double median_seconds = 0.0;
  std::vector<double> seconds;
};

struct ScalingReport {
  std::string algorithm;
  std::vector<ScalingRow> rows;
  double slope = 0.0; ///< least-squares slope of log(median) against log(p)
};

/// Least-squares slope of log y against log x.
inline double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope fit needs at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

struct BenchOptions {
  std::size_t degree = 3;           ///< random regular benchmark graphs
  std::uint64_t n = 20000;
  std::size_t repetitions = 5;
  std::uint64_t seed = 1;
  double lambda = 1.0;              ///< hard-core (simplehc)
  double beta = 6.0, h = 0.5;       ///< Ising (strong, weak)
  std::optional<std::size_t> alpha; ///< weak only
  bool early_exit = true;
  std::uint64_t burn_in = 50;       ///< light Gibbs burn-in; the learners' cost does not depend on mixing
};

/// Median wall clock of the learner over `repetitions` calls per p, on samples
/// from a random d-regular graph, with a log-log slope fit.
inline ScalingReport benchmark_scaling(Algorithm algo, std::span<const std::size_t> p_values, const BenchOptions& opt) {
  if (!std::is_sorted(p_values.begin(), p_values.end())) throw DomainError("p sweep must be sorted ascending");
  if (opt.repetitions < 1) throw DomainError("need at least one repetition");
  ScalingReport rep;
  rep.algorithm = algorithm_name(algo);
  std::vector<double> xs, ys;
  for (std::size_t p : p_values) {
    const Graph g = random_regular(p, opt.degree, opt.seed);
    const ModelSpec model = algo == Algorithm::SimpleHC ? ModelSpec::hard_core(opt.lambda) : ModelSpec::ising_uniform(opt.beta, opt.h, p);
    GibbsOptions go;
    go.burn_in = opt.burn_in;
    go.thinning = 1;
    const auto s = gibbs_sample(g, model, opt.n, RngStream(opt.seed, p), go);
    LearnConfig lc;
    if (algo != Algorithm::SimpleHC) {
      lc = LearnConfig::derive(opt.beta, opt.h, opt.degree, algo == Algorithm::Weak ? opt.alpha : std::optional<std::size_t>(0));
      lc.early_exit = opt.early_exit;
    }
    ScalingRow row;
    row.p = p;
    row.n = opt.n;
    for (std::size_t k = 0; k < opt.repetitions; ++k) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto es = detail::run_learner(algo, s, lc);
      const auto t1 = std::chrono::steady_clock::now();
      row.seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
      if (es.p != p) throw std::logic_error("learner returned the wrong dimension");
    }
    row.median_seconds = detail::median(row.seconds);
    xs.push_back(static_cast<double>(p));
    ys.push_back(row.median_seconds);
    rep.rows.push_back(std::move(row));
  }
  if (xs.size() >= 2) rep.slope = loglog_slope(xs, ys);
  return rep;
}

inline json scaling_to_json(const ScalingReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back({{"p", row.p}, {"n", row.n}, {"median_seconds", row.median_seconds}, {"seconds", row.seconds}});
  return {{"algorithm", r.algorithm}, {"rows", std::move(rows)}, {"slope", r.slope}};
}

} // namespace repelgm
