// repelgm command-line front end.
//
//   repelgm gen        --spec '{"family":"cycle","p":4}' --out g.json
//   repelgm sample     --graph g.json --model m.json -n 1000 --seed 1 --out s.gms
//   repelgm learn      --samples s.gms --algo weak --beta 5 --h 0.5 --d 3 --alpha 1
//   repelgm exact      --graph g.json --model m.json
//   repelgm statdim    --p 16 --d 2 --subsets 200
//   repelgm experiment --config exp.json --out results/run
//   repelgm bench      --algo simplehc --p 50,100,200,400
//
// Exit status: 0 success, 1 usage or input error, 2 capacity exceeded,
// 3 statdim audit found a violated bound.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "repelgm/repelgm.hpp"

using namespace repelgm;

namespace {

struct Shared {
  std::uint64_t seed = 0;
  std::string graph;
  std::string model;
  std::string out;
  std::string format = "json";
};

void add_shared(CLI::App* cmd, Shared& s) {
  cmd->add_option("--seed", s.seed, "Master seed");
  cmd->add_option("--graph", s.graph, "Graph JSON file");
  cmd->add_option("--model", s.model, "Model JSON file");
  cmd->add_option("--out", s.out, "Output path (stdout when omitted)");
  cmd->add_option("--format", s.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
}

void emit(const Shared& s, const std::string& text) {
  if (s.out.empty()) std::cout << text;
  else write_text_file(s.out, text);
}

std::string json_or_csv(const Shared& s, const json& j, const std::vector<std::string>& cols, const json& rows) {
  if (s.format == "json") return j.dump(2) + "\n";
  std::string out;
  for (std::size_t k = 0; k < cols.size(); ++k) out += (k ? "," : "") + cols[k];
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const auto& v = r.at(cols[k]);
      out += (k ? "," : "") + (v.is_string() ? v.get<std::string>() : v.dump());
    }
    out += "\n";
  }
  return out;
}

Graph need_graph(const Shared& s) {
  if (s.graph.empty()) throw CLI::RequiredError("--graph");
  return graph_from_json(read_json_file(s.graph));
}

ModelSpec need_model(const Shared& s, std::size_t p) {
  if (s.model.empty()) throw CLI::RequiredError("--model");
  json m = read_json_file(s.model);
  if (!m.contains("p")) m["p"] = p;
  return model_from_json(m);
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto tok = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!tok.empty()) out.push_back(std::stoul(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw CLI::ValidationError("--p", "empty list");
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling, exact inference and structure learning for hard-core and antiferromagnetic Ising models"};
  app.require_subcommand(1);

  // gen
  Shared gen_s;
  std::string gen_spec;
  auto* gen = app.add_subcommand("gen", "Generate a graph from a JSON spec");
  add_shared(gen, gen_s);
  gen->add_option("--spec", gen_spec, "Graph spec, e.g. {\"family\":\"grid\",\"rows\":3,\"cols\":3}")->required();

  // sample
  Shared smp_s;
  std::size_t smp_n = 1000;
  bool smp_gibbs = false;
  std::optional<std::uint64_t> smp_burn, smp_thin;
  std::size_t smp_chains = 64, smp_cap = kDefaultEnumerationCap;
  auto* smp = app.add_subcommand("sample", "Draw samples (exact when small enough, else Gibbs)");
  add_shared(smp, smp_s);
  smp->add_option("-n,--samples", smp_n, "Number of samples");
  smp->add_flag("--gibbs", smp_gibbs, "Force Gibbs sampling");
  smp->add_option("--burn-in", smp_burn, "Gibbs burn-in sweeps (default 1000 p)");
  smp->add_option("--thinning", smp_thin, "Gibbs sweeps between samples (default 10 p)");
  smp->add_option("--chains", smp_chains, "Independent Gibbs chains");
  smp->add_option("--cap", smp_cap, "Enumeration cap for exact sampling");

  // learn
  Shared lrn_s;
  std::string lrn_samples, lrn_algo = "simplehc", lrn_rule = "theorem";
  double lrn_beta = 0, lrn_h = 0;
  std::optional<std::size_t> lrn_d, lrn_alpha;
  bool lrn_full = false;
  auto* lrn = app.add_subcommand("learn", "Learn the edge set from a sample file");
  lrn->set_help_flag("--help", "Print this help message and exit");
  add_shared(lrn, lrn_s);
  lrn->add_option("--samples", lrn_samples, "Sample file (GMS1 or 0/1 text)")->required();
  lrn->add_option("--algo", lrn_algo, "Learner")->check(CLI::IsMember({"simplehc", "strong", "weak"}));
  lrn->add_option("--beta", lrn_beta, "Interaction bound");
  lrn->add_option("--h", lrn_h, "Field bound");
  lrn->add_option("--d", lrn_d, "Degree bound");
  lrn->add_option("--alpha", lrn_alpha, "Conditioning budget (weak; derived when omitted)");
  lrn->add_option("--delta-rule", lrn_rule, "Margin formula")->check(CLI::IsMember({"theorem", "printed"}));
  lrn->add_flag("--no-early-exit", lrn_full, "Scan every conditioning set");

  // exact
  Shared ex_s;
  std::optional<Node> ex_a, ex_b;
  std::vector<Node> ex_u;
  std::size_t ex_cap = kDefaultEnumerationCap;
  auto* ex = app.add_subcommand("exact", "Exact partition function, marginals and conditionals");
  add_shared(ex, ex_s);
  ex->add_option("--a", ex_a, "Node a for P(a=1 | b=1, U=0)");
  ex->add_option("--b", ex_b, "Node b");
  ex->add_option("--U", ex_u, "Conditioning set (zeroed)")->delimiter(',');
  ex->add_option("--cap", ex_cap, "Enumeration cap");

  // statdim
  Shared sd_s;
  std::size_t sd_p = 16, sd_d = 2, sd_subsets = 200;
  double sd_c = 1.0, sd_eta = 1.0 / 6.0, sd_success = 2.0 / 3.0, sd_audit = 0.05;
  auto* sd = app.add_subcommand("statdim", "Soft-parity correlation audit and query lower bound");
  add_shared(sd, sd_s);
  sd->add_option("--p", sd_p, "Dimension");
  sd->add_option("--d", sd_d, "Parity size");
  sd->add_option("--c", sd_c, "Parity coefficient");
  sd->add_option("--subsets", sd_subsets, "Random subfamilies to audit");
  sd->add_option("--audit-fraction", sd_audit, "Fraction recomputed by brute force");
  sd->add_option("--eta", sd_eta, "Query bound eta");
  sd->add_option("--success", sd_success, "Query bound success probability");

  // experiment
  Shared xp_s;
  std::string xp_config;
  auto* xp = app.add_subcommand("experiment", "Run a recovery experiment grid");
  add_shared(xp, xp_s);
  xp->add_option("--config", xp_config, "Experiment config JSON")->required();

  // bench
  Shared bn_s;
  std::string bn_algo = "simplehc", bn_p = "50,100,200,400";
  BenchOptions bn;
  auto* bnc = app.add_subcommand("bench", "Learner runtime scaling in p");
  bnc->set_help_flag("--help", "Print this help message and exit");
  add_shared(bnc, bn_s);
  bnc->add_option("--algo", bn_algo, "Learner")->check(CLI::IsMember({"simplehc", "strong", "weak"}));
  bnc->add_option("--p", bn_p, "Comma-separated p values (ascending)");
  bnc->add_option("-n,--samples", bn.n, "Samples per run");
  bnc->add_option("--reps", bn.repetitions, "Repetitions per p");
  bnc->add_option("--degree", bn.degree, "Degree of the random regular graphs");
  bnc->add_option("--alpha", bn.alpha, "Conditioning budget (weak)");
  bnc->add_option("--beta", bn.beta, "Ising interaction (strong, weak)");
  bnc->add_option("--h", bn.h, "Ising field (strong, weak)");
  bnc->add_option("--lambda", bn.lambda, "Hard-core fugacity (simplehc)");
  bool bn_full = false;
  bnc->add_flag("--no-early-exit", bn_full, "Scan every conditioning set");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*gen) {
      auto g = gen_graph(json::parse(gen_spec));
      json out = graph_to_json(g.graph);
      out["meta"] = g.meta;
      emit(gen_s, out.dump(2) + "\n");
    } else if (*smp) {
      const Graph g = need_graph(smp_s);
      const ModelSpec model = need_model(smp_s, g.num_nodes());
      if (smp_s.out.empty()) throw CLI::RequiredError("--out");
      GibbsOptions opt;
      opt.burn_in = smp_burn;
      opt.thinning = smp_thin;
      opt.chains = smp_chains;
      const RngStream rng(smp_s.seed, 0);
      const SampleSet s = smp_gibbs ? gibbs_sample(g, model, smp_n, rng, opt) : sample_auto(g, model, smp_n, rng, smp_cap, opt);
      save_samples(smp_s.out, s);
      json summary = meta_to_json(s.meta());
      summary["p"] = s.num_nodes();
      summary["n"] = s.size();
      std::cout << summary.dump(2) << "\n";
    } else if (*lrn) {
      const SampleSet s = load_samples(lrn_samples);
      const Algorithm algo = parse_algorithm(lrn_algo);
      LearnConfig cfg;
      EdgeSet es;
      if (algo == Algorithm::SimpleHC) {
        es = simple_hc(s);
      } else {
        if (!lrn_d) throw CLI::RequiredError("--d");
        cfg = LearnConfig::derive(lrn_beta, lrn_h, *lrn_d, algo == Algorithm::Strong ? std::optional<std::size_t>(0) : lrn_alpha,
                                  lrn_rule == "printed" ? DeltaRule::Printed : DeltaRule::Theorem);
        cfg.early_exit = !lrn_full;
        es = algo == Algorithm::Strong ? strong_repelling(s, cfg) : weak_repelling(s, cfg);
      }
      for (const auto& w : es.warnings) std::cerr << "warning: " << w << "\n";
      json out = edge_set_to_json(es);
      if (algo != Algorithm::SimpleHC) out["config"] = learn_config_to_json(cfg);
      if (!lrn_s.graph.empty()) {
        const Graph truth = graph_from_json(read_json_file(lrn_s.graph));
        out["exact_recovery"] = exact_recovery(es, truth);
        out["edit_distance"] = edit_distance(es, truth);
      }
      json rows = json::array();
      for (const Edge& e : es.edges) rows.push_back({{"a", e.u}, {"b", e.v}});
      emit(lrn_s, json_or_csv(lrn_s, out, {"a", "b"}, rows));
    } else if (*ex) {
      const Graph g = need_graph(ex_s);
      const ModelSpec model = need_model(ex_s, g.num_nodes());
      const auto dist = enumerate(g, model, ex_cap);
      json marg = json::array();
      json rows = json::array();
      for (Node i = 0; i < g.num_nodes(); ++i) {
        marg.push_back(dist.marginal(i));
        rows.push_back({{"node", i}, {"marginal", dist.marginal(i)}});
      }
      json out = {{"p", g.num_nodes()}, {"log_Z", dist.log_z()}, {"marginals", marg}};
      if (ex_a || ex_b) {
        if (!ex_a || !ex_b) throw CLI::ValidationError("--a/--b", "both nodes are required for a conditional");
        out["conditional"] = {{"a", *ex_a}, {"b", *ex_b}, {"U", ex_u}, {"value", cond_prob_exact(dist, *ex_a, *ex_b, ex_u)}};
      }
      emit(ex_s, json_or_csv(ex_s, out, {"node", "marginal"}, rows));
    } else if (*sd) {
      json out;
      const auto rep = sda_audit(sd_p, sd_d, sd_c, sd_subsets, RngStream(sd_s.seed, 0), sd_audit);
      out["audit"] = sda_report_to_json(rep);
      out["query_bound"] = query_bound_to_json(query_lower_bound(sd_p, sd_d, sd_eta, sd_success));
      json rows = json::array();
      for (const auto& s : rep.subsets) rows.push_back({{"size", s.size}, {"rho", s.rho}, {"within_bound", s.within_bound}});
      emit(sd_s, json_or_csv(sd_s, out, {"size", "rho", "within_bound"}, rows));
      if (!rep.large_set_corr_pass || !rep.parity_corr_pass) return 3;
    } else if (*xp) {
      auto cfg = ExperimentConfig::from_json(read_json_file(xp_config));
      if (!xp_s.out.empty()) cfg.output = xp_s.out;
      if (xp->count("--seed")) cfg.seed = xp_s.seed;
      const auto res = run_experiment(cfg);
      if (cfg.output.empty()) {
        std::cout << (xp_s.format == "csv" ? result_to_csv(res) : result_to_json(res).dump(2) + "\n");
      } else {
        write_experiment(res, cfg.output);
        std::cout << result_to_csv(res);
      }
    } else if (*bnc) {
      bn.seed = bn_s.seed;
      bn.early_exit = !bn_full;
      const auto ps = parse_list(bn_p);
      const auto rep = benchmark_scaling(parse_algorithm(bn_algo), ps, bn);
      json rows = json::array();
      for (const auto& r : rep.rows) rows.push_back({{"p", r.p}, {"n", r.n}, {"median_seconds", r.median_seconds}});
      emit(bn_s, json_or_csv(bn_s, scaling_to_json(rep), {"p", "n", "median_seconds"}, rows));
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
