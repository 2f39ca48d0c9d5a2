#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace repelgm;

TEST(SimpleHc, TraceExample) {
  auto s = SampleSet::from_configs(3, {BinaryConfig{1, 1, 0}, BinaryConfig{0, 1, 1}});
  auto es = simple_hc(s);
  ASSERT_EQ(es.edges.size(), 1u);
  EXPECT_EQ(es.edges[0], Edge(0, 2));
  EXPECT_EQ(*es.diagnostic(0, 1).stat, 1.0);
}

TEST(SimpleHc, AllZerosGivesCompleteGraph) {
  auto s = SampleSet::from_configs(4, {BinaryConfig(4), BinaryConfig(4)});
  EXPECT_EQ(simple_hc(s).edges.size(), 6u);
  EXPECT_THROW(simple_hc(SampleSet::from_configs(4, std::span<const BinaryConfig>{})), DomainError);
}

TEST(SimpleHc, FourCycleRecoveryRate) {
  // n = 10 γ^{-1} ln p with γ = 1/32 (d = 2, λ = 1).
  auto g = cycle_graph(4);
  const double gamma = hard_core_gamma(2, 1.0);
  EXPECT_DOUBLE_EQ(gamma, 1.0 / 32.0);
  const auto n = static_cast<std::size_t>(std::ceil(10.0 / gamma * std::log(4.0)));
  auto dist = enumerate(g, ModelSpec::hard_core(1.0));
  int ok = 0;
  for (std::uint64_t t = 0; t < 100; ++t) ok += exact_recovery(simple_hc(sample_exact(dist, n, RngStream(100, t))), g) ? 1 : 0;
  EXPECT_GE(ok, 95);
}

TEST(SimpleHc, NoFalseNegativesAndEquivariance) {
  auto g = random_regular(10, 3, 3);
  auto s = sample_exact(g, ModelSpec::hard_core(1.0), 150, RngStream(8, 0));
  auto es = simple_hc(s);
  for (const Edge& e : g.edges()) EXPECT_TRUE(es.contains(e.u, e.v));

  std::vector<Node> perm(10);
  for (Node i = 0; i < 10; ++i) perm[i] = (i * 7 + 3) % 10;
  std::vector<BinaryConfig> rows;
  for (std::size_t k = 0; k < s.size(); ++k) {
    BinaryConfig c(10);
    for (Node i = 0; i < 10; ++i) c.set(perm[i], s.get(k, i));
    rows.push_back(c);
  }
  auto es2 = simple_hc(SampleSet::from_configs(10, rows));
  std::vector<Edge> mapped;
  for (const Edge& e : es.edges) mapped.emplace_back(perm[e.u], perm[e.v]);
  std::sort(mapped.begin(), mapped.end());
  EXPECT_EQ(es2.edges, mapped);
}

TEST(EmpiricalCondProb, Examples) {
  auto s = SampleSet::from_configs(2, {BinaryConfig{1, 1}, BinaryConfig{0, 1}, BinaryConfig{1, 0}, BinaryConfig{0, 0}});
  EXPECT_DOUBLE_EQ(*empirical_cond_prob(s, 0, 1), 0.5);
  EXPECT_FALSE(empirical_cond_prob(SampleSet::from_configs(2, {BinaryConfig{0, 0}}), 0, 1).has_value());
  auto edge = sample_exact(Graph(2, {Edge(0, 1)}), ModelSpec::hard_core(1.0), 100000, RngStream(1, 0));
  EXPECT_EQ(*empirical_cond_prob(edge, 0, 1), 0.0);
}

TEST(FilterSamples, Examples) {
  auto s = SampleSet::from_configs(2, {BinaryConfig{1, 0}, BinaryConfig{0, 1}, BinaryConfig{0, 0}});
  EXPECT_EQ(filter_samples(s, std::span<const Node>{}).rows().size(), s.rows().size());
  auto f = filter_samples(s, {0});
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.config(0), (BinaryConfig{0, 1}));
  EXPECT_EQ(f.config(1), (BinaryConfig{0, 0}));
  EXPECT_EQ(f.meta().conditioning, (std::vector<Node>{0}));
}

TEST(FilterSamples, IsolatedFairBits) {
  const std::size_t n = 100000;
  auto s = sample_exact(Graph(4), ModelSpec::ising_uniform(1.0, 0.0, 4), n, RngStream(2, 0));
  const double frac = static_cast<double>(filter_samples(s, {1, 3}).size()) / n;
  EXPECT_LT(std::abs(frac - 0.25) / std::sqrt(0.25 * 0.75 / n), 3.0);
}

TEST(FilterSamples, ConditionalIdentity) {
  auto g = grid_graph(3, 3);
  auto s = sample_exact(g, ModelSpec::ising_uniform(2.0, 0.5, 9), 20000, RngStream(3, 0));
  const std::vector<Node> u{4, 7};
  auto f = filter_samples(s, u);
  std::size_t nb = 0, nab = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s.get(k, 4) || s.get(k, 7) || !s.get(k, 1)) continue;
    ++nb;
    nab += s.get(k, 0) ? 1 : 0;
  }
  EXPECT_EQ(*empirical_cond_prob(f, 0, 1), static_cast<double>(nab) / static_cast<double>(nb));
}

TEST(LearnConfig, Thresholds) {
  EXPECT_NEAR(edge_threshold(5.0, 1.0), 0.01798620996209156, 1e-15);
  EXPECT_EQ(auto_alpha(3.0, 0.1, 4), 1u);
  EXPECT_EQ(auto_alpha(100.0, 0.1, 4), 0u);
  EXPECT_EQ(auto_alpha(0.01, 0.1, 4), 4u);
  EXPECT_NEAR(theorem_delta(0.5, 3, 1), 1.0 / (4.0 * (1.0 + 4.0 * std::exp(1.5))), 1e-15);
  EXPECT_NEAR(printed_strong_delta(1.0, 2), 1.0 / std::pow(1.0 + 4.0 * std::exp(1.0), 2), 1e-15);
  EXPECT_EQ(LearnConfig::derive(5.0, 1.0, 3).alpha, 1u);
  auto cfg = LearnConfig::derive(6.0, 1.0, 3);
  EXPECT_EQ(cfg.alpha, 0u);
  EXPECT_NEAR(cfg.decision_threshold(), cfg.edge_threshold + cfg.delta, 0.0);
  auto printed = LearnConfig::derive(5.0, 1.0, 3, 0, DeltaRule::Printed);
  EXPECT_NEAR(printed.delta, printed_strong_delta(1.0, 3), 0.0);
  EXPECT_THROW(LearnConfig::derive(1.0, 0.5, 2, 3), DomainError);
  EXPECT_THROW(LearnConfig::derive(-1.0, 0.5, 2), DomainError);
}

TEST(StrongRepelling, ZeroEstimateIsEdge) {
  auto s = sample_exact(Graph(2, {Edge(0, 1)}), ModelSpec::hard_core(1.0), 1000, RngStream(4, 0));
  auto es = strong_repelling(s, LearnConfig::derive(5.0, 1.0, 1));
  ASSERT_EQ(es.edges.size(), 1u);
}

TEST(StrongRepelling, UndefinedPairIsNonEdgeWithWarning) {
  auto s = SampleSet::from_configs(3, {BinaryConfig{1, 0, 0}, BinaryConfig{0, 0, 0}});
  auto es = strong_repelling(s, LearnConfig::derive(5.0, 1.0, 2));
  EXPECT_FALSE(es.contains(1, 2));
  EXPECT_TRUE(es.contains(0, 1));
  EXPECT_EQ(es.undefined_pairs, 1u);
  ASSERT_EQ(es.warnings.size(), 1u);
  EXPECT_NE(es.warnings[0].find("1-2"), std::string::npos);
}

TEST(StrongRepelling, FourCycleRecovery) {
  auto g = cycle_graph(4);
  auto model = ModelSpec::ising_uniform(6.0, 0.5, 4);
  auto cfg = LearnConfig::derive(6.0, 0.5, 2, 0);
  const auto n = std::min<std::uint64_t>(required_samples_repelling(4, cfg), 200000);
  auto dist = enumerate(g, model);
  int ok = 0;
  for (std::uint64_t t = 0; t < 100; ++t) ok += exact_recovery(strong_repelling(sample_exact(dist, n, RngStream(200, t)), cfg), g) ? 1 : 0;
  EXPECT_GE(ok, 95);
}

TEST(WeakRepelling, AlphaZeroEqualsStrong) {
  auto g = grid_graph(3, 3);
  auto s = sample_exact(g, ModelSpec::ising_uniform(4.0, 0.5, 9), 5000, RngStream(5, 0));
  auto cfg = LearnConfig::derive(4.0, 0.5, 4, 0);
  EXPECT_EQ(weak_repelling(s, cfg).edges, strong_repelling(s, cfg).edges);
}

TEST(WeakRepelling, StatisticIsMaxOverConditioningSets) {
  auto g = triangle_pendant();
  auto s = sample_exact(g, ModelSpec::ising_uniform(4.0, 0.5, 4), 4000, RngStream(6, 0));
  auto cfg = LearnConfig::derive(4.0, 0.5, 3, 1);
  cfg.early_exit = false;
  auto es = weak_repelling(s, cfg);
  for (Node a = 0; a < 4; ++a)
    for (Node b = a + 1; b < 4; ++b) {
      double best = -1;
      std::vector<Node> arg;
      std::vector<std::vector<Node>> us{{}};
      for (Node u = 0; u < 4; ++u)
        if (u != a && u != b) us.push_back({u});
      for (const auto& u : us) {
        auto f = filter_samples(s, u);
        for (auto v : {empirical_cond_prob(f, a, b), empirical_cond_prob(f, b, a)})
          if (v && *v > best) {
            best = *v;
            arg = u;
          }
      }
      const auto& d = es.diagnostic(a, b);
      ASSERT_TRUE(d.stat.has_value());
      EXPECT_DOUBLE_EQ(*d.stat, best);
      EXPECT_EQ(es.contains(a, b), best <= cfg.decision_threshold());
    }
}

TEST(WeakRepelling, EarlyExitPreservesDecisions) {
  auto g = random_regular(10, 3, 2);
  auto s = sample_exact(g, ModelSpec::ising_uniform(4.0, 0.5, 10), 3000, RngStream(7, 0));
  auto cfg = LearnConfig::derive(4.0, 0.5, 3, 2);
  auto fast = weak_repelling(s, cfg);
  cfg.early_exit = false;
  auto full = weak_repelling(s, cfg);
  EXPECT_EQ(fast.edges, full.edges);
}

TEST(RequiredSamples, SimpleHc) {
  EXPECT_DOUBLE_EQ(hard_core_gamma(3, 1.0), 1.0 / 128.0);
  EXPECT_EQ(required_samples_simple_hc(100, 3, 1.0), 1769u);
  EXPECT_DOUBLE_EQ(hard_core_gamma(3, 1e-9), 1.0 / 128.0);
  EXPECT_DOUBLE_EQ(hard_core_gamma(2, 2.0), 1.0 / (32.0 * 16.0));
}

TEST(RequiredSamples, Repelling) {
  auto cfg = LearnConfig::derive(6.0, 0.5, 2, 0);
  const double q = 1.0 / (1.0 + 4.0 * std::exp(1.5));
  const double want = 2.0 * (2.0 / (q * q * cfg.delta * cfg.delta)) * std::log(8.0 * 16.0 / 0.25);
  EXPECT_EQ(required_samples_repelling(4, cfg), static_cast<std::uint64_t>(std::ceil(want)));
  auto cfg1 = LearnConfig::derive(6.0, 0.5, 2, 1);
  const double want1 = 2.0 * (1.0 + std::exp(0.5)) * (2.0 / (q * q * cfg1.delta * cfg1.delta)) * std::log(8.0 * 16.0 / 0.25);
  EXPECT_EQ(required_samples_repelling(4, cfg1), static_cast<std::uint64_t>(std::ceil(want1)));
}

TEST(LowerBound, Examples) {
  auto lb = lower_bound_samples_for_stars(300, 4, 1.0);
  EXPECT_DOUBLE_EQ(lb.q, 0.25);
  EXPECT_NEAR(lb.samples, 71.35, 0.01);
  EXPECT_DOUBLE_EQ(lower_bound_samples_for_stars(10, 3, 2.0).q, 1.0 / 3.0);
  auto deg = lower_bound_samples_for_stars(300, 4, 0.0);
  EXPECT_TRUE(deg.degenerate);
  EXPECT_EQ(deg.samples, 0.0);
  EXPECT_FALSE(deg.warning.empty());
  EXPECT_TRUE(lower_bound_samples_for_stars(300, 2, 1.0).degenerate);
  EXPECT_THROW(lower_bound_samples(10, 1, 1.0), DomainError);
  EXPECT_THROW(lower_bound_samples(10, 4, 1.0), DomainError);
  EXPECT_NEAR(lower_bound_samples(900, 4, 1.0).samples, lb.samples, 1e-12);
}

TEST(CondProbEst, DeviationFrequencyBelowZeta) {
  // Concentration bound n = (2 / q² ε²) ln(8 p² / ζ) with q the occupancy floor.
  auto g = cycle_graph(4);
  const double h = 0.5, eps = 0.1, zeta = 0.1;
  auto model = ModelSpec::ising_uniform(2.0, h, 4);
  const double q = 1.0 / (1.0 + 4.0 * std::exp(3.0 * h));
  const auto n = static_cast<std::size_t>(std::ceil(2.0 / (q * q * eps * eps) * std::log(8.0 * 16.0 / zeta)));
  auto dist = enumerate(g, model);
  std::size_t bad = 0, total = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto s = sample_exact(dist, n, RngStream(300, t));
    for (Node a = 0; a < 4; ++a)
      for (Node b = 0; b < 4; ++b) {
        if (a == b) continue;
        ++total;
        bad += std::abs(*empirical_cond_prob(s, a, b) - cond_prob_exact(dist, a, b)) > eps ? 1 : 0;
      }
  }
  EXPECT_LE(static_cast<double>(bad) / static_cast<double>(total), zeta);
}

TEST(Algorithm, Parse) {
  EXPECT_EQ(parse_algorithm("weak"), Algorithm::Weak);
  EXPECT_STREQ(algorithm_name(Algorithm::SimpleHC), "simplehc");
  EXPECT_THROW(parse_algorithm("greedy"), DomainError);
}

TEST(Io, EdgeSetJson) {
  auto s = SampleSet::from_configs(3, {BinaryConfig{1, 1, 0}});
  auto j = edge_set_to_json(weak_repelling(s, LearnConfig::derive(4.0, 0.5, 2, 1)));
  EXPECT_EQ(j.at("p"), 3);
  EXPECT_TRUE(j.at("diagnostics").contains("0-1"));
  EXPECT_TRUE(j.at("diagnostics").at("0-1").contains("argmax_U"));
}
