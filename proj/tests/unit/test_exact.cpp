#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace repelgm;

TEST(Enumerate, SingleEdgeHardCore) {
  auto d = enumerate(Graph(2, {Edge(0, 1)}), ModelSpec::hard_core(2.0));
  EXPECT_NEAR(std::exp(d.log_z()), 5.0, 1e-12);
  EXPECT_NEAR(d.prob(BinaryConfig{1, 0}.to_index()), 0.4, 1e-15);
  EXPECT_TRUE(is_forbidden(d.log_weights()[3]));
}

TEST(Enumerate, EmptyGraphUniform) {
  auto d = enumerate(Graph(2), ModelSpec::hard_core(1.0));
  EXPECT_NEAR(std::exp(d.log_z()), 4.0, 1e-12);
  for (std::uint64_t x = 0; x < 4; ++x) EXPECT_NEAR(d.prob(x), 0.25, 1e-15);
}

TEST(Enumerate, FourCycle) {
  auto g = cycle_graph(4);
  EXPECT_EQ(oracle::count_independent_sets(g), 7u);
  auto d = enumerate(g, ModelSpec::hard_core(1.0));
  EXPECT_NEAR(std::exp(d.log_z()), 7.0, 1e-12);
  const double diag02 = d.prob(0b0101);
  const double diag13 = d.prob(0b1010);
  EXPECT_NEAR(diag02, 1.0 / 7.0, 1e-15);
  EXPECT_NEAR(diag02 + diag13, 2.0 / 7.0, 1e-15);
}

TEST(Enumerate, MatchesOracleAcrossCorpus) {
  RngStream rng(3, 0);
  for (const auto& [name, g] : oracle::corpus()) {
    const std::size_t p = g.num_nodes();
    for (const auto& model : {ModelSpec::hard_core(0.7), ModelSpec::ising(3.0, oracle::random_fields(p, 1.0, rng), 1.0)}) {
      auto d = enumerate(g, model);
      auto ref = oracle::probabilities(g, model);
      double total = 0.0;
      for (std::uint64_t x = 0; x < ref.size(); ++x) {
        EXPECT_NEAR(d.prob(x), ref[x], 1e-12) << name;
        total += d.prob(x);
      }
      EXPECT_NEAR(total, 1.0, 1e-10);
      EXPECT_NEAR(logsumexp(d.log_weights()), d.log_z(), 1e-12 * std::max(1.0, std::abs(d.log_z())));
    }
  }
}

TEST(Enumerate, LargeBetaStaysFinite) {
  auto g = grid_graph(4, 5);
  auto d = enumerate(g, ModelSpec::ising_uniform(10.0, 1.0, 20));
  EXPECT_TRUE(std::isfinite(d.log_z()));
}

TEST(Enumerate, CapacityError) {
  EXPECT_THROW(enumerate(path_graph(26), ModelSpec::hard_core(1.0)), CapacityError);
  EXPECT_THROW(enumerate(path_graph(10), ModelSpec::hard_core(1.0), 8), CapacityError);
}

TEST(CondProbExact, Examples) {
  auto edge = enumerate(Graph(2, {Edge(0, 1)}), ModelSpec::hard_core(3.0));
  EXPECT_EQ(cond_prob_exact(edge, 0, 1), 0.0);
  auto iso = enumerate(Graph(2), ModelSpec::hard_core(1.0));
  EXPECT_NEAR(cond_prob_exact(iso, 0, 1), 0.5, 1e-15);
  // Independent sets of C4 containing node 0 are {0} and {0,2}.
  auto c4 = enumerate(cycle_graph(4), ModelSpec::hard_core(1.0));
  EXPECT_NEAR(cond_prob_exact(c4, 2, 0), 0.5, 1e-15);
}

TEST(CondProbExact, ZeroProbabilityEvent) {
  // σ_0 = 1 never occurs under these weights.
  ExactDistribution d(2, {0.0, kForbidden, 0.0, kForbidden});
  EXPECT_THROW(cond_prob_exact(d, 1, 0), UndefinedConditionalError);
  EXPECT_NEAR(cond_prob_exact(d, 0, 1), 0.0, 0.0);
}

TEST(CondProbExact, AgainstOracle) {
  auto g = grid_graph(2, 3);
  auto model = ModelSpec::ising_uniform(2.0, 0.5, 6);
  auto d = enumerate(g, model);
  auto ref = oracle::probabilities(g, model);
  const std::vector<Node> u{4};
  const double want = oracle::mass(ref, 0b10011, 0b00011) / oracle::mass(ref, 0b10010, 0b00010);
  EXPECT_NEAR(cond_prob_exact(d, 0, 1, u), want, 1e-12);
  EXPECT_THROW(cond_prob_exact(d, 0, 0), DomainError);
  EXPECT_THROW(cond_prob_exact(d, 0, 1, std::vector<Node>{0}), DomainError);
}

TEST(PartitionDecomposition, Examples) {
  auto e = partition_decomposition(enumerate(Graph(2, {Edge(0, 1)}), ModelSpec::hard_core(1.0)), 0, 1);
  EXPECT_NEAR(std::exp(e.neither), 1.0, 1e-15);
  EXPECT_NEAR(std::exp(e.only_j), 1.0, 1e-15);
  EXPECT_NEAR(std::exp(e.only_i), 1.0, 1e-15);
  EXPECT_TRUE(is_forbidden(e.both));

  auto f = partition_decomposition(enumerate(Graph(2), ModelSpec::hard_core(1.0)), 0, 1);
  EXPECT_NEAR(std::exp(f.both), 1.0, 1e-15);

  // Path 0-1-2, λ = 2: Z = 11 = (1 + 2) + 2 + 2 + 4.
  auto dist = enumerate(path_graph(3), ModelSpec::hard_core(2.0));
  auto pp = partition_decomposition(dist, 0, 2);
  EXPECT_NEAR(std::exp(pp.neither), 3.0, 1e-12);
  EXPECT_NEAR(std::exp(pp.only_j), 2.0, 1e-12);
  EXPECT_NEAR(std::exp(pp.only_i), 2.0, 1e-12);
  EXPECT_NEAR(std::exp(pp.both), 4.0, 1e-12);
  EXPECT_NEAR(pp.log_total(), dist.log_z(), 1e-12 * dist.log_z());
}

TEST(PartitionDecomposition, RecombinesAcrossCorpus) {
  for (const auto& [name, g] : oracle::corpus()) {
    auto d = enumerate(g, ModelSpec::ising_uniform(5.0, 1.0, g.num_nodes()));
    for (Node j = 1; j < g.num_nodes(); ++j) {
      auto parts = partition_decomposition(d, 0, j);
      EXPECT_NEAR(parts.log_total(), d.log_z(), 1e-12 * std::abs(d.log_z())) << name;
    }
  }
}

TEST(CylinderTable, AgreesWithDirectMass) {
  auto g = cycle_graph(7);
  auto model = ModelSpec::ising_uniform(2.0, 0.5, 7);
  auto d = enumerate(g, model);
  CylinderTable t(d);
  RngStream rng(9, 0);
  for (int k = 0; k < 200; ++k) {
    const std::uint64_t mask = rng.below(128), value = rng.below(128) & mask;
    EXPECT_NEAR(t.prob(mask, value), std::exp(d.log_mass(mask, value) - d.log_z()), 1e-12);
  }
  EXPECT_NEAR(t.prob(0, 0), 1.0, 1e-12);
}

TEST(MlGraphSearch, AllZerosGivesComplete) {
  auto s = SampleSet::from_configs(3, {BinaryConfig{0, 0, 0}, BinaryConfig{0, 0, 0}});
  EXPECT_EQ(ml_graph_search(s, 1.0), complete_graph(3));
}

TEST(MlGraphSearch, AllPairsCoOccupiedGivesEmpty) {
  auto s = SampleSet::from_configs(3, {BinaryConfig{1, 1, 1}});
  EXPECT_EQ(ml_graph_search(s, 1.0), Graph(3));
}

TEST(MlGraphSearch, EqualsSimpleHc) {
  auto g = Graph(4, {Edge(0, 1), Edge(1, 2), Edge(2, 3)});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto s = sample_exact(g, ModelSpec::hard_core(1.0), 30, RngStream(seed, 0));
    EXPECT_EQ(ml_graph_search(s, 1.0), simple_hc(s).graph());
  }
}

TEST(MlGraphSearch, Capacity) {
  EXPECT_THROW(ml_graph_search(SampleSet::from_configs(7, {BinaryConfig(7)}), 1.0), CapacityError);
}
