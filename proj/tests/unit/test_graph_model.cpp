#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace repelgm;

TEST(Graph, NormalizesAndDedups) {
  Graph g(4, {Edge(2, 1), Edge(1, 2), Edge(3, 0)});
  ASSERT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.edges()[0], Edge(0, 3));
  EXPECT_EQ(g.edges()[1], Edge(1, 2));
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_EQ(g.max_degree(), 1u);
}

TEST(Graph, RejectsSelfLoopAndRange) {
  EXPECT_THROW(Graph(3, {Edge(1, 1)}), DomainError);
  EXPECT_THROW(Graph(3, {Edge(0, 3)}), IndexError);
}

TEST(Graph, AdjacencyAgreesWithEdges) {
  for (const auto& [name, g] : oracle::corpus()) {
    std::size_t total = 0, dmax = 0;
    for (Node i = 0; i < g.num_nodes(); ++i) {
      total += g.degree(i);
      dmax = std::max(dmax, g.degree(i));
      for (Node j : g.neighbors(i)) EXPECT_TRUE(g.has_edge(i, j)) << name;
    }
    EXPECT_EQ(total, 2 * g.num_edges()) << name;
    EXPECT_EQ(dmax, g.max_degree()) << name;
  }
}

TEST(Hamiltonian, SingleEdge) {
  Graph g(2, {Edge(0, 1)});
  auto m = ModelSpec::ising(1.0, {0.5, 0.5}, 0.5);
  EXPECT_DOUBLE_EQ(hamiltonian(g, m, {1, 1}), 0.0);
  EXPECT_DOUBLE_EQ(hamiltonian(g, m, {0, 0}), 0.0);
}

TEST(Hamiltonian, AlternatingFourCycle) {
  auto g = cycle_graph(4);
  auto m = ModelSpec::ising_uniform(2.0, 0.3, 4);
  EXPECT_NEAR(hamiltonian(g, m, {1, 0, 1, 0}), 0.6, 1e-15);
}

TEST(Hamiltonian, DimensionError) {
  auto g = cycle_graph(4);
  EXPECT_THROW(hamiltonian(g, ModelSpec::hard_core(1.0), BinaryConfig{1, 0}), DimensionError);
  EXPECT_THROW(hamiltonian(g, ModelSpec::ising_uniform(1.0, 0.0, 3), BinaryConfig{1, 0, 0, 0}), DimensionError);
}

TEST(Hamiltonian, HardCoreSentinelIffNotIndependent) {
  auto g = grid_graph(2, 3);
  auto m = ModelSpec::hard_core(2.0);
  for (std::uint64_t x = 0; x < 64; ++x) {
    auto s = BinaryConfig::from_index(x, 6);
    const double e = hamiltonian(g, m, s);
    EXPECT_EQ(is_forbidden(e), !is_independent_set(g, s));
    EXPECT_FALSE(std::isnan(e));
    if (!is_forbidden(e)) EXPECT_NEAR(e, static_cast<double>(s.ones()) * std::log(2.0), 1e-12);
  }
}

TEST(Hamiltonian, AdditiveOverDisjointUnion) {
  auto g1 = cycle_graph(4);
  auto g2 = path_graph(3);
  auto g = disjoint_union(g1, g2);
  RngStream rng(5, 0);
  auto f1 = oracle::random_fields(4, 1.0, rng);
  auto f2 = oracle::random_fields(3, 1.0, rng);
  std::vector<double> f(f1);
  f.insert(f.end(), f2.begin(), f2.end());
  auto m1 = ModelSpec::ising(1.7, f1, 1.0), m2 = ModelSpec::ising(1.7, f2, 1.0), m = ModelSpec::ising(1.7, f, 1.0);
  for (std::uint64_t x = 0; x < 16; ++x)
    for (std::uint64_t y = 0; y < 8; ++y) {
      auto s1 = BinaryConfig::from_index(x, 4), s2 = BinaryConfig::from_index(y, 3);
      EXPECT_NEAR(hamiltonian(g, m, concat(s1, s2)), hamiltonian(g1, m1, s1) + hamiltonian(g2, m2, s2), 1e-12);
    }
}

TEST(IndependentSet, Basics) {
  Graph e(2, {Edge(0, 1)});
  EXPECT_FALSE(is_independent_set(e, {1, 1}));
  EXPECT_TRUE(is_independent_set(e, {1, 0}));
  EXPECT_TRUE(is_independent_set(Graph(3), {1, 1, 1}));
  EXPECT_THROW(is_independent_set(e, {1}), DimensionError);
}

TEST(Model, Validation) {
  EXPECT_THROW(ModelSpec::hard_core(0.0), DomainError);
  EXPECT_THROW(ModelSpec::ising(-1.0, {0.0}, 0.0), DomainError);
  EXPECT_THROW(ModelSpec::ising(1.0, {0.6}, 0.5), DomainError);
  EXPECT_NO_THROW(ModelSpec::ising(1.0, {-0.5, 0.5}, 0.5));
}

TEST(Restrict, PathMiddle) {
  auto r = restrict(path_graph(3), ModelSpec::hard_core(1.0), {1});
  EXPECT_EQ(r.graph.num_nodes(), 2u);
  EXPECT_EQ(r.graph.num_edges(), 0u);
  EXPECT_EQ(r.new_to_old, (std::vector<Node>{0, 2}));
  EXPECT_EQ(r.old_to_new[1], Restriction::kRemoved);
}

TEST(Restrict, EmptyIsIdentity) {
  auto g = grid_graph(3, 3);
  auto r = restrict(g, ModelSpec::hard_core(1.0), std::span<const Node>{});
  EXPECT_EQ(r.graph, g);
}

TEST(Restrict, CycleToPath) {
  auto r = restrict(cycle_graph(4), ModelSpec::ising(1.0, {0.1, 0.2, 0.3, 0.4}, 0.5), {0});
  EXPECT_EQ(r.graph, path_graph(3));
  EXPECT_EQ(r.new_to_old, (std::vector<Node>{1, 2, 3}));
  EXPECT_EQ(r.model.ising_params().fields, (std::vector<double>{0.2, 0.3, 0.4}));
}

TEST(Restrict, OutOfRange) {
  EXPECT_THROW(restrict(path_graph(3), ModelSpec::hard_core(1.0), {3}), IndexError);
}

TEST(Generators, CycleAndStar) {
  auto c = cycle_graph(4);
  EXPECT_EQ(c.num_nodes(), 4u);
  EXPECT_EQ(c.num_edges(), 4u);
  EXPECT_EQ(c.max_degree(), 2u);

  auto sf = star_family(3, 3, Edge(0, 1));
  EXPECT_EQ(sf.graph.num_nodes(), 9u);
  EXPECT_EQ(sf.centers, 3u);
  EXPECT_EQ(sf.leaves, 6u);
  EXPECT_EQ(sf.stated_nodes, 6u);
  EXPECT_EQ(sf.graph.max_degree(), 3u);
  EXPECT_TRUE(sf.graph.has_edge(0, 1));
}

TEST(Generators, StarFamilyDegrees) {
  const std::size_t m = 6, d = 4;
  auto sf = star_family(m, d, Edge(2, 4));
  std::size_t deg_d = 0;
  for (Node c = 0; c < m; ++c) {
    if (c == 2 || c == 4) {
      EXPECT_EQ(sf.graph.degree(c), d);
      ++deg_d;
    } else {
      EXPECT_EQ(sf.graph.degree(c), d - 1);
    }
  }
  EXPECT_EQ(deg_d, 2u);
  for (Node v = m; v < sf.graph.num_nodes(); ++v) EXPECT_EQ(sf.graph.degree(v), 1u);
  EXPECT_THROW(star_family(3, 3, Edge(0, 5)), IndexError);
}

TEST(Generators, RandomRegular) {
  auto g1 = random_regular(10, 3, 42);
  auto g2 = random_regular(10, 3, 42);
  EXPECT_EQ(g1, g2);
  for (Node i = 0; i < 10; ++i) EXPECT_EQ(g1.degree(i), 3u);
  EXPECT_NE(random_regular(10, 3, 43), g1);
  EXPECT_THROW(random_regular(9, 3, 1), DomainError);
}

TEST(Generators, Grid) {
  auto g = grid_graph(3, 4);
  EXPECT_EQ(g.num_nodes(), 12u);
  EXPECT_EQ(g.num_edges(), 17u);
  EXPECT_EQ(g.max_degree(), 4u);
}

TEST(Io, GraphRoundTrip) {
  auto g = random_regular(8, 3, 7);
  auto j = graph_to_json(g);
  EXPECT_EQ(graph_from_json(j), g);
  EXPECT_EQ(j.at("edges")[0][0].get<int>(), static_cast<int>(g.edges()[0].u));
  EXPECT_THROW(graph_from_json(json{{"p", 2}}), FormatError);
}

TEST(Io, ModelRoundTrip) {
  auto m = ModelSpec::ising(2.0, {0.1, -0.2}, 0.5);
  EXPECT_EQ(model_from_json(model_to_json(m)), m);
  auto hc = ModelSpec::hard_core(1.5);
  EXPECT_EQ(model_from_json(model_to_json(hc)), hc);
  EXPECT_EQ(model_from_json(json::parse(R"({"kind":"ising","beta":1,"h":0.5,"p":3})")), ModelSpec::ising_uniform(1.0, 0.5, 3));
  EXPECT_THROW(model_from_json(json::parse(R"({"kind":"potts"})")), FormatError);
}
