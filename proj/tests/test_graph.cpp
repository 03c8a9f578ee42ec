#include <gtest/gtest.h>

#include <random>

#include "edfn/family.hpp"
#include "edfn/graph.hpp"
#include "oracles.hpp"

using namespace edfn;

namespace {

SimpleGraph random_graph(std::size_t n, double density, std::mt19937_64& rng) {
  SimpleGraph g(n);
  std::bernoulli_distribution coin(density);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

// Smallest k admitting a proper colouring, by trying every assignment.
std::size_t brute_chromatic(const SimpleGraph& g) {
  const std::size_t n = g.size();
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> col(n, 0);
    while (true) {
      bool ok = true;
      for (auto [u, v] : g.edges())
        if (col[u] == col[v]) ok = false;
      if (ok) return k;
      std::size_t i = 0;
      while (i < n && ++col[i] == k) col[i++] = 0;
      if (i == n) break;
    }
  }
  return n;
}

FamilySpec finite_family(std::vector<SimpleGraph> gs) {
  FamilySpec s;
  s.finite = std::move(gs);
  return s;
}

}  // namespace

TEST(Graph6, KnownStrings) {
  // Reference encodings from an independent graph6 writer.
  EXPECT_EQ(emit_graph6(complete_bipartite(3, 3)), "EFz_");
  EXPECT_EQ(emit_graph6(complete_graph(3)), "Bw");
  EXPECT_EQ(emit_graph6(cycle_graph(5)), "Dhc");
  EXPECT_EQ(emit_graph6(path_graph(4)), "Ch");
  EXPECT_EQ(emit_graph6(star_graph(4)), "Ds_");
  SimpleGraph pet = parse_graph6("IheA@GUAo");
  EXPECT_EQ(pet.size(), 10u);
  EXPECT_EQ(pet.edge_count(), 15u);
  for (std::size_t v = 0; v < 10; ++v) EXPECT_EQ(pet.degree(v), 3u);
  EXPECT_EQ(chromatic_number(pet), 3u);
  EXPECT_EQ(clique_number(pet), 2u);
  EXPECT_EQ(clique_cover_number(pet), 5u);
}

TEST(Graph6, LongHeader) {
  auto k64 = complete_graph(64);
  std::string s = emit_graph6(k64);
  EXPECT_EQ(s.size(), 340u);
  EXPECT_EQ(s.substr(0, 4), "~?@?");
  EXPECT_EQ(parse_graph6(s).edge_count(), 64u * 63 / 2);
  EXPECT_EQ(emit_graph6(cycle_graph(63)).substr(0, 6), "~??~hC");
}

TEST(Graph6, RoundTripAndErrors) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    auto g = random_graph(1 + t % 20, 0.4, rng);
    auto s = emit_graph6(g);
    auto h = parse_graph6(s);
    EXPECT_EQ(emit_graph6(h), s);
    EXPECT_EQ(h.edges(), g.edges());
  }
  EXPECT_THROW(parse_graph6("!!"), ParseError);
  EXPECT_THROW(parse_graph6(""), ParseError);
  EXPECT_THROW(parse_graph6("Dh"), ParseError);
  try {
    parse_graph6("Bw!");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
}

TEST(Graph, ComplementInvolution) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    auto g = random_graph(7, 0.5, rng);
    EXPECT_EQ(g.complement().complement().edges(), g.edges());
    EXPECT_EQ(g.complement().edge_count() + g.edge_count(), 21u);
  }
}

TEST(Graph, ChromaticAgainstBruteForce) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 60; ++t) {
    auto g = random_graph(2 + t % 7, 0.3 + 0.1 * (t % 5), rng);
    EXPECT_EQ(chromatic_number(g), brute_chromatic(g)) << emit_graph6(g);
    EXPECT_EQ(clique_cover_number(g), chromatic_number(g.complement()));
    EXPECT_LE(clique_number(g), chromatic_number(g));
  }
  EXPECT_EQ(chromatic_number(cycle_graph(7)), 3u);
  EXPECT_EQ(chromatic_number(complete_bipartite(3, 3)), 2u);
  EXPECT_THROW(chromatic_number(complete_graph(13)), SizeError);
}

TEST(Graph, Generators) {
  EXPECT_EQ(cycle_graph(6).edge_count(), 6u);
  EXPECT_EQ(path_graph(5).edge_count(), 4u);
  EXPECT_EQ(complete_bipartite(2, 9).edge_count(), 18u);
  EXPECT_EQ(star_graph(4).max_degree(), 4u);
  EXPECT_TRUE(complete_graph(4).is_complete());
  EXPECT_TRUE(empty_graph(4).is_edgeless());
  EXPECT_THROW(SimpleGraph(0), DomainError);
  EXPECT_THROW(cycle_graph(2), DomainError);
}

TEST(Graph, EdgeListText) {
  auto g = parse_graph_text("0 1\n1 2\n2 0\n");
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(parse_graph_text("Bw").edge_count(), 3u);
  EXPECT_THROW(parse_edge_list("0 0\n"), ParseError);
}

TEST(Family, ChiAndCover) {
  EXPECT_EQ(family_chi(finite_family({complete_bipartite(3, 3)})), 2u);
  FamilySpec star_cycle;
  star_cycle.generators = {Star{4}, CyclesGe{5}};
  EXPECT_EQ(family_chi(star_cycle), 2u);
  EXPECT_EQ(family_chi(finite_family({complete_graph(4), cycle_graph(5)})), 3u);
  EXPECT_EQ(family_clique_cover(finite_family({complete_graph(3)})), 1u);
  EXPECT_TRUE(has_anti_clique(finite_family({empty_graph(3)})));
  EXPECT_FALSE(has_anti_clique(finite_family({complete_graph(3)})));
  EXPECT_TRUE(has_clique(finite_family({complete_graph(3)})));
}

TEST(Family, JsonRoundTripAndErrors) {
  auto j = nlohmann::json::parse(R"({"forbidden": ["EFz_"], "families": [{"type":"cycles_ge","m":5}, {"type":"star","k":4}, {"type":"complete_bipartite","s":2,"t":9}]})");
  FamilySpec spec = family_from_json(j);
  EXPECT_EQ(spec.finite.size(), 1u);
  EXPECT_EQ(spec.generators.size(), 3u);
  FamilySpec back = family_from_json(family_to_json(spec));
  EXPECT_EQ(family_hash(back), family_hash(spec));
  EXPECT_EQ(family_hash(spec).size(), 16u);
  EXPECT_NE(family_hash(spec), family_hash(finite_family({complete_graph(3)})));

  auto message = [](const char* text) {
    try {
      family_from_json(nlohmann::json::parse(text));
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message(R"({"forbidden": [3]})").find("forbidden[0]"), std::string::npos);
  EXPECT_NE(message(R"({"families": [{"type": "wheel"}]})").find("families[0].type"), std::string::npos);
  EXPECT_NE(message(R"({"familes": []})").find("familes"), std::string::npos);
  EXPECT_NE(message(R"({"families": [{"type": "cycles_ge", "m": 2}]})").find("cycles_ge"), std::string::npos);
}

TEST(Family, ComplementSpec) {
  auto c = complement_spec(finite_family({complete_graph(3), path_graph(4)}));
  ASSERT_EQ(c.finite.size(), 2u);
  EXPECT_TRUE(c.finite[0].is_edgeless());
  EXPECT_TRUE(oracle::brute_contains_induced(c.finite[1], path_graph(4)));  // P_4 is self-complementary
  FamilySpec cyc;
  cyc.generators = {CyclesGe{5}};
  EXPECT_THROW(complement_spec(cyc), UnsupportedError);
}
