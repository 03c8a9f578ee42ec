#include <gtest/gtest.h>

#include <random>

#include "edfn/embed.hpp"
#include "edfn/order.hpp"
#include "oracles.hpp"

using namespace edfn;

namespace {

Crg gray_cycle_crg(std::size_t n) {
  Crg k(std::vector<VertexColor>(n, VertexColor::Black), EdgeColor::White);
  for (std::size_t i = 0; i < n; ++i) k.set_edge(i, (i + 1) % n, EdgeColor::Gray);
  return k;
}

FamilySpec star_cycle_family() {
  FamilySpec s;
  s.generators = {Star{4}, CyclesGe{5}};
  return s;
}

/// Every simple graph on n labelled vertices.
std::vector<SimpleGraph> all_graphs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::vector<SimpleGraph> out;
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    SimpleGraph g(n);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1u) g.add_edge(pairs[i].first, pairs[i].second);
    out.push_back(g);
  }
  return out;
}

/// Every CRG on k labelled vertices.
std::vector<Crg> all_crgs(std::size_t k) {
  std::vector<Crg> out;
  const std::size_t pairs = k * (k - 1) / 2;
  std::size_t edge_codes = 1;
  for (std::size_t i = 0; i < pairs; ++i) edge_codes *= 3;
  for (std::uint32_t vmask = 0; vmask < (1u << k); ++vmask)
    for (std::size_t code = 0; code < edge_codes; ++code) {
      std::vector<VertexColor> vc(k);
      for (std::size_t x = 0; x < k; ++x) vc[x] = (vmask >> x & 1u) ? VertexColor::Black : VertexColor::White;
      std::vector<EdgeColor> ec(pairs);
      std::size_t c = code;
      for (auto& e : ec) {
        e = static_cast<EdgeColor>(c % 3);
        c /= 3;
      }
      out.emplace_back(vc, ec);
    }
  return out;
}

}  // namespace

TEST(Embeds, StarExamples) {
  SimpleGraph k14 = star_graph(4);
  auto w = find_embedding(k14, make_kwb(2, 0));
  ASSERT_TRUE(w);
  EXPECT_TRUE(check_embedding(k14, make_kwb(2, 0), *w));
  EXPECT_TRUE(embeds(k14, make_kwb(1, 1)));
  EXPECT_FALSE(embeds(k14, make_path_crg(5)));
  EXPECT_FALSE(embeds(k14, make_path_forest({3, 2, 4})));
}

TEST(Embeds, K33Examples) {
  SimpleGraph k33 = complete_bipartite(3, 3);
  EXPECT_FALSE(embeds(k33, make_kwb(1, 2)));
  EXPECT_TRUE(embeds(k33, make_kwb(1, 3)));
  for (std::size_t j = 1; j <= 2; ++j) EXPECT_FALSE(embeds(k33, make_kwb(0, j)));
  EXPECT_TRUE(embeds(k33, make_kwb(0, 3)));
}

TEST(Embeds, AgreesWithBruteForce) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 400; ++t) {
    std::size_t n = 1 + t % 6;
    SimpleGraph f(n);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (coin(rng)) f.add_edge(u, v);
    Crg k = oracle::random_crg(1 + t % 4, rng);
    auto phi = find_embedding(f, k);
    EXPECT_EQ(phi.has_value(), oracle::brute_embeds(f, k));
    if (phi) EXPECT_TRUE(check_embedding(f, k, *phi));
  }
}

TEST(Embeds, MonotoneUnderGrayRecolouring) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    Crg k = oracle::random_crg(3, rng);
    SimpleGraph f = t % 2 ? cycle_graph(5) : star_graph(3);
    if (!embeds(f, k)) continue;
    for (std::size_t x = 0; x < 3; ++x)
      for (std::size_t y = x + 1; y < 3; ++y) {
        Crg l = k;
        l.set_edge(x, y, EdgeColor::Gray);
        EXPECT_TRUE(embeds(f, l));
      }
  }
}

TEST(Embeds, Hereditary) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    Crg k = oracle::random_crg(2 + t % 2, rng);
    SimpleGraph f = complete_bipartite(2, 3);
    std::vector<std::size_t> keep = {0, 2, 3, 4};
    if (!embeds(f.induced(keep), k)) EXPECT_FALSE(embeds(f, k));
  }
}

TEST(FamilyEmbeds, StarCycleFamily) {
  for (std::size_t n = 1; n <= 8; ++n) {
    auto v = family_embeds(star_cycle_family(), make_path_crg(n));
    EXPECT_FALSE(v.embeds) << n;
    EXPECT_TRUE(v.bounded);
    EXPECT_EQ(v.cycle_bound, std::max<std::size_t>(2 * n * n, 10));
  }
  auto v = family_embeds(star_cycle_family(), gray_cycle_crg(5));
  EXPECT_TRUE(v.embeds);
  ASSERT_TRUE(v.member);
  EXPECT_TRUE(check_embedding(*v.member, gray_cycle_crg(5), v.witness));
}

TEST(FamilyEmbeds, GrayCycleGivesLongCycles) {
  Crg k = gray_cycle_crg(5);
  for (std::size_t m = 5; m <= 10; ++m) EXPECT_TRUE(embeds(cycle_graph(m), k)) << m;
}

TEST(FamilyEmbeds, CycleBoundOverride) {
  FamilySpec s = star_cycle_family();
  s.cycle_test_bound = 6;
  auto v = family_embeds(s, make_path_crg(2));
  EXPECT_FALSE(v.embeds);
  EXPECT_EQ(v.cycle_bound, 6u);
  auto j = to_json(v);
  EXPECT_TRUE(j["bounded_verdict"].get<bool>());
}

TEST(FamilyEmbeds, WitnessJson) {
  auto phi = find_embedding(star_graph(4), make_kwb(2, 0));
  ASSERT_TRUE(phi);
  auto j = witness_json(*phi);
  ASSERT_EQ(j.size(), 5u);
  EXPECT_EQ(j[0][0], 0);
}

TEST(ColoredLeq, Basics) {
  Crg k = make_kwb(1, 2);
  ColoredGraph h = blowup_uniform(k, 3).expand();
  ColoredGraph g = h.induced({0, 2, 4, 7});
  EXPECT_TRUE(colored_leq(g, h));
  EXPECT_TRUE(colored_leq(blowup_uniform(make_kwb(2, 0), 2), blowup_uniform(make_kwb(1, 2), 2)));
  EXPECT_FALSE(colored_leq(ColoredGraph::explicit_graph(3, EdgeColor::Black), ColoredGraph::explicit_graph(3, EdgeColor::White)));
  EXPECT_TRUE(colored_leq(ColoredGraph::explicit_graph(3, EdgeColor::Black), ColoredGraph::explicit_graph(3, EdgeColor::Gray)));
  EXPECT_FALSE(colored_leq(ColoredGraph::explicit_graph(3, EdgeColor::Gray), ColoredGraph::explicit_graph(3, EdgeColor::Black)));
}

TEST(ColoredLeq, CompressedShortcut) {
  Crg k = make_path_crg(4);
  auto g = ColoredGraph::blowup(k, {100, 3, 0, 7});
  auto h = ColoredGraph::blowup(k, {200, 3, 5, 7});
  auto phi = find_colored_leq(g, h);
  ASSERT_TRUE(phi);
  EXPECT_TRUE(check_colored_map(g, h, *phi));
  EXPECT_THROW(colored_leq(blowup_uniform(make_kwb(1, 1), 30), blowup_uniform(make_kwb(2, 1), 30)), SizeError);
}

TEST(ColoredLeq, AgreesWithBruteForce) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> col(0, 2);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 1 + t % 4, m = n + t % 3;
    auto rnd = [&](std::size_t s) {
      auto c = ColoredGraph::explicit_graph(s, EdgeColor::Gray);
      for (std::size_t u = 0; u < s; ++u)
        for (std::size_t v = u + 1; v < s; ++v) c.set_edge(u, v, static_cast<EdgeColor>(col(rng)));
      return c;
    };
    auto g = rnd(n), h = rnd(m);
    EXPECT_EQ(colored_leq(g, h), oracle::brute_colored_leq(g, h));
  }
}

TEST(ColoredLeq, ReflexiveTransitive) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 60; ++t) {
    Crg a = oracle::random_crg(2, rng), b = oracle::random_crg(3, rng), c = oracle::random_crg(3, rng);
    auto ga = blowup_uniform(a, 2), gb = blowup_uniform(b, 2), gc = blowup_uniform(c, 2);
    EXPECT_TRUE(colored_leq(gb, gb));
    if (colored_leq(ga, gb) && colored_leq(gb, gc)) EXPECT_TRUE(colored_leq(ga, gc));
  }
}

TEST(ColoredLeq, BlowupConsistency) {
  // F -> K iff F (black edges, white non-edges) sits below |F| x K.
  std::vector<std::vector<Crg>> crgs = {all_crgs(1), all_crgs(2), all_crgs(3)};
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& f : all_graphs(n))
      for (const auto& level : crgs)
        for (const auto& k : level)
          EXPECT_EQ(embeds(f, k), colored_leq(colored_from_graph(f), blowup_uniform(k, n)));
}

TEST(ManyBlack, Witnesses) {
  auto phi = manyblack_witness(make_kwb(1, 3), 3);
  EXPECT_TRUE(check_colored_map(blowup_uniform(make_kwb(2, 0), 3), blowup_uniform(make_kwb(1, 3), 3), phi));
  auto phi2 = manyblack_witness(make_path_crg(4), 2);
  EXPECT_TRUE(check_colored_map(blowup_uniform(make_kwb(1, 0), 2), blowup_uniform(make_path_crg(4), 2), phi2));
  EXPECT_THROW(manyblack_witness(make_kwb(2, 1), 2), PreconditionError);
  Crg notcore = make_kwb(1, 2);
  notcore.set_edge(1, 2, EdgeColor::Black);
  EXPECT_THROW(manyblack_witness(notcore, 1), PreconditionError);
}

TEST(Dalmatian, TransferInstances) {
  auto mu = ProbMass<Rational>::uniform(3);
  auto at3 = dalmatian_transfer_check(make_kwb(2, 0), make_kwb(1, 2), mu, 9, 3, 1);
  EXPECT_FALSE(at3.premise);
  EXPECT_TRUE(at3.holds());
  auto at2 = dalmatian_transfer_check(make_kwb(2, 0), make_kwb(1, 2), mu, 9, 2, 1);
  EXPECT_TRUE(at2.premise);
  EXPECT_TRUE(at2.conclusion);

  auto one = ProbMass<Rational>::uniform(1);
  EXPECT_THROW(dalmatian_transfer_check(make_kwb(1, 0), make_kwb(0, 1), one, 1, 2, 1), PreconditionError);
  EXPECT_THROW(dalmatian_transfer_check(make_kwb(2, 0), make_kwb(1, 2), mu, 9, 2, 2), PreconditionError);
}
