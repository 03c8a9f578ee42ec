#include <gtest/gtest.h>

#include <random>

#include "edfn/embed.hpp"
#include "edfn/envelope.hpp"
#include "edfn/order.hpp"
#include "edfn/solver.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace edfn;

TEST(Properties, OracleDominance) {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 20; ++t) {
    Crg k = oracle::random_crg(2 + t % 5, rng);
    double p = std::uniform_real_distribution<double>(0.02, 0.98)(rng);
    auto rec = solve_g<double>(k, p);
    EXPECT_NEAR(oracle::quad(k, rec.minimizer.weights, p), rec.g, 1e-12);
    for (int s = 0; s < 10000; ++s) EXPECT_GE(oracle::quad(k, oracle::random_simplex_point(k.size(), rng), p), rec.g - 1e-12);
  }
}

TEST(Properties, ExactAndFloatAgree) {
  std::mt19937_64 rng(102);
  for (int t = 0; t < 40; ++t) {
    Crg k = oracle::random_crg(1 + t % 6, rng);
    Rational p = ratio(1 + static_cast<long>(rng() % 19), 20);
    auto ex = solve_g<Rational>(k, p);
    auto fl = solve_g<double>(k, p.get_d());
    EXPECT_NEAR(ex.g.get_d(), fl.g, 1e-12) << to_text(k) << " p=" << p;
    EXPECT_EQ(ex.unique, fl.unique) << to_text(k) << " p=" << p;
  }
}

TEST(Properties, SubCrgNeverLowersG) {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 40; ++t) {
    Crg k = oracle::random_crg(2 + t % 5, rng);
    Rational p = ratio(1 + static_cast<long>(rng() % 9), 10);
    Rational g = solve_g<Rational>(k, p).g;
    for (std::size_t v = 0; v < k.size(); ++v) EXPECT_GE(solve_g<Rational>(k.without_vertex(v), p).g, g);
  }
}

TEST(Properties, CoreCharacterisationsAgree) {
  // is_p_core cross-checks "every deletion raises g" against "unique, full-support minimizer" and
  // throws on disagreement.
  std::mt19937_64 rng(104);
  for (int t = 0; t < 60; ++t) {
    Crg k = oracle::random_crg(1 + t % 5, rng);
    for (Rational p : {Rational(1, 8), Rational(1, 4), Rational(1, 2), Rational(2, 3)}) {
      auto rec = core_record<Rational>(k, p);
      EXPECT_EQ(*rec.p_core, rec.unique && rec.full_support) << to_text(k);
    }
  }
}

TEST(Properties, ConcaveInP) {
  std::mt19937_64 rng(105);
  for (int t = 0; t < 20; ++t) {
    Crg k = oracle::random_crg(2 + t % 4, rng);
    for (int i = 1; i < 19; ++i) {
      Rational a = ratio(i, 20), b = ratio(i + 1, 20), c = ratio(i + 2, 20);
      Rational ga = solve_g<Rational>(k, a).g, gb = solve_g<Rational>(k, b).g, gc = solve_g<Rational>(k, c).g;
      EXPECT_GE(2 * gb, ga + gc) << to_text(k);
    }
  }
}

TEST(Properties, ComplementSymmetry) {
  std::mt19937_64 rng(106);
  for (int t = 0; t < 40; ++t) {
    Crg k = oracle::random_crg(1 + t % 5, rng);
    Rational p = ratio(1 + static_cast<long>(rng() % 15), 16);
    EXPECT_EQ(solve_g<Rational>(complement_crg(k), 1 - p).g, solve_g<Rational>(k, p).g);
  }
}

TEST(Properties, GrayJoinReciprocal) {
  std::mt19937_64 rng(107);
  for (int t = 0; t < 30; ++t) {
    Crg a = oracle::random_crg(1 + t % 3, rng), b = oracle::random_crg(1 + (t / 3) % 3, rng);
    for (Rational p : {Rational(1, 8), Rational(3, 8)}) EXPECT_EQ(join_identity_check<Rational>(a, b, p), 0);
  }
}

TEST(Properties, GrayReplaceStrictDecrease) {
  for (std::size_t k = 2; k <= 4; ++k)
    for (const Crg& crg : support::crgs_up_to_iso(k))
      for (Rational p : {Rational(1, 8), Rational(1, 4)}) {
        if (!is_p_core<Rational>(crg, p)) continue;
        for (std::size_t x = 0; x < k; ++x)
          for (std::size_t y = x + 1; y < k; ++y)
            if (crg.edge(x, y) != EdgeColor::Gray) EXPECT_TRUE(gray_replace_check<Rational>(crg, p, {x, y}).strict_decrease) << to_text(crg);
      }
}

TEST(Properties, GrayDegreeIdentity) {
  std::mt19937_64 rng(108);
  int checked = 0;
  for (int t = 0; t < 200 && checked < 30; ++t) {
    Crg k = oracle::random_crg(2 + t % 4, rng);
    Rational p(1, 4);
    if (!is_p_core<Rational>(k, p)) continue;
    ++checked;
    EXPECT_EQ(gray_degree_identity_check<Rational>(k, p).max_residual, 0) << to_text(k);
  }
  EXPECT_GT(checked, 5);
}

TEST(Properties, EnvelopeConcaveAndDominated) {
  std::mt19937_64 rng(109);
  for (int t = 0; t < 5; ++t) {
    std::vector<std::pair<std::string, Crg>> items;
    for (int i = 0; i < 6; ++i) items.emplace_back("c" + std::to_string(i), oracle::random_crg(1 + (t + i) % 4, rng));
    Catalog cat = explicit_catalog(items);
    auto grid = default_grid<double>(128);
    auto c = envelope<double>(cat, grid, {{}, 0, 0});
    EXPECT_TRUE(is_concave(c, 1e-9));
    items.emplace_back("extra", oracle::random_crg(3, rng));
    auto more = envelope<double>(explicit_catalog(items), grid, {{}, 0, 0});
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_LE(more.value[i], c.value[i]);
  }
}

TEST(Properties, EmbedMatchesColoredOrderOnBlowUps) {
  std::mt19937_64 rng(110);
  for (int t = 0; t < 150; ++t) {
    SimpleGraph f(1 + t % 5);
    for (std::size_t u = 0; u < f.size(); ++u)
      for (std::size_t v = u + 1; v < f.size(); ++v)
        if (rng() & 1u) f.add_edge(u, v);
    Crg k = oracle::random_crg(1 + t % 3, rng);
    bool by_embed = embeds(f, k);
    EXPECT_EQ(by_embed, oracle::brute_embeds(f, k));
    EXPECT_EQ(by_embed, colored_leq(colored_from_graph(f), blowup_uniform(k, f.size()))) << emit_graph6(f) << "\n" << to_text(k);
  }
}
