#include <gtest/gtest.h>

#include <bit>

#include "fixtures.hpp"

using namespace oiglab;

TEST(Hall, FigureInstance) {
  auto g = fixtures::figure_graph();
  auto b = hall_density_brute(g);
  EXPECT_EQ(b.value, Rational(7, 3));
  EXPECT_EQ(b.minimizer, (std::vector<std::size_t>{0, 1, 2}));
  auto f = hall_density_flow(g);
  EXPECT_EQ(f.value, Rational(7, 3));
  ASSERT_TRUE(f.certificate.has_value());
  EXPECT_TRUE(verify_orientation(g, *f.certificate, Rational(7, 3)));
}

TEST(Hall, SmallGraphs) {
  auto s = build_oig(fixtures::singleton_class(), Sample::make({0, 1, 2}, 3));
  EXPECT_EQ(hall_density_brute(s).value, Rational(3));
  EXPECT_EQ(hall_density_flow(s).value, Rational(3));
  auto full = build_oig(fixtures::full_binary(2), Sample::make({0, 1}, 2));
  EXPECT_EQ(hall_density_flow(full).value, Rational(1));
  EXPECT_EQ(hall_density_brute(full).value, Rational(1));
  auto full_ag = build_agnostic_oig(fixtures::full_binary(2), Sample::make({0, 1}, 2));
  EXPECT_EQ(hall_density_flow(full_ag).value, Rational(1));
}

TEST(Hall, AgnosticSingleton) {
  auto c = HypothesisClass::make({"a", "b"}, {"0", "1"}, {{0, 0}});
  auto g = build_agnostic_oig(c, Sample::make({0, 1}, 2));
  auto b = hall_density_brute(g);
  EXPECT_EQ(b.value, Rational(2));
  EXPECT_EQ(b.minimizer, (std::vector<std::size_t>{0}));
  EXPECT_EQ(hall_density_flow(g).value, Rational(2));
}

TEST(Hall, VertexCap) {
  auto full = build_agnostic_oig(HypothesisClass::make({"a", "b", "c"}, {"0", "1", "2"}, {{0, 0, 0}}),
                                 Sample::make({0, 1, 2}, 3));
  EXPECT_THROW(hall_density_brute(full), DomainError);
  EXPECT_NO_THROW(hall_density_flow(full));
}

TEST(Hall, Degeneracy) {
  EXPECT_EQ(degeneracy_brute(fixtures::figure_graph()), 1);
  EXPECT_EQ(degeneracy_brute(build_oig(fixtures::full_binary(2), Sample::make({0, 1}, 2))), 2);
  EXPECT_EQ(degeneracy_brute(build_oig(fixtures::singleton_class(), Sample::make({0, 1, 2}, 3))), 0);
}

TEST(Hall, Complexity) {
  auto r = hall_complexity(fixtures::figure_class(), 3);
  EXPECT_EQ(r.pi, Rational(2, 3));
  EXPECT_EQ(r.epsilon, Rational(2, 9));
  EXPECT_EQ(r.hall, Rational(7, 3));
  EXPECT_EQ(r.argmax.indices(), (std::vector<int>{0, 1, 2}));
  ComplexityOptions all;
  all.multisets = false;
  all.method = HallMethod::brute;
  EXPECT_EQ(hall_complexity(fixtures::figure_class(), 3, all).pi, Rational(2, 3));
  ComplexityOptions det;
  det.deterministic = true;
  EXPECT_EQ(hall_complexity(fixtures::figure_class(), 3, det).pi, Rational(1));
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(hall_complexity(fixtures::singleton_class(), n).pi, Rational(0));
  auto full = hall_complexity(fixtures::full_binary(2), 2);
  EXPECT_EQ(full.pi, Rational(1));
  EXPECT_EQ(full.epsilon, Rational(1, 2));
}

TEST(Hall, ComplexityIsThreadCountInvariant) {
  auto cls = gen_random(4, 3, 8, 21);
  ComplexityOptions one, many;
  one.threads = 1;
  many.threads = 4;
  auto a = hall_complexity(cls, 3, one);
  auto b = hall_complexity(cls, 3, many);
  EXPECT_EQ(a.pi, b.pi);
  EXPECT_EQ(a.argmax, b.argmax);
}

// Removing a vertex restricts the family of subsets, so the minimum over
// subsets of the remaining vertices can only go up.
TEST(Hall, VertexRemovalNeverDecreasesSubsetMinimum) {
  std::mt19937_64 rng(5);
  for (const auto& in : fixtures::random_suite(80, 8)) {
    auto g = build_oig(in.cls, fixtures::random_sample(rng, in));
    if (g.num_vertices() < 2) continue;
    auto full = hall_density_brute(g).value;
    // Same ratio, U ranging over subsets avoiding vertex 0 (edges still counted in the full graph).
    auto masks = std::vector<std::uint32_t>();
    for (const auto& e : g.edges()) {
      std::uint32_t m = 0;
      for (auto v : e.incident) m |= 1U << v;
      masks.push_back(m);
    }
    Rational best(-1);
    for (std::uint32_t u = 2; u < (1U << g.num_vertices()); u += 2) {
      int touching = 0;
      for (auto m : masks) touching += (m & u) != 0;
      Rational r(touching, std::popcount(u));
      if (best < Rational(0) || r < best) best = r;
    }
    EXPECT_GE(best, full);
  }
}
