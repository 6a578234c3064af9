#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"

using namespace oiglab;

namespace {

Pattern pat(const OneInclusionGraph& g, std::size_t v) { return g.vertices()[v]; }

}  // namespace

TEST(FlowOrient, FigureInstance) {
  auto g = fixtures::figure_graph();
  auto o = flow_orient(g, Rational(7, 3));
  auto origin = fixtures::vertex_of(g, {0, 0, 0});
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& inc = g.edges()[e].incident;
    if (inc.size() != 2) continue;
    for (std::size_t k = 0; k < 2; ++k)
      EXPECT_EQ(o.weights[e][k], inc[k] == origin ? Rational(2, 3) : Rational(1, 3));
  }
  for (const auto& d : in_degrees(g, o)) EXPECT_EQ(d, Rational(7, 3));
  EXPECT_THROW(flow_orient(g, Rational(5, 2)), DomainError);
  auto s = build_oig(fixtures::singleton_class(), Sample::make({0, 1, 2}, 3));
  EXPECT_EQ(in_degrees(s, flow_orient(s, Rational(3)))[0], Rational(3));
}

TEST(Kcore, FigureInstance) {
  auto g = fixtures::figure_graph();
  auto r = kcore_orient(g);
  // Degrees among shared edges: 000 has 2, 010 and 100 have 1; the largest
  // pattern among tied vertices goes first.
  ASSERT_EQ(r.removal_order.size(), 3u);
  EXPECT_EQ(pat(g, r.removal_order[0]), (Pattern{1, 0, 0}));
  EXPECT_EQ(pat(g, r.removal_order[1]), (Pattern{0, 1, 0}));
  EXPECT_EQ(pat(g, r.removal_order[2]), (Pattern{0, 0, 0}));
  EXPECT_EQ(r.max_outdegree, 1);
  EXPECT_EQ(out_degree(g, r.orientation, fixtures::vertex_of(g, {0, 0, 0})), Rational(0));
  EXPECT_EQ(out_degree(g, r.orientation, fixtures::vertex_of(g, {1, 0, 0})), Rational(1));
  EXPECT_EQ(out_degree(g, r.orientation, fixtures::vertex_of(g, {0, 1, 0})), Rational(1));
}

TEST(Kcore, SmallGraphs) {
  auto s = build_oig(fixtures::singleton_class(), Sample::make({0, 1, 2}, 3));
  EXPECT_EQ(kcore_orient(s).max_outdegree, 0);
  auto f = build_oig(fixtures::full_binary(2), Sample::make({0, 1}, 2));
  EXPECT_EQ(kcore_orient(f).max_outdegree, 2);
  auto a = build_agnostic_oig(fixtures::singleton_class(2), Sample::make({0, 1}, 2));
  EXPECT_THROW(kcore_orient(a), DomainError);
}

TEST(Regularizer, FigureInstance) {
  auto g = fixtures::figure_graph();
  auto t = extract_regularizer(kcore_orient(g), 3);
  EXPECT_EQ(t.phi[fixtures::vertex_of(g, {1, 0, 0})], Rational(0));
  EXPECT_EQ(t.phi[fixtures::vertex_of(g, {0, 1, 0})], Rational(1, 12));
  EXPECT_EQ(t.phi[fixtures::vertex_of(g, {0, 0, 0})], Rational(1, 9));
  for (const auto& e : g.edges()) {
    std::size_t arg = e.incident[0];
    for (auto v : e.incident)
      if (t.phi[v] > t.phi[arg]) arg = v;
    if (e.incident.size() == 2) EXPECT_EQ(pat(g, arg), (Pattern{0, 0, 0}));
  }
  EXPECT_EQ(regularizer_learner(g, t), learner_table(g, kcore_orient(g).orientation));
}

TEST(Regularizer, SingleVertexIsZero) {
  auto s = build_oig(fixtures::singleton_class(), Sample::make({0, 1, 2}, 3));
  auto t = extract_regularizer(kcore_orient(s), 3);
  EXPECT_EQ(t.phi, std::vector<Rational>{Rational(0)});
}

TEST(MaxEnt, FigureInstance) {
  auto g = fixtures::figure_graph();
  auto sol = maxent_solve(g, hall_demands(g, Rational(7, 3)));
  EXPECT_LE(sol.kkt_residual, 1e-6);
  EXPECT_FALSE(sol.capped);
  EXPECT_NEAR(sol.rho[fixtures::vertex_of(g, {0, 0, 0})], 0.5, 1e-6);
  EXPECT_NEAR(sol.rho[fixtures::vertex_of(g, {1, 0, 0})], 0.25, 1e-6);
  EXPECT_NEAR(sol.rho[fixtures::vertex_of(g, {0, 1, 0})], 0.25, 1e-6);
  for (double d : sol.expected_indegree) EXPECT_NEAR(d, 7.0 / 3, 1e-6);
  for (std::size_t i = 1; i < sol.objective_trace.size(); ++i)
    EXPECT_LE(sol.objective_trace[i], sol.objective_trace[i - 1] + 1e-12);
  auto sampler = maxent_sampler(g, sol);
  auto origin = fixtures::vertex_of(g, {0, 0, 0});
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& inc = g.edges()[e].incident;
    if (inc.size() == 1) EXPECT_DOUBLE_EQ(sampler.weights[e][0], 1.0);
    else
      for (std::size_t k = 0; k < 2; ++k)
        EXPECT_NEAR(sampler.weights[e][k], inc[k] == origin ? 2.0 / 3 : 1.0 / 3, 1e-6);
  }
  auto dist = maxent_brute_primal(g, hall_demands(g, Rational(7, 3)));
  EXPECT_EQ(dist.size(), 4u);
  EXPECT_LE(total_variation(dist.probability, product_form(dist, sampler)), 1e-4);
}

TEST(MaxEnt, SymmetricAndForcedCases) {
  auto s = build_oig(fixtures::singleton_class(), Sample::make({0, 1, 2}, 3));
  auto one = maxent_solve(s, hall_demands(s, Rational(3)));
  EXPECT_NEAR(one.rho[0], 1.0, 1e-12);
  auto f = build_oig(fixtures::full_binary(2), Sample::make({0, 1}, 2));
  auto sol = maxent_solve(f, hall_demands(f, Rational(1)));
  for (double r : sol.rho) EXPECT_NEAR(r, 0.25, 1e-6);
  for (double d : sol.expected_indegree) EXPECT_NEAR(d, 1.0, 1e-6);
  auto dist = maxent_brute_primal(f, hall_demands(f, Rational(1)));
  EXPECT_LE(total_variation(dist.probability, product_form(dist, maxent_sampler(f, sol))), 1e-4);
  EXPECT_THROW(maxent_solve(f, hall_demands(f, Rational(3, 2))), DomainError);
  EXPECT_THROW(maxent_brute_primal(f, hall_demands(f, Rational(3, 2))), DomainError);
}

TEST(MaxEnt, SingleEdgeUniform) {
  auto g = build_agnostic_oig(HypothesisClass::make({"a"}, {"0", "1", "2"}, {{0}, {1}, {2}}),
                              Sample::make({0}, 1));
  std::vector<Rational> c(3, Rational(1, 3));
  auto dist = maxent_brute_primal(g, c);
  ASSERT_EQ(dist.size(), 3u);
  for (double p : dist.probability) EXPECT_NEAR(p, 1.0 / 3, 1e-9);
}

TEST(MaxEnt, BayesRestriction) {
  auto g = fixtures::figure_graph();
  auto sol = maxent_solve(g, default_demands(g));
  auto sampler = maxent_sampler(g, sol);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    auto restricted = restrict_distribution(sol.rho, g.edges()[e].incident);
    for (std::size_t k = 0; k < restricted.size(); ++k) EXPECT_NEAR(sampler.weights[e][k], restricted[k], 1e-9);
  }
}

TEST(MaxEnt, KlRegularizer) {
  std::vector<double> rho{0.5, 0.25, 0.25};
  EXPECT_DOUBLE_EQ(kl_regularizer_value(rho, rho, 1.0).kl, 0.0);
  auto restricted = restrict_distribution(rho, {0, 2});
  std::vector<double> dist{restricted[0], 0.0, restricted[1]};
  auto r = kl_regularizer_value(dist, rho, 2.0);
  EXPECT_NEAR(r.kl, std::log(4.0 / 3.0), 1e-12);
  EXPECT_NEAR(r.value, std::atan(std::log(4.0 / 3.0)) / 2.0, 1e-12);
  auto inf = kl_regularizer_value({0.5, 0.5}, {1.0, 0.0}, 1.0);
  EXPECT_TRUE(std::isinf(inf.kl));
  EXPECT_NEAR(inf.value, std::acos(-1.0) / 2, 1e-12);
  // Grid oracle: among distributions on the first two vertices, the
  // renormalized restriction is the unique KL minimizer.
  double best = 1e9, arg = -1;
  for (int i = 0; i <= 3000; ++i) {
    double p = i / 3000.0;
    double kl = kl_regularizer_value({p, 1 - p, 0.0}, rho, 1.0).kl;
    if (kl < best) {
      best = kl;
      arg = p;
    }
  }
  EXPECT_NEAR(arg, 2.0 / 3, 1e-3);
}
