#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace oiglab;

namespace {

Orientation toward_origin(const OneInclusionGraph& g) {
  Orientation o;
  auto origin = fixtures::vertex_of(g, {0, 0, 0});
  for (const auto& e : g.edges()) o.target.push_back(e.incident.size() == 1 ? e.incident[0] : origin);
  return o;
}

}  // namespace

TEST(Transduct, ErrorOfFigureLearner) {
  auto g = fixtures::figure_graph();
  auto l = learner_table(g, toward_origin(g));
  EXPECT_EQ(transductive_error(g, l, fixtures::vertex_of(g, {0, 0, 0})), Rational(0));
  EXPECT_EQ(transductive_error(g, l, fixtures::vertex_of(g, {1, 0, 0})), Rational(1, 3));
  auto s = build_oig(fixtures::singleton_class(), Sample::make({0, 1, 2}, 3));
  EXPECT_EQ(transductive_error(s, learner_table(s, Orientation{{0, 0, 0}}), 0), Rational(0));
}

TEST(Transduct, AgnosticRegretSubtractsCredit) {
  auto c = HypothesisClass::make({"a", "b"}, {"0", "1"}, {{0, 0}});
  auto g = build_agnostic_oig(c, Sample::make({0, 1}, 2));
  DeterministicLearner constant;
  for (const auto& e : g.edges()) constant.table[{e.hole, e.context}] = 0;
  EXPECT_EQ(transductive_error(g, constant, fixtures::vertex_of(g, {1, 1})), Rational(0));
  EXPECT_EQ(transductive_error(g, constant, fixtures::vertex_of(g, {0, 0})), Rational(0));
  EXPECT_EQ(graph_error(g, constant).max_error, Rational(0));
}

TEST(Transduct, ErrorRates) {
  auto cls = fixtures::figure_class();
  auto kcore = error_rate(cls, 3, [](const OneInclusionGraph& g) {
    return learner_table(g, kcore_orient(g).orientation);
  });
  EXPECT_EQ(kcore.error_rate, Rational(1, 3));
  auto flow = error_rate(cls, 3, [](const OneInclusionGraph& g) {
    return learner_table(g, flow_orient(g, hall_density_flow(g).value));
  });
  EXPECT_EQ(flow.error_rate, Rational(2, 9));
  EXPECT_EQ(flow.samples, 27u);
  auto maxent = error_rate(cls, 3, [](const OneInclusionGraph& g) {
    return learner_table(g, maxent_sampler(g, maxent_solve(g, default_demands(g))));
  });
  EXPECT_NEAR(maxent.error_rate, 2.0 / 9, 1e-6);
  auto single = error_rate(fixtures::singleton_class(), 3, [](const OneInclusionGraph& g) {
    return learner_table(g, kcore_orient(g).orientation);
  });
  EXPECT_EQ(single.error_rate, Rational(0));
}

TEST(Transduct, InducedOrientationRoundTrips) {
  auto g = fixtures::figure_graph();
  auto o = toward_origin(g);
  EXPECT_EQ(induced_orientation(g, learner_table(g, o)).target, o.target);
  auto f = flow_orient(g, Rational(7, 3));
  EXPECT_EQ(induced_orientation(g, learner_table(g, f)).weights, f.weights);
  auto m = maxent_sampler(g, maxent_solve(g, default_demands(g)));
  auto back = induced_orientation(g, learner_table(g, m));
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    for (std::size_t k = 0; k < m.weights[e].size(); ++k) EXPECT_NEAR(back.weights[e][k], m.weights[e][k], 1e-15);
}

TEST(Transduct, InducedOrientationRejectsImproperLearner) {
  auto g = fixtures::figure_graph();
  auto l = learner_table(g, toward_origin(g));
  // 010 at hole a is a self-loop: its only completion is label 0.
  l.table[{0, {1, 0}}] = 1;
  EXPECT_THROW(induced_orientation(g, l), DomainError);
  auto r = learner_table(g, flow_orient(g, Rational(7, 3)));
  r.table[{0, {1, 0}}] = {{0, Rational(1, 2)}, {1, Rational(1, 2)}};
  EXPECT_THROW(induced_orientation(g, r), DomainError);
}

TEST(Transduct, ErrorEqualsOutDegreeOverN) {
  std::mt19937_64 rng(17);
  for (const auto& in : fixtures::random_suite(100, 4)) {
    auto s = fixtures::random_sample(rng, in);
    auto g = build_oig(in.cls, s);
    auto o = kcore_orient(g).orientation;
    auto l = learner_table(g, o);
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      EXPECT_EQ(transductive_error(g, l, v) * Rational(in.n), out_degree(g, o, v));
    if (std::pow(static_cast<double>(in.cls.num_labels()), in.n) > 81) continue;
    auto a = build_agnostic_oig(in.cls, s);
    auto fo = flow_orient(a, hall_density_flow(a).value);
    auto fl = learner_table(a, fo);
    for (std::size_t v = 0; v < a.num_vertices(); ++v)
      EXPECT_EQ(transductive_error(a, fl, v) * Rational(in.n) + Rational(a.credits()[v]), out_degree(a, fo, v));
  }
}

TEST(Transduct, Cantor) {
  auto r = cantor_failure_demo(8, 2);
  EXPECT_EQ(r.expected_error, Rational(9, 16));
  EXPECT_TRUE(r.threshold_exceeded);
  EXPECT_FALSE(r.in_proof_regime);
  EXPECT_EQ(cantor_failure_demo(4, 0).expected_error, Rational(1));
  auto big = cantor_failure_demo(16, 3);
  EXPECT_EQ(big.expected_error, Rational(343, 512));
  EXPECT_TRUE(big.threshold_exceeded);
  EXPECT_TRUE(big.in_proof_regime);
  EXPECT_FALSE(cantor_failure_demo(4, 3).threshold_exceeded);
  EXPECT_THROW(cantor_failure_demo(7, 1), DomainError);
  auto mc = cantor_failure_demo(8, 1, 4000, 3);
  EXPECT_TRUE(mc.within_3sigma);
}
