#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"

using namespace oiglab;

TEST(Io, ClassRoundTrip) {
  auto c = gen_random(4, 3, 7, 2);
  EXPECT_EQ(io::class_from_json(io::to_json(c)), c);
  EXPECT_THROW(io::class_from_json(io::json::parse(R"({"points":["a"]})")), DomainError);
  EXPECT_THROW(io::class_from_json(io::json::parse(R"({"points":["a"],"labels":["0"],"hypotheses":[[3]]})")),
               DomainError);
}

TEST(Io, GraphRoundTrip) {
  auto g = fixtures::figure_graph();
  EXPECT_EQ(io::graph_from_json(io::json::parse(io::export_graph(g, "json"))), g);
  auto a = build_agnostic_oig(fixtures::singleton_class(2), Sample::make({0, 1}, 2));
  EXPECT_EQ(io::graph_from_json(io::to_json(a)), a);
  auto j = io::to_json(a);
  j.erase("class_patterns");
  j.erase("num_labels");
  EXPECT_EQ(io::graph_from_json(j), a);
  j["credits"][3] = 1;
  EXPECT_THROW(io::graph_from_json(j), DomainError);
}

TEST(Io, Dot) {
  auto dot = io::to_dot(fixtures::figure_graph());
  EXPECT_EQ(std::count(dot.begin(), dot.end(), '\n'), 2 + 3 + 7 + 1);
  EXPECT_NE(dot.find("v0 [label=\"0 0 0\"]"), std::string::npos);
  auto three = build_agnostic_oig(HypothesisClass::make({"a", "b"}, {"0", "1", "2"}, {{0, 0}}), Sample::make({0, 1}, 2));
  auto d3 = io::to_dot(three);
  std::size_t stars = 0;
  for (std::size_t p = d3.find("shape=point"); p != std::string::npos; p = d3.find("shape=point", p + 1)) ++stars;
  EXPECT_EQ(stars, 6u);
  EXPECT_THROW(io::export_graph(three, "svg"), DomainError);
}

TEST(Io, OrientationRoundTrip) {
  auto g = fixtures::figure_graph();
  auto k = kcore_orient(g).orientation;
  EXPECT_EQ(std::get<Orientation>(io::orientation_from_json(g, io::to_json(k))).target, k.target);
  auto f = flow_orient(g, Rational(7, 3));
  EXPECT_EQ(std::get<FractionalOrientation<Rational>>(io::orientation_from_json(g, io::to_json(g, f))).weights,
            f.weights);
  auto m = maxent_sampler(g, maxent_solve(g, default_demands(g)));
  auto back = std::get<FractionalOrientation<double>>(io::orientation_from_json(g, io::to_json(g, m)));
  EXPECT_EQ(back.weights, m.weights);
  auto bad = io::to_json(k);
  bad["targets"][0] = 1;
  EXPECT_THROW(io::orientation_from_json(g, bad), DomainError);
}

TEST(Io, SolverOutputs) {
  auto g = fixtures::figure_graph();
  auto sol = maxent_solve(g, default_demands(g));
  auto j = io::to_json(sol);
  for (const char* key : {"lambda", "rho", "c", "kkt_residual", "iterations", "capped"}) EXPECT_TRUE(j.contains(key));
  auto back = io::maxent_from_json(j);
  EXPECT_EQ(back.lambda, sol.lambda);
  EXPECT_EQ(back.rho, sol.rho);
  auto t = extract_regularizer(kcore_orient(g), 3);
  auto tj = io::to_json(t);
  EXPECT_EQ(tj["phi"], io::json::parse(R"(["1/9","1/12","0"])"));
  auto tb = io::regularizer_from_json(tj);
  EXPECT_EQ(tb.phi, t.phi);
  EXPECT_EQ(tb.layers, t.layers);
  auto hc = io::to_json(hall_complexity(fixtures::figure_class(), 3), fixtures::figure_class());
  EXPECT_EQ(hc["hall"], "7/3");
  EXPECT_EQ(hc["pi"], "2/3");
  EXPECT_EQ(hc["epsilon"], "2/9");
  EXPECT_EQ(hc["argmax_S"], io::json::parse(R"(["a","b","c"])"));
}

TEST(Io, Config) {
  auto c = config_from_json(io::json::parse(R"({"vertex_cap": 10, "seed": 4, "threads": 2})"));
  EXPECT_EQ(c.vertex_cap, 10u);
  EXPECT_EQ(c.seed, 4u);
  EXPECT_EQ(config_from_json(to_json(c)).threads, 2u);
  EXPECT_THROW(config_from_json(io::json::parse(R"({"vertex_cap": 0})")), DomainError);
  EXPECT_THROW(config_from_json(io::json::parse(R"({"kkt_tol": 2})")), DomainError);
  EXPECT_THROW(config_from_json(io::json::parse(R"({"cap": 3})")), DomainError);
}
