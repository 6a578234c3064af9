#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"

using namespace oiglab;

namespace {

constexpr std::size_t kCases = 500;

std::vector<OneInclusionGraph> random_graphs(std::uint64_t seed, bool with_agnostic) {
  std::mt19937_64 rng(seed);
  std::vector<OneInclusionGraph> out;
  for (const auto& in : fixtures::random_suite(kCases, seed)) {
    auto s = fixtures::random_sample(rng, in);
    out.push_back(build_oig(in.cls, s));
    if (with_agnostic && std::pow(static_cast<double>(in.cls.num_labels()), in.n) <= 24)
      out.push_back(build_agnostic_oig(in.cls, s));
  }
  return out;
}

// An arbitrary fractional orientation with small-denominator weights.
FractionalOrientation<Rational> random_fractional(const OneInclusionGraph& g, std::mt19937_64& rng) {
  FractionalOrientation<Rational> o;
  for (const auto& e : g.edges()) {
    std::vector<std::int64_t> raw;
    std::int64_t sum = 0;
    for (std::size_t k = 0; k < e.incident.size(); ++k) {
      raw.push_back(static_cast<std::int64_t>(rng() % 4));
      sum += raw.back();
    }
    if (sum == 0) {
      raw[0] = 1;
      sum = 1;
    }
    std::vector<Rational> w;
    for (auto r : raw) w.push_back(Rational(r, sum));
    o.weights.push_back(w);
  }
  return o;
}

}  // namespace

TEST(Properties, RealizableDegreeLaw) {
  for (const auto& g : random_graphs(101, false))
    for (std::size_t v = 0; v < g.num_vertices(); ++v) ASSERT_EQ(g.degree(v), static_cast<std::size_t>(g.n()));
}

TEST(Properties, InPlusOutIsDegree) {
  std::mt19937_64 rng(7);
  for (const auto& g : random_graphs(102, true)) {
    auto f = random_fractional(g, rng);
    auto in = in_degrees(g, f);
    auto out = out_degrees(g, f);
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      ASSERT_EQ(in[v] + out[v], Rational(static_cast<std::int64_t>(g.degree(v))));
  }
}

TEST(Properties, OrientationCoorientationDuality) {
  std::mt19937_64 rng(8);
  for (const auto& g : random_graphs(103, false)) {
    auto f = random_fractional(g, rng);
    for (int num = 0; num <= 2 * g.n(); ++num) {
      Rational alpha(num, 2);
      ASSERT_EQ(verify_orientation(g, f, alpha), verify_coorientation(g, f, Rational(g.n()) - alpha))
          << "alpha " << alpha;
    }
  }
}

TEST(Properties, JsonRoundTrips) {
  std::mt19937_64 rng(9);
  std::size_t checked = 0;
  for (const auto& in : fixtures::random_suite(kCases, 104)) {
    ASSERT_EQ(io::class_from_json(io::json::parse(io::to_json(in.cls).dump())), in.cls);
    auto g = build_oig(in.cls, fixtures::random_sample(rng, in));
    ASSERT_EQ(io::graph_from_json(io::json::parse(io::export_graph(g, "json"))), g);
    auto f = random_fractional(g, rng);
    auto back = io::orientation_from_json(g, io::json::parse(io::to_json(g, f).dump()));
    auto weights = std::get<FractionalOrientation<Rational>>(back).weights;
    ASSERT_EQ(in_degrees(g, FractionalOrientation<Rational>{weights}), in_degrees(g, f));
    auto k = kcore_orient(g).orientation;
    ASSERT_EQ(std::get<Orientation>(io::orientation_from_json(g, io::to_json(k))).target, k.target);
    ++checked;
  }
  EXPECT_GE(checked, kCases);
}

TEST(Properties, HallOracleEquivalenceAndCertificate) {
  for (const auto& g : random_graphs(105, true)) {
    auto b = hall_density_brute(g);
    auto f = hall_density_flow(g);
    ASSERT_EQ(b.value, f.value);
    ASSERT_TRUE(verify_orientation(g, *f.certificate, f.value));
  }
}

TEST(Properties, PeelingLaws) {
  for (const auto& g : random_graphs(106, false)) {
    auto r = kcore_orient(g);
    for (std::size_t e = 0; e < g.num_edges(); ++e)
      for (std::size_t v : g.edges()[e].incident) ASSERT_LE(r.layer[v], r.layer[r.orientation.target[e]]);
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      int later = 0;
      for (std::size_t e : g.edges_of(v)) {
        bool shared = false;
        for (std::size_t w : g.edges()[e].incident) shared |= r.layer[w] > r.layer[v];
        later += shared;
      }
      ASSERT_EQ(later, r.out_degree[v]);
      ASSERT_EQ(out_degree(g, r.orientation, v), Rational(r.out_degree[v]));
    }
    ASSERT_EQ(r.max_outdegree, degeneracy_brute(g));
    ASSERT_LE(Rational(r.max_outdegree), Rational(2) * (Rational(g.n()) - hall_density_flow(g).value));
    auto t = extract_regularizer(r, g.n());
    for (const auto& phi : t.phi) ASSERT_LT(phi, Rational(1, 2 * g.n()));
    ASSERT_EQ(regularizer_learner(g, t), learner_table(g, r.orientation));
  }
}

TEST(Properties, CoorientationMatchesErrorRate) {
  for (const auto& in : fixtures::random_suite(60, 107)) {
    if (std::pow(static_cast<double>(in.cls.num_points()), in.n) > 81) continue;
    auto factory = [](const OneInclusionGraph& g) { return learner_table(g, kcore_orient(g).orientation); };
    auto rate = error_rate(in.cls, in.n, factory);
    Rational alpha = rate.error_rate * Rational(in.n);
    bool all = true, all_below = true;
    for (const auto& s : enumerate_samples(in.cls.num_points(), in.n, false)) {
      auto g = build_oig(in.cls, s);
      auto o = induced_orientation(g, factory(g));
      all = all && verify_coorientation(g, o, alpha);
      if (alpha > Rational(0)) all_below = all_below && verify_coorientation(g, o, alpha - Rational(1, 2 * in.n));
    }
    EXPECT_TRUE(all);
    if (alpha > Rational(0)) EXPECT_FALSE(all_below);
  }
}
