#pragma once

#include <random>
#include <vector>

#include "oiglab/oiglab.hpp"

namespace fixtures {

using namespace oiglab;

inline HypothesisClass figure_class() {
  return HypothesisClass::make({"a", "b", "c"}, {"0", "1"}, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
}

inline OneInclusionGraph figure_graph() { return build_oig(figure_class(), Sample::make({0, 1, 2}, 3)); }

inline HypothesisClass singleton_class(int points = 3) {
  return HypothesisClass::make([&] {
    std::vector<std::string> p;
    for (int i = 0; i < points; ++i) p.push_back("x" + std::to_string(i));
    return p;
  }(), {"0", "1"}, {Pattern(static_cast<std::size_t>(points), 0)});
}

inline HypothesisClass full_binary(int points) {
  std::vector<Pattern> rows;
  for (int m = 0; m < (1 << points); ++m) {
    Pattern p;
    for (int i = points - 1; i >= 0; --i) p.push_back((m >> i) & 1);
    rows.push_back(p);
  }
  std::vector<std::string> pts;
  for (int i = 0; i < points; ++i) pts.push_back("x" + std::to_string(i));
  return HypothesisClass::make(pts, {"0", "1"}, rows);
}

inline std::size_t vertex_of(const OneInclusionGraph& g, const Pattern& p) { return g.find_vertex(p).value(); }

/// A random small instance: class with |X| <= 4, |Y| <= 3, |H| <= 8 and a sample length n <= 4.
struct Instance {
  HypothesisClass cls;
  int n = 1;
};

inline Instance random_instance(std::mt19937_64& rng, int max_labels = 3) {
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  int points = pick(1, 4);
  int labels = pick(2, max_labels);
  std::uint64_t total = 1;
  for (int i = 0; i < points; ++i) total *= static_cast<std::uint64_t>(labels);
  int size = pick(1, static_cast<int>(std::min<std::uint64_t>(8, total)));
  return {gen_random(points, labels, static_cast<std::size_t>(size), rng()), pick(1, 4)};
}

inline std::vector<Instance> random_suite(std::size_t count, std::uint64_t seed, int max_labels = 3) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_instance(rng, max_labels));
  return out;
}

/// One random sample of the instance's length over its domain.
inline Sample random_sample(std::mt19937_64& rng, const Instance& in) {
  std::vector<int> idx;
  for (int i = 0; i < in.n; ++i) idx.push_back(static_cast<int>(rng() % in.cls.num_points()));
  return Sample::make(idx, in.cls.num_points());
}

}  // namespace fixtures
