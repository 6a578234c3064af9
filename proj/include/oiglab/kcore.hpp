#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "oiglab/error.hpp"
#include "oiglab/oig.hpp"
#include "oiglab/orientation.hpp"
#include "oiglab/rational.hpp"

namespace oiglab {

/// Outcome of k-core peeling.
///
/// layer[v] is the 1-based removal rank. Every edge points at its
/// last-removed incident vertex, so the orientation is acyclic and a
/// vertex's out-degree is its degree among the vertices still present when
/// it was removed.
struct PeelingResult {
  std::vector<std::size_t> removal_order;
  std::vector<int> layer;
  Orientation orientation;
  std::vector<int> out_degree;
  int max_outdegree = 0;
};

/// Repeatedly removes the vertex of lowest degree, where degree counts only
/// edges with at least two incident vertices still present. Ties go to the
/// lexicographically largest pattern (= largest vertex index).
inline PeelingResult kcore_orient(const OneInclusionGraph& g) {
  if (g.mode() != Mode::realizable)
    throw DomainError("k-core orientation is defined for realizable graphs only");
  const std::size_t nv = g.num_vertices();
  std::vector<std::size_t> alive_count(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) alive_count[e] = g.edges()[e].incident.size();
  std::vector<char> removed(nv, 0);

  auto live_degree = [&](std::size_t v) {
    int d = 0;
    for (std::size_t e : g.edges_of(v)) d += alive_count[e] >= 2;
    return d;
  };

  PeelingResult r;
  r.layer.assign(nv, 0);
  r.out_degree.assign(nv, 0);
  for (std::size_t step = 0; step < nv; ++step) {
    std::size_t pick = nv;
    int pick_deg = 0;
    for (std::size_t v = 0; v < nv; ++v) {
      if (removed[v]) continue;
      int d = live_degree(v);
      if (pick == nv || d <= pick_deg) {
        pick = v;
        pick_deg = d;
      }
    }
    removed[pick] = 1;
    r.removal_order.push_back(pick);
    r.layer[pick] = static_cast<int>(step) + 1;
    r.out_degree[pick] = pick_deg;
    r.max_outdegree = std::max(r.max_outdegree, pick_deg);
    for (std::size_t e : g.edges_of(pick)) --alive_count[e];
  }

  r.orientation.target.resize(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& inc = g.edges()[e].incident;
    r.orientation.target[e] = *std::max_element(
        inc.begin(), inc.end(), [&](std::size_t a, std::size_t b) { return r.layer[a] < r.layer[b]; });
  }
  return r;
}

/// Degeneracy through peeling: the largest degree seen at removal time.
inline int degeneracy_peeling(const OneInclusionGraph& g) { return kcore_orient(g).max_outdegree; }

/// Vertex potential read off a peeling: phi(v) = (1 - 1/layer) / (2n).
/// Strictly increasing along the removal order and below 1/(2n); every edge
/// of the peeling orientation points at its incident argmax of phi.
struct RegularizerTable {
  std::vector<Rational> phi;
  std::vector<int> layers;
  int n = 0;

  /// The SRM penalty minimized by the induced learner,
  /// psi(v) = 1/(2n) - phi(v) = 1/(2 n layer), in (0, 1/(2n)].
  [[nodiscard]] Rational psi(std::size_t v) const {
    return Rational(1, 2 * static_cast<Rational::int_type>(n)) - phi.at(v);
  }
};

inline RegularizerTable extract_regularizer(const PeelingResult& peeling, int n) {
  if (n < 1) throw DomainError("n must be >= 1");
  RegularizerTable t;
  t.n = n;
  t.layers = peeling.layer;
  t.phi.reserve(peeling.layer.size());
  for (int l : peeling.layer) {
    if (l < 1) throw DomainError("peeling layers must be positive");
    t.phi.push_back(Rational(1, 2 * n) * (Rational(1) - Rational(1, l)));
  }
  return t;
}

/// The learner induced by SRM with the extracted regularizer: for each
/// partially labeled dataset, minimize (empirical risk on the n-1 revealed
/// labels) + psi over every vertex of the graph, and predict the winner's
/// label at the hole.
inline DeterministicLearner regularizer_learner(const OneInclusionGraph& g,
                                                const RegularizerTable& table) {
  if (table.phi.size() != g.num_vertices()) throw DomainError("regularizer/graph mismatch");
  DeterministicLearner learner;
  const int n = g.n();
  for (const auto& edge : g.edges()) {
    std::size_t best = g.num_vertices();
    Rational best_score;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      int mistakes = hamming(punch(g.vertices()[v], edge.hole), edge.context);
      Rational risk = n > 1 ? Rational(mistakes, n - 1) : Rational(0);
      Rational score = risk + table.psi(v);
      if (best == g.num_vertices() || score < best_score) {
        best = v;
        best_score = score;
      }
    }
    learner.table.emplace(EdgeKey{edge.hole, edge.context}, g.vertices()[best][edge.hole]);
  }
  return learner;
}

}  // namespace oiglab
