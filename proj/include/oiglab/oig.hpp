#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "oiglab/classes.hpp"
#include "oiglab/error.hpp"

namespace oiglab {

enum class Mode { realizable, agnostic };

inline const char* to_string(Mode m) { return m == Mode::realizable ? "realizable" : "agnostic"; }

/// A hole-punched pattern: the vertices that agree with `context` everywhere
/// except possibly at coordinate `hole`.
struct Hyperedge {
  int hole = 0;
  Pattern context;                    // length n-1
  std::vector<std::size_t> incident;  // sorted vertex indices

  friend bool operator==(const Hyperedge&, const Hyperedge&) = default;
};

/// Pattern with coordinate `hole` removed.
inline Pattern punch(const Pattern& p, int hole) {
  Pattern c;
  c.reserve(p.size() - 1);
  for (std::size_t j = 0; j < p.size(); ++j)
    if (static_cast<int>(j) != hole) c.push_back(p[j]);
  return c;
}

inline int hamming(const Pattern& a, const Pattern& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

inline constexpr std::size_t kDefaultAgnosticCap = 1'000'000;

/// One-inclusion hypergraph of a restricted class.
///
/// Vertices are kept in lexicographic order; edges are ordered by
/// (hole, context). Every vertex lies on exactly one edge per hole, so
/// degrees are exactly n (self-loops included). In agnostic mode the vertex
/// set is all of Y^n and `credits` holds each vertex's Hamming distance to
/// the restricted class.
class OneInclusionGraph {
 public:
  OneInclusionGraph() = default;

  /// Assembles a graph from raw parts and checks every structural invariant.
  static OneInclusionGraph from_parts(Mode mode, int n, int num_labels,
                                      std::vector<Pattern> vertices,
                                      std::vector<Hyperedge> edges, std::vector<int> credits,
                                      std::vector<Pattern> class_patterns) {
    OneInclusionGraph g;
    g.mode_ = mode;
    g.n_ = n;
    g.num_labels_ = num_labels;
    g.vertices_ = std::move(vertices);
    g.edges_ = std::move(edges);
    g.credits_ = std::move(credits);
    g.class_patterns_ = std::move(class_patterns);
    g.index_and_check();
    return g;
  }

  [[nodiscard]] Mode mode() const noexcept { return mode_; }
  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] int num_labels() const noexcept { return num_labels_; }
  [[nodiscard]] const std::vector<Pattern>& vertices() const noexcept { return vertices_; }
  [[nodiscard]] const std::vector<Hyperedge>& edges() const noexcept { return edges_; }
  [[nodiscard]] const std::vector<int>& credits() const noexcept { return credits_; }
  [[nodiscard]] const std::vector<Pattern>& class_patterns() const noexcept {
    return class_patterns_;
  }
  [[nodiscard]] std::size_t num_vertices() const noexcept { return vertices_.size(); }
  [[nodiscard]] std::size_t num_edges() const noexcept { return edges_.size(); }

  /// Edge ids incident to v, indexed by hole.
  [[nodiscard]] const std::vector<std::size_t>& edges_of(std::size_t v) const {
    return vertex_edges_.at(v);
  }
  [[nodiscard]] std::size_t edge_at(std::size_t v, int hole) const {
    return vertex_edges_.at(v).at(static_cast<std::size_t>(hole));
  }
  [[nodiscard]] std::size_t degree(std::size_t v) const { return vertex_edges_.at(v).size(); }

  [[nodiscard]] std::optional<std::size_t> find_vertex(const Pattern& p) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), p);
    if (it == vertices_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
  }

  [[nodiscard]] std::optional<std::size_t> find_edge(int hole, const Pattern& context) const {
    auto key = std::make_pair(hole, context);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key,
                               [](const Hyperedge& e, const std::pair<int, Pattern>& k) {
                                 return std::tie(e.hole, e.context) < std::tie(k.first, k.second);
                               });
    if (it == edges_.end() || it->hole != hole || it->context != context) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  friend bool operator==(const OneInclusionGraph& a, const OneInclusionGraph& b) {
    return a.mode_ == b.mode_ && a.n_ == b.n_ && a.num_labels_ == b.num_labels_ &&
           a.vertices_ == b.vertices_ && a.edges_ == b.edges_ && a.credits_ == b.credits_ &&
           a.class_patterns_ == b.class_patterns_;
  }

 private:
  void index_and_check() {
    if (n_ < 1) throw DomainError("graph must have n >= 1");
    if (vertices_.empty()) throw DomainError("graph has no vertices");
    if (credits_.size() != vertices_.size())
      throw DomainError("credits length does not match vertex count");
    if (!std::is_sorted(vertices_.begin(), vertices_.end()) ||
        std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
      throw DomainError("vertices must be sorted and distinct");
    for (const auto& v : vertices_) {
      if (static_cast<int>(v.size()) != n_) throw DomainError("vertex length differs from n");
      for (int x : v)
        if (x < 0 || x >= num_labels_) throw DomainError("vertex label out of range");
    }
    for (std::size_t e = 1; e < edges_.size(); ++e)
      if (!(std::tie(edges_[e - 1].hole, edges_[e - 1].context) <
            std::tie(edges_[e].hole, edges_[e].context)))
        throw DomainError("edges must be sorted by (hole, context) and distinct");

    vertex_edges_.assign(vertices_.size(), std::vector<std::size_t>(n_, kUnset));
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto& edge = edges_[e];
      if (edge.hole < 0 || edge.hole >= n_) throw DomainError("edge hole out of range");
      if (static_cast<int>(edge.context.size()) != n_ - 1)
        throw DomainError("edge context length differs from n-1");
      if (edge.incident.empty()) throw DomainError("edge with no incident vertex");
      if (!std::is_sorted(edge.incident.begin(), edge.incident.end()))
        throw DomainError("edge incidence must be sorted");
      if (edge.incident.size() > static_cast<std::size_t>(num_labels_))
        throw DomainError("edge has more incident vertices than labels");
      for (std::size_t v : edge.incident) {
        if (v >= vertices_.size()) throw DomainError("edge references unknown vertex");
        if (punch(vertices_[v], edge.hole) != edge.context)
          throw DomainError("incident vertex disagrees with edge context");
        auto& slot = vertex_edges_[v][edge.hole];
        if (slot != kUnset) throw DomainError("vertex lies on two edges with the same hole");
        slot = e;
      }
    }
    for (const auto& slots : vertex_edges_)
      for (std::size_t s : slots)
        if (s == kUnset) throw DomainError("vertex degree differs from n");
    // Completeness: every vertex matching an edge's context is incident.
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      for (int i = 0; i < n_; ++i)
        if (auto other = find_edge(i, punch(vertices_[v], i)); !other || *other != edge_at(v, i))
          throw DomainError("edge incidence is incomplete");

    for (const auto& h : class_patterns_)
      if (static_cast<int>(h.size()) != n_) throw DomainError("class pattern length differs from n");
    if (mode_ == Mode::realizable) {
      for (int c : credits_)
        if (c != 0) throw DomainError("realizable graph with nonzero credit");
      if (class_patterns_ != vertices_)
        throw DomainError("realizable vertices must equal the restricted class");
    } else {
      std::size_t expected = 1;
      for (int i = 0; i < n_; ++i) expected *= static_cast<std::size_t>(num_labels_);
      if (vertices_.size() != expected) throw DomainError("agnostic graph must span Y^n");
      for (const auto& e : edges_)
        if (e.incident.size() != static_cast<std::size_t>(num_labels_))
          throw DomainError("agnostic edge must have |Y| incident vertices");
      if (class_patterns_.empty()) throw DomainError("agnostic graph needs the restricted class");
      for (std::size_t v = 0; v < vertices_.size(); ++v) {
        int best = n_;
        for (const auto& h : class_patterns_) best = std::min(best, hamming(vertices_[v], h));
        if (credits_[v] != best) throw DomainError("credit differs from Hamming distance to class");
      }
    }
  }

  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  Mode mode_ = Mode::realizable;
  int n_ = 0;
  int num_labels_ = 0;
  std::vector<Pattern> vertices_;
  std::vector<Hyperedge> edges_;
  std::vector<int> credits_;
  std::vector<Pattern> class_patterns_;
  std::vector<std::vector<std::size_t>> vertex_edges_;
};

namespace detail {

inline std::vector<Hyperedge> group_edges(const std::vector<Pattern>& vertices, int n) {
  std::vector<Hyperedge> edges;
  for (int i = 0; i < n; ++i) {
    std::map<Pattern, std::vector<std::size_t>> by_context;
    for (std::size_t v = 0; v < vertices.size(); ++v) by_context[punch(vertices[v], i)].push_back(v);
    for (auto& [context, incident] : by_context)
      edges.push_back(Hyperedge{i, context, std::move(incident)});
  }
  return edges;
}

}  // namespace detail

/// Realizable one-inclusion graph G(H|_S).
inline OneInclusionGraph build_oig(const HypothesisClass& cls, const Sample& sample) {
  auto vertices = restrict_to(cls, sample);
  if (vertices.empty()) throw DomainError("empty restriction");
  const int n = static_cast<int>(sample.size());
  auto edges = detail::group_edges(vertices, n);
  std::vector<int> credits(vertices.size(), 0);
  auto patterns = vertices;
  return OneInclusionGraph::from_parts(Mode::realizable, n, static_cast<int>(cls.num_labels()),
                                       std::move(vertices), std::move(edges), std::move(credits),
                                       std::move(patterns));
}

/// Agnostic one-inclusion graph on all of Y^n with Hamming credits.
inline OneInclusionGraph build_agnostic_oig(const HypothesisClass& cls, const Sample& sample,
                                            std::size_t cap = kDefaultAgnosticCap) {
  auto restricted = restrict_to(cls, sample);
  const int n = static_cast<int>(sample.size());
  const int k = static_cast<int>(cls.num_labels());
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= static_cast<std::size_t>(k);
    if (total > cap)
      throw DomainError("cap exceeded: |Y|^n = " + std::to_string(k) + "^" + std::to_string(n) +
                        " > " + std::to_string(cap));
  }
  std::vector<Pattern> vertices;
  vertices.reserve(total);
  Pattern p(n, 0);
  for (std::size_t code = 0; code < total; ++code) {
    vertices.push_back(p);
    for (int i = n - 1; i >= 0; --i) {
      if (++p[i] < k) break;
      p[i] = 0;
    }
  }
  std::vector<int> credits(total);
  for (std::size_t v = 0; v < total; ++v) {
    int best = n;
    for (const auto& h : restricted) best = std::min(best, hamming(vertices[v], h));
    credits[v] = best;
  }
  // Y^n in lexicographic order: the vertices sharing (hole i, context) are
  // the k codes differing only in digit i, which group_edges recovers.
  auto edges = detail::group_edges(vertices, n);
  return OneInclusionGraph::from_parts(Mode::agnostic, n, k, std::move(vertices), std::move(edges),
                                       std::move(credits), std::move(restricted));
}

/// Edge-vertex incidence graph: partially labeled datasets on the left,
/// fully labeled ones on the right.
struct BipartiteView {
  std::vector<std::size_t> left;   // edge ids
  std::vector<std::size_t> right;  // vertex ids
  std::vector<std::vector<std::size_t>> left_adjacency;
  std::vector<std::vector<std::size_t>> right_adjacency;
};

inline BipartiteView bipartite_view(const OneInclusionGraph& g) {
  BipartiteView view;
  view.left.resize(g.num_edges());
  view.right.resize(g.num_vertices());
  view.left_adjacency.resize(g.num_edges());
  view.right_adjacency.resize(g.num_vertices());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    view.left[e] = e;
    view.left_adjacency[e] = g.edges()[e].incident;
    for (std::size_t v : g.edges()[e].incident) view.right_adjacency[v].push_back(e);
  }
  for (std::size_t v = 0; v < g.num_vertices(); ++v) view.right[v] = v;
  return view;
}

}  // namespace oiglab
