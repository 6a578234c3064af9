#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <type_traits>
#include <utility>
#include <vector>

#include "oiglab/error.hpp"
#include "oiglab/oig.hpp"
#include "oiglab/rational.hpp"

namespace oiglab {

inline constexpr double kFloatTolerance = 1e-9;

/// Deterministic orientation: each edge points at one incident vertex.
struct Orientation {
  std::vector<std::size_t> target;

  friend bool operator==(const Orientation&, const Orientation&) = default;
};

/// Randomized orientation. weights[e][k] is the mass edge e sends to
/// g.edges()[e].incident[k]. T is Rational (exact) or double.
template <class T>
struct FractionalOrientation {
  std::vector<std::vector<T>> weights;

  friend bool operator==(const FractionalOrientation&, const FractionalOrientation&) = default;
};

namespace detail {

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <class T>
T to_scalar(const Rational& r) {
  if constexpr (is_exact_v<T>)
    return r;
  else
    return r.to_double();
}

/// a <= b, exactly for rationals and within `tol` for doubles.
template <class T>
bool leq(const T& a, const T& b, double tol) {
  if constexpr (is_exact_v<T>)
    return a <= b;
  else
    return a <= b + tol;
}

}  // namespace detail

inline void validate(const OneInclusionGraph& g, const Orientation& o) {
  if (o.target.size() != g.num_edges()) throw DomainError("orientation/graph mismatch: edge count");
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& inc = g.edges()[e].incident;
    if (!std::binary_search(inc.begin(), inc.end(), o.target[e]))
      throw DomainError("orientation/graph mismatch: edge " + std::to_string(e) +
                        " points at a non-incident vertex");
  }
}

template <class T>
void validate(const OneInclusionGraph& g, const FractionalOrientation<T>& o,
              double tol = kFloatTolerance) {
  if (o.weights.size() != g.num_edges())
    throw DomainError("orientation/graph mismatch: edge count");
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& w = o.weights[e];
    if (w.size() != g.edges()[e].incident.size())
      throw DomainError("orientation/graph mismatch: weights of edge " + std::to_string(e));
    T sum{0};
    for (const auto& x : w) {
      if (x < T{0}) throw DomainError("negative orientation weight");
      sum += x;
    }
    if constexpr (detail::is_exact_v<T>) {
      if (sum != T{1}) throw DomainError("edge weights do not sum to 1");
    } else {
      if (std::abs(sum - 1.0) > tol) throw DomainError("edge weights do not sum to 1");
    }
  }
}

/// Lifts a deterministic orientation to point masses.
template <class T = Rational>
FractionalOrientation<T> to_fractional(const OneInclusionGraph& g, const Orientation& o) {
  validate(g, o);
  FractionalOrientation<T> f;
  f.weights.resize(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& inc = g.edges()[e].incident;
    f.weights[e].assign(inc.size(), T{0});
    auto k = std::lower_bound(inc.begin(), inc.end(), o.target[e]) - inc.begin();
    f.weights[e][static_cast<std::size_t>(k)] = T{1};
  }
  return f;
}

inline std::vector<Rational> in_degrees(const OneInclusionGraph& g, const Orientation& o) {
  validate(g, o);
  std::vector<Rational> in(g.num_vertices(), Rational(0));
  for (std::size_t t : o.target) in[t] += Rational(1);
  return in;
}

template <class T>
std::vector<T> in_degrees(const OneInclusionGraph& g, const FractionalOrientation<T>& o) {
  validate(g, o);
  std::vector<T> in(g.num_vertices(), T{0});
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& inc = g.edges()[e].incident;
    for (std::size_t k = 0; k < inc.size(); ++k) in[inc[k]] += o.weights[e][k];
  }
  return in;
}

template <class O>
auto in_degree(const OneInclusionGraph& g, const O& o, std::size_t v) {
  if (v >= g.num_vertices()) throw DomainError("orientation/graph mismatch: unknown vertex");
  return in_degrees(g, o)[v];
}

/// Out-degree: edges at v not pointing at v (expected count when fractional).
template <class O>
auto out_degree(const OneInclusionGraph& g, const O& o, std::size_t v) {
  auto in = in_degree(g, o, v);
  using T = decltype(in);
  return T(static_cast<long>(g.degree(v))) - in;
}

template <class O>
auto out_degrees(const OneInclusionGraph& g, const O& o) {
  auto in = in_degrees(g, o);
  using T = typename decltype(in)::value_type;
  std::vector<T> out(in.size());
  for (std::size_t v = 0; v < in.size(); ++v) out[v] = T(static_cast<long>(g.degree(v))) - in[v];
  return out;
}

/// Every out-degree is at most alpha + credit(v).
template <class O>
bool verify_coorientation(const OneInclusionGraph& g, const O& o, const Rational& alpha,
                          double tol = kFloatTolerance) {
  if (alpha < Rational(0)) throw DomainError("alpha must be nonnegative");
  auto out = out_degrees(g, o);
  using T = typename decltype(out)::value_type;
  for (std::size_t v = 0; v < out.size(); ++v)
    if (!detail::leq(out[v], detail::to_scalar<T>(alpha + Rational(g.credits()[v])), tol))
      return false;
  return true;
}

/// Every in-degree is at least max(0, alpha - credit(v)).
template <class O>
bool verify_orientation(const OneInclusionGraph& g, const O& o, const Rational& alpha,
                        double tol = kFloatTolerance) {
  if (alpha < Rational(0)) throw DomainError("alpha must be nonnegative");
  auto in = in_degrees(g, o);
  using T = typename decltype(in)::value_type;
  for (std::size_t v = 0; v < in.size(); ++v) {
    Rational demand = std::max(Rational(0), alpha - Rational(g.credits()[v]));
    if (!detail::leq(detail::to_scalar<T>(demand), in[v], tol)) return false;
  }
  return true;
}

/// A partially labeled dataset: the hole position and the n-1 revealed labels.
using EdgeKey = std::pair<int, Pattern>;

/// Deterministic transductive learner: predicted label per (hole, context).
struct DeterministicLearner {
  std::map<EdgeKey, int> table;

  friend bool operator==(const DeterministicLearner&, const DeterministicLearner&) = default;
};

/// Randomized transductive learner: label distribution per (hole, context),
/// listed by increasing label with strictly positive mass.
template <class T>
struct RandomizedLearner {
  std::map<EdgeKey, std::vector<std::pair<int, T>>> table;

  friend bool operator==(const RandomizedLearner&, const RandomizedLearner&) = default;
};

inline DeterministicLearner learner_table(const OneInclusionGraph& g, const Orientation& o) {
  validate(g, o);
  DeterministicLearner learner;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& edge = g.edges()[e];
    learner.table.emplace(EdgeKey{edge.hole, edge.context}, g.vertices()[o.target[e]][edge.hole]);
  }
  return learner;
}

template <class T>
RandomizedLearner<T> learner_table(const OneInclusionGraph& g, const FractionalOrientation<T>& o) {
  validate(g, o);
  RandomizedLearner<T> learner;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& edge = g.edges()[e];
    std::vector<std::pair<int, T>> dist;
    for (std::size_t k = 0; k < edge.incident.size(); ++k)
      if (o.weights[e][k] > T{0})
        dist.emplace_back(g.vertices()[edge.incident[k]][edge.hole], o.weights[e][k]);
    std::sort(dist.begin(), dist.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    learner.table.emplace(EdgeKey{edge.hole, edge.context}, std::move(dist));
  }
  return learner;
}

}  // namespace oiglab
