#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include "oiglab/classes.hpp"
#include "oiglab/error.hpp"
#include "oiglab/hall.hpp"
#include "oiglab/oig.hpp"
#include "oiglab/orientation.hpp"
#include "oiglab/parallel.hpp"
#include "oiglab/rational.hpp"

namespace oiglab {

namespace detail {

template <class Table>
const auto& lookup(const Table& table, int hole, const Pattern& context) {
  auto it = table.find(EdgeKey{hole, context});
  if (it == table.end())
    throw DomainError("learner/graph mismatch: no prediction for hole " + std::to_string(hole));
  return it->second;
}

template <class T>
T mass_of(const std::vector<std::pair<int, T>>& dist, int label) {
  for (const auto& [l, p] : dist)
    if (l == label) return p;
  return T{0};
}

}  // namespace detail

/// Leave-one-out error of the learner when the truth is vertex v:
/// (1/n) * sum over holes of the loss at the hole, minus credit(v)/n in
/// agnostic mode (so it can be negative for a single vertex).
inline Rational transductive_error(const OneInclusionGraph& g, const DeterministicLearner& learner,
                                   std::size_t v) {
  if (v >= g.num_vertices()) throw DomainError("learner/graph mismatch: unknown vertex");
  const auto& p = g.vertices()[v];
  long mistakes = 0;
  for (int i = 0; i < g.n(); ++i)
    mistakes += detail::lookup(learner.table, i, punch(p, i)) != p[static_cast<std::size_t>(i)];
  return Rational(mistakes - g.credits()[v], g.n());
}

template <class T>
T transductive_error(const OneInclusionGraph& g, const RandomizedLearner<T>& learner,
                     std::size_t v) {
  if (v >= g.num_vertices()) throw DomainError("learner/graph mismatch: unknown vertex");
  const auto& p = g.vertices()[v];
  T loss{0};
  for (int i = 0; i < g.n(); ++i) {
    const auto& dist = detail::lookup(learner.table, i, punch(p, i));
    loss += T{1} - detail::mass_of(dist, p[static_cast<std::size_t>(i)]);
  }
  return (loss - T(static_cast<long>(g.credits()[v]))) / T(static_cast<long>(g.n()));
}

/// Orientation induced by a learner: each edge points at the incident vertex
/// whose hole label the learner predicts.
inline Orientation induced_orientation(const OneInclusionGraph& g,
                                       const DeterministicLearner& learner) {
  if (learner.table.size() != g.num_edges())
    throw DomainError("learner/graph mismatch: table size differs from edge count");
  Orientation o;
  o.target.reserve(g.num_edges());
  for (const auto& edge : g.edges()) {
    int label = detail::lookup(learner.table, edge.hole, edge.context);
    auto it = std::find_if(edge.incident.begin(), edge.incident.end(), [&](std::size_t v) {
      return g.vertices()[v][static_cast<std::size_t>(edge.hole)] == label;
    });
    if (it == edge.incident.end())
      throw DomainError("learner is not locally proper: label " + std::to_string(label) +
                        " at hole " + std::to_string(edge.hole) +
                        " matches no incident vertex");
    o.target.push_back(*it);
  }
  return o;
}

template <class T>
FractionalOrientation<T> induced_orientation(const OneInclusionGraph& g,
                                             const RandomizedLearner<T>& learner) {
  if (learner.table.size() != g.num_edges())
    throw DomainError("learner/graph mismatch: table size differs from edge count");
  FractionalOrientation<T> o;
  o.weights.reserve(g.num_edges());
  for (const auto& edge : g.edges()) {
    const auto& dist = detail::lookup(learner.table, edge.hole, edge.context);
    std::vector<T> w;
    T covered{0};
    for (std::size_t v : edge.incident) {
      w.push_back(detail::mass_of(dist, g.vertices()[v][static_cast<std::size_t>(edge.hole)]));
      covered += w.back();
    }
    T total{0};
    for (const auto& [l, p] : dist) total += p;
    bool proper;
    if constexpr (detail::is_exact_v<T>)
      proper = covered == total;
    else
      proper = std::abs(covered - total) <= kFloatTolerance;
    if (!proper)
      throw DomainError("learner is not locally proper at hole " + std::to_string(edge.hole));
    o.weights.push_back(std::move(w));
  }
  validate(g, o);
  return o;
}

template <class Learner>
using error_t = decltype(transductive_error(std::declval<const OneInclusionGraph&>(),
                                            std::declval<const Learner&>(), std::size_t{}));

template <class T>
struct GraphErrorReport {
  T max_error{};
  std::size_t argmax_vertex = 0;
  std::vector<T> per_vertex;
};

/// Per-vertex transductive errors on one graph and their maximum.
template <class Learner>
auto graph_error(const OneInclusionGraph& g, const Learner& learner) {
  using T = error_t<Learner>;
  GraphErrorReport<T> r;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    r.per_vertex.push_back(transductive_error(g, learner, v));
    if (v == 0 || r.per_vertex[v] > r.max_error) {
      r.max_error = r.per_vertex[v];
      r.argmax_vertex = v;
    }
  }
  return r;
}

struct ErrorRateOptions {
  Mode mode = Mode::realizable;
  bool multisets = false;  // judge the learner on every ordering by default
  std::size_t sequence_cap = kDefaultSequenceCap;
  std::size_t agnostic_cap = kDefaultAgnosticCap;
  unsigned threads = 0;
};

template <class T>
struct ErrorRateReport {
  T error_rate{};
  Sample argmax_sample;
  Pattern argmax_vertex;
  std::vector<T> per_vertex;  // at the argmax sample
  std::size_t samples = 0;
};

/// Worst-case transductive error of a learner family over all samples of
/// size n and all vertices. `factory` maps a graph to a learner table.
template <class Factory>
auto error_rate(const HypothesisClass& cls, int n, Factory&& factory,
                const ErrorRateOptions& opt = {}) {
  using Learner = std::decay_t<std::invoke_result_t<Factory&, const OneInclusionGraph&>>;
  using T = error_t<Learner>;
  auto samples = enumerate_samples(cls.num_points(), n, opt.multisets, opt.sequence_cap);
  struct Partial {
    GraphErrorReport<T> report;
    Pattern vertex;
  };
  auto partials = parallel_map(samples.size(), opt.threads, [&](std::size_t i) {
    auto g = build_graph(cls, samples[i], opt.mode, opt.agnostic_cap);
    auto learner = factory(g);
    Partial p{graph_error(g, learner), {}};
    p.vertex = g.vertices()[p.report.argmax_vertex];
    return p;
  });
  ErrorRateReport<T> r;
  r.samples = samples.size();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i == 0 || partials[i].report.max_error > r.error_rate) {
      r.error_rate = partials[i].report.max_error;
      r.argmax_sample = samples[i];
      r.argmax_vertex = partials[i].vertex;
      r.per_vertex = partials[i].report.per_vertex;
    }
  }
  return r;
}

struct CantorReport {
  Rational expected_error;
  bool threshold_exceeded = false;  // expected error at least 1/2
  bool in_proof_regime = false;     // m < d/4
  std::size_t trials = 0;
  double monte_carlo = 0;
  double sigma = 0;
  bool within_3sigma = true;
};

/// The failure of property-P local regularizers on the first Cantor class.
///
/// Truth is h_A with A = {x1..x_{d/2}}; the distribution is uniform on
/// {(x, *) : x outside A}. With psi == 0 every consistent hypothesis ties, and
/// the adversarial induced learner predicts a set label at every unseen
/// point, so the expected error equals the chance that the test point was
/// not drawn into the sample: (1 - 2/d)^m. With trials > 0 the learner is
/// also simulated by scanning the class for consistent hypotheses.
inline CantorReport cantor_failure_demo(int d, int m, std::size_t trials = 0,
                                        std::uint64_t seed = 0,
                                        std::size_t cap = kDefaultCantorCap) {
  if (d < 2 || d % 2 != 0) throw DomainError("d must be even and at least 2");
  if (m < 0) throw DomainError("m must be nonnegative");
  CantorReport r;
  r.expected_error = pow(Rational(d - 2, d), static_cast<unsigned>(m));
  r.threshold_exceeded = r.expected_error >= Rational(1, 2);
  r.in_proof_regime = 4 * m < d;
  r.trials = trials;
  if (trials == 0) return r;

  const auto cls = gen_cantor(d, cap);
  const int star = static_cast<int>(cls.num_labels()) - 1;
  std::vector<int> support;  // X_d \ A for A = {x1..x_{d/2}}
  for (int x = d / 2; x < d; ++x) support.push_back(x);

  std::mt19937_64 rng(seed);
  auto draw = [&] { return support[rng() % support.size()]; };
  std::size_t errors = 0;
  std::vector<int> sample(static_cast<std::size_t>(m));
  for (std::size_t t = 0; t < trials; ++t) {
    for (auto& s : sample) s = draw();
    int x = draw();
    // Among hypotheses with zero empirical risk on the *-labelled sample,
    // pick one that names a set at x whenever possible.
    bool predicts_set = false;
    for (const auto& h : cls.hypotheses()) {
      bool consistent = std::all_of(sample.begin(), sample.end(),
                                    [&](int s) { return h[static_cast<std::size_t>(s)] == star; });
      if (consistent && h[static_cast<std::size_t>(x)] != star) {
        predicts_set = true;
        break;
      }
    }
    errors += predicts_set;  // the true label at x is *
  }
  const double p = r.expected_error.to_double();
  r.monte_carlo = static_cast<double>(errors) / static_cast<double>(trials);
  r.sigma = std::sqrt(p * (1 - p) / static_cast<double>(trials));
  r.within_3sigma = std::abs(r.monte_carlo - p) <= 3 * r.sigma;
  return r;
}

}  // namespace oiglab
