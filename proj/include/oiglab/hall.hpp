#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "oiglab/classes.hpp"
#include "oiglab/error.hpp"
#include "oiglab/flow.hpp"
#include "oiglab/oig.hpp"
#include "oiglab/orientation.hpp"
#include "oiglab/parallel.hpp"
#include "oiglab/rational.hpp"

namespace oiglab {

inline constexpr std::size_t kDefaultVertexCap = 24;

struct HallResult {
  Rational value;
  std::vector<std::size_t> minimizer;  // a vertex subset attaining the min (brute force only)
  std::optional<FractionalOrientation<Rational>> certificate;  // flow method only
};

namespace detail {

inline std::vector<std::uint32_t> edge_masks(const OneInclusionGraph& g) {
  std::vector<std::uint32_t> masks(g.num_edges(), 0);
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    for (std::size_t v : g.edges()[e].incident) masks[e] |= std::uint32_t{1} << v;
  return masks;
}

inline void check_vertex_cap(const OneInclusionGraph& g, std::size_t cap) {
  if (g.num_vertices() > cap || g.num_vertices() > 24)
    throw DomainError("cap exceeded: " + std::to_string(g.num_vertices()) +
                      " vertices for subset enumeration (cap " + std::to_string(cap) + ")");
}

}  // namespace detail

/// Hall density by definition: min over nonempty U of
/// (|E[U]| + sum of credits in U) / |U|, where E[U] are the edges touching U.
/// Among minimizers the one with the smallest bitmask is returned.
inline HallResult hall_density_brute(const OneInclusionGraph& g,
                                     std::size_t cap = kDefaultVertexCap) {
  detail::check_vertex_cap(g, cap);
  const std::size_t nv = g.num_vertices();
  const std::uint32_t full = nv == 32 ? ~0U : ((std::uint32_t{1} << nv) - 1);
  const auto masks = detail::edge_masks(g);

  // inside[W] = number of edges whose incidence lies within W (subset-sum transform).
  std::vector<std::int32_t> inside(std::size_t{1} << nv, 0);
  for (auto m : masks) ++inside[m];
  for (std::size_t b = 0; b < nv; ++b)
    for (std::uint32_t w = 0; w <= full; ++w)
      if ((w >> b) & 1U) inside[w] += inside[w ^ (std::uint32_t{1} << b)];

  std::vector<std::int32_t> credit_sum(std::size_t{1} << nv, 0);
  const auto total_edges = static_cast<std::int64_t>(masks.size());
  std::int64_t best_num = -1, best_den = 1;
  std::uint32_t best_mask = 0;
  for (std::uint32_t u = 1; u <= full; ++u) {
    int low = std::countr_zero(u);
    credit_sum[u] = credit_sum[u & (u - 1)] + g.credits()[static_cast<std::size_t>(low)];
    std::int64_t touching = total_edges - inside[full & ~u];
    std::int64_t num = touching + credit_sum[u];
    std::int64_t den = std::popcount(u);
    if (best_num < 0 || num * best_den < best_num * den) {
      best_num = num;
      best_den = den;
      best_mask = u;
    }
  }
  HallResult r;
  r.value = Rational(best_num, best_den);
  for (std::size_t v = 0; v < nv; ++v)
    if ((best_mask >> v) & 1U) r.minimizer.push_back(v);
  return r;
}

/// Exact feasibility of per-vertex in-degree demands, via max-flow.
///
/// Network: source -> edge (cap Q), edge -> incident vertex (cap Q),
/// vertex -> sink (cap demand*Q), with Q the common denominator. The
/// demands are met by a fractional orientation iff the flow saturates every
/// sink arc; the returned orientation sends flow/Q along each arc and any
/// unused part of an edge to its first incident vertex.
inline std::optional<FractionalOrientation<Rational>> feasible_orientation(
    const OneInclusionGraph& g, const std::vector<Rational>& demands) {
  if (demands.size() != g.num_vertices()) throw DomainError("demand vector length mismatch");
  std::int64_t scale = 1;
  for (const auto& d : demands)
    if (d > Rational(0)) scale = std::lcm(scale, d.den());

  const int ne = static_cast<int>(g.num_edges());
  const int nv = static_cast<int>(g.num_vertices());
  const int source = 0, sink = 1 + ne + nv;
  FlowNetwork net(ne + nv + 2);
  std::vector<std::vector<int>> arc_ids(g.num_edges());
  for (int e = 0; e < ne; ++e) {
    net.add_arc(source, 1 + e, scale);
    for (std::size_t v : g.edges()[static_cast<std::size_t>(e)].incident)
      arc_ids[static_cast<std::size_t>(e)].push_back(
          net.add_arc(1 + e, 1 + ne + static_cast<int>(v), scale));
  }
  std::int64_t required = 0;
  for (int v = 0; v < nv; ++v) {
    const auto& d = demands[static_cast<std::size_t>(v)];
    std::int64_t cap = d > Rational(0) ? (d * Rational(scale)).num() : 0;
    required += cap;
    net.add_arc(1 + ne + v, sink, cap);
  }
  if (net.max_flow(source, sink) != required) return std::nullopt;
  if (!net.conserves(source, sink)) throw std::logic_error("flow conservation violated");

  FractionalOrientation<Rational> o;
  o.weights.resize(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    auto& w = o.weights[e];
    std::int64_t used = 0;
    for (int id : arc_ids[e]) {
      used += net.flow_on(id);
      w.push_back(Rational(net.flow_on(id), scale));
    }
    w[0] += Rational(scale - used, scale);
  }
  return o;
}

/// Per-vertex demands max(0, alpha - credit(v)).
inline std::vector<Rational> hall_demands(const OneInclusionGraph& g, const Rational& alpha) {
  std::vector<Rational> d(g.num_vertices());
  for (std::size_t v = 0; v < d.size(); ++v)
    d[v] = std::max(Rational(0), alpha - Rational(g.credits()[v]));
  return d;
}

/// Hall density as the largest orientable alpha: bisection with exact
/// feasibility flows down to width 1/(2|V|^2), then the unique fraction of
/// denominator <= |V| in the final bracket.
inline HallResult hall_density_flow(const OneInclusionGraph& g) {
  const Rational n(g.n());
  HallResult r;
  if (auto cert = feasible_orientation(g, hall_demands(g, n))) {
    r.value = n;
    r.certificate = std::move(cert);
    return r;
  }
  const auto nv = static_cast<std::int64_t>(g.num_vertices());
  const Rational resolution(1, 2 * nv * nv);
  Rational lo(0), hi = n;
  while (hi - lo >= resolution) {
    Rational mid = (lo + hi) / Rational(2);
    if (feasible_orientation(g, hall_demands(g, mid)))
      lo = mid;
    else
      hi = mid;
  }
  r.value = simplest_between(lo, hi);
  r.certificate = feasible_orientation(g, hall_demands(g, r.value));
  if (!r.certificate) throw std::logic_error("snapped Hall density is not feasible");
  return r;
}

enum class HallMethod { brute, flow };

inline HallResult hall_density(const OneInclusionGraph& g, HallMethod method,
                               std::size_t vertex_cap = kDefaultVertexCap) {
  return method == HallMethod::brute ? hall_density_brute(g, vertex_cap) : hall_density_flow(g);
}

/// Max over nonempty U of the minimum, over v in U, of the number of edges
/// at v that still have another incident vertex inside U.
inline int degeneracy_brute(const OneInclusionGraph& g, std::size_t cap = kDefaultVertexCap) {
  detail::check_vertex_cap(g, cap);
  const std::size_t nv = g.num_vertices();
  const auto masks = detail::edge_masks(g);
  const std::uint32_t full = (std::uint32_t{1} << nv) - 1;
  int best = 0;
  for (std::uint32_t u = 1; u <= full; ++u) {
    int min_deg = INT32_MAX;
    for (std::size_t v = 0; v < nv && min_deg > best; ++v) {
      if (!((u >> v) & 1U)) continue;
      int deg = 0;
      for (std::size_t e : g.edges_of(v)) deg += std::popcount(masks[e] & u) >= 2;
      min_deg = std::min(min_deg, deg);
    }
    best = std::max(best, min_deg);
  }
  return best;
}

struct ComplexityOptions {
  Mode mode = Mode::realizable;
  bool deterministic = false;  // use n - floor(Hall)
  HallMethod method = HallMethod::flow;
  bool multisets = true;  // one sample per point multiset
  std::size_t sequence_cap = kDefaultSequenceCap;
  std::size_t vertex_cap = kDefaultVertexCap;
  std::size_t agnostic_cap = kDefaultAgnosticCap;
  unsigned threads = 0;
};

struct ComplexityResult {
  Rational pi;       // max over samples of n - Hall (floored Hall when deterministic)
  Rational hall;     // Hall density at the argmax sample
  Rational epsilon;  // pi / n
  Sample argmax;     // first maximizing sample in enumeration order
  std::size_t samples = 0;
};

inline OneInclusionGraph build_graph(const HypothesisClass& cls, const Sample& s, Mode mode,
                                     std::size_t agnostic_cap = kDefaultAgnosticCap) {
  return mode == Mode::realizable ? build_oig(cls, s) : build_agnostic_oig(cls, s, agnostic_cap);
}

/// Hall complexity pi_H(n) by enumeration over samples.
inline ComplexityResult hall_complexity(const HypothesisClass& cls, int n,
                                        const ComplexityOptions& opt = {}) {
  auto samples = enumerate_samples(cls.num_points(), n, opt.multisets, opt.sequence_cap);
  auto halls = parallel_map(samples.size(), opt.threads, [&](std::size_t i) {
    auto g = build_graph(cls, samples[i], opt.mode, opt.agnostic_cap);
    return hall_density(g, opt.method, opt.vertex_cap).value;
  });
  ComplexityResult r;
  r.samples = samples.size();
  bool first = true;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    Rational h = opt.deterministic ? Rational(halls[i].floor()) : halls[i];
    Rational pi = Rational(n) - h;
    if (first || pi > r.pi) {
      r.pi = pi;
      r.hall = halls[i];
      r.argmax = samples[i];
      first = false;
    }
  }
  r.epsilon = r.pi / Rational(n);
  return r;
}

}  // namespace oiglab
