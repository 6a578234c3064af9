#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oiglab/error.hpp"
#include "oiglab/hall.hpp"
#include "oiglab/oig.hpp"
#include "oiglab/orientation.hpp"
#include "oiglab/rational.hpp"

namespace oiglab {

/// Exact fractional orientation meeting in-degree >= alpha - credit(v).
/// Throws when alpha exceeds the Hall density.
inline FractionalOrientation<Rational> flow_orient(const OneInclusionGraph& g,
                                                   const Rational& alpha) {
  if (alpha < Rational(0)) throw DomainError("alpha must be nonnegative");
  auto o = feasible_orientation(g, hall_demands(g, alpha));
  if (!o) throw DomainError("infeasible alpha " + alpha.str() + " (exceeds Hall density)");
  return *o;
}

struct MaxEntOptions {
  double tol = 1e-6;
  double lambda_cap = 50.0;
  int max_iter = 200'000;
};

/// Dual solution of the max-entropy orientation program.
///
/// lambda_v >= 0 is the multiplier of the constraint E[indeg(v)] >= c_v;
/// the optimal distribution over assignments samples every edge
/// independently, choosing incident v with probability proportional to
/// rho_v = exp(lambda_v) / sum_w exp(lambda_w).
struct MaxEntSolution {
  std::vector<double> lambda;
  std::vector<double> rho;
  std::vector<double> c;
  std::vector<double> expected_indegree;
  double kkt_residual = 0;
  int iterations = 0;
  bool capped = false;
  bool converged = false;
  std::vector<double> objective_trace;  // dual objective after each iteration, accumulated from step changes
};

namespace detail {

struct DualState {
  double objective = 0;
  std::vector<double> expected;  // E[indeg(v)]
};

/// Dual objective sum_e log sum_{v in e} exp(lambda_v) - sum_v c_v lambda_v.
inline DualState evaluate_dual(const OneInclusionGraph& g, const std::vector<double>& lambda,
                               const std::vector<double>& c) {
  DualState s;
  s.expected.assign(g.num_vertices(), 0.0);
  for (const auto& edge : g.edges()) {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t v : edge.incident) top = std::max(top, lambda[v]);
    double z = 0;
    for (std::size_t v : edge.incident) z += std::exp(lambda[v] - top);
    s.objective += top + std::log(z);
    for (std::size_t v : edge.incident) s.expected[v] += std::exp(lambda[v] - top) / z;
  }
  for (std::size_t v = 0; v < c.size(); ++v) s.objective -= c[v] * lambda[v];
  return s;
}

/// Objective change from lambda to trial, accumulated per edge as
/// log(sum_v p_v exp(d_v)) with p the current edge softmax and d the step.
/// Differencing absolute objectives loses the change to rounding once
/// lambda is large and the gradient small.
inline double dual_change(const OneInclusionGraph& g, const std::vector<double>& lambda,
                          const std::vector<double>& trial, const std::vector<double>& c) {
  double change = 0;
  for (const auto& edge : g.edges()) {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t v : edge.incident) top = std::max(top, lambda[v]);
    double z = 0, moved = 0, trial_top = -std::numeric_limits<double>::infinity();
    for (std::size_t v : edge.incident) {
      double w = std::exp(lambda[v] - top);
      z += w;
      moved += w * std::expm1(trial[v] - lambda[v]);
      trial_top = std::max(trial_top, trial[v]);
    }
    if (std::abs(moved / z) < 0.5) {
      change += std::log1p(moved / z);
    } else {
      double trial_z = 0;
      for (std::size_t v : edge.incident) trial_z += std::exp(trial[v] - trial_top);
      change += (trial_top + std::log(trial_z)) - (top + std::log(z));
    }
  }
  for (std::size_t v = 0; v < c.size(); ++v) change -= c[v] * (trial[v] - lambda[v]);
  return change;
}

/// Dual Hessian: per edge, the covariance of the incidence indicator under
/// the edge softmax.
inline Eigen::MatrixXd dual_hessian(const OneInclusionGraph& g, const std::vector<double>& lambda) {
  const auto nv = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(nv, nv);
  std::vector<double> p;
  for (const auto& edge : g.edges()) {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t v : edge.incident) top = std::max(top, lambda[v]);
    p.clear();
    double z = 0;
    for (std::size_t v : edge.incident) {
      p.push_back(std::exp(lambda[v] - top));
      z += p.back();
    }
    for (auto& x : p) x /= z;
    for (std::size_t a = 0; a < p.size(); ++a) {
      auto va = static_cast<Eigen::Index>(edge.incident[a]);
      h(va, va) += p[a];
      for (std::size_t b = 0; b < p.size(); ++b)
        h(va, static_cast<Eigen::Index>(edge.incident[b])) -= p[a] * p[b];
    }
  }
  return h;
}

/// Largest violation of primal feasibility or complementary slackness.
inline double kkt_residual(const std::vector<double>& lambda, const std::vector<double>& expected,
                           const std::vector<double>& c) {
  double r = 0;
  for (std::size_t v = 0; v < c.size(); ++v) {
    r = std::max(r, c[v] - expected[v]);
    r = std::max(r, lambda[v] * std::abs(expected[v] - c[v]));
  }
  return r;
}

}  // namespace detail

/// Default demands: Hall density minus credit, clamped at zero.
inline std::vector<Rational> default_demands(const OneInclusionGraph& g) {
  return hall_demands(g, hall_density_flow(g).value);
}

/// Descent on the dual over the box [0, lambda_cap]^V: a projected Newton
/// step on the free coordinates, falling back to a projected gradient step
/// with Barzilai-Borwein length. Both use Armijo backtracking, so the
/// objective never increases.
inline MaxEntSolution maxent_solve(const OneInclusionGraph& g, const std::vector<Rational>& demands,
                                   const MaxEntOptions& opt = {}) {
  if (!(opt.tol > 0)) throw DomainError("tol must be positive");
  if (!(opt.lambda_cap > 0)) throw DomainError("lambda_cap must be positive");
  if (demands.size() != g.num_vertices()) throw DomainError("demand vector length mismatch");
  if (!feasible_orientation(g, demands)) throw DomainError("infeasible c: demands exceed what any orientation can meet");

  const std::size_t nv = g.num_vertices();
  MaxEntSolution sol;
  sol.c.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) sol.c[v] = std::max(0.0, demands[v].to_double());
  const auto& c = sol.c;

  std::vector<double> lambda(nv, 0.0);
  auto state = detail::evaluate_dual(g, lambda, c);
  std::vector<double> grad(nv), prev_lambda, prev_grad;
  auto gradient = [&](const detail::DualState& s) {
    for (std::size_t v = 0; v < nv; ++v) grad[v] = s.expected[v] - c[v];
  };
  gradient(state);
  double residual = detail::kkt_residual(lambda, state.expected, c);
  double step = 1.0;

  int it = 0;
  for (; it < opt.max_iter && residual > opt.tol; ++it) {
    if (!prev_lambda.empty()) {
      double ss = 0, sy = 0;
      for (std::size_t v = 0; v < nv; ++v) {
        double s = lambda[v] - prev_lambda[v];
        double y = grad[v] - prev_grad[v];
        ss += s * s;
        sy += s * y;
      }
      step = sy > 0 ? std::clamp(ss / sy, 1e-10, 1e10) : std::min(step * 2, 1e10);
    }
    std::vector<double> trial(nv);
    detail::DualState next;
    bool accepted = false;

    // Projected Newton on the coordinates not held at a bound. Near a
    // dual that diverges along a tight set, gradient steps shrink with the
    // gradient; Newton keeps advancing lambda at a constant rate.
    {
      std::vector<Eigen::Index> free;
      for (std::size_t v = 0; v < nv; ++v) {
        bool at_floor = lambda[v] <= 0 && grad[v] > 0;
        bool at_cap = lambda[v] >= opt.lambda_cap && grad[v] < 0;
        if (!at_floor && !at_cap) free.push_back(static_cast<Eigen::Index>(v));
      }
      if (!free.empty()) {
        const auto h = detail::dual_hessian(g, lambda);
        const auto nf = static_cast<Eigen::Index>(free.size());
        Eigen::MatrixXd hf(nf, nf);
        Eigen::VectorXd gf(nf);
        for (Eigen::Index a = 0; a < nf; ++a) {
          gf(a) = grad[static_cast<std::size_t>(free[static_cast<std::size_t>(a)])];
          for (Eigen::Index b = 0; b < nf; ++b)
            hf(a, b) = h(free[static_cast<std::size_t>(a)], free[static_cast<std::size_t>(b)]);
        }
        hf.diagonal().array() += 1e-12;
        Eigen::VectorXd dir = -hf.ldlt().solve(gf);
        if (dir.allFinite() && dir.dot(gf) < 0) {
          double t = 1.0;
          for (int k = 0; k < 40; ++k, t *= 0.5) {
            trial = lambda;
            double decrease = 0;
            for (Eigen::Index a = 0; a < nf; ++a) {
              auto v = static_cast<std::size_t>(free[static_cast<std::size_t>(a)]);
              trial[v] = std::clamp(lambda[v] + t * dir(a), 0.0, opt.lambda_cap);
              decrease += grad[v] * (trial[v] - lambda[v]);
            }
            if (!(decrease < 0)) continue;
            double change = detail::dual_change(g, lambda, trial, c);
            if (change <= 1e-4 * decrease) {
              next = detail::evaluate_dual(g, trial, c);
              next.objective = state.objective + change;
              accepted = true;
              break;
            }
          }
        }
      }
    }

    for (int k = 0; !accepted && k < 60; ++k, step *= 0.5) {
      double decrease = 0;
      for (std::size_t v = 0; v < nv; ++v) {
        trial[v] = std::clamp(lambda[v] - step * grad[v], 0.0, opt.lambda_cap);
        decrease += grad[v] * (trial[v] - lambda[v]);
      }
      double change = detail::dual_change(g, lambda, trial, c);
      if (change <= 1e-4 * decrease) {
        next = detail::evaluate_dual(g, trial, c);
        next.objective = state.objective + change;
        accepted = true;
        break;
      }
    }
    if (!accepted || trial == lambda) break;  // no further progress is representable
    prev_lambda = std::move(lambda);
    prev_grad = grad;
    lambda = std::move(trial);
    state = std::move(next);
    gradient(state);
    sol.objective_trace.push_back(state.objective);
    residual = detail::kkt_residual(lambda, state.expected, c);
  }

  sol.iterations = it;
  sol.kkt_residual = residual;
  sol.converged = residual <= opt.tol;
  sol.capped = std::any_of(lambda.begin(), lambda.end(),
                           [&](double l) { return l >= opt.lambda_cap; });
  sol.expected_indegree = state.expected;
  const double top = *std::max_element(lambda.begin(), lambda.end());
  double z = 0;
  for (double l : lambda) z += std::exp(l - top);
  sol.rho.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) sol.rho[v] = std::exp(lambda[v] - top) / z;
  sol.lambda = std::move(lambda);
  return sol;
}

/// Per-edge sampler: edge e picks incident v with probability
/// proportional to rho_v.
inline FractionalOrientation<double> maxent_sampler(const OneInclusionGraph& g,
                                                    const MaxEntSolution& sol) {
  if (sol.lambda.size() != g.num_vertices()) throw DomainError("solution/graph mismatch");
  FractionalOrientation<double> o;
  o.weights.resize(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& inc = g.edges()[e].incident;
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t v : inc) top = std::max(top, sol.lambda[v]);
    double z = 0;
    for (std::size_t v : inc) z += std::exp(sol.lambda[v] - top);
    for (std::size_t v : inc) o.weights[e].push_back(std::exp(sol.lambda[v] - top) / z);
  }
  return o;
}

/// Restriction of a distribution to a support subset, renormalized.
inline std::vector<double> restrict_distribution(const std::vector<double>& dist,
                                                 const std::vector<std::size_t>& support) {
  std::vector<double> out;
  double z = 0;
  for (std::size_t i : support) z += dist.at(i);
  if (!(z > 0)) throw DomainError("restriction onto a zero-mass support");
  for (std::size_t i : support) out.push_back(dist[i] / z);
  return out;
}

inline constexpr std::size_t kDefaultAssignmentCap = 100'000;

/// Explicit distribution over all assignments (edge -> incident vertex).
/// choices[d * num_edges + e] is the position, within edge e's incidence
/// list, of the vertex assignment d picks.
struct AssignmentDistribution {
  std::size_t num_edges = 0;
  std::vector<std::uint8_t> choices;
  std::vector<double> probability;
  std::vector<double> expected_indegree;

  [[nodiscard]] std::size_t size() const { return probability.size(); }
  [[nodiscard]] std::size_t choice(std::size_t d, std::size_t e) const {
    return choices[d * num_edges + e];
  }
};

inline std::size_t count_assignments(const OneInclusionGraph& g, std::size_t cap) {
  std::size_t total = 1;
  for (const auto& e : g.edges()) {
    total *= e.incident.size();
    if (total > cap) return cap + 1;
  }
  return total;
}

/// Brute-force max-entropy oracle over the enumerated assignment space.
///
/// Solves max H(p) s.t. sum_d p_d indeg_d(v) >= c_v through the
/// unfactorized Gibbs dual min_{mu >= 0} log sum_d exp(mu . indeg_d) - c . mu
/// with projected Newton steps (Hessian = covariance of indeg under p).
/// Nothing here uses the per-edge product structure.
inline AssignmentDistribution maxent_brute_primal(const OneInclusionGraph& g,
                                                  const std::vector<Rational>& demands,
                                                  std::size_t cap = kDefaultAssignmentCap,
                                                  double lambda_cap = 50.0) {
  if (demands.size() != g.num_vertices()) throw DomainError("demand vector length mismatch");
  const std::size_t total = count_assignments(g, cap);
  if (total > cap)
    throw DomainError("cap exceeded: more than " + std::to_string(cap) + " assignments");
  if (!feasible_orientation(g, demands)) throw DomainError("infeasible c");
  for (const auto& e : g.edges())
    if (e.incident.size() > 255) throw DomainError("edge too large for assignment enumeration");

  const std::size_t ne = g.num_edges(), nv = g.num_vertices();
  AssignmentDistribution dist;
  dist.num_edges = ne;
  dist.choices.assign(total * ne, 0);
  Eigen::MatrixXd indeg = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(total),
                                                static_cast<Eigen::Index>(nv));
  std::vector<std::uint8_t> digit(ne, 0);
  for (std::size_t d = 0; d < total; ++d) {
    for (std::size_t e = 0; e < ne; ++e) {
      dist.choices[d * ne + e] = digit[e];
      indeg(static_cast<Eigen::Index>(d),
            static_cast<Eigen::Index>(g.edges()[e].incident[digit[e]])) += 1.0;
    }
    for (std::size_t e = 0; e < ne; ++e) {
      if (++digit[e] < g.edges()[e].incident.size()) break;
      digit[e] = 0;
    }
  }

  Eigen::VectorXd c(static_cast<Eigen::Index>(nv));
  for (std::size_t v = 0; v < nv; ++v)
    c(static_cast<Eigen::Index>(v)) = std::max(0.0, demands[v].to_double());

  struct Eval {
    double value;
    Eigen::VectorXd p, grad;
  };
  auto eval = [&](const Eigen::VectorXd& mu) {
    Eigen::VectorXd score = indeg * mu;
    double top = score.maxCoeff();
    Eigen::VectorXd p = (score.array() - top).exp().matrix();
    double z = p.sum();
    p /= z;
    Eval r{top + std::log(z) - c.dot(mu), p, indeg.transpose() * p - c};
    return r;
  };

  Eigen::VectorXd mu = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nv));
  Eval cur = eval(mu);
  for (int it = 0; it < 500; ++it) {
    // Free coordinates: those not held at a bound by the sign of the gradient.
    std::vector<Eigen::Index> free;
    double pg = 0;
    for (Eigen::Index v = 0; v < static_cast<Eigen::Index>(nv); ++v) {
      bool at_low = mu(v) <= 0 && cur.grad(v) > 0;
      bool at_high = mu(v) >= lambda_cap && cur.grad(v) < 0;
      if (!at_low && !at_high) {
        free.push_back(v);
        pg = std::max(pg, std::abs(cur.grad(v)));
      }
    }
    if (pg < 1e-13) break;
    const auto nf = static_cast<Eigen::Index>(free.size());
    Eigen::VectorXd mean = indeg.transpose() * cur.p;
    Eigen::MatrixXd second = indeg.transpose() * cur.p.asDiagonal() * indeg;
    Eigen::MatrixXd hess = second - mean * mean.transpose();
    Eigen::MatrixXd hf(nf, nf);
    Eigen::VectorXd gf(nf);
    for (Eigen::Index a = 0; a < nf; ++a) {
      gf(a) = cur.grad(free[static_cast<std::size_t>(a)]);
      for (Eigen::Index b = 0; b < nf; ++b)
        hf(a, b) = hess(free[static_cast<std::size_t>(a)], free[static_cast<std::size_t>(b)]);
    }
    hf.diagonal().array() += 1e-12 + 1e-9 * hf.diagonal().cwiseAbs().maxCoeff();
    Eigen::VectorXd dir_free = hf.ldlt().solve(-gf);
    Eigen::VectorXd dir = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nv));
    for (Eigen::Index a = 0; a < nf; ++a) dir(free[static_cast<std::size_t>(a)]) = dir_free(a);
    if (!dir.allFinite() || dir.dot(cur.grad) >= 0) dir = -cur.grad;

    bool moved = false;
    for (double t = 1.0; t > 1e-16; t *= 0.5) {
      Eigen::VectorXd next = (mu + t * dir).cwiseMax(0.0).cwiseMin(lambda_cap);
      Eval cand = eval(next);
      if (cand.value <= cur.value + 1e-4 * cur.grad.dot(next - mu)) {
        moved = (next - mu).cwiseAbs().maxCoeff() > 0;
        mu = next;
        cur = std::move(cand);
        break;
      }
    }
    if (!moved) break;
  }

  dist.probability.assign(cur.p.data(), cur.p.data() + cur.p.size());
  Eigen::VectorXd expected = indeg.transpose() * cur.p;
  dist.expected_indegree.assign(expected.data(), expected.data() + expected.size());
  return dist;
}

/// Probability of each enumerated assignment when every edge samples
/// independently from `sampler`.
inline std::vector<double> product_form(const AssignmentDistribution& dist,
                                        const FractionalOrientation<double>& sampler) {
  std::vector<double> p(dist.size(), 1.0);
  for (std::size_t d = 0; d < dist.size(); ++d)
    for (std::size_t e = 0; e < dist.num_edges; ++e) p[d] *= sampler.weights[e][dist.choice(d, e)];
  return p;
}

inline double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw DomainError("total_variation: size mismatch");
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s / 2;
}

struct KlRegularizer {
  double kl = 0;     // KL(dist || rho), +inf on support violation
  double value = 0;  // arctan(kl) / K
};

/// (1/K) arctan KL(dist || rho), with 0 log(0/q) = 0.
inline KlRegularizer kl_regularizer_value(const std::vector<double>& dist,
                                          const std::vector<double>& rho, double K) {
  if (!(K > 0)) throw DomainError("K must be positive");
  if (dist.size() != rho.size()) throw DomainError("distribution length mismatch");
  KlRegularizer r;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] <= 0) continue;
    if (rho[i] <= 0) {
      r.kl = std::numeric_limits<double>::infinity();
      break;
    }
    r.kl += dist[i] * std::log(dist[i] / rho[i]);
  }
  r.value = (std::isinf(r.kl) ? std::numbers::pi / 2 : std::atan(r.kl)) / K;
  return r;
}

}  // namespace oiglab
