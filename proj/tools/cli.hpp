#pragma once

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oiglab/oiglab.hpp"

namespace oiglab::cli {

using io::json;

namespace detail {

struct Inputs {
  std::string config_path;
  std::optional<unsigned> threads_flag;
  std::string class_path, graph_path, orient_path, learner_path, output;
  std::string method = "flow", algo, format = "json", alpha, demand, sample, kind = "random";
  int n = 0, d = 0, m = 0, points = 3, labels = 2;
  std::size_t size = 4, trials = 0;
  std::optional<std::uint64_t> seed;
  bool deterministic = false, agnostic = false, coorient = false, as_json = false,
       all_sequences = false;
};

inline void emit(std::ostream& out, const Inputs& in, const std::string& text) {
  if (in.output.empty())
    out << text;
  else
    io::write_text_file(in.output, text);
}

inline Rational parse_alpha(const std::string& s) {
  auto a = Rational::parse(s);
  if (a < Rational(0)) throw DomainError("alpha must be nonnegative");
  return a;
}

inline std::vector<int> parse_sample(const HypothesisClass& cls, const std::string& spec) {
  std::vector<int> idx;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) idx.push_back(static_cast<int>(cls.point_index(tok)));
  return idx;
}

inline std::vector<std::string> sample_names(const HypothesisClass& cls, const Sample& s) {
  std::vector<std::string> out;
  for (int i : s.indices()) out.push_back(cls.points()[static_cast<std::size_t>(i)]);
  return out;
}

template <class T>
json report_json(const T& rate, const json& sample, const Pattern& vertex,
                 const std::vector<T>& per_vertex) {
  json pv = json::array();
  for (const auto& x : per_vertex) pv.push_back(io::scalar_json(x));
  return json{{"error_rate", io::scalar_json(rate)},
              {"argmax", {{"S", sample}, {"vertex", vertex}}},
              {"per_vertex", pv}};
}

/// Learner table for one graph from the named engine.
inline io::AnyOrientation engine_orientation(const OneInclusionGraph& g, const std::string& algo,
                                             const Config& cfg, const std::string& alpha,
                                             const std::string& demand,
                                             std::optional<MaxEntSolution>* solution = nullptr) {
  if (algo == "kcore") return kcore_orient(g).orientation;
  if (algo == "flow") {
    Rational a = alpha.empty() ? hall_density_flow(g).value : parse_alpha(alpha);
    return flow_orient(g, a);
  }
  auto demands = demand.empty() ? default_demands(g) : hall_demands(g, parse_alpha(demand));
  auto sol = maxent_solve(g, demands, cfg.maxent_options());
  auto sampler = maxent_sampler(g, sol);
  if (solution != nullptr) *solution = std::move(sol);
  return sampler;
}

}  // namespace detail

/// Entry point shared by the binary and the tests. Returns the exit code:
/// 0 success, 1 domain error, 2 usage error.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  detail::Inputs in;
  CLI::App app{"one-inclusion graph toolkit", "oiglab"};
  app.require_subcommand(1);
  app.add_option("--config", in.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--threads", in.threads_flag, "worker threads (0 = all cores)");

  auto* cls_cmd = app.add_subcommand("class", "generate or validate hypothesis classes");
  cls_cmd->require_subcommand(1);
  auto* gen = cls_cmd->add_subcommand("gen", "generate a class");
  gen->add_option("--kind", in.kind, "random or cantor")->check(CLI::IsMember({"random", "cantor"}));
  gen->add_option("--points", in.points, "domain size (random)");
  gen->add_option("--labels", in.labels, "label count (random)");
  gen->add_option("--size", in.size, "hypothesis count (random)");
  gen->add_option("--d", in.d, "Cantor dimension");
  gen->add_option("--seed", in.seed, "RNG seed");
  gen->add_option("-o,--output", in.output);
  auto* validate_cmd = cls_cmd->add_subcommand("validate", "check a class file");
  validate_cmd->add_option("file", in.class_path)->required();

  auto* oig_cmd = app.add_subcommand("oig", "one-inclusion graphs");
  oig_cmd->require_subcommand(1);
  auto* build = oig_cmd->add_subcommand("build", "build the graph of a class on a sample");
  build->add_option("--class", in.class_path)->required();
  build->add_option("--sample", in.sample, "comma-separated point ids")->required();
  build->add_flag("--agnostic", in.agnostic);
  build->add_option("-o,--output", in.output);

  auto* hall_cmd = app.add_subcommand("hall", "Hall density of a graph");
  hall_cmd->add_option("--graph", in.graph_path)->required();
  hall_cmd->add_option("--method", in.method)->check(CLI::IsMember({"brute", "flow"}));
  hall_cmd->add_flag("--deterministic", in.deterministic, "floor the density");
  hall_cmd->add_flag("--json", in.as_json);

  auto* hc_cmd = app.add_subcommand("hall-complexity", "Hall complexity of a class");
  hc_cmd->add_option("--class", in.class_path)->required();
  hc_cmd->add_option("--n", in.n)->required()->check(CLI::PositiveNumber);
  hc_cmd->add_option("--method", in.method)->check(CLI::IsMember({"brute", "flow"}));
  hc_cmd->add_flag("--agnostic", in.agnostic);
  hc_cmd->add_flag("--deterministic", in.deterministic);
  hc_cmd->add_flag("--all-sequences", in.all_sequences, "do not collapse samples to multisets");
  hc_cmd->add_flag("--json", in.as_json);

  auto* orient_cmd = app.add_subcommand("orient", "orient a graph");
  orient_cmd->add_option("--graph", in.graph_path)->required();
  orient_cmd->add_option("--algo", in.algo)
      ->required()
      ->check(CLI::IsMember({"kcore", "flow", "maxent"}));
  orient_cmd->add_option("--alpha", in.alpha, "flow target (default: Hall density)");
  orient_cmd->add_option("--demand", in.demand, "maxent demand (default: Hall density)");
  orient_cmd->add_option("--solution", in.learner_path, "write the maxent solution here");
  orient_cmd->add_option("-o,--output", in.output);

  auto* reg_cmd = app.add_subcommand("regularizer", "SRM regularizers");
  reg_cmd->require_subcommand(1);
  auto* extract = reg_cmd->add_subcommand("extract", "regularizer from k-core peeling");
  extract->add_option("--graph", in.graph_path)->required();
  extract->add_option("-o,--output", in.output);

  auto* sim_cmd = app.add_subcommand("simulate", "transductive error of a learner");
  sim_cmd->add_option("--graph", in.graph_path);
  sim_cmd->add_option("--learner", in.learner_path, "orientation, maxent or regularizer file");
  sim_cmd->add_option("--class", in.class_path);
  sim_cmd->add_option("--n", in.n)->check(CLI::PositiveNumber);
  sim_cmd->add_option("--algo", in.algo)->check(CLI::IsMember({"kcore", "flow", "maxent"}));
  sim_cmd->add_flag("--agnostic", in.agnostic);
  sim_cmd->add_option("-o,--output", in.output);

  auto* verify_cmd = app.add_subcommand("verify", "check an orientation against alpha");
  verify_cmd->add_option("--graph", in.graph_path)->required();
  verify_cmd->add_option("--orient", in.orient_path)->required();
  verify_cmd->add_option("--alpha", in.alpha)->required();
  verify_cmd->add_flag("--coorient", in.coorient, "bound out-degrees instead of in-degrees");

  auto* demo_cmd = app.add_subcommand("demo", "executable demonstrations");
  demo_cmd->require_subcommand(1);
  auto* cantor = demo_cmd->add_subcommand("cantor", "local regularizer failure on the Cantor class");
  cantor->add_option("--d", in.d)->required();
  cantor->add_option("--m", in.m)->required();
  cantor->add_option("--trials", in.trials, "Monte-Carlo trials");
  cantor->add_option("--seed", in.seed);
  cantor->add_flag("--json", in.as_json);

  auto* export_cmd = app.add_subcommand("export", "render a graph");
  export_cmd->add_option("--graph", in.graph_path)->required();
  export_cmd->add_option("--format", in.format)->check(CLI::IsMember({"dot", "json"}));
  export_cmd->add_option("-o,--output", in.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? 0 : 2;
  }

  auto usage = [&](const std::string& msg) {
    err << "usage error: " << msg << "\n";
    return 2;
  };

  try {
    Config cfg;
    if (!in.config_path.empty()) cfg = config_from_json(io::read_json_file(in.config_path));
    if (in.threads_flag)
      cfg.threads = *in.threads_flag;
    else if (auto env = threads_from_env())
      cfg.threads = *env;
    const std::uint64_t seed = in.seed.value_or(cfg.seed);

    if (*gen) {
      auto c = in.kind == "cantor"
                   ? gen_cantor(in.d)
                   : gen_random(in.points, in.labels, in.size, seed);
      detail::emit(out, in, io::to_json(c).dump(2) + "\n");
    } else if (*validate_cmd) {
      auto c = io::class_from_json(io::read_json_file(in.class_path));
      out << "ok: " << c.num_points() << " points, " << c.num_labels() << " labels, " << c.size()
          << " hypotheses\n";
    } else if (*build) {
      auto c = io::class_from_json(io::read_json_file(in.class_path));
      auto s = Sample::make(detail::parse_sample(c, in.sample), c.num_points());
      auto g = build_graph(c, s, in.agnostic ? Mode::agnostic : Mode::realizable, cfg.agnostic_cap);
      detail::emit(out, in, io::to_json(g).dump(2) + "\n");
    } else if (*hall_cmd) {
      auto g = io::graph_from_json(io::read_json_file(in.graph_path));
      auto r = hall_density(g, in.method == "brute" ? HallMethod::brute : HallMethod::flow,
                            cfg.vertex_cap);
      Rational v = in.deterministic ? Rational(r.value.floor()) : r.value;
      if (in.as_json) {
        json j{{"hall", v.str()}};
        if (!r.minimizer.empty()) j["minimizer"] = r.minimizer;
        out << j.dump() << "\n";
      } else {
        out << io::pretty(v) << "\n";
      }
    } else if (*hc_cmd) {
      auto c = io::class_from_json(io::read_json_file(in.class_path));
      ComplexityOptions opt;
      opt.mode = in.agnostic ? Mode::agnostic : Mode::realizable;
      opt.deterministic = in.deterministic;
      opt.method = in.method == "brute" ? HallMethod::brute : HallMethod::flow;
      opt.multisets = !in.all_sequences;
      opt.sequence_cap = cfg.sequence_cap;
      opt.vertex_cap = cfg.vertex_cap;
      opt.agnostic_cap = cfg.agnostic_cap;
      opt.threads = cfg.threads;
      auto r = hall_complexity(c, in.n, opt);
      if (in.as_json) {
        out << io::to_json(r, c).dump() << "\n";
      } else {
        out << "pi: " << io::pretty(r.pi) << "\n"
            << "epsilon: " << io::pretty(r.epsilon) << "\n"
            << "hall at argmax: " << io::pretty(r.hall) << "\n"
            << "argmax S: " << json(detail::sample_names(c, r.argmax)).dump() << "\n";
      }
    } else if (*orient_cmd) {
      if (in.algo != "flow" && !in.alpha.empty()) return usage("--alpha applies to --algo flow");
      if (in.algo != "maxent" && !in.demand.empty()) return usage("--demand applies to --algo maxent");
      if (in.algo != "maxent" && !in.learner_path.empty())
        return usage("--solution applies to --algo maxent");
      auto g = io::graph_from_json(io::read_json_file(in.graph_path));
      std::optional<MaxEntSolution> sol;
      auto o = detail::engine_orientation(g, in.algo, cfg, in.alpha, in.demand, &sol);
      if (sol && !in.learner_path.empty())
        io::write_text_file(in.learner_path, io::to_json(*sol).dump(2) + "\n");
      detail::emit(out, in, io::to_json(g, o).dump(2) + "\n");
    } else if (*extract) {
      auto g = io::graph_from_json(io::read_json_file(in.graph_path));
      auto t = extract_regularizer(kcore_orient(g), g.n());
      detail::emit(out, in, io::to_json(t).dump(2) + "\n");
    } else if (*sim_cmd) {
      const bool per_graph = !in.graph_path.empty() || !in.learner_path.empty();
      const bool per_class = !in.class_path.empty() || in.n > 0 || !in.algo.empty();
      if (per_graph == per_class)
        return usage("simulate takes either --graph/--learner or --class/--n/--algo");
      if (per_graph) {
        if (in.graph_path.empty() || in.learner_path.empty())
          return usage("simulate needs both --graph and --learner");
        auto g = io::graph_from_json(io::read_json_file(in.graph_path));
        auto j = io::read_json_file(in.learner_path);
        json report;
        auto det = [&](const DeterministicLearner& l) {
          auto r = graph_error(g, l);
          report = detail::report_json(r.max_error, nullptr, g.vertices()[r.argmax_vertex],
                                       r.per_vertex);
        };
        auto frac = [&](const auto& o) {
          auto r = graph_error(g, learner_table(g, o));
          report = detail::report_json(r.max_error, nullptr, g.vertices()[r.argmax_vertex],
                                       r.per_vertex);
        };
        if (j.contains("phi")) {
          det(regularizer_learner(g, io::regularizer_from_json(j)));
        } else if (j.contains("lambda")) {
          frac(maxent_sampler(g, io::maxent_from_json(j)));
        } else {
          std::visit(
              [&](const auto& o) {
                if constexpr (std::is_same_v<std::decay_t<decltype(o)>, Orientation>)
                  det(learner_table(g, o));
                else
                  frac(o);
              },
              io::orientation_from_json(g, j));
        }
        detail::emit(out, in, report.dump(2) + "\n");
      } else {
        if (in.class_path.empty() || in.n <= 0 || in.algo.empty())
          return usage("simulate needs --class, --n and --algo");
        auto c = io::class_from_json(io::read_json_file(in.class_path));
        ErrorRateOptions opt;
        opt.mode = in.agnostic ? Mode::agnostic : Mode::realizable;
        opt.sequence_cap = cfg.sequence_cap;
        opt.agnostic_cap = cfg.agnostic_cap;
        opt.threads = cfg.threads;
        json report;
        auto finish = [&](const auto& r) {
          report = detail::report_json(r.error_rate, json(detail::sample_names(c, r.argmax_sample)),
                                       r.argmax_vertex, r.per_vertex);
        };
        if (in.algo == "kcore") {
          if (in.agnostic) throw DomainError("k-core orientation is defined for realizable graphs only");
          finish(error_rate(c, in.n, [](const OneInclusionGraph& g) {
            return learner_table(g, kcore_orient(g).orientation);
          }, opt));
        } else if (in.algo == "flow") {
          finish(error_rate(c, in.n, [](const OneInclusionGraph& g) {
            return learner_table(g, flow_orient(g, hall_density_flow(g).value));
          }, opt));
        } else {
          finish(error_rate(c, in.n, [&](const OneInclusionGraph& g) {
            return learner_table(g, maxent_sampler(g, maxent_solve(g, default_demands(g),
                                                                   cfg.maxent_options())));
          }, opt));
        }
        detail::emit(out, in, report.dump(2) + "\n");
      }
    } else if (*verify_cmd) {
      auto g = io::graph_from_json(io::read_json_file(in.graph_path));
      auto o = io::orientation_from_json(g, io::read_json_file(in.orient_path));
      auto alpha = detail::parse_alpha(in.alpha);
      bool ok = std::visit(
          [&](const auto& x) {
            return in.coorient ? verify_coorientation(g, x, alpha, cfg.float_tol)
                               : verify_orientation(g, x, alpha, cfg.float_tol);
          },
          o);
      const char* kind = in.coorient ? "coorientation" : "orientation";
      if (!ok) {
        err << "fail: not a valid " << alpha.str() << "-" << kind << "\n";
        return 1;
      }
      out << "ok: valid " << alpha.str() << "-" << kind << "\n";
    } else if (*cantor) {
      auto r = cantor_failure_demo(in.d, in.m, in.trials, seed);
      if (in.as_json) {
        json j{{"expected_error", r.expected_error.str()},
               {"threshold_exceeded", r.threshold_exceeded},
               {"in_proof_regime", r.in_proof_regime}};
        if (r.trials > 0) {
          j["trials"] = r.trials;
          j["monte_carlo"] = r.monte_carlo;
          j["sigma"] = r.sigma;
          j["within_3sigma"] = r.within_3sigma;
        }
        out << j.dump() << "\n";
      } else {
        out << "expected_error: " << io::pretty(r.expected_error) << "\n"
            << "threshold_exceeded: " << (r.threshold_exceeded ? "true" : "false") << "\n"
            << "in_proof_regime: " << (r.in_proof_regime ? "true" : "false") << "\n";
        if (r.trials > 0)
          out << "monte_carlo: " << r.monte_carlo << " over " << r.trials
              << " trials (sigma " << r.sigma << ", within 3 sigma: "
              << (r.within_3sigma ? "true" : "false") << ")\n";
      }
    } else if (*export_cmd) {
      auto g = io::graph_from_json(io::read_json_file(in.graph_path));
      detail::emit(out, in, io::export_graph(g, in.format));
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace oiglab::cli
