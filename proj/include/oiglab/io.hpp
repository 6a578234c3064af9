#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "oiglab/classes.hpp"
#include "oiglab/error.hpp"
#include "oiglab/hall.hpp"
#include "oiglab/kcore.hpp"
#include "oiglab/maxent.hpp"
#include "oiglab/oig.hpp"
#include "oiglab/orientation.hpp"
#include "oiglab/rational.hpp"

namespace oiglab::io {

using json = nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError("malformed JSON in '" + path + "': " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << text;
}

/// Runs a JSON accessor, turning type/shape errors into DomainError.
template <class F>
auto guarded(std::string_view what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw DomainError(std::string(what) + ": " + e.what());
  }
}

inline std::string identifier(const json& j) {
  return j.is_string() ? j.get<std::string>() : j.dump();
}

// ---- hypothesis classes ----------------------------------------------------

inline json to_json(const HypothesisClass& c) {
  return json{{"points", c.points()}, {"labels", c.labels()}, {"hypotheses", c.hypotheses()}};
}

inline HypothesisClass class_from_json(const json& j) {
  return guarded("class JSON", [&] {
    std::vector<std::string> points, labels;
    for (const auto& p : j.at("points")) points.push_back(identifier(p));
    for (const auto& l : j.at("labels")) labels.push_back(identifier(l));
    auto rows = j.at("hypotheses").get<std::vector<Pattern>>();
    return HypothesisClass::make(std::move(points), std::move(labels), std::move(rows));
  });
}

// ---- graphs ----------------------------------------------------------------

inline json to_json(const OneInclusionGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"hole", e.hole}, {"context", e.context}, {"incident", e.incident}});
  return json{{"mode", to_string(g.mode())},   {"n", g.n()},
              {"num_labels", g.num_labels()},  {"vertices", g.vertices()},
              {"edges", edges},                {"credits", g.credits()},
              {"class_patterns", g.class_patterns()}};
}

/// Inverse of to_json. `num_labels` and `class_patterns` are optional: the
/// former defaults to one more than the largest label seen, the latter to
/// the credit-0 vertices.
inline OneInclusionGraph graph_from_json(const json& j) {
  return guarded("graph JSON", [&] {
    auto mode_name = j.at("mode").get<std::string>();
    Mode mode;
    if (mode_name == "realizable")
      mode = Mode::realizable;
    else if (mode_name == "agnostic")
      mode = Mode::agnostic;
    else
      throw DomainError("graph JSON: unknown mode '" + mode_name + "'");
    int n = j.at("n").get<int>();
    auto vertices = j.at("vertices").get<std::vector<Pattern>>();
    std::vector<Hyperedge> edges;
    for (const auto& e : j.at("edges"))
      edges.push_back(Hyperedge{e.at("hole").get<int>(), e.at("context").get<Pattern>(),
                                e.at("incident").get<std::vector<std::size_t>>()});
    auto credits = j.contains("credits") ? j.at("credits").get<std::vector<int>>()
                                         : std::vector<int>(vertices.size(), 0);
    int num_labels = 0;
    if (j.contains("num_labels")) {
      num_labels = j.at("num_labels").get<int>();
    } else {
      for (const auto& v : vertices)
        for (int x : v) num_labels = std::max(num_labels, x + 1);
    }
    std::vector<Pattern> patterns;
    if (j.contains("class_patterns")) {
      patterns = j.at("class_patterns").get<std::vector<Pattern>>();
    } else {
      for (std::size_t v = 0; v < vertices.size() && v < credits.size(); ++v)
        if (credits[v] == 0) patterns.push_back(vertices[v]);
    }
    return OneInclusionGraph::from_parts(mode, n, num_labels, std::move(vertices), std::move(edges),
                                         std::move(credits), std::move(patterns));
  });
}

/// DOT rendering. Self-loops are drawn as loops, two-vertex edges as plain
/// edges, and larger hyperedges as a point-shaped auxiliary node joined to
/// each incident vertex.
inline std::string to_dot(const OneInclusionGraph& g) {
  auto label = [](const Pattern& p, int hole = -1) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (static_cast<int>(i) == hole) s += '?';
      s += std::to_string(p[i]);
      if (i + 1 < p.size()) s += ' ';
    }
    return s;
  };
  auto context_label = [&](const Hyperedge& e) {
    Pattern full = e.context;
    full.insert(full.begin() + e.hole, -1);
    std::string s;
    for (std::size_t i = 0; i < full.size(); ++i) {
      s += full[i] < 0 ? std::string("?") : std::to_string(full[i]);
      if (i + 1 < full.size()) s += ' ';
    }
    return s;
  };
  std::ostringstream out;
  out << "graph oig {\n";
  out << "  // mode=" << to_string(g.mode()) << " n=" << g.n() << "\n";
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    out << "  v" << v << " [label=\"" << label(g.vertices()[v]);
    if (g.mode() == Mode::agnostic) out << "\\ncredit " << g.credits()[v];
    out << "\"];\n";
  }
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& edge = g.edges()[e];
    const auto tag = context_label(edge);
    if (edge.incident.size() == 1) {
      out << "  v" << edge.incident[0] << " -- v" << edge.incident[0] << " [label=\"" << tag
          << "\"];\n";
    } else if (edge.incident.size() == 2) {
      out << "  v" << edge.incident[0] << " -- v" << edge.incident[1] << " [label=\"" << tag
          << "\"];\n";
    } else {
      out << "  e" << e << " [shape=point, xlabel=\"" << tag << "\"];\n";
      for (std::size_t v : edge.incident) out << "  e" << e << " -- v" << v << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

inline std::string export_graph(const OneInclusionGraph& g, std::string_view format) {
  if (format == "json") return to_json(g).dump(2) + "\n";
  if (format == "dot") return to_dot(g);
  throw DomainError("unknown format '" + std::string(format) + "' (expected dot or json)");
}

// ---- orientations ----------------------------------------------------------

using AnyOrientation =
    std::variant<Orientation, FractionalOrientation<Rational>, FractionalOrientation<double>>;

inline json to_json(const Orientation& o) { return json{{"type", "det"}, {"targets", o.target}}; }

inline json to_json(const OneInclusionGraph& g, const FractionalOrientation<Rational>& o) {
  json weights = json::array();
  for (std::size_t e = 0; e < o.weights.size(); ++e) {
    json row = json::array();
    for (std::size_t k = 0; k < o.weights[e].size(); ++k)
      if (o.weights[e][k] > Rational(0))
        row.push_back({g.edges()[e].incident[k], o.weights[e][k].num(), o.weights[e][k].den()});
    weights.push_back(row);
  }
  return json{{"type", "frac"}, {"weights", weights}};
}

inline json to_json(const OneInclusionGraph& g, const FractionalOrientation<double>& o) {
  json weights = json::array();
  for (std::size_t e = 0; e < o.weights.size(); ++e) {
    json row = json::array();
    for (std::size_t k = 0; k < o.weights[e].size(); ++k)
      if (o.weights[e][k] > 0) row.push_back({g.edges()[e].incident[k], o.weights[e][k]});
    weights.push_back(row);
  }
  return json{{"type", "frac"}, {"weights", weights}};
}

inline json to_json(const OneInclusionGraph& g, const AnyOrientation& o) {
  return std::visit(
      [&](const auto& x) -> json {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Orientation>)
          return to_json(x);
        else
          return to_json(g, x);
      },
      o);
}

/// Reads either orientation schema. Fractional entries are [v, num, den]
/// (exact) or [v, value] (float); all rows of one file must agree.
inline AnyOrientation orientation_from_json(const OneInclusionGraph& g, const json& j) {
  return guarded("orientation JSON", [&]() -> AnyOrientation {
    auto type = j.at("type").get<std::string>();
    if (type == "det") {
      Orientation o{j.at("targets").get<std::vector<std::size_t>>()};
      validate(g, o);
      return o;
    }
    if (type != "frac") throw DomainError("orientation JSON: unknown type '" + type + "'");
    const auto& rows = j.at("weights");
    if (rows.size() != g.num_edges()) throw DomainError("orientation/graph mismatch: edge count");
    bool exact = true, seen = false;
    for (const auto& row : rows)
      for (const auto& entry : row) {
        bool triple = entry.size() == 3;
        if (!triple && entry.size() != 2) throw DomainError("orientation JSON: bad weight entry");
        if (seen && triple != exact) throw DomainError("orientation JSON: mixed weight kinds");
        exact = triple;
        seen = true;
      }
    auto fill = [&](auto zero, auto read) {
      using T = decltype(zero);
      FractionalOrientation<T> o;
      for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto& inc = g.edges()[e].incident;
        std::vector<T> w(inc.size(), zero);
        for (const auto& entry : rows[e]) {
          auto v = entry.at(0).template get<std::size_t>();
          auto it = std::lower_bound(inc.begin(), inc.end(), v);
          if (it == inc.end() || *it != v)
            throw DomainError("orientation/graph mismatch: vertex " + std::to_string(v) +
                              " not incident to edge " + std::to_string(e));
          w[static_cast<std::size_t>(it - inc.begin())] += read(entry);
        }
        o.weights.push_back(std::move(w));
      }
      validate(g, o);
      return AnyOrientation(std::move(o));
    };
    if (exact)
      return fill(Rational(0), [](const json& x) {
        return Rational(x.at(1).get<std::int64_t>(), x.at(2).get<std::int64_t>());
      });
    return fill(0.0, [](const json& x) { return x.at(1).get<double>(); });
  });
}

// ---- solver outputs ----------------------------------------------------------

inline json to_json(const MaxEntSolution& s) {
  return json{{"lambda", s.lambda},       {"rho", s.rho},
              {"c", s.c},                 {"expected_indegree", s.expected_indegree},
              {"kkt_residual", s.kkt_residual}, {"iterations", s.iterations},
              {"capped", s.capped},       {"converged", s.converged}};
}

inline MaxEntSolution maxent_from_json(const json& j) {
  return guarded("maxent JSON", [&] {
    MaxEntSolution s;
    s.lambda = j.at("lambda").get<std::vector<double>>();
    s.rho = j.at("rho").get<std::vector<double>>();
    s.c = j.at("c").get<std::vector<double>>();
    s.kkt_residual = j.at("kkt_residual").get<double>();
    s.iterations = j.at("iterations").get<int>();
    s.capped = j.at("capped").get<bool>();
    s.converged = j.value("converged", true);
    s.expected_indegree = j.value("expected_indegree", std::vector<double>{});
    return s;
  });
}

inline std::vector<std::string> rational_strings(const std::vector<Rational>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(x.str());
  return out;
}

inline json to_json(const RegularizerTable& t) {
  return json{{"phi", rational_strings(t.phi)}, {"layers", t.layers}, {"n", t.n}};
}

inline RegularizerTable regularizer_from_json(const json& j) {
  return guarded("regularizer JSON", [&] {
    RegularizerTable t;
    for (const auto& s : j.at("phi")) t.phi.push_back(Rational::parse(s.get<std::string>()));
    t.layers = j.at("layers").get<std::vector<int>>();
    t.n = j.at("n").get<int>();
    return t;
  });
}

inline json to_json(const ComplexityResult& r, const HypothesisClass& cls) {
  std::vector<std::string> s;
  for (int i : r.argmax.indices()) s.push_back(cls.points()[static_cast<std::size_t>(i)]);
  return json{{"hall", r.hall.str()},
              {"pi", r.pi.str()},
              {"epsilon", r.epsilon.str()},
              {"argmax_S", s},
              {"samples", r.samples}};
}

/// "p/q (≈ 2.333333)", the CLI's human-readable rational.
inline std::string pretty(const Rational& r) {
  std::ostringstream out;
  out << r.str() << " (≈ " << std::setprecision(6) << std::fixed << r.to_double() << ")";
  return out.str();
}

inline json scalar_json(const Rational& r) { return r.str(); }
inline json scalar_json(double x) { return x; }

}  // namespace oiglab::io
