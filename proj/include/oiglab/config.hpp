#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>

#include <json.hpp>

#include "oiglab/classes.hpp"
#include "oiglab/error.hpp"
#include "oiglab/hall.hpp"
#include "oiglab/maxent.hpp"
#include "oiglab/oig.hpp"
#include "oiglab/orientation.hpp"

namespace oiglab {

/// Run-wide knobs. Loaded from JSON; unknown keys are rejected so typos do
/// not silently fall back to defaults.
struct Config {
  std::size_t vertex_cap = kDefaultVertexCap;
  std::size_t assignment_cap = kDefaultAssignmentCap;
  std::size_t sequence_cap = kDefaultSequenceCap;
  std::size_t agnostic_cap = kDefaultAgnosticCap;
  double kkt_tol = 1e-6;
  double float_tol = kFloatTolerance;
  double lambda_cap = 50.0;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = available parallelism

  void check() const {
    if (vertex_cap == 0 || assignment_cap == 0 || sequence_cap == 0 || agnostic_cap == 0)
      throw DomainError("config: caps must be positive");
    if (!(kkt_tol > 0 && kkt_tol < 1)) throw DomainError("config: kkt_tol must lie in (0, 1)");
    if (!(float_tol > 0 && float_tol < 1)) throw DomainError("config: float_tol must lie in (0, 1)");
    if (!(lambda_cap > 0)) throw DomainError("config: lambda_cap must be positive");
  }

  [[nodiscard]] MaxEntOptions maxent_options() const {
    MaxEntOptions o;
    o.tol = kkt_tol;
    o.lambda_cap = lambda_cap;
    return o;
  }
};

inline nlohmann::json to_json(const Config& c) {
  return {{"vertex_cap", c.vertex_cap}, {"assignment_cap", c.assignment_cap},
          {"sequence_cap", c.sequence_cap}, {"agnostic_cap", c.agnostic_cap},
          {"kkt_tol", c.kkt_tol}, {"float_tol", c.float_tol},
          {"lambda_cap", c.lambda_cap}, {"seed", c.seed},
          {"threads", c.threads}};
}

inline Config config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("config: expected a JSON object");
  Config c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "vertex_cap") c.vertex_cap = value.get<std::size_t>();
      else if (key == "assignment_cap") c.assignment_cap = value.get<std::size_t>();
      else if (key == "sequence_cap") c.sequence_cap = value.get<std::size_t>();
      else if (key == "agnostic_cap") c.agnostic_cap = value.get<std::size_t>();
      else if (key == "kkt_tol") c.kkt_tol = value.get<double>();
      else if (key == "float_tol") c.float_tol = value.get<double>();
      else if (key == "lambda_cap") c.lambda_cap = value.get<double>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "threads") c.threads = value.get<unsigned>();
      else throw DomainError("config: unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("config: ") + e.what());
  }
  c.check();
  return c;
}

/// Thread count from OIGLAB_THREADS, if set and well-formed.
inline std::optional<unsigned> threads_from_env() {
  const char* raw = std::getenv("OIGLAB_THREADS");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  unsigned long v = std::strtoul(raw, &end, 10);
  if (*end != '\0') throw DomainError("OIGLAB_THREADS must be a nonnegative integer");
  return static_cast<unsigned>(v);
}

}  // namespace oiglab
