#pragma once

// JSON forms of results. Reports share one envelope:
//   {"schema_version": ..., "manifest": {...}, "results": [...]}
// Every real-valued result carries a rigor tag.

#include <string>
#include <vector>

#include <json.hpp>

#include "lattice/bounds.hpp"
#include "lattice/eden.hpp"
#include "lattice/enumerate.hpp"
#include "lattice/histogram.hpp"
#include "lattice/percolation.hpp"

namespace lattice::report {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

/// 12 significant digits, rounded toward the safe side of the bound.
inline constexpr int kDisplayDigits = 12;

inline json to_json(const bounds::GrowthBound& g, int decimals = -1) {
  json j{{"kind", "growth-bound"},
         {"quantity", bounds::to_string(g.quantity)},
         {"d", g.d},
         {"lattice", g.lattice},
         {"value", g.value},
         {"display", bounds::format_significant(g.value, kDisplayDigits, g.direction)},
         {"rounding", g.direction == bounds::Direction::lower ? "down" : "up"},
         {"direction", bounds::to_string(g.direction)},
         {"rigor", bounds::to_string(g.rigor)},
         {"provenance", g.provenance}};
  if (decimals >= 0) j["truncated"] = bounds::format_conservative(g.value, decimals, g.direction);
  return j;
}

inline json to_json(const bounds::ThresholdBound& t, int decimals = -1) {
  json j{{"kind", "threshold-bound"},
         {"quantity", t.flavor == bounds::Flavor::site ? "p_c_site" : "p_c_bond"},
         {"flavor", bounds::to_string(t.flavor)},
         {"d", t.d},
         {"lattice", t.lattice},
         {"value", t.value},
         {"display", bounds::format_significant(t.value, kDisplayDigits, t.direction)},
         {"rounding", t.direction == bounds::Direction::lower ? "down" : "up"},
         {"direction", bounds::to_string(t.direction)},
         {"rigor", bounds::to_string(t.rigor)},
         {"provenance", t.provenance}};
  if (decimals >= 0) j["truncated"] = bounds::format_conservative(t.value, decimals, t.direction);
  return j;
}

inline json to_json(const perc::PercConfig& c) {
  return json{{"d", c.d}, {"L", c.L}, {"flavor", bounds::to_string(c.flavor)}, {"p", c.p},
              {"trials", c.trials}, {"seed", c.seed}};
}

inline json to_json(const perc::PercEstimate& e) {
  json j{{"kind", "estimate"},
         {"quantity", perc::to_string(e.quantity)},
         {"value", e.value},
         {"half_width", e.half_width},
         {"rigor", bounds::to_string(bounds::Rigor::monte_carlo)},
         {"trials", e.trials},
         {"config", to_json(e.config)}};
  if (e.quantity != perc::EstimateKind::threshold) j["successes"] = e.successes;
  if (e.quantity == perc::EstimateKind::tail_mass) j["tail_size"] = e.tail_size;
  return j;
}

inline json counts_json(const CountResult& r) {
  json arr = json::array();
  for (int n = 1; n <= r.n_max; ++n) arr.push_back({{"n", n}, {"count", to_decimal(r.at(n))}});
  return arr;
}

inline json to_json(const CountResult& r) {
  return json{{"kind", "counts"},
              {"d", r.d},
              {"animal_kind", to_string(r.kind)},
              {"rooting", to_string(r.rooting)},
              {"counts", counts_json(r)},
              {"partial", r.partial},
              {"nodes", r.nodes},
              {"rigor", "exact"}};
}

inline json to_json(const RatioHistogram& h) {
  json bins = json::array();
  for (const auto& [b, c] : h.bins)
    bins.push_back({{"bin", b}, {"lower", h.bin_lower_edge(b)}, {"upper", h.bin_lower_edge(b + 1)}, {"count", to_decimal(c)}});
  json exact = json::array();
  for (const auto& [b, c] : h.exact)
    exact.push_back({{"boundary", b}, {"ratio", static_cast<double>(b) / h.n}, {"count", to_decimal(c)}});
  return json{{"kind", "ratio-histogram"},
              {"d", h.d},
              {"n", h.n},
              {"animal_kind", to_string(h.kind)},
              {"boundary", h.kind == Kind::site ? "vertex" : h.kind == Kind::interface2d ? "interface" : "edge"},
              {"epsilon", h.epsilon},
              {"bins", bins},
              {"by_boundary", exact},
              {"total", to_decimal(h.total())},
              {"partial", h.partial},
              {"rigor", "exact"}};
}

inline json to_json(const EdenCode& c) { return json{{"d", c.d}, {"n", c.n}, {"bits", c.str()}}; }

/// Parses {d, n, bits}; the bit string length must match (2d-1)n - d + 1.
inline EdenCode eden_code_from_json(const json& j) {
  const int d = j.at("d").get<int>();
  const int n = j.at("n").get<int>();
  auto code = EdenCode::parse(d, j.at("bits").get<std::string>());
  if (code.n != n)
    throw std::invalid_argument("bit string length does not match n = " + std::to_string(n));
  return code;
}

struct Manifest {
  std::vector<std::string> argv;
  json config = json::object();
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string started;  // empty unless timestamps were requested
  std::string finished;

  json to_json() const {
    json j{{"tool", "lattice-tool"},
           {"version", kToolVersion},
           {"command_line", argv},
           {"config", config},
           {"inputs", inputs},
           {"outputs", outputs}};
    if (!started.empty()) j["timestamps"] = {{"started", started}, {"finished", finished}};
    return j;
  }
};

inline json envelope(const Manifest& m, json results) {
  return json{{"schema_version", kSchemaVersion}, {"manifest", m.to_json()}, {"results", std::move(results)}};
}

}  // namespace lattice::report
