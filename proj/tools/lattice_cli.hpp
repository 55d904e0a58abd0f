#pragma once

// lattice-tool: one binary, subcommands enumerate / eden / bounds /
// percolate / cache. Every leaf command accepts --output text|json|csv and
// --out FILE. JSON is the canonical format; CSV and text are projections.
//
// Exit codes: 0 success, 1 a verification found violations, 2 usage error,
// 3 resource limit hit (partial output is still written, marked partial).

#include <algorithm>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lattice/animal.hpp"
#include "lattice/bounds.hpp"
#include "lattice/cache.hpp"
#include "lattice/eden.hpp"
#include "lattice/enumerate.hpp"
#include "lattice/expansions.hpp"
#include "lattice/histogram.hpp"
#include "lattice/oracle.hpp"
#include "lattice/percolation.hpp"
#include "lattice/report.hpp"

namespace lattice::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kViolations = 1, kUsage = 2, kResource = 3 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Output plumbing

struct Table {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  json results = json::array();
  std::vector<Table> tables;
  std::vector<std::string> lines;  // text mode: printed before the tables
  std::optional<std::string> text;  // text mode: replaces lines and tables
  json config = json::object();
  std::vector<std::string> inputs;
  bool partial = false;
  bool violations = false;
};

struct Common {
  std::string output = "text";
  std::string out_file;
  bool timestamp = false;
};

/// Shortest round-trip form; to_chars never consults the locale.
inline std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline void write_text(std::ostream& os, const Report& r) {
  if (r.text) {
    os << *r.text;
    return;
  }
  for (const auto& l : r.lines) os << l << '\n';
  for (const auto& t : r.tables) {
    if (!t.title.empty()) os << "# " << t.title << '\n';
    std::vector<std::size_t> w(t.header.size(), 0);
    for (std::size_t i = 0; i < t.header.size(); ++i) w[i] = t.header[i].size();
    for (const auto& row : t.rows)
      for (std::size_t i = 0; i < row.size() && i < w.size(); ++i) w[i] = std::max(w[i], row[i].size());
    auto put = [&](const std::vector<std::string>& row) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << row[i];
        if (i + 1 < row.size()) os << std::string(w[i] - row[i].size() + 2, ' ');
      }
      os << '\n';
    };
    put(t.header);
    for (const auto& row : t.rows) put(row);
  }
}

inline void write_csv(std::ostream& os, const Report& r) {
  bool first = true;
  for (const auto& t : r.tables) {
    if (!first) os << '\n';
    first = false;
    auto put = [&](const std::vector<std::string>& row) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
      os << '\n';
    };
    put(t.header);
    for (const auto& row : t.rows) put(row);
  }
}

class Runner {
 public:
  Runner(std::vector<std::string> argv, std::ostream& out, std::ostream& err)
      : argv_(std::move(argv)), out_(out), err_(err), started_(utc_now()) {}

  int emit(const Report& r, const Common& c) {
    std::ostringstream body;
    if (c.output == "json") {
      report::Manifest m;
      m.argv = argv_;
      m.config = r.config;
      m.inputs = r.inputs;
      if (!c.out_file.empty()) m.outputs.push_back(c.out_file);
      if (c.timestamp) {
        m.started = started_;
        m.finished = utc_now();
      }
      body << report::envelope(m, r.results).dump(2) << '\n';
    } else if (c.output == "csv") {
      write_csv(body, r);
    } else {
      write_text(body, r);
    }
    if (c.out_file.empty()) {
      out_ << body.str();
    } else {
      std::ofstream f(c.out_file, std::ios::binary);
      if (!f) throw UsageError("--out: cannot open '" + c.out_file + "' for writing");
      f << body.str();
    }
    if (r.partial) {
      err_ << "error: resource limit reached; output is partial\n";
      return kResource;
    }
    return r.violations ? kViolations : kOk;
  }

  std::ostream& err() { return err_; }

 private:
  std::vector<std::string> argv_;
  std::ostream& out_;
  std::ostream& err_;
  std::string started_;
};

// ---------------------------------------------------------------------------
// Animal input

/// One vertex per line as comma-separated integers; '#' starts a comment.
inline std::vector<Vertex> parse_vertices(std::istream& in, const std::string& source) {
  std::vector<Vertex> out;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<Coord> coords;
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      const auto b = field.find_first_not_of(" \t\r");
      const auto e = field.find_last_not_of(" \t\r");
      const std::string tok = b == std::string::npos ? "" : field.substr(b, e - b + 1);
      Coord v = 0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw UsageError(source + ":" + std::to_string(lineno) + ": '" + tok + "' is not an integer coordinate");
      coords.push_back(v);
    }
    if (!out.empty() && coords.size() != out.front().coords.size())
      throw UsageError(source + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(out.front().coords.size()) + " coordinates, got " +
                       std::to_string(coords.size()));
    out.emplace_back(std::move(coords));
  }
  if (out.empty()) throw UsageError(source + ": no vertices given");
  return out;
}

/// Inline form: vertices separated by ';' or whitespace, e.g. "0,0;1,0".
inline std::vector<Vertex> parse_inline_vertices(const std::string& s) {
  std::string lines = s;
  std::replace(lines.begin(), lines.end(), ';', '\n');
  std::replace(lines.begin(), lines.end(), ' ', '\n');
  std::istringstream in(lines);
  return parse_vertices(in, "--cells");
}

inline std::string vertex_text(const Vertex& v) {
  std::string s = "(";
  for (int i = 0; i < v.dim(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

inline std::string vertex_csv(const Vertex& v) {
  std::string s;
  for (int i = 0; i < v.dim(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

// ---------------------------------------------------------------------------
// Commands

inline void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--output", c.output, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  sub->add_option("--out", c.out_file, "Write the report to FILE instead of stdout");
  sub->add_flag("--timestamp", c.timestamp, "Record start/finish times in the JSON manifest");
}

struct EnumerateArgs {
  int d = 0;
  int n_max = 0;
  std::string kind = "site";
  std::string rooting = "lexmin";
  double eps = 0.05;
  int histogram = 0;
  int threads = 1;
  std::uint64_t node_budget = 0;
  std::string cache_dir;
  bool oracle_check = false;
};

inline Table counts_table(const CountResult& r) {
  Table t{"counts d=" + std::to_string(r.d) + " kind=" + std::string(to_string(r.kind)) +
              " rooting=" + std::string(to_string(r.rooting)) + (r.partial ? " PARTIAL" : ""),
          {"n", "count"},
          {}};
  for (int n = 1; n <= r.n_max; ++n) t.rows.push_back({std::to_string(n), to_decimal(r.at(n))});
  return t;
}

inline int cmd_enumerate(Runner& run, const EnumerateArgs& a, const Common& c) {
  const Kind kind = parse_kind(a.kind);
  const Rooting rooting = parse_rooting(a.rooting);
  if (kind == Kind::interface2d && a.d != 2) throw UsageError("--kind interface2d requires --d 2");
  if (a.histogram > 0 && kind == Kind::interface2d && a.d != 2) throw UsageError("--histogram: interface2d needs --d 2");

  Report r;
  r.config = {{"d", a.d}, {"n_max", a.n_max}, {"kind", a.kind}, {"rooting", to_string(rooting)},
              {"threads", a.threads}, {"node_budget", a.node_budget}};
  if (a.histogram > 0) r.config["histogram"] = {{"n", a.histogram}, {"epsilon", a.eps}};

  EnumerationOptions opt;
  opt.threads = a.threads;
  opt.node_budget = a.node_budget;

  const auto dir = cache::resolve_dir(a.cache_dir);
  std::optional<CountResult> result;
  if (!dir.empty()) {
    const auto file = cache::file_for(dir, a.d, kind, rooting).string();
    r.config["cache_file"] = file;
    result = cache::load(dir, a.d, kind, rooting, a.n_max);
    run.err() << (result ? "cache hit: " : "cache miss: ") << file << '\n';
  }
  if (!result) {
    result = count_animals(a.d, kind, a.n_max, rooting, opt);
    if (!dir.empty() && !result->partial) cache::store(dir, *result);
  }
  r.partial = result->partial;
  r.results.push_back(report::to_json(*result));
  r.tables.push_back(counts_table(*result));

  if (a.oracle_check) {
    Table t{"oracle cross-check", {"n", "fast", "oracle", "match"}, {}};
    json checks = json::array();
    for (int n = 1; n <= a.n_max; ++n) {
      const auto listed = enumerate_oracle(a.d, n, kind, rooting).size();
      const bool ok = result->at(n) == listed;
      r.violations = r.violations || !ok;
      t.rows.push_back({std::to_string(n), to_decimal(result->at(n)), std::to_string(listed), ok ? "yes" : "NO"});
      checks.push_back({{"n", n}, {"fast", to_decimal(result->at(n))}, {"oracle", std::to_string(listed)}, {"match", ok}});
    }
    r.results.push_back({{"kind", "oracle-check"}, {"checks", checks}, {"rigor", "exact"}});
    r.tables.push_back(std::move(t));
  }

  if (a.histogram > 0) {
    const auto h = ratio_histogram(a.d, a.histogram, kind, a.eps, opt);
    r.partial = r.partial || h.partial;
    r.results.push_back(report::to_json(h));
    Table t{"ratio histogram n=" + std::to_string(h.n) + " epsilon=" + num(h.epsilon), {"bin", "lower", "upper", "count"}, {}};
    for (const auto& [b, cnt] : h.bins)
      t.rows.push_back({std::to_string(b), num(h.bin_lower_edge(b)), num(h.bin_lower_edge(b + 1)), to_decimal(cnt)});
    r.tables.push_back(std::move(t));
    Table e{"boundary sizes n=" + std::to_string(h.n), {"boundary", "ratio", "count"}, {}};
    for (const auto& [b, cnt] : h.exact)
      e.rows.push_back({std::to_string(b), num(static_cast<double>(b) / h.n), to_decimal(cnt)});
    r.tables.push_back(std::move(e));
  }
  return run.emit(r, c);
}

struct EdenArgs {
  int d = 0;
  std::string file;
  std::string cells;
  std::string bits;
  int n_max = 0;
  int threads = 1;
};

inline int cmd_eden_encode(Runner& run, const EdenArgs& a, const Common& c) {
  std::vector<Vertex> vs;
  std::string source;
  if (!a.file.empty()) {
    std::ifstream in(a.file);
    if (!in) throw UsageError("--file: cannot open '" + a.file + "'");
    vs = parse_vertices(in, a.file);
    source = a.file;
  } else if (!a.cells.empty()) {
    vs = parse_inline_vertices(a.cells);
  } else {
    throw UsageError("eden encode needs --file or --cells");
  }
  const int d = vs.front().dim();
  if (a.d != 0 && a.d != d) throw UsageError("--d " + std::to_string(a.d) + " does not match " + std::to_string(d) +
                                             "-coordinate vertices");
  const auto animal = LatticeAnimal::site(d, vs);
  const auto [code, tree] = eden_encode(animal);
  const auto turn = check_turn_bound(animal);

  Report r;
  r.config = {{"d", d}};
  if (!source.empty()) r.inputs.push_back(source);
  json j = report::to_json(code);
  j["kind"] = "eden-code";
  j["turns"] = tree.turn_count;
  j["vertex_boundary"] = turn.lhs;
  j["turn_bound_rhs"] = turn.rhs;
  j["turn_bound_holds"] = turn.holds;
  r.results.push_back(j);
  r.text = code.str() + "\nturns " + std::to_string(tree.turn_count) + "\n";
  r.tables.push_back({"", {"bits", "d", "n", "turns", "vertex_boundary", "turn_bound_rhs"},
                      {{code.str(), std::to_string(d), std::to_string(code.n), std::to_string(tree.turn_count),
                        std::to_string(turn.lhs), std::to_string(turn.rhs)}}});
  return run.emit(r, c);
}

inline int cmd_eden_decode(Runner& run, const EdenArgs& a, const Common& c) {
  const auto code = EdenCode::parse(a.d, a.bits);
  const auto animal = eden_decode(code);
  Report r;
  r.config = {{"d", a.d}, {"bits", a.bits}};
  json cells = json::array();
  std::string text;
  Table t{"", {"vertex"}, {}};
  for (const auto& v : animal.cells()) {
    cells.push_back(v.coords);
    text += vertex_text(v) + "\n";
    t.rows.push_back({vertex_csv(v)});
  }
  r.results.push_back({{"kind", "site-animal"}, {"d", a.d}, {"n", animal.size()}, {"cells", cells}});
  r.text = text;
  r.tables.push_back(std::move(t));
  return run.emit(r, c);
}

/// Per-size tallies for `eden verify`.
struct VerifyVisitor {
  int n_max = 0;
  std::vector<std::uint64_t> animals, roundtrip_fail, length_fail, ones_fail, turn_fail;
  std::vector<int> max_turns;

  explicit VerifyVisitor(int n = 0)
      : n_max(n), animals(n + 1), roundtrip_fail(n + 1), length_fail(n + 1), ones_fail(n + 1), turn_fail(n + 1),
        max_turns(n + 1) {}

  void operator()(const AnimalView& v) {
    const auto n = static_cast<std::size_t>(v.size());
    const auto x = v.to_animal();
    const auto [code, tree] = eden_encode(x);
    ++animals[n];
    if (static_cast<std::int64_t>(code.bits.size()) != eden_code_length(x.dim(), x.size())) ++length_fail[n];
    if (code.ones_count() != x.size() - 1) ++ones_fail[n];
    try {
      if (!(eden_decode(code) == x)) ++roundtrip_fail[n];
    } catch (const EdenDecodeError&) {
      ++roundtrip_fail[n];
    }
    const long rhs = static_cast<long>(2 * x.dim() - 2) * x.size() - tree.turn_count + 2;
    if (boundary_stats(x).vertex_boundary > rhs) ++turn_fail[n];
    max_turns[n] = std::max(max_turns[n], tree.turn_count);
  }
  void merge(const VerifyVisitor& o) {
    for (std::size_t i = 0; i < animals.size(); ++i) {
      animals[i] += o.animals[i];
      roundtrip_fail[i] += o.roundtrip_fail[i];
      length_fail[i] += o.length_fail[i];
      ones_fail[i] += o.ones_fail[i];
      turn_fail[i] += o.turn_fail[i];
      max_turns[i] = std::max(max_turns[i], o.max_turns[i]);
    }
  }
};

inline int cmd_eden_verify(Runner& run, const EdenArgs& a, const Common& c) {
  EnumerationOptions opt;
  opt.threads = a.threads;
  VerifyVisitor v(a.n_max);
  for_each_animal(a.d, Kind::site, a.n_max, v, opt);

  Report r;
  r.config = {{"d", a.d}, {"n_max", a.n_max}, {"threads", a.threads}};
  Table t{"eden verify d=" + std::to_string(a.d),
          {"n", "animals", "roundtrip_fail", "length_fail", "ones_fail", "turn_bound_fail", "max_turns", "ijq_bound",
           "ijq_dominates"},
          {}};
  std::uint64_t rt = 0, shape = 0, turn = 0, ijq_fail = 0;
  json rows = json::array();
  for (int n = 1; n <= a.n_max; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const BigInt bound = ijq_upper_bound(a.d, n, v.max_turns[i]);
    const bool dominates = bound >= v.animals[i];
    rt += v.roundtrip_fail[i];
    shape += v.length_fail[i] + v.ones_fail[i];
    turn += v.turn_fail[i];
    ijq_fail += dominates ? 0 : 1;
    t.rows.push_back({std::to_string(n), std::to_string(v.animals[i]), std::to_string(v.roundtrip_fail[i]),
                      std::to_string(v.length_fail[i]), std::to_string(v.ones_fail[i]),
                      std::to_string(v.turn_fail[i]), std::to_string(v.max_turns[i]), to_decimal(bound),
                      dominates ? "yes" : "NO"});
    rows.push_back({{"n", n},
                    {"animals", std::to_string(v.animals[i])},
                    {"roundtrip_fail", v.roundtrip_fail[i]},
                    {"length_fail", v.length_fail[i]},
                    {"ones_fail", v.ones_fail[i]},
                    {"turn_bound_fail", v.turn_fail[i]},
                    {"max_turns", v.max_turns[i]},
                    {"ijq_bound", to_decimal(bound)},
                    {"ijq_dominates", dominates}});
  }
  auto verdict = [](std::uint64_t k) { return k == 0 ? std::string("PASS") : "FAIL (" + std::to_string(k) + ")"; };
  r.lines = {"round-trip and code shape: " + verdict(rt + shape), "turn bound: " + verdict(turn),
             "ijq domination: " + verdict(ijq_fail)};
  r.violations = rt + shape + turn + ijq_fail > 0;
  r.results.push_back({{"kind", "eden-verify"},
                       {"d", a.d},
                       {"n_max", a.n_max},
                       {"sizes", rows},
                       {"roundtrip_violations", rt + shape},
                       {"turn_bound_violations", turn},
                       {"ijq_violations", ijq_fail},
                       {"rigor", "exact"}});
  r.tables.push_back(std::move(t));
  return run.emit(r, c);
}

struct BoundsArgs {
  std::optional<double> growth_upper;
  std::optional<double> pc_upper;
  int d = 0;
  std::string lattice;
  std::string flavor = "site";
  std::string input_rigor = "rigorous";
  int decimals = 4;
  double x = 0.0;
  std::string name;
  bool list = false;
  double C = bounds::kDefaultC;
};

inline std::string lattice_name(const BoundsArgs& a) {
  if (!a.lattice.empty()) return a.lattice;
  if (a.d > 0) return bounds::hypercubic(a.d);
  throw UsageError("--d or --lattice is required");
}

template <class B>
void add_bound_rows(Report& r, const B& b, int decimals) {
  r.results.push_back(report::to_json(b, decimals));
  std::string chain;
  for (const auto& p : b.provenance) chain += (chain.empty() ? "" : " > ") + p;
  const auto dir = b.direction;
  r.tables.push_back({"", {"field", "value"},
                      {{"bound", bounds::format_conservative(b.value, decimals, dir)},
                       {"display", bounds::format_significant(b.value, report::kDisplayDigits, dir)},
                       {"rounding", dir == bounds::Direction::lower ? "down" : "up"},
                       {"direction", std::string(bounds::to_string(dir))},
                       {"rigor", std::string(bounds::to_string(b.rigor))},
                       {"provenance", chain}}});
}

inline int cmd_translate(Runner& run, const BoundsArgs& a, const Common& c) {
  if (a.growth_upper.has_value() == a.pc_upper.has_value())
    throw UsageError("give exactly one of --from-growth-upper and --from-pc-upper");
  const auto flavor = bounds::parse_flavor(a.flavor);
  const auto rigor = bounds::parse_rigor(a.input_rigor);
  Report r;
  r.config = {{"d", a.d}, {"lattice", lattice_name(a)}, {"flavor", a.flavor}, {"input_rigor", a.input_rigor},
              {"decimals", a.decimals}};
  if (a.growth_upper) {
    bounds::GrowthBound in;
    in.quantity = flavor == bounds::Flavor::site ? bounds::Quantity::a_site : bounds::Quantity::a;
    in.d = a.d;
    in.lattice = lattice_name(a);
    in.value = *a.growth_upper;
    in.direction = bounds::Direction::upper;
    in.rigor = rigor;
    in.provenance = {"input:" + std::string(bounds::to_string(in.quantity)) + "<=" + num(in.value)};
    r.config["from_growth_upper"] = in.value;
    const auto out = bounds::pc_lower_from_growth_upper(in);
    r.lines.push_back("p_c(" + a.flavor + ", " + out.lattice + ") >= " +
                      bounds::format_conservative(out.value, a.decimals, out.direction));
    add_bound_rows(r, out, a.decimals);
  } else {
    bounds::ThresholdBound in;
    in.flavor = flavor;
    in.d = a.d;
    in.lattice = lattice_name(a);
    in.value = *a.pc_upper;
    in.direction = bounds::Direction::upper;
    in.rigor = rigor;
    in.provenance = {"input:p_c_" + a.flavor + "<=" + num(in.value)};
    r.config["from_pc_upper"] = in.value;
    const auto out = bounds::growth_lower_from_pc_upper(in);
    r.lines.push_back(std::string(bounds::to_string(out.quantity)) + "(" + out.lattice +
                      ") >= " + bounds::format_conservative(out.value, a.decimals, out.direction));
    add_bound_rows(r, out, a.decimals);
  }
  return run.emit(r, c);
}

inline int cmd_lemma(Runner& run, const BoundsArgs& a, const Common& c) {
  const double v = bounds::g(a.d, a.x);
  const double y = std::min(a.x, 0.5);
  Report r;
  r.config = {{"d", a.d}, {"x", a.x}};
  r.results.push_back({{"kind", "lemma-g"},
                       {"d", a.d},
                       {"x", a.x},
                       {"y", y},
                       {"ratio", 2.0 * a.d - 2.0 - a.x},
                       {"value", v},
                       {"display", bounds::format_significant(v, report::kDisplayDigits, bounds::Direction::upper)},
                       {"direction", "upper"},
                       {"rigor", "rigorous"},
                       {"provenance", {"g_d(x)"}}});
  r.lines.push_back("g_" + std::to_string(a.d) + "(" + num(a.x) + ") = " +
                    bounds::format_significant(v, report::kDisplayDigits, bounds::Direction::upper));
  r.tables.push_back({"", {"d", "x", "y", "ratio", "g"},
                      {{std::to_string(a.d), num(a.x), num(y), num(2.0 * a.d - 2.0 - a.x), num(v)}}});
  return run.emit(r, c);
}

inline int cmd_expansion(Runner& run, const BoundsArgs& a, const Common& c) {
  Report r;
  if (a.list || a.name.empty()) {
    Table t{"", {"name", "quantity", "variable", "rigor", "error_order"}, {}};
    for (const auto& s : bounds::expansion_registry()) {
      const std::string var = s.variable == bounds::ExpansionVariable::two_d ? "2d" : "2d-1";
      t.rows.push_back({s.name, s.quantity, var, std::string(bounds::to_string(s.rigor)), s.error_order});
      r.results.push_back({{"kind", "expansion-spec"}, {"name", s.name}, {"quantity", s.quantity}, {"variable", var},
                           {"coefficients", s.coefficients}, {"error_order", s.error_order},
                           {"rigor", bounds::to_string(s.rigor)}});
    }
    r.tables.push_back(std::move(t));
    return run.emit(r, c);
  }
  if (a.d == 0) throw UsageError("--d is required");
  const auto& spec = bounds::find_expansion(a.name);
  const double v = bounds::evaluate_expansion(spec, a.d);
  r.config = {{"name", a.name}, {"d", a.d}};
  r.results.push_back({{"kind", "expansion"},
                       {"name", spec.name},
                       {"quantity", spec.quantity},
                       {"d", a.d},
                       {"value", v},
                       {"display", bounds::format_significant(v, report::kDisplayDigits, bounds::Direction::lower)},
                       {"error_order", spec.error_order},
                       {"rigor", bounds::to_string(spec.rigor)},
                       {"note", "finite partial sum; the error term is not added"}});
  r.lines.push_back(spec.name + "(d=" + std::to_string(a.d) + ") = " + num(v) + "  [" +
                    std::string(bounds::to_string(spec.rigor)) + ", error " + spec.error_order + "]");
  r.tables.push_back({"", {"name", "d", "value", "rigor"},
                      {{spec.name, std::to_string(a.d), num(v), std::string(bounds::to_string(spec.rigor))}}});
  return run.emit(r, c);
}

inline int cmd_improved(Runner& run, const BoundsArgs& a, const Common& c) {
  const auto ib = bounds::improved_upper_bound(a.d, a.C);
  const auto pc = bounds::thm_pc_lower(a.d, a.C);
  Report r;
  r.config = {{"d", a.d}, {"C", a.C}};
  json j = report::to_json(ib.bound, a.decimals);
  j["z"] = ib.z;
  j["C"] = a.C;
  j["crude"] = bounds::b_upper_crude(a.d);
  r.results.push_back(j);
  r.results.push_back(report::to_json(pc, a.decimals));
  r.lines.push_back("z = " + num(ib.z));
  r.lines.push_back("a_site(Z^" + std::to_string(a.d) +
                    ") <= " + bounds::format_conservative(ib.bound.value, a.decimals, bounds::Direction::upper));
  r.lines.push_back("p_c(site, Z^" + std::to_string(a.d) +
                    ") >= " + bounds::format_conservative(pc.value, a.decimals, bounds::Direction::lower));
  r.tables.push_back({"", {"d", "C", "z", "bound", "crude", "pc_lower"},
                      {{std::to_string(a.d), num(a.C), num(ib.z), num(ib.bound.value), num(bounds::b_upper_crude(a.d)),
                        num(pc.value)}}});
  return run.emit(r, c);
}

inline int cmd_crude(Runner& run, const BoundsArgs& a, const Common& c) {
  const auto flavor = bounds::parse_flavor(a.flavor);
  const auto g = bounds::kesten_growth_upper(a.d, flavor);
  Report r;
  r.config = {{"d", a.d}, {"flavor", a.flavor}};
  r.lines.push_back(std::string(bounds::to_string(g.quantity)) + "(Z^" + std::to_string(a.d) +
                    ") <= " + bounds::format_conservative(g.value, a.decimals, g.direction));
  add_bound_rows(r, g, a.decimals);
  return run.emit(r, c);
}

struct PercArgs {
  perc::PercConfig cfg;
  std::string flavor = "site";
  bool threshold = false;
  std::int64_t tail = 0;
  int steps = 12;
};

inline int cmd_percolate(Runner& run, PercArgs a, const Common& c) {
  a.cfg.flavor = bounds::parse_flavor(a.flavor);
  perc::PercEstimate e;
  if (a.threshold && a.tail > 0) throw UsageError("--threshold and --tail are exclusive");
  if (a.threshold) {
    perc::ThresholdOptions opt;
    opt.steps = a.steps;
    e = perc::estimate_threshold(a.cfg, opt);
  } else if (a.tail > 0) {
    e = perc::cluster_tail(a.cfg, a.tail);
  } else {
    e = perc::crossing_probability(a.cfg);
  }
  Report r;
  r.config = report::to_json(a.cfg);
  r.config["threads"] = a.cfg.threads;
  r.config["mode"] = std::string(perc::to_string(e.quantity));
  if (a.threshold) r.config["steps"] = a.steps;
  r.results.push_back(report::to_json(e));
  r.lines.push_back(std::string(perc::to_string(e.quantity)) + " = " + num(e.value) + " +/- " + num(e.half_width) +
                    "  [monte-carlo, d=" + std::to_string(a.cfg.d) + " L=" + std::to_string(a.cfg.L) + " " + a.flavor +
                    "]");
  r.tables.push_back({"", {"quantity", "value", "half_width", "trials", "successes", "p", "tail_size"},
                      {{std::string(perc::to_string(e.quantity)), num(e.value), num(e.half_width),
                        std::to_string(e.trials), std::to_string(e.successes), num(e.config.p),
                        std::to_string(e.tail_size)}}});
  return run.emit(r, c);
}

inline int cmd_cache(Runner& run, const std::string& action, const std::string& flag_dir, const Common& c) {
  const auto dir = cache::resolve_dir(flag_dir);
  Report r;
  r.config = {{"action", action}, {"dir", dir.string()}};
  if (action == "path") {
    r.results.push_back({{"kind", "cache-path"}, {"dir", dir.string()}, {"enabled", !dir.empty()}});
    r.text = (dir.empty() ? std::string("(caching disabled)") : dir.string()) + "\n";
    r.tables.push_back({"", {"dir"}, {{dir.string()}}});
    return run.emit(r, c);
  }
  if (dir.empty()) throw UsageError("no cache directory: pass --cache-dir or set " + std::string(cache::kCacheDirEnv));
  std::vector<cache::fs::path> files;
  if (cache::fs::exists(dir))
    for (const auto& ent : cache::fs::directory_iterator(dir)) {
      const auto name = ent.path().filename().string();
      if (name.rfind("counts_d", 0) == 0 && ent.path().extension() == ".json") files.push_back(ent.path());
    }
  std::sort(files.begin(), files.end());
  Table t{"", {"file", "schema_version", "d", "kind", "rooting", "n_max", "generator"}, {}};
  for (const auto& f : files) {
    json entry = {{"file", f.string()}};
    std::vector<std::string> row{f.filename().string(), "?", "?", "?", "?", "?", "?"};
    try {
      std::ifstream in(f);
      const json j = json::parse(in);
      entry["schema_version"] = j.at("schema_version");
      entry["d"] = j.at("d");
      entry["animal_kind"] = j.at("kind");
      entry["rooting"] = j.at("rooting");
      entry["n_max"] = j.at("counts").size();
      entry["generator"] = j.value("generator", "?");
      row = {f.filename().string(), j.at("schema_version").dump(), j.at("d").dump(), j.at("kind").get<std::string>(),
             j.at("rooting").get<std::string>(), std::to_string(j.at("counts").size()), j.value("generator", "?")};
    } catch (const std::exception&) {
      entry["unreadable"] = true;
    }
    if (action == "clear") cache::fs::remove(f);
    r.results.push_back(entry);
    t.rows.push_back(std::move(row));
  }
  r.results = json{{{"kind", action == "clear" ? "cache-cleared" : "cache-list"}, {"dir", dir.string()},
                    {"entries", r.results}}};
  if (action == "clear") r.lines.push_back("removed " + std::to_string(files.size()) + " cache file(s)");
  r.tables.push_back(std::move(t));
  return run.emit(r, c);
}

// ---------------------------------------------------------------------------
// Entry point

/// Runs the tool on `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact lattice animal enumeration, Eden codes, growth/threshold bounds and percolation estimates",
               "lattice-tool"};
  app.require_subcommand(1);
  app.set_version_flag("--version", report::kToolVersion);

  Common common;

  EnumerateArgs en;
  auto* enumerate = app.add_subcommand("enumerate", "Exact counts of lattice animals, trees or 2D interfaces");
  enumerate->add_option("--d", en.d, "Dimension")->required()->check(CLI::Range(1, 32));
  enumerate->add_option("--n-max", en.n_max, "Largest size to count")->required()->check(CLI::Range(1, 64));
  enumerate->add_option("--kind", en.kind, "site | bond | tree | interface2d")
      ->check(CLI::IsMember({"site", "bond", "tree", "interface2d"}))
      ->capture_default_str();
  enumerate->add_option("--rooting", en.rooting, "lexmin | origin")
      ->check(CLI::IsMember({"lexmin", "origin"}))
      ->capture_default_str();
  enumerate->add_option("--eps", en.eps, "Histogram bin width in ratio units")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  enumerate->add_option("--histogram", en.histogram, "Also bin the animals of this size by boundary/size ratio")
      ->check(CLI::Range(1, 64));
  enumerate->add_option("--threads", en.threads, "Worker threads")->check(CLI::Range(1, 1024))->capture_default_str();
  enumerate->add_option("--node-budget", en.node_budget, "Abort after this many search nodes (0: unlimited)");
  enumerate->add_option("--cache-dir", en.cache_dir, "Count cache directory (overrides $LATTICE_CACHE_DIR)");
  enumerate->add_flag("--oracle-check", en.oracle_check, "Cross-check every size against the brute-force oracle");
  add_common(enumerate, common);

  EdenArgs ed;
  auto* eden = app.add_subcommand("eden", "Eden codes of site animals");
  eden->require_subcommand(1);
  auto* encode = eden->add_subcommand("encode", "Encode a site animal");
  encode->add_option("--file", ed.file, "Animal file: one vertex per line, comma-separated integers");
  encode->add_option("--cells", ed.cells, "Inline vertices, e.g. \"0,0;1,0\"");
  encode->add_option("--d", ed.d, "Expected dimension")->check(CLI::Range(1, 32));
  add_common(encode, common);
  auto* decode = eden->add_subcommand("decode", "Decode a bit string");
  decode->add_option("--d", ed.d, "Dimension")->required()->check(CLI::Range(1, 32));
  decode->add_option("--bits", ed.bits, "0/1 string of length (2d-1)n-d+1")->required();
  add_common(decode, common);
  auto* verify = eden->add_subcommand("verify", "Exhaustive round-trip, turn-bound and ijq checks");
  verify->add_option("--d", ed.d, "Dimension")->required()->check(CLI::Range(1, 32));
  verify->add_option("--n-max", ed.n_max, "Largest size")->required()->check(CLI::Range(1, 64));
  verify->add_option("--threads", ed.threads, "Worker threads")->check(CLI::Range(1, 1024));
  add_common(verify, common);

  BoundsArgs bo;
  auto* bounds_cmd = app.add_subcommand("bounds", "Growth-rate and threshold bounds");
  bounds_cmd->require_subcommand(1);
  auto* translate = bounds_cmd->add_subcommand("translate", "Convert between growth and threshold bounds");
  auto* from_growth = translate->add_option("--from-growth-upper", bo.growth_upper, "Upper bound on a growth rate");
  auto* from_pc = translate->add_option("--from-pc-upper", bo.pc_upper, "Upper bound on a percolation threshold");
  from_growth->excludes(from_pc);
  translate->add_option("--d", bo.d, "Dimension of Z^d")->check(CLI::Range(1, 1000000));
  translate->add_option("--lattice", bo.lattice, "Lattice name for non-hypercubic inputs");
  translate->add_option("--flavor", bo.flavor, "site | bond")->check(CLI::IsMember({"site", "bond"}));
  translate->add_option("--input-rigor", bo.input_rigor, "Rigor of the input bound")
      ->check(CLI::IsMember({"rigorous", "physics-reported", "monte-carlo", "estimate"}));
  translate->add_option("--decimals", bo.decimals, "Decimals for the conservative truncation")->check(CLI::Range(0, 15));
  add_common(translate, common);
  auto* lemma = bounds_cmd->add_subcommand("lemma", "Evaluate g_d(x)");
  lemma->add_option("--d", bo.d, "Dimension")->required()->check(CLI::Range(2, 1000000));
  lemma->add_option("--x", bo.x, "0 <= x <= 1")->required()->check(CLI::Range(0.0, 1.0));
  add_common(lemma, common);
  auto* expansion = bounds_cmd->add_subcommand("expansion", "Evaluate a 1/d expansion");
  expansion->add_option("--name", bo.name, "Expansion name (see --list)");
  expansion->add_option("--d", bo.d, "Dimension")->check(CLI::Range(2, 1000000));
  expansion->add_flag("--list", bo.list, "List the known expansions");
  add_common(expansion, common);
  auto* improved = bounds_cmd->add_subcommand("improved", "Improved upper bound and threshold lower bound");
  improved->add_option("--d", bo.d, "Dimension")->required()->check(CLI::Range(2, 1000000));
  improved->add_option("--C", bo.C, "Constant C")->check(CLI::PositiveNumber)->capture_default_str();
  improved->add_option("--decimals", bo.decimals, "Decimals for the conservative truncation")->check(CLI::Range(0, 15));
  add_common(improved, common);
  auto* crude = bounds_cmd->add_subcommand("crude", "Kesten-type upper bound f(2d-2)");
  crude->add_option("--d", bo.d, "Dimension")->required()->check(CLI::Range(2, 1000000));
  crude->add_option("--flavor", bo.flavor, "site | bond")->check(CLI::IsMember({"site", "bond"}));
  crude->add_option("--decimals", bo.decimals, "Decimals for the conservative truncation")->check(CLI::Range(0, 15));
  add_common(crude, common);

  PercArgs pa;
  auto* percolate = app.add_subcommand("percolate", "Monte Carlo percolation on {0..L-1}^d");
  percolate->add_option("--d", pa.cfg.d, "Dimension")->required()->check(CLI::Range(1, 26));
  percolate->add_option("--L", pa.cfg.L, "Box side")->required()->check(CLI::Range(2, 1 << 26));
  percolate->add_option("--flavor", pa.flavor, "site | bond")->check(CLI::IsMember({"site", "bond"}));
  percolate->add_option("--p", pa.cfg.p, "Open probability")->check(CLI::Range(0.0, 1.0));
  percolate->add_flag("--threshold", pa.threshold, "Bisect for crossing probability 1/2");
  percolate->add_option("--steps", pa.steps, "Bisection steps")->check(CLI::Range(1, 60));
  percolate->add_option("--tail", pa.tail, "Estimate P(|C| >= N) for the central cluster")->check(CLI::PositiveNumber);
  percolate->add_option("--trials", pa.cfg.trials, "Trials per estimate")->check(CLI::PositiveNumber);
  percolate->add_option("--seed", pa.cfg.seed, "RNG seed");
  percolate->add_option("--threads", pa.cfg.threads, "Worker threads")->check(CLI::Range(1, 1024));
  add_common(percolate, common);

  std::string cache_dir;
  auto* cache_cmd = app.add_subcommand("cache", "Inspect or clear the count cache");
  cache_cmd->require_subcommand(1);
  std::vector<CLI::App*> cache_actions;
  for (const char* action : {"path", "list", "clear"}) {
    auto* s = cache_cmd->add_subcommand(action, std::string("Cache ") + action);
    s->add_option("--cache-dir", cache_dir, "Cache directory (overrides $LATTICE_CACHE_DIR)");
    add_common(s, common);
    cache_actions.push_back(s);
  }

  std::vector<std::string> argv{"lattice-tool"};
  argv.insert(argv.end(), args.begin(), args.end());
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Runner runner(argv, out, err);
  try {
    if (enumerate->parsed()) return cmd_enumerate(runner, en, common);
    if (encode->parsed()) return cmd_eden_encode(runner, ed, common);
    if (decode->parsed()) return cmd_eden_decode(runner, ed, common);
    if (verify->parsed()) return cmd_eden_verify(runner, ed, common);
    if (translate->parsed()) return cmd_translate(runner, bo, common);
    if (lemma->parsed()) return cmd_lemma(runner, bo, common);
    if (expansion->parsed()) return cmd_expansion(runner, bo, common);
    if (improved->parsed()) return cmd_improved(runner, bo, common);
    if (crude->parsed()) return cmd_crude(runner, bo, common);
    if (percolate->parsed()) return cmd_percolate(runner, pa, common);
    for (auto* s : cache_actions)
      if (s->parsed()) return cmd_cache(runner, s->get_name(), cache_dir, common);
  } catch (const ResourceLimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kResource;
  } catch (const OracleCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kResource;
  } catch (const EdenDecodeError& e) {
    err << "error: decode failed at " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kViolations;
  }
  err << app.help();
  return kUsage;
}

}  // namespace lattice::cli
