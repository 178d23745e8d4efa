// fbr: command-line front end for the friend-based ranking library.
//
// Exit codes: 0 success, 1 violation found, 2 usage or input error.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fbr/catalog.hpp"
#include "fbr/csp.hpp"
#include "fbr/edge_list.hpp"
#include "fbr/enumerate.hpp"
#include "fbr/graph.hpp"
#include "fbr/homophily.hpp"
#include "fbr/mechanism.hpp"
#include "fbr/netstats.hpp"
#include "fbr/rng.hpp"
#include "fbr/serialize.hpp"
#include "fbr/verify.hpp"

using namespace fbr;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::vector<std::string> inputs;
  std::string graph_name;
  std::vector<std::string> graph_names;  // analyze: repeatable --graph
  std::uint64_t seed = 1;
  std::uint64_t trials = 0;
  std::string format;
  int jobs = 1;
  bool override_feasibility = false;
  std::string out;
};

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(const Config& cfg, const Json& doc) {
  Sink sink(cfg.out);
  sink.stream() << doc.dump(2) << '\n';
}

LabelledGraph builtin(const std::string& name) {
  Graph g = named_graph(name);
  std::vector<std::string> labels;
  for (Agent a = 0; a < g.size(); ++a) labels.push_back(std::to_string(a));
  return {std::move(g), std::move(labels)};
}

// The single network selected by --input or --graph.
LabelledGraph single_network(const Config& cfg) {
  if (!cfg.graph_name.empty() && !cfg.inputs.empty()) throw UsageError("give either --input or --graph, not both");
  if (!cfg.graph_name.empty()) return builtin(cfg.graph_name);
  if (cfg.inputs.size() != 1) throw UsageError("exactly one --input (or --graph) is required");
  return load_edge_list(cfg.inputs.front());
}

std::string network_name(const Config& cfg) { return cfg.graph_name.empty() ? cfg.inputs.front() : cfg.graph_name; }

Agent agent_of(const LabelledGraph& lg, const std::string& token) {
  auto it = std::find(lg.labels.begin(), lg.labels.end(), token);
  if (it == lg.labels.end()) throw UsageError("unknown agent label '" + token + "'");
  return static_cast<Agent>(it - lg.labels.begin());
}

Json pair_json(const LabelledGraph& lg, AgentPair p) { return Json::array({lg.labels[p.first], lg.labels[p.second]}); }

Json graph_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.first, e.second});
  return {{"n", g.size()}, {"edges", std::move(edges)}};
}

template <typename T>
T parse_number(const std::string& text, const char* what) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw UsageError(std::string("bad ") + what + " '" + text + "'");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

// Positions 1..n, one per agent, separated by commas or whitespace.
CharacteristicProfile parse_theta(const std::string& text, int n) {
  std::string flat = text;
  std::replace(flat.begin(), flat.end(), ',', ' ');
  std::istringstream in(flat);
  std::vector<int> pos;
  for (std::string tok; in >> tok;) pos.push_back(parse_number<int>(tok, "theta position"));
  if (static_cast<int>(pos.size()) != n)
    throw UsageError("theta lists " + std::to_string(pos.size()) + " positions for " + std::to_string(n) + " agents");
  try {
    return CharacteristicProfile(std::move(pos));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("theta: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CharacteristicProfile random_theta(int n, std::uint64_t seed) {
  std::vector<int> pos(n);
  std::iota(pos.begin(), pos.end(), 1);
  Rng rng(seed);
  rng.shuffle(pos);
  return CharacteristicProfile(std::move(pos));
}

// ---------------------------------------------------------------- analyze

struct Analysis {
  std::string name;
  LabelledGraph network;
  NetworkSummary summary;
  InformationDecomposition decomposition;
  std::uint64_t observations = 0;
  std::uint64_t repeated = 0;
};

Analysis analyze_one(std::string name, LabelledGraph lg) {
  Analysis a{std::move(name), std::move(lg), {}, {}, 0, 0};
  a.summary = summarize(a.network.graph);
  const Graph giant = giant_component(a.network.graph).graph;
  a.decomposition = decompose_information(giant);
  a.observations = comparison_observations(giant);
  a.repeated = repeated_observation_count(giant);
  return a;
}

int cmd_analyze(const Config& cfg, bool with_labels) {
  std::vector<std::pair<std::string, std::function<LabelledGraph()>>> sources;
  for (const auto& name : cfg.graph_names) sources.emplace_back(name, [name] { return builtin(name); });
  for (const auto& path : cfg.inputs) sources.emplace_back(path, [path] { return load_edge_list(path); });
  if (sources.empty()) throw UsageError("analyze needs --input or --graph");

  // Inputs are independent; results are printed in input order.
  std::vector<std::optional<Analysis>> results(sources.size());
  std::vector<std::string> errors(sources.size());
  parallel_chunks(
      sources.size(), static_cast<int>(sources.size()),
      [&](int, std::uint64_t begin, std::uint64_t end) {
        for (auto s = begin; s < end; ++s) {
          try {
            results[s] = analyze_one(sources[s].first, sources[s].second());
          } catch (const std::exception& e) {
            errors[s] = sources[s].first + ": " + e.what();
          }
        }
      },
      cfg.jobs);
  for (const auto& e : errors)
    if (!e.empty()) throw UsageError(e);

  Sink sink(cfg.out);
  auto& out = sink.stream();
  const std::string format = cfg.format.empty() ? "json" : cfg.format;
  if (format == "csv") {
    out << "# seed=" << cfg.seed << '\n' << summary_csv_header() << '\n';
    for (const auto& r : results) out << summary_csv_row(r->name, r->summary, r->decomposition, r->repeated) << '\n';
  } else if (format == "text") {
    for (const auto& r : results) {
      const auto& s = r->summary;
      out << "network " << r->name << '\n'
          << "  households          " << s.households << '\n'
          << "  giant share         " << s.giant_share << '\n'
          << "  average degree      " << s.average_degree << '\n'
          << "  density             " << s.density << '\n'
          << "  average clustering  " << s.average_clustering << '\n'
          << "  average distance    " << s.average_distance << '\n'
          << "  information         " << s.information << '\n'
          << "  transitivity        " << s.transitivity << '\n'
          << "  comparisons         " << r->decomposition.total << " unique, " << r->observations
          << " observed, " << r->repeated << " repeated\n"
          << "  within/across/rest  " << r->decomposition.within << " / " << r->decomposition.across << " / "
          << r->decomposition.remainder << '\n';
    }
  } else if (format == "json") {
    Json networks = Json::array();
    for (const auto& r : results) {
      Json item = {{"network", r->name},
                   {"summary", to_json(r->summary)},
                   {"decomposition", to_json(r->decomposition)},
                   {"observations", r->observations},
                   {"repeated", r->repeated}};
      if (with_labels) item["labels"] = r->network.labels;
      networks.push_back(std::move(item));
    }
    out << Json{{"command", "analyze"}, {"seed", cfg.seed}, {"networks", std::move(networks)}}.dump(2) << '\n';
  } else {
    throw UsageError("analyze supports --format json, csv or text");
  }
  return 0;
}

// ------------------------------------------------------------------ check

Json check_json(const LabelledGraph& lg, const PairCheck& c) {
  return {{"holds", c.holds}, {"failing", c.failing ? pair_json(lg, *c.failing) : Json(nullptr)}};
}

int cmd_check(const Config& cfg) {
  const auto lg = single_network(cfg);
  const Graph& g = lg.graph;
  const bool connected = is_connected(g);
  const auto informative = is_completely_informative(g);
  const auto pairs = all_pairs_supported(g);
  const auto links = all_links_supported(g);

  Json bip = nullptr;
  bool bipartite = false;
  if (connected) {
    const auto b = is_bipartite(g);
    bipartite = b.bipartite;
    if (b.bipartite) {
      Json pa = Json::array(), pb = Json::array();
      for (Agent a : b.part_a) pa.push_back(lg.labels[a]);
      for (Agent a : b.part_b) pb.push_back(lg.labels[a]);
      bip = {{"holds", true}, {"part_a", pa}, {"part_b", pb}};
    } else {
      bip = {{"holds", false}, {"odd_edge", pair_json(lg, *b.odd_edge)}};
    }
  }

  std::vector<std::string> verdict;
  if (!connected) verdict.push_back("network is disconnected");
  if (links.holds) {
    verdict.push_back("IC+efficient mechanism exists");
  } else {
    const auto p = *links.failing;
    verdict.push_back("no IC+efficient mechanism; unsupported link (" + lg.labels[p.first] + "," +
                      lg.labels[p.second] + ")");
    if (informative.holds) verdict.push_back("coarse mechanism available");
  }
  if (bipartite) verdict.push_back("bipartite; two-sided mechanism available");

  const std::string format = cfg.format.empty() ? "json" : cfg.format;
  if (format == "text") {
    Sink sink(cfg.out);
    auto& out = sink.stream();
    auto line = [&](const char* name, const PairCheck& c) {
      out << name << (c.holds ? "yes" : "no");
      if (c.failing) out << " (" << lg.labels[c.failing->first] << "," << lg.labels[c.failing->second] << ")";
      out << '\n';
    };
    out << "connected              " << (connected ? "yes" : "no") << '\n';
    line("completely informative ", informative);
    line("all pairs supported    ", pairs);
    line("all links supported    ", links);
    out << "bipartite              " << (!connected ? "n/a" : bipartite ? "yes" : "no") << '\n';
    for (const auto& v : verdict) out << v << '\n';
    return 0;
  }
  if (format != "json") throw UsageError("check supports --format json or text");

  std::string joined;
  for (const auto& v : verdict) joined += (joined.empty() ? "" : "; ") + v;
  emit_json(cfg, {{"command", "check"},
                  {"seed", cfg.seed},
                  {"network", network_name(cfg)},
                  {"graph", graph_json(g)},
                  {"labels", lg.labels},
                  {"connected", connected},
                  {"completely_informative", check_json(lg, informative)},
                  {"all_pairs_supported", check_json(lg, pairs)},
                  {"all_links_supported", check_json(lg, links)},
                  {"bipartite", bip},
                  {"mechanisms",
                   {{"standard", connected && links.holds},
                    {"coarse", connected && informative.holds},
                    {"bipartite", bipartite}}},
                  {"verdict", joined}});
  return 0;
}

// -------------------------------------------------------------- mechanism

struct MechanismArgs {
  std::string kind = "standard";
  std::string theta;
  std::string theta_file;
  std::string reports_file;
  std::vector<std::string> deviations;
};

struct ScriptedReport {
  Agent agent;
  Agent above;
  Agent below;
};

// "AGENT:J>K": AGENT reports J above K.
ScriptedReport parse_deviation(const LabelledGraph& lg, const std::string& spec) {
  const auto colon = spec.find(':');
  const auto gt = spec.find('>', colon == std::string::npos ? 0 : colon);
  if (colon == std::string::npos || gt == std::string::npos)
    throw UsageError("deviation '" + spec + "' is not of the form AGENT:J>K");
  ScriptedReport r{agent_of(lg, trim(spec.substr(0, colon))), agent_of(lg, trim(spec.substr(colon + 1, gt - colon - 1))),
                   agent_of(lg, trim(spec.substr(gt + 1)))};
  if (r.above == r.below) throw UsageError("deviation '" + spec + "' compares an agent with itself");
  return r;
}

Json ranking_json(MechanismKind kind, const ReportProfile& reports, MechanismOptions options) {
  switch (kind) {
    case MechanismKind::standard: {
      auto outcome = run_mechanism(reports, options);
      return {{"ranking", to_json(outcome.ranking)}, {"trace", to_json(outcome.trace)}};
    }
    case MechanismKind::coarse:
      return {{"ranking", to_json(run_coarse_mechanism(reports, options))}};
    case MechanismKind::bipartite:
      return {{"ranking", to_json(run_bipartite_mechanism(reports))}};
    case MechanismKind::naive:
      return {{"ranking", to_json(run_naive_efficient(reports))}};
    case MechanismKind::index:
      return {{"ranking", to_json(run_index_only(reports))}};
  }
  return nullptr;
}

Json infeasible_json(const LabelledGraph& lg, const InfeasibleError& e) {
  return {{"error", e.what()}, {"witness", pair_json(lg, e.witness())}};
}

int cmd_mechanism(const Config& cfg, const MechanismArgs& args) {
  const auto lg = single_network(cfg);
  const Graph& g = lg.graph;
  const int n = g.size();
  const MechanismKind kind = parse_mechanism_kind(args.kind);

  if (!cfg.override_feasibility) {
    try {
      check_precondition(g, kind);
    } catch (const InfeasibleError& e) {
      std::cerr << "fbr: " << e.what() << " (witness " << lg.labels[e.witness().first] << ","
                << lg.labels[e.witness().second] << "); rerun with --override-feasibility to proceed\n";
      emit_json(cfg, {{"command", "mechanism"}, {"seed", cfg.seed}, {"kind", args.kind}, {"infeasible", infeasible_json(lg, e)}});
      return kExitUsage;
    }
  }
  MechanismOptions options;
  options.enforce_precondition = !cfg.override_feasibility;

  std::optional<CharacteristicProfile> theta;
  std::string source;
  if (!args.theta.empty() && !args.theta_file.empty()) throw UsageError("give either --theta or --theta-file");
  if (!args.theta.empty()) {
    theta = parse_theta(args.theta, n);
    source = "inline";
  } else if (!args.theta_file.empty()) {
    const std::string text = read_file(args.theta_file);
    const auto doc = Json::parse(text, nullptr, false);
    if (!doc.is_discarded() && doc.is_array()) {
      std::string flat;
      for (const auto& v : doc) flat += std::to_string(v.get<int>()) + " ";
      theta = parse_theta(flat, n);
    } else {
      theta = parse_theta(text, n);
    }
    source = "file";
  } else if (args.reports_file.empty()) {
    theta = random_theta(n, cfg.seed);
    source = "seed";
  }

  auto obs = std::make_shared<const Observability>(g);
  std::optional<ReportProfile> baseline;
  if (!args.reports_file.empty()) {
    const auto doc = Json::parse(read_file(args.reports_file), nullptr, false);
    if (doc.is_discarded()) throw UsageError(args.reports_file + ": not valid JSON");
    try {
      baseline = reports_from_json(doc, obs);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(args.reports_file + ": " + e.what());
    }
  } else {
    baseline = truthful_reports(obs, *theta);
  }

  ReportProfile reports = *baseline;
  Json scripted = Json::array();
  std::vector<char> deviator(n, 0);
  for (const auto& spec : args.deviations) {
    const auto d = parse_deviation(lg, spec);
    const AgentPair p = AgentPair::of(d.above, d.below);
    if (obs->slot(d.agent, p) < 0)
      throw UsageError("agent " + lg.labels[d.agent] + " does not observe pair (" + lg.labels[p.first] + "," +
                       lg.labels[p.second] + ")");
    reports.set(d.agent, p, d.above == p.first ? Sign{1} : Sign{-1});
    deviator[d.agent] = 1;
    scripted.push_back({{"agent", lg.labels[d.agent]}, {"above", lg.labels[d.above]}, {"below", lg.labels[d.below]}});
  }

  Json doc = {{"command", "mechanism"}, {"seed", cfg.seed}, {"kind", args.kind}, {"network", network_name(cfg)},
              {"graph", graph_json(g)}, {"labels", lg.labels}};
  doc["theta"] = theta ? to_json(*theta) : Json(nullptr);
  doc["theta_source"] = source.empty() ? Json(nullptr) : Json(source);
  doc["override_feasibility"] = cfg.override_feasibility;
  doc["deviations"] = scripted;
  doc["reports"] = to_json(reports);
  doc["outcome"] = ranking_json(kind, reports, options);

  if (!args.deviations.empty()) {
    // Compare each deviator's payoff with the unscripted baseline.
    doc["baseline"] = ranking_json(kind, *baseline, options);
    const auto before = evaluate(kind, *baseline, options).payoff;
    const auto after = evaluate(kind, reports, options).payoff;
    Json gains = Json::array();
    for (Agent a = 0; a < n; ++a)
      if (deviator[a])
        gains.push_back({{"agent", lg.labels[a]},
                         {"before", before[a]},
                         {"after", after[a]},
                         {"verdict", after[a] > before[a] ? "strict-gain" : "no-gain"}});
    doc["gains"] = gains;
  }
  emit_json(cfg, doc);
  return 0;
}

// ----------------------------------------------------------------- verify

struct VerifyArgs {
  std::string mode = "ic";
  std::string kind = "standard";
  std::uint64_t samples = 0;
  bool list_all = false;
  int coalition = 2;
  std::string theta;
  std::string pins = "all";
};

EfficiencyPins parse_pins(const std::string& name) {
  if (name == "all") return EfficiencyPins::all_truthful;
  if (name == "none") return EfficiencyPins::none;
  if (name == "two-profile") return EfficiencyPins::two_profiles;
  throw UsageError("unknown --pins '" + name + "' (all, none, two-profile)");
}

int cmd_verify(const Config& cfg, const VerifyArgs& args) {
  const std::string format = cfg.format.empty() ? "json" : cfg.format;
  if (format != "json" && format != "text") throw UsageError("verify supports --format json or text");

  Json doc = {{"command", "verify"}, {"mode", args.mode}, {"seed", cfg.seed}};
  std::size_t violations = 0;

  if (args.mode == "sp-triangle") {
    const auto pins = parse_pins(args.pins);
    const auto reduced = solve_reduced_triangle(pins);
    const auto direct = solve_direct_triangle(pins);
    const bool reduced_ok = !reduced.satisfiable || check_reduced_witness(reduced.table, pins);
    const bool direct_ok = !direct.satisfiable || check_direct_witness(direct.table, pins);
    if (!reduced_ok || !direct_ok) throw std::logic_error("solver returned an invalid witness");
    doc["pins"] = args.pins;
    Json found = Json::array();
    // With efficiency pins a satisfying table would be a strategy-proof,
    // efficient mechanism on the triangle.
    if (pins != EfficiencyPins::none) {
      if (reduced.satisfiable) found.push_back({{"model", "reduced"}});
      if (direct.satisfiable) found.push_back({{"model", "direct"}});
    }
    violations = found.size();
    doc["checked"] = {{"models", 2}};
    doc["violations"] = found;
    doc["certificate"] = to_json(reduced.certificate);
    doc["models"] = {{"reduced", {{"satisfiable", reduced.satisfiable}, {"certificate", to_json(reduced.certificate)}}},
                     {"direct", {{"satisfiable", direct.satisfiable}, {"certificate", to_json(direct.certificate)}}}};
  } else {
    const auto lg = single_network(cfg);
    const Graph& g = lg.graph;
    const MechanismKind kind = parse_mechanism_kind(args.kind);
    VerifyOptions options;
    options.list_all = args.list_all;
    options.enforce_precondition = !cfg.override_feasibility;
    if (args.samples > 0) options.samples = args.samples;
    options.seed = cfg.seed;
    options.jobs = cfg.jobs;
    if (!args.theta.empty()) options.theta = parse_theta(args.theta, g.size());
    doc["kind"] = args.kind;
    doc["network"] = network_name(cfg);
    doc["graph"] = graph_json(g);
    if (options.samples) doc["samples"] = *options.samples;

    Json report;
    try {
      if (args.mode == "ic") {
        const auto r = check_ex_post_ic(g, kind, options);
        violations = r.violations.size();
        report = verifier_report(r);
      } else if (args.mode == "efficiency") {
        const auto r = check_ex_post_efficiency(g, kind, options);
        violations = r.violations.size();
        report = verifier_report(r);
      } else if (args.mode == "group") {
        doc["coalition"] = args.coalition;
        const auto r = find_group_deviation(g, kind, args.coalition, options);
        violations = r.violations.size();
        report = verifier_report(r);
      } else {
        throw UsageError("unknown --mode '" + args.mode + "' (ic, efficiency, group, sp-triangle)");
      }
    } catch (const InfeasibleError& e) {
      std::cerr << "fbr: " << e.what() << " (witness " << lg.labels[e.witness().first] << ","
                << lg.labels[e.witness().second] << "); rerun with --override-feasibility to proceed\n";
      return kExitUsage;
    }
    for (const auto& [key, value] : report.items()) doc[key] = value;
  }

  if (format == "text") {
    Sink sink(cfg.out);
    auto& out = sink.stream();
    out << "mode " << args.mode << ", seed " << cfg.seed << '\n';
    for (const auto& [key, value] : doc["checked"].items()) out << "checked " << key << ": " << value << '\n';
    if (doc.contains("models"))
      for (const auto& [name, m] : doc["models"].items())
        out << name << " model: " << (m["satisfiable"].get<bool>() ? "SAT" : "UNSAT") << ", "
            << m["certificate"]["nodes"] << " nodes, depth " << m["certificate"]["depth"] << '\n';
    out << "violations: " << violations << '\n';
    for (const auto& v : doc["violations"]) out << "  " << v.dump() << '\n';
  } else {
    emit_json(cfg, doc);
  }
  return violations > 0 ? kExitViolation : 0;
}

// -------------------------------------------------------------- homophily

struct HomophilyArgs {
  double p = 0.15;
  int n = 200;
  std::string grid = "0:0.1485:34";
};

std::vector<double> parse_grid(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw UsageError("--eta-grid must be lo:hi:points or a comma list");
    return linear_grid(parse_number<double>(trim(parts[0]), "eta"), parse_number<double>(trim(parts[1]), "eta"),
                       parse_number<int>(trim(parts[2]), "grid size"));
  }
  std::vector<double> etas;
  for (const auto& tok : split(text, ',')) etas.push_back(parse_number<double>(trim(tok), "eta"));
  if (etas.empty()) throw UsageError("--eta-grid is empty");
  return etas;
}

int cmd_homophily(const Config& cfg, const HomophilyArgs& args) {
  const auto etas = parse_grid(args.grid);
  const auto rows = homophily_curve(args.p, args.n, etas, cfg.trials, cfg.seed, cfg.jobs);
  const std::string format = cfg.format.empty() ? "csv" : cfg.format;
  Sink sink(cfg.out);
  auto& out = sink.stream();
  if (format == "csv") {
    out << "# seed=" << cfg.seed << " p=" << args.p << " n=" << args.n << " trials=" << cfg.trials << '\n'
        << curve_csv(rows);
  } else if (format == "json") {
    Json list = Json::array();
    for (const auto& r : rows) {
      Json row = {{"eta", r.eta}, {"p_w", r.probabilities.p_within}, {"p_a", r.probabilities.p_across},
                  {"pr_closed", r.pr_closed}};
      row["mc"] = r.mc ? to_json(*r.mc) : Json(nullptr);
      list.push_back(std::move(row));
    }
    out << Json{{"command", "homophily"}, {"seed", cfg.seed}, {"p", args.p}, {"n", args.n}, {"trials", cfg.trials},
                {"rows", std::move(list)}}
               .dump(2)
        << '\n';
  } else {
    throw UsageError("homophily supports --format csv or json");
  }
  return 0;
}

// --------------------------------------------------------------- windmill

int cmd_windmill(const Config& cfg, int n) {
  if (n < 3) throw UsageError("windmill needs --n >= 3");
  Sink sink(cfg.out);
  write_edge_list(sink.stream(), windmill(n));
  return 0;
}

void add_common(CLI::App* sub, Config& cfg, bool network, bool multiple_inputs = false) {
  if (network) {
    if (multiple_inputs)
      sub->add_option("-i,--input", cfg.inputs, "Edge-list file (repeat for a batch)");
    else
      sub->add_option("-i,--input", cfg.inputs, "Edge-list file")->expected(1);
    std::string names;
    for (const auto& h : named_graph_help()) names += (names.empty() ? "" : ", ") + h;
    if (multiple_inputs)
      sub->add_option("-g,--graph", cfg.graph_names, "Built-in network (repeatable, listed before files): " + names);
    else
      sub->add_option("-g,--graph", cfg.graph_name, "Built-in network instead of a file: " + names);
  }
  sub->add_option("--seed", cfg.seed, "Random seed, echoed in the output")->capture_default_str();
  sub->add_option("--jobs", cfg.jobs, "Worker threads; results do not depend on it")
      ->capture_default_str()
      ->check(CLI::Range(1, 256));
  sub->add_option("-o,--out", cfg.out, "Output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Friend-based ranking: feasibility checks, the ranking mechanism, incentive verification and "
               "network statistics.\nExit codes: 0 success, 1 violation found, 2 usage or input error."};
  app.name("fbr");
  app.require_subcommand(1);
  Config cfg;

  auto* analyze = app.add_subcommand("analyze", "Network summary and comparison decomposition of edge lists");
  add_common(analyze, cfg, true, true);
  bool with_labels = false;
  analyze->add_option("--format", cfg.format, "json (default), csv or text");
  analyze->add_flag("--labels", with_labels, "Include agent labels in JSON output");

  auto* check = app.add_subcommand("check", "Graph conditions for truthful, efficient ranking");
  add_common(check, cfg, true);
  check->add_option("--format", cfg.format, "json (default) or text");

  MechanismArgs margs;
  auto* mech = app.add_subcommand("mechanism", "Run a ranking mechanism and print its trace");
  add_common(mech, cfg, true);
  mech->add_option("--kind", margs.kind, "standard, bipartite, coarse, naive or index")->capture_default_str();
  mech->add_option("--theta", margs.theta, "Characteristic positions 1..n per agent, e.g. 2,3,1,4");
  mech->add_option("--theta-file", margs.theta_file, "File with the positions (JSON array or whitespace separated)");
  mech->add_option("--reports", margs.reports_file, "JSON report profile to run instead of truthful reports");
  mech->add_option("--deviate", margs.deviations, "Scripted report AGENT:J>K (repeatable)");
  mech->add_flag("--override-feasibility", cfg.override_feasibility, "Run even when the graph condition fails");

  VerifyArgs vargs;
  auto* verify = app.add_subcommand("verify", "Search for incentive or efficiency violations");
  add_common(verify, cfg, true);
  verify->add_option("--mode", vargs.mode, "ic, efficiency, group or sp-triangle")->capture_default_str();
  verify->add_option("--kind", vargs.kind, "Mechanism: standard, bipartite, coarse, naive or index")
      ->capture_default_str();
  verify->add_option("--samples", vargs.samples, "Sampled instead of exhaustive search (0 = exhaustive)");
  verify->add_flag("--list-all", vargs.list_all, "Report every violation instead of the first");
  verify->add_option("--coalition", vargs.coalition, "Largest coalition for --mode group")
      ->capture_default_str()
      ->check(CLI::Range(1, 16));
  verify->add_option("--theta", vargs.theta, "Restrict to one characteristic profile");
  verify->add_option("--pins", vargs.pins, "sp-triangle efficiency pins: all, none or two-profile")
      ->capture_default_str();
  verify->add_option("--format", cfg.format, "json (default) or text");
  verify->add_flag("--override-feasibility", cfg.override_feasibility, "Skip the mechanism's graph condition");

  HomophilyArgs hargs;
  auto* homophily = app.add_subcommand("homophily", "Probability of a complete ranking under homophily");
  add_common(homophily, cfg, false);
  homophily->add_option("--p", hargs.p, "Base link probability")->capture_default_str();
  homophily->add_option("--n", hargs.n, "Population size (even)")->capture_default_str();
  homophily->add_option("--eta-grid", hargs.grid, "lo:hi:points or a comma-separated list")->capture_default_str();
  homophily->add_option("--trials", cfg.trials, "Monte Carlo trials per grid point (0 = closed form only)")
      ->capture_default_str();
  homophily->add_option("--format", cfg.format, "csv (default) or json");

  int windmill_n = 0;
  auto* wind = app.add_subcommand("windmill", "Edge list of the windmill network on n nodes");
  wind->add_option("--n", windmill_n, "Number of nodes (>= 3)")->required();
  wind->add_option("-o,--out", cfg.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(cfg, with_labels);
    if (check->parsed()) return cmd_check(cfg);
    if (mech->parsed()) return cmd_mechanism(cfg, margs);
    if (verify->parsed()) return cmd_verify(cfg, vargs);
    if (homophily->parsed()) return cmd_homophily(cfg, hargs);
    if (wind->parsed()) return cmd_windmill(cfg, windmill_n);
  } catch (const std::exception& e) {
    std::cerr << "fbr: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
