// Command-line front end: validate, translate, analyze, diff.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <iostream>
#include <sstream>

#include "dftgspn/analysis.hpp"
#include "dftgspn/galileo.hpp"
#include "dftgspn/io.hpp"

using namespace dftgspn;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kSemantic = 1, kInput = 2, kResource = 3 };

struct Config {
  std::string input;
  std::string semantics = "gspn-new";
  std::string format = "summary";
  std::string output;
  std::string claim_mode;
  std::string goal;
  bool strict_unavail = false;
  bool force = false;
  bool json = false;
  double time = 1.0;
  std::size_t state_limit = kDefaultStateLimit;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

Dft load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  ParseResult parsed = parse_galileo(ss.str());
  for (const Diagnostic& d : parsed.warnings) std::cerr << "warning: " << format_diagnostic(d, path) << "\n";
  if (!parsed.dft) {
    std::string msg;
    for (const Diagnostic& d : parsed.errors) msg += format_diagnostic(d, path) + "\n";
    if (!msg.empty()) msg.pop_back();
    throw InputError(msg);
  }
  return std::move(*parsed.dft);
}

Profile profile_of(const Config& c) {
  auto p = parse_profile(c.semantics);
  if (!p) throw InputError("unknown semantics '" + c.semantics + "'");
  return *p;
}

TranslateOptions translate_options(const Config& c) {
  TranslateOptions o;
  o.strict_unavail = c.strict_unavail;
  o.ignore_profile_support = c.force;
  if (c.claim_mode == "early") {
    o.claim_mode = ClaimMode::Early;
  } else if (c.claim_mode == "late") {
    o.claim_mode = ClaimMode::LateLateFail;
  } else if (c.claim_mode == "late-early-fail") {
    o.claim_mode = ClaimMode::LateEarlyFail;
  } else if (!c.claim_mode.empty()) {
    throw InputError("unknown claim mode '" + c.claim_mode + "'");
  }
  return o;
}

void print_warnings(const ValidationReport& r, const Dft& dft) {
  if (r.warnings.empty()) return;
  ValidationReport w;
  w.warnings = r.warnings;
  std::cerr << w.to_string(&dft);
}

int cmd_validate(const Config& c, const Dft& dft) {
  const Profile profile = profile_of(c);
  ValidationReport report = validate_conventional(dft);
  report.append(check_profile_support(dft, profile));
  std::string cycle;
  PriorityConstraintSet cs = generate_priority_constraints(dft, profile);
  PrioritySolution sol = solve_priorities(cs);
  if (!sol.ok()) {
    cycle = describe_cycle(cs, sol.cycle);
    int first = -1;
    for (int v : sol.cycle)
      if (v < dft.size()) {
        first = v;
        break;
      }
    report.error(first, "priority-unsatisfiable", "no valid priority assignment: " + cycle);
  }
  if (c.json) {
    ordered_json j;
    j["semantics"] = profile_name(profile);
    j["ok"] = report.ok();
    auto issues = [&](const std::vector<Issue>& list) {
      ordered_json a = ordered_json::array();
      for (const Issue& i : list)
        a.push_back({{"rule", i.rule}, {"node", i.node >= 0 ? dft.node(i.node).name : ""}, {"message", i.message}});
      return a;
    };
    j["errors"] = issues(report.errors);
    j["warnings"] = issues(report.warnings);
    if (!cycle.empty()) j["priority_cycle"] = cycle;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << report.to_string(&dft);
    if (report.ok()) std::cout << "ok: " << dft.size() << " nodes, valid under " << profile_name(profile) << "\n";
  }
  return report.ok() ? kOk : kSemantic;
}

int cmd_translate(const Config& c, const Dft& dft) {
  Translation tr = translate(dft, profile_of(c), translate_options(c));
  print_warnings(tr.report, dft);
  const Gspn& net = tr.net;
  std::ostringstream summary;
  summary << "places=" << net.places.size() << " timed=" << net.count(TransitionKind::Timed)
          << " immediate=" << net.count(TransitionKind::Immediate) << "\n";

  std::string body;
  if (c.format == "summary") {
    if (c.json) {
      ordered_json j{{"places", net.places.size()},
                     {"timed", net.count(TransitionKind::Timed)},
                     {"immediate", net.count(TransitionKind::Immediate)},
                     {"partitions", net.partitions()}};
      body = j.dump(2) + "\n";
    } else {
      body = summary.str();
    }
  } else if (c.format == "pnml") {
    body = export_pnml(net);
  } else if (c.format == "dot") {
    body = export_dot(net);
  } else if (c.format == "text") {
    body = export_text(net);
  } else if (c.format == "marking-graph-dot") {
    body = export_marking_graph_dot(net, build_marking_graph(net, c.state_limit));
  } else {
    throw InputError("unknown format '" + c.format + "'");
  }
  if (c.output.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(c.output, std::ios::binary);
    if (!out) throw InputError("cannot write " + c.output);
    out << body;
    if (c.format != "summary") std::cout << summary.str();
  }
  return kOk;
}

ordered_json result_json(const AnalysisResult& r, double time) {
  ordered_json j{{"semantics", profile_name(r.profile)},
                 {"places", r.places},
                 {"timed", r.timed},
                 {"immediate", r.immediate},
                 {"states", r.states},
                 {"vanishing", r.vanishing},
                 {"deterministic", r.deterministic},
                 {"confluent", r.confluent},
                 {"reach_min", r.reach.min},
                 {"reach_max", r.reach.max}};
  if (r.unreliability) {
    j["time"] = time;
    j["unreliability"] = *r.unreliability;
  }
  return j;
}

int cmd_analyze(const Config& c, const Dft& dft) {
  AnalysisOptions o;
  o.translate = translate_options(c);
  o.goal = c.goal;
  o.time = c.time;
  o.state_limit = c.state_limit;
  AnalysisResult r = analyze(dft, profile_of(c), o);
  print_warnings(r.report, dft);
  if (c.json) {
    std::cout << result_json(r, c.time).dump(2) << "\n";
    return kOk;
  }
  std::cout << "semantics=" << profile_name(r.profile) << " states=" << r.states << " vanishing=" << r.vanishing
            << "\n";
  if (r.confluent) {
    std::cout << "reach p=" << num(r.reach.min) << "\n";
    std::cout << "unreliability t=" << num(c.time) << " p=" << num(*r.unreliability) << "\n";
  } else {
    std::cout << "reach min=" << num(r.reach.min) << " max=" << num(r.reach.max) << "\n";
    std::cout << "unreliability: not computed (nondeterminism affects the outcome)\n";
  }
  return kOk;
}

int cmd_diff(const Config& c, const Dft& dft) {
  AnalysisOptions o;
  o.translate = translate_options(c);
  o.goal = c.goal;
  o.time = c.time;
  o.state_limit = c.state_limit;
  ordered_json rows = ordered_json::array();
  std::ostringstream table;
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %-9s %-14s %-14s %s\n", "semantics", "supported", "reach-min",
                "reach-max", "deterministic");
  table << line;
  for (Profile p : kAllProfiles) {
    ordered_json row{{"semantics", profile_name(p)}};
    std::string reason;
    try {
      AnalysisResult r = analyze(dft, p, o);
      row = result_json(r, c.time);
      row["supported"] = true;
      std::snprintf(line, sizeof line, "%-16s %-9s %-14s %-14s %s\n", profile_name(p), "yes", num(r.reach.min).c_str(),
                    num(r.reach.max).c_str(), r.deterministic ? "yes" : "no");
      table << line;
    } catch (const TranslationError& e) {
      reason = e.report.errors.empty() ? e.what() : e.report.errors.front().message;
    } catch (const AnalysisError& e) {
      reason = e.what();
    }
    if (!reason.empty()) {
      row["supported"] = false;
      row["reason"] = reason;
      std::snprintf(line, sizeof line, "%-16s %-9s ", profile_name(p), "no");
      table << line << reason << "\n";
    }
    rows.push_back(row);
  }
  if (c.json) {
    std::cout << rows.dump(2) << "\n";
  } else {
    std::cout << table.str();
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Translate dynamic fault trees into generalised stochastic Petri nets"};
  app.require_subcommand(1, 1);
  Config c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("input", c.input, "Galileo DFT file")->required();
    sub->add_option("--semantics", c.semantics,
                    "monolithic-ctmc | ioimc | monolithic-ma | gspn-orig | gspn-new");
  };
  auto translating = [&](CLI::App* sub) {
    sub->add_flag("--strict-1-bounded-unavail", c.strict_unavail, "Keep Unavail places 1-bounded");
    sub->add_option("--claim-mode", c.claim_mode, "early | late | late-early-fail");
    sub->add_flag("--force", c.force, "Translate even if the semantics lacks a feature the DFT uses");
    sub->add_option("--state-limit", c.state_limit, "Maximum number of markings to explore");
  };

  CLI::App* validate = app.add_subcommand("validate", "Check well-formedness, restrictions and priorities");
  common(validate);
  validate->add_flag("--json", c.json, "Machine-readable report");

  CLI::App* tr = app.add_subcommand("translate", "Translate to a GSPN");
  common(tr);
  translating(tr);
  tr->add_option("--format", c.format, "summary | text | pnml | dot | marking-graph-dot");
  tr->add_option("-o,--output", c.output, "Output file (default: standard output)");
  tr->add_flag("--json", c.json, "Machine-readable summary");

  CLI::App* an = app.add_subcommand("analyze", "Reachability of the goal and unreliability");
  common(an);
  translating(an);
  an->add_option("--time", c.time, "Mission time");
  an->add_option("--goal", c.goal, "Goal node (default: top)");
  an->add_flag("--json", c.json, "Machine-readable report");

  CLI::App* diff = app.add_subcommand("diff", "Compare all five semantics on one DFT");
  diff->add_option("input", c.input, "Galileo DFT file")->required();
  translating(diff);
  diff->add_option("--time", c.time, "Mission time");
  diff->add_option("--goal", c.goal, "Goal node (default: top)");
  diff->add_flag("--json", c.json, "Machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  std::optional<Dft> dft;
  try {
    dft = load(c.input);
    if (validate->parsed()) return cmd_validate(c, *dft);
    if (tr->parsed()) return cmd_translate(c, *dft);
    if (an->parsed()) return cmd_analyze(c, *dft);
    if (diff->parsed()) return cmd_diff(c, *dft);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const TranslationError& e) {
    std::cerr << "error: " << e.what() << "\n" << e.report.to_string(dft ? &*dft : nullptr);
    return kSemantic;
  } catch (const AnalysisError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSemantic;
  } catch (const ResourceLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  }
  return kOk;
}
