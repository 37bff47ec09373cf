#include "dftgspn/dft.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace dftgspn {

NodeType NodeType::be(double active_rate, double passive_rate) {
  NodeType t;
  t.kind = Kind::BE;
  t.active_rate = active_rate;
  t.passive_rate = passive_rate;
  return t;
}

NodeType NodeType::gate(Kind kind) {
  NodeType t;
  t.kind = kind;
  return t;
}

NodeType NodeType::vot(int k) {
  NodeType t = gate(Kind::VOT);
  t.k = k;
  return t;
}

NodeType NodeType::pand(bool inclusive) {
  NodeType t = gate(Kind::PAND);
  t.inclusive = inclusive;
  return t;
}

NodeType NodeType::por(bool inclusive) {
  NodeType t = gate(Kind::POR);
  t.inclusive = inclusive;
  return t;
}

NodeType NodeType::spare(ClaimOrder order, std::optional<ClaimMode> mode) {
  NodeType t = gate(Kind::SPARE);
  t.claim_order = order;
  t.claim_mode = mode;
  return t;
}

NodeType NodeType::pdep(double p) {
  NodeType t = gate(Kind::PDEP);
  t.probability = p;
  return t;
}

const char* kind_name(Kind kind) {
  switch (kind) {
    case Kind::BE: return "BE";
    case Kind::AND: return "AND";
    case Kind::OR: return "OR";
    case Kind::VOT: return "VOT";
    case Kind::PAND: return "PAND";
    case Kind::POR: return "POR";
    case Kind::SPARE: return "SPARE";
    case Kind::FDEP: return "FDEP";
    case Kind::PDEP: return "PDEP";
    case Kind::SEQ: return "SEQ";
    case Kind::MUTEX: return "MUTEX";
  }
  return "?";
}

bool is_dependency(Kind kind) { return kind == Kind::FDEP || kind == Kind::PDEP; }
bool is_restrictor(Kind kind) { return kind == Kind::SEQ || kind == Kind::MUTEX; }
bool can_fail(Kind kind) { return !is_dependency(kind) && !is_restrictor(kind); }

std::optional<int> Dft::find(const std::string& name) const {
  for (const Node& n : nodes)
    if (n.name == name) return n.id;
  return std::nullopt;
}

std::vector<std::vector<int>> Dft::parents() const {
  std::vector<std::vector<int>> result(nodes.size());
  for (const Node& n : nodes)
    for (int c : n.children)
      if (result[c].empty() || result[c].back() != n.id) result[c].push_back(n.id);
  return result;
}

int Dft::max_children() const {
  std::size_t m = 0;
  for (const Node& n : nodes) m = std::max(m, n.children.size());
  return static_cast<int>(m);
}

int Dft::count(Kind kind) const {
  return static_cast<int>(std::count_if(nodes.begin(), nodes.end(),
                                        [&](const Node& n) { return n.type.kind == kind; }));
}

void ValidationReport::error(int node, std::string rule, std::string message) {
  errors.push_back({node, std::move(rule), std::move(message)});
}

void ValidationReport::warn(int node, std::string rule, std::string message) {
  warnings.push_back({node, std::move(rule), std::move(message)});
}

void ValidationReport::append(const ValidationReport& other) {
  errors.insert(errors.end(), other.errors.begin(), other.errors.end());
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

std::string ValidationReport::to_string(const Dft* dft) const {
  std::ostringstream out;
  auto line = [&](const char* level, const Issue& i) {
    out << level << " [" << i.rule << "]";
    if (dft && i.node >= 0 && i.node < dft->size()) out << " " << dft->node(i.node).name;
    out << ": " << i.message << "\n";
  };
  for (const Issue& i : errors) line("error", i);
  for (const Issue& i : warnings) line("warning", i);
  return out.str();
}

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

// Tarjan-free cycle search: iterative colouring DFS reporting each back edge's cycle once.
void find_cycles(const std::vector<std::vector<int>>& children, const std::vector<std::string>& names,
                 ValidationReport& report) {
  const int n = static_cast<int>(children.size());
  std::vector<int> colour(n, 0);
  std::vector<int> stack;
  std::set<std::set<int>> seen;
  std::function<void(int)> visit = [&](int v) {
    colour[v] = 1;
    stack.push_back(v);
    for (int c : children[v]) {
      if (colour[c] == 1) {
        auto it = std::find(stack.begin(), stack.end(), c);
        std::vector<int> cycle(it, stack.end());
        std::set<int> key(cycle.begin(), cycle.end());
        if (seen.insert(key).second) {
          std::string msg = "cycle through";
          for (int x : cycle) msg += " " + quoted(names[x]);
          report.error(c, "wf-acyclic", msg);
        }
      } else if (colour[c] == 0) {
        visit(c);
      }
    }
    stack.pop_back();
    colour[v] = 2;
  };
  for (int v = 0; v < n; ++v)
    if (colour[v] == 0) visit(v);
}

}  // namespace

BuildResult build_dft(const std::vector<RawNode>& raw, const std::string& top,
                      const std::vector<std::string>& evidence) {
  BuildResult result;
  ValidationReport& report = result.report;
  if (raw.empty()) {
    report.error(-1, "wf-empty", "no nodes");
    return result;
  }

  Dft dft;
  std::unordered_map<std::string, int> ids;
  for (const RawNode& r : raw) {
    if (ids.count(r.name)) {
      report.error(ids[r.name], "wf-duplicate", "duplicate definition of " + quoted(r.name));
      continue;
    }
    int id = static_cast<int>(dft.nodes.size());
    ids[r.name] = id;
    dft.nodes.push_back({id, r.name, r.type, {}});
  }
  std::vector<bool> defined(dft.nodes.size(), false);
  for (const RawNode& r : raw) {
    int id = ids[r.name];
    if (defined[id]) continue;
    defined[id] = true;
    Node& node = dft.nodes[id];
    for (const std::string& c : r.children) {
      auto it = ids.find(c);
      if (it == ids.end()) {
        report.error(id, "wf-dangling", "child " + quoted(c) + " is not defined");
        continue;
      }
      node.children.push_back(it->second);
    }
  }

  for (const Node& n : dft.nodes) {
    const NodeType& t = n.type;
    const int arity = static_cast<int>(n.children.size());
    if (t.kind == Kind::BE) {
      if (!n.children.empty()) report.error(n.id, "wf-leaf", "basic event has children");
      if (!(t.active_rate > 0) || !std::isfinite(t.active_rate))
        report.error(n.id, "be-rate", "active failure rate must be positive");
      if (!(t.passive_rate >= 0) || !std::isfinite(t.passive_rate))
        report.error(n.id, "be-rate", "passive failure rate must be nonnegative");
      continue;
    }
    if (arity == 0) report.error(n.id, "wf-gate-children", "gate has no children");
    if (is_dependency(t.kind) && arity < 2)
      report.error(n.id, "dep-arity", "dependency needs a trigger and at least one dependent");
    if (t.kind == Kind::VOT && (t.k < 1 || t.k > arity))
      report.error(n.id, "vot-k", "threshold " + std::to_string(t.k) + " outside 1.." + std::to_string(arity));
    if (t.kind == Kind::PDEP && !(t.probability >= 0 && t.probability <= 1))
      report.error(n.id, "pdep-p", "probability outside [0,1]");
    std::set<int> distinct(n.children.begin(), n.children.end());
    if (static_cast<int>(distinct.size()) != arity)
      report.error(n.id, "wf-repeated-child", "a child occurs twice");
  }

  std::vector<std::vector<int>> children;
  std::vector<std::string> names;
  for (const Node& n : dft.nodes) {
    children.push_back(n.children);
    names.push_back(n.name);
  }
  find_cycles(children, names, report);

  auto top_it = ids.find(top);
  if (top.empty() || top_it == ids.end()) {
    report.error(-1, "wf-top", "top event " + quoted(top) + " is not defined");
  } else {
    dft.top = top_it->second;
    if (!can_fail(dft.nodes[dft.top].type.kind))
      report.error(dft.top, "wf-top", "top event must be able to fail");
  }
  for (const std::string& e : evidence) {
    auto it = ids.find(e);
    if (it == ids.end()) {
      report.error(-1, "evidence", "evidence " + quoted(e) + " is not defined");
    } else if (dft.nodes[it->second].type.kind != Kind::BE) {
      report.error(it->second, "evidence", "evidence must be a basic event");
    } else {
      dft.evidence.insert(it->second);
    }
  }

  if (report.ok()) result.dft = std::move(dft);
  return result;
}

SpareModules spare_modules(const Dft& dft) {
  SpareModules out;
  for (const Node& s : dft.nodes) {
    if (s.type.kind != Kind::SPARE) continue;
    for (int rep : s.children) {
      if (out.modules.count(rep)) continue;
      std::set<int> module{rep};
      std::vector<int> todo{rep};
      while (!todo.empty()) {
        int v = todo.back();
        todo.pop_back();
        const Node& n = dft.node(v);
        if (n.type.kind == Kind::SPARE) continue;
        for (int c : n.children)
          if (module.insert(c).second) todo.push_back(c);
      }
      out.modules[rep] = std::move(module);
    }
  }
  for (auto a = out.modules.begin(); a != out.modules.end(); ++a) {
    for (auto b = std::next(a); b != out.modules.end(); ++b) {
      for (int x : a->second)
        if (b->second.count(x)) {
          out.overlaps.push_back({a->first, b->first});
          break;
        }
    }
  }
  return out;
}

ValidationReport validate_conventional(const Dft& dft) {
  ValidationReport report;
  const auto parents = dft.parents();
  const SpareModules sm = spare_modules(dft);

  for (auto [a, b] : sm.overlaps)
    report.error(a, "conv-1-disjoint",
                 "spare modules of " + quoted(dft.node(a).name) + " and " + quoted(dft.node(b).name) +
                     " overlap");
  for (const auto& [rep, members] : sm.modules) {
    for (int v : members) {
      if (v == rep) continue;
      for (int p : parents[v]) {
        if (is_dependency(dft.node(p).type.kind) || is_restrictor(dft.node(p).type.kind)) continue;
        if (!members.count(p))
          report.error(v, "conv-1-representative",
                       "member of the spare module of " + quoted(dft.node(rep).name) +
                           " is shared with " + quoted(dft.node(p).name) + " outside the module");
      }
    }
  }

  for (const Node& n : dft.nodes) {
    const Kind k = n.type.kind;
    if (k == Kind::SEQ)
      for (int c : n.children)
        if (dft.node(c).type.kind != Kind::BE)
          report.error(n.id, "conv-2-seq-children", "child " + quoted(dft.node(c).name) + " of a SEQ is not a BE");
    if (k == Kind::MUTEX)
      for (int c : n.children)
        if (dft.node(c).type.kind != Kind::BE)
          report.error(n.id, "mutex-children", "child " + quoted(dft.node(c).name) + " of a MUTEX is not a BE");
    if (is_dependency(k))
      for (int c : n.children)
        if (dft.node(c).type.kind != Kind::BE)
          report.warn(n.id, "conv-3-dep-children",
                      "child " + quoted(dft.node(c).name) + " of a dependency is not a BE");
    if (is_dependency(k) || is_restrictor(k))
      for (int p : parents[n.id])
        report.error(n.id, "restrictor-parent",
                     std::string(kind_name(k)) + " cannot be a child of " + quoted(dft.node(p).name));
    if (k == Kind::SPARE && n.children.size() == 1)
      report.warn(n.id, "spare-single-child", "SPARE with a single child acts as a pass-through");
    if (k == Kind::SPARE && (n.type.spare_keyword == SpareKeyword::Csp ||
                             n.type.spare_keyword == SpareKeyword::Hsp)) {
      const bool cold = n.type.spare_keyword == SpareKeyword::Csp;
      for (std::size_t i = 1; i < n.children.size(); ++i) {
        auto it = sm.modules.find(n.children[i]);
        if (it == sm.modules.end()) continue;
        for (int v : it->second) {
          const NodeType& t = dft.node(v).type;
          if (t.kind != Kind::BE) continue;
          if (cold ? t.passive_rate != 0.0 : t.passive_rate != t.active_rate)
            report.warn(v, "spare-dormancy",
                        std::string(cold ? "csp" : "hsp") + " spare component with dorm=" +
                            std::to_string(t.passive_rate / t.active_rate));
        }
      }
    }
  }
  return report;
}

const char* profile_name(Profile profile) {
  switch (profile) {
    case Profile::MonolithicCtmc: return "monolithic-ctmc";
    case Profile::Ioimc: return "ioimc";
    case Profile::MonolithicMa: return "monolithic-ma";
    case Profile::OriginalGspn: return "gspn-orig";
    case Profile::NewGspn: return "gspn-new";
  }
  return "?";
}

std::optional<Profile> parse_profile(const std::string& name) {
  for (Profile p : kAllProfiles)
    if (name == profile_name(p)) return p;
  if (name == "new-gspn") return Profile::NewGspn;
  if (name == "orig-gspn") return Profile::OriginalGspn;
  return std::nullopt;
}

ValidationReport check_profile_support(const Dft& dft, Profile profile) {
  ValidationReport report;
  const auto parents = dft.parents();
  const bool ctmc = profile == Profile::MonolithicCtmc;
  const bool ioimc = profile == Profile::Ioimc;
  const bool ma = profile == Profile::MonolithicMa;
  const bool orig = profile == Profile::OriginalGspn;
  const std::string who = std::string(" (") + profile_name(profile) + ")";

  for (const Node& n : dft.nodes) {
    const Kind k = n.type.kind;
    if (k == Kind::SPARE) {
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        const int c = n.children[i];
        int spare_parents = 0;
        for (int p : parents[c])
          if (dft.node(p).type.kind == Kind::SPARE) ++spare_parents;
        if (i > 0 && spare_parents > 1 && orig)
          report.error(n.id, "support-shared-spare", "Share SPAREs: not supported" + who);
        if (i == 0 && spare_parents > 1 && (ctmc || ma || orig))
          report.error(n.id, "support-shared-primary", "Shared primary: not supported" + who);
        if (dft.node(c).type.kind != Kind::BE && (ctmc || orig))
          report.error(n.id, "support-spare-subtree", "SPARE w/ subtree: not supported" + who);
      }
    }
    if (k == Kind::POR && (ctmc || ioimc || orig))
      report.error(n.id, "support-priority-gates", "priority gates: PAND only" + who);
    if (k == Kind::PDEP && (ctmc || ioimc || orig))
      report.error(n.id, "support-pdep", "PDEP: not supported" + who);
    if (is_dependency(k)) {
      bool gates = false;
      for (int c : n.children)
        if (dft.node(c).type.kind != Kind::BE) gates = true;
      if (gates && profile != Profile::NewGspn)
        report.error(n.id, "support-downward-fdep",
                     ioimc || ma ? "Downward FDEPs: simultaneity interpretation not implemented" + who
                                 : "Downward FDEPs: not supported" + who);
    }
    if (k == Kind::SEQ)
      for (int c : n.children)
        if (dft.node(c).type.kind != Kind::BE) {
          report.error(n.id, "support-seq-gates", "SEQs on gates: not supported by the GSPN framework");
          break;
        }
  }
  return report;
}

bool isomorphic(const Dft& a, const Dft& b, double tol) {
  if (a.size() != b.size()) return false;
  auto close = [&](double x, double y) { return std::abs(x - y) <= tol * std::max(1.0, std::max(std::abs(x), std::abs(y))); };
  std::unordered_map<int, int> map;
  for (const Node& n : a.nodes) {
    auto m = b.find(n.name);
    if (!m) return false;
    map[n.id] = *m;
  }
  for (const Node& n : a.nodes) {
    const Node& o = b.node(map[n.id]);
    NodeType x = n.type, y = o.type;
    if (x.kind != y.kind) return false;
    if (!close(x.active_rate, y.active_rate) || !close(x.passive_rate, y.passive_rate)) return false;
    if (!close(x.probability, y.probability)) return false;
    x.active_rate = y.active_rate = x.passive_rate = y.passive_rate = x.probability = y.probability = 0;
    if (!(x == y)) return false;
    if (n.children.size() != o.children.size()) return false;
    for (std::size_t i = 0; i < n.children.size(); ++i)
      if (map[n.children[i]] != o.children[i]) return false;
  }
  if (map[a.top] != b.top) return false;
  std::set<int> ev;
  for (int e : a.evidence) ev.insert(map[e]);
  return ev == b.evidence;
}

}  // namespace dftgspn
