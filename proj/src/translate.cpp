#include "dftgspn/translate.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

namespace dftgspn {

void Template::add_place(const std::string& name, bool is_interface, int tokens) {
  if (std::find(places.begin(), places.end(), name) == places.end()) places.push_back(name);
  if (is_interface) interface.insert(name);
  if (tokens) initial[name] += tokens;
}

int Template::auxiliary_places() const {
  return static_cast<int>(std::count_if(places.begin(), places.end(),
                                        [&](const std::string& p) { return !interface.count(p); }));
}

int Template::arcs(std::optional<Role> role) const {
  int n = 0;
  for (const auto& t : transitions)
    if (!role || t.role == *role) n += t.arcs();
  return n;
}

int Template::transition_count(std::optional<Role> role) const {
  return static_cast<int>(std::count_if(transitions.begin(), transitions.end(),
                                        [&](const TemplateTransition& t) { return !role || t.role == *role; }));
}

std::string failed_place(const std::string& node) { return "Failed_" + node; }
std::string unavail_place(const std::string& node) { return "Unavail_" + node; }
std::string active_place(const std::string& node) { return "Active_" + node; }
std::string disabled_place(const std::string& node) { return "Disabled_" + node; }

Partitioning partitioning(Profile profile) {
  return profile == Profile::MonolithicCtmc || profile == Profile::OriginalGspn ? Partitioning::AllInOne
                                                                               : Partitioning::Singletons;
}

ClaimMode default_claim_mode(Profile profile) {
  return profile == Profile::Ioimc ? ClaimMode::LateLateFail : ClaimMode::Early;
}

std::optional<bool> native_inclusive(Profile profile) {
  switch (profile) {
    case Profile::MonolithicCtmc:
    case Profile::MonolithicMa: return true;
    case Profile::Ioimc:
    case Profile::OriginalGspn: return false;
    case Profile::NewGspn: return std::nullopt;
  }
  return std::nullopt;
}

namespace {

class Builder {
 public:
  Builder(Template& tpl, const std::string& origin, PriorityRef priority, Role role = Role::Failure)
      : tpl_(tpl), origin_(origin), priority_(priority), role_(role) {}

  // Starts an immediate transition; arcs are added through the returned handle.
  Builder& immediate(const std::string& suffix, double weight = 1.0, int offset = 0) {
    tpl_.transitions.push_back({});
    auto& t = current();
    t.name = origin_ + "." + suffix;
    t.kind = TransitionKind::Immediate;
    t.weight = weight;
    t.priority = {priority_.node, priority_.offset + offset};
    t.role = role_;
    t.origin = origin_;
    return *this;
  }

  Builder& timed(const std::string& suffix, double rate) {
    immediate(suffix, rate);
    current().kind = TransitionKind::Timed;
    return *this;
  }

  Builder& in(const std::string& p, int w = 1) {
    current().input.push_back({p, w});
    return *this;
  }
  Builder& out(const std::string& p, int w = 1) {
    current().output.push_back({p, w});
    return *this;
  }
  Builder& inhibit(const std::string& p, int w = 1) {
    current().inhibitor.push_back({p, w});
    return *this;
  }
  // Bidirectional arc: the token is taken and put back.
  Builder& read(const std::string& p) { return in(p).out(p); }
  // Output guarded by an inhibitor on the same place.
  Builder& once(const std::string& p) { return out(p).inhibit(p); }
  Builder& group(const std::string& g) {
    current().partition_group = g;
    return *this;
  }

 private:
  TemplateTransition& current() { return tpl_.transitions.back(); }

  Template& tpl_;
  std::string origin_;
  PriorityRef priority_;
  Role role_;
};

std::string indexed(const std::string& prefix, std::size_t i, const std::string& node) {
  return prefix + std::to_string(i) + "_" + node;
}

void add_interface(Template& tpl, const Dft& dft, int v) {
  const Node& n = dft.node(v);
  tpl.add_place(failed_place(n.name), true);
  tpl.add_place(unavail_place(n.name), true);
  tpl.add_place(active_place(n.name), true);
  if (n.type.kind == Kind::BE) tpl.add_place(disabled_place(n.name), true);
}

void add_activation(Template& tpl, const Dft& dft, int v, const std::vector<std::string>& claimed);

}  // namespace

Template template_for_node(const Dft& dft, int v, Profile profile, const TranslateOptions& options) {
  Template tpl;
  const Node& node = dft.node(v);
  const NodeType& type = node.type;
  const std::string& name = node.name;
  const std::size_t n = node.children.size();
  const bool strict = options.strict_unavail;
  Builder b(tpl, name, {v, 0});
  std::vector<std::string> spare_claimed;

  add_interface(tpl, dft, v);
  for (int c : node.children) add_interface(tpl, dft, c);
  auto F = [&](std::size_t i) { return failed_place(dft.node(node.children[i]).name); };
  auto U = [&](std::size_t i) { return unavail_place(dft.node(node.children[i]).name); };
  auto child_is_be = [&](std::size_t i) { return dft.node(node.children[i]).type.kind == Kind::BE; };
  const std::string failed = failed_place(name);
  const std::string unavail = unavail_place(name);
  const std::string active = active_place(name);
  // Failure output of this node; strict mode moves the Unavail token to a separate transition.
  auto fail_out = [&](Builder& t) -> Builder& {
    t.once(failed);
    if (!strict) t.out(unavail);
    return t;
  };
  auto aux = [&](const std::string& p, int tokens = 0) {
    tpl.add_place(p, false, tokens);
    return p;
  };

  switch (type.kind) {
    case Kind::BE: {
      const std::string disabled = disabled_place(name);
      fail_out(b.timed("fail_active", type.active_rate).read(active)).inhibit(disabled);
      if (type.passive_rate > 0)
        fail_out(b.timed("fail_passive", type.passive_rate).inhibit(active)).inhibit(disabled);
      break;
    }
    case Kind::AND: {
      b.immediate("fail");
      for (std::size_t i = 0; i < n; ++i) b.read(F(i));
      fail_out(b);
      break;
    }
    case Kind::OR:
      for (std::size_t i = 0; i < n; ++i) fail_out(b.immediate("fail" + std::to_string(i + 1)).read(F(i)));
      break;
    case Kind::VOT: {
      const std::string collect = aux("Collect_" + name);
      for (std::size_t i = 0; i < n; ++i) {
        const std::string next = aux(indexed("Vote", i + 1, name), 1);
        b.immediate("count" + std::to_string(i + 1)).read(F(i)).in(next).out(collect);
      }
      fail_out(b.immediate("fail").in(collect, type.k));
      break;
    }
    case Kind::PAND:
      if (type.inclusive) {
        const std::string failsafe = aux("FailSafe_" + name);
        for (std::size_t i = 0; i + 1 < n; ++i)
          b.immediate("failsafe" + std::to_string(i + 1)).inhibit(F(i)).read(F(i + 1)).once(failsafe);
        b.immediate("fail");
        for (std::size_t i = 0; i < n; ++i) b.read(F(i));
        fail_out(b).inhibit(failsafe);
      } else if (n == 1) {
        fail_out(b.immediate("fail").read(F(0)));
      } else {
        std::vector<std::string> x;
        for (std::size_t i = 1; i < n; ++i) x.push_back(aux(indexed("X", i, name)));
        b.immediate("order1").read(F(0)).inhibit(F(1)).once(x[0]);
        for (std::size_t i = 1; i + 1 < n; ++i)
          b.immediate("order" + std::to_string(i + 1)).in(x[i - 1]).read(F(i)).inhibit(F(i + 1)).out(x[i]);
        fail_out(b.immediate("fail").in(x[n - 2]).read(F(n - 1)));
      }
      break;
    case Kind::POR:
      if (type.inclusive) {
        const std::string failsafe = aux("FailSafe_" + name);
        fail_out(b.immediate("fail").read(F(0))).inhibit(failsafe);
        for (std::size_t i = 1; i < n; ++i)
          b.immediate("failsafe" + std::to_string(i + 1)).read(F(i)).inhibit(F(0)).once(failsafe);
      } else {
        b.immediate("fail").read(F(0));
        for (std::size_t i = 1; i < n; ++i) b.inhibit(F(i));
        fail_out(b);
      }
      break;
    case Kind::SPARE: {
      const ClaimMode mode = options.claim_mode.value_or(type.claim_mode.value_or(default_claim_mode(profile)));
      const ClaimOrder order = options.claim_order.value_or(type.claim_order);
      const bool early = mode == ClaimMode::Early;
      // Final failure of the SPARE; guarded when an early-fail transition may have fired already.
      auto spare_fail = [&](Builder& t) -> Builder& {
        if (mode == ClaimMode::LateEarlyFail) return fail_out(t);
        t.out(failed);
        if (!strict) t.out(unavail);
        return t;
      };
      std::vector<std::string> claimed;
      if (order == ClaimOrder::Ordered) {
        std::vector<std::string> next;
        for (std::size_t i = 0; i < n; ++i) {
          next.push_back(aux(indexed("Next", i + 1, name), i == 0 && early ? 1 : 0));
          claimed.push_back(aux(indexed("Claimed", i + 1, name)));
        }
        for (std::size_t i = 0; i < n; ++i) {
          const std::string k = std::to_string(i + 1);
          b.immediate("claim" + k).in(next[i]).once(U(i)).out(claimed[i]);
          b.immediate("unavailable" + k).in(next[i]).read(U(i));
          if (i + 1 < n) b.out(next[i + 1]); else spare_fail(b);
          b.immediate("childfail" + k).in(claimed[i]).read(F(i));
          if (i + 1 < n) b.out(next[i + 1]); else spare_fail(b);
        }
        if (!early) {
          const std::string sleep = aux("Sleep_" + name, 1);
          b.immediate("start").in(sleep).read(active).out(next[0]);
        }
      } else {
        const std::string next = aux("Next_" + name, early ? 1 : 0);
        for (std::size_t i = 0; i < n; ++i) claimed.push_back(aux(indexed("Claimed", i + 1, name)));
        for (std::size_t i = 0; i < n; ++i) {
          const std::string k = std::to_string(i + 1);
          b.immediate("claim" + k).in(next).once(U(i)).out(claimed[i]);
          b.immediate("childfail" + k).in(claimed[i]).read(F(i)).out(next);
        }
        b.immediate("unavailable").in(next);
        for (std::size_t i = 0; i < n; ++i) b.read(U(i));
        spare_fail(b);
        if (!early) {
          const std::string sleep = aux("Sleep_" + name, 1);
          b.immediate("start").in(sleep).read(active).out(next);
        }
      }
      if (mode == ClaimMode::LateEarlyFail) {
        b.immediate("earlyfail");
        for (std::size_t i = 0; i < n; ++i) b.read(F(i));
        b.once(failed);
      }
      spare_claimed = claimed;
      break;
    }
    case Kind::FDEP:
    case Kind::PDEP: {
      const double p = type.kind == Kind::FDEP ? 1.0 : type.probability;
      std::string source = F(0);
      if (p < 1.0) {
        const std::string coin = aux("Coin_" + name, 1);
        const std::string flip = aux("Flip_" + name);
        const std::string forward = aux("Forward_" + name);
        b.immediate("trigger").read(F(0)).in(coin).out(flip);
        if (p > 0) b.immediate("success", p, 1).in(flip).out(forward).group(name);
        b.immediate("failure", 1.0 - p, 1).in(flip).group(name);
        if (p == 0) break;
        source = forward;
      }
      for (std::size_t i = 1; i < n; ++i) {
        b.immediate("forward" + std::to_string(i + 1)).read(source);
        if (child_is_be(i)) b.inhibit(disabled_place(dft.node(node.children[i]).name));
        b.once(F(i));
        if (!strict) b.out(U(i));
      }
      break;
    }
    case Kind::SEQ: {
      std::vector<std::string> next(n + 1);
      for (std::size_t i = 1; i < n; ++i) next[i] = aux(indexed("SeqNext", i + 1, name), i == 1 ? 1 : 0);
      for (std::size_t i = 1; i < n; ++i) {
        const std::string disabled = disabled_place(dft.node(node.children[i]).name);
        tpl.add_place(disabled, true, 1);
        b.immediate("release" + std::to_string(i + 1)).in(next[i]).in(disabled).read(F(i - 1));
        if (i + 1 < n) b.out(next[i + 1]);
      }
      break;
    }
    case Kind::MUTEX: {
      const std::string token = aux("Mutex_" + name, 1);
      for (std::size_t i = 0; i < n; ++i) {
        b.immediate("exclude" + std::to_string(i + 1)).read(F(i)).in(token);
        for (std::size_t j = 0; j < n; ++j)
          if (j != i) b.out(disabled_place(dft.node(node.children[j]).name));
      }
      break;
    }
  }

  if (strict && can_fail(type.kind)) b.immediate("unavail").read(failed).once(unavail);
  if (type.kind == Kind::SPARE) add_activation(tpl, dft, v, spare_claimed);
  return tpl;
}

namespace {

void add_activation(Template& tpl, const Dft& dft, int v, const std::vector<std::string>& claimed) {
  const Node& node = dft.node(v);
  Builder b(tpl, node.name, {v, 0}, Role::Activation);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const Node& c = dft.node(node.children[i]);
    b.immediate("activate" + std::to_string(i + 1)).read(active_place(node.name)).once(active_place(c.name));
    if (!claimed.empty()) b.read(claimed[i]);
  }
}

}  // namespace

Template activation_template(const Dft& dft, int v) {
  Template tpl;
  const Node& node = dft.node(v);
  if (node.type.kind == Kind::BE || node.type.kind == Kind::SPARE || !can_fail(node.type.kind)) return tpl;
  add_interface(tpl, dft, v);
  for (int c : node.children) add_interface(tpl, dft, c);
  add_activation(tpl, dft, v, {});
  return tpl;
}

namespace {

// Nodes that are not below any gate: the top and detached failure sources.
std::vector<int> roots(const Dft& dft) {
  const auto parents = dft.parents();
  std::vector<int> out{dft.top};
  for (const Node& n : dft.nodes) {
    if (n.id == dft.top || !can_fail(n.type.kind)) continue;
    bool gate_parent = false;
    for (int p : parents[n.id])
      if (can_fail(dft.node(p).type.kind)) gate_parent = true;
    if (!gate_parent) out.push_back(n.id);
  }
  return out;
}

}  // namespace

Template template_init(const Dft& dft) {
  Template tpl;
  tpl.add_place("Init", false, 1);
  tpl.add_place("Evidence", false);
  Builder b(tpl, "init", {-1, 0}, Role::Init);
  b.immediate("start").in("Init");
  for (int r : roots(dft)) {
    tpl.add_place(active_place(dft.node(r).name), true);
    b.out(active_place(dft.node(r).name));
  }
  b.out("Evidence");
  b.immediate("evidence").in("Evidence");
  for (int e : dft.evidence) {
    tpl.add_place(failed_place(dft.node(e).name), true);
    b.out(failed_place(dft.node(e).name));
  }
  return tpl;
}

Template merge_templates(const std::vector<Template>& templates) {
  Template merged;
  std::unordered_map<std::string, bool> seen;  // name -> interface
  for (const Template& t : templates) {
    for (const std::string& p : t.places) {
      const bool iface = t.interface.count(p) > 0;
      auto [it, fresh] = seen.emplace(p, iface);
      if (fresh) {
        merged.add_place(p, iface);
      } else if (!iface || !it->second) {
        throw std::logic_error("merge: auxiliary place " + p + " occurs in two templates");
      }
    }
    for (const auto& [p, k] : t.initial) merged.initial[p] += k;
    merged.transitions.insert(merged.transitions.end(), t.transitions.begin(), t.transitions.end());
  }
  return merged;
}

PriorityConstraintSet generate_priority_constraints(const Dft& dft, Profile profile) {
  PriorityConstraintSet set;
  for (const Node& n : dft.nodes) set.names.push_back(n.name);
  set.names.push_back("init");
  const int init = set.init_variable();
  auto add = [&](int a, int b, Relation r) { set.constraints.push_back({a, b, r}); };

  const bool equal = profile == Profile::Ioimc || profile == Profile::OriginalGspn;
  for (const Node& n : dft.nodes) {
    const Kind k = n.type.kind;
    if (equal) {
      if (n.id != 0) add(0, n.id, Relation::Equal);
      continue;
    }
    if (is_dependency(k)) {
      if (profile == Profile::NewGspn) {
        add(n.id, n.children[0], Relation::LessEq);
        for (std::size_t i = 1; i < n.children.size(); ++i) add(n.children[i], n.id, Relation::LessEq);
      } else {
        for (const Node& v : dft.nodes) {
          if (is_dependency(v.type.kind)) continue;
          if (profile == Profile::MonolithicCtmc) add(v.id, n.id, Relation::Less);
          else add(n.id, v.id, Relation::Less);
        }
      }
      continue;
    }
    const bool weak = profile == Profile::NewGspn && (k == Kind::AND || k == Kind::OR);
    for (int c : n.children) add(n.id, c, weak ? Relation::LessEq : Relation::Less);
  }
  for (const Node& n : dft.nodes) add(n.id, init, Relation::Less);
  return set;
}

PrioritySolution solve_priorities(const PriorityConstraintSet& cs) {
  const int n = static_cast<int>(cs.names.size());
  struct E {
    int to, w;
  };
  std::vector<std::vector<E>> adj(n);
  for (const auto& c : cs.constraints) {
    adj[c.lhs].push_back({c.rhs, c.relation == Relation::Less ? 1 : 0});
    if (c.relation == Relation::Equal) adj[c.rhs].push_back({c.lhs, 0});
  }

  // Tarjan's strongly connected components, iteratively.
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int counter = 0, comps = 0;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<std::pair<int, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i < adj[v].size()) {
        int w = adj[v][i++].to;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comps;
        } while (w != v);
        ++comps;
      }
      const int done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }

  PrioritySolution sol;
  for (int a = 0; a < n; ++a)
    for (const E& e : adj[a])
      if (e.w > 0 && comp[a] == comp[e.to]) {
        // Close the cycle: path from e.to back to a inside the component.
        std::vector<int> parent(n, -1);
        std::deque<int> q{e.to};
        parent[e.to] = e.to;
        while (!q.empty() && parent[a] < 0) {
          int x = q.front();
          q.pop_front();
          for (const E& f : adj[x])
            if (comp[f.to] == comp[a] && parent[f.to] < 0) {
              parent[f.to] = x;
              q.push_back(f.to);
            }
        }
        std::vector<int> back;
        for (int x = a; x != e.to; x = parent[x]) back.push_back(x);
        back.push_back(e.to);
        std::reverse(back.begin(), back.end());
        sol.cycle.push_back(a);
        sol.cycle.insert(sol.cycle.end(), back.begin(), back.end());
        return sol;
      }

  // Tarjan numbers components in reverse topological order.
  std::vector<int> comp_value(comps, 1);
  std::vector<std::vector<int>> members(comps);
  for (int v = 0; v < n; ++v) members[comp[v]].push_back(v);
  for (int c = comps - 1; c >= 0; --c)
    for (int v : members[c])
      for (const E& e : adj[v])
        if (comp[e.to] != c) comp_value[comp[e.to]] = std::max(comp_value[comp[e.to]], comp_value[c] + e.w);
  sol.values.resize(n);
  for (int v = 0; v < n; ++v) sol.values[v] = comp_value[comp[v]];
  return sol;
}

bool satisfies(const PriorityConstraintSet& cs, const std::vector<int>& values) {
  if (values.size() != cs.names.size()) return false;
  for (const auto& c : cs.constraints) {
    const int a = values[c.lhs], b = values[c.rhs];
    if (c.relation == Relation::Less && !(a < b)) return false;
    if (c.relation == Relation::LessEq && !(a <= b)) return false;
    if (c.relation == Relation::Equal && a != b) return false;
  }
  return true;
}

std::string describe_cycle(const PriorityConstraintSet& cs, const std::vector<int>& cycle) {
  std::string out;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) {
      const int a = cycle[i - 1], b = cycle[i];
      std::string rel = " <= ";
      for (const auto& c : cs.constraints) {
        if (c.lhs == a && c.rhs == b && c.relation == Relation::Less) {
          rel = " < ";
          break;
        }
        if (((c.lhs == a && c.rhs == b) || (c.lhs == b && c.rhs == a)) && c.relation == Relation::Equal) rel = " = ";
      }
      out += rel;
    }
    out += "pi_" + cs.names[cycle[i]];
  }
  return out;
}

Translation translate(const Dft& dft, Profile profile, const TranslateOptions& options) {
  Translation result;
  ValidationReport conv = validate_conventional(dft);
  ValidationReport support = check_profile_support(dft, profile);
  result.report.warnings = conv.warnings;
  if (!conv.ok()) throw TranslationError("DFT violates a conventional restriction", conv);
  if (!support.ok()) {
    if (!options.ignore_profile_support)
      throw TranslationError(std::string("DFT uses features unsupported by ") + profile_name(profile), support);
    for (const Issue& i : support.errors) result.report.warn(i.node, i.rule, i.message + " [ignored]");
  }
  if (auto native = native_inclusive(profile))
    for (const Node& n : dft.nodes)
      if ((n.type.kind == Kind::PAND || n.type.kind == Kind::POR) && n.type.inclusive != *native)
        result.report.warn(n.id, "variant-policy",
                           std::string(n.type.inclusive ? "inclusive" : "exclusive") + " " +
                               kind_name(n.type.kind) + " kept although " + profile_name(profile) +
                               " natively uses the " + (*native ? "inclusive" : "exclusive") + " variant");

  PriorityConstraintSet cs = generate_priority_constraints(dft, profile);
  PrioritySolution sol = solve_priorities(cs);
  if (!sol.ok()) {
    ValidationReport r;
    std::vector<int> nodes;
    for (int v : sol.cycle)
      if (v < dft.size()) nodes.push_back(v);
    r.error(nodes.empty() ? -1 : nodes.front(), "priority-unsatisfiable",
            "no valid priority assignment: " + describe_cycle(cs, sol.cycle));
    throw TranslationError("priority constraints are unsatisfiable", r, nodes);
  }

  std::vector<Template> parts;
  Template skeleton;
  for (const Node& n : dft.nodes) add_interface(skeleton, dft, n.id);
  parts.push_back(std::move(skeleton));
  for (const Node& n : dft.nodes) parts.push_back(template_for_node(dft, n.id, profile, options));
  for (const Node& n : dft.nodes) parts.push_back(activation_template(dft, n.id));
  parts.push_back(template_init(dft));
  result.symbolic = merge_templates(parts);
  const Template& sym = result.symbolic;

  // Instantiate priorities; initialisation goes strictly above everything else.
  int top = 0;
  for (int v = 0; v < dft.size(); ++v) top = std::max(top, sol.values[v]);
  for (const auto& t : sym.transitions)
    if (t.kind == TransitionKind::Immediate && t.priority.node >= 0)
      top = std::max(top, sol.values[t.priority.node] + t.priority.offset);
  result.priorities.assign(sol.values.begin(), sol.values.end() - 1);
  result.priorities.push_back(top + 1);

  Gspn& net = result.net;
  std::unordered_map<std::string, int> place_ids;
  for (const std::string& p : sym.places) {
    auto it = sym.initial.find(p);
    place_ids[p] = net.add_place(p, it == sym.initial.end() ? 0 : it->second);
  }
  const Partitioning parts_policy = partitioning(profile);
  std::unordered_map<std::string, int> groups;
  int next_partition = 0;
  for (const auto& t : sym.transitions) {
    Transition tr;
    tr.name = t.name;
    tr.kind = t.kind;
    tr.weight = t.weight;
    tr.role = t.role;
    tr.origin = t.origin;
    if (t.kind == TransitionKind::Immediate) {
      tr.priority = t.priority.node < 0 ? result.priorities.back() : sol.values[t.priority.node] + t.priority.offset;
      if (parts_policy == Partitioning::AllInOne) {
        tr.partition = 0;
      } else if (!t.partition_group.empty()) {
        auto [it, fresh] = groups.emplace(t.partition_group, next_partition);
        if (fresh) ++next_partition;
        tr.partition = it->second;
      } else {
        tr.partition = next_partition++;
      }
    }
    for (const auto& [p, w] : t.input) tr.input.push_back({place_ids.at(p), w});
    for (const auto& [p, w] : t.output) tr.output.push_back({place_ids.at(p), w});
    for (const auto& [p, w] : t.inhibitor) tr.inhibitor.push_back({place_ids.at(p), w});
    net.add_transition(std::move(tr));
  }
  net.check();

  std::set<int> counters;
  for (const Node& n : dft.nodes) {
    const int f = place_ids.at(failed_place(n.name));
    const int u = place_ids.at(unavail_place(n.name));
    const int a = place_ids.at(active_place(n.name));
    result.monotone_places.insert(result.monotone_places.end(), {f, u, a});
    result.unavail_places.push_back(u);
    if (n.type.kind == Kind::SEQ || n.type.kind == Kind::MUTEX)
      for (int c : n.children) counters.insert(place_ids.at(disabled_place(dft.node(c).name)));
    if (n.type.kind == Kind::VOT) counters.insert(place_ids.at("Collect_" + n.name));
  }
  result.counter_places.assign(counters.begin(), counters.end());
  return result;
}

}  // namespace dftgspn
