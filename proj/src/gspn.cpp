#include "dftgspn/gspn.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <string_view>
#include <unordered_map>

namespace dftgspn {

int Gspn::add_place(std::string name, int initial) {
  places.push_back({std::move(name), initial});
  return static_cast<int>(places.size()) - 1;
}

int Gspn::add_transition(Transition t) {
  for (auto* arcs : {&t.input, &t.output, &t.inhibitor}) std::sort(arcs->begin(), arcs->end());
  transitions.push_back(std::move(t));
  return static_cast<int>(transitions.size()) - 1;
}

std::optional<int> Gspn::place(const std::string& name) const {
  for (std::size_t i = 0; i < places.size(); ++i)
    if (places[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> Gspn::transition(const std::string& name) const {
  for (std::size_t i = 0; i < transitions.size(); ++i)
    if (transitions[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

Marking Gspn::initial_marking() const {
  Marking m(places.size());
  for (std::size_t i = 0; i < places.size(); ++i) {
    if (places[i].initial < 0 || places[i].initial > 255)
      throw std::invalid_argument("initial marking of " + places[i].name + " out of range");
    m[i] = static_cast<std::uint8_t>(places[i].initial);
  }
  return m;
}

int Gspn::count(TransitionKind kind) const {
  return static_cast<int>(std::count_if(transitions.begin(), transitions.end(),
                                        [&](const Transition& t) { return t.kind == kind; }));
}

int Gspn::partitions() const {
  std::set<int> ids;
  for (const Transition& t : transitions)
    if (!t.timed()) ids.insert(t.partition);
  return static_cast<int>(ids.size());
}

void Gspn::check() const {
  const int n = static_cast<int>(places.size());
  for (const Transition& t : transitions) {
    if (t.timed() && t.priority != 0) throw std::invalid_argument(t.name + ": timed transition with priority");
    if (!t.timed() && t.priority < 1) throw std::invalid_argument(t.name + ": immediate priority below 1");
    if (!t.timed() && t.partition < 0) throw std::invalid_argument(t.name + ": immediate without partition");
    if (!(t.weight > 0)) throw std::invalid_argument(t.name + ": weight must be positive");
    for (auto* arcs : {&t.input, &t.output, &t.inhibitor})
      for (auto [p, w] : *arcs)
        if (p < 0 || p >= n || w < 1) throw std::invalid_argument(t.name + ": bad arc");
  }
}

namespace {

bool has_concession(const Transition& t, const Marking& m) {
  for (auto [p, w] : t.input)
    if (m[p] < w) return false;
  for (auto [p, h] : t.inhibitor)
    if (m[p] >= h) return false;
  return true;
}

}  // namespace

std::vector<int> conceded(const Gspn& net, const Marking& m) {
  std::vector<int> out;
  for (std::size_t i = 0; i < net.transitions.size(); ++i)
    if (has_concession(net.transitions[i], m)) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> enabled(const Gspn& net, const Marking& m) {
  std::vector<int> conc = conceded(net, m);
  int top = -1;
  for (int t : conc) top = std::max(top, net.transitions[t].priority);
  std::vector<int> out;
  for (int t : conc)
    if (net.transitions[t].priority == top) out.push_back(t);
  return out;
}

Marking fire(const Gspn& net, const Marking& m, int t) {
  if (t < 0 || t >= static_cast<int>(net.transitions.size()))
    throw ContractViolation("fire: no transition " + std::to_string(t));
  auto en = enabled(net, m);
  if (!std::binary_search(en.begin(), en.end(), t))
    throw ContractViolation("fire: " + net.transitions[t].name + " is not enabled");
  const Transition& tr = net.transitions[t];
  std::vector<int> next(m.begin(), m.end());
  for (auto [p, w] : tr.input) next[p] -= w;
  for (auto [p, w] : tr.output) next[p] += w;
  Marking out(m.size());
  for (std::size_t p = 0; p < m.size(); ++p) {
    if (next[p] > 255)
      throw ResourceLimit("place " + net.places[p].name + " exceeds 255 tokens (unbounded growth)", 0);
    out[p] = static_cast<std::uint8_t>(next[p]);
  }
  return out;
}

namespace {

std::string_view key(const Marking& m) {
  return {reinterpret_cast<const char*>(m.data()), m.size()};
}

}  // namespace

MarkingGraph build_marking_graph(const Gspn& net, std::size_t state_limit, Exploration order) {
  std::vector<Marking> found;
  std::unordered_map<std::string, int> index;
  std::vector<std::vector<std::pair<int, int>>> succ;  // (transition, target)
  std::deque<int> work;

  auto intern = [&](Marking m) {
    std::string k(key(m));
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    if (found.size() >= state_limit)
      throw ResourceLimit("state limit of " + std::to_string(state_limit) + " markings exceeded (frontier " +
                              std::to_string(work.size()) + ")",
                          work.size());
    int id = static_cast<int>(found.size());
    index.emplace(std::move(k), id);
    found.push_back(std::move(m));
    succ.emplace_back();
    work.push_back(id);
    return id;
  };

  intern(net.initial_marking());
  while (!work.empty()) {
    int s;
    if (order == Exploration::BreadthFirst) {
      s = work.front();
      work.pop_front();
    } else {
      s = work.back();
      work.pop_back();
    }
    for (int t : enabled(net, found[s])) {
      int target = intern(fire(net, found[s], t));
      succ[s].push_back({t, target});
    }
  }

  // Canonical renumbering.
  std::vector<int> rank(found.size(), -1);
  std::vector<int> order_ids;
  rank[0] = 0;
  order_ids.push_back(0);
  for (std::size_t i = 0; i < order_ids.size(); ++i) {
    for (auto [t, target] : succ[order_ids[i]]) {
      if (rank[target] < 0) {
        rank[target] = static_cast<int>(order_ids.size());
        order_ids.push_back(target);
      }
    }
  }
  MarkingGraph g;
  g.initial = 0;
  g.first_edge.push_back(0);
  for (int old : order_ids) {
    const int s = rank[old];
    g.states.push_back(found[old]);
    bool van = false;
    for (auto [t, target] : succ[old]) {
      van = van || !net.transitions[t].timed();
      g.edges.push_back({s, t, rank[target]});
    }
    g.vanishing.push_back(van);
    g.first_edge.push_back(g.edges.size());
  }
  return g;
}

std::optional<BoundWitness> check_bounded(const MarkingGraph& graph, int k, const std::vector<int>& places) {
  for (int s = 0; s < graph.size(); ++s) {
    const Marking& m = graph.states[s];
    if (places.empty()) {
      for (std::size_t p = 0; p < m.size(); ++p)
        if (m[p] > k) return BoundWitness{s, static_cast<int>(p)};
    } else {
      for (int p : places)
        if (m[p] > k) return BoundWitness{s, p};
    }
  }
  return std::nullopt;
}

std::optional<Path> detect_time_trap(const Gspn& net, const MarkingGraph& graph) {
  const int n = graph.size();
  std::vector<int> colour(n, 0);
  std::vector<std::pair<int, std::size_t>> stack;  // state, next edge offset
  std::vector<int> via(n, -1);
  for (int root = 0; root < n; ++root) {
    if (colour[root]) continue;
    stack.push_back({root, graph.first_edge[root]});
    colour[root] = 1;
    while (!stack.empty()) {
      auto& [s, e] = stack.back();
      if (e == graph.first_edge[s + 1]) {
        colour[s] = 2;
        stack.pop_back();
        continue;
      }
      const Edge& edge = graph.edges[e++];
      if (net.transitions[edge.transition].timed()) continue;
      if (colour[edge.target] == 1) {
        Path cycle;
        auto it = std::find_if(stack.begin(), stack.end(), [&](auto& f) { return f.first == edge.target; });
        for (auto f = it; f != stack.end(); ++f) {
          cycle.states.push_back(f->first);
          if (std::next(f) != stack.end()) cycle.transitions.push_back(via[std::next(f)->first]);
        }
        cycle.transitions.push_back(edge.transition);
        cycle.states.push_back(edge.target);
        return cycle;
      }
      if (colour[edge.target] == 0) {
        colour[edge.target] = 1;
        via[edge.target] = edge.transition;
        stack.push_back({edge.target, graph.first_edge[edge.target]});
      }
    }
  }
  return std::nullopt;
}

namespace {

// Breadth-first path from the initial state to `to`.
Path path_to(const MarkingGraph& g, int to) {
  std::vector<int> parent(g.size(), -1), via(g.size(), -1);
  std::deque<int> q{g.initial};
  parent[g.initial] = g.initial;
  while (!q.empty() && parent[to] < 0) {
    int s = q.front();
    q.pop_front();
    for (const Edge& e : g.out(s))
      if (parent[e.target] < 0) {
        parent[e.target] = s;
        via[e.target] = e.transition;
        q.push_back(e.target);
      }
  }
  Path p;
  for (int s = to; s != g.initial; s = parent[s]) {
    p.states.push_back(s);
    p.transitions.push_back(via[s]);
  }
  p.states.push_back(g.initial);
  std::reverse(p.states.begin(), p.states.end());
  std::reverse(p.transitions.begin(), p.transitions.end());
  return p;
}

}  // namespace

std::optional<Path> check_fire_once(const MarkingGraph& graph) {
  int transitions = 0;
  for (const Edge& e : graph.edges) transitions = std::max(transitions, e.transition + 1);
  const int n = graph.size();
  // parent[s]: predecessor of s in the search over states reached after a firing of t.
  std::vector<int> parent(n), via(n);
  for (int t = 0; t < transitions; ++t) {
    std::fill(parent.begin(), parent.end(), -2);
    std::deque<int> q;
    for (const Edge& e : graph.edges)
      if (e.transition == t && parent[e.target] == -2) {
        parent[e.target] = -1;
        via[e.target] = e.source;
        q.push_back(e.target);
      }
    while (!q.empty()) {
      int s = q.front();
      q.pop_front();
      for (const Edge& e : graph.out(s)) {
        if (e.transition == t) {
          std::vector<int> tail_states{e.target, s};
          std::vector<int> tail_transitions{t};
          int x = s;
          while (parent[x] >= 0) {
            tail_transitions.push_back(via[x]);
            x = parent[x];
            tail_states.push_back(x);
          }
          tail_transitions.push_back(t);
          Path w = path_to(graph, via[x]);
          w.states.insert(w.states.end(), tail_states.rbegin(), tail_states.rend());
          w.transitions.insert(w.transitions.end(), tail_transitions.rbegin(), tail_transitions.rend());
          return w;
        }
        if (parent[e.target] == -2) {
          parent[e.target] = s;
          via[e.target] = e.transition;
          q.push_back(e.target);
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Edge> check_monotone(const MarkingGraph& graph, const std::vector<int>& places) {
  for (const Edge& e : graph.edges)
    for (int p : places)
      if (graph.states[e.source][p] >= 1 && graph.states[e.target][p] < 1) return e;
  return std::nullopt;
}

std::string format_marking(const Gspn& net, const Marking& m) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (std::size_t p = 0; p < m.size(); ++p) {
    if (!m[p]) continue;
    if (!first) out << ", ";
    first = false;
    out << net.places[p].name << ":" << int(m[p]);
  }
  out << "}";
  return out.str();
}

}  // namespace dftgspn
