#include "dftgspn/stochastics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace dftgspn {

GoalPredicate marked(int place) {
  return [place](const Marking& m) { return m[place] >= 1; };
}

double Ctmc::exit_rate(int s) const {
  double r = 0;
  for (auto [t, rate] : rates[s]) r += rate;
  return r;
}

MarkovAutomaton extract_ma(const MarkingGraph& graph, const Gspn& net, const GoalPredicate& goal) {
  MarkovAutomaton ma;
  ma.initial = graph.initial;
  ma.states.resize(graph.size());
  for (int s = 0; s < graph.size(); ++s) {
    MaState& st = ma.states[s];
    st.goal = goal(graph.states[s]);
    st.vanishing = graph.vanishing[s];
    if (st.vanishing) {
      std::map<int, std::vector<const Edge*>> by_partition;
      for (const Edge& e : graph.out(s)) by_partition[net.transitions[e.transition].partition].push_back(&e);
      for (const auto& [partition, edges] : by_partition) {
        Choice c;
        c.partition = partition;
        double total = 0;
        for (const Edge* e : edges) total += net.transitions[e->transition].weight;
        std::map<int, double> dist;
        for (const Edge* e : edges) {
          c.transitions.push_back(e->transition);
          dist[e->target] += net.transitions[e->transition].weight / total;
        }
        c.distribution.assign(dist.begin(), dist.end());
        st.choices.push_back(std::move(c));
      }
    } else {
      for (const Edge& e : graph.out(s))
        st.rates.push_back({net.transitions[e.transition].weight, e.target, e.transition});
    }
  }
  return ma;
}

bool is_deterministic(const MarkovAutomaton& ma) {
  for (const MaState& s : ma.states)
    if (s.vanishing && s.choices.size() != 1) return false;
  return true;
}

Ctmc eliminate_vanishing(const MarkovAutomaton& ma) {
  const int n = ma.size();
  auto kept = [&](int s) { return !ma.states[s].vanishing || ma.states[s].goal; };

  Ctmc ctmc;
  std::vector<int> index(n, -1);
  // Goal states are absorbing and indistinguishable, so they share one state.
  int goal_index = -1;
  for (int s = 0; s < n; ++s) {
    if (!kept(s)) continue;
    if (ma.states[s].goal && goal_index >= 0) {
      index[s] = goal_index;
      continue;
    }
    index[s] = ctmc.size();
    if (ma.states[s].goal) goal_index = index[s];
    ctmc.origin.push_back(s);
    ctmc.goal.push_back(ma.states[s].goal);
  }

  // Distribution over kept states reached through immediate firings. Every
  // choice of a vanishing state must lead to the same distribution.
  std::vector<std::map<int, double>> closure(n);
  std::vector<int> status(n, 0);
  auto resolve = [&](auto&& self, int s) -> const std::map<int, double>& {
    if (status[s] == 2) return closure[s];
    if (status[s] == 1) throw AnalysisError("cycle of immediate transitions (time-trap)");
    status[s] = 1;
    std::vector<std::map<int, double>> per_choice;
    for (const Choice& c : ma.states[s].choices) {
      std::map<int, double> dist;
      for (auto [t, p] : c.distribution) {
        if (kept(t)) {
          dist[index[t]] += p;
        } else {
          for (auto [k, q] : self(self, t)) dist[k] += p * q;
        }
      }
      per_choice.push_back(std::move(dist));
    }
    for (std::size_t i = 1; i < per_choice.size(); ++i) {
      bool same = per_choice[i].size() == per_choice[0].size();
      for (auto a = per_choice[0].begin(), b = per_choice[i].begin(); same && a != per_choice[0].end(); ++a, ++b)
        same = a->first == b->first && std::abs(a->second - b->second) <= 1e-12;
      if (!same)
        throw AnalysisError("nondeterministic choice in state " + std::to_string(s) +
                            " changes the outcome; use reach_min_max");
    }
    closure[s] = std::move(per_choice.front());
    status[s] = 2;
    return closure[s];
  };

  ctmc.rates.resize(ctmc.size());
  for (int i = 0; i < ctmc.size(); ++i) {
    const int s = ctmc.origin[i];
    if (ma.states[s].goal) continue;
    std::map<int, double> out;
    for (const MarkovianEdge& e : ma.states[s].rates) {
      if (kept(e.target)) {
        out[index[e.target]] += e.rate;
      } else {
        for (auto [k, q] : resolve(resolve, e.target)) out[k] += e.rate * q;
      }
    }
    out.erase(i);  // self-loops do not change the distribution
    ctmc.rates[i].assign(out.begin(), out.end());
  }
  ctmc.initial.assign(ctmc.size(), 0.0);
  if (kept(ma.initial)) {
    ctmc.initial[index[ma.initial]] = 1.0;
  } else {
    for (auto [k, q] : resolve(resolve, ma.initial)) ctmc.initial[k] += q;
  }
  return ctmc;
}

namespace {

double sweep(const MarkovAutomaton& ma, std::vector<double>& v, bool maximise) {
  double delta = 0;
  for (int s = ma.size() - 1; s >= 0; --s) {
    const MaState& st = ma.states[s];
    if (st.goal) continue;
    double value = 0;
    if (st.vanishing) {
      value = maximise ? 0.0 : 1.0;
      for (const Choice& c : st.choices) {
        double x = 0;
        for (auto [t, p] : c.distribution) x += p * v[t];
        value = maximise ? std::max(value, x) : std::min(value, x);
      }
    } else {
      double exit = 0;
      for (const MarkovianEdge& e : st.rates) exit += e.rate;
      if (exit > 0)
        for (const MarkovianEdge& e : st.rates) value += e.rate / exit * v[e.target];
    }
    delta = std::max(delta, std::abs(value - v[s]));
    v[s] = value;
  }
  return delta;
}

}  // namespace

ReachBounds reach_min_max(const MarkovAutomaton& ma, double epsilon, std::size_t max_iterations) {
  ReachBounds r;
  for (bool maximise : {false, true}) {
    std::vector<double> v(ma.size(), 0.0);
    for (int s = 0; s < ma.size(); ++s)
      if (ma.states[s].goal) v[s] = 1.0;
    std::size_t it = 0;
    while (it < max_iterations) {
      ++it;
      if (sweep(ma, v, maximise) < epsilon) break;
    }
    r.iterations += it;
    (maximise ? r.max : r.min) = ma.size() ? v[ma.initial] : 0.0;
  }
  return r;
}

double unreliability(const Ctmc& ctmc, double t, double epsilon) {
  const int n = ctmc.size();
  auto goal_mass = [&](const std::vector<double>& pi) {
    double g = 0;
    for (int s = 0; s < n; ++s)
      if (ctmc.goal[s]) g += pi[s];
    return g;
  };
  double max_exit = 0;
  for (int s = 0; s < n; ++s)
    if (!ctmc.goal[s]) max_exit = std::max(max_exit, ctmc.exit_rate(s));
  std::vector<double> pi = ctmc.initial;
  if (t <= 0 || max_exit == 0) return goal_mass(pi);

  const double q = 1.02 * max_exit;
  const double lambda = q * t;
  const double log_lambda = std::log(lambda);
  const double cap = lambda + 50.0 * std::sqrt(lambda) + 100.0;
  double result = 0, covered = 0;
  std::vector<double> next(n);
  for (double k = 0;; k += 1) {
    const double w = std::exp(-lambda + k * log_lambda - std::lgamma(k + 1));
    result += w * goal_mass(pi);
    covered += w;
    if ((k > lambda && 1.0 - covered <= epsilon) || k > cap) break;
    // pi <- pi (I + Q/q)
    for (int s = 0; s < n; ++s) next[s] = pi[s];
    for (int s = 0; s < n; ++s) {
      if (ctmc.goal[s] || pi[s] == 0) continue;
      for (auto [target, rate] : ctmc.rates[s]) {
        const double flow = pi[s] * rate / q;
        next[target] += flow;
        next[s] -= flow;
      }
    }
    pi.swap(next);
  }
  return std::min(1.0, result);
}

}  // namespace dftgspn
