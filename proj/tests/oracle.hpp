#pragma once
// Test oracles written against the net definition only; they share no code
// with the library's enabling, firing, or numerical routines.

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "dftgspn/gspn.hpp"
#include "dftgspn/stochastics.hpp"

namespace oracle {

enum class Resolve { Min, Max };

/// Probability of ever marking `goal`, optimised over the choice between
/// partitions. Exhaustive recursion over markings; the net must not have
/// cycles in its reachable markings.
class Enumerator {
 public:
  Enumerator(const dftgspn::Gspn& net, int goal, Resolve mode) : net_(net), goal_(goal), mode_(mode) {}

  double run() {
    std::vector<int> m;
    for (const auto& p : net_.places) m.push_back(p.initial);
    return value(m);
  }

 private:
  bool concession(const dftgspn::Transition& t, const std::vector<int>& m) const {
    for (auto [p, w] : t.input)
      if (m[p] < w) return false;
    for (auto [p, w] : t.inhibitor)
      if (!(m[p] < w)) return false;
    return true;
  }

  std::vector<int> after(const dftgspn::Transition& t, std::vector<int> m) const {
    for (auto [p, w] : t.input) m[p] -= w;
    for (auto [p, w] : t.output) m[p] += w;
    return m;
  }

  double value(const std::vector<int>& m) {
    if (m[goal_] > 0) return 1.0;
    if (auto it = memo_.find(m); it != memo_.end()) {
      if (it->second < 0) throw std::runtime_error("oracle: cyclic marking graph");
      return it->second;
    }
    memo_[m] = -1.0;
    int best = -1;
    std::vector<const dftgspn::Transition*> live;
    for (const auto& t : net_.transitions)
      if (concession(t, m)) {
        if (t.priority > best) {
          best = t.priority;
          live.clear();
        }
        if (t.priority == best) live.push_back(&t);
      }
    double v = 0.0;
    if (!live.empty() && best > 0) {
      std::map<int, std::vector<const dftgspn::Transition*>> groups;
      for (auto* t : live) groups[t->partition].push_back(t);
      bool first = true;
      for (auto& [part, ts] : groups) {
        double total = 0, x = 0;
        for (auto* t : ts) total += t->weight;
        for (auto* t : ts) x += t->weight / total * value(after(*t, m));
        v = first ? x : (mode_ == Resolve::Min ? std::min(v, x) : std::max(v, x));
        first = false;
      }
    } else if (!live.empty()) {
      double total = 0;
      for (auto* t : live) total += t->weight;
      for (auto* t : live) v += t->weight / total * value(after(*t, m));
    }
    memo_[m] = v;
    return v;
  }

  const dftgspn::Gspn& net_;
  int goal_;
  Resolve mode_;
  std::map<std::vector<int>, double> memo_;
};

inline double reach(const dftgspn::Gspn& net, int goal, Resolve mode) { return Enumerator(net, goal, mode).run(); }

/// Absorption probability into goal states of a CTMC by a sparse linear solve
/// over the embedded jump chain.
inline double absorption(const dftgspn::Ctmc& c) {
  const int n = c.size();
  std::vector<int> idx(n, -1);
  int k = 0;
  for (int s = 0; s < n; ++s)
    if (!c.goal[s]) idx[s] = k++;
  Eigen::SparseMatrix<double> a(k, k);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
  std::vector<Eigen::Triplet<double>> entries;
  for (int s = 0; s < n; ++s) {
    if (c.goal[s]) continue;
    entries.emplace_back(idx[s], idx[s], 1.0);
    double exit = 0;
    for (auto [t, r] : c.rates[s]) exit += r;
    if (exit == 0) continue;
    for (auto [t, r] : c.rates[s]) {
      if (c.goal[t]) {
        b[idx[s]] += r / exit;
      } else {
        entries.emplace_back(idx[s], idx[t], -r / exit);
      }
    }
  }
  a.setFromTriplets(entries.begin(), entries.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw std::runtime_error("oracle: singular absorption system");
  Eigen::VectorXd x = lu.solve(b);
  double p = 0;
  for (int s = 0; s < n; ++s) p += c.initial[s] * (c.goal[s] ? 1.0 : x[idx[s]]);
  return p;
}

}  // namespace oracle
