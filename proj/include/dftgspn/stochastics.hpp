#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dftgspn/gspn.hpp"

namespace dftgspn {

using GoalPredicate = std::function<bool(const Marking&)>;

/// Goal: the given place holds at least one token.
GoalPredicate marked(int place);

struct Choice {
  int partition = 0;
  std::vector<int> transitions;
  std::vector<std::pair<int, double>> distribution;  // target state, probability
};

struct MarkovianEdge {
  double rate = 0.0;
  int target = 0;
  int transition = 0;
};

struct MaState {
  bool vanishing = false;
  bool goal = false;
  std::vector<Choice> choices;       // vanishing states
  std::vector<MarkovianEdge> rates;  // tangible states
};

/// State i corresponds to state i of the marking graph it was extracted from.
struct MarkovAutomaton {
  std::vector<MaState> states;
  int initial = 0;

  int size() const { return static_cast<int>(states.size()); }
};

struct Ctmc {
  std::vector<int> origin;  // marking-graph state per CTMC state
  std::vector<std::vector<std::pair<int, double>>> rates;  // per state: target, rate
  std::vector<double> initial;
  std::vector<bool> goal;

  int size() const { return static_cast<int>(origin.size()); }
  double exit_rate(int s) const;
};

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

MarkovAutomaton extract_ma(const MarkingGraph& graph, const Gspn& net, const GoalPredicate& goal);

/// Every vanishing state offers exactly one choice.
bool is_deterministic(const MarkovAutomaton& ma);

/// Goal states (tangible or vanishing) collapse into one absorbing state; its
/// origin is the first of them. Nondeterminism is
/// accepted only when it is spurious: all choices of a vanishing state lead to
/// the same distribution over tangible or goal states. Throws AnalysisError
/// otherwise, and on cycles of immediate transitions.
Ctmc eliminate_vanishing(const MarkovAutomaton& ma);

struct ReachBounds {
  double min = 0.0;
  double max = 0.0;
  std::size_t iterations = 0;
};

/// Unbounded reachability of the goal, minimised and maximised over the
/// resolution of nondeterminism. Gauss-Seidel value iteration, threshold 1e-10.
ReachBounds reach_min_max(const MarkovAutomaton& ma, double epsilon = 1e-10,
                          std::size_t max_iterations = 1'000'000);

/// Probability that a goal state is occupied at time t (goal states absorbing).
/// Uniformization with truncation error below `epsilon`.
double unreliability(const Ctmc& ctmc, double t, double epsilon = 1e-9);

}  // namespace dftgspn
