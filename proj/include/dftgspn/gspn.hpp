#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dftgspn {

/// Place index with multiplicity; an arc list is sorted by place.
using Arc = std::pair<int, int>;

enum class TransitionKind { Timed, Immediate };

/// Which template row a transition comes from.
enum class Role { Failure, Activation, Init };

struct Place {
  std::string name;
  int initial = 0;
};

struct Transition {
  std::string name;
  TransitionKind kind = TransitionKind::Immediate;
  double weight = 1.0;  // rate for timed transitions
  int priority = 0;     // 0 for timed, >= 1 for immediate
  int partition = -1;   // immediate only
  std::vector<Arc> input;
  std::vector<Arc> output;
  std::vector<Arc> inhibitor;  // tests m(p) < multiplicity
  Role role = Role::Failure;
  std::string origin;  // DFT node the transition was generated for, if any

  bool timed() const { return kind == TransitionKind::Timed; }
};

using Marking = std::vector<std::uint8_t>;

class Gspn {
 public:
  std::vector<Place> places;
  std::vector<Transition> transitions;

  int add_place(std::string name, int initial = 0);
  int add_transition(Transition t);
  std::optional<int> place(const std::string& name) const;
  std::optional<int> transition(const std::string& name) const;
  Marking initial_marking() const;
  int count(TransitionKind kind) const;
  int partitions() const;
  /// Throws std::invalid_argument when a structural invariant is broken.
  void check() const;
};

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ResourceLimit : public std::runtime_error {
 public:
  ResourceLimit(const std::string& what, std::size_t frontier)
      : std::runtime_error(what), frontier(frontier) {}
  std::size_t frontier;
};

std::vector<int> conceded(const Gspn& net, const Marking& m);
std::vector<int> enabled(const Gspn& net, const Marking& m);
Marking fire(const Gspn& net, const Marking& m, int t);

struct Edge {
  int source = 0;
  int transition = 0;
  int target = 0;
};

struct MarkingGraph {
  std::vector<Marking> states;
  std::vector<bool> vanishing;
  std::vector<Edge> edges;  // grouped by source, then transition id
  std::vector<std::size_t> first_edge;  // per state, plus sentinel
  int initial = 0;

  int size() const { return static_cast<int>(states.size()); }
  auto out(int s) const {
    struct Range {
      const Edge* b;
      const Edge* e;
      const Edge* begin() const { return b; }
      const Edge* end() const { return e; }
    };
    return Range{edges.data() + first_edge[s], edges.data() + first_edge[s + 1]};
  }
};

enum class Exploration { BreadthFirst, DepthFirst };

inline constexpr std::size_t kDefaultStateLimit = 1'000'000;

/// States are numbered canonically (breadth-first from the initial marking,
/// successors in transition-id order) whatever the exploration order.
/// Throws ResourceLimit when the limit is exceeded or a place overflows.
MarkingGraph build_marking_graph(const Gspn& net, std::size_t state_limit = kDefaultStateLimit,
                                 Exploration order = Exploration::BreadthFirst);

struct BoundWitness {
  int state = 0;
  int place = 0;
};

/// Checks m(p) <= k for the given places (all places if empty).
std::optional<BoundWitness> check_bounded(const MarkingGraph& graph, int k,
                                          const std::vector<int>& places = {});

struct Path {
  std::vector<int> states;
  std::vector<int> transitions;
};

/// A cycle of immediate edges, if any.
std::optional<Path> detect_time_trap(const Gspn& net, const MarkingGraph& graph);

/// A path from the initial state firing some transition twice, if any.
std::optional<Path> check_fire_once(const MarkingGraph& graph);

/// An edge along which a marked place among `places` loses its last token.
std::optional<Edge> check_monotone(const MarkingGraph& graph, const std::vector<int>& places);

std::string format_marking(const Gspn& net, const Marking& m);

}  // namespace dftgspn
