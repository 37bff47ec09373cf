#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dftgspn/dft.hpp"
#include "dftgspn/gspn.hpp"

namespace dftgspn {

/// Priority of a template transition: a node's variable plus an offset.
/// node == -1 refers to the initialisation variable.
struct PriorityRef {
  int node = -1;
  int offset = 0;
};

using NamedArc = std::pair<std::string, int>;

struct TemplateTransition {
  std::string name;
  TransitionKind kind = TransitionKind::Immediate;
  double weight = 1.0;
  PriorityRef priority;
  std::vector<NamedArc> input;
  std::vector<NamedArc> output;
  std::vector<NamedArc> inhibitor;
  Role role = Role::Failure;
  std::string origin;
  std::string partition_group;  // transitions sharing a non-empty group share a partition

  int arcs() const { return static_cast<int>(input.size() + output.size() + inhibitor.size()); }
};

struct Template {
  std::vector<std::string> places;   // first-use order
  std::set<std::string> interface;   // places shared on merge
  std::map<std::string, int> initial;
  std::vector<TemplateTransition> transitions;

  void add_place(const std::string& name, bool is_interface, int tokens = 0);
  int auxiliary_places() const;
  int arcs(std::optional<Role> role = std::nullopt) const;
  int transition_count(std::optional<Role> role = std::nullopt) const;
};

std::string failed_place(const std::string& node);
std::string unavail_place(const std::string& node);
std::string active_place(const std::string& node);
std::string disabled_place(const std::string& node);

enum class Partitioning { AllInOne, Singletons };

Partitioning partitioning(Profile profile);
ClaimMode default_claim_mode(Profile profile);
/// Native PAND/POR variant of the profile (true: inclusive); nullopt when both are native.
std::optional<bool> native_inclusive(Profile profile);

struct TranslateOptions {
  std::optional<ClaimMode> claim_mode;    // overrides the node and profile default
  std::optional<ClaimOrder> claim_order;  // overrides the node
  bool strict_unavail = false;            // 1-bounded Unavail adaption
  bool ignore_profile_support = false;    // translate even if the profile lacks a feature
};

/// Failure behaviour of node v (no activation wiring).
Template template_for_node(const Dft& dft, int v, Profile profile, const TranslateOptions& options = {});
/// Activation propagation from gate v to its children; empty for BEs and dependencies.
Template activation_template(const Dft& dft, int v);
Template template_init(const Dft& dft);
/// Union over interface places, disjoint union otherwise, initial markings summed.
/// Throws std::logic_error on an auxiliary place collision.
Template merge_templates(const std::vector<Template>& templates);

enum class Relation { Less, LessEq, Equal };

struct PriorityConstraint {
  int lhs = 0;
  int rhs = 0;
  Relation relation = Relation::Less;
};

/// Variables 0..n-1 are the DFT nodes, variable n is the initialisation.
struct PriorityConstraintSet {
  std::vector<std::string> names;
  std::vector<PriorityConstraint> constraints;
  int init_variable() const { return static_cast<int>(names.size()) - 1; }
};

PriorityConstraintSet generate_priority_constraints(const Dft& dft, Profile profile);

struct PrioritySolution {
  std::vector<int> values;  // empty when unsatisfiable
  std::vector<int> cycle;   // variables along a cycle with a strict edge, first == last
  bool ok() const { return !values.empty(); }
};

PrioritySolution solve_priorities(const PriorityConstraintSet& constraints);
bool satisfies(const PriorityConstraintSet& constraints, const std::vector<int>& values);
std::string describe_cycle(const PriorityConstraintSet& constraints, const std::vector<int>& cycle);

class TranslationError : public std::runtime_error {
 public:
  TranslationError(const std::string& what, ValidationReport report, std::vector<int> cycle = {})
      : std::runtime_error(what), report(std::move(report)), cycle(std::move(cycle)) {}
  ValidationReport report;
  std::vector<int> cycle;  // node ids, for unsatisfiable priorities
};

struct Translation {
  Gspn net;
  Template symbolic;
  std::vector<int> priorities;  // per node, then init
  ValidationReport report;      // warnings
  std::vector<int> monotone_places;  // Failed, Active, Unavail of every node
  std::vector<int> unavail_places;
  std::vector<int> counter_places;   // Disabled places under SEQ/MUTEX and VOT Collect places
};

/// Throws TranslationError for unsupported features, conventional-restriction
/// errors, or unsatisfiable priorities.
Translation translate(const Dft& dft, Profile profile, const TranslateOptions& options = {});

}  // namespace dftgspn
