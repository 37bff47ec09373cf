#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dftgspn {

enum class Kind { BE, AND, OR, VOT, PAND, POR, SPARE, FDEP, PDEP, SEQ, MUTEX };

enum class ClaimOrder { Ordered, Arbitrary };
enum class ClaimMode { Early, LateLateFail, LateEarlyFail };

/// Galileo keyword a SPARE was declared with; kept for export fidelity.
enum class SpareKeyword { Spare, Wsp, Csp, Hsp };

struct NodeType {
  Kind kind = Kind::BE;
  double active_rate = 0.0;   // BE
  double passive_rate = 0.0;  // BE; zero means cold
  int k = 0;                  // VOT threshold
  bool inclusive = true;      // PAND, POR
  ClaimOrder claim_order = ClaimOrder::Ordered;
  std::optional<ClaimMode> claim_mode;  // unset: profile default
  SpareKeyword spare_keyword = SpareKeyword::Wsp;
  double probability = 1.0;  // PDEP; FDEP is fixed at 1

  static NodeType be(double active_rate, double passive_rate);
  static NodeType gate(Kind kind);
  static NodeType vot(int k);
  static NodeType pand(bool inclusive);
  static NodeType por(bool inclusive);
  static NodeType spare(ClaimOrder order = ClaimOrder::Ordered,
                        std::optional<ClaimMode> mode = std::nullopt);
  static NodeType pdep(double p);

  bool operator==(const NodeType&) const = default;
};

const char* kind_name(Kind kind);

bool is_dependency(Kind kind);  // FDEP, PDEP
bool is_restrictor(Kind kind);  // SEQ, MUTEX
/// Nodes that own a Failed place that can become marked.
bool can_fail(Kind kind);

struct Node {
  int id = 0;
  std::string name;
  NodeType type;
  std::vector<int> children;
};

class Dft {
 public:
  std::vector<Node> nodes;
  int top = 0;
  std::set<int> evidence;

  const Node& node(int id) const { return nodes.at(id); }
  std::optional<int> find(const std::string& name) const;
  int size() const { return static_cast<int>(nodes.size()); }
  /// Parents per node, in id order.
  std::vector<std::vector<int>> parents() const;
  int max_children() const;
  int count(Kind kind) const;
};

struct Issue {
  int node = -1;
  std::string rule;
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> errors;
  std::vector<Issue> warnings;

  bool ok() const { return errors.empty(); }
  void error(int node, std::string rule, std::string message);
  void warn(int node, std::string rule, std::string message);
  void append(const ValidationReport& other);
  std::string to_string(const Dft* dft = nullptr) const;
};

struct RawNode {
  std::string name;
  NodeType type;
  std::vector<std::string> children;
};

struct BuildResult {
  std::optional<Dft> dft;
  ValidationReport report;
};

/// Assigns dense ids in declaration order and checks well-formedness.
/// Every violated rule is reported; no Dft is returned if any error exists.
BuildResult build_dft(const std::vector<RawNode>& raw, const std::string& top,
                      const std::vector<std::string>& evidence = {});

ValidationReport validate_conventional(const Dft& dft);

struct SpareModules {
  std::map<int, std::set<int>> modules;  // representative -> members
  std::vector<std::pair<int, int>> overlaps;  // representative pairs
};

SpareModules spare_modules(const Dft& dft);

enum class Profile { MonolithicCtmc, Ioimc, MonolithicMa, OriginalGspn, NewGspn };

inline constexpr Profile kAllProfiles[] = {
    Profile::MonolithicCtmc, Profile::Ioimc, Profile::MonolithicMa,
    Profile::OriginalGspn, Profile::NewGspn};

/// Command line spelling: monolithic-ctmc, ioimc, monolithic-ma, gspn-orig, gspn-new.
const char* profile_name(Profile profile);
std::optional<Profile> parse_profile(const std::string& name);

ValidationReport check_profile_support(const Dft& dft, Profile profile);

/// Same node names, types, child order, top and evidence.
bool isomorphic(const Dft& a, const Dft& b, double rate_tolerance = 1e-12);

}  // namespace dftgspn
