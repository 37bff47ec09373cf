#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "dftgspn/gspn.hpp"

namespace dftgspn {

enum class ExportFormat { Pnml, Dot, TextualGspn, MarkingGraphDot };

/// Tool name used in <toolspecific tool="..."> elements.
inline constexpr const char* kPnmlTool = "dftgspn";
inline constexpr const char* kPnmlToolVersion = "1";

/// PNML place/transition net. Kind, rate or weight, priority, partition,
/// role and origin of transitions live in a toolspecific block, as does the
/// inhibitor marker on arcs. Ids are p<i>, t<i>, a<i> in net order.
std::string export_pnml(const Gspn& net);

class PnmlError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inverse of export_pnml. Throws PnmlError naming the offending element.
Gspn import_pnml(std::istream& in);
Gspn import_pnml_string(const std::string& text);

/// Places as circles with their token count, timed transitions as open bars,
/// immediate transitions as filled bars, inhibitor arcs with a circle head.
std::string export_dot(const Gspn& net);
std::string export_marking_graph_dot(const Gspn& net, const MarkingGraph& graph);
std::string export_text(const Gspn& net);

/// Same places and transitions under the name-based bijection.
bool isomorphic(const Gspn& a, const Gspn& b);

}  // namespace dftgspn
