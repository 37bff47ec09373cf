#include "dftgspn/io.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace dftgspn {

namespace {

std::string number(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

const char* role_name(Role r) {
  switch (r) {
    case Role::Failure: return "failure";
    case Role::Activation: return "activation";
    case Role::Init: return "init";
  }
  return "failure";
}

}  // namespace

std::string export_pnml(const Gspn& net) {
  std::ostringstream o;
  const std::string tool = std::string("<toolspecific tool=\"") + kPnmlTool + "\" version=\"" + kPnmlToolVersion + "\">";
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<pnml xmlns=\"http://www.pnml.org/version-2009/grammar/pnml\">\n"
    << "  <net id=\"net\" type=\"http://www.pnml.org/version-2009/grammar/ptnet\">\n"
    << "    <page id=\"page\">\n";
  for (std::size_t i = 0; i < net.places.size(); ++i) {
    const Place& p = net.places[i];
    o << "      <place id=\"p" << i << "\">\n"
      << "        <name><text>" << xml_escape(p.name) << "</text></name>\n";
    if (p.initial) o << "        <initialMarking><text>" << p.initial << "</text></initialMarking>\n";
    o << "      </place>\n";
  }
  for (std::size_t i = 0; i < net.transitions.size(); ++i) {
    const Transition& t = net.transitions[i];
    o << "      <transition id=\"t" << i << "\">\n"
      << "        <name><text>" << xml_escape(t.name) << "</text></name>\n"
      << "        " << tool << "\n";
    if (t.timed()) {
      o << "          <kind>timed</kind>\n"
        << "          <rate>" << number(t.weight) << "</rate>\n";
    } else {
      o << "          <kind>immediate</kind>\n"
        << "          <weight>" << number(t.weight) << "</weight>\n"
        << "          <priority>" << t.priority << "</priority>\n"
        << "          <partition>" << t.partition << "</partition>\n";
    }
    o << "          <role>" << role_name(t.role) << "</role>\n";
    if (!t.origin.empty()) o << "          <origin>" << xml_escape(t.origin) << "</origin>\n";
    o << "        </toolspecific>\n"
      << "      </transition>\n";
  }
  std::size_t arc = 0;
  auto emit = [&](const std::string& src, const std::string& dst, int w, bool inhibitor) {
    o << "      <arc id=\"a" << arc++ << "\" source=\"" << src << "\" target=\"" << dst << "\">\n";
    if (w != 1) o << "        <inscription><text>" << w << "</text></inscription>\n";
    if (inhibitor) o << "        " << tool << "<type>inhibitor</type></toolspecific>\n";
    o << "      </arc>\n";
  };
  for (std::size_t i = 0; i < net.transitions.size(); ++i) {
    const Transition& t = net.transitions[i];
    const std::string tid = "t" + std::to_string(i);
    for (auto [p, w] : t.input) emit("p" + std::to_string(p), tid, w, false);
    for (auto [p, w] : t.inhibitor) emit("p" + std::to_string(p), tid, w, true);
    for (auto [p, w] : t.output) emit(tid, "p" + std::to_string(p), w, false);
  }
  o << "    </page>\n"
    << "  </net>\n"
    << "</pnml>\n";
  return o.str();
}

namespace {

using boost::property_tree::ptree;

std::string describe(const std::string& element, const ptree& node) {
  auto id = node.get_optional<std::string>("<xmlattr>.id");
  return element + (id ? " '" + *id + "'" : " (no id)");
}

const ptree* toolspecific(const ptree& node) {
  for (const auto& [key, child] : node)
    if (key == "toolspecific" && child.get("<xmlattr>.tool", "") == kPnmlTool) return &child;
  return nullptr;
}

int parse_int(const std::string& text, const std::string& where) {
  int v = 0;
  const char* b = text.data();
  const char* e = b + text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(*b))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(e[-1]))) --e;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) throw PnmlError(where + ": expected an integer, got '" + text + "'");
  return v;
}

double parse_double(const std::string& text, const std::string& where) {
  double v = 0;
  const char* b = text.data();
  const char* e = b + text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(*b))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(e[-1]))) --e;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) throw PnmlError(where + ": expected a number, got '" + text + "'");
  return v;
}

std::string text_of(const ptree& node, const std::string& path) {
  auto t = node.get_optional<std::string>(path);
  return t ? *t : std::string();
}

void collect(const ptree& page, std::vector<std::pair<std::string, const ptree*>>& out) {
  for (const auto& [key, child] : page) {
    if (key == "page") {
      collect(child, out);
    } else if (key == "place" || key == "transition" || key == "arc") {
      out.push_back({key, &child});
    }
  }
}

}  // namespace

Gspn import_pnml(std::istream& in) {
  ptree doc;
  try {
    boost::property_tree::read_xml(in, doc, boost::property_tree::xml_parser::trim_whitespace);
  } catch (const boost::property_tree::xml_parser_error& e) {
    throw PnmlError("malformed XML at line " + std::to_string(e.line()) + ": " + e.message());
  }
  auto root = doc.get_child_optional("pnml");
  if (!root) throw PnmlError("missing <pnml> root element");
  auto net_node = root->get_child_optional("net");
  if (!net_node) throw PnmlError("pnml: missing <net> element");

  std::vector<std::pair<std::string, const ptree*>> elements;
  collect(*net_node, elements);

  Gspn net;
  std::map<std::string, int> place_ids, transition_ids;
  for (const auto& [kind, node] : elements) {
    if (kind != "place") continue;
    const std::string where = describe("place", *node);
    auto id = node->get_optional<std::string>("<xmlattr>.id");
    if (!id) throw PnmlError(where + ": missing id attribute");
    if (place_ids.count(*id) || transition_ids.count(*id)) throw PnmlError(where + ": duplicate id");
    std::string name = text_of(*node, "name.text");
    if (name.empty()) name = *id;
    int initial = 0;
    if (auto m = node->get_optional<std::string>("initialMarking.text")) initial = parse_int(*m, where + " initialMarking");
    if (initial < 0 || initial > 255) throw PnmlError(where + ": initial marking out of range");
    place_ids[*id] = net.add_place(name, initial);
  }
  for (const auto& [kind, node] : elements) {
    if (kind != "transition") continue;
    const std::string where = describe("transition", *node);
    auto id = node->get_optional<std::string>("<xmlattr>.id");
    if (!id) throw PnmlError(where + ": missing id attribute");
    if (place_ids.count(*id) || transition_ids.count(*id)) throw PnmlError(where + ": duplicate id");
    Transition t;
    t.name = text_of(*node, "name.text");
    if (t.name.empty()) t.name = *id;
    const ptree* ts = toolspecific(*node);
    if (!ts) throw PnmlError(where + ": missing <toolspecific tool=\"" + std::string(kPnmlTool) + "\"> annotation");
    const std::string k = text_of(*ts, "kind");
    if (k == "timed") {
      t.kind = TransitionKind::Timed;
      auto rate = ts->get_optional<std::string>("rate");
      if (!rate) throw PnmlError(where + ": timed transition without <rate>");
      t.weight = parse_double(*rate, where + " rate");
    } else if (k == "immediate") {
      t.kind = TransitionKind::Immediate;
      auto prio = ts->get_optional<std::string>("priority");
      if (!prio) throw PnmlError(where + ": immediate transition without <priority>");
      t.priority = parse_int(*prio, where + " priority");
      auto part = ts->get_optional<std::string>("partition");
      if (!part) throw PnmlError(where + ": immediate transition without <partition>");
      t.partition = parse_int(*part, where + " partition");
      if (auto w = ts->get_optional<std::string>("weight")) t.weight = parse_double(*w, where + " weight");
    } else {
      throw PnmlError(where + ": <kind> must be 'timed' or 'immediate', got '" + k + "'");
    }
    const std::string role = text_of(*ts, "role");
    if (role.empty() || role == "failure") {
      t.role = Role::Failure;
    } else if (role == "activation") {
      t.role = Role::Activation;
    } else if (role == "init") {
      t.role = Role::Init;
    } else {
      throw PnmlError(where + ": unknown role '" + role + "'");
    }
    t.origin = text_of(*ts, "origin");
    transition_ids[*id] = static_cast<int>(net.transitions.size());
    net.transitions.push_back(std::move(t));
  }
  for (const auto& [kind, node] : elements) {
    if (kind != "arc") continue;
    const std::string where = describe("arc", *node);
    const std::string src = node->get("<xmlattr>.source", "");
    const std::string dst = node->get("<xmlattr>.target", "");
    int w = 1;
    if (auto m = node->get_optional<std::string>("inscription.text")) w = parse_int(*m, where + " inscription");
    if (w < 1) throw PnmlError(where + ": multiplicity must be positive");
    const ptree* ts = toolspecific(*node);
    const bool inhibitor = ts && text_of(*ts, "type") == "inhibitor";
    if (place_ids.count(src) && transition_ids.count(dst)) {
      Transition& t = net.transitions[transition_ids[dst]];
      (inhibitor ? t.inhibitor : t.input).push_back({place_ids[src], w});
    } else if (transition_ids.count(src) && place_ids.count(dst)) {
      if (inhibitor) throw PnmlError(where + ": inhibitor arc must lead from a place to a transition");
      net.transitions[transition_ids[src]].output.push_back({place_ids[dst], w});
    } else {
      throw PnmlError(where + ": source '" + src + "' and target '" + dst +
                      "' must be a place and a transition of this net");
    }
  }
  for (Transition& t : net.transitions)
    for (auto* arcs : {&t.input, &t.output, &t.inhibitor}) std::sort(arcs->begin(), arcs->end());
  try {
    net.check();
  } catch (const std::invalid_argument& e) {
    throw PnmlError(std::string("transition ") + e.what());
  }
  return net;
}

Gspn import_pnml_string(const std::string& text) {
  std::istringstream in(text);
  return import_pnml(in);
}

std::string export_dot(const Gspn& net) {
  std::ostringstream o;
  o << "digraph gspn {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < net.places.size(); ++i) {
    const Place& p = net.places[i];
    o << "  p" << i << " [shape=circle, label=\"" << dot_escape(p.name) << "\\n" << p.initial << "\"];\n";
  }
  for (std::size_t i = 0; i < net.transitions.size(); ++i) {
    const Transition& t = net.transitions[i];
    o << "  t" << i << " [shape=box, height=0.5, width=0.12, ";
    if (t.timed()) {
      o << "style=solid, xlabel=\"" << dot_escape(t.name) << " (" << number(t.weight) << ")\"";
    } else {
      o << "style=filled, fillcolor=black, xlabel=\"" << dot_escape(t.name) << " [" << t.priority << "]\"";
    }
    o << ", label=\"\"];\n";
  }
  auto mult = [](int w) { return w == 1 ? std::string() : ", label=\"" + std::to_string(w) + "\""; };
  for (std::size_t i = 0; i < net.transitions.size(); ++i) {
    const Transition& t = net.transitions[i];
    for (auto [p, w] : t.input) o << "  p" << p << " -> t" << i << " [arrowhead=normal" << mult(w) << "];\n";
    for (auto [p, w] : t.inhibitor) o << "  p" << p << " -> t" << i << " [arrowhead=odot" << mult(w) << "];\n";
    for (auto [p, w] : t.output) o << "  t" << i << " -> p" << p << " [arrowhead=normal" << mult(w) << "];\n";
  }
  o << "}\n";
  return o.str();
}

std::string export_marking_graph_dot(const Gspn& net, const MarkingGraph& graph) {
  std::ostringstream o;
  o << "digraph marking_graph {\n";
  for (int s = 0; s < graph.size(); ++s) {
    o << "  s" << s << " [shape=" << (graph.vanishing[s] ? "box, style=dashed" : "ellipse")
      << (s == graph.initial ? ", penwidth=2" : "") << ", label=\"" << s << ": "
      << dot_escape(format_marking(net, graph.states[s])) << "\"];\n";
  }
  for (const Edge& e : graph.edges)
    o << "  s" << e.source << " -> s" << e.target << " [label=\"" << dot_escape(net.transitions[e.transition].name)
      << "\"];\n";
  o << "}\n";
  return o.str();
}

std::string export_text(const Gspn& net) {
  std::ostringstream o;
  auto arcs = [&](const char* label, const std::vector<Arc>& list) {
    if (list.empty()) return;
    o << "    " << label << ":";
    for (auto [p, w] : list) {
      o << " " << net.places[p].name;
      if (w != 1) o << "*" << w;
    }
    o << "\n";
  };
  o << "places " << net.places.size() << "\n";
  for (const Place& p : net.places) o << "  " << p.name << " " << p.initial << "\n";
  o << "transitions " << net.transitions.size() << "\n";
  for (const Transition& t : net.transitions) {
    if (t.timed()) {
      o << "  timed " << t.name << " rate=" << number(t.weight);
    } else {
      o << "  immediate " << t.name << " priority=" << t.priority << " weight=" << number(t.weight)
        << " partition=" << t.partition;
    }
    o << " role=" << role_name(t.role);
    if (!t.origin.empty()) o << " origin=" << t.origin;
    o << "\n";
    arcs("in", t.input);
    arcs("inhibit", t.inhibitor);
    arcs("out", t.output);
  }
  return o.str();
}

bool isomorphic(const Gspn& a, const Gspn& b) {
  if (a.places.size() != b.places.size() || a.transitions.size() != b.transitions.size()) return false;
  std::vector<int> pmap(a.places.size(), -1);
  for (std::size_t i = 0; i < a.places.size(); ++i) {
    auto j = b.place(a.places[i].name);
    if (!j || b.places[*j].initial != a.places[i].initial) return false;
    pmap[i] = *j;
  }
  // Partition ids may be renamed; check that the relabelling is a bijection.
  std::map<int, int> part_ab, part_ba;
  for (const Transition& t : a.transitions) {
    auto j = b.transition(t.name);
    if (!j) return false;
    const Transition& u = b.transitions[*j];
    if (t.kind != u.kind || t.weight != u.weight || t.priority != u.priority || t.role != u.role ||
        t.origin != u.origin)
      return false;
    if (!t.timed()) {
      if (part_ab.emplace(t.partition, u.partition).first->second != u.partition ||
          part_ba.emplace(u.partition, t.partition).first->second != t.partition)
        return false;
    }
    auto mapped = [&](const std::vector<Arc>& list) {
      std::vector<Arc> out;
      for (auto [p, w] : list) out.push_back({pmap[p], w});
      std::sort(out.begin(), out.end());
      return out;
    };
    if (mapped(t.input) != u.input || mapped(t.output) != u.output || mapped(t.inhibitor) != u.inhibitor)
      return false;
  }
  return true;
}

}  // namespace dftgspn
