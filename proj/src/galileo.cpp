#include "dftgspn/galileo.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace dftgspn {

std::string format_diagnostic(const Diagnostic& d, std::string_view file) {
  std::ostringstream out;
  if (!file.empty()) out << file << ":";
  out << d.span.line << ":" << d.span.column << ": " << d.message;
  return out.str();
}

namespace {

struct Token {
  enum Type { Quoted, Word, Semi } type;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  // Returns false at end of input.
  bool next(Token& tok, std::vector<Diagnostic>& errors) {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
    if (pos_ >= text_.size()) return false;
    tok.span = {line_, col_, 0};
    const std::size_t start = pos_;
    char c = text_[pos_];
    if (c == ';') {
      advance();
      tok.type = Token::Semi;
      tok.text = ";";
    } else if (c == '"') {
      advance();
      std::string value;
      while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') {
        value += text_[pos_];
        advance();
      }
      if (pos_ >= text_.size() || text_[pos_] != '"') {
        errors.push_back({tok.span, "unterminated quoted name"});
      } else {
        advance();
      }
      tok.type = Token::Quoted;
      tok.text = std::move(value);
    } else {
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (d == ';' || d == '"' || d == ' ' || d == '\t' || d == '\n' || d == '\r' || d == '\f' || d == '\v')
          break;
        if (d == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') break;
        advance();
      }
      tok.type = Token::Word;
      tok.text = std::string(text_.substr(start, pos_ - start));
    }
    tok.span.length = static_cast<int>(pos_ - start);
    return true;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool plain_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

std::optional<double> parse_number(const std::string& s) {
  double v = 0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct Parser {
  std::vector<RawNode> raw;
  std::vector<SourceSpan> spans;  // per raw node
  std::map<std::string, std::size_t> defined;
  std::string top;
  SourceSpan top_span;
  bool has_top = false;
  std::vector<std::pair<std::string, SourceSpan>> evidence;
  std::vector<Diagnostic> errors;
  std::vector<Diagnostic> warnings;

  void error(const SourceSpan& s, std::string msg) { errors.push_back({s, std::move(msg)}); }

  bool name_of(const Token& t, std::string& out) {
    if (t.type == Token::Quoted) {
      out = t.text;
      return true;
    }
    if (t.type == Token::Word && plain_name(t.text)) {
      out = t.text;
      return true;
    }
    error(t.span, "expected a name, got '" + t.text + "'");
    return false;
  }

  void statement(const std::vector<Token>& s) {
    if (s.empty()) return;
    if (s[0].type == Token::Word && s[0].text == "toplevel") {
      if (s.size() != 2) {
        error(s[0].span, "toplevel takes exactly one name");
        return;
      }
      std::string name;
      if (!name_of(s[1], name)) return;
      if (has_top) {
        error(s[0].span, "duplicate toplevel declaration");
        return;
      }
      has_top = true;
      top = name;
      top_span = s[1].span;
      return;
    }
    std::string name;
    if (!name_of(s[0], name)) return;
    if (s.size() < 2) {
      error(s[0].span, "statement for \"" + name + "\" has no body");
      return;
    }
    const Token& head = s[1];
    if (head.type != Token::Word) {
      error(head.span, "expected a gate type or attribute after \"" + name + "\"");
      return;
    }
    if (head.text == "failed") {
      if (s.size() != 2) {
        error(s[2].span, "unexpected token after 'failed'");
        return;
      }
      evidence.push_back({name, s[0].span});
      return;
    }
    if (head.text.find('=') != std::string::npos && head.text.rfind("pdep=", 0) != 0) {
      basic_event(name, s);
      return;
    }
    gate(name, s);
  }

  bool define(const std::string& name, const SourceSpan& span) {
    if (defined.count(name)) {
      error(span, "duplicate definition of \"" + name + "\"");
      return false;
    }
    defined[name] = raw.size();
    return true;
  }

  void basic_event(const std::string& name, const std::vector<Token>& s) {
    std::optional<double> lambda, dorm;
    bool bad = false;
    for (std::size_t i = 1; i < s.size(); ++i) {
      const Token& t = s[i];
      auto eq = t.text.find('=');
      if (t.type != Token::Word || eq == std::string::npos) {
        error(t.span, "expected key=value attribute, got '" + t.text + "'");
        bad = true;
        continue;
      }
      std::string key = t.text.substr(0, eq);
      std::string value = t.text.substr(eq + 1);
      auto number = parse_number(value);
      if (!number) {
        error(t.span, "malformed number '" + value + "'");
        bad = true;
        continue;
      }
      if (key == "lambda") {
        lambda = number;
      } else if (key == "dorm") {
        dorm = number;
      } else {
        error(t.span, "unknown attribute '" + key + "'");
        bad = true;
      }
    }
    if (!lambda && !bad) {
      error(s[0].span, "basic event \"" + name + "\" has no lambda");
      bad = true;
    }
    if (bad || !define(name, s[0].span)) return;
    const double d = dorm.value_or(1.0);
    raw.push_back({name, NodeType::be(*lambda, d * *lambda), {}});
    spans.push_back(s[0].span);
  }

  void gate(const std::string& name, const std::vector<Token>& s) {
    const Token& head = s[1];
    const std::string& g = head.text;
    const int arity = static_cast<int>(s.size()) - 2;
    NodeType type;
    if (g == "and") {
      type = NodeType::gate(Kind::AND);
    } else if (g == "or") {
      type = NodeType::gate(Kind::OR);
    } else if (g == "pand" || g == "pand_incl") {
      type = NodeType::pand(true);
    } else if (g == "pand_excl") {
      type = NodeType::pand(false);
    } else if (g == "por" || g == "por_incl") {
      type = NodeType::por(true);
    } else if (g == "por_excl") {
      type = NodeType::por(false);
    } else if (g == "spare" || g == "wsp" || g == "csp" || g == "hsp") {
      type = NodeType::spare();
      type.spare_keyword = g == "spare" ? SpareKeyword::Spare
                           : g == "wsp" ? SpareKeyword::Wsp
                           : g == "csp" ? SpareKeyword::Csp
                                        : SpareKeyword::Hsp;
    } else if (g == "fdep") {
      type = NodeType::gate(Kind::FDEP);
    } else if (g.rfind("pdep=", 0) == 0) {
      auto p = parse_number(g.substr(5));
      if (!p) {
        error(head.span, "malformed number '" + g.substr(5) + "'");
        return;
      }
      if (*p < 0 || *p > 1) {
        error(head.span, "pdep probability outside [0,1]");
        return;
      }
      type = NodeType::pdep(*p);
    } else if (g == "seq") {
      type = NodeType::gate(Kind::SEQ);
    } else if (g == "mutex") {
      type = NodeType::gate(Kind::MUTEX);
    } else if (auto of = g.find("of"); of != std::string::npos && of > 0) {
      auto k = parse_int(std::string_view(g).substr(0, of));
      auto n = parse_int(std::string_view(g).substr(of + 2));
      if (!k || !n) {
        error(head.span, "unknown gate type '" + g + "'");
        return;
      }
      if (*k < 1 || *k > *n) {
        error(head.span, "vote threshold " + std::to_string(*k) + " exceeds " + std::to_string(*n));
        return;
      }
      if (*n != arity) {
        error(head.span, g + " gate has " + std::to_string(arity) + " children");
        return;
      }
      type = NodeType::vot(*k);
    } else {
      error(head.span, "unknown gate type '" + g + "'");
      return;
    }
    RawNode node{name, type, {}};
    for (std::size_t i = 2; i < s.size(); ++i) {
      std::string child;
      if (!name_of(s[i], child)) return;
      node.children.push_back(child);
    }
    if (!define(name, s[0].span)) return;
    raw.push_back(std::move(node));
    spans.push_back(s[0].span);
  }
};

}  // namespace

ParseResult parse_galileo(std::string_view text) {
  ParseResult result;
  Parser p;
  Lexer lexer(text);
  std::vector<Token> stmt;
  Token tok;
  while (lexer.next(tok, p.errors)) {
    if (tok.type == Token::Semi) {
      p.statement(stmt);
      stmt.clear();
    } else {
      stmt.push_back(tok);
    }
  }
  if (!stmt.empty()) {
    p.error(stmt.back().span, "missing ';' at end of input");
    p.statement(stmt);
  }
  if (!p.has_top) p.error({1, 1, 0}, "missing toplevel declaration");
  for (const auto& [name, span] : p.evidence)
    if (!p.defined.count(name)) p.error(span, "evidence \"" + name + "\" is not defined");

  result.warnings = p.warnings;
  if (!p.errors.empty()) {
    result.errors = std::move(p.errors);
    return result;
  }
  if (p.raw.empty()) {
    result.errors.push_back({p.top_span, "no nodes defined"});
    return result;
  }
  std::vector<std::string> evidence;
  for (const auto& e : p.evidence) evidence.push_back(e.first);
  BuildResult built = build_dft(p.raw, p.top, evidence);
  auto span_of = [&](int node) {
    if (node >= 0 && node < static_cast<int>(p.spans.size())) return p.spans[node];
    return p.top_span;
  };
  for (const Issue& i : built.report.errors) result.errors.push_back({span_of(i.node), i.message});
  for (const Issue& i : built.report.warnings) result.warnings.push_back({span_of(i.node), i.message});
  result.dft = std::move(built.dft);
  return result;
}

namespace {

std::string number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string gate_keyword(const NodeType& t) {
  switch (t.kind) {
    case Kind::AND: return "and";
    case Kind::OR: return "or";
    case Kind::PAND: return t.inclusive ? "pand" : "pand_excl";
    case Kind::POR: return t.inclusive ? "por" : "por_excl";
    case Kind::SPARE:
      switch (t.spare_keyword) {
        case SpareKeyword::Spare: return "spare";
        case SpareKeyword::Wsp: return "wsp";
        case SpareKeyword::Csp: return "csp";
        case SpareKeyword::Hsp: return "hsp";
      }
      return "wsp";
    case Kind::FDEP: return "fdep";
    case Kind::PDEP: return "pdep=" + number(t.probability);
    case Kind::SEQ: return "seq";
    case Kind::MUTEX: return "mutex";
    default: return "";
  }
}

}  // namespace

std::string serialize_galileo(const Dft& dft) {
  std::ostringstream out;
  auto q = [](const std::string& s) { return "\"" + s + "\""; };
  out << "toplevel " << q(dft.node(dft.top).name) << ";\n";
  for (const Node& n : dft.nodes) {
    out << q(n.name);
    const NodeType& t = n.type;
    if (t.kind == Kind::BE) {
      out << " lambda=" << number(t.active_rate) << " dorm=" << number(t.passive_rate / t.active_rate);
    } else if (t.kind == Kind::VOT) {
      out << " " << t.k << "of" << n.children.size();
    } else {
      out << " " << gate_keyword(t);
    }
    for (int c : n.children) out << " " << q(dft.node(c).name);
    out << ";\n";
  }
  for (int e : dft.evidence) out << q(dft.node(e).name) << " failed;\n";
  return out.str();
}

}  // namespace dftgspn
