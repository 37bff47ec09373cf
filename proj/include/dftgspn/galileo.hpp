#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dftgspn/dft.hpp"

namespace dftgspn {

/// 1-based line and column of a token.
struct SourceSpan {
  int line = 1;
  int column = 1;
  int length = 0;
};

struct Diagnostic {
  SourceSpan span;
  std::string message;
};

std::string format_diagnostic(const Diagnostic& d, std::string_view file = "");

struct ParseResult {
  std::optional<Dft> dft;
  std::vector<Diagnostic> errors;
  std::vector<Diagnostic> warnings;
};

/// Galileo-style text. Statements end with ';', `//` starts a comment.
///   toplevel "Z";
///   "Z" pand "X" "B";          gate: and or KofN pand[_incl|_excl] por[_incl|_excl]
///                              spare wsp csp hsp fdep pdep=P seq mutex
///   "A" lambda=1.0 dorm=0.5;   basic event, passive rate = dorm * lambda
///   "A" failed;                evidence
ParseResult parse_galileo(std::string_view text);

std::string serialize_galileo(const Dft& dft);

}  // namespace dftgspn
