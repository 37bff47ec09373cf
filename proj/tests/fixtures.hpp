#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dftgspn/galileo.hpp"

#ifndef DFTGSPN_FIXTURE_DIR
#error "DFTGSPN_FIXTURE_DIR must be defined"
#endif

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(DFTGSPN_FIXTURE_DIR) + "/" + name + ".dft"; }

inline std::string text(const std::string& name) {
  std::ifstream in(path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline dftgspn::Dft load(const std::string& name) {
  auto r = dftgspn::parse_galileo(text(name));
  if (!r.dft) throw std::runtime_error("fixture " + name + " does not parse");
  return *r.dft;
}

inline const char* const kAll[] = {"f1_or_before_pand", "f2_fdep_forwarding", "f3_shared_spare",
                                   "f4_mutual_fdep",    "f5_gate_trigger",    "f6_ill_formed",
                                   "pc_static",         "pc_switch",          "bike",
                                   "nested_modules",    "nested_spare",       "single_be"};

}  // namespace fixtures
