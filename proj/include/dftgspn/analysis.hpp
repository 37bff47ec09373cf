#pragma once

#include <optional>
#include <string>

#include "dftgspn/stochastics.hpp"
#include "dftgspn/translate.hpp"

namespace dftgspn {

struct AnalysisOptions {
  TranslateOptions translate;
  std::string goal;          // node whose Failed place is the goal; empty: top
  double time = 1.0;         // mission time for unreliability
  std::size_t state_limit = kDefaultStateLimit;
};

struct AnalysisResult {
  Profile profile = Profile::NewGspn;
  int places = 0;
  int timed = 0;
  int immediate = 0;
  int states = 0;
  int vanishing = 0;
  bool deterministic = false;  // at most one choice per vanishing state
  bool confluent = false;      // choices, if any, do not affect the outcome
  ReachBounds reach;
  std::optional<double> unreliability;  // confluent models only
  ValidationReport report;              // translation warnings
};

/// Translate, explore, and evaluate reachability of the goal's Failed place.
/// Throws TranslationError, ResourceLimit, or AnalysisError (time-trap, unknown goal).
AnalysisResult analyze(const Dft& dft, Profile profile, const AnalysisOptions& options = {});

}  // namespace dftgspn
