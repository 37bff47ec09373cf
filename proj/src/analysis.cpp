#include "dftgspn/analysis.hpp"

namespace dftgspn {

AnalysisResult analyze(const Dft& dft, Profile profile, const AnalysisOptions& options) {
  const std::string goal = options.goal.empty() ? dft.node(dft.top).name : options.goal;
  if (!dft.find(goal)) throw AnalysisError("unknown goal node '" + goal + "'");

  Translation tr = translate(dft, profile, options.translate);
  AnalysisResult r;
  r.profile = profile;
  r.report = tr.report;
  r.places = static_cast<int>(tr.net.places.size());
  r.timed = tr.net.count(TransitionKind::Timed);
  r.immediate = tr.net.count(TransitionKind::Immediate);

  MarkingGraph graph = build_marking_graph(tr.net, options.state_limit);
  r.states = graph.size();
  for (bool v : graph.vanishing) r.vanishing += v;
  if (auto trap = detect_time_trap(tr.net, graph))
    throw AnalysisError("time-trap: cycle of immediate transitions through " +
                        format_marking(tr.net, graph.states[trap->states.front()]));

  MarkovAutomaton ma = extract_ma(graph, tr.net, marked(*tr.net.place(failed_place(goal))));
  r.deterministic = is_deterministic(ma);
  r.reach = reach_min_max(ma);
  try {
    r.unreliability = unreliability(eliminate_vanishing(ma), options.time);
    r.confluent = true;
  } catch (const AnalysisError&) {
    r.confluent = false;
  }
  return r;
}

}  // namespace dftgspn
