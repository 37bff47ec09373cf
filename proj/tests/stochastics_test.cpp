#include <gtest/gtest.h>

#include <cmath>

#include "dftgspn/analysis.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace dftgspn;

namespace {

struct Model {
  Translation tr;
  MarkingGraph graph;
  MarkovAutomaton ma;
};

Model model(const std::string& fixture, Profile p) {
  Dft d = fixtures::load(fixture);
  Model m{translate(d, p), {}, {}};
  m.graph = build_marking_graph(m.tr.net);
  m.ma = extract_ma(m.graph, m.tr.net, marked(*m.tr.net.place(failed_place(d.node(d.top).name))));
  return m;
}

Transition immediate(const std::string& name, int partition, std::vector<Arc> in, std::vector<Arc> out,
                     double weight = 1.0) {
  Transition t;
  t.name = name;
  t.priority = 1;
  t.partition = partition;
  t.weight = weight;
  t.input = std::move(in);
  t.output = std::move(out);
  return t;
}

}  // namespace

TEST(Stochastics, SingleBasicEventIsExponential) {
  Model m = model("single_be", Profile::NewGspn);
  Ctmc c = eliminate_vanishing(m.ma);
  for (double t : {0.1, 1.0, 3.0}) EXPECT_NEAR(unreliability(c, t), 1.0 - std::exp(-t), 1e-9) << t;
  EXPECT_NEAR(reach_min_max(m.ma).min, 1.0, 1e-10);
  EXPECT_DOUBLE_EQ(unreliability(c, 0.0), 0.0);
}

TEST(Stochastics, ReachabilityMatchesEnumerationOracle) {
  for (const char* name : {"f1_or_before_pand", "f2_fdep_forwarding", "f4_mutual_fdep", "pc_switch", "bike"}) {
    for (Profile p : kAllProfiles) {
      Dft d = fixtures::load(name);
      if (!check_profile_support(d, p).ok()) continue;
      Model m = model(name, p);
      const int goal = *m.tr.net.place(failed_place(d.node(d.top).name));
      ReachBounds b = reach_min_max(m.ma);
      EXPECT_NEAR(b.min, oracle::reach(m.tr.net, goal, oracle::Resolve::Min), 1e-8) << name << " " << profile_name(p);
      EXPECT_NEAR(b.max, oracle::reach(m.tr.net, goal, oracle::Resolve::Max), 1e-8) << name << " " << profile_name(p);
      EXPECT_LE(b.min, b.max + 1e-12);
    }
  }
}

TEST(Stochastics, EliminationAgreesWithLinearSolve) {
  for (const char* name : {"pc_static", "pc_switch", "bike", "nested_modules"}) {
    Model m = model(name, Profile::NewGspn);
    Ctmc c = eliminate_vanishing(m.ma);
    double total = 0;
    for (double x : c.initial) total += x;
    EXPECT_NEAR(total, 1.0, 1e-12) << name;
    EXPECT_NEAR(oracle::absorption(c), reach_min_max(m.ma).min, 1e-8) << name;
    // Long horizons converge towards the absorption probability.
    EXPECT_NEAR(unreliability(c, 200.0), oracle::absorption(c), 1e-6) << name;
  }
}

TEST(Stochastics, UnreliabilityIsMonotoneInTime) {
  Model m = model("bike", Profile::NewGspn);
  Ctmc c = eliminate_vanishing(m.ma);
  double last = 0;
  for (double t = 0.25; t <= 4.0; t += 0.25) {
    const double p = unreliability(c, t);
    EXPECT_GE(p, last - 1e-12);
    last = p;
  }
}

TEST(Stochastics, RaceUnderOrFirstPandIsNondeterministic) {
  Model m = model("f1_or_before_pand", Profile::Ioimc);
  EXPECT_FALSE(is_deterministic(m.ma));
  ReachBounds b = reach_min_max(m.ma);
  EXPECT_NEAR(b.min, 0.5, 1e-8);
  EXPECT_NEAR(b.max, 1.0, 1e-8);
  EXPECT_THROW(eliminate_vanishing(m.ma), AnalysisError);
  EXPECT_TRUE(is_deterministic(model("f1_or_before_pand", Profile::MonolithicCtmc).ma));
}

TEST(Stochastics, ConfluentChoicesAreEliminated) {
  // Two partitions firing independent transitions in either order reach the
  // same marking, so the choice is spurious.
  Gspn net;
  const int a = net.add_place("a", 1), b = net.add_place("b", 1), c = net.add_place("c"), d = net.add_place("d");
  const int g = net.add_place("g");
  net.add_transition(immediate("ac", 0, {{a, 1}}, {{c, 1}}));
  net.add_transition(immediate("bd", 1, {{b, 1}}, {{d, 1}}));
  Transition fin;
  fin.name = "fin";
  fin.kind = TransitionKind::Timed;
  fin.weight = 2.0;
  fin.input = {{c, 1}, {d, 1}};
  fin.output = {{g, 1}};
  net.add_transition(fin);
  MarkingGraph graph = build_marking_graph(net);
  MarkovAutomaton ma = extract_ma(graph, net, marked(g));
  EXPECT_FALSE(is_deterministic(ma));
  Ctmc ctmc = eliminate_vanishing(ma);
  EXPECT_NEAR(unreliability(ctmc, 1.0), 1.0 - std::exp(-2.0), 1e-9);
}

TEST(Stochastics, WeightsResolveConflictsWithinAPartition) {
  Gspn net;
  const int s = net.add_place("s", 1), g = net.add_place("g"), o = net.add_place("o");
  net.add_transition(immediate("win", 0, {{s, 1}}, {{g, 1}}, 3.0));
  net.add_transition(immediate("lose", 0, {{s, 1}}, {{o, 1}}, 1.0));
  MarkovAutomaton ma = extract_ma(build_marking_graph(net), net, marked(g));
  EXPECT_TRUE(is_deterministic(ma));
  ReachBounds b = reach_min_max(ma);
  EXPECT_NEAR(b.min, 0.75, 1e-10);
  EXPECT_NEAR(b.max, 0.75, 1e-10);
}

TEST(Analysis, ReportsDimensionsAndValues) {
  Dft d = fixtures::load("f1_or_before_pand");
  AnalysisOptions opt;
  opt.time = 50.0;
  AnalysisResult r = analyze(d, Profile::OriginalGspn, opt);
  EXPECT_TRUE(r.confluent);
  ASSERT_TRUE(r.unreliability);
  EXPECT_NEAR(*r.unreliability, 0.75, 1e-6);
  EXPECT_GT(r.states, r.vanishing);
  AnalysisResult io = analyze(d, Profile::Ioimc);
  EXPECT_FALSE(io.confluent);
  EXPECT_FALSE(io.unreliability);
  opt.goal = "Nope";
  EXPECT_THROW(analyze(d, Profile::NewGspn, opt), AnalysisError);
  opt.goal = "X";
  EXPECT_NEAR(analyze(d, Profile::NewGspn, opt).reach.min, 1.0, 1e-8);
}

TEST(Analysis, StateLimitPropagates) {
  AnalysisOptions opt;
  opt.state_limit = 3;
  EXPECT_THROW(analyze(fixtures::load("bike"), Profile::NewGspn, opt), ResourceLimit);
}
