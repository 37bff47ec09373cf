#include <gtest/gtest.h>

#include <algorithm>

#include "dftgspn/dft.hpp"

using namespace dftgspn;

namespace {

bool has_rule(const std::vector<Issue>& issues, const std::string& rule) {
  return std::any_of(issues.begin(), issues.end(), [&](const Issue& i) { return i.rule == rule; });
}

NodeType be(double l = 1.0, double dorm = 1.0) { return NodeType::be(l, l * dorm); }

}  // namespace

TEST(BuildDft, AssignsDenseIdsInDeclarationOrder) {
  auto r = build_dft({{"Z", NodeType::gate(Kind::AND), {"A", "B"}}, {"A", be(), {}}, {"B", be(), {}}}, "Z");
  ASSERT_TRUE(r.dft);
  EXPECT_EQ(r.dft->size(), 3);
  EXPECT_EQ(*r.dft->find("B"), 2);
  EXPECT_EQ(r.dft->top, 0);
  EXPECT_EQ(r.dft->node(0).children, (std::vector<int>{1, 2}));
  EXPECT_EQ(r.dft->max_children(), 2);
  EXPECT_EQ(r.dft->count(Kind::BE), 2);
}

TEST(BuildDft, ReportsEveryViolatedRule) {
  auto r = build_dft({{"Z", NodeType::gate(Kind::AND), {"A", "Q"}},
                      {"A", be(), {}},
                      {"A", be(), {}},
                      {"V", NodeType::vot(3), {"A"}},
                      {"E", NodeType::gate(Kind::OR), {}}},
                     "Z");
  EXPECT_FALSE(r.dft);
  EXPECT_TRUE(has_rule(r.report.errors, "wf-duplicate"));
  EXPECT_TRUE(has_rule(r.report.errors, "wf-dangling"));
  EXPECT_TRUE(has_rule(r.report.errors, "vot-k"));
  EXPECT_TRUE(has_rule(r.report.errors, "wf-gate-children"));
}

TEST(BuildDft, RejectsCycles) {
  auto r = build_dft({{"Z", NodeType::gate(Kind::AND), {"X", "A"}},
                      {"X", NodeType::gate(Kind::OR), {"Z"}},
                      {"A", be(), {}}},
                     "Z");
  EXPECT_FALSE(r.dft);
  EXPECT_TRUE(has_rule(r.report.errors, "wf-acyclic"));
}

TEST(BuildDft, RejectsBadRatesAndProbabilities) {
  auto r = build_dft({{"Z", NodeType::pdep(1.5), {"A", "B"}}, {"A", be(-1.0), {}}, {"B", be(), {}}}, "A");
  EXPECT_FALSE(r.dft);
  EXPECT_TRUE(has_rule(r.report.errors, "be-rate"));
  EXPECT_TRUE(has_rule(r.report.errors, "pdep-p"));
}

TEST(BuildDft, DependenciesNeedTriggerAndDependent) {
  auto r = build_dft({{"Z", NodeType::gate(Kind::AND), {"A"}}, {"D", NodeType::gate(Kind::FDEP), {"A"}},
                      {"A", be(), {}}},
                     "Z");
  EXPECT_FALSE(r.dft);
  EXPECT_TRUE(has_rule(r.report.errors, "dep-arity"));
}

TEST(BuildDft, TopAndEvidenceMustExist) {
  auto r = build_dft({{"A", be(), {}}}, "Nope", {"Ghost"});
  EXPECT_FALSE(r.dft);
  EXPECT_TRUE(has_rule(r.report.errors, "wf-top"));
}

TEST(BuildDft, RepeatedChildIsAnError) {
  auto r = build_dft({{"Z", NodeType::gate(Kind::AND), {"A", "A"}}, {"A", be(), {}}}, "Z");
  EXPECT_FALSE(r.dft);
  EXPECT_TRUE(has_rule(r.report.errors, "wf-repeated-child"));
}

TEST(Conventional, SharedSpareModulesMustBeDisjoint) {
  // Module of S1 is {A}; S2 claims A directly through an OR: overlapping.
  auto r = build_dft({{"Z", NodeType::gate(Kind::AND), {"S1", "S2"}},
                      {"S1", NodeType::spare(), {"P1", "A"}},
                      {"S2", NodeType::spare(), {"P2", "X"}},
                      {"X", NodeType::gate(Kind::OR), {"A", "B"}},
                      {"P1", be(), {}},
                      {"P2", be(), {}},
                      {"A", be(), {}},
                      {"B", be(), {}}},
                     "Z");
  ASSERT_TRUE(r.dft);
  ValidationReport v = validate_conventional(*r.dft);
  EXPECT_FALSE(v.ok());
}

TEST(Conventional, SeqChildrenAreRestricted) {
  auto r = build_dft({{"Z", NodeType::gate(Kind::AND), {"A", "X"}},
                      {"X", NodeType::gate(Kind::OR), {"B", "C"}},
                      {"Q", NodeType::gate(Kind::SEQ), {"A", "X"}},
                      {"A", be(), {}},
                      {"B", be(), {}},
                      {"C", be(), {}}},
                     "Z");
  ASSERT_TRUE(r.dft);
  EXPECT_TRUE(has_rule(validate_conventional(*r.dft).errors, "conv-2-seq-children"));
}

TEST(Conventional, SingleChildSpareWarns) {
  auto r = build_dft({{"S", NodeType::spare(), {"A"}}, {"A", be(), {}}}, "S");
  ASSERT_TRUE(r.dft);
  ValidationReport v = validate_conventional(*r.dft);
  EXPECT_TRUE(v.ok());
  EXPECT_TRUE(has_rule(v.warnings, "spare-single-child"));
}

TEST(Conventional, GateTriggerIsOnlyAWarning) {
  auto r = build_dft({{"Z", NodeType::pand(true), {"C", "B"}},
                      {"S", NodeType::gate(Kind::OR), {"A", "B"}},
                      {"D", NodeType::gate(Kind::FDEP), {"S", "C"}},
                      {"A", be(), {}},
                      {"B", be(), {}},
                      {"C", be(), {}}},
                     "Z");
  ASSERT_TRUE(r.dft);
  ValidationReport v = validate_conventional(*r.dft);
  EXPECT_TRUE(v.ok());
  EXPECT_TRUE(has_rule(v.warnings, "conv-3-dep-children"));
}

TEST(SpareModules, ModuleContainsSubtreeOfRepresentative) {
  auto r = build_dft({{"S", NodeType::spare(), {"P", "R"}},
                      {"P", be(), {}},
                      {"R", NodeType::gate(Kind::AND), {"A", "B"}},
                      {"A", be(), {}},
                      {"B", be(), {}}},
                     "S");
  ASSERT_TRUE(r.dft);
  SpareModules m = spare_modules(*r.dft);
  const int R = *r.dft->find("R");
  ASSERT_TRUE(m.modules.count(R));
  EXPECT_EQ(m.modules[R], (std::set<int>{R, *r.dft->find("A"), *r.dft->find("B")}));
  EXPECT_TRUE(m.overlaps.empty());
}

TEST(Profiles, NamesRoundTrip) {
  for (Profile p : kAllProfiles) EXPECT_EQ(parse_profile(profile_name(p)), p);
  EXPECT_EQ(parse_profile("new-gspn"), Profile::NewGspn);
  EXPECT_FALSE(parse_profile("gspn"));
}

TEST(Profiles, SupportMatrix) {
  auto shared = build_dft({{"Z", NodeType::gate(Kind::OR), {"S1", "S2"}},
                           {"S1", NodeType::spare(), {"A", "C"}},
                           {"S2", NodeType::spare(), {"B", "C"}},
                           {"A", be(), {}},
                           {"B", be(), {}},
                           {"C", be(), {}}},
                          "Z");
  ASSERT_TRUE(shared.dft);
  EXPECT_TRUE(check_profile_support(*shared.dft, Profile::NewGspn).ok());
  EXPECT_TRUE(has_rule(check_profile_support(*shared.dft, Profile::OriginalGspn).errors, "support-shared-spare"));

  auto por = build_dft({{"Z", NodeType::por(true), {"A", "B"}}, {"A", be(), {}}, {"B", be(), {}}}, "Z");
  ASSERT_TRUE(por.dft);
  EXPECT_TRUE(check_profile_support(*por.dft, Profile::NewGspn).ok());
  EXPECT_TRUE(check_profile_support(*por.dft, Profile::MonolithicMa).ok());
  EXPECT_TRUE(has_rule(check_profile_support(*por.dft, Profile::Ioimc).errors, "support-priority-gates"));

  auto pdep = build_dft({{"Z", NodeType::gate(Kind::AND), {"A", "B"}}, {"D", NodeType::pdep(0.3), {"A", "B"}},
                         {"A", be(), {}}, {"B", be(), {}}},
                        "Z");
  ASSERT_TRUE(pdep.dft);
  EXPECT_TRUE(check_profile_support(*pdep.dft, Profile::NewGspn).ok());
  EXPECT_TRUE(has_rule(check_profile_support(*pdep.dft, Profile::MonolithicCtmc).errors, "support-pdep"));
}

TEST(Isomorphism, ComparesStructureAndRates) {
  auto a = build_dft({{"Z", NodeType::gate(Kind::AND), {"A", "B"}}, {"A", be(1.0), {}}, {"B", be(2.0), {}}}, "Z");
  auto b = build_dft({{"A", be(1.0), {}}, {"B", be(2.0), {}}, {"Z", NodeType::gate(Kind::AND), {"A", "B"}}}, "Z");
  auto c = build_dft({{"Z", NodeType::gate(Kind::AND), {"B", "A"}}, {"A", be(1.0), {}}, {"B", be(2.0), {}}}, "Z");
  ASSERT_TRUE(a.dft && b.dft && c.dft);
  EXPECT_TRUE(isomorphic(*a.dft, *b.dft));
  EXPECT_FALSE(isomorphic(*a.dft, *c.dft));  // child order matters
}

TEST(Report, FormatsNodeNames) {
  auto r = build_dft({{"S", NodeType::spare(), {"A"}}, {"A", be(), {}}}, "S");
  ASSERT_TRUE(r.dft);
  const std::string text = validate_conventional(*r.dft).to_string(&*r.dft);
  EXPECT_NE(text.find("warning [spare-single-child] S:"), std::string::npos) << text;
}
