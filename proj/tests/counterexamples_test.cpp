#include <gtest/gtest.h>

#include <pairwise/counterexamples.hpp>

namespace pairwise {
namespace {

const Finding* find(const FindingsReport& r, const std::string& name) {
  for (const Finding& f : r.findings) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

class FixtureReport : public ::testing::TestWithParam<std::string_view> {};

TEST_P(FixtureReport, EveryExpectedFindingPasses) {
  const FindingsReport report = run_report(GetParam());
  EXPECT_TRUE(report.overall());
  for (const Finding& f : report.findings) {
    if (!f.claim_check) {
      EXPECT_TRUE(f.pass) << f.name << ": expected " << f.expected << ", computed " << f.computed;
    }
  }
  EXPECT_EQ(fixture(GetParam()).expected_findings.size(), report.findings.size());
}

INSTANTIATE_TEST_SUITE_P(All, FixtureReport, ::testing::ValuesIn(fixture_names()),
                         [](const auto& info) { return std::string(info.param); });

TEST(Fixtures, A4ClaimCheckFailsWithNote) {
  const FindingsReport report = run_report("M4_additive");
  const Finding* claim = find(report, "claim_A4_inconsistent");
  ASSERT_NE(claim, nullptr);
  EXPECT_TRUE(claim->claim_check);
  EXPECT_FALSE(claim->pass);
  EXPECT_EQ(claim->computed, "consistent");
  EXPECT_FALSE(claim->note.empty());
  EXPECT_TRUE(report.overall());
}

TEST(Fixtures, UnknownName) {
  EXPECT_THROW(run_report("M9"), Error);
  EXPECT_THROW(fixture("nope"), Error);
}

TEST(Fixtures, JsonAndTextAgree) {
  const json doc = report_to_json(run_report("EXAM"));
  EXPECT_EQ(doc.at("overall"), "PASS");
  const std::string text = report_to_text(doc);
  for (const json& f : doc.at("findings")) {
    EXPECT_NE(text.find(f.at("name").get<std::string>()), std::string::npos);
  }
}

TEST(Fixtures, M2CountsAreReported) {
  const FindingsReport report = run_report("M2");
  ASSERT_FALSE(report.findings.empty());
  bool saw_27 = false;
  for (const Finding& f : report.findings) saw_27 = saw_27 || f.computed.find("27") != std::string::npos;
  EXPECT_TRUE(saw_27);
}

}  // namespace
}  // namespace pairwise
