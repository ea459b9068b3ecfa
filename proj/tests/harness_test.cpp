#include <gtest/gtest.h>

#include <set>

#include "ichess/harness.hpp"
#include "json.hpp"

using namespace ichess;

// Every claim has exactly one scenario, and suites report what they list.
TEST(Registry, CoversEveryClaim) {
    std::multiset<std::string> listed;
    for (const auto& e : suite_registry())
        listed.insert(e.scenarios.begin(), e.scenarios.end());
    const std::multiset<std::string> claims(claim_ids().begin(), claim_ids().end());
    EXPECT_EQ(listed, claims);
    for (const auto& id : claim_ids())
        EXPECT_EQ(listed.count(id), 1u) << id;
}

TEST(Registry, FindSuiteAcceptsBothSpellings) {
    ASSERT_NE(find_suite("throne-room"), nullptr);
    EXPECT_EQ(find_suite("throne_room"), find_suite("throne-room"));
    EXPECT_EQ(find_suite("ordinal_countdown")->name, "ordinal-countdown");
    EXPECT_EQ(find_suite("nope"), nullptr);
}

TEST(Suites, FastSuitesConfirmAndMatchTheirListing) {
    for (const char* name : {"throne-room", "ordinal-countdown"}) {
        const SuiteEntry* e = find_suite(name);
        const auto reports = e->run({});
        ASSERT_EQ(reports.size(), e->scenarios.size());
        for (std::size_t i = 0; i < reports.size(); ++i) {
            EXPECT_EQ(reports[i].id, e->scenarios[i]);
            EXPECT_FALSE(reports[i].anchor.empty());
            EXPECT_EQ(reports[i].verdict, ScenarioReport::Verdict::Confirmed) << to_text(reports[i]);
        }
        EXPECT_TRUE(all_confirmed(reports));
    }
}

TEST(Suites, JsonLinesAreDeterministic) {
    const auto a = suite_throne_room();
    const auto b = suite_throne_room();
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string line = to_json_line(a[i]);
        EXPECT_EQ(line, to_json_line(b[i]));
        EXPECT_EQ(line.find('\n'), std::string::npos);
        const auto j = nlohmann::json::parse(line);
        for (const char* key : {"id", "anchor", "verdict", "evidence", "nodes", "millis"})
            EXPECT_TRUE(j.contains(key)) << key;
        EXPECT_EQ(j["millis"], 0);
    }
}

TEST(Suites, VerdictRendering) {
    ScenarioReport r;
    r.id = "x.y";
    r.anchor = "x: y";
    EXPECT_FALSE(all_confirmed({r}));
    r.verdict = ScenarioReport::Verdict::Refuted;
    EXPECT_STREQ(to_string(r.verdict), "Refuted");
    EXPECT_NE(to_text(r).find("[Refuted] x.y"), std::string::npos);
    EXPECT_TRUE(all_confirmed({}));
}
