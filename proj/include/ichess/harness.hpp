#pragma once

// Scripted verification suites and their reports.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ichess/rules.hpp"

namespace ichess {

struct ScenarioReport {
    enum class Verdict { Confirmed, Refuted, Inconclusive };

    std::string id;      // "throne-room.lock"
    std::string claim;   // what is being checked, in one sentence
    std::string anchor;  // the component and claim it belongs to
    Verdict verdict = Verdict::Inconclusive;
    // key/value pairs in insertion order: values, move lists, counts, walls
    std::vector<std::pair<std::string, std::string>> evidence;
    std::uint64_t nodes = 0;
    std::uint64_t millis = 0;  // 0 unless timing was requested
};

const char* to_string(ScenarioReport::Verdict v) noexcept;

struct SuiteOptions {
    unsigned depth = 40;  // plies
    unsigned ray_bound = kDefaultRayBound;
    std::uint64_t node_cap = 10'000'000;
    // Record wall-clock times. Off by default so reports are reproducible.
    bool timing = false;
};

using Suite = std::function<std::vector<ScenarioReport>(const SuiteOptions&)>;

struct SuiteEntry {
    std::string name;  // "throne-room"
    std::vector<std::string> scenarios;  // ids the suite reports, in order
    Suite run;
};

std::vector<ScenarioReport> suite_throne_room(const SuiteOptions& o = {});
std::vector<ScenarioReport> suite_gateway(const SuiteOptions& o = {});
std::vector<ScenarioReport> suite_cannon(const SuiteOptions& o = {});
std::vector<ScenarioReport> suite_rook_tower_mainline(const SuiteOptions& o = {});
std::vector<ScenarioReport> suite_refutations(const SuiteOptions& o = {});
std::vector<ScenarioReport> suite_ordinal_countdown(const SuiteOptions& o = {});

// All suites in report order.
const std::vector<SuiteEntry>& suite_registry();
// nullptr when unknown; accepts "throne-room" and "throne_room".
const SuiteEntry* find_suite(const std::string& name);

// Every claim the suites are expected to cover.
const std::vector<std::string>& claim_ids();

// One JSON object per line: id, anchor, claim, verdict, evidence, nodes, millis.
std::string to_json_line(const ScenarioReport& r);
std::string to_text(const ScenarioReport& r);

// Confirmed only when every report is.
bool all_confirmed(const std::vector<ScenarioReport>& rs);

}  // namespace ichess
