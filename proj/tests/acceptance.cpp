// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ichess/diagram.hpp"
#include "ichess/harness.hpp"
#include "ichess/ordinal.hpp"
#include "ichess/valuation.hpp"
#include "oracle.hpp"

using namespace ichess;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::map<std::string, ScenarioReport> reports;

void run_suite(const std::string& name) {
    SuiteOptions o;
    o.timing = true;
    for (ScenarioReport& r : find_suite(name)->run(o)) {
        std::cout << to_text(r) << std::flush;
        reports[r.id] = std::move(r);
    }
}

// Every listed scenario Confirmed, each within its limit.
Outcome scenarios(const std::vector<std::string>& ids, double limit_each, double limit_total) {
    Outcome out;
    double total = 0;
    for (const auto& id : ids) {
        const auto it = reports.find(id);
        if (it == reports.end()) {
            out.pass = false;
            out.detail += id + " missing; ";
            continue;
        }
        const double s = static_cast<double>(it->second.millis) / 1000.0;
        total += s;
        char buf[64];
        std::snprintf(buf, sizeof buf, " %.1fs", s);
        out.detail += id + " " + to_string(it->second.verdict) + buf + "; ";
        if (it->second.verdict != ScenarioReport::Verdict::Confirmed || s >= limit_each)
            out.pass = false;
    }
    if (total >= limit_total)
        out.pass = false;
    return out;
}

Ordinal random_ordinal(std::mt19937_64& rng, unsigned max_exp = 3) {
    std::vector<std::pair<unsigned, std::uint64_t>> raw;
    for (int e = static_cast<int>(max_exp); e >= 0; --e)
        if (rng() % 2 == 0)
            raw.emplace_back(static_cast<unsigned>(e), 1 + rng() % 9);
    return Ordinal::normalize(raw);
}

std::vector<std::pair<unsigned, std::uint64_t>> raw_terms(const Ordinal& a) {
    std::vector<std::pair<unsigned, std::uint64_t>> raw;
    for (const auto& t : a.terms())
        raw.emplace_back(t.exponent, t.coefficient);
    return raw;
}

Outcome ordinal_kernel() {
    const auto start = Clock::now();
    constexpr int kCases = 10000;
    std::mt19937_64 rng(20260901);
    int failures = 0, cases = 0;
    auto expect = [&](bool ok) {
        ++cases;
        failures += !ok;
    };
    for (int i = 0; i < kCases; ++i) {
        const Ordinal a = random_ordinal(rng), b = random_ordinal(rng), c = random_ordinal(rng);
        // canonical form
        expect(Ordinal::normalize(raw_terms(a)) == a);
        expect((compare(a, b) == Comparison::Equal) == (a.terms() == b.terms()));
        // associativity, monotonicity, distributivity
        expect(add(add(a, b), c) == add(a, add(b, c)));
        if (b < c)
            expect(add(a, b) < add(a, c));
        else if (c < b)
            expect(add(a, c) < add(a, b));
        expect(multiply(a, add(b, c)) == add(multiply(a, b), multiply(a, c)));
        // left absorption
        Ordinal limit = c.is_limit() ? c : add(c, Ordinal::omega());
        expect(add(Ordinal::natural(rng() % 1000000), limit) == limit);
    }
    // descent from w^2*k: each limit step w^e*c -> w^e*(c-1) + w^(e-1)*m, m <= 6
    for (int i = 0; i < kCases; ++i) {
        const std::uint64_t k = 1 + rng() % 4, m = 6;
        Ordinal v = Ordinal::omega_power(2, k);
        std::uint64_t steps = 0;
        bool ok = true;
        while (!v.is_zero() && ok) {
            auto raw = raw_terms(v);
            const unsigned e = raw.back().first;
            raw.back().second -= 1;
            if (e > 0)
                raw.emplace_back(e - 1, rng() % (m + 1));
            const Ordinal next = Ordinal::normalize(raw);
            ok = next < v && ++steps <= k * (1 + m * (1 + m));
            v = next;
        }
        expect(ok);
    }
    const bool products = multiply(Ordinal::omega_power(2), Ordinal::omega_power(2)) == Ordinal::omega_power(4) &&
                          multiply(Ordinal::omega(), Ordinal::omega_power(2)) == Ordinal::omega_power(3);
    const double s = seconds_since(start);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d property checks, %d failed; w^2*w^2 and w*w^2 %s; %.2fs", cases, failures,
                  products ? "exact" : "WRONG", s);
    return {failures == 0 && products && s < 10.0, buf};
}

// value_exact against plain minimax. Valued(k) must be an exact oracle mate
// in k. Unvalued, and Unknown (no mate found within the depth bound), must
// have no oracle mate within the same number of moves.
Outcome solver_oracle() {
    const auto start = Clock::now();
    std::mt19937_64 rng(424242);
    const testing::Oracle oracle{8};
    constexpr unsigned kDepth = 6;
    constexpr unsigned kHorizon = kDepth / 2;
    int checked = 0, valued = 0, unvalued = 0, unknown = 0, mismatches = 0, max_pieces = 0;
    while (checked < 200) {
        const auto p = testing::random_small_position(rng);
        if (!p)
            continue;
        ++checked;
        max_pieces = std::max(max_pieces, static_cast<int>(p->size()));
        const GameValue v = value_exact(*p, kDepth, 8, ValueOptions{10'000'000, 20'000});
        bool ok = false;
        if (v.is_valued() && v.finite()) {
            ++valued;
            const unsigned k = static_cast<unsigned>(*v.finite());
            ok = oracle.white_mates_within(*p, k) && (k == 0 || !oracle.white_mates_within(*p, k - 1));
        } else {
            (v.is_unvalued() ? unvalued : unknown) += 1;
            ok = !oracle.distance(*p, kHorizon);
        }
        if (!ok) {
            ++mismatches;
            std::cout << "mismatch: " << to_string(v) << "\n" << emit_diagram(*p);
        }
    }
    const double s = seconds_since(start);
    char buf[220];
    std::snprintf(buf, sizeof buf,
                  "%d positions (<= %d pieces): %d valued, %d unvalued, %d undecided within %u plies; %d mismatches; %.1fs",
                  checked, max_pieces, valued, unvalued, unknown, kDepth, mismatches, s);
    return {mismatches == 0 && valued > 0 && unvalued > 0 && max_pieces <= 10 && s < 600.0, buf};
}

}  // namespace

int main() {
    for (const auto& e : suite_registry())
        run_suite(e.name);

    struct Criterion {
        int number;
        std::string name;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria = {
        {1, "throne room lock", [] { return scenarios({"throne-room.lock"}, 1, 1); }},
        {2, "throne room mates", [] { return scenarios({"throne-room.red", "throne-room.blue"}, 5, 5); }},
        {3, "guard pursuit race", [] { return scenarios({"gateway.race"}, 120, 120); }},
        {4, "gateway counts", [] { return scenarios({"gateway.counts"}, 300, 300); }},
        {5, "cannon semantics", [] { return scenarios({"cannon.firing", "cannon.critical-line"}, 300, 300); }},
        {6, "rook tower opening", [] { return scenarios({"tower.opening"}, 60, 60); }},
        {7, "family values", [] { return scenarios({"tower.lift-family", "tower.nested-family"}, 600, 600); }},
        {8, "refutations",
         [] { return scenarios({"refutation.rook-takes-bishop", "refutation.pawn-descent"}, 300, 600); }},
        {9, "ordinal kernel", ordinal_kernel},
        {10, "solver oracle equivalence", solver_oracle},
    };

    int failed = 0;
    std::vector<std::string> lines;
    for (const auto& c : criteria) {
        const Outcome o = c.check();
        failed += !o.pass;
        lines.push_back("criterion " + std::to_string(c.number) + " (" + c.name + "): " + (o.pass ? "PASS" : "FAIL") +
                        "  " + o.detail);
    }
    std::cout << "\n";
    for (const auto& l : lines)
        std::cout << l << "\n";
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria pass\n";
    return failed == 0 ? 0 : 1;
}
