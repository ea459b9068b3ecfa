#pragma once

// Game values for White.
//
// Valued(a) means White wins and a is the ordinal value; Unvalued means
// Black can draw or win; Unknown means the search bounds ran out first.
// Stalemate, either side, is a draw and so Unvalued.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ichess/ordinal.hpp"
#include "ichess/rules.hpp"
#include "ichess/search.hpp"

namespace ichess {

struct Diagnostics {
    std::uint64_t nodes = 0;
    bool truncated_ray = false;
    bool depth_exhausted = false;
    bool node_cap_hit = false;
    std::string note;
};

struct FamilySample;

struct GameValue {
    enum class Verdict { Valued, Unvalued, Unknown };

    Verdict verdict = Verdict::Unknown;
    Ordinal value;  // meaningful when Valued
    Diagnostics diag;
    std::string tag;                    // "family-evidence" for hint-validated values
    std::vector<FamilySample> samples;  // attached by value_family

    static GameValue valued(Ordinal v, Diagnostics d = {});
    static GameValue unvalued(Diagnostics d = {});
    static GameValue unknown(Diagnostics d = {});

    bool is_valued() const noexcept { return verdict == Verdict::Valued; }
    bool is_unvalued() const noexcept { return verdict == Verdict::Unvalued; }
    bool is_unknown() const noexcept { return verdict == Verdict::Unknown; }
    // Value as a natural when Valued with a finite ordinal.
    std::optional<std::uint64_t> finite() const noexcept;
};

struct FamilySample {
    std::uint64_t n = 0;
    GameValue value;
};

const char* to_string(GameValue::Verdict v) noexcept;
// "Valued(w*2 + 3)", "Unvalued", "Unknown".
std::string to_string(const GameValue& v);

struct ValueOptions {
    std::uint64_t node_cap = 10'000'000;
    // positions explored when trying to close the reachable graph
    std::size_t closed_graph_cap = 200'000;
};

// Exact value by forced-mate search up to depth_bound plies, then (if no mate
// is found) by retrograde analysis of the reachable graph when that graph is
// finite and free of truncated rays. Throws InvalidPosition on fragments or
// unplayable positions.
GameValue value_exact(const Position& p, unsigned depth_bound, unsigned ray_bound = kDefaultRayBound,
                      const ValueOptions& opts = {});

// n -> position, for unbounded Black choices.
struct PositionFamily {
    std::string parameter = "n";
    std::function<Position(std::uint64_t)> generate;
    std::vector<std::uint64_t> samples;
    // When set, every sample must be the result of one legal Black move from it.
    std::optional<Position> base;
};

using SampleEvaluator = std::function<GameValue(const Position&, std::uint64_t)>;

// Evaluates every sample and accepts `hint` as the value of the base when
// the sample values are Valued, strictly increasing, below the hint and of
// the shape beta + w^(e-1)*c(n) + (lower terms) with c(n) strictly
// increasing, where hint = beta + w^e. Throws HintRejected otherwise. The
// result is tagged "family-evidence" and carries the sample table.
GameValue value_family(const PositionFamily& f, const Ordinal& hint, const SampleEvaluator& evaluate);

// Evaluator running value_exact at the given bounds.
SampleEvaluator exact_evaluator(unsigned depth_bound, unsigned ray_bound = kDefaultRayBound,
                                const ValueOptions& opts = {});

// Fewest moves for `attacker` to mate if the other side passes every turn.
std::optional<unsigned> unopposed_mate_distance(const Position& p, Color attacker, unsigned bound,
                                                unsigned ray_bound = kDefaultRayBound);

struct ThreatOptions {
    unsigned bound = 6;  // threatening side's moves
    unsigned ray_bound = kDefaultRayBound;
    std::uint64_t node_cap = 20'000'000;
    // The designated progress move; when absent the answering side passes.
    std::optional<Move> progress_move;
    // Check every quiet move of the answering side instead of one progress move.
    bool all_quiet_moves = false;
};

struct ThreatResult {
    enum class Kind { Forced, NotForced, Unanswerable };
    Kind kind = Kind::NotForced;
    std::vector<Move> answers;  // replies that hold, sorted
    std::uint64_t nodes = 0;
    bool truncated_ray = false;
};

const char* to_string(ThreatResult::Kind k) noexcept;

// Classifies `threat`, made by the side to move in `before`. Forced: only the
// listed replies stop a mate within opts.bound. NotForced: the progress move
// (or a pass) holds too. Unanswerable: nothing holds. Throws BoundExhausted
// when the node cap is hit.
ThreatResult is_forced_reply(const Position& before, const Move& threat, const ThreatOptions& opts = {});

struct ChainOptions {
    ThreatOptions threat;
    unsigned max_length = 32;
    // Restricts which threatening moves are tried (all when empty).
    std::function<bool(const Position&, const Move&)> candidate;
    // When nonzero, a threat only extends the chain if after the answer the
    // answering side has no mate within this many moves: a threat that
    // walks into a lost race is not counted.
    unsigned safety_bound = 0;
};

struct ChainResult {
    unsigned length = 0;
    std::vector<Move> line;  // threat, answer, threat, answer, ...
    std::uint64_t nodes = 0;
};

// Longest run of consecutive Forced threats by `side` (to move in p), the
// other side always playing an answer.
ChainResult count_forced_chain(const Position& p, Color side, const ChainOptions& opts = {});

struct MainLineState {
    std::uint64_t r = 0;  // rook towers not yet activated
    std::uint64_t h = 0;  // White moves left in the current tower
    std::uint64_t b = 0;  // capped bishops left in the active cannon
    std::uint64_t g = 0;  // forced threats left for the current bishop
};

// w^3*r + w^2*h + w*b + g
Ordinal main_line_ordinal(const MainLineState& s);

struct StrategyEntry {
    Position position;  // White to move
    Move move;
    std::uint64_t value = 0;  // value before the move
};

// White's value-reducing strategy: for every White-to-move position reachable
// under it, the successor of least value (ties: lowest move in move_less
// order). Needs a finite Valued input from value_exact on the same position.
std::vector<StrategyEntry> extract_strategy(const Position& p, const GameValue& v, unsigned ray_bound = kDefaultRayBound);

struct SolveReport {
    GameValue value;
    std::vector<Move> principal_variation;
    Color first_mover = Color::White;
};

// Solves and, for finite values, records a principal variation.
SolveReport solve(const Position& p, unsigned depth_bound, unsigned ray_bound = kDefaultRayBound,
                  const ValueOptions& opts = {});

// Line notation for a move sequence starting with `first_mover` at move `number`:
// "1.Bc10" / "1...Bc11 2.Bq12".
std::string line_notation(const std::vector<Move>& moves, Color first_mover, int number = 1);

// Multi-line "key: value" report.
std::string format_report(const SolveReport& r);

}  // namespace ichess
