#pragma once

// Component builders and the move-line notation.
//
// Every builder places its component so that origin {1,1} reproduces the
// coordinates of the corresponding figure transcription; any other origin is
// a pure translation. Outputs are marked as fragments.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ichess/rules.hpp"
#include "ichess/valuation.hpp"

namespace ichess {

inline constexpr Square kFigureOrigin{1, 1};

Position build_throne_room(Square origin = kFigureOrigin);

// g gates along the hallway diagonal, g >= 1.
Position build_gateway_wing(unsigned g, Square origin = kFigureOrigin);

// b pawn-capped shooters behind the front bishop, b >= 1.
Position build_cannon(unsigned b, Square origin = kFigureOrigin);

// r rook towers, r >= 1. Pawn columns run up to `height` ranks above the last
// rook and every corridor is shut by a blocked pawn pair above that. Two
// rookless towers are kept to the right so the last real tower has the
// pieces its opening line uses. Below height 6 their bishops get loose, so
// that is rejected. The column tops stay pushable.
inline constexpr unsigned kTowerHeight = 8;
Position build_rook_towers(unsigned r, Square origin = kFigureOrigin, unsigned height = kTowerHeight);

// Cannons stacked bottom to top with their back ends on one file.
Position build_compact_battery(const std::vector<unsigned>& sizes, Square origin = kFigureOrigin);

// Where the pieces of a tower sit, in the same coordinates as the builder.
struct TowerLayout {
    Square rook;        // d16 for tower 0 at the figure origin
    Square guard_pawn;  // black pawn one file right, one rank down
    Square key_pawn;    // white pawn that attacks the guard
    int top = 0;        // last rank of the pawn columns
};
TowerLayout tower_layout(unsigned r, unsigned tower, Square origin = kFigureOrigin,
                         unsigned height = kTowerHeight);

// ---------------------------------------------------------------- lines

struct HalfMove {
    std::optional<Color> color;  // from "N." / "N...", else inherited
    int number = 0;              // 0 when unnumbered
    Kind piece = Kind::Pawn;
    bool explicit_pawn = false;  // written with a leading 'P'
    std::optional<int> from_file;
    std::optional<int> from_rank;
    bool capture = false;
    int to_file = 0;
    std::optional<int> to_rank;
    std::string to_param;  // "j" for m@j or m{j}
    bool forced = false;
    std::string text;  // the token as written

    // Ignores `text`.
    friend bool operator==(const HalfMove& a, const HalfMove& b);
};

struct LineScript {
    std::vector<HalfMove> moves;
    friend bool operator==(const LineScript&, const LineScript&) = default;
};

// Tokens are separated by spaces or commas; "#" starting a token begins a
// comment running to the end of the line. Accepts "1.Bc10", "1...Bc11",
// "1…Bc11", "rxq18", "B22p21", "Bpo20", "Rm@j", "lxm{j}", "Bf7-q18",
// "Pxi6", optional "+"/"#" suffixes and "!forced" either attached or as the
// next token.
LineScript parse_line(std::string_view text);

// One token per half-move, numbered.
std::string to_text(const LineScript& s);

// Shortest unambiguous notation for a played sequence.
LineScript script_from_moves(const Position& start, const std::vector<Move>& moves);

struct ReplayOptions {
    std::map<std::string, int> bindings;
    unsigned ray_bound = kDefaultRayBound;
    ThreatOptions threat;  // used for "!forced" checks
};

struct ReplayResult {
    std::vector<Position> positions;  // start, then after every half-move
    std::vector<Move> moves;
    // Indices of half-moves preceded by a pass of the other side (the
    // notation skipped a move, i.e. it was played elsewhere).
    std::vector<std::size_t> after_pass;
    std::vector<ThreatResult> forced_checks;
};

// Plays the script. A half-move whose colour is not the side to move is
// preceded by a pass. Throws ReplayError naming the half-move when a token
// matches no legal move, several, or fails its "!forced" check.
ReplayResult replay(const Position& start, const LineScript& script, const ReplayOptions& opts = {});

// The same with the default options and only the positions.
std::vector<Position> replay_positions(const Position& start, const LineScript& script,
                                       const std::map<std::string, int>& bindings = {});

// The position after passing: same pieces, other side to move.
Position pass(const Position& p);

}  // namespace ichess
