#pragma once

// Small sealed arenas built around one component and the throne room, small
// enough for exact search.
//
// Walls are bands of vertical pawn pairs along a diagonal: a white pawn on
// each light square of the band's line, a black pawn right above it. Every
// figure uses the same colouring for its inert pawns, so bands merge with
// the components without conflicts, and no bishop of either side can pass
// or capture through them.

#include <map>
#include <string>
#include <vector>

#include "ichess/rules.hpp"

namespace ichess {

struct Band {
    enum class Axis { S, U };  // s = file - rank constant, u = file + rank constant
    Axis axis = Axis::S;
    int line = 1;  // the white pawns' line, odd
    int from = 0;  // range of the other coordinate (u for an S band)
    int to = 0;

    friend bool operator==(const Band&, const Band&) = default;
};

// "s=15 u=13..61"
std::string to_string(const Band& b);

// Adds the band. Squares already holding the same pawn are kept; anything
// else in the way is a BuilderError.
void add_band(Position& p, const Band& b);

struct Composite {
    std::string name;
    Position position;  // playable, never a fragment
    std::vector<Band> walls;
    std::map<std::string, Square> marks;  // named squares used by the suites
    Square tempo_pawn;                    // white pawn with free pushes
    int tempo_moves = 0;
    Square black_tempo_pawn;  // same for Black where the composite has one
    int black_tempo_moves = 0;

    Square mark(const std::string& key) const;
};

// Squares reachable from `seed` by single diagonal steps over empty squares,
// or nullopt-like empty result when the walk leaves the position's bounding
// box (the seed is not sealed in).
std::vector<Square> sealed_region(const Position& p, Square seed);

// Moves available in `p` to pieces other than those on `active` squares,
// for both colours. Empty for a properly locked composite.
std::vector<Move> stray_moves(const Position& p, const std::vector<Square>& active);

// Throne room with a white tempo pawn on the w file (w2, six pushes),
// Black to move. Figure coordinates.
Composite throne_composite();

// Wing of g gates in figure coordinates, throne room above it with the door
// of every gate facing the blue entry diagonal, all sealed. Both sides get a
// tempo pawn (w2 for White, the black one on the file past it). Black to move
// with the black bishop on the first hallway square (r6).
// Marks: "start", "door<k>", "attack<k>", "guard<k>", "summon<k>",
// "post<k>" for k = 1 (bottom gate) .. g.
Composite wing_composite(unsigned g);

// Cannon of b shooters in figure coordinates. The front exit diagonal is a
// sealed pocket (f6 down to b2); below the lower wall lies the guards' area
// with the throne room, turned so that its blue diagonal runs through the
// hole behind shooter `aim`. Black to move.
// Marks: "front", "shooter<k>", "pawn<k>", "guard<k>", "hole<k>" (the black
// wall pawn that opens once the k-th shooter's pawn gets through).
Composite cannon_composite(unsigned b, unsigned aim = 1);

// Rook towers with the throne room placed where one released white bishop
// reaches the red diagonal, everything inside one ring of walls. The black
// light bishop's corridor is shut at "plug", five files right of the last
// key pawn: a blocked white pawn in the MatingBishop arena, a black pawn
// backed by a blocked pawn pair in the Channel arena.
//   MatingBishop: room on the down-left ray of the bishop behind the first
//     tower's mating bishop ("release", f15 at the figure origin).
//   Channel: room on the down-right diagonal through the corridor square in
//     front of the last tower's key pawn (q18 for the tower whose key pawn is
//     o21), for a white bishop that gets there after the black one is taken.
// A black bishop shut in a two-square pocket beside the room gives Black
// harmless spare moves. Black to move. Marks: "rook<t>", "guard<t>", "key<t>"
// for t = 0 .. r-1, "bishop", "mating", "release", "target", "plug",
// "entry", "shuffle".
enum class TowerRelease { MatingBishop, Channel };
Composite tower_composite(unsigned r, TowerRelease release, Square origin = {1, 1}, unsigned height = 8);

}  // namespace ichess
