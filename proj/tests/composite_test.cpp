#include <gtest/gtest.h>

#include <algorithm>

#include "ichess/composite.hpp"
#include "ichess/dsl.hpp"
#include "ichess/valuation.hpp"
#include "test_support.hpp"

using namespace ichess;
using namespace ichess::testing;

namespace {

LineScript tower_opening_without_lift() {
    LineScript line = parse_line(read_file("lines/tower_opening.line"));
    line.moves.resize(line.moves.size() - 2);
    return line;
}

}  // namespace

TEST(Band, RenderAndConflicts) {
    const Band b{Band::Axis::S, 15, 13, 17};
    EXPECT_EQ(to_string(b), "s=15 u=13..17");
    Position p;
    add_band(p, b);
    EXPECT_EQ(p.size(), 6u);
    add_band(p, b);  // same pawns again: kept
    EXPECT_EQ(p.size(), 6u);
    Position q;
    q.put({14, -1}, pc('B'));
    EXPECT_THROW(add_band(q, b), BuilderError);
}

TEST(Composite, ThroneRoomOnlyTempoMoves) {
    const Composite c = throne_composite();
    EXPECT_EQ(c.position.side_to_move(), Color::Black);
    EXPECT_FALSE(c.position.fragment());
    EXPECT_TRUE(stray_moves(c.position, {c.tempo_pawn}).empty());
}

TEST(Composite, WingIsSealed) {
    for (unsigned g = 1; g <= 3; ++g) {
        const Composite c = wing_composite(g);
        EXPECT_EQ(c.position.at(c.mark("start")), pc('b'));
        // the hallway bishop cannot walk out of the arena
        EXPECT_FALSE(sealed_region(c.position, c.mark("start") + Offset{1, 1}).empty()) << g;
        EXPECT_EQ(c.mark("door" + std::to_string(g)), (Square{18 - 6 * int(g - 1), 10 + 6 * int(g - 1)}));
    }
    EXPECT_THROW(wing_composite(0), BuilderError);
}

TEST(Composite, CannonAimMustBeAShooter) {
    EXPECT_NO_THROW(cannon_composite(3, 3));
    EXPECT_THROW(cannon_composite(2, 3), BuilderError);
    EXPECT_THROW(cannon_composite(2, 0), BuilderError);
    const Composite c = cannon_composite(3, 2);
    EXPECT_EQ(c.mark("shooter2"), sq("i9"));
    EXPECT_EQ(c.mark("guard3"), sq("l4"));
    EXPECT_EQ(c.mark("hole1"), sq("i7"));
}

TEST(Composite, TowerPlugDependsOnRelease) {
    const Composite mb = tower_composite(1, TowerRelease::MatingBishop);
    const Square p = mb.mark("plug");
    EXPECT_EQ(p, (mb.mark("key0") + Offset{5, 0}));
    EXPECT_EQ(mb.position.at(p), pc('P'));
    EXPECT_EQ(mb.position.at(p + Offset{0, 1}), pc('p'));

    const Composite ch = tower_composite(1, TowerRelease::Channel);
    const Square q = ch.mark("plug");
    EXPECT_EQ(ch.position.at(q), pc('p'));
    EXPECT_EQ(ch.position.at(q + Offset{1, 1}), pc('P'));
    EXPECT_EQ(ch.position.at(q + Offset{1, 2}), pc('p'));
}

TEST(Composite, TowerHeightBelowSixRejected) {
    EXPECT_THROW(build_rook_towers(1, kFigureOrigin, 5), BuilderError);
    EXPECT_THROW(tower_composite(1, TowerRelease::MatingBishop, {1, 1}, 5), BuilderError);
    EXPECT_NO_THROW(build_rook_towers(1, kFigureOrigin, 6));
}

TEST(Composite, TowerShuffleGivesBlackSpareMoves) {
    const Composite c = tower_composite(1, TowerRelease::MatingBishop);
    const Square s = c.mark("shuffle");
    ASSERT_EQ(c.position.at(s), pc('b'));
    Position p = c.position;
    // back and forth in its pocket, nothing else
    const MoveList ml = legal_piece_moves(p, s, kDefaultRayBound);
    ASSERT_EQ(ml.moves.size(), 1u);
    p = pass(apply_move(p, ml.moves[0]));
    const MoveList back = legal_piece_moves(p, ml.moves[0].to, kDefaultRayBound);
    ASSERT_EQ(back.moves.size(), 1u);
    EXPECT_EQ(back.moves[0].to, s);
}

TEST(Composite, TowerOpeningReplaysInTheArena) {
    const Composite c = tower_composite(1, TowerRelease::MatingBishop, {10, 10});
    const ReplayResult r = replay(c.position, tower_opening_without_lift());
    const Position& end = r.positions.back();
    EXPECT_EQ(end.side_to_move(), Color::Black);
    // the rook is attacked by the pawn below its column
    const Square rook = c.mark("rook0");
    EXPECT_EQ(end.at(rook), pc('r'));
    EXPECT_TRUE(is_attacked(end, rook, Color::White));
}

// Small rook lifts in the one-tower arena: lifting n squares gives n+2.
TEST(Composite, RookLiftMiniature) {
    const Composite c = tower_composite(1, TowerRelease::MatingBishop, {10, 10});
    const Position base = replay_positions(c.position, tower_opening_without_lift()).back();
    const Square rook = c.mark("rook0");
    for (int n : {1, 2}) {
        const Move lift{rook, rook + Offset{0, n}, pc('r'), std::nullopt};
        const GameValue v = value_exact(apply_move(base, lift), 40);
        EXPECT_EQ(v.finite(), static_cast<std::uint64_t>(n + 2)) << n << ": " << to_string(v);
    }
}
