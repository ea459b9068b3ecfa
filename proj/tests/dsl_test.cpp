#include <gtest/gtest.h>

#include "ichess/diagram.hpp"
#include "ichess/dsl.hpp"
#include "ichess/error.hpp"
#include "test_support.hpp"

using namespace ichess;
using namespace ichess::testing;

namespace {

// Emits `built` over the golden file's box and compares byte for byte.
void expect_figure(int n, Position built) {
    const std::string golden = read_file("figures/fig" + std::to_string(n) + ".board");
    Bounds box;
    parse_diagram(golden, &box);
    built.set_side_to_move(Color::White);
    EXPECT_EQ(emit_diagram(crop(built, box), box), golden) << "figure " << n;
}

Position playable(Position p, Color side) {
    p.set_fragment(false);
    p.set_side_to_move(side);
    return p;
}

}  // namespace

TEST(Builders, ReproduceFigures) {
    expect_figure(2, build_throne_room());
    expect_figure(3, build_rook_towers(6));
    expect_figure(4, build_gateway_wing(3));
    expect_figure(5, build_cannon(3));
    expect_figure(6, build_compact_battery({6, 5, 5}));
}

TEST(Builders, ThroneRoomHasBothKingsAndNothingMoves) {
    const Position t = build_throne_room();
    EXPECT_TRUE(t.fragment());
    EXPECT_EQ(t.size(), load_figure(2).size());
    ASSERT_TRUE(t.king(Color::White) && t.king(Color::Black));
    for (Color c : {Color::White, Color::Black})
        EXPECT_TRUE(legal_moves(playable(t, c), 64).moves.empty());
}

TEST(Builders, TranslationEquivariant) {
    const Offset d{7, -3};
    const Square o{1 + d.df, 1 + d.dr};
    EXPECT_EQ(build_throne_room(o), build_throne_room().translated(d));
    for (unsigned n : {1u, 2u, 4u}) {
        EXPECT_EQ(build_gateway_wing(n, o), build_gateway_wing(n).translated(d));
        EXPECT_EQ(build_cannon(n, o), build_cannon(n).translated(d));
        EXPECT_EQ(build_rook_towers(n, o), build_rook_towers(n).translated(d));
    }
    EXPECT_EQ(build_compact_battery({3, 2}, o), build_compact_battery({3, 2}).translated(d));
}

TEST(Builders, RejectEmptyParameters) {
    EXPECT_THROW(build_gateway_wing(0), BuilderError);
    EXPECT_THROW(build_cannon(0), BuilderError);
    EXPECT_THROW(build_rook_towers(0), BuilderError);
    EXPECT_THROW(build_compact_battery({}), BuilderError);
    EXPECT_THROW(build_compact_battery({2, 0}), BuilderError);
}

TEST(Builders, WingGrowsByOneGatePerStep) {
    const std::size_t one = build_gateway_wing(1).size();
    const std::size_t step = build_gateway_wing(2).size() - one;
    EXPECT_GT(step, 0u);
    for (unsigned g = 3; g <= 6; ++g)
        EXPECT_EQ(build_gateway_wing(g).size(), one + (g - 1) * step);
    // the bottom gate stays put, new gates appear up the hallway
    const Position w2 = build_gateway_wing(2), w3 = build_gateway_wing(3);
    EXPECT_EQ(w2.at(sq("p8")), w3.at(sq("p8")));
    EXPECT_EQ(w3.at(sq("r10")), pc('P'));
}

TEST(Builders, CannonShapes) {
    for (unsigned b = 1; b <= 5; ++b) {
        const Position c = build_cannon(b);
        EXPECT_EQ(c.count(Color::Black, Kind::Bishop), static_cast<int>(2 * b + 3));
        // guard pawns on the file-minus-rank = 8 diagonal
        int guards = 0;
        for (const auto& [s, p] : c.pieces())
            guards += (p == pc('P') && s.file - s.rank == 8);
        EXPECT_EQ(guards, static_cast<int>(b));
    }
}

TEST(Builders, BatteryCannonMatchesCannonCore) {
    // Same bishops, capped pawns and guards once the fronts are aligned;
    // only wall pawns differ.
    for (unsigned b = 1; b <= 4; ++b) {
        const Position lone = build_cannon(b);
        const Position bat = build_compact_battery({b});
        const Square front_lone{7, 7};
        const Square front_bat{15 - static_cast<int>(b) - 2, 9};
        const Position moved = bat.translated({front_lone.file - front_bat.file, front_lone.rank - front_bat.rank});
        for (const Position* p : {&lone, &moved}) {
            const Position& other = p == &lone ? moved : lone;
            for (const auto& [s, piece] : p->pieces()) {
                const bool core = piece.kind == Kind::Bishop || s.file - s.rank == 8 ||
                                  (s.file - s.rank == -1 && s.file > front_lone.file);
                if (core) {
                    EXPECT_EQ(other.at(s), piece) << "b=" << b << " at " << to_string(s);
                } else if (other.at(s) != piece) {
                    EXPECT_EQ(piece.kind, Kind::Pawn);
                }
            }
        }
    }
}

TEST(Builders, TowerLayoutMatchesFigure) {
    const Position t = build_rook_towers(6);
    const char* keys[] = {"f12", "i15", "l18", "o21", "r24", "u27"};
    for (unsigned i = 0; i < 6; ++i) {
        const TowerLayout l = tower_layout(6, i);
        EXPECT_EQ(t.at(l.rook), pc('r'));
        EXPECT_EQ(t.at(l.guard_pawn), pc('p'));
        EXPECT_EQ(l.key_pawn, sq(keys[i]));
        EXPECT_EQ(t.at(l.key_pawn), pc('P'));
    }
    EXPECT_EQ(t.at(sq("d15")), pc('B'));
    EXPECT_EQ(t.count(Color::Black, Kind::Rook), 6);
    EXPECT_THROW(tower_layout(2, 2), BuilderError);
}

TEST(Builders, TowerCorridorsAreClosed) {
    const Position t = playable(build_rook_towers(2), Color::Black);
    const TowerLayout l = tower_layout(2, 1);
    // up to the lid pawn above the columns, which it may take
    int highest = l.rook.rank;
    for (const Move& m : legal_moves(t, 64).moves)
        if (m.from == l.rook)
            highest = std::max(highest, m.to.rank);
    EXPECT_EQ(highest, l.top + 1);
    EXPECT_EQ(t.at({l.rook.file, l.top + 2}), pc('p'));
}

TEST(Builders, OverlapIsAnError) {
    Position composite = build_throne_room();
    EXPECT_THROW(composite.merge(build_rook_towers(1, {3, -10})), BuilderError);
    EXPECT_NO_THROW(composite.merge(build_rook_towers(1, {40, 40})));
}

TEST(LineScript, ReadsPaperNotation) {
    const LineScript s = parse_line("1…Bq18 2.rxq18, 3.q19, 4.qxp20 12.oxn24 Rm{j} 13.lxm{j} 9.B22p21 8.Bpo20");
    ASSERT_EQ(s.moves.size(), 9u);
    EXPECT_EQ(s.moves[0].color, Color::Black);
    EXPECT_EQ(s.moves[0].piece, Kind::Bishop);
    EXPECT_EQ(s.moves[1].from_file, 18);
    EXPECT_TRUE(s.moves[1].capture);
    EXPECT_EQ(s.moves[5].color, Color::Black);
    EXPECT_EQ(s.moves[5].to_param, "j");
    EXPECT_EQ(s.moves[6].number, 13);
    EXPECT_EQ(s.moves[7].from_rank, 22);
    EXPECT_EQ(s.moves[8].from_file, 16);
}

TEST(LineScript, CommentsForcedMarksAndMateSigns) {
    const LineScript s = parse_line("# cannon\n1.Pj3 !forced Ph8 # push\n2.Pj4!forced Bh12#\n");
    ASSERT_EQ(s.moves.size(), 4u);
    EXPECT_TRUE(s.moves[0].forced);
    EXPECT_TRUE(s.moves[0].explicit_pawn);
    EXPECT_FALSE(s.moves[1].forced);
    EXPECT_TRUE(s.moves[2].forced);
    EXPECT_EQ(s.moves[3].to_rank, 12);
    EXPECT_THROW(parse_line("1.Zq9"), ParseError);
    EXPECT_THROW(parse_line("!forced"), ParseError);
    EXPECT_THROW(parse_line("3."), ParseError);
}

TEST(LineScript, TextRoundTrip) {
    for (const char* t : {"1...Bq18 2.rxq18 3.q19 12.oxn24 Rm@j 13.lxm@j", "1.Pj3!forced Ph8 2.f30:4xf31:5",
                          "5.B22p21 Bf7-q18"}) {
        const LineScript s = parse_line(t);
        EXPECT_EQ(parse_line(to_text(s)), s) << t;
    }
}

TEST(LineScript, EmptyScriptGivesStartOnly) {
    const Position t = playable(build_throne_room(), Color::White);
    EXPECT_EQ(replay_positions(t, parse_line("  # nothing\n")), std::vector<Position>{t});
}

TEST(LineScript, TowerOpeningReplays) {
    // The opening line for the fourth tower, in the drawing's coordinates.
    const Position t = playable(build_rook_towers(6), Color::Black);
    const LineScript s = parse_line(read_file("lines/tower_opening.line"));
    for (int j : {30, 37}) {
        ReplayOptions opts;
        opts.bindings["j"] = j;
        const auto r = replay(t, s, opts);
        ASSERT_EQ(r.moves.size(), 14u);
        EXPECT_EQ(r.positions.back().at({13, j}), pc('P'));
        EXPECT_FALSE(r.positions.back().occupied({12, j - 1}));
        EXPECT_EQ(r.after_pass.size(), 10u);
    }
}

TEST(LineScript, ReplayErrorsNameTheHalfMove) {
    const Position t = playable(build_rook_towers(6), Color::Black);
    try {
        replay(t, parse_line("1...Bq18 2.rxq18 3.q20"));
        FAIL();
    } catch (const ReplayError& e) {
        EXPECT_NE(std::string(e.what()).find("half-move 3 '3.q20'"), std::string::npos) << e.what();
    }
    EXPECT_THROW(replay(t, parse_line("1...Bq18 2.rxq18 12.oxn24 Rm@j")), ReplayError);
    EXPECT_THROW(replay(t, parse_line("1...Qm24")), ReplayError);
}

TEST(LineScript, AmbiguityIsReported) {
    Position p(Color::White);
    p.put(sq("a1"), pc('K'));
    p.put(sq("h8"), pc('k'));
    p.put(sq("c3"), pc('R'));
    p.put(sq("g3"), pc('R'));
    EXPECT_THROW(replay(p, parse_line("1.Re3")), ReplayError);
    EXPECT_EQ(replay(p, parse_line("1.Rce3")).moves.front().from, sq("c3"));
}

TEST(LineScript, ScriptFromMovesRoundTrips) {
    Position p(Color::White);
    p.put(sq("a1"), pc('K'));
    p.put(sq("h8"), pc('k'));
    p.put(sq("c3"), pc('R'));
    p.put(sq("g3"), pc('R'));
    p.put(sq("d4"), pc('p'));
    p.put(sq("e2"), pc('P'));
    const std::vector<Move> moves = {
        Move{sq("c3"), sq("e3"), pc('R'), std::nullopt},
        Move{sq("h8"), sq("h7"), pc('k'), std::nullopt},
        Move{sq("e3"), sq("e4"), pc('R'), std::nullopt},
        Move{sq("d4"), sq("d3"), pc('p'), std::nullopt},
        Move{sq("e2"), sq("d3"), pc('P'), pc('p')},
    };
    const LineScript s = script_from_moves(p, moves);
    EXPECT_EQ(to_text(s), "1.Rce3 Kh7 2.Re4 d3 3.exd3");
    EXPECT_EQ(parse_line(to_text(s)), s);
    EXPECT_EQ(replay(p, s).moves, moves);
}
