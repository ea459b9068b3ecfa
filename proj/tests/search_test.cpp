#include <gtest/gtest.h>

#include <random>

#include "ichess/search.hpp"
#include "test_support.hpp"

using namespace ichess;
using namespace ichess::testing;

namespace {

Position from_list(std::initializer_list<std::pair<const char*, char>> list, Color side = Color::White) {
    Position p(side);
    for (const auto& [s, c] : list)
        p.put(sq(s), pc(c));
    return p;
}

// Black king on e8 walled in by its own pawns, e9 left open.
Position boxed_king() {
    return from_list({{"e8", 'k'}, {"d7", 'p'}, {"e7", 'p'}, {"f7", 'p'}, {"d8", 'p'}, {"f8", 'p'},
                      {"d9", 'p'}, {"f9", 'p'}, {"a11", 'Q'}, {"a1", 'K'}});
}

Position random_position(std::mt19937_64& rng) {
    Position p(rng() % 2 ? Color::White : Color::Black);
    const char letters[] = "QRBNPqrbnp";
    p.put({static_cast<int>(rng() % 8), static_cast<int>(rng() % 8)}, pc('K'));
    for (int i = 0; i < 7; ++i) {
        const Square s{static_cast<int>(rng() % 8), static_cast<int>(rng() % 8)};
        if (!p.occupied(s))
            p.put(s, pc(letters[rng() % 10]));
    }
    Square k;
    do {
        k = {static_cast<int>(rng() % 8), static_cast<int>(rng() % 8)};
    } while (p.occupied(k));
    p.put(k, pc('k'));
    return p;
}

}  // namespace

TEST(SearchBoard, MakeUnmakeRestoresEverything) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const Position p = random_position(rng);
        SearchBoard b(p);
        const SearchKey k0 = b.key();
        const Bounds box0 = b.bounds();
        for (const Move& m : legal_moves(p, 12).moves) {
            SearchBoard::Undo u;
            b.make(m, u);
            EXPECT_EQ(b.to_position(), apply_unchecked(p, m));
            b.unmake(m, u);
            ASSERT_EQ(b.key(), k0);
            ASSERT_EQ(b.bounds(), box0);
            ASSERT_EQ(b.to_position(), p);
        }
    }
}

TEST(SearchBoard, KeyIgnoresTranslation) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 300; ++i) {
        const Position p = random_position(rng);
        const Offset d{static_cast<int>(rng() % 2000001) - 1000000, static_cast<int>(rng() % 2000001) - 1000000};
        EXPECT_EQ(SearchBoard(p).key(), SearchBoard(p.translated(d)).key());
        Position other = p;
        other.set_side_to_move(opposite(p.side_to_move()));
        EXPECT_NE(SearchBoard(p).key(), SearchBoard(other).key());
    }
}

TEST(SearchBoard, KeySeesPieceMoves) {
    const Position p = boxed_king();
    const SearchKey k = SearchBoard(p).key();
    for (const Move& m : legal_moves(p, 16).moves) {
        Position q = apply_unchecked(p, m);
        q.set_side_to_move(p.side_to_move());
        EXPECT_NE(SearchBoard(q).key(), k) << to_string(m);
    }
}

TEST(MateSearch, MateInOne) {
    MateSearch s(boxed_king(), Color::White);
    EXPECT_EQ(s.solve(3), 1u);
    const auto pv = s.principal_variation(1);
    ASSERT_EQ(pv.size(), 1u);
    EXPECT_EQ(pv[0].to, sq("e11"));
    EXPECT_EQ(s.mate_within(0), false);
}

TEST(MateSearch, AlreadyMated) {
    Position p = apply_move(boxed_king(), Move{sq("a11"), sq("e11"), pc('Q'), std::nullopt});
    MateSearch s(p, Color::White);
    EXPECT_EQ(s.solve(2), 0u);
}

TEST(MateSearch, StalemateIsNotMate) {
    const Position p = from_list({{"e8", 'k'}, {"f6", 'Q'}, {"a9", 'R'}, {"c8", 'K'}}, Color::Black);
    ASSERT_TRUE(is_stalemate(p));
    MateSearch s(p, Color::White);
    EXPECT_EQ(s.solve(2), std::nullopt);
    EXPECT_FALSE(s.stats().node_cap_hit);
}

TEST(MateSearch, NodeCap) {
    MateSearch s(from_list({{"a1", 'K'}, {"h8", 'k'}, {"d4", 'Q'}, {"e4", 'R'}}), Color::White, MateOptions{16, 50});
    EXPECT_EQ(s.solve(4), std::nullopt);
    EXPECT_TRUE(s.stats().node_cap_hit);
}

TEST(MateSearch, BlackAttacker) {
    // mirror of the boxed king
    const Position box = boxed_king();
    Position p(Color::Black);
    for (const auto& [s, piece] : box.pieces())
        p.put({s.file, -s.rank}, Piece{opposite(piece.color), piece.kind});
    MateSearch s(p, Color::Black);
    EXPECT_EQ(s.solve(2), 1u);
}

TEST(Unopposed, ThroneRoomBlueRoute) {
    Position p = load_figure(2);
    p.put(sq("c11"), pc('b'));
    EXPECT_EQ(unopposed_mate_search(p, Color::Black, 5, 64), 3u);
    EXPECT_EQ(unopposed_mate_search(p, Color::Black, 5, 200), 3u);
    EXPECT_EQ(unopposed_mate_search(p, Color::Black, 2, 64), std::nullopt);
}
