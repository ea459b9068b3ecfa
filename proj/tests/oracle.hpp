#pragma once

// Independent mate-distance oracle and a generator of small positions, used
// to cross-check value_exact.

#include <optional>
#include <random>

#include "ichess/rules.hpp"

namespace ichess::testing {

// Plain minimax over the rules module. No tables, no move ordering.
struct Oracle {
    unsigned ray_bound;

    bool white_mates_within(const Position& p, unsigned n) const {
        if (p.side_to_move() == Color::Black)
            return black_node(p, n);
        if (n == 0)
            return false;
        for (const Move& m : legal_moves(p, ray_bound).moves)
            if (black_node(apply_move(p, m), n - 1))
                return true;
        return false;
    }

    bool black_node(const Position& p, unsigned n) const {
        const MoveList ml = legal_moves(p, ray_bound);
        if (ml.moves.empty())
            return is_checkmate(p);
        if (n == 0)
            return false;
        for (const Move& m : ml.moves)
            if (!white_mates_within(apply_move(p, m), n))
                return false;
        return true;
    }

    std::optional<unsigned> distance(const Position& p, unsigned max) const {
        for (unsigned n = 0; n <= max; ++n)
            if (white_mates_within(p, n))
                return n;
        return std::nullopt;
    }
};

// At most 10 pieces in a 5x5 window: black king half-boxed by its own men,
// white king plus two to four attackers; every fourth position strips White
// down to the king.
inline std::optional<Position> random_small_position(std::mt19937_64& rng) {
    Position p(rng() % 3 ? Color::White : Color::Black);
    auto square = [&] { return Square{static_cast<int>(rng() % 5), static_cast<int>(rng() % 5)}; };
    const Square k{2, 2};
    p.put(k, Piece{Color::Black, Kind::King});
    int n = 1;
    for (int df = -1; df <= 1; ++df)
        for (int dr = -1; dr <= 1; ++dr) {
            if ((df || dr) && n < 7 && rng() % 2 == 0) {
                p.put({k.file + df, k.rank + dr}, Piece{Color::Black, rng() % 4 ? Kind::Pawn : Kind::Knight});
                ++n;
            }
        }
    Square wk = square();
    while (p.occupied(wk))
        wk = square();
    p.put(wk, Piece{Color::White, Kind::King});
    ++n;
    const Kind attackers[] = {Kind::Queen, Kind::Queen, Kind::Rook, Kind::Rook, Kind::Rook, Kind::Bishop, Kind::Knight, Kind::Pawn};
    const int count = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < count && n < 10; ++i) {
        const Square s = square();
        if (!p.occupied(s)) {
            p.put(s, Piece{Color::White, attackers[rng() % 8]});
            ++n;
        }
    }
    if (rng() % 4 == 0) {
        Position lone(p.side_to_move());
        for (const auto& [s, piece] : p.pieces())
            if (piece.color == Color::Black || piece.kind == Kind::King)
                lone.put(s, piece);
        p = lone;
    }
    try {
        validate_playable(p);
    } catch (const InvalidPosition&) {
        return std::nullopt;
    }
    return p;
}

}  // namespace ichess::testing
