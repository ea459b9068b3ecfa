#pragma once

// Move generation shared by Position and the search board. A board type B
// needs `const Piece* find(Square) const` and `Bounds bounds() const`.

#include <algorithm>
#include <array>
#include <cstdlib>

#include "ichess/rules.hpp"

namespace ichess::movegen {

inline constexpr std::array<Offset, 8> kKnightJumps{
    {{1, 2}, {2, 1}, {2, -1}, {1, -2}, {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}}};
inline constexpr std::array<Offset, 4> kOrthogonal{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
inline constexpr std::array<Offset, 4> kDiagonal{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
inline constexpr std::array<Offset, 8> kAllDirections{
    {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

// Steps needed along `d` from `s` to leave `b` for good (0 if already heading
// away outside it). Beyond that point every square is empty.
inline int steps_to_exit(const Bounds& b, Square s, Offset d) noexcept {
    auto axis = [](int v, int lo, int hi, int step) {
        if (step > 0)
            return v > hi ? 0 : hi - v + 1;
        if (step < 0)
            return v < lo ? 0 : v - lo + 1;
        return (v < lo || v > hi) ? 0 : 1 << 29;
    };
    if (b.empty())
        return 0;
    return std::min(axis(s.file, b.min_file, b.max_file, d.df), axis(s.rank, b.min_rank, b.max_rank, d.dr));
}

template <class Board>
bool is_attacked(const Board& board, Square target, Color by) {
    const int back = -pawn_direction(by);
    for (int df : {-1, 1}) {
        if (const Piece* p = board.find({target.file + df, target.rank + back});
            p && p->color == by && p->kind == Kind::Pawn)
            return true;
    }
    for (Offset o : kKnightJumps)
        if (const Piece* p = board.find(target + o); p && p->color == by && p->kind == Kind::Knight)
            return true;
    for (Offset o : kAllDirections)
        if (const Piece* p = board.find(target + o); p && p->color == by && p->kind == Kind::King)
            return true;
    const Bounds b = board.bounds();
    for (Offset d : kAllDirections) {
        const bool diagonal = d.df != 0 && d.dr != 0;
        const int limit = steps_to_exit(b, target, d);
        Square s = target;
        for (int k = 1; k <= limit; ++k) {
            s += d;
            const Piece* p = board.find(s);
            if (!p)
                continue;
            if (p->color == by &&
                (p->kind == Kind::Queen || (diagonal ? p->kind == Kind::Bishop : p->kind == Kind::Rook)))
                return true;
            break;
        }
    }
    return false;
}

// Appends pseudo-legal moves of `piece` on `from`. Returns true if some ray
// was truncated at ray_bound.
template <class Board, class Sink>
bool piece_moves(const Board& board, Square from, Piece piece, unsigned ray_bound, Sink&& sink) {
    auto try_step = [&](Square to) {
        const Piece* q = board.find(to);
        if (!q)
            sink(Move{from, to, piece, std::nullopt});
        else if (q->color != piece.color)
            sink(Move{from, to, piece, *q});
    };
    auto slide = [&](const auto& dirs) {
        bool truncated = false;
        const Bounds b = board.bounds();
        for (Offset d : dirs) {
            const int exit = steps_to_exit(b, from, d);
            Square to = from;
            unsigned k = 1;
            bool blocked = false;
            for (; k <= ray_bound; ++k) {
                to += d;
                if (static_cast<int>(k) > exit) {
                    sink(Move{from, to, piece, std::nullopt});
                    continue;
                }
                const Piece* q = board.find(to);
                if (!q) {
                    sink(Move{from, to, piece, std::nullopt});
                    continue;
                }
                if (q->color != piece.color)
                    sink(Move{from, to, piece, *q});
                blocked = true;
                break;
            }
            if (!blocked) {
                // Ray stopped by the bound: truncated unless the next square
                // holds a friendly piece.
                const Square next = to + d;
                const Piece* q = static_cast<int>(k) > exit ? nullptr : board.find(next);
                if (!q || q->color != piece.color)
                    truncated = true;
            }
        }
        return truncated;
    };

    switch (piece.kind) {
    case Kind::King:
        for (Offset o : kAllDirections)
            try_step(from + o);
        return false;
    case Kind::Knight:
        for (Offset o : kKnightJumps)
            try_step(from + o);
        return false;
    case Kind::Pawn: {
        const int dir = pawn_direction(piece.color);
        const Square ahead{from.file, from.rank + dir};
        if (!board.find(ahead))
            sink(Move{from, ahead, piece, std::nullopt});
        for (int df : {-1, 1}) {
            const Square to{from.file + df, from.rank + dir};
            if (const Piece* q = board.find(to); q && q->color != piece.color)
                sink(Move{from, to, piece, *q});
        }
        return false;
    }
    case Kind::Rook:
        return slide(kOrthogonal);
    case Kind::Bishop:
        return slide(kDiagonal);
    case Kind::Queen:
        return slide(kAllDirections);
    }
    return false;
}

// Geometric pseudo-legality with unbounded rays.
template <class Board>
bool is_pseudo_legal(const Board& board, const Move& m) {
    const Piece* p = board.find(m.from);
    if (!p || *p != m.piece || m.from == m.to)
        return false;
    const Piece* target = board.find(m.to);
    if (target && target->color == p->color)
        return false;
    if (target ? (!m.captured || *m.captured != *target) : m.captured.has_value())
        return false;
    const int df = m.to.file - m.from.file;
    const int dr = m.to.rank - m.from.rank;
    auto clear_path = [&](int sf, int sr) {
        const int n = std::max(std::abs(df), std::abs(dr));
        Square s = m.from;
        for (int k = 1; k < n; ++k) {
            s += Offset{sf, sr};
            if (board.find(s))
                return false;
        }
        return true;
    };
    auto sign = [](int v) { return (v > 0) - (v < 0); };
    switch (p->kind) {
    case Kind::King:
        return std::abs(df) <= 1 && std::abs(dr) <= 1;
    case Kind::Knight:
        return (std::abs(df) == 1 && std::abs(dr) == 2) || (std::abs(df) == 2 && std::abs(dr) == 1);
    case Kind::Pawn: {
        const int dir = pawn_direction(p->color);
        if (dr != dir)
            return false;
        if (df == 0)
            return target == nullptr;
        return std::abs(df) == 1 && target != nullptr;
    }
    case Kind::Rook:
        return (df == 0 || dr == 0) && clear_path(sign(df), sign(dr));
    case Kind::Bishop:
        return std::abs(df) == std::abs(dr) && clear_path(sign(df), sign(dr));
    case Kind::Queen:
        return (df == 0 || dr == 0 || std::abs(df) == std::abs(dr)) && clear_path(sign(df), sign(dr));
    }
    return false;
}

// Ray bound large enough that every distinct legality outcome of a sliding
// move is represented (squares beyond the bounds are interchangeable).
inline unsigned exhaustive_ray_bound(const Bounds& b) noexcept {
    if (b.empty())
        return 1;
    return static_cast<unsigned>(std::max(b.max_file - b.min_file, b.max_rank - b.min_rank) + 2);
}

}  // namespace ichess::movegen
