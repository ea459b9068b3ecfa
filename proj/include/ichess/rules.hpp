#pragma once

// Chess on the Z x Z board.
//
// Rule set: standard piece movement, no castling, no en passant, no
// promotion, no pawn double-step, no move-count or repetition draws. White
// pawns move toward +rank, black pawns toward -rank.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ichess/error.hpp"

namespace ichess {

enum class Color : std::uint8_t { White = 0, Black = 1 };

constexpr Color opposite(Color c) noexcept { return c == Color::White ? Color::Black : Color::White; }
constexpr int pawn_direction(Color c) noexcept { return c == Color::White ? 1 : -1; }
const char* to_string(Color c) noexcept;

enum class Kind : std::uint8_t { King, Queen, Rook, Bishop, Knight, Pawn };

struct Piece {
    Color color = Color::White;
    Kind kind = Kind::Pawn;

    // FEN letter, uppercase for White.
    char letter() const noexcept;
    static std::optional<Piece> from_letter(char c) noexcept;

    friend bool operator==(const Piece&, const Piece&) = default;
};

struct Offset {
    int df = 0;
    int dr = 0;
    friend bool operator==(const Offset&, const Offset&) = default;
};

struct Square {
    int file = 0;
    int rank = 0;

    // a1 is dark: a square is dark when file + rank is even.
    bool is_dark() const noexcept { return ((file + rank) & 1) == 0; }

    Square operator+(Offset o) const noexcept { return {file + o.df, rank + o.dr}; }
    Square& operator+=(Offset o) noexcept {
        file += o.df;
        rank += o.dr;
        return *this;
    }

    friend bool operator==(const Square&, const Square&) = default;
    friend auto operator<=>(const Square&, const Square&) = default;
};

// Files 1..26 print as a..z, anything else as "f<int>:" (e.g. "f30:12").
std::string file_name(int file);
std::string to_string(Square s);
// Parses what to_string produces. Throws ParseError.
Square parse_square(const std::string& text);

struct Move {
    Square from;
    Square to;
    Piece piece;
    std::optional<Piece> captured;

    friend bool operator==(const Move&, const Move&) = default;
};

// Deterministic move order: lexicographic on (from.file, from.rank, to.file, to.rank).
inline bool move_less(const Move& a, const Move& b) noexcept {
    return std::tie(a.from.file, a.from.rank, a.to.file, a.to.rank) <
           std::tie(b.from.file, b.from.rank, b.to.file, b.to.rank);
}

// Long algebraic rendering, e.g. "Bf7-q18", "e14xd15".
std::string to_string(const Move& m);

struct Bounds {
    int min_file = 0, max_file = -1, min_rank = 0, max_rank = -1;

    bool empty() const noexcept { return max_file < min_file; }
    bool contains(Square s) const noexcept {
        return s.file >= min_file && s.file <= max_file && s.rank >= min_rank && s.rank <= max_rank;
    }
    void include(Square s) noexcept;
    void include(const Bounds& b) noexcept;
    Bounds inflated(int margin) const noexcept {
        return {min_file - margin, max_file + margin, min_rank - margin, max_rank + margin};
    }
    bool intersects(const Bounds& b) const noexcept;
    friend bool operator==(const Bounds&, const Bounds&) = default;
};

// A finite piece map plus side to move. Value type.
class Position {
public:
    using Entry = std::pair<Square, Piece>;

    Position() = default;
    explicit Position(Color side_to_move) : side_(side_to_move) {}

    std::optional<Piece> at(Square s) const noexcept;
    const Piece* find(Square s) const noexcept;
    bool occupied(Square s) const noexcept { return find(s) != nullptr; }

    // Places a piece, replacing whatever stood there.
    void put(Square s, Piece p);
    // Places a piece; throws BuilderError if the square is taken.
    void put_new(Square s, Piece p);
    void remove(Square s);

    const std::vector<Entry>& pieces() const noexcept { return pieces_; }
    std::size_t size() const noexcept { return pieces_.size(); }

    Color side_to_move() const noexcept { return side_; }
    void set_side_to_move(Color c) noexcept { side_ = c; }

    // Builders mark components that are not meant to be valued on their own.
    bool fragment() const noexcept { return fragment_; }
    void set_fragment(bool f) noexcept { fragment_ = f; }

    std::optional<Square> king(Color c) const noexcept;
    int count(Color c, Kind k) const noexcept;
    Bounds bounds() const noexcept;

    Position translated(Offset by) const;
    // Copies every piece of `other` into this position; overlapping squares
    // throw BuilderError.
    void merge(const Position& other);

    friend bool operator==(const Position&, const Position&) = default;

private:
    std::vector<Entry> pieces_;  // sorted by square
    Color side_ = Color::White;
    bool fragment_ = false;
};

struct MoveList {
    std::vector<Move> moves;
    // Some sliding ray was cut at ray_bound with further squares available.
    bool truncated_ray = false;
};

inline constexpr unsigned kDefaultRayBound = 64;

// Pseudo-legal moves of the piece on `s`, which must belong to the side to move.
MoveList piece_moves(const Position& p, Square s, unsigned ray_bound);
// Pseudo-legal moves filtered so the mover's king is not left in check.
// Requires a non-fragment position.
MoveList legal_moves(const Position& p, unsigned ray_bound);
// Legal moves of the piece on `s`.
MoveList legal_piece_moves(const Position& p, Square s, unsigned ray_bound);

bool is_legal(const Position& p, const Move& m);
// Applies a legal move; throws IllegalMove otherwise. Sliding moves are
// accepted at any distance.
Position apply_move(const Position& p, const Move& m);

// apply_move without the legality check, for moves taken from legal_moves.
Position apply_unchecked(const Position& p, const Move& m);

bool is_attacked(const Position& p, Square s, Color by);
bool is_check(const Position& p, Color c);
bool has_legal_move(const Position& p);
bool is_checkmate(const Position& p);
bool is_stalemate(const Position& p);

// Throws InvalidPosition unless `p` is a non-fragment with exactly one king
// per color and the side not to move is not in check.
void validate_playable(const Position& p);

}  // namespace ichess
