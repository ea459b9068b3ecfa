#include "ichess/rules.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "ichess/movegen.hpp"

namespace ichess {

const char* to_string(Color c) noexcept { return c == Color::White ? "white" : "black"; }

char Piece::letter() const noexcept {
    static constexpr char kLetters[] = "KQRBNP";
    const char c = kLetters[static_cast<int>(kind)];
    return color == Color::White ? c : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

std::optional<Piece> Piece::from_letter(char c) noexcept {
    const Color color = std::isupper(static_cast<unsigned char>(c)) ? Color::White : Color::Black;
    switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'K': return Piece{color, Kind::King};
    case 'Q': return Piece{color, Kind::Queen};
    case 'R': return Piece{color, Kind::Rook};
    case 'B': return Piece{color, Kind::Bishop};
    case 'N': return Piece{color, Kind::Knight};
    case 'P': return Piece{color, Kind::Pawn};
    default: return std::nullopt;
    }
}

std::string file_name(int file) {
    if (file >= 1 && file <= 26)
        return std::string(1, static_cast<char>('a' + file - 1));
    return "f" + std::to_string(file) + ":";
}

std::string to_string(Square s) { return file_name(s.file) + std::to_string(s.rank); }

Square parse_square(const std::string& text) {
    auto fail = [&] { throw ParseError("bad square '" + text + "'"); };
    auto number = [&](std::size_t from, std::size_t to) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(text.data() + from, text.data() + to, v);
        if (ec != std::errc{} || ptr != text.data() + to || from == to)
            fail();
        return v;
    };
    if (text.size() < 2)
        fail();
    if (const auto colon = text.find(':'); colon != std::string::npos) {
        if (text[0] != 'f')
            fail();
        return {number(1, colon), number(colon + 1, text.size())};
    }
    if (text[0] < 'a' || text[0] > 'z')
        fail();
    return {text[0] - 'a' + 1, number(1, text.size())};
}

std::string to_string(const Move& m) {
    std::string out;
    if (m.piece.kind != Kind::Pawn)
        out += static_cast<char>(std::toupper(static_cast<unsigned char>(m.piece.letter())));
    out += to_string(m.from);
    out += m.captured ? "x" : "-";
    out += to_string(m.to);
    return out;
}

void Bounds::include(Square s) noexcept {
    if (empty()) {
        *this = {s.file, s.file, s.rank, s.rank};
        return;
    }
    min_file = std::min(min_file, s.file);
    max_file = std::max(max_file, s.file);
    min_rank = std::min(min_rank, s.rank);
    max_rank = std::max(max_rank, s.rank);
}

void Bounds::include(const Bounds& b) noexcept {
    if (b.empty())
        return;
    include(Square{b.min_file, b.min_rank});
    include(Square{b.max_file, b.max_rank});
}

bool Bounds::intersects(const Bounds& b) const noexcept {
    if (empty() || b.empty())
        return false;
    return min_file <= b.max_file && b.min_file <= max_file && min_rank <= b.max_rank &&
           b.min_rank <= max_rank;
}

namespace {

template <class V>
auto lower(V& v, Square s) {
    return std::lower_bound(v.begin(), v.end(), s,
                            [](const Position::Entry& e, Square key) { return e.first < key; });
}

}  // namespace

const Piece* Position::find(Square s) const noexcept {
    auto it = lower(pieces_, s);
    return (it != pieces_.end() && it->first == s) ? &it->second : nullptr;
}

std::optional<Piece> Position::at(Square s) const noexcept {
    if (const Piece* p = find(s))
        return *p;
    return std::nullopt;
}

void Position::put(Square s, Piece p) {
    auto it = lower(pieces_, s);
    if (it != pieces_.end() && it->first == s)
        it->second = p;
    else
        pieces_.insert(it, {s, p});
}

void Position::put_new(Square s, Piece p) {
    if (occupied(s))
        throw BuilderError("square " + to_string(s) + " already occupied");
    put(s, p);
}

void Position::remove(Square s) {
    auto it = lower(pieces_, s);
    if (it != pieces_.end() && it->first == s)
        pieces_.erase(it);
}

std::optional<Square> Position::king(Color c) const noexcept {
    for (const auto& [s, p] : pieces_)
        if (p.kind == Kind::King && p.color == c)
            return s;
    return std::nullopt;
}

int Position::count(Color c, Kind k) const noexcept {
    return static_cast<int>(std::count_if(pieces_.begin(), pieces_.end(), [&](const Entry& e) {
        return e.second.color == c && e.second.kind == k;
    }));
}

Bounds Position::bounds() const noexcept {
    Bounds b;
    if (pieces_.empty())
        return b;
    b.min_file = pieces_.front().first.file;
    b.max_file = pieces_.back().first.file;
    b.min_rank = b.max_rank = pieces_.front().first.rank;
    for (const auto& e : pieces_) {
        b.min_rank = std::min(b.min_rank, e.first.rank);
        b.max_rank = std::max(b.max_rank, e.first.rank);
    }
    return b;
}

Position Position::translated(Offset by) const {
    Position out = *this;
    for (auto& e : out.pieces_)
        e.first += by;
    return out;
}

void Position::merge(const Position& other) {
    for (const auto& [s, p] : other.pieces_)
        put_new(s, p);
}

namespace {

// Position plus a cached bounding box, so attack scans do not rescan.
struct CachedBoard {
    const Position& pos;
    Bounds box;
    explicit CachedBoard(const Position& p) : pos(p), box(p.bounds()) {}
    const Piece* find(Square s) const noexcept { return pos.find(s); }
    Bounds bounds() const noexcept { return box; }
};

void require_own_piece(const Position& p, Square s) {
    const Piece* piece = p.find(s);
    if (!piece)
        throw IllegalSource("no piece on " + to_string(s));
    if (piece->color != p.side_to_move())
        throw IllegalSource("piece on " + to_string(s) + " does not belong to the side to move");
}

Position make_unchecked(const Position& p, const Move& m) {
    Position q = p;
    q.remove(m.from);
    q.put(m.to, m.piece);
    q.set_side_to_move(opposite(p.side_to_move()));
    return q;
}

bool leaves_king_safe(const Position& p, const Move& m) {
    const Position q = make_unchecked(p, m);
    const auto k = q.king(m.piece.color);
    return !k || !movegen::is_attacked(CachedBoard(q), *k, opposite(m.piece.color));
}

}  // namespace

MoveList piece_moves(const Position& p, Square s, unsigned ray_bound) {
    require_own_piece(p, s);
    MoveList out;
    out.truncated_ray = movegen::piece_moves(CachedBoard(p), s, *p.find(s), ray_bound,
                                             [&](const Move& m) { out.moves.push_back(m); });
    return out;
}

MoveList legal_piece_moves(const Position& p, Square s, unsigned ray_bound) {
    MoveList pseudo = piece_moves(p, s, ray_bound);
    std::erase_if(pseudo.moves, [&](const Move& m) { return !leaves_king_safe(p, m); });
    return pseudo;
}

MoveList legal_moves(const Position& p, unsigned ray_bound) {
    if (p.fragment())
        throw InvalidPosition("legal_moves on a fragment");
    MoveList out;
    CachedBoard board(p);
    for (const auto& [s, piece] : p.pieces()) {
        if (piece.color != p.side_to_move())
            continue;
        out.truncated_ray |= movegen::piece_moves(board, s, piece, ray_bound, [&](const Move& m) {
            if (leaves_king_safe(p, m))
                out.moves.push_back(m);
        });
    }
    std::sort(out.moves.begin(), out.moves.end(), move_less);
    return out;
}

bool is_legal(const Position& p, const Move& m) {
    if (m.piece.color != p.side_to_move())
        return false;
    return movegen::is_pseudo_legal(CachedBoard(p), m) && leaves_king_safe(p, m);
}

Position apply_move(const Position& p, const Move& m) {
    if (!is_legal(p, m))
        throw IllegalMove("illegal move " + to_string(m));
    return make_unchecked(p, m);
}

Position apply_unchecked(const Position& p, const Move& m) { return make_unchecked(p, m); }

bool is_attacked(const Position& p, Square s, Color by) { return movegen::is_attacked(CachedBoard(p), s, by); }

bool is_check(const Position& p, Color c) {
    const auto k = p.king(c);
    return k && is_attacked(p, *k, opposite(c));
}

bool has_legal_move(const Position& p) {
    CachedBoard board(p);
    const unsigned bound = movegen::exhaustive_ray_bound(board.box);
    for (const auto& [s, piece] : p.pieces()) {
        if (piece.color != p.side_to_move())
            continue;
        bool found = false;
        movegen::piece_moves(board, s, piece, bound, [&](const Move& m) {
            if (!found && leaves_king_safe(p, m))
                found = true;
        });
        if (found)
            return true;
    }
    return false;
}

bool is_checkmate(const Position& p) { return is_check(p, p.side_to_move()) && !has_legal_move(p); }

bool is_stalemate(const Position& p) { return !is_check(p, p.side_to_move()) && !has_legal_move(p); }

void validate_playable(const Position& p) {
    if (p.fragment())
        throw InvalidPosition("position is a fragment");
    for (Color c : {Color::White, Color::Black})
        if (p.count(c, Kind::King) != 1)
            throw InvalidPosition(std::string("need exactly one ") + to_string(c) + " king");
    if (is_check(p, opposite(p.side_to_move())))
        throw InvalidPosition("side not to move is in check");
}

}  // namespace ichess
