#include <algorithm>
#include <deque>
#include <set>

#include "ichess/composite.hpp"
#include "ichess/dsl.hpp"
#include "ichess/error.hpp"

namespace ichess {

namespace {

const Piece kWhitePawn{Color::White, Kind::Pawn};
const Piece kBlackPawn{Color::Black, Kind::Pawn};

Square from_su(int s, int u) { return {(u + s) / 2, (u - s) / 2}; }

void put_pawn(Position& p, Square s, Piece pawn, const Band& b) {
    if (const auto old = p.at(s)) {
        if (*old == pawn)
            return;
        throw BuilderError("wall " + to_string(b) + " runs into " + std::string(1, old->letter()) + " on " +
                           to_string(s));
    }
    p.put(s, pawn);
}

// A pawn that can be pushed `moves` times, then meets a locked pair.
void add_tempo(Composite& c, Square s, int moves, Color side = Color::White) {
    const int dir = side == Color::White ? 1 : -1;
    const Piece own = side == Color::White ? kWhitePawn : kBlackPawn;
    const Piece other = side == Color::White ? kBlackPawn : kWhitePawn;
    c.position.put_new(s, own);
    c.position.put_new({s.file, s.rank + dir * (moves + 1)}, own);
    c.position.put_new({s.file, s.rank + dir * (moves + 2)}, other);
    if (side == Color::White) {
        c.tempo_pawn = s;
        c.tempo_moves = moves;
    } else {
        c.black_tempo_pawn = s;
        c.black_tempo_moves = moves;
    }
}

// A black dark bishop on `corner` with one free square up-right of it and
// nothing else: Black can always move, and never usefully.
void add_shuffle(Composite& c, Square corner) {
    auto at = [&](int df, int dr) { return Square{corner.file + df, corner.rank + dr}; };
    if (((corner.file + corner.rank) & 1) != 0)
        throw BuilderError("shuffle pocket needs a dark corner, not " + to_string(corner));
    c.position.put_new(corner, Piece{Color::Black, Kind::Bishop});
    for (auto [df, dr] : {std::pair{-1, -1}, {-1, 1}, {1, -1}, {0, 2}, {2, 0}, {2, 2}})
        c.position.put_new(at(df, dr), kBlackPawn);
    for (auto [df, dr] : {std::pair{-1, -2}, {1, -2}, {2, -1}, {0, 1}, {2, 1}, {-1, 0}})
        c.position.put_new(at(df, dr), kWhitePawn);
    c.marks["shuffle"] = corner;
}

void add_walls(Composite& c, const std::vector<Band>& bands) {
    for (const Band& b : bands) {
        add_band(c.position, b);
        c.walls.push_back(b);
    }
}

int odd_at_most(int v) { return (v & 1) != 0 ? v : v - 1; }
int odd_at_least(int v) { return (v & 1) != 0 ? v : v + 1; }

// Four bands enclosing every piece with `margin` free diagonals in between.
std::vector<Band> ring(const Position& p, int margin) {
    int s_lo = 1 << 20, s_hi = -(1 << 20), u_lo = 1 << 20, u_hi = -(1 << 20);
    for (const auto& [sq, pc] : p.pieces()) {
        s_lo = std::min(s_lo, sq.file - sq.rank);
        s_hi = std::max(s_hi, sq.file - sq.rank);
        u_lo = std::min(u_lo, sq.file + sq.rank);
        u_hi = std::max(u_hi, sq.file + sq.rank);
    }
    s_lo = odd_at_most(s_lo - margin);
    s_hi = odd_at_least(s_hi + margin);
    u_lo = odd_at_most(u_lo - margin);
    u_hi = odd_at_least(u_hi + margin);
    return {
        {Band::Axis::S, s_lo, u_lo, u_hi},
        {Band::Axis::S, s_hi, u_lo, u_hi},
        {Band::Axis::U, u_lo, s_lo, s_hi},
        {Band::Axis::U, u_hi, s_lo, s_hi},
    };
}

}  // namespace

std::string to_string(const Band& b) {
    const bool s = b.axis == Band::Axis::S;
    return std::string(s ? "s=" : "u=") + std::to_string(b.line) + (s ? " u=" : " s=") + std::to_string(b.from) +
           ".." + std::to_string(b.to);
}

void add_band(Position& p, const Band& b) {
    if ((b.line & 1) == 0)
        throw BuilderError("wall " + to_string(b) + ": the white line must be odd");
    for (int v = b.from; v <= b.to; ++v) {
        if (((v - b.line) & 1) != 0)
            continue;
        const Square light = b.axis == Band::Axis::S ? from_su(b.line, v) : from_su(v, b.line);
        put_pawn(p, light, kWhitePawn, b);
        put_pawn(p, {light.file, light.rank + 1}, kBlackPawn, b);
    }
}

Square Composite::mark(const std::string& key) const {
    auto it = marks.find(key);
    if (it == marks.end())
        throw BuilderError(name + ": no square marked '" + key + "'");
    return it->second;
}

std::vector<Square> sealed_region(const Position& p, Square seed) {
    const Bounds box = p.bounds();
    std::set<Square> seen{seed};
    std::deque<Square> todo{seed};
    while (!todo.empty()) {
        const Square s = todo.front();
        todo.pop_front();
        if (!box.contains(s))
            return {};
        for (Offset d : {Offset{1, 1}, Offset{1, -1}, Offset{-1, 1}, Offset{-1, -1}}) {
            const Square t = s + d;
            if (!p.occupied(t) && seen.insert(t).second)
                todo.push_back(t);
        }
    }
    return {seen.begin(), seen.end()};
}

std::vector<Move> stray_moves(const Position& p, const std::vector<Square>& active) {
    std::vector<Move> out;
    for (Color c : {Color::White, Color::Black}) {
        Position q = p;
        q.set_fragment(false);
        q.set_side_to_move(c);
        for (const Move& m : legal_moves(q, kDefaultRayBound).moves)
            if (std::find(active.begin(), active.end(), m.from) == active.end())
                out.push_back(m);
    }
    return out;
}

Composite throne_composite() {
    Composite c;
    c.name = "throne room";
    c.position = build_throne_room();
    add_tempo(c, {23, 2}, 6);
    c.position.set_fragment(false);
    c.position.set_side_to_move(Color::Black);
    return c;
}

Composite wing_composite(unsigned g) {
    Composite c;
    c.name = "wing " + std::to_string(g);
    c.position = build_gateway_wing(g);
    // Throne room shifted by (19,9): its blue entry diagonal is u = 42 and
    // crosses every door's outward diagonal above the wing.
    c.position.merge(build_throne_room({20, 10}));

    const int top_cap = 13 - 12 * static_cast<int>(g);  // white line of the wing's upper end
    const int left = std::min(top_cap, -3);
    const int right = 25;
    const int roof = 59;
    std::vector<Band> bands = {
        {Band::Axis::S, 15, 13, 34},                                // lower end of the wing, plugs the hallway entrance
        {Band::Axis::S, top_cap, 13, left < top_cap ? 34 : roof + 1},  // upper end of the wing
        {Band::Axis::U, 33, 13, right + 1},                         // floor right of the wing
        {Band::Axis::S, right, 33, roof + 1},        // right side of the arena
        {Band::Axis::U, roof, left - 1, right + 1},  // roof
    };
    if (left < top_cap) {
        bands.push_back({Band::Axis::U, 33, left - 1, top_cap + 1});
        bands.push_back({Band::Axis::S, left, 33, roof + 1});
    }
    add_walls(c, bands);
    add_tempo(c, {40, 0}, 6);
    add_tempo(c, {44, 20}, 6, Color::Black);

    c.marks["start"] = {18, 6};
    for (unsigned k = 1; k <= g; ++k) {
        const Offset up{-6 * static_cast<int>(k - 1), 6 * static_cast<int>(k - 1)};
        c.marks["door" + std::to_string(k)] = Square{18, 10} + up;
        c.marks["attack" + std::to_string(k)] = Square{16, 8} + up;
        c.marks["guard" + std::to_string(k)] = Square{16, 13} + up;
        c.marks["summon" + std::to_string(k)] = Square{17, 12} + up;
        c.marks["post" + std::to_string(k)] = Square{16, 11} + up;
    }
    c.position.put_new(c.marks["start"], Piece{Color::Black, Kind::Bishop});
    c.position.set_fragment(false);
    c.position.set_side_to_move(Color::Black);
    return c;
}

Composite cannon_composite(unsigned b, unsigned aim) {
    if (aim < 1 || aim > b)
        throw BuilderError("cannon composite: aim " + std::to_string(aim) + " is not a shooter of " + std::to_string(b));
    Composite c;
    c.name = "cannon " + std::to_string(b) + " aimed at " + std::to_string(aim);
    c.position = build_cannon(b);
    // The hole behind shooter `aim` is the black wall pawn on (8+aim, 6+aim);
    // the ray through it, u = 14 + 2 aim, is made the room's blue diagonal so
    // a bishop slipping through lands on the room's entry square.
    const int j = static_cast<int>(aim) - 1;
    c.position.merge(build_throne_room({12 + j, -8 + j}));

    const int low = -1;
    const int high = 33 + 2 * (static_cast<int>(b) - 1);
    const int far = 33;
    add_walls(c, {
                     {Band::Axis::S, -1, 3, 7},  // upper side of the exit pocket
                     {Band::Axis::U, 1, 1, 1},   // end of the pocket, a1
                     {Band::Axis::S, 3, low, high},  // lower wall, also the pocket's lower side
                     {Band::Axis::S, 7, 7, 7},       // stops g1
                     {Band::Axis::U, high, 3, far + 1},
                     {Band::Axis::S, far, low, high + 1},
                     {Band::Axis::U, low, 3, far + 1},
                 });
    add_tempo(c, {45, 0}, 8);
    // guard pawns can break into the cannon and open a bishop's diagonal
    add_walls(c, ring(c.position, 2));

    c.marks["front"] = {7, 7};
    for (unsigned i = 0; i < b; ++i) {
        const int k = static_cast<int>(i);
        const std::string n = std::to_string(i + 1);
        c.marks["shooter" + n] = {8 + k, 8 + k};
        c.marks["pawn" + n] = {8 + k, 9 + k};
        c.marks["guard" + n] = {10 + k, 2 + k};
        c.marks["hole" + n] = {9 + k, 7 + k};
    }
    c.position.set_fragment(false);
    c.position.set_side_to_move(Color::Black);
    return c;
}

Composite tower_composite(unsigned r, TowerRelease release, Square origin, unsigned height) {
    Composite c;
    c.position = build_rook_towers(r, origin, height);
    const TowerLayout first = tower_layout(r, 0, origin, height);
    const TowerLayout last = tower_layout(r, r - 1, origin, height);
    const Square rook = first.rook;

    c.marks["bishop"] = rook + Offset{2, -9};
    c.marks["mating"] = rook + Offset{0, -1};
    c.marks["release"] = rook + Offset{2, -1};
    c.marks["target"] = last.key_pawn + Offset{2, -3};
    c.marks["plug"] = last.key_pawn + Offset{5, 0};
    for (unsigned t = 0; t < r; ++t) {
        const TowerLayout l = tower_layout(r, t, origin, height);
        const std::string n = std::to_string(t);
        c.marks["rook" + n] = l.rook;
        c.marks["guard" + n] = l.guard_pawn;
        c.marks["key" + n] = l.key_pawn;
    }
    // The black bishop's corridor runs on into the open past the plug. In the
    // channel arena a black plug stops it. Once the opening line has been
    // played the white bishops own that diagonal and would take a black plug
    // and leave, so the mating arena plugs with a blocked white pawn; the
    // black bishop may take that one, which only matters before the line.
    const Square plug = c.marks["plug"];
    if (release == TowerRelease::Channel) {
        c.position.put_new(plug, kBlackPawn);
        c.position.put_new(plug + Offset{1, 1}, kWhitePawn);
        c.position.put_new(plug + Offset{1, 2}, kBlackPawn);
    } else {
        c.position.put_new(plug, kWhitePawn);
        c.position.put_new(plug + Offset{0, 1}, kBlackPawn);
    }

    Square entry;
    if (release == TowerRelease::MatingBishop) {
        c.name = "rook towers " + std::to_string(r) + ", mating bishop taken";
        entry = c.marks["release"] + Offset{-19, -19};
    } else {
        c.name = "rook towers " + std::to_string(r) + ", channel";
        entry = last.key_pawn + Offset{12, -13};
    }
    // a12 of the room goes to `entry`
    const Position room = build_throne_room({entry.file, entry.rank - 11});
    c.position.merge(room);
    c.marks["entry"] = entry;
    // spare moves for Black, which the cannons would provide in the full position
    const Bounds rb = room.bounds();
    Square corner{rb.max_file + 4, rb.min_rank + 2};
    if (((corner.file + corner.rank) & 1) != 0)
        ++corner.file;
    add_shuffle(c, corner);

    add_walls(c, ring(c.position, 4));
    // rooks can take wall pawns; a second ring keeps a breach inside
    add_walls(c, ring(c.position, 2));
    c.position.set_fragment(false);
    c.position.set_side_to_move(Color::Black);
    return c;
}

}  // namespace ichess
