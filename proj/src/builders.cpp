#include <algorithm>
#include <map>

#include "ichess/diagram.hpp"
#include "ichess/dsl.hpp"
#include "ichess/error.hpp"

namespace ichess {

namespace {

// Reference drawings. Periodic builders cut these into caps and repeating
// units; nothing here is read from disk.

constexpr const char* kThroneRoom =
    "origin=1,17\n"
    "[13]/[13]/6p.p.p2/6P.P.P2/6pBKBp2/6P.P.P2/6p3p2/6P3P2/6p3p2/6P3P2/[10]p2/"
    "5p4P2/5Pp.p.p2/6PbkbP2/6p.p.p2/6P.P.P2/[13] w\n";

constexpr const char* kWing =
    "origin=1,33\n"
    "[23]/[23]/[23]/[23]/[23]/3p[19]/2pPp[18]/2P.Pp[17]/2pB.P[17]/2P2p[17]/2p2P[17]/"
    "2Pp.P3p[13]/2pP.P2pPp[12]/2P2p2P.Pp[11]/2p2Pp.pB.P[11]/2Pp2PpP2p[11]/3Pp2Pp2P[11]/"
    "4Pp2Pp.P3p7/5Pp2P.P2pPp6/6Pp3p2P.Pp5/7Pp2Pp.pB.P5/8Pp2PpP2p5/9Pp2Pp2P5/"
    "[10]Pp2Pp.P5/[11]Pp2P.P4p/[12]Pp3p3pP/[13]Pp2Pp.pP./[14]Pp2PpP2/[15]Pp2P3/"
    "[16]Pp5/[16]pP5/[15]pP6/[14]pP7 w\n";

// Left part of the tower block: files c..k, enough for the two irregular
// towers and one regular one.
constexpr const char* kTowers =
    "origin=1,31\n"
    "2P.PP.PP.PP.PP.PPrP.BP/2P.PP.PP.PP.PP.P.BpB.P/2P.PP.PP.PP.PP.PB.P.BP/"
    "2P.PP.PP.PP.PPrP.BPB.P/2P.PP.PP.PP.P.BpB.PPBp/2P.PP.PP.PP.PB.P.BPBpP/"
    "2P.PP.PP.PPrP.BPB.PpP./2P.PP.PP.P.BpB.PPBpP2/2P.PP.PP.PB.P.BPBpP2p/"
    "2P.PP.PPrP.BPB.PpP2pP/2P.PP.P.BpB.PPBpP2pPp/2P.PP.PB.P.BPBpP2pPpP/"
    "2P.PPrP.BPB.PpP2pPpP./2P.P.BpB.PPBpP2pPpP2/2P.PB.P.BPBpP2pPpP3/"
    "2PrP.BPB.PpP2pPpP4/2pBpB.PPBpP2pPpP5/2P.P.BPBpP2pPpP6/4PB.PpP2pPpP7/"
    "4PPBpP2pPpP8/4PBpP2pPpP9/4PpP2pPpP[10]/2p.pP2pPpP[11]/2P.P2pPpP[12]/"
    "2pBpbpPpP[13]/2P.P.P.P[14]/4pBp[16]/4P.P[16]/[23]/[23]/[23] w\n";
constexpr int kTowersTop = 31;

using PieceMap = std::map<Square, Piece>;

PieceMap pieces_of(const char* text) {
    PieceMap out;
    const Position pos = parse_diagram(text);
    for (const auto& [s, p] : pos.pieces())
        out[s] = p;
    return out;
}

Piece piece(char c) { return *Piece::from_letter(c); }

Offset origin_shift(Square origin) { return {origin.file - kFigureOrigin.file, origin.rank - kFigureOrigin.rank}; }

Position assemble(const PieceMap& m, Square origin) {
    Position p(Color::White);
    const Offset o = origin_shift(origin);
    for (const auto& [s, pc] : m)
        p.put(s + o, pc);
    p.set_fragment(true);
    return p;
}

// Adds a piece, refusing to overwrite a different one.
void place(PieceMap& m, Square s, Piece p, const char* what) {
    auto [it, fresh] = m.emplace(s, p);
    if (!fresh && !(it->second == p))
        throw BuilderError(std::string(what) + ": overlap at " + to_string(s));
}

}  // namespace

Position build_throne_room(Square origin) { return assemble(pieces_of(kThroneRoom), origin); }

// The wing repeats every (6,-6). Sorting pieces by s = file - rank, the
// middle gate of the drawing owns s in [-10,2); the drawing's upper and
// lower gates differ from shifted copies of it by a few pieces, recorded
// here as add/remove sets, and beyond them sit the two end caps.
Position build_gateway_wing(unsigned g, Square origin) {
    if (g == 0)
        throw BuilderError("gateway wing needs at least one gate");
    const PieceMap fig = pieces_of(kWing);
    constexpr int lo = -10, period = 12;
    auto s_of = [](Square s) { return s.file - s.rank; };
    auto shifted = [](Square s, int k) { return Square{s.file + 6 * k, s.rank - 6 * k}; };
    auto window = [&](int k) {
        PieceMap w;
        for (const auto& [s, p] : fig)
            if (s_of(s) >= lo + period * k && s_of(s) < lo + period * (k + 1))
                w[s] = p;
        return w;
    };
    const PieceMap mid = window(0), top = window(-1), bottom = window(1);
    auto diff = [&](const PieceMap& actual, int k, PieceMap& add, PieceMap& remove) {
        for (const auto& [s, p] : mid) {
            const Square t = shifted(s, k);
            auto it = actual.find(t);
            if (it == actual.end() || !(it->second == p))
                remove[t] = p;
        }
        for (const auto& [s, p] : actual) {
            auto it = mid.find(shifted(s, -k));
            if (it == mid.end() || !(it->second == p))
                add[s] = p;
        }
    };
    PieceMap add_top, rm_top, add_bot, rm_bot;
    diff(top, -1, add_top, rm_top);
    diff(bottom, 1, add_bot, rm_bot);

    const int k_top = 2 - static_cast<int>(g);
    PieceMap out;
    for (int k = k_top; k <= 1; ++k) {
        PieceMap unit;
        for (const auto& [s, p] : mid)
            unit[shifted(s, k)] = p;
        if (k == k_top) {
            for (const auto& [s, p] : rm_top)
                unit.erase(shifted(s, k + 1));
            for (const auto& [s, p] : add_top)
                unit[shifted(s, k + 1)] = p;
        }
        if (k == 1) {
            for (const auto& [s, p] : rm_bot)
                unit.erase(s);
            for (const auto& [s, p] : add_bot)
                unit[s] = p;
        }
        for (const auto& [s, p] : unit)
            place(out, s, p, "gateway wing");
    }
    for (const auto& [s, p] : fig) {
        if (s_of(s) < lo - period)
            place(out, shifted(s, k_top + 1), p, "gateway wing");
        else if (s_of(s) >= lo + 2 * period)
            place(out, s, p, "gateway wing");
    }
    return assemble(out, origin);
}

namespace {

// One cannon around its front bishop f: the shooter diagonal, the capped
// pawns and back bishops beside it, the two upper walls, the back cap and
// the guard pawns. Walls toward the open side are added by the callers.
void cannon_core(PieceMap& m, Square f, int b, const char* what) {
    auto at = [&](int dx, int dy) { return Square{f.file + dx, f.rank + dy}; };
    for (int i = 0; i <= b + 1; ++i)
        place(m, at(i, i), piece('b'), what);
    place(m, at(b + 2, b + 2), piece('p'), what);
    for (int i = 0; i < b; ++i)
        place(m, at(1 + i, 2 + i), piece('p'), what);
    place(m, at(b + 1, b + 2), piece('P'), what);
    for (int i = 0; i <= b; ++i)
        place(m, at(i, 2 + i), piece('b'), what);
    place(m, at(b + 1, b + 3), piece('p'), what);
    place(m, at(-1, 0), piece('P'), what);
    place(m, at(-1, 1), piece('p'), what);
    for (int i = 0; i <= b + 1; ++i) {
        place(m, at(-1 + i, 2 + i), piece('P'), what);
        place(m, at(-1 + i, 3 + i), piece('p'), what);
    }
    place(m, at(b + 2, b + 1), piece('P'), what);
    for (int i = 0; i < b; ++i)
        place(m, at(3 + i, -5 + i), piece('P'), what);
}

}  // namespace

Position build_cannon(unsigned b, Square origin) {
    if (b == 0)
        throw BuilderError("cannon needs at least one capped shooter");
    const char* what = "cannon";
    const Square f{7, 7};
    const int n = static_cast<int>(b);
    PieceMap m;
    cannon_core(m, f, n, what);
    auto at = [&](int dx, int dy) { return Square{f.file + dx, f.rank + dy}; };
    // mouth: the walls flare out toward the lower left
    for (int i = 2; i <= 4; ++i) {
        place(m, at(-i, 1 - i), piece('P'), what);
        place(m, at(-i, 2 - i), piece('p'), what);
    }
    place(m, at(-5, -2), piece('P'), what);
    place(m, at(-5, -1), piece('p'), what);
    place(m, at(-6, -1), piece('P'), what);
    place(m, at(-6, 0), piece('p'), what);
    for (int i = 0; i <= n + 4; ++i) {
        place(m, at(-2 + i, -4 + i), piece('p'), what);
        place(m, at(-2 + i, -5 + i), piece('P'), what);
    }
    place(m, at(-1, -5), piece('p'), what);
    place(m, at(-1, -6), piece('P'), what);
    place(m, at(0, -6), piece('p'), what);
    return assemble(m, origin);
}

// Back ends on file 15. Cannon k has its front at (15 - b - 2, y) with y
// climbing by b + 9 per cannon; its lower wall starts on the left boundary
// file 3 + k, which also carries a small cap and, above the first cannon, a
// connector to the wall below.
Position build_compact_battery(const std::vector<unsigned>& sizes, Square origin) {
    if (sizes.empty())
        throw BuilderError("battery needs at least one cannon");
    const char* what = "compact battery";
    constexpr int back = 15;
    PieceMap m;
    int y = 9;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        if (sizes[k] == 0)
            throw BuilderError("battery cannon sizes must be positive");
        const int b = static_cast<int>(sizes[k]);
        const Square f{back - b - 2, y};
        cannon_core(m, f, b, what);
        const int line = f.file - f.rank + 2;
        const Square start{3 + static_cast<int>(k), 3 + static_cast<int>(k) - line};
        for (int x = start.file; x <= back; ++x) {
            place(m, {x, x - line}, piece('p'), what);
            place(m, {x, x - line - 1}, piece('P'), what);
        }
        auto at = [&](int dx, int dy) { return Square{start.file + dx, start.rank + dy}; };
        place(m, at(1, -1), piece('p'), what);
        place(m, at(1, -2), piece('P'), what);
        place(m, at(2, -2), piece('p'), what);
        if (k > 0) {
            place(m, at(2, -3), piece('P'), what);
            place(m, at(3, -3), piece('p'), what);
            place(m, at(3, -4), piece('P'), what);
        }
        y += b + 9;
    }
    return assemble(m, origin);
}

// Towers repeat every three files with a (3,3) shift. Files 3..8 of the
// drawing hold the first two towers as drawn, files 9..11 the regular tower
// that is copied onward; the pawn columns, cut off by the drawing, are
// continued up to the common top.
Position build_rook_towers(unsigned r, Square origin, unsigned height) {
    if (r == 0)
        throw BuilderError("rook towers need at least one tower");
    if (height < 6)
        throw BuilderError("rook tower height must be at least 6");
    const char* what = "rook towers";
    const PieceMap fig = pieces_of(kTowers);
    const int n = static_cast<int>(r);
    const int top = tower_layout(r, 0, kFigureOrigin, height).top;
    PieceMap m;
    for (int t = 0; t <= n + 1; ++t) {
        const int src = std::min(t, 2);
        const int d = 3 * (t - src);
        const int lo = 3 + 3 * src;
        for (const auto& [s, p] : fig) {
            if (s.file < lo || s.file >= lo + 3)
                continue;
            if (p.kind == Kind::Rook && t >= n)
                continue;
            const Square at{s.file + d, s.rank + d};
            if (at.rank <= top)
                place(m, at, p, what);
            if (s.rank == kTowersTop && p == piece('P'))
                for (int rank = at.rank + 1; rank <= top; ++rank)
                    place(m, {at.file, rank}, p, what);
        }
        const int corridor = 4 + 3 * t;
        place(m, {corridor, top + 1}, piece('P'), what);
        place(m, {corridor, top + 2}, piece('p'), what);
    }
    return assemble(m, origin);
}

TowerLayout tower_layout(unsigned r, unsigned tower, Square origin, unsigned height) {
    if (tower >= r)
        throw BuilderError("no tower " + std::to_string(tower) + " among " + std::to_string(r));
    const Offset o = origin_shift(origin);
    const int t = static_cast<int>(tower);
    TowerLayout l;
    l.rook = Square{4 + 3 * t, 16 + 3 * t} + o;
    l.guard_pawn = Square{5 + 3 * t, 15 + 3 * t} + o;
    l.key_pawn = Square{6 + 3 * t, 12 + 3 * t} + o;
    l.top = 16 + 3 * (static_cast<int>(r) - 1) + static_cast<int>(height) + o.dr;
    return l;
}

}  // namespace ichess
