#include "ichess/search.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <random>

#include "ichess/movegen.hpp"

namespace ichess {

namespace {

// Translation-invariant hashing: a piece p on (x, y) contributes
// z[p] * A^x * B^y (mod 2^64) with A, B odd, so shifting the board multiplies
// the sum by A^dx * B^dy and dividing out the origin normalizes it.
struct HashParams {
    std::uint64_t z[2][12];
    std::uint64_t a[2], b[2], a_inv[2], b_inv[2];
    std::uint64_t side_salt[2];
    static constexpr int kTable = 4096;
    std::vector<std::uint64_t> pa[2], pb[2];  // powers for exponents in [-kTable, kTable)

    static std::uint64_t inverse(std::uint64_t x) {
        std::uint64_t inv = x;
        for (int i = 0; i < 6; ++i)
            inv *= 2 - x * inv;
        return inv;
    }
    static std::uint64_t power(std::uint64_t base, std::uint64_t inv, long long e) {
        std::uint64_t b = e < 0 ? inv : base;
        unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
        std::uint64_t r = 1;
        while (k) {
            if (k & 1)
                r *= b;
            b *= b;
            k >>= 1;
        }
        return r;
    }

    HashParams() {
        std::mt19937_64 rng(0x1c4e55);
        for (auto& row : z)
            for (auto& v : row)
                v = rng() | 1;
        for (int i = 0; i < 2; ++i) {
            a[i] = rng() | 1;
            b[i] = rng() | 1;
            a_inv[i] = inverse(a[i]);
            b_inv[i] = inverse(b[i]);
            side_salt[i] = rng();
            pa[i].resize(2 * kTable);
            pb[i].resize(2 * kTable);
            for (int e = -kTable; e < kTable; ++e) {
                pa[i][e + kTable] = power(a[i], a_inv[i], e);
                pb[i][e + kTable] = power(b[i], b_inv[i], e);
            }
        }
    }

    std::uint64_t pow_a(int i, long long e) const {
        return (e >= -kTable && e < kTable) ? pa[i][e + kTable] : power(a[i], a_inv[i], e);
    }
    std::uint64_t pow_b(int i, long long e) const {
        return (e >= -kTable && e < kTable) ? pb[i][e + kTable] : power(b[i], b_inv[i], e);
    }
};

const HashParams& hash_params() {
    static const HashParams params;
    return params;
}

int piece_index(Piece p) { return static_cast<int>(p.color) * 6 + static_cast<int>(p.kind); }

struct NodeCapHit {};

}  // namespace

// ---- SearchBoard

namespace {
constexpr int kGridMargin = 16;
}

SearchBoard::SearchBoard(const Position& p) : side_(p.side_to_move()) {
    const Bounds root = p.bounds();
    if (!root.empty()) {
        gx_ = root.min_file - kGridMargin;
        gy_ = root.min_rank - kGridMargin;
        gw_ = root.max_file - root.min_file + 1 + 2 * kGridMargin;
        gh_ = root.max_rank - root.min_rank + 1 + 2 * kGridMargin;
    }
    grid_.assign(static_cast<std::size_t>(gw_) * static_cast<std::size_t>(gh_), Cell{});
    files_.assign(static_cast<std::size_t>(gw_), 0);
    ranks_.assign(static_cast<std::size_t>(gh_), 0);
    lo_file_ = gw_;
    lo_rank_ = gh_;
    spill_.assign(16, Slot{});
    spill_mask_ = 15;
    for (const auto& [s, piece] : p.pieces()) {
        insert(s, piece);
        box_.include(s);
    }
}

SearchBoard::Cell* SearchBoard::cell(Square s) noexcept {
    const unsigned x = static_cast<unsigned>(s.file - gx_), y = static_cast<unsigned>(s.rank - gy_);
    if (x >= static_cast<unsigned>(gw_) || y >= static_cast<unsigned>(gh_))
        return nullptr;
    return &grid_[static_cast<std::size_t>(y) * static_cast<std::size_t>(gw_) + x];
}

const SearchBoard::Cell* SearchBoard::cell(Square s) const noexcept {
    return const_cast<SearchBoard*>(this)->cell(s);
}

std::size_t SearchBoard::slot_of(Square s) const noexcept {
    std::uint64_t k = static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.file)) * 0x9E3779B97F4A7C15ull ^
                      static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.rank)) * 0xC2B2AE3D27D4EB4Full;
    k ^= k >> 29;
    return static_cast<std::size_t>(k) & spill_mask_;
}

const Piece* SearchBoard::find_spill(Square s) const noexcept {
    const Slot* slot = const_cast<SearchBoard*>(this)->lookup(s);
    return slot ? &slot->piece : nullptr;
}

SearchBoard::Slot* SearchBoard::lookup(Square s) noexcept {
    for (std::size_t i = slot_of(s);; i = (i + 1) & spill_mask_) {
        Slot& slot = spill_[i];
        if (slot.index < 0)
            return nullptr;
        if (slot.file == s.file && slot.rank == s.rank)
            return &slot;
    }
}

void SearchBoard::spill_insert(Square s, Piece p, int index) {
    if (2 * (spill_count_ + 1) > spill_.size()) {
        std::vector<Slot> old = std::move(spill_);
        spill_.assign(old.size() * 2, Slot{});
        spill_mask_ = spill_.size() - 1;
        for (const Slot& slot : old) {
            if (slot.index < 0)
                continue;
            std::size_t i = slot_of({slot.file, slot.rank});
            while (spill_[i].index >= 0)
                i = (i + 1) & spill_mask_;
            spill_[i] = slot;
        }
    }
    std::size_t i = slot_of(s);
    while (spill_[i].index >= 0)
        i = (i + 1) & spill_mask_;
    spill_[i] = Slot{s.file, s.rank, p, index};
    ++spill_count_;
}

SearchBoard::Slot SearchBoard::spill_erase(Square s) {
    std::size_t i = slot_of(s);
    while (!(spill_[i].file == s.file && spill_[i].rank == s.rank && spill_[i].index >= 0))
        i = (i + 1) & spill_mask_;
    const Slot out = spill_[i];
    // backward-shift deletion
    std::size_t j = i;
    for (;;) {
        j = (j + 1) & spill_mask_;
        if (spill_[j].index < 0)
            break;
        const std::size_t home = slot_of({spill_[j].file, spill_[j].rank});
        const bool stays = i <= j ? (i < home && home <= j) : (i < home || home <= j);
        if (stays)
            continue;
        spill_[i] = spill_[j];
        i = j;
    }
    spill_[i].index = -1;
    --spill_count_;
    return out;
}

void SearchBoard::hash_toggle(Square s, Piece p, long long sign) noexcept {
    const HashParams& hp = hash_params();
    const int pi = piece_index(p);
    // additive terms: adding a piece is +, removing it is -
    const std::uint64_t t1 = hp.z[0][pi] * hp.pow_a(0, s.file) * hp.pow_b(0, s.rank);
    const std::uint64_t t2 = hp.z[1][pi] * hp.pow_a(1, s.file) * hp.pow_b(1, s.rank);
    if (sign > 0) {
        h1_ += t1;
        h2_ += t2;
    } else {
        h1_ -= t1;
        h2_ -= t2;
    }
}

void SearchBoard::count_add(Square s, int delta) {
    auto bump_far = [delta](std::map<int, int>& m, int k) {
        auto it = m.try_emplace(k, 0).first;
        it->second += delta;
        if (it->second == 0)
            m.erase(it);
    };
    auto bump = [&](std::vector<int>& v, int& lo, std::map<int, int>& far, int k) {
        if (k < 0 || k >= static_cast<int>(v.size())) {
            bump_far(far, k);
            return;
        }
        v[static_cast<std::size_t>(k)] += delta;
        if (delta > 0 && k < lo)
            lo = k;
        while (lo < static_cast<int>(v.size()) && v[static_cast<std::size_t>(lo)] == 0)
            ++lo;
    };
    bump(files_, lo_file_, far_files_, s.file - gx_);
    bump(ranks_, lo_rank_, far_ranks_, s.rank - gy_);
}

void SearchBoard::insert(Square s, Piece p) {
    auto& list = lists_[static_cast<int>(p.color)];
    const int index = static_cast<int>(list.size());
    if (Cell* c = cell(s))
        *c = Cell{p, index};
    else
        spill_insert(s, p, index);
    list.push_back(s);
    if (p.kind == Kind::King)
        kings_[static_cast<int>(p.color)].push_back(s);
    ++count_;
    hash_toggle(s, p, 1);
    count_add(s, 1);
}

Piece SearchBoard::erase(Square s) {
    Piece piece;
    int index;
    if (Cell* c = cell(s)) {
        piece = c->piece;
        index = c->index;
        c->index = -1;
    } else {
        const Slot slot = spill_erase(s);
        piece = slot.piece;
        index = slot.index;
    }
    auto& list = lists_[static_cast<int>(piece.color)];
    const Square last = list.back();
    list[static_cast<std::size_t>(index)] = last;
    list.pop_back();
    if (!(last == s)) {
        if (Cell* c = cell(last))
            c->index = index;
        else
            lookup(last)->index = index;
    }
    if (piece.kind == Kind::King) {
        auto& ks = kings_[static_cast<int>(piece.color)];
        ks.erase(std::find(ks.begin(), ks.end(), s));
    }
    --count_;
    hash_toggle(s, piece, -1);
    count_add(s, -1);
    return piece;
}

std::optional<Square> SearchBoard::king(Color c) const noexcept {
    const auto& ks = kings_[static_cast<int>(c)];
    if (ks.empty())
        return std::nullopt;
    return ks.front();
}

void SearchBoard::make(const Move& m, Undo& u) {
    u.box = box_;
    erase(m.from);
    if (m.captured)
        erase(m.to);
    insert(m.to, m.piece);
    box_.include(m.to);
    side_ = opposite(side_);
}

void SearchBoard::unmake(const Move& m, const Undo& u) {
    erase(m.to);
    if (m.captured)
        insert(m.to, *m.captured);
    insert(m.from, m.piece);
    box_ = u.box;
    side_ = opposite(side_);
}

Square SearchBoard::origin() const noexcept {
    if (count_ == 0)
        return {0, 0};
    auto low = [](const std::vector<int>& v, int lo, const std::map<int, int>& far, int base) {
        int best = lo < static_cast<int>(v.size()) ? lo + base : std::numeric_limits<int>::max();
        if (!far.empty())
            best = std::min(best, far.begin()->first + base);
        return best;
    };
    return {low(files_, lo_file_, far_files_, gx_), low(ranks_, lo_rank_, far_ranks_, gy_)};
}

SearchKey SearchBoard::key() const noexcept {
    const HashParams& hp = hash_params();
    const Square o = origin();
    const int s = side_ == Color::Black ? 1 : 0;
    SearchKey k;
    k.a = h1_ * hp.pow_a(0, -static_cast<long long>(o.file)) * hp.pow_b(0, -static_cast<long long>(o.rank));
    k.b = h2_ * hp.pow_a(1, -static_cast<long long>(o.file)) * hp.pow_b(1, -static_cast<long long>(o.rank));
    if (s) {
        k.a ^= hp.side_salt[0];
        k.b ^= hp.side_salt[1];
    }
    return k;
}

Position SearchBoard::to_position() const {
    Position p(side_);
    for (const auto& list : lists_)
        for (const Square& s : list)
            p.put(s, *find(s));
    return p;
}

// ---- MateSearch

MateSearch::MateSearch(const Position& root, Color attacker, MateOptions opts)
    : board_(root), root_(root), attacker_(attacker), opts_(opts) {}

void MateSearch::set_root(const Position& p) {
    if (!(p == root_)) {
        root_ = p;
        board_ = SearchBoard(p);
    }
}

void MateSearch::count_node() {
    if (++stats_.nodes - call_start_ > opts_.node_cap)
        throw NodeCapHit{};
}

void MateSearch::generate(Color side, std::vector<Move>& out, bool& truncated) {
    out.clear();
    truncated = false;
    const auto& list = board_.squares(side);
    // the list may be reordered by make/unmake inside the sink; copy first
    const std::vector<Square> from(list.begin(), list.end());
    for (const Square& s : from) {
        const Piece piece = *board_.find(s);
        truncated |= movegen::piece_moves(board_, s, piece, opts_.ray_bound, [&](const Move& m) { out.push_back(m); });
    }
}

namespace {

bool lined_up(Square a, Square k) {
    const int df = a.file - k.file, dr = a.rank - k.rank;
    if (df == 0 || dr == 0 || df == dr || df == -dr)
        return true;
    const int af = df < 0 ? -df : df, ar = dr < 0 ? -dr : dr;
    return (af == 1 && ar == 2) || (af == 2 && ar == 1);
}

}  // namespace

bool MateSearch::legal_after(const Move& m, bool was_in_check) {
    // board already has m made; the mover's king must be safe
    const auto k = board_.king(m.piece.color);
    if (!k)
        return true;
    if (!was_in_check && m.piece.kind != Kind::King) {
        // only a piece leaving a line through the king can expose it
        const int df = m.from.file - k->file, dr = m.from.rank - k->rank;
        if (df != 0 && dr != 0 && df != dr && df != -dr)
            return true;
    }
    return !movegen::is_attacked(board_, *k, opposite(m.piece.color));
}

bool MateSearch::has_legal_move(Color side) {
    const unsigned bound = std::max(opts_.ray_bound, movegen::exhaustive_ray_bound(board_.bounds()));
    const auto own = board_.king(side);
    const bool in_check = own && movegen::is_attacked(board_, *own, opposite(side));
    const std::vector<Square> from(board_.squares(side).begin(), board_.squares(side).end());
    // king first: usually the quickest escape
    std::vector<Square> ordered;
    ordered.reserve(from.size());
    for (const Square& s : from)
        if (board_.find(s)->kind == Kind::King)
            ordered.insert(ordered.begin(), s);
        else
            ordered.push_back(s);
    std::vector<Move> moves;
    for (const Square& s : ordered) {
        moves.clear();
        movegen::piece_moves(board_, s, *board_.find(s), bound, [&](const Move& m) { moves.push_back(m); });
        for (const Move& m : moves) {
            SearchBoard::Undo u;
            board_.make(m, u);
            const bool ok = legal_after(m, in_check);
            board_.unmake(m, u);
            if (ok)
                return true;
        }
    }
    return false;
}

void MateSearch::remember(const SearchKey& k, Square origin, unsigned n, bool result, const Move* best) {
    Entry& e = table_[k];
    if (result)
        e.win = static_cast<std::uint16_t>(std::min<unsigned>(e.win, n));
    else
        e.lose = static_cast<std::int16_t>(std::max<int>(e.lose, static_cast<int>(n)));
    if (best) {
        e.has_best = true;
        e.best_from = {best->from.file - origin.file, best->from.rank - origin.rank};
        e.best_to = {best->to.file - origin.file, best->to.rank - origin.rank};
    }
}

void MateSearch::order(std::vector<Move>& moves, const Entry* e, Square origin, bool attacker_side) {
    auto score = [&](const Move& m) {
        int s = 0;
        if (e && e->has_best && m.from.file - origin.file == e->best_from.file &&
            m.from.rank - origin.rank == e->best_from.rank && m.to.file - origin.file == e->best_to.file &&
            m.to.rank - origin.rank == e->best_to.rank)
            s += 1000;
        if (m.captured)
            s += 100 + (m.captured->kind == Kind::Pawn ? 0 : 50);
        if (!attacker_side && m.piece.kind == Kind::King)
            s += 20;
        return s;
    };
    std::stable_sort(moves.begin(), moves.end(), [&](const Move& a, const Move& b) { return score(a) > score(b); });
}

bool MateSearch::attacker_node(unsigned n) {
    count_node();
    const SearchKey k = board_.key();
    const Square origin = board_.origin();
    const Entry* e = nullptr;
    if (auto it = table_.find(k); it != table_.end()) {
        e = &it->second;
        if (e->win <= n)
            return true;
        if (e->lose >= static_cast<int>(n))
            return false;
    }
    std::vector<Move> moves;
    bool truncated = false;
    generate(attacker_, moves, truncated);
    stats_.attacker_truncated |= truncated;
    order(moves, e, origin, true);
    const Color defender = opposite(attacker_);
    const auto ak = board_.king(attacker_);
    const bool attacker_in_check = ak && movegen::is_attacked(board_, *ak, defender);
    const auto target = board_.king(defender);
    for (const Move& m : moves) {
        // a mate in one has to give check: the piece lands on a line or a
        // knight jump from the king, or uncovers a line through its old square
        if (n == 1 && target && !lined_up(m.to, *target) && !lined_up(m.from, *target))
            continue;
        SearchBoard::Undo u;
        board_.make(m, u);
        bool ok = false;
        if (legal_after(m, attacker_in_check)) {
            if (n == 1) {
                const auto dk = board_.king(defender);
                ok = dk && movegen::is_attacked(board_, *dk, attacker_) && !has_legal_move(defender);
            } else {
                ok = defender_node(n - 1);
            }
        }
        board_.unmake(m, u);
        if (ok) {
            remember(k, origin, n, true, &m);
            return true;
        }
    }
    remember(k, origin, n, false, nullptr);
    return false;
}

bool MateSearch::defender_node(unsigned n) {
    count_node();
    const Color defender = opposite(attacker_);
    const auto dk = board_.king(defender);
    const bool in_check = dk && movegen::is_attacked(board_, *dk, attacker_);
    if (n == 0)
        return in_check && !has_legal_move(defender);

    const SearchKey k = board_.key();
    const Square origin = board_.origin();
    const Entry* e = nullptr;
    if (auto it = table_.find(k); it != table_.end()) {
        e = &it->second;
        if (e->win <= n)
            return true;
        if (e->lose >= static_cast<int>(n))
            return false;
    }
    std::vector<Move> moves;
    bool truncated = false;
    generate(defender, moves, truncated);
    stats_.defender_truncated |= truncated;
    order(moves, e, origin, false);
    bool any_legal = false;
    for (const Move& m : moves) {
        SearchBoard::Undo u;
        board_.make(m, u);
        if (!legal_after(m, in_check)) {
            board_.unmake(m, u);
            continue;
        }
        any_legal = true;
        const bool mated = attacker_node(n);
        board_.unmake(m, u);
        if (!mated) {
            remember(k, origin, n, false, &m);
            return false;
        }
    }
    bool result;
    if (any_legal)
        result = true;
    else if (in_check)
        result = !has_legal_move(defender);  // escapes beyond the ray bound count as escapes
    else
        result = false;  // stalemate, or only far slides: not a forced mate
    remember(k, origin, n, result, nullptr);
    return result;
}

std::optional<bool> MateSearch::mate_within(unsigned n) {
    call_start_ = stats_.nodes;
    try {
        if (board_.side_to_move() == attacker_)
            return n == 0 ? false : attacker_node(n);
        return defender_node(n);
    } catch (const NodeCapHit&) {
        stats_.node_cap_hit = true;
        // a capped search leaves the board mid-line; rebuild it
        board_ = SearchBoard(root_);
        return std::nullopt;
    }
}

std::optional<bool> MateSearch::mate_within(const Position& p, unsigned n) {
    set_root(p);
    return mate_within(n);
}

std::optional<unsigned> MateSearch::solve(unsigned max_moves) {
    for (unsigned n = 0; n <= max_moves; ++n) {
        const auto r = mate_within(n);
        if (!r)
            return std::nullopt;
        if (*r)
            return n;
    }
    return std::nullopt;
}

std::optional<unsigned> MateSearch::solve(const Position& p, unsigned max_moves) {
    set_root(p);
    return solve(max_moves);
}

std::vector<Move> MateSearch::principal_variation(unsigned n) {
    std::vector<Move> line;
    const Position root = root_;
    Position pos = root_;
    unsigned left = n;
    for (;;) {
        const bool attacker_to_move = pos.side_to_move() == attacker_;
        if (!attacker_to_move && left == 0)
            break;
        std::vector<Move> moves = legal_moves(pos, opts_.ray_bound).moves;
        if (moves.empty())
            break;
        std::optional<Move> pick;
        if (attacker_to_move) {
            for (const Move& m : moves) {
                const Position next = apply_move(pos, m);
                const auto r = mate_within(next, left - 1);
                if (r && *r) {
                    pick = m;
                    break;
                }
            }
            if (!pick)
                break;
            --left;
        } else {
            unsigned worst = 0;
            for (const Move& m : moves) {
                const Position next = apply_move(pos, m);
                unsigned d = left;
                for (unsigned k = 1; k <= left; ++k) {
                    const auto r = mate_within(next, k);
                    if (r && *r) {
                        d = k;
                        break;
                    }
                }
                if (!pick || d > worst) {
                    pick = m;
                    worst = d;
                }
            }
            left = worst;
        }
        line.push_back(*pick);
        pos = apply_move(pos, *pick);
    }
    set_root(root);
    return line;
}

// ---- unopposed search

namespace {

struct Unopposed {
    SearchBoard board;
    Color attacker;
    unsigned ray_bound;
    bool truncated = false;
    std::unordered_map<SearchKey, unsigned, SearchKeyHash> failed;  // deepest depth known to fail

    bool mated_now() {
        const Color d = opposite(attacker);
        const auto k = board.king(d);
        if (!k || !movegen::is_attacked(board, *k, attacker))
            return false;
        const unsigned bound = std::max(ray_bound, movegen::exhaustive_ray_bound(board.bounds()));
        const std::vector<Square> from(board.squares(d).begin(), board.squares(d).end());
        std::vector<Move> moves;
        for (const Square& s : from) {
            moves.clear();
            movegen::piece_moves(board, s, *board.find(s), bound, [&](const Move& m) { moves.push_back(m); });
            for (const Move& m : moves) {
                SearchBoard::Undo u;
                board.make(m, u);
                const auto kk = board.king(d);
                const bool ok = !kk || !movegen::is_attacked(board, *kk, attacker);
                board.unmake(m, u);
                if (ok)
                    return false;
            }
        }
        return true;
    }

    // attacker to move; mate within d attacker moves
    bool search(unsigned d) {
        const SearchKey k = board.key();
        if (auto it = failed.find(k); it != failed.end() && it->second >= d)
            return false;
        std::vector<Move> moves;
        const std::vector<Square> from(board.squares(attacker).begin(), board.squares(attacker).end());
        for (const Square& s : from)
            truncated |= movegen::piece_moves(board, s, *board.find(s), ray_bound,
                                              [&](const Move& m) { moves.push_back(m); });
        for (const Move& m : moves) {
            SearchBoard::Undo u;
            board.make(m, u);
            bool ok = false;
            const auto own = board.king(attacker);
            if (!own || !movegen::is_attacked(board, *own, opposite(attacker))) {
                if (mated_now()) {
                    ok = true;
                } else if (d > 1) {
                    board.pass();
                    ok = search(d - 1);
                    board.pass();
                }
            }
            board.unmake(m, u);
            if (ok)
                return true;
        }
        auto& slot = failed[k];
        slot = std::max(slot, d);
        return false;
    }
};

}  // namespace

std::optional<unsigned> unopposed_mate_search(const Position& p, Color attacker, unsigned bound, unsigned ray_bound,
                                              bool* truncated) {
    Position start = p;
    start.set_side_to_move(attacker);
    Unopposed u{SearchBoard(start), attacker, ray_bound, false, {}};
    std::optional<unsigned> result;
    if (u.mated_now())
        result = 0;
    for (unsigned d = 1; !result && d <= bound; ++d)
        if (u.search(d))
            result = d;
    if (truncated)
        *truncated = u.truncated;
    return result;
}

}  // namespace ichess
