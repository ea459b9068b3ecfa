#pragma once

// Mutable board and forced-mate search used by the valuation code.

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ichess/rules.hpp"

namespace ichess {

// 128-bit position key, invariant under translation of the whole board.
struct SearchKey {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    friend bool operator==(const SearchKey&, const SearchKey&) = default;
};

struct SearchKeyHash {
    std::size_t operator()(const SearchKey& k) const noexcept { return static_cast<std::size_t>(k.a ^ (k.b * 0x9E3779B97F4A7C15ull)); }
};

// Sparse board with make/unmake. The bounding box only grows while moves are
// made (unmake restores it), which is all the ray scans need.
class SearchBoard {
public:
    explicit SearchBoard(const Position& p);

    const Piece* find(Square s) const noexcept {
        const unsigned x = static_cast<unsigned>(s.file - gx_), y = static_cast<unsigned>(s.rank - gy_);
        if (x < static_cast<unsigned>(gw_) && y < static_cast<unsigned>(gh_)) {
            const Cell& c = grid_[static_cast<std::size_t>(y) * static_cast<std::size_t>(gw_) + x];
            return c.index >= 0 ? &c.piece : nullptr;
        }
        return spill_count_ == 0 ? nullptr : find_spill(s);
    }
    Bounds bounds() const noexcept { return box_; }
    Color side_to_move() const noexcept { return side_; }
    std::optional<Square> king(Color c) const noexcept;
    const std::vector<Square>& squares(Color c) const noexcept { return lists_[static_cast<int>(c)]; }
    std::size_t size() const noexcept { return count_; }

    struct Undo {
        Bounds box;
    };
    void make(const Move& m, Undo& u);
    void unmake(const Move& m, const Undo& u);
    // Side to move passes.
    void pass() noexcept { side_ = opposite(side_); }

    SearchKey key() const noexcept;
    // Lower-left corner of the exact bounding box (the translation origin of key()).
    Square origin() const noexcept;
    Position to_position() const;

private:
    // Squares inside the grid (the root box plus a margin) are stored
    // densely; anything that wanders further goes to a small hash table.
    struct Cell {
        Piece piece;
        int index = -1;  // position in lists_, -1 = empty
    };
    struct Slot {
        int file = 0;
        int rank = 0;
        Piece piece;
        int index = -1;  // -1 = free slot
    };

    const Piece* find_spill(Square s) const noexcept;
    Cell* cell(Square s) noexcept;
    const Cell* cell(Square s) const noexcept;
    std::size_t slot_of(Square s) const noexcept;
    Slot* lookup(Square s) noexcept;
    void insert(Square s, Piece p);
    Piece erase(Square s);
    void spill_insert(Square s, Piece p, int index);
    Slot spill_erase(Square s);
    void hash_toggle(Square s, Piece p, long long sign) noexcept;
    void count_add(Square s, int delta);

    int gx_ = 0, gy_ = 0, gw_ = 0, gh_ = 0;
    std::vector<Cell> grid_;
    std::vector<Slot> spill_;
    std::size_t spill_mask_ = 0;
    std::size_t spill_count_ = 0;
    std::size_t count_ = 0;
    std::vector<Square> lists_[2];
    std::vector<Square> kings_[2];
    Color side_ = Color::White;
    Bounds box_;
    std::uint64_t h1_ = 0, h2_ = 0;
    // pieces per file and rank, for the key's origin
    std::vector<int> files_, ranks_;
    int lo_file_ = 0, lo_rank_ = 0;  // first nonzero entries of files_ / ranks_
    std::map<int, int> far_files_, far_ranks_;
};

struct MateOptions {
    unsigned ray_bound = kDefaultRayBound;
    std::uint64_t node_cap = 10'000'000;  // per mate_within / solve call
};

struct MateStats {
    std::uint64_t nodes = 0;
    // Attacker rays were cut: a negative answer may be an artifact.
    bool attacker_truncated = false;
    // Defender rays were cut: a positive answer may be an artifact.
    bool defender_truncated = false;
    bool node_cap_hit = false;
};

// Searches for forced mates by `attacker` from a root position. Distances
// count attacker moves; a defender-to-move root that is already mated has
// distance 0.
class MateSearch {
public:
    MateSearch(const Position& root, Color attacker, MateOptions opts = {});

    // Smallest n <= max_moves with a forced mate in n, or nullopt (check
    // stats().node_cap_hit to tell "none" from "gave up").
    std::optional<unsigned> solve(unsigned max_moves);
    // Whether the attacker forces mate within n moves from the root.
    std::optional<bool> mate_within(unsigned n);
    // One line of play realizing a mate in n from the root (attacker plays a
    // fastest mate, defender a longest resistance; ties broken by move order).
    std::vector<Move> principal_variation(unsigned n);

    // Mate within n from an arbitrary position, sharing this search's table.
    std::optional<bool> mate_within(const Position& p, unsigned n);
    // Smallest n <= max_moves from `p`, sharing the table.
    std::optional<unsigned> solve(const Position& p, unsigned max_moves);

    const MateStats& stats() const noexcept { return stats_; }
    std::size_t table_size() const noexcept { return table_.size(); }
    Color attacker() const noexcept { return attacker_; }

private:
    struct Entry {
        std::uint16_t win = 0xFFFF;  // mate proven within this many moves
        std::int16_t lose = -1;      // proven no mate within this many moves
        bool has_best = false;
        Square best_from, best_to;  // relative to the board origin
    };

    bool attacker_node(unsigned n);
    bool defender_node(unsigned n);
    bool has_legal_move(Color side);
    void set_root(const Position& p);
    void generate(Color side, std::vector<Move>& out, bool& truncated);
    // `m` is made on the board; was its mover in check before it?
    bool legal_after(const Move& m, bool was_in_check);
    void remember(const SearchKey& k, Square origin, unsigned n, bool result, const Move* best);
    void order(std::vector<Move>& moves, const Entry* e, Square origin, bool attacker_side);
    void count_node();

    SearchBoard board_;
    Position root_;
    Color attacker_;
    MateOptions opts_;
    MateStats stats_;
    std::uint64_t call_start_ = 0;  // node count when the current call began
    std::unordered_map<SearchKey, Entry, SearchKeyHash> table_;
};

// Fewest attacker moves to deliver mate when the defender never moves, or
// nullopt beyond `bound`.
std::optional<unsigned> unopposed_mate_search(const Position& p, Color attacker, unsigned bound,
                                              unsigned ray_bound, bool* truncated = nullptr);

}  // namespace ichess
