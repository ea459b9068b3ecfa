#include "ichess/valuation.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "ichess/movegen.hpp"

namespace ichess {

GameValue GameValue::valued(Ordinal v, Diagnostics d) {
    GameValue g;
    g.verdict = Verdict::Valued;
    g.value = std::move(v);
    g.diag = std::move(d);
    return g;
}

GameValue GameValue::unvalued(Diagnostics d) {
    GameValue g;
    g.verdict = Verdict::Unvalued;
    g.diag = std::move(d);
    return g;
}

GameValue GameValue::unknown(Diagnostics d) {
    GameValue g;
    g.verdict = Verdict::Unknown;
    g.diag = std::move(d);
    return g;
}

std::optional<std::uint64_t> GameValue::finite() const noexcept {
    if (!is_valued())
        return std::nullopt;
    return value.as_natural();
}

const char* to_string(GameValue::Verdict v) noexcept {
    switch (v) {
    case GameValue::Verdict::Valued: return "Valued";
    case GameValue::Verdict::Unvalued: return "Unvalued";
    case GameValue::Verdict::Unknown: return "Unknown";
    }
    return "?";
}

std::string to_string(const GameValue& v) {
    if (v.is_valued())
        return "Valued(" + to_string(v.value) + ")";
    return to_string(v.verdict);
}

namespace {

bool only_king(const Position& p, Color c) {
    return std::none_of(p.pieces().begin(), p.pieces().end(),
                        [c](const Position::Entry& e) { return e.second.color == c && e.second.kind != Kind::King; });
}

// Retrograde analysis over the whole reachable graph. Gives up (nullopt) when
// the graph exceeds `cap` positions or any ray leaves the pieces' reach.
std::optional<GameValue> closed_graph_value(const Position& root, std::size_t cap, Diagnostics& diag) {
    struct Node {
        Position pos;
        std::vector<std::size_t> succ;
        std::vector<std::size_t> pred;
        bool terminal_win = false;  // Black to move and checkmated
    };
    std::vector<Node> nodes;
    std::unordered_map<SearchKey, std::size_t, SearchKeyHash> index;
    auto intern = [&](const Position& p) -> std::optional<std::size_t> {
        const SearchKey k = SearchBoard(p).key();
        if (auto it = index.find(k); it != index.end())
            return it->second;
        if (nodes.size() >= cap)
            return std::nullopt;
        index.emplace(k, nodes.size());
        nodes.push_back(Node{p, {}, {}, false});
        return nodes.size() - 1;
    };
    intern(root);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Position pos = nodes[i].pos;
        const MoveList ml = legal_moves(pos, movegen::exhaustive_ray_bound(pos.bounds()));
        if (ml.truncated_ray) {
            diag.note = "reachable graph not closed (open ray)";
            return std::nullopt;
        }
        if (ml.moves.empty()) {
            nodes[i].terminal_win = pos.side_to_move() == Color::Black && is_check(pos, Color::Black);
            continue;
        }
        for (const Move& m : ml.moves) {
            const auto j = intern(apply_unchecked(pos, m));
            if (!j) {
                diag.note = "reachable graph exceeds the closed-graph cap";
                return std::nullopt;
            }
            nodes[i].succ.push_back(*j);
        }
    }
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j : nodes[i].succ)
            nodes[j].pred.push_back(i);

    constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> value(nodes.size(), kNone);
    std::vector<std::size_t> remaining(nodes.size());
    std::vector<std::uint64_t> best(nodes.size(), 0);
    // bucketed by value: white nodes get 1 + min, black nodes max
    std::map<std::uint64_t, std::vector<std::size_t>> queue;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        remaining[i] = nodes[i].succ.size();
        if (nodes[i].terminal_win)
            queue[0].push_back(i);
    }
    while (!queue.empty()) {
        auto [v, batch] = *queue.begin();
        queue.erase(queue.begin());
        for (std::size_t i : batch) {
            if (value[i] != kNone)
                continue;
            value[i] = v;
            for (std::size_t p : nodes[i].pred) {
                if (value[p] != kNone)
                    continue;
                if (nodes[p].pos.side_to_move() == Color::White) {
                    queue[v + 1].push_back(p);
                } else {
                    best[p] = std::max(best[p], v);
                    if (--remaining[p] == 0)
                        queue[best[p]].push_back(p);
                }
            }
        }
    }
    diag.nodes += nodes.size();
    diag.note = "closed reachable graph of " + std::to_string(nodes.size()) + " positions";
    if (value[0] == kNone)
        return GameValue::unvalued(diag);
    return GameValue::valued(Ordinal::natural(value[0]), diag);
}

}  // namespace

GameValue value_exact(const Position& p, unsigned depth_bound, unsigned ray_bound, const ValueOptions& opts) {
    if (p.fragment())
        throw InvalidPosition("cannot value a fragment");
    validate_playable(p);
    Diagnostics diag;

    const bool black_to_move = p.side_to_move() == Color::Black;
    if (!has_legal_move(p)) {
        if (black_to_move && is_check(p, Color::Black))
            return GameValue::valued(Ordinal{}, diag);
        diag.note = is_check(p, p.side_to_move()) ? "white is checkmated" : "stalemate";
        return GameValue::unvalued(diag);
    }
    if (only_king(p, Color::White)) {
        diag.note = "white has only the king";
        return GameValue::unvalued(diag);
    }

    const unsigned max_moves = black_to_move ? depth_bound / 2 : (depth_bound + 1) / 2;
    MateSearch search(p, Color::White, MateOptions{ray_bound, opts.node_cap});
    const auto n = search.solve(max_moves);
    diag.nodes = search.stats().nodes;
    if (n) {
        diag.truncated_ray = search.stats().defender_truncated;
        return GameValue::valued(Ordinal::natural(*n), diag);
    }
    if (search.stats().node_cap_hit) {
        diag.node_cap_hit = true;
        diag.truncated_ray = search.stats().attacker_truncated;
        return GameValue::unknown(diag);
    }
    if (auto closed = closed_graph_value(p, opts.closed_graph_cap, diag))
        return *closed;
    diag.depth_exhausted = true;
    diag.truncated_ray = search.stats().attacker_truncated;
    return GameValue::unknown(diag);
}

// ---- families

namespace {

// The single Black move turning `base` into `target`, if there is one.
std::optional<Move> connecting_move(const Position& base, const Position& target) {
    if (base.side_to_move() != Color::Black || target.side_to_move() != Color::White)
        return std::nullopt;
    std::vector<Square> vacated, changed;
    for (const auto& [s, piece] : base.pieces()) {
        const Piece* t = target.find(s);
        if (!t)
            vacated.push_back(s);
        else if (!(*t == piece))
            changed.push_back(s);
    }
    for (const auto& [s, piece] : target.pieces())
        if (!base.occupied(s))
            changed.push_back(s);
    if (vacated.size() != 1 || changed.size() != 1)
        return std::nullopt;
    const Piece mover = *base.find(vacated[0]);
    const Move m{vacated[0], changed[0], mover, base.at(changed[0])};
    if (!is_legal(base, m) || !(apply_move(base, m) == target))
        return std::nullopt;
    return m;
}

}  // namespace

GameValue value_family(const PositionFamily& f, const Ordinal& hint, const SampleEvaluator& evaluate) {
    if (f.samples.empty())
        throw HintRejected("family has no samples");
    std::vector<std::uint64_t> ns = f.samples;
    std::sort(ns.begin(), ns.end());
    if (f.base && f.base->side_to_move() != Color::Black)
        throw HintRejected("family base must have Black to move");

    GameValue out;
    std::vector<Ordinal> values;
    for (std::uint64_t n : ns) {
        const Position pos = f.generate(n);
        if (f.base && !connecting_move(*f.base, pos))
            throw HintRejected("sample " + f.parameter + "=" + std::to_string(n) +
                               " is not one Black move from the base position");
        GameValue v = evaluate(pos, n);
        out.diag.nodes += v.diag.nodes;
        out.diag.truncated_ray |= v.diag.truncated_ray;
        out.samples.push_back(FamilySample{n, v});
        if (!v.is_valued())
            throw HintRejected("sample " + f.parameter + "=" + std::to_string(n) + " is " + to_string(v));
        values.push_back(v.value);
    }
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i - 1] < values[i]))
            throw HintRejected("sample values not strictly increasing at " + f.parameter + "=" +
                               std::to_string(ns[i]) + ": " + to_string(values[i - 1]) + " then " +
                               to_string(values[i]));
    try {
        sup(values, hint);
    } catch (const InvalidSupremumHint& e) {
        throw HintRejected(e.what());
    }

    // hint = beta + w^e; samples = beta + w^(e-1)*c(n) + lower, c strictly increasing
    const unsigned e = hint.terms().back().exponent;
    std::vector<std::pair<unsigned, std::uint64_t>> beta_raw;
    for (const CnfTerm& t : hint.terms())
        beta_raw.emplace_back(t.exponent, t.coefficient);
    beta_raw.back().second -= 1;
    const Ordinal beta = Ordinal::normalize(beta_raw, std::max(e, kDefaultExponentCap));
    std::uint64_t previous = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (const CnfTerm& t : values[i].terms())
            if (t.exponent >= e && t.coefficient != beta.coefficient(t.exponent))
                throw HintRejected("sample " + to_string(values[i]) + " does not extend " + to_string(beta));
        for (const CnfTerm& t : beta.terms())
            if (values[i].coefficient(t.exponent) != t.coefficient)
                throw HintRejected("sample " + to_string(values[i]) + " does not extend " + to_string(beta));
        const std::uint64_t c = values[i].coefficient(e - 1);
        if (i > 0 && c <= previous)
            throw HintRejected("coefficient of w^" + std::to_string(e - 1) + " does not grow with " + f.parameter);
        previous = c;
    }
    out.verdict = GameValue::Verdict::Valued;
    out.value = hint;
    out.tag = "family-evidence";
    return out;
}

SampleEvaluator exact_evaluator(unsigned depth_bound, unsigned ray_bound, const ValueOptions& opts) {
    return [=](const Position& p, std::uint64_t) { return value_exact(p, depth_bound, ray_bound, opts); };
}

std::optional<unsigned> unopposed_mate_distance(const Position& p, Color attacker, unsigned bound,
                                                unsigned ray_bound) {
    if (!p.king(opposite(attacker)))
        return std::nullopt;
    return unopposed_mate_search(p, attacker, bound, ray_bound);
}

// ---- threats

const char* to_string(ThreatResult::Kind k) noexcept {
    switch (k) {
    case ThreatResult::Kind::Forced: return "Forced";
    case ThreatResult::Kind::NotForced: return "NotForced";
    case ThreatResult::Kind::Unanswerable: return "Unanswerable";
    }
    return "?";
}

namespace {

// True when the side to move in `q` (the threatened side) survives the
// threatener's mate attempts for opts.bound moves.
bool holds(MateSearch& search, const Position& after_reply, const ThreatOptions& opts) {
    const auto r = search.mate_within(after_reply, opts.bound);
    if (!r)
        throw BoundExhausted("node cap " + std::to_string(opts.node_cap) + " hit in threat analysis");
    return !*r;
}

// `search` has the threatening side as attacker; its table may be shared
// between calls.
ThreatResult classify(MateSearch& search, const Position& before, const Move& threat, const ThreatOptions& opts) {
    const Color threatener = before.side_to_move();
    if (!is_legal(before, threat))
        throw IllegalMove("threat " + to_string(threat) + " is not legal");
    const Position q = apply_move(before, threat);
    const std::uint64_t start = search.stats().nodes;
    ThreatResult out;
    auto finish = [&](ThreatResult::Kind k) {
        out.kind = k;
        out.nodes = search.stats().nodes - start;
        out.truncated_ray = search.stats().attacker_truncated || search.stats().defender_truncated;
        return out;
    };

    const MoveList replies = legal_moves(q, opts.ray_bound);
    if (replies.moves.empty())
        return finish(ThreatResult::Kind::Unanswerable);

    // Does a pass-like move hold?
    if (opts.progress_move) {
        if (is_legal(q, *opts.progress_move) && holds(search, apply_move(q, *opts.progress_move), opts))
            return finish(ThreatResult::Kind::NotForced);
    } else if (!is_check(q, q.side_to_move())) {
        Position passed = q;
        passed.set_side_to_move(threatener);
        if (holds(search, passed, opts))
            return finish(ThreatResult::Kind::NotForced);
    }

    for (const Move& m : replies.moves)
        if (holds(search, apply_unchecked(q, m), opts))
            out.answers.push_back(m);
    if (out.answers.empty())
        return finish(ThreatResult::Kind::Unanswerable);
    if (opts.all_quiet_moves) {
        const bool every_quiet = std::all_of(replies.moves.begin(), replies.moves.end(), [&](const Move& m) {
            return m.captured || std::find(out.answers.begin(), out.answers.end(), m) != out.answers.end();
        });
        if (every_quiet)
            return finish(ThreatResult::Kind::NotForced);
    }
    return finish(ThreatResult::Kind::Forced);
}

}  // namespace

ThreatResult is_forced_reply(const Position& before, const Move& threat, const ThreatOptions& opts) {
    MateSearch search(before, before.side_to_move(), MateOptions{opts.ray_bound, opts.node_cap});
    return classify(search, before, threat, opts);
}

namespace {

struct ChainSearch {
    Color side;
    const ChainOptions& opts;
    MateSearch threats;
    MateSearch safety;
    std::uint64_t nodes = 0;
    std::unordered_map<SearchKey, ChainResult, SearchKeyHash> memo;

    ChainSearch(const Position& p, Color s, const ChainOptions& o)
        : side(s),
          opts(o),
          threats(p, s, MateOptions{o.threat.ray_bound, o.threat.node_cap}),
          safety(p, opposite(s), MateOptions{o.threat.ray_bound, o.threat.node_cap}) {}

    bool losing(const Position& r) {
        const std::uint64_t start = safety.stats().nodes;
        const auto mated = safety.mate_within(r, opts.safety_bound);
        nodes += safety.stats().nodes - start;
        if (!mated)
            throw BoundExhausted("node cap hit in the chain safety check");
        return *mated;
    }

    ChainResult run(const Position& p, unsigned depth) {
        if (depth >= opts.max_length)
            return {};
        const SearchKey k = SearchBoard(p).key();
        if (auto it = memo.find(k); it != memo.end())
            return it->second;
        ChainResult best;
        for (const Move& m : legal_moves(p, opts.threat.ray_bound).moves) {
            if (opts.candidate && !opts.candidate(p, m))
                continue;
            const ThreatResult t = classify(threats, p, m, opts.threat);
            nodes += t.nodes;
            if (t.kind != ThreatResult::Kind::Forced)
                continue;
            const Position q = apply_unchecked(p, m);
            for (const Move& a : t.answers) {
                const Position r = apply_unchecked(q, a);
                if (opts.safety_bound > 0 && losing(r))
                    continue;
                ChainResult sub = run(r, depth + 1);
                if (sub.length + 1 > best.length) {
                    best.length = sub.length + 1;
                    best.line = {m, a};
                    best.line.insert(best.line.end(), sub.line.begin(), sub.line.end());
                }
            }
        }
        memo.emplace(k, best);
        return best;
    }
};

}  // namespace

ChainResult count_forced_chain(const Position& p, Color side, const ChainOptions& opts) {
    if (p.side_to_move() != side)
        throw InvalidPosition("count_forced_chain needs the threatening side to move");
    ChainSearch cs(p, side, opts);
    ChainResult r = cs.run(p, 0);
    r.nodes = cs.nodes;
    return r;
}

Ordinal main_line_ordinal(const MainLineState& s) {
    return Ordinal::normalize({{3, s.r}, {2, s.h}, {1, s.b}, {0, s.g}});
}

// ---- strategy

std::vector<StrategyEntry> extract_strategy(const Position& p, const GameValue& v, unsigned ray_bound) {
    if (!v.finite())
        throw StrategyError("strategy extraction needs a finite Valued input, got " + to_string(v));
    const std::uint64_t n = *v.finite();
    MateSearch search(p, Color::White, MateOptions{ray_bound, 50'000'000});
    auto distance = [&](const Position& q, std::uint64_t limit) -> std::uint64_t {
        const auto d = search.solve(q, static_cast<unsigned>(limit));
        if (!d)
            throw StrategyError("lost track of the mate while extracting the strategy");
        return *d;
    };
    if (distance(p, n) != n)
        throw StrategyError("value " + std::to_string(n) + " does not match the position");

    std::vector<StrategyEntry> table;
    std::unordered_map<SearchKey, bool, SearchKeyHash> seen;
    std::function<void(const Position&, std::uint64_t)> visit = [&](const Position& q, std::uint64_t value) {
        if (value == 0)
            return;
        const SearchKey k = SearchBoard(q).key();
        if (!seen.emplace(k, true).second)
            return;
        if (q.side_to_move() == Color::Black) {
            for (const Move& b : legal_moves(q, ray_bound).moves) {
                const Position r = apply_unchecked(q, b);
                visit(r, distance(r, value));
            }
            return;
        }
        std::optional<Move> pick;
        std::uint64_t pick_value = 0;
        for (const Move& m : legal_moves(q, ray_bound).moves) {
            const Position r = apply_unchecked(q, m);
            const auto d = search.solve(r, static_cast<unsigned>(value - 1));
            if (d && (!pick || *d < pick_value)) {
                pick = m;
                pick_value = *d;
            }
        }
        if (!pick)
            throw StrategyError("no value-reducing move found");
        table.push_back(StrategyEntry{q, *pick, value});
        visit(apply_unchecked(q, *pick), pick_value);
    };
    visit(p, n);
    return table;
}

// ---- reports

SolveReport solve(const Position& p, unsigned depth_bound, unsigned ray_bound, const ValueOptions& opts) {
    SolveReport r;
    r.value = value_exact(p, depth_bound, ray_bound, opts);
    r.first_mover = p.side_to_move();
    if (const auto n = r.value.finite(); n && *n > 0) {
        MateSearch search(p, Color::White, MateOptions{ray_bound, opts.node_cap});
        if (search.solve(static_cast<unsigned>(*n)))
            r.principal_variation = search.principal_variation(static_cast<unsigned>(*n));
    }
    return r;
}

std::string line_notation(const std::vector<Move>& moves, Color first_mover, int number) {
    std::string out;
    Color side = first_mover;
    for (std::size_t i = 0; i < moves.size(); ++i) {
        if (!out.empty())
            out += ' ';
        if (side == Color::White)
            out += std::to_string(number) + ".";
        else if (i == 0)
            out += std::to_string(number) + "...";
        out += to_string(moves[i]);
        if (side == Color::Black)
            ++number;
        side = opposite(side);
    }
    return out;
}

std::string format_report(const SolveReport& r) {
    std::ostringstream os;
    const GameValue& v = r.value;
    os << "verdict: " << to_string(v.verdict) << "\n";
    if (v.is_valued())
        os << "ordinal: " << to_string(v.value) << "\n";
    os << "nodes: " << v.diag.nodes << "\n";
    os << "truncated_ray: " << (v.diag.truncated_ray ? "yes" : "no") << "\n";
    if (v.diag.depth_exhausted)
        os << "depth_exhausted: yes\n";
    if (v.diag.node_cap_hit)
        os << "node_cap_hit: yes\n";
    if (!v.diag.note.empty())
        os << "note: " << v.diag.note << "\n";
    if (!v.tag.empty())
        os << "tag: " << v.tag << "\n";
    for (const FamilySample& s : v.samples)
        os << "sample " << s.n << ": " << to_string(s.value) << "\n";
    if (!r.principal_variation.empty()) {
        os << "pv: " << line_notation(r.principal_variation, r.first_mover) << "\n";
    }
    return os.str();
}

}  // namespace ichess
