#include <algorithm>
#include <regex>
#include <sstream>

#include "ichess/dsl.hpp"
#include "ichess/error.hpp"

namespace ichess {

namespace {

const std::regex kNumber(R"(^(\d+)(\.\.\.|\.)(.*)$)");
const std::regex kMove(R"(^([KQRBNP])?(.*?)(x)?(f-?\d+:|[a-z])(-?\d+|@\w+|\{\w+\})$)");
const std::regex kSource(R"(^(f-?\d+:|[a-z])?(-?\d+)?-?$)");

int file_number(const std::string& f) {
    if (f.size() == 1)
        return f[0] - 'a' + 1;
    return std::stoi(f.substr(1, f.size() - 2));
}

std::string strip_comments(std::string_view text) {
    std::string out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
                line.resize(i);
                break;
            }
        }
        out += line;
        out += '\n';
    }
    // the ellipsis character used in printed lines
    for (std::size_t pos; (pos = out.find("\xE2\x80\xA6")) != std::string::npos;)
        out.replace(pos, 3, "...");
    return out;
}

HalfMove parse_move(const std::string& token, const std::string& body) {
    std::string t = body;
    HalfMove h;
    h.text = token;
    const std::string forced = "!forced";
    if (t.size() > forced.size() && t.compare(t.size() - forced.size(), forced.size(), forced) == 0) {
        h.forced = true;
        t.resize(t.size() - forced.size());
    }
    while (!t.empty() && (t.back() == '+' || t.back() == '#' || t.back() == '!' || t.back() == '?'))
        t.pop_back();
    std::smatch m;
    if (!std::regex_match(t, m, kMove))
        throw ParseError("cannot read half-move '" + token + "'");
    if (m[1].matched) {
        h.piece = Piece::from_letter(m[1].str()[0])->kind;
        h.explicit_pawn = h.piece == Kind::Pawn;
    }
    const std::string src = m[2].str();
    std::smatch sm;
    if (!std::regex_match(src, sm, kSource))
        throw ParseError("bad source in half-move '" + token + "'");
    if (sm[1].matched)
        h.from_file = file_number(sm[1].str());
    if (sm[2].matched)
        h.from_rank = std::stoi(sm[2].str());
    h.capture = m[3].matched;
    h.to_file = file_number(m[4].str());
    const std::string rank = m[5].str();
    if (rank[0] == '@')
        h.to_param = rank.substr(1);
    else if (rank[0] == '{')
        h.to_param = rank.substr(1, rank.size() - 2);
    else
        h.to_rank = std::stoi(rank);
    return h;
}

std::string move_text(const HalfMove& h) {
    std::string s;
    if (h.piece != Kind::Pawn || h.explicit_pawn)
        s += Piece{Color::White, h.piece}.letter();
    if (h.from_file)
        s += file_name(*h.from_file);
    if (h.from_rank) {
        // a file written as f<int>: already ends in ':'
        s += std::to_string(*h.from_rank);
    }
    if (h.capture)
        s += 'x';
    s += file_name(h.to_file);
    s += h.to_param.empty() ? std::to_string(*h.to_rank) : "@" + h.to_param;
    if (h.forced)
        s += "!forced";
    return s;
}

bool matches(const HalfMove& h, const Move& m, int rank) {
    if (m.piece.kind != h.piece || m.to.file != h.to_file || m.to.rank != rank)
        return false;
    if (h.from_file && m.from.file != *h.from_file)
        return false;
    if (h.from_rank && m.from.rank != *h.from_rank)
        return false;
    if (h.piece == Kind::Pawn)
        return h.capture == m.captured.has_value();
    return !h.capture || m.captured.has_value();
}

std::string label(std::size_t index, const HalfMove& h) {
    return "half-move " + std::to_string(index + 1) + " '" + h.text + "'";
}

}  // namespace

bool operator==(const HalfMove& a, const HalfMove& b) {
    return a.color == b.color && a.number == b.number && a.piece == b.piece && a.explicit_pawn == b.explicit_pawn &&
           a.from_file == b.from_file && a.from_rank == b.from_rank && a.capture == b.capture &&
           a.to_file == b.to_file && a.to_rank == b.to_rank && a.to_param == b.to_param && a.forced == b.forced;
}

LineScript parse_line(std::string_view text) {
    LineScript out;
    std::string cleaned = strip_comments(text);
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::istringstream in(cleaned);
    std::string token;
    int number = 0;
    std::optional<Color> pending;
    while (in >> token) {
        if (token == "!forced") {
            if (out.moves.empty())
                throw ParseError("'!forced' before any half-move");
            out.moves.back().forced = true;
            continue;
        }
        std::string body = token;
        std::smatch m;
        if (std::regex_match(token, m, kNumber)) {
            number = std::stoi(m[1].str());
            pending = m[2].str() == "." ? Color::White : Color::Black;
            body = m[3].str();
            if (body.empty())
                continue;
        }
        HalfMove h = parse_move(token, body);
        if (pending) {
            h.color = pending;
            h.number = number;
            pending.reset();
        } else if (!out.moves.empty() && out.moves.back().color) {
            h.color = opposite(*out.moves.back().color);
            h.number = *h.color == Color::White ? number + 1 : number;
            number = h.number;
        }
        out.moves.push_back(h);
    }
    if (pending)
        throw ParseError("move number without a half-move");
    return out;
}

std::string to_text(const LineScript& s) {
    std::string out;
    const HalfMove* prev = nullptr;
    for (const HalfMove& h : s.moves) {
        if (!out.empty())
            out += ' ';
        if (h.color == Color::White)
            out += std::to_string(h.number) + ".";
        else if (h.color == Color::Black &&
                 !(prev && prev->color == Color::White && prev->number == h.number))
            out += std::to_string(h.number) + "...";
        out += move_text(h);
        prev = &h;
    }
    return out;
}

LineScript script_from_moves(const Position& start, const std::vector<Move>& moves) {
    LineScript s;
    Position cur = start;
    int number = 1;
    for (const Move& m : moves) {
        HalfMove h;
        h.color = cur.side_to_move();
        h.number = number;
        h.piece = m.piece.kind;
        h.capture = m.captured.has_value();
        h.to_file = m.to.file;
        h.to_rank = m.to.rank;
        if (m.piece.kind == Kind::Pawn) {
            if (h.capture)
                h.from_file = m.from.file;
        } else {
            const auto legal = legal_moves(cur, kDefaultRayBound).moves;
            auto count = [&](const HalfMove& probe) {
                return std::count_if(legal.begin(), legal.end(),
                                     [&](const Move& o) { return matches(probe, o, m.to.rank); });
            };
            if (count(h) > 1) {
                HalfMove by_file = h, by_rank = h;
                by_file.from_file = m.from.file;
                by_rank.from_rank = m.from.rank;
                if (count(by_file) == 1)
                    h = by_file;
                else if (count(by_rank) == 1)
                    h = by_rank;
                else {
                    h.from_file = m.from.file;
                    h.from_rank = m.from.rank;
                }
            }
        }
        h.text = move_text(h);
        s.moves.push_back(h);
        if (cur.side_to_move() == Color::Black)
            ++number;
        cur = apply_move(cur, m);
    }
    return s;
}

Position pass(const Position& p) {
    Position out = p;
    out.set_side_to_move(opposite(p.side_to_move()));
    return out;
}

ReplayResult replay(const Position& start, const LineScript& script, const ReplayOptions& opts) {
    ReplayResult res;
    res.positions.push_back(start);
    Position cur = start;
    std::vector<Position> moved_from;
    for (std::size_t i = 0; i < script.moves.size(); ++i) {
        const HalfMove& h = script.moves[i];
        bool passed = false;
        if (h.color && *h.color != cur.side_to_move()) {
            cur = pass(cur);
            passed = true;
            res.after_pass.push_back(i);
        }
        int rank = 0;
        if (h.to_param.empty()) {
            rank = *h.to_rank;
        } else {
            auto it = opts.bindings.find(h.to_param);
            if (it == opts.bindings.end())
                throw ReplayError(label(i, h) + ": no binding for @" + h.to_param);
            rank = it->second;
        }
        std::vector<Move> found;
        for (const Move& m : legal_moves(cur, opts.ray_bound).moves)
            if (matches(h, m, rank))
                found.push_back(m);
        if (found.empty())
            throw ReplayError(label(i, h) + ": no legal move matches");
        if (found.size() > 1) {
            std::string list;
            for (const Move& m : found)
                list += " " + to_string(m);
            throw ReplayError(label(i, h) + ": ambiguous between" + list);
        }
        const Move move = found.front();
        if (h.forced) {
            if (i == 0 || passed)
                throw ReplayError(label(i, h) + ": '!forced' needs the opponent's threat just before it");
            ThreatResult tr = is_forced_reply(moved_from.back(), res.moves.back(), opts.threat);
            const bool listed = std::find(tr.answers.begin(), tr.answers.end(), move) != tr.answers.end();
            if (tr.kind != ThreatResult::Kind::Forced || !listed)
                throw ReplayError(label(i, h) + ": not a forced reply (" + to_string(tr.kind) + ")");
            res.forced_checks.push_back(tr);
        }
        moved_from.push_back(cur);
        cur = apply_move(cur, move);
        res.moves.push_back(move);
        res.positions.push_back(cur);
    }
    return res;
}

std::vector<Position> replay_positions(const Position& start, const LineScript& script,
                                       const std::map<std::string, int>& bindings) {
    ReplayOptions opts;
    opts.bindings = bindings;
    return replay(start, script, opts).positions;
}

}  // namespace ichess
