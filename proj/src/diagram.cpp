#include "ichess/diagram.hpp"

#include <cctype>
#include <charconv>
#include <vector>

namespace ichess {

namespace {

[[noreturn]] void parse_fail(int row, int col, const std::string& why) {
    throw ParseError("diagram row " + std::to_string(row) + " col " + std::to_string(col) + ": " + why);
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

Position parse_diagram(std::string_view text, Bounds* box) {
    const auto newline = text.find('\n');
    const std::string_view header = text.substr(0, newline);
    if (header.rfind("origin=", 0) != 0)
        parse_fail(0, 0, "missing 'origin=<file>,<rank>' header");
    const auto comma = header.find(',');
    if (comma == std::string_view::npos)
        parse_fail(0, 0, "origin needs '<file>,<rank>'");
    auto read_int = [&](std::string_view s) {
        while (!s.empty() && is_space(s.back()))
            s.remove_suffix(1);
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
            parse_fail(0, 0, "bad origin '" + std::string(header) + "'");
        return v;
    };
    const int origin_file = read_int(header.substr(7, comma - 7));
    const int origin_rank = read_int(header.substr(comma + 1));
    if (newline == std::string_view::npos)
        parse_fail(1, 0, "no rows");

    std::string_view body = text.substr(newline + 1);
    while (!body.empty() && is_space(body.back()))
        body.remove_suffix(1);
    if (body.size() < 2 || !is_space(body[body.size() - 2]))
        parse_fail(1, 0, "missing trailing ' w' or ' b'");
    const char mover = body.back();
    if (mover != 'w' && mover != 'b')
        parse_fail(1, 0, "side to move must be 'w' or 'b'");
    body.remove_suffix(1);

    Position pos(mover == 'w' ? Color::White : Color::Black);
    int row = 0;
    int col = 0;
    int width = -1;
    auto end_row = [&] {
        if (width < 0)
            width = col;
        else if (col != width)
            parse_fail(row + 1, col, "row width " + std::to_string(col) + " differs from " +
                                         std::to_string(width));
        ++row;
        col = 0;
    };
    std::size_t i = 0;
    while (i < body.size()) {
        const char c = body[i];
        if (is_space(c)) {
            ++i;
            continue;
        }
        if (c == '/') {
            end_row();
            ++i;
            continue;
        }
        if (width >= 0 && col >= width)
            parse_fail(row + 1, col, "row overflow");
        if (c == '.') {
            ++col;
            ++i;
        } else if (c >= '2' && c <= '9') {
            col += c - '0';
            ++i;
        } else if (c == '[') {
            const auto close = body.find(']', i);
            if (close == std::string_view::npos)
                parse_fail(row + 1, col, "unterminated '['");
            int n = 0;
            auto [ptr, ec] = std::from_chars(body.data() + i + 1, body.data() + close, n);
            if (ec != std::errc{} || ptr != body.data() + close || n < 1)
                parse_fail(row + 1, col, "bad run length");
            col += n;
            i = close + 1;
        } else if (auto piece = Piece::from_letter(c)) {
            pos.put({origin_file + col, origin_rank - row}, *piece);
            ++col;
            ++i;
        } else {
            parse_fail(row + 1, col, std::string("unexpected character '") + c + "'");
        }
        if (width >= 0 && col > width)
            parse_fail(row + 1, col, "row overflow");
    }
    end_row();
    if (box)
        *box = {origin_file, origin_file + width - 1, origin_rank - row + 1, origin_rank};
    return pos;
}

Position parse_diagram(std::string_view text) { return parse_diagram(text, nullptr); }

std::string emit_diagram(const Position& p, const Bounds& box) {
    if (box.empty())
        throw ParseError("cannot emit an empty box");
    std::string out = "origin=" + std::to_string(box.min_file) + "," + std::to_string(box.max_rank) + "\n";
    for (int rank = box.max_rank; rank >= box.min_rank; --rank) {
        int run = 0;
        auto flush = [&] {
            if (run == 1)
                out += '.';
            else if (run >= 2 && run <= 9)
                out += static_cast<char>('0' + run);
            else if (run >= 10)
                out += "[" + std::to_string(run) + "]";
            run = 0;
        };
        for (int file = box.min_file; file <= box.max_file; ++file) {
            if (const Piece* piece = p.find({file, rank})) {
                flush();
                out += piece->letter();
            } else {
                ++run;
            }
        }
        flush();
        out += rank == box.min_rank ? (p.side_to_move() == Color::White ? " w\n" : " b\n") : "/\n";
    }
    return out;
}

std::string emit_diagram(const Position& p) {
    Bounds b = p.bounds();
    if (b.empty())
        b = {1, 1, 1, 1};
    return emit_diagram(p, b);
}

Position crop(const Position& p, const Bounds& box) {
    Position out(p.side_to_move());
    out.set_fragment(p.fragment());
    for (const auto& [s, piece] : p.pieces())
        if (box.contains(s))
            out.put(s, piece);
    return out;
}

}  // namespace ichess
