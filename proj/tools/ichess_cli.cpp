// ichess: diagrams, moves, values and the verification suites.
//
// Exit codes: 0 all Confirmed (or a determined answer), 1 something
// Refuted, 2 usage or input errors, 3 Inconclusive / bounds ran out.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ichess/composite.hpp"
#include "ichess/diagram.hpp"
#include "ichess/dsl.hpp"
#include "ichess/harness.hpp"
#include "ichess/valuation.hpp"

using namespace ichess;

namespace {

enum Exit { kOk = 0, kRefuted = 1, kUsage = 2, kInconclusive = 3 };

struct Globals {
    unsigned ray_bound = kDefaultRayBound;
    unsigned depth = 40;
    std::uint64_t node_cap = 10'000'000;
    std::string format = "text";
    bool timing = false;
};

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in)
        throw Error("IO", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool json(const Globals& g) { return g.format == "json-lines"; }

Move parse_move_arg(const Position& p, const std::string& text, unsigned ray_bound) {
    const auto dash = text.find_first_of("-x");
    if (dash == std::string::npos)
        throw ParseError("move must look like e4-e5 or e4xd5: " + text);
    const Square from = parse_square(text.substr(0, dash)), to = parse_square(text.substr(dash + 1));
    for (const Move& m : legal_moves(p, ray_bound).moves)
        if (m.from == from && m.to == to)
            return m;
    throw IllegalMove("no legal move " + text);
}

int verdict_exit(const GameValue& v) { return v.is_unknown() ? kInconclusive : kOk; }

void print_value(const Globals& g, const GameValue& v, const std::vector<Move>& pv, Color first) {
    if (json(g)) {
        nlohmann::ordered_json j;
        j["verdict"] = to_string(v.verdict);
        j["value"] = nullptr;
        if (v.is_valued())
            j["value"] = to_string(v.value);
        j["pv"] = line_notation(pv, first);
        j["nodes"] = v.diag.nodes;
        j["truncated_ray"] = v.diag.truncated_ray;
        j["note"] = v.diag.note;
        std::cout << j.dump() << "\n";
    } else {
        SolveReport r{v, pv, first};
        std::cout << format_report(r);
    }
}

std::vector<std::uint64_t> parse_samples(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(std::stoull(item));
    if (out.empty())
        throw ParseError("no samples");
    return out;
}

Composite build_named(const std::string& name, unsigned size, const std::string& release) {
    if (name == "throne-room")
        return throne_composite();
    if (name == "gateway")
        return wing_composite(size);
    if (name == "cannon")
        return cannon_composite(size);
    if (name == "rook-tower") {
        if (release != "mating-bishop" && release != "channel")
            throw ParseError("release must be mating-bishop or channel");
        return tower_composite(size, release == "channel" ? TowerRelease::Channel : TowerRelease::MatingBishop);
    }
    throw ParseError("unknown component " + name);
}

Position build_fragment(const std::string& name, unsigned size) {
    if (name == "throne-room")
        return build_throne_room();
    if (name == "gateway")
        return build_gateway_wing(size);
    if (name == "cannon")
        return build_cannon(size);
    if (name == "rook-tower")
        return build_rook_towers(size);
    throw ParseError("unknown component " + name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Infinite chess positions: diagrams, moves, values, verification suites"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--ray-bound", g.ray_bound, "squares scanned along a sliding ray")->capture_default_str();
    app.add_option("--depth", g.depth, "search depth in plies")->capture_default_str();
    app.add_option("--node-cap", g.node_cap, "search nodes per query")->capture_default_str();
    app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"text", "json-lines"}))->capture_default_str();
    app.add_flag("--timing", g.timing, "record wall-clock times in reports");

    std::string file, line_file, square, move_text, component = "throne-room", release = "mating-bishop";
    std::string samples_text = "1,2,3", hint_text = "w", piece_text, step_text = "0,1", chain_side;
    std::vector<std::string> binds;
    unsigned size = 1, bound = 6;
    bool as_line = false, fragment = false;

    auto* parse = app.add_subcommand("parse", "parse a diagram (or a line with --line) and summarize it");
    parse->add_option("file", file, "diagram or line file, - for stdin")->required();
    parse->add_flag("--line", as_line, "the file is a move line");

    auto* emit = app.add_subcommand("emit", "parse a diagram and write it back in canonical form");
    emit->add_option("file", file)->required();

    auto* moves = app.add_subcommand("moves", "list legal moves");
    moves->add_option("file", file)->required();
    moves->add_option("--square", square, "only the piece on this square");

    auto* solve_cmd = app.add_subcommand("solve", "exact value for White");
    solve_cmd->add_option("file", file)->required();

    auto* family = app.add_subcommand("family",
                                      "value of a Black choice of distance: the piece on --piece moves n steps of --step");
    family->add_option("file", file, "base position, Black to move")->required();
    family->add_option("--piece", piece_text)->required();
    family->add_option("--step", step_text, "file,rank offset per unit of n")->capture_default_str();
    family->add_option("--samples", samples_text)->capture_default_str();
    family->add_option("--hint", hint_text, "claimed value of the base")->capture_default_str();

    auto* threat = app.add_subcommand("threat", "classify a threat, or count a chain of forced replies");
    threat->add_option("file", file)->required();
    threat->add_option("--move", move_text, "threat by the side to move, e.g. r6-p9");
    threat->add_option("--chain", chain_side, "count forced threats for this side")->check(CLI::IsMember({"white", "black"}));
    threat->add_option("--bound", bound, "threatening side's moves")->capture_default_str();

    auto* replay_cmd = app.add_subcommand("replay", "play a move line from a diagram");
    replay_cmd->add_option("file", file, "start diagram")->required();
    replay_cmd->add_option("line", line_file, "line file")->required();
    replay_cmd->add_option("--bind", binds, "parameter binding, j=28");

    auto* build = app.add_subcommand("build", "emit a component diagram");
    build->add_option("component", component)->check(CLI::IsMember({"throne-room", "gateway", "cannon", "rook-tower"}))->required();
    build->add_option("--size", size, "gates, shooters or towers")->capture_default_str();
    build->add_option("--release", release, "rook-tower composites: mating-bishop or channel")->capture_default_str();
    build->add_flag("--fragment", fragment, "the bare component instead of the sealed composite");

    std::string suite_name;
    auto* verify = app.add_subcommand("verify", "run a verification suite (or all)");
    verify->add_option("suite", suite_name)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*parse) {
            const std::string text = slurp(file);
            if (as_line) {
                std::cout << to_text(parse_line(text)) << "\n";
                return kOk;
            }
            const Position p = parse_diagram(text);
            const Bounds b = p.bounds();
            std::cout << "pieces: " << p.size() << "\nside to move: " << to_string(p.side_to_move()) << "\n";
            if (!b.empty())
                std::cout << "bounds: " << to_string(Square{b.min_file, b.min_rank}) << ".."
                          << to_string(Square{b.max_file, b.max_rank}) << "\n";
            return kOk;
        }
        if (*emit) {
            Bounds box;
            const Position p = parse_diagram(slurp(file), &box);
            std::cout << emit_diagram(p, box);
            return kOk;
        }
        if (*moves) {
            const Position p = parse_diagram(slurp(file));
            const MoveList ml = square.empty() ? legal_moves(p, g.ray_bound) : legal_piece_moves(p, parse_square(square), g.ray_bound);
            for (const Move& m : ml.moves)
                std::cout << to_string(m) << "\n";
            if (ml.truncated_ray)
                std::cerr << "some rays were cut at " << g.ray_bound << " squares\n";
            return kOk;
        }
        if (*solve_cmd) {
            const Position p = parse_diagram(slurp(file));
            const SolveReport r = solve(p, g.depth, g.ray_bound, ValueOptions{g.node_cap});
            print_value(g, r.value, r.principal_variation, r.first_mover);
            return verdict_exit(r.value);
        }
        if (*family) {
            const Position base = parse_diagram(slurp(file));
            const Square piece = parse_square(piece_text);
            int df = 0, dr = 1;
            if (std::sscanf(step_text.c_str(), "%d,%d", &df, &dr) != 2)
                throw ParseError("step must be file,rank");
            const auto at = base.at(piece);
            if (!at)
                throw ParseError("no piece on " + piece_text);
            PositionFamily f;
            f.base = base;
            f.samples = parse_samples(samples_text);
            f.generate = [base, piece, df, dr, at](std::uint64_t n) {
                Position p = base;
                p.remove(piece);
                p.put({piece.file + df * static_cast<int>(n), piece.rank + dr * static_cast<int>(n)}, *at);
                p.set_side_to_move(opposite(base.side_to_move()));
                return p;
            };
            const GameValue v = value_family(f, parse_ordinal(hint_text), exact_evaluator(g.depth, g.ray_bound, ValueOptions{g.node_cap}));
            if (json(g)) {
                nlohmann::ordered_json j;
                j["verdict"] = to_string(v.verdict);
                j["value"] = to_string(v.value);
                nlohmann::ordered_json rows = nlohmann::ordered_json::array();
                for (const auto& s : v.samples)
                    rows.push_back({{"n", s.n}, {"value", to_string(s.value)}});
                j["samples"] = rows;
                std::cout << j.dump() << "\n";
            } else {
                for (const auto& s : v.samples)
                    std::cout << "n=" << s.n << ": " << to_string(s.value) << "\n";
                std::cout << "value: " << to_string(v) << "\n";
            }
            return kOk;
        }
        if (*threat) {
            const Position p = parse_diagram(slurp(file));
            ThreatOptions to;
            to.bound = bound;
            to.ray_bound = g.ray_bound;
            to.node_cap = g.node_cap;
            if (!chain_side.empty()) {
                ChainOptions co;
                co.threat = to;
                const Color side = chain_side == "white" ? Color::White : Color::Black;
                const ChainResult c = count_forced_chain(p, side, co);
                std::cout << "chain: " << c.length << "\n" << line_notation(c.line, side) << "\n";
                return kOk;
            }
            if (move_text.empty())
                throw ParseError("threat needs --move or --chain");
            const ThreatResult t = is_forced_reply(p, parse_move_arg(p, move_text, g.ray_bound), to);
            std::cout << to_string(t.kind);
            for (const Move& a : t.answers)
                std::cout << " " << to_string(a);
            std::cout << "\n";
            return t.truncated_ray ? kInconclusive : kOk;
        }
        if (*replay_cmd) {
            const Position p = parse_diagram(slurp(file));
            ReplayOptions ro;
            ro.ray_bound = g.ray_bound;
            ro.threat.ray_bound = g.ray_bound;
            for (const std::string& b : binds) {
                const auto eq = b.find('=');
                if (eq == std::string::npos)
                    throw ParseError("binding must be name=value: " + b);
                ro.bindings[b.substr(0, eq)] = std::stoi(b.substr(eq + 1));
            }
            const ReplayResult r = replay(p, parse_line(slurp(line_file)), ro);
            std::cout << line_notation(r.moves, p.side_to_move()) << "\n";
            const Position& end = r.positions.back();
            if (is_checkmate(end))
                std::cout << "checkmate\n";
            std::cout << emit_diagram(end);
            return kOk;
        }
        if (*build) {
            if (fragment) {
                std::cout << emit_diagram(build_fragment(component, size));
            } else {
                const Composite c = build_named(component, size, release);
                for (const Band& b : c.walls)
                    std::cout << "# wall " << to_string(b) << "\n";
                for (const auto& [k, sq] : c.marks)
                    std::cout << "# " << k << " " << to_string(sq) << "\n";
                std::cout << emit_diagram(c.position);
            }
            return kOk;
        }
        if (*verify) {
            std::vector<const SuiteEntry*> suites;
            if (suite_name == "all") {
                for (const auto& e : suite_registry())
                    suites.push_back(&e);
            } else if (const SuiteEntry* e = find_suite(suite_name)) {
                suites.push_back(e);
            } else {
                std::cerr << "unknown suite " << suite_name << "; known:";
                for (const auto& e : suite_registry())
                    std::cerr << " " << e.name;
                std::cerr << "\n";
                return kUsage;
            }
            SuiteOptions so{g.depth, g.ray_bound, g.node_cap, g.timing};
            bool refuted = false, inconclusive = false;
            for (const SuiteEntry* e : suites)
                for (const ScenarioReport& r : e->run(so)) {
                    std::cout << (json(g) ? to_json_line(r) + "\n" : to_text(r)) << std::flush;
                    refuted |= r.verdict == ScenarioReport::Verdict::Refuted;
                    inconclusive |= r.verdict == ScenarioReport::Verdict::Inconclusive;
                }
            return refuted ? kRefuted : inconclusive ? kInconclusive : kOk;
        }
    } catch (const ReplayError& e) {
        std::cerr << "ReplayError: " << e.what() << "\n";
        return kUsage;
    } catch (const HintRejected& e) {
        std::cerr << "HintRejected: " << e.what() << "\n";
        return kRefuted;
    } catch (const BoundExhausted& e) {
        std::cerr << "BoundExhausted: " << e.what() << "\n";
        return kInconclusive;
    } catch (const Error& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
