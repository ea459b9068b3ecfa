#pragma once

// Diagram text format.
//
//   origin=<file>,<rank>        square of the top-left cell
//   <row>/                      rows top to bottom, '/'-separated
//   ...
//   <row> w                     last row, then the side to move (w or b)
//
// In a row '.' is one empty square, a digit 2-9 is a run of that many empty
// squares, "[n]" is a run of n empty squares and FEN letters are pieces
// (uppercase White). Whitespace between rows is ignored. The emitter writes
// one row per line using '.' for single gaps, digits for runs of 2-9 and
// brackets for longer runs, so emit(parse(t)) == t for emitted text.

#include <string>
#include <string_view>

#include "ichess/rules.hpp"

namespace ichess {

Position parse_diagram(std::string_view text);
// Also reports the box the rows cover.
Position parse_diagram(std::string_view text, Bounds* box);
// Emits the cells of `box`. Pieces outside the box are not written.
std::string emit_diagram(const Position& p, const Bounds& box);
// Emits with the position's own bounds.
std::string emit_diagram(const Position& p);

// Restriction of `p` to the cells of `box`.
Position crop(const Position& p, const Bounds& box);

}  // namespace ichess
