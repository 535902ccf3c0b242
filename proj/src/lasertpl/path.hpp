// Copyright 2026 The lasertpl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LASERTPL_PATH_HPP
#define LASERTPL_PATH_HPP

#include "lasertpl/geometry.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lasertpl::path {

/// Number of numeric arguments of an (uppercase) path opcode, or -1 if the
/// letter is not an SVG path command.
int arity(char op);

/// One drawing command with exactly `arity(op)` arguments. `op` is always
/// uppercase; `relative` records the lowercase form.
struct Command {
    char op = 'M';
    bool relative = false;
    std::vector<double> args;

    friend bool operator==(const Command&, const Command&) = default;
};

using CommandList = std::vector<Command>;

/// Parses SVG path data, expanding implicit repeats ("L0 0 1 1" becomes two
/// L commands, extra moveto pairs become lineto). Throws Error(Syntax) with
/// the character offset on malformed input.
CommandList parsePathData(std::string_view d);

/// Shortest SVG text for the list; numbers use formatNumber().
std::string serializePathData(const CommandList& cmds);

/// Rewrites every command after the initial moveto in relative form; H and V
/// become l. Endpoints are preserved up to floating point rounding.
CommandList toRelative(const CommandList& cmds);

/// Structural equality with per-argument tolerance.
bool approxEqual(const CommandList& a, const CommandList& b, double tolerance);

enum class SegmentKind { Line, Curve, Arc };

/// A drawing command (anything but moveto and closepath) resolved to absolute
/// endpoints. `command` indexes the CommandList; `index` is the position among
/// drawing commands, which is also the kerf-mask and tagging index.
struct Segment {
    std::size_t command = 0;
    std::size_t index = 0;
    SegmentKind kind = SegmentKind::Line;
    Vec2 start;
    Vec2 end;

    Vec2 delta() const { return end - start; }
    double chordLength() const { return (end - start).length(); }
};

std::vector<Segment> segments(const CommandList& cmds);

/// Absolute point reached after each command (the current point).
std::vector<Vec2> currentPoints(const CommandList& cmds);

/// Twice the signed area of a closed polyline through the given vertices,
/// shoelace formula. Positive means clockwise on screen (y down).
double signedArea2(const std::vector<Vec2>& vertices);

/// Vertices of the first subpath (moveto point and every command endpoint up
/// to its closepath or the next moveto).
std::vector<Vec2> firstSubpathVertices(const CommandList& cmds);

/// True when the subpath containing command `commandIndex` winds clockwise on
/// screen, i.e. its interior lies to the right of the direction of travel.
bool interiorOnRight(const CommandList& cmds, std::size_t commandIndex);

// Kerf masks --------------------------------------------------------------

/// One letter per drawing command: I/i ignore, G/g grow, S/s shrink. Upper
/// case means a full kerf width, lower case half of it.
struct KerfMask {
    std::vector<char> letters;

    friend bool operator==(const KerfMask&, const KerfMask&) = default;

    bool allIgnore() const;
};

/// Number of drawing commands (letters a mask for this path must have).
std::size_t maskableCount(const CommandList& cmds);

/// Parses and aligns a mask. Throws Error(Validation) on length mismatch
/// (reporting expected vs got), on unknown letters, and on non-ignore letters
/// placed on curve or arc segments.
KerfMask parseKerfMask(std::string_view mask, const CommandList& cmds);

std::string serializeKerfMask(const KerfMask& mask);

} // namespace lasertpl::path

#endif // LASERTPL_PATH_HPP
