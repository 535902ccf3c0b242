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

#include "lasertpl/path.hpp"

#include "lasertpl/error.hpp"
#include "lasertpl/numbers.hpp"

#include <cctype>
#include <cmath>

namespace lasertpl::path {

int arity(char op) {
    switch (op) {
    case 'M':
    case 'L':
    case 'T':
        return 2;
    case 'H':
    case 'V':
        return 1;
    case 'C':
        return 6;
    case 'S':
    case 'Q':
        return 4;
    case 'A':
        return 7;
    case 'Z':
        return 0;
    default:
        return -1;
    }
}

namespace {

bool isSeparator(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == ',';
}

void skipSeparators(std::string_view d, std::size_t& pos) {
    while (pos < d.size() && isSeparator(d[pos])) {
        ++pos;
    }
}

[[noreturn]] void syntaxError(const std::string& what, std::size_t pos) {
    throw Error(ErrorKind::Syntax,
                "malformed path data at offset " + std::to_string(pos) + ": " + what, pos);
}

// Arc flags may be written without separators ("a1 1 0 00 1 1").
double scanFlag(std::string_view d, std::size_t& pos) {
    if (pos < d.size() && (d[pos] == '0' || d[pos] == '1')) {
        return d[pos++] == '1' ? 1.0 : 0.0;
    }
    syntaxError("expected arc flag 0 or 1", pos);
}

} // namespace

CommandList parsePathData(std::string_view d) {
    CommandList cmds;
    std::size_t pos = 0;
    skipSeparators(d, pos);
    if (pos >= d.size()) {
        syntaxError("empty path data", pos);
    }
    char current = 0;
    bool relative = false;
    while (true) {
        skipSeparators(d, pos);
        if (pos >= d.size()) {
            break;
        }
        char c = d[pos];
        if (std::isalpha(static_cast<unsigned char>(c))) {
            char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            if (arity(up) < 0) {
                syntaxError(std::string("unknown command '") + c + "'", pos);
            }
            if (cmds.empty() && up != 'M') {
                syntaxError("path data must begin with a moveto", pos);
            }
            current = up;
            relative = std::islower(static_cast<unsigned char>(c)) != 0;
            ++pos;
            if (up == 'Z') {
                cmds.push_back({'Z', relative, {}});
                continue;
            }
        }
        else if (current == 0) {
            syntaxError("path data must begin with a moveto", pos);
        }
        else if (current == 'Z') {
            syntaxError("unexpected number after closepath", pos);
        }

        Command cmd{current, relative, {}};
        int n = arity(current);
        for (int i = 0; i < n; ++i) {
            skipSeparators(d, pos);
            if (current == 'A' && (i == 3 || i == 4)) {
                cmd.args.push_back(scanFlag(d, pos));
                continue;
            }
            std::size_t before = pos;
            auto value = scanNumber(d, pos);
            if (!value) {
                syntaxError(std::string("expected number for '") + current + "' command", before);
            }
            cmd.args.push_back(*value);
        }
        cmds.push_back(std::move(cmd));
        // Extra coordinate pairs after a moveto are implicit linetos.
        if (current == 'M') {
            current = 'L';
        }
    }
    return cmds;
}

std::string serializePathData(const CommandList& cmds) {
    std::string out;
    for (const Command& c : cmds) {
        if (!out.empty()) {
            out += ' ';
        }
        out += c.relative ? static_cast<char>(std::tolower(static_cast<unsigned char>(c.op))) : c.op;
        for (std::size_t i = 0; i < c.args.size(); ++i) {
            if (i > 0) {
                out += ' ';
            }
            out += formatNumber(c.args[i]);
        }
    }
    return out;
}

namespace {

// Walks the command list tracking current point, subpath start and the
// endpoint of each command.
struct Walker {
    Vec2 current;
    Vec2 subpathStart;

    Vec2 endpoint(const Command& c) const {
        const auto& a = c.args;
        Vec2 base = c.relative ? current : Vec2{};
        switch (c.op) {
        case 'M':
        case 'L':
        case 'T':
            return base + Vec2{a[0], a[1]};
        case 'H':
            return {c.relative ? current.x + a[0] : a[0], current.y};
        case 'V':
            return {current.x, c.relative ? current.y + a[0] : a[0]};
        case 'C':
            return base + Vec2{a[4], a[5]};
        case 'S':
        case 'Q':
            return base + Vec2{a[2], a[3]};
        case 'A':
            return base + Vec2{a[5], a[6]};
        case 'Z':
            return subpathStart;
        }
        return current;
    }

    void advance(const Command& c) {
        Vec2 e = endpoint(c);
        if (c.op == 'M') {
            subpathStart = e;
        }
        current = e;
    }
};

} // namespace

std::vector<Vec2> currentPoints(const CommandList& cmds) {
    std::vector<Vec2> points;
    points.reserve(cmds.size());
    Walker w;
    for (const Command& c : cmds) {
        w.advance(c);
        points.push_back(w.current);
    }
    return points;
}

CommandList toRelative(const CommandList& cmds) {
    CommandList out;
    out.reserve(cmds.size());
    Walker w;
    for (std::size_t i = 0; i < cmds.size(); ++i) {
        const Command& c = cmds[i];
        if (i == 0 || c.op == 'Z') {
            Command copy = c;
            if (c.op == 'Z') {
                copy.relative = true;
            }
            out.push_back(copy);
            w.advance(c);
            continue;
        }
        Command r{c.op, true, c.args};
        const Vec2 origin = w.current;
        switch (c.op) {
        case 'H': {
            double x = c.relative ? c.args[0] : c.args[0] - origin.x;
            r = {'L', true, {x, 0.0}};
            break;
        }
        case 'V': {
            double y = c.relative ? c.args[0] : c.args[0] - origin.y;
            r = {'L', true, {0.0, y}};
            break;
        }
        default:
            if (!c.relative) {
                // Shift every coordinate pair; arc radii, rotation and flags stay.
                auto& a = r.args;
                if (c.op == 'A') {
                    a[5] -= origin.x;
                    a[6] -= origin.y;
                }
                else {
                    for (std::size_t k = 0; k + 1 < a.size(); k += 2) {
                        a[k] -= origin.x;
                        a[k + 1] -= origin.y;
                    }
                }
            }
        }
        out.push_back(std::move(r));
        w.advance(c);
    }
    return out;
}

bool approxEqual(const CommandList& a, const CommandList& b, double tolerance) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].op != b[i].op || a[i].relative != b[i].relative
            || a[i].args.size() != b[i].args.size()) {
            return false;
        }
        for (std::size_t k = 0; k < a[i].args.size(); ++k) {
            if (!nearlyEqual(a[i].args[k], b[i].args[k], tolerance)) {
                return false;
            }
        }
    }
    return true;
}

std::vector<Segment> segments(const CommandList& cmds) {
    std::vector<Segment> out;
    Walker w;
    std::size_t index = 0;
    for (std::size_t i = 0; i < cmds.size(); ++i) {
        const Command& c = cmds[i];
        if (c.op != 'M' && c.op != 'Z') {
            Segment s;
            s.command = i;
            s.index = index++;
            s.start = w.current;
            s.end = w.endpoint(c);
            switch (c.op) {
            case 'L':
            case 'H':
            case 'V':
                s.kind = SegmentKind::Line;
                break;
            case 'A':
                s.kind = SegmentKind::Arc;
                break;
            default:
                s.kind = SegmentKind::Curve;
            }
            out.push_back(s);
        }
        w.advance(c);
    }
    return out;
}

double signedArea2(const std::vector<Vec2>& v) {
    double sum = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2& p = v[i];
        const Vec2& q = v[(i + 1) % v.size()];
        sum += p.x * q.y - q.x * p.y;
    }
    return sum;
}

namespace {

std::vector<Vec2> subpathVertices(const CommandList& cmds, std::size_t commandIndex) {
    // Find the moveto that opens the subpath containing commandIndex.
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= commandIndex && i < cmds.size(); ++i) {
        if (cmds[i].op == 'M') {
            begin = i;
        }
    }
    auto points = currentPoints(cmds);
    std::vector<Vec2> vertices;
    for (std::size_t i = begin; i < cmds.size(); ++i) {
        if (i > begin && (cmds[i].op == 'M' || cmds[i].op == 'Z')) {
            break;
        }
        vertices.push_back(points[i]);
    }
    return vertices;
}

} // namespace

std::vector<Vec2> firstSubpathVertices(const CommandList& cmds) {
    return subpathVertices(cmds, 0);
}

bool interiorOnRight(const CommandList& cmds, std::size_t commandIndex) {
    return signedArea2(subpathVertices(cmds, commandIndex)) >= 0;
}

bool KerfMask::allIgnore() const {
    for (char c : letters) {
        if (c != 'i' && c != 'I') {
            return false;
        }
    }
    return true;
}

std::size_t maskableCount(const CommandList& cmds) {
    std::size_t n = 0;
    for (const Command& c : cmds) {
        if (c.op != 'M' && c.op != 'Z') {
            ++n;
        }
    }
    return n;
}

KerfMask parseKerfMask(std::string_view mask, const CommandList& cmds) {
    KerfMask m;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        char c = mask[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',') {
            continue;
        }
        switch (c) {
        case 'I':
        case 'i':
        case 'S':
        case 's':
        case 'G':
        case 'g':
            m.letters.push_back(c);
            break;
        default:
            throw Error(ErrorKind::Validation,
                        std::string("invalid kerf-mask letter '") + c + "' at offset "
                            + std::to_string(i) + " (expected one of I i S s G g)");
        }
    }
    auto segs = segments(cmds);
    if (m.letters.size() != segs.size()) {
        throw Error(ErrorKind::Validation,
                    "kerf-mask length mismatch: expected " + std::to_string(segs.size())
                        + " letters, got " + std::to_string(m.letters.size()));
    }
    for (std::size_t i = 0; i < segs.size(); ++i) {
        char c = m.letters[i];
        if (c != 'i' && c != 'I' && segs[i].kind != SegmentKind::Line) {
            throw Error(ErrorKind::Validation,
                        "kerf-mask letter '" + std::string(1, c) + "' on segment "
                            + std::to_string(i) + " which is not a straight line");
        }
    }
    return m;
}

std::string serializeKerfMask(const KerfMask& mask) {
    std::string s;
    for (char c : mask.letters) {
        if (!s.empty()) {
            s += ' ';
        }
        s += c;
    }
    return s;
}

} // namespace lasertpl::path
