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

#include "lasertpl/tagger.hpp"

#include "lasertpl/error.hpp"
#include "lasertpl/numbers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lasertpl::tagger {

namespace {

struct Working {
    tpl::TemplatePath templ;
    path::CommandList geometry;
    std::vector<path::Segment> segments;
    expr::Scope scope;
};

expr::Scope designScope(const Document& doc, double thickness) {
    GlobalParams g = doc.globals();
    return {thickness, g.kerf.value_or(0), g.scale.value_or(1), &doc.functions()};
}

Working working(const Document& doc, const xml::Node& node, double thickness) {
    Working w;
    w.scope = designScope(doc, thickness);
    LaserAttrs a = doc.laserAttrs(node);
    if (a.templateText) {
        w.templ = tpl::parseTemplate(*a.templateText);
        w.geometry = tpl::instantiate(w.templ, w.scope);
    }
    else {
        const std::string* d = node.attribute("d");
        if (!d) {
            throw Error(ErrorKind::InvalidArgument, "path has no d attribute");
        }
        w.geometry = path::toRelative(path::parsePathData(*d));
        w.templ = tpl::fromCommands(w.geometry);
    }
    w.segments = path::segments(w.geometry);
    return w;
}

void commit(const Document& doc, xml::Node& node, const Working& w) {
    node.setAttribute(doc.laserName("template"), tpl::serializeTemplate(w.templ));
    setPathData(node, tpl::instantiate(w.templ, w.scope));
}

bool commandTagged(const tpl::TemplateCommand& c) {
    return std::any_of(c.args.begin(), c.args.end(), [](const tpl::Token& t) { return t.isExpr; });
}

std::string locatorOf(const xml::Node& node) {
    const std::string* id = node.attribute("id");
    return id ? *id : std::string("<" + node.name + ">");
}

void ensureDesignThickness(Document& doc, double thickness) {
    std::string name = doc.laserName("material-thickness");
    if (!doc.root().hasAttribute(name)) {
        doc.root().setAttribute(name, formatNumber(thickness));
    }
}

// Relative line command of the template for segment `index`; H and V are
// widened to L so both coordinates can carry expressions.
tpl::TemplateCommand& lineCommand(Working& w, std::size_t index, const std::string& who,
                                  bool allowTagged = false) {
    if (index >= w.segments.size()) {
        throw Error(ErrorKind::InvalidArgument, who + ": segment index " + std::to_string(index)
                                                    + " out of range (path has "
                                                    + std::to_string(w.segments.size()) + " segments)");
    }
    const path::Segment& s = w.segments[index];
    if (s.kind != path::SegmentKind::Line) {
        throw Error(ErrorKind::InvalidArgument,
                    who + ": segment " + std::to_string(index) + " is a curve and cannot be tagged");
    }
    tpl::TemplateCommand& c = w.templ.commands[s.command];
    if (!allowTagged && commandTagged(c)) {
        throw Error(ErrorKind::InvalidArgument,
                    who + ": segment " + std::to_string(index) + " is already tagged");
    }
    if (!c.relative) {
        throw Error(ErrorKind::InvalidArgument,
                    who + ": segment " + std::to_string(index) + " is absolute in the template");
    }
    if (c.op != 'L') {
        Vec2 d = s.delta();
        c = {'L', true, {tpl::Token::number(d.x), tpl::Token::number(d.y)}};
    }
    return c;
}

bool axisZero(double v, double len) {
    return std::fabs(v) <= 1e-9 * std::max(1.0, len);
}

// Slots of a vector of length `e` (in thickness units) along `delta`.
void directional(tpl::TemplateCommand& c, Vec2 delta, const expr::Expr& e) {
    double len = delta.length();
    const expr::Expr neg = expr::Expr::negate(e);
    if (axisZero(delta.y, len)) {
        c.args = {tpl::Token::fromExpr(delta.x > 0 ? e : neg), tpl::Token::number(0)};
        return;
    }
    if (axisZero(delta.x, len)) {
        c.args = {tpl::Token::number(0), tpl::Token::fromExpr(delta.y > 0 ? e : neg)};
        return;
    }
    expr::Expr theta = expr::Expr::number(std::atan2(delta.y, delta.x));
    c.args = {tpl::Token::fromExpr(expr::Expr::binary('*', expr::Expr::call("cos", {theta}), e)),
              tpl::Token::fromExpr(expr::Expr::binary('*', expr::Expr::call("sin", {theta}), e))};
}

} // namespace

std::vector<SegmentInfo> describeSegments(const Document& doc, const xml::Node& node) {
    GlobalParams g = doc.globals();
    LaserAttrs a = doc.laserAttrs(node);
    double t = a.materialThickness.value_or(g.materialThickness.value_or(1));
    Working w = working(doc, node, t);
    std::vector<SegmentInfo> out;
    for (const path::Segment& s : w.segments) {
        SegmentInfo info;
        info.index = s.index;
        info.kind = s.kind;
        info.length = s.chordLength();
        info.angle = std::atan2(s.delta().y, s.delta().x);
        info.start = s.start;
        info.end = s.end;
        info.tagged = commandTagged(w.templ.commands[s.command]);
        out.push_back(info);
    }
    return out;
}

std::vector<SegmentHit> detectThicknessSegments(const path::CommandList& cmds, double thickness,
                                                double tolerance) {
    std::vector<SegmentHit> out;
    for (const path::Segment& s : path::segments(cmds)) {
        double len = s.chordLength();
        if (std::fabs(len - thickness) <= tolerance) {
            out.push_back({"", s.index, len, std::atan2(s.delta().y, s.delta().x),
                           s.kind != path::SegmentKind::Line});
        }
    }
    return out;
}

namespace {

std::optional<ThicknessAdjust> primitiveMatch(const xml::Node& node, double t, double tol) {
    auto near = [&](double v) { return std::fabs(v - t) <= tol; };
    bool w = false;
    bool h = false;
    switch (elementKind(node.name)) {
    case ElementKind::Rect:
        w = near(lengthAttr(node, "width"));
        h = near(lengthAttr(node, "height"));
        break;
    case ElementKind::Circle:
        w = h = near(2 * lengthAttr(node, "r"));
        break;
    case ElementKind::Ellipse:
        w = near(2 * lengthAttr(node, "rx"));
        h = near(2 * lengthAttr(node, "ry"));
        break;
    default:
        return std::nullopt;
    }
    if (w && h) {
        return ThicknessAdjust::Both;
    }
    if (w) {
        return ThicknessAdjust::Width;
    }
    if (h) {
        return ThicknessAdjust::Height;
    }
    return std::nullopt;
}

bool skipForTagging(const Document& doc, const LaserAttrs& a, const xml::Node& node) {
    (void)node;
    (void)doc;
    return a.generated.has_value() || a.hasJoint();
}

} // namespace

TagReport detectAll(const Document& doc, double thickness, double tolerance) {
    TagReport r;
    doc.forEachElement([&](const xml::Node& node, const std::string& loc) {
        LaserAttrs a = doc.laserAttrs(node, loc);
        if (skipForTagging(doc, a, node)) {
            return;
        }
        ElementKind kind = elementKind(node.name);
        if (kind == ElementKind::Path) {
            if (!node.hasAttribute("d")) {
                return;
            }
            Working w = working(doc, node, thickness);
            for (SegmentHit h : detectThicknessSegments(w.geometry, thickness, tolerance)) {
                if (commandTagged(w.templ.commands[w.segments[h.index].command])) {
                    continue;
                }
                h.element = loc;
                r.segments.push_back(h);
            }
        }
        else if (!a.thicknessAdjust) {
            if (auto adj = primitiveMatch(node, thickness, tolerance)) {
                r.primitives.push_back({loc, *adj});
            }
        }
    });
    return r;
}

TagReport tagAll(Document& doc, double thickness, double tolerance) {
    TagReport r = detectAll(doc, thickness, tolerance);
    // Curves are reported for review but have no length slot to tag.
    std::erase_if(r.segments, [](const SegmentHit& s) { return s.curve; });
    for (const PrimitiveHit& p : r.primitives) {
        xml::Node* node = doc.findElement(p.element);
        node->setAttribute(doc.laserName("thickness-adjust"), toString(p.adjust));
        bool w = p.adjust != ThicknessAdjust::Height;
        bool h = p.adjust != ThicknessAdjust::Width;
        switch (elementKind(node->name)) {
        case ElementKind::Rect:
            if (w) {
                setLengthAttr(*node, "width", thickness);
            }
            if (h) {
                setLengthAttr(*node, "height", thickness);
            }
            break;
        case ElementKind::Circle:
            setLengthAttr(*node, "r", thickness / 2);
            break;
        default:
            if (w) {
                setLengthAttr(*node, "rx", thickness / 2);
            }
            if (h) {
                setLengthAttr(*node, "ry", thickness / 2);
            }
        }
    }
    std::vector<std::string> paths;
    for (const SegmentHit& s : r.segments) {
        if (paths.empty() || paths.back() != s.element) {
            paths.push_back(s.element);
        }
    }
    for (const std::string& loc : paths) {
        std::vector<std::size_t> indices;
        for (const SegmentHit& s : r.segments) {
            if (s.element == loc) {
                indices.push_back(s.index);
            }
        }
        tagSegments(doc, *doc.findElement(loc), indices, thickness, std::nullopt, tolerance);
    }
    ensureDesignThickness(doc, thickness);
    return r;
}

void tagSegments(Document& doc, xml::Node& node, const std::vector<std::size_t>& indices,
                 double thickness, const std::optional<std::string>& offset, double tolerance) {
    if (elementKind(node.name) != ElementKind::Path) {
        throw Error(ErrorKind::InvalidArgument, "segments can only be tagged on path elements");
    }
    const std::string who = "path " + locatorOf(node);
    Working w = working(doc, node, thickness);
    expr::Expr e = expr::Expr::variable("thickness");
    std::optional<double> target;
    if (offset) {
        e = expr::parseExpression(*offset);
        target = expr::evaluate(e, w.scope);
    }
    std::vector<std::size_t> seen;
    for (std::size_t index : indices) {
        if (std::find(seen.begin(), seen.end(), index) != seen.end()) {
            throw Error(ErrorKind::InvalidArgument,
                        who + ": segment " + std::to_string(index) + " listed twice");
        }
        seen.push_back(index);
        tpl::TemplateCommand& c = lineCommand(w, index, who);
        Vec2 delta = w.segments[index].delta();
        if (target && std::fabs(delta.length() - *target) > tolerance) {
            throw Error(ErrorKind::InvalidArgument,
                        who + ": segment " + std::to_string(index) + " has length "
                            + formatNumber(delta.length()) + " but '" + *offset + "' evaluates to "
                            + formatNumber(*target));
        }
        directional(c, delta, e);
    }
    if (!indices.empty()) {
        commit(doc, node, w);
        ensureDesignThickness(doc, thickness);
    }
}

// Slits -------------------------------------------------------------------

std::vector<SlitMotif> detectSlits(const path::CommandList& cmds, double thickness,
                                   double tolerance, double angleToleranceDeg) {
    std::vector<SlitMotif> out;
    std::vector<path::Segment> segs = path::segments(cmds);
    const double cosTol = std::cos(angleToleranceDeg * std::numbers::pi / 180);
    std::size_t i = 0;
    while (i + 5 <= segs.size()) {
        const path::Segment* m[5];
        bool ok = true;
        for (int k = 0; k < 5; ++k) {
            m[k] = &segs[i + k];
            ok = ok && m[k]->kind == path::SegmentKind::Line
                 && (k == 0 || m[k]->command == m[k - 1]->command + 1);
        }
        if (ok) {
            Vec2 w1 = m[1]->delta();
            Vec2 w2 = m[3]->delta();
            Vec2 b = m[2]->delta();
            Vec2 mouth = m[3]->end - m[1]->start;
            ok = std::fabs(b.length() - thickness) <= tolerance && w1.length() > 0 && w2.length() > 0
                 && mouth.length() > 0;
            if (ok) {
                double c = dot(normalized(w1), normalized(w2));
                ok = -c >= cosTol;
            }
            if (ok) {
                Vec2 u = normalized(mouth);
                bool right = path::interiorOnRight(cmds, m[1]->command);
                Vec2 inward = right ? Vec2{-u.y, u.x} : Vec2{u.y, -u.x};
                ok = dot(w1, inward) > 0 && dot(w2, inward) < 0;
            }
        }
        if (ok) {
            SlitMotif s;
            for (int k = 0; k < 5; ++k) {
                s.indices[k] = m[k]->index;
            }
            s.mouth0 = m[1]->start;
            s.mouth1 = m[3]->end;
            s.center = 0.5 * (s.mouth0 + s.mouth1);
            s.width = m[2]->chordLength();
            out.push_back(s);
            i += 4; // the exit may open the next slit
        }
        else {
            ++i;
        }
    }
    return out;
}

std::vector<SlitMotif> detectSlits(const Document& doc, double thickness, double tolerance,
                                   double angleToleranceDeg) {
    std::vector<SlitMotif> out;
    doc.forEachElement([&](const xml::Node& node, const std::string& loc) {
        if (elementKind(node.name) != ElementKind::Path || !node.hasAttribute("d")) {
            return;
        }
        Working w = working(doc, node, thickness);
        for (SlitMotif s : detectSlits(w.geometry, thickness, tolerance, angleToleranceDeg)) {
            s.element = loc;
            out.push_back(s);
        }
    });
    return out;
}

namespace {

// orig + k * (thickness - t0)
tpl::Token corrected(const tpl::Token& orig, double k, double t0) {
    if (std::fabs(k) < 1e-12) {
        return orig;
    }
    using expr::Expr;
    Expr dt = Expr::binary('-', Expr::variable("thickness"), Expr::number(t0));
    Expr term = Expr::binary('*', Expr::number(std::fabs(k)), dt);
    Expr base = orig.isExpr ? orig.expression : Expr::number(orig.literal);
    if (!orig.isExpr && orig.literal == 0) {
        return tpl::Token::fromExpr(k < 0 ? Expr::negate(term) : term);
    }
    if (!orig.isExpr && orig.literal < 0) {
        base = Expr::negate(Expr::number(-orig.literal));
    }
    return tpl::Token::fromExpr(Expr::binary(k < 0 ? '-' : '+', base, term));
}

} // namespace

void parameterizeSlit(Document& doc, xml::Node& node, const SlitMotif& motif, double thickness,
                      double minThickness, double maxThickness) {
    const std::string who = "path " + locatorOf(node) + " slit at segment "
                            + std::to_string(motif.indices[0]);
    Working w = working(doc, node, thickness);
    std::array<tpl::TemplateCommand*, 5> cmd{};
    std::array<Vec2, 5> vec{};
    for (int k = 0; k < 5; ++k) {
        // Neighbouring slits share approach and exit segments.
        cmd[k] = &lineCommand(w, motif.indices[k], who, k != 2);
        vec[k] = w.segments[motif.indices[k]].delta();
    }
    const Vec2 u = normalized(motif.mouth1 - motif.mouth0);
    const Vec2 d1 = normalized(vec[1]);
    const Vec2 d2 = normalized(vec[3]);
    const double t0 = vec[2].length();
    const Vec2 bh = normalized(vec[2]);

    // Per unit thickness change: mouth ends move by -/+ A along u, walls by
    // +K d1 and -K d2, keeping 2 A u + K (d1 - d2) = -b.
    const Vec2 c1 = 2.0 * u;
    const Vec2 c2 = d1 - d2;
    const Vec2 rhs = -1.0 * bh;
    const double det = cross(c1, c2);
    if (std::fabs(det) < 1e-12) {
        throw Error(ErrorKind::InvalidArgument, who + ": slit walls are parallel to its mouth");
    }
    const double A = cross(rhs, c2) / det;
    const double K = cross(c1, rhs) / det;

    const std::array<Vec2, 5> rate = {A * u, K * d1, bh, -K * d2, A * u};
    for (int k : {0, 1, 3, 4}) {
        tpl::TemplateCommand& c = *cmd[k];
        c.args[0] = corrected(c.args[0], rate[k].x, t0);
        c.args[1] = corrected(c.args[1], rate[k].y, t0);
    }
    directional(*cmd[2], vec[2], expr::Expr::variable("thickness"));

    const char* names[5] = {"approach", "wall", "base", "wall", "exit"};
    for (double t : {minThickness, maxThickness}) {
        expr::Scope scope = w.scope;
        scope.thickness = t;
        std::vector<path::Segment> moved = path::segments(tpl::instantiate(w.templ, scope));
        for (int k : {0, 1, 3, 4}) {
            Vec2 ref = vec[k].length() > 0 ? normalized(vec[k]) : u;
            double signedLen = dot(moved[motif.indices[k]].delta(), ref);
            if (signedLen < 0) {
                throw Error(ErrorKind::InvalidArgument,
                            who + ": " + names[k] + " segment of length " + formatNumber(vec[k].length())
                                + " would become negative (" + formatNumber(signedLen)
                                + ") at thickness " + formatNumber(t));
            }
        }
    }
    commit(doc, node, w);
    ensureDesignThickness(doc, thickness);
}

std::vector<SlitMotif> parameterizeSlits(Document& doc, double thickness, double maxThickness,
                                         const std::optional<std::string>& locator,
                                         const std::vector<std::size_t>& select, double tolerance,
                                         double angleToleranceDeg) {
    std::vector<SlitMotif> applied;
    std::vector<SlitMotif> found = detectSlits(doc, thickness, tolerance, angleToleranceDeg);
    if (locator && !doc.findElement(*locator)) {
        throw Error(ErrorKind::NotFound, "no element '" + *locator + "'");
    }
    for (const SlitMotif& m : found) {
        if (locator && m.element != *locator) {
            continue;
        }
        if (!select.empty()
            && std::find(select.begin(), select.end(), m.indices[0]) == select.end()) {
            continue;
        }
        parameterizeSlit(doc, *doc.findElement(m.element), m, thickness, thickness / 2, maxThickness);
        applied.push_back(m);
    }
    return applied;
}

} // namespace lasertpl::tagger
