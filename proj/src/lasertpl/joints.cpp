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

#include "lasertpl/joints.hpp"

#include "lasertpl/numbers.hpp"

#include <cmath>

namespace lasertpl::joints {

Vec2 Edge::outwardNormal() const {
    Vec2 u = direction();
    // Screen coordinates: the right-hand normal of (x, y) is (-y, x).
    return interiorOnRight ? Vec2{u.y, -u.x} : Vec2{-u.y, u.x};
}

int defaultFingerCount(JointType type, double length, double thickness) {
    double limit = type == JointType::FingerCompact ? length / 2 / thickness
                                                    : length / (2 * thickness);
    int n = static_cast<int>(std::floor(limit + 1e-9));
    if (type == JointType::TSlot) {
        while (n > 3 && n % 4 != 3) {
            --n;
        }
    }
    else if (n % 2 == 0) {
        --n;
    }
    return n < 3 ? 3 : n;
}

namespace {

// Profile vertex in edge coordinates: `s` along the edge, height
// hT * thickness + hL along the outward normal.
struct ProfilePoint {
    double s = 0;
    double hT = 0;
    double hL = 0;
};

class Profile {
public:
    void to(double s, double hT, double hL = 0) {
        const ProfilePoint& last = points_.back();
        if (last.s == s && last.hT == hT && last.hL == hL) {
            return;
        }
        points_.push_back({s, hT, hL});
    }

    const std::vector<ProfilePoint>& points() const { return points_; }

private:
    std::vector<ProfilePoint> points_{ProfilePoint{}};
};

bool isZero(double v) {
    return std::fabs(v) < 1e-12;
}

// Slot value lit + coef * thickness.
tpl::Token component(double lit, double coef) {
    if (isZero(coef)) {
        return tpl::Token::number(isZero(lit) ? 0.0 : lit);
    }
    std::string text;
    if (isZero(lit)) {
        if (isZero(coef - 1)) {
            text = "thickness";
        }
        else if (isZero(coef + 1)) {
            text = "-thickness";
        }
        else {
            text = formatExact(coef) + "*thickness";
        }
    }
    else {
        text = formatExact(lit) + (coef < 0 ? "-" : "+") + formatExact(std::fabs(coef)) + "*thickness";
        if (isZero(std::fabs(coef) - 1)) {
            text = formatExact(lit) + (coef < 0 ? "-" : "+") + "thickness";
        }
    }
    return tpl::Token::fromExpr(expr::parseExpression(text));
}

// Slot value lit + coef * thickness + kcoef * kerf.
tpl::Token withKerf(double lit, double coef, double kcoef) {
    tpl::Token base = component(lit, coef);
    if (isZero(kcoef)) {
        return base;
    }
    std::string head = base.isExpr ? expr::toString(base.expression) : formatExact(base.literal);
    std::string text = (head == "0" ? std::string() : head + (kcoef < 0 ? "-" : "+"))
                       + (head == "0" && kcoef < 0 ? "-" : "")
                       + (isZero(std::fabs(kcoef) - 1) ? "" : formatExact(std::fabs(kcoef)) + "*") + "kerf";
    return tpl::Token::fromExpr(expr::parseExpression(text));
}

// Letters for the segments between consecutive profile points. A segment
// is along the edge when both ends share a height; maximal runs of other
// segments form walls. Walls touching p0 or p1 stay fixed.
std::vector<char> kerfLetters(const std::vector<ProfilePoint>& pts, double thickness) {
    std::size_t n = pts.size() - 1;
    auto height = [&](const ProfilePoint& q) { return q.hT * thickness + q.hL; };
    std::vector<bool> along(n);
    for (std::size_t k = 0; k < n; ++k) {
        along[k] = isZero(height(pts[k + 1]) - height(pts[k])) && !isZero(pts[k + 1].s - pts[k].s);
    }
    std::vector<int> halves(n, 0);
    std::optional<std::size_t> prev;
    for (std::size_t k = 0; k < n; ++k) {
        if (!along[k]) {
            continue;
        }
        if (prev && *prev + 1 < k) {
            double rise = height(pts[k]) - height(pts[*prev + 1]);
            int dir = isZero(rise) ? 0 : (rise > 0 ? 1 : -1);
            halves[*prev] -= dir;
            halves[k] += dir;
        }
        prev = k;
    }
    std::vector<char> out(n, 'i');
    for (std::size_t k = 0; k < n; ++k) {
        switch (halves[k]) {
        case 2: out[k] = 'G'; break;
        case 1: out[k] = 'g'; break;
        case -1: out[k] = 's'; break;
        case -2: out[k] = 'S'; break;
        default: break;
        }
    }
    return out;
}

[[noreturn]] void tooShort(JointType type, double length, double thickness, const std::string& need) {
    throw Error(ErrorKind::Pipeline,
                "edge of length " + formatNumber(length) + " mm is too short for a "
                    + toString(type) + " joint at thickness " + formatNumber(thickness)
                    + " mm (needs " + need + "); use fewer fingers or a flap joint");
}

int fingerCountFor(const JointSpec& spec, double length, double thickness) {
    if (!spec.fingerCount) {
        return defaultFingerCount(spec.type, length, thickness);
    }
    int n = *spec.fingerCount;
    if (n < 3 || n % 2 == 0) {
        throw Error(ErrorKind::Pipeline, "finger-count must be an odd integer of at least 3, got "
                                             + std::to_string(n));
    }
    if (spec.type == JointType::TSlot && n % 4 != 3) {
        throw Error(ErrorKind::Pipeline, "t-slot finger-count must leave a gap in the middle "
                                         "(3, 7, 11, ...), got "
                                             + std::to_string(n));
    }
    return n;
}

} // namespace

Fragment generateJoint(const Edge& edge, const JointSpec& spec, double thickness) {
    const double L = edge.length();
    if (!(L > 0)) {
        throw Error(ErrorKind::Pipeline, "joint edge has zero length");
    }
    if (!(thickness > 0)) {
        throw Error(ErrorKind::Pipeline, "joint thickness must be positive");
    }
    const double sign = spec.direction == JointDirection::Outside ? 1.0 : -1.0;
    const BoltParams& bolt = spec.bolt;
    Profile p;

    switch (spec.type) {
    case JointType::Finger:
    case JointType::TSlot: {
        if (L <= 4 * thickness) {
            tooShort(spec.type, L, thickness, "more than " + formatNumber(4 * thickness) + " mm");
        }
        int n = fingerCountFor(spec, L, thickness);
        double w = L / n;
        int middle = (n - 1) / 2;
        bool channel = spec.type == JointType::TSlot && spec.direction == JointDirection::Outside;
        if (spec.type == JointType::TSlot && !(w > bolt.boltDiameter)) {
            throw Error(ErrorKind::Pipeline, "t-slot section width " + formatNumber(w)
                                                 + " mm does not fit a bolt of diameter "
                                                 + formatNumber(bolt.boltDiameter) + " mm");
        }
        for (int i = 0; i < n; ++i) {
            double s0 = i * w;
            double s1 = i == n - 1 ? L : (i + 1) * w;
            if (i % 2 == 0) {
                p.to(s0, sign);
                p.to(s1, sign);
                p.to(s1, 0);
            }
            else if (channel && i == middle) {
                double a = L / 2 - bolt.boltDiameter / 2;
                double b = L / 2 + bolt.boltDiameter / 2;
                p.to(a, 0);
                p.to(a, 0, -bolt.boltLength / 2);
                p.to(b, 0, -bolt.boltLength / 2);
                p.to(b, 0);
                p.to(s1, 0);
            }
            else {
                p.to(s1, 0);
            }
        }
        break;
    }
    case JointType::FingerCompact: {
        if (3 * thickness > L / 2) {
            tooShort(spec.type, L, thickness, "at least " + formatNumber(6 * thickness) + " mm");
        }
        int n = fingerCountFor(spec, L, thickness);
        if (n * thickness > L / 2 + 1e-9) {
            throw Error(ErrorKind::Pipeline, std::to_string(n) + " compact fingers of width "
                                                 + formatNumber(thickness)
                                                 + " mm do not fit in the middle half of a "
                                                 + formatNumber(L) + " mm edge");
        }
        double start = (L - n * thickness) / 2;
        p.to(start, 0);
        for (int i = 0; i < n; ++i) {
            double s0 = start + i * thickness;
            double s1 = start + (i + 1) * thickness;
            if (i % 2 == 0) {
                p.to(s0, sign);
                p.to(s1, sign);
                p.to(s1, 0);
            }
            else {
                p.to(s1, 0);
            }
        }
        p.to(L, 0);
        break;
    }
    case JointType::Flap: {
        double inset = L / 16;
        for (auto [a, b] : {std::pair{L / 8, 3 * L / 8}, std::pair{5 * L / 8, 7 * L / 8}}) {
            p.to(a, 0);
            p.to(a + inset, sign);
            p.to(b - inset, sign);
            p.to(b, 0);
        }
        p.to(L, 0);
        break;
    }
    }

    const Vec2 u = edge.direction();
    const Vec2 nrm = edge.outwardNormal();
    Fragment f;
    const auto& pts = p.points();
    for (std::size_t k = 1; k < pts.size(); ++k) {
        tpl::TemplateCommand c{'L', true, {}};
        if (k + 1 == pts.size()) {
            c.relative = false;
            c.args = {tpl::Token::number(edge.p1.x), tpl::Token::number(edge.p1.y)};
        }
        else {
            double ds = pts[k].s - pts[k - 1].s;
            double dT = pts[k].hT - pts[k - 1].hT;
            double dL = pts[k].hL - pts[k - 1].hL;
            c.args = {component(u.x * ds + nrm.x * dL, nrm.x * dT),
                      component(u.y * ds + nrm.y * dL, nrm.y * dT)};
        }
        f.commands.push_back(std::move(c));
    }
    f.kerfLetters = kerfLetters(pts, thickness);

    if (spec.type == JointType::TSlot && spec.direction == JointDirection::Inside) {
        Vec2 corner = edge.p0 + u * (L / 2 - bolt.nutWidth / 2);
        tpl::TemplatePath pocket;
        // Inset by half a kerf on every side; the cut widens it back.
        Vec2 in = (u - nrm) * 0.5;
        pocket.commands.push_back({'M', false, {withKerf(corner.x, -nrm.x, in.x), withKerf(corner.y, -nrm.y, in.y)}});
        pocket.commands.push_back({'L', true, {withKerf(u.x * bolt.nutWidth, 0, -u.x), withKerf(u.y * bolt.nutWidth, 0, -u.y)}});
        pocket.commands.push_back({'L', true, {withKerf(-nrm.x * bolt.nutHeight, 0, nrm.x), withKerf(-nrm.y * bolt.nutHeight, 0, nrm.y)}});
        pocket.commands.push_back({'L', true, {withKerf(-u.x * bolt.nutWidth, 0, u.x), withKerf(-u.y * bolt.nutWidth, 0, u.y)}});
        pocket.commands.push_back({'Z', true, {}});
        f.pocket = std::move(pocket);
    }
    return f;
}

tpl::TemplatePath fragmentPath(const Edge& edge, const Fragment& fragment) {
    tpl::TemplatePath t;
    t.commands.push_back({'M', false, {tpl::Token::number(edge.p0.x), tpl::Token::number(edge.p0.y)}});
    t.commands.insert(t.commands.end(), fragment.commands.begin(), fragment.commands.end());
    return t;
}

// Document level ----------------------------------------------------------

namespace {

std::string rectBase(double x, double y, double w, double h) {
    return "M" + formatNumber(x) + " " + formatNumber(y) + " l" + formatNumber(w) + " 0 l0 "
           + formatNumber(h) + " l" + formatNumber(-w) + " 0 l0 " + formatNumber(-h) + " z";
}

// Description the joints are generated from, before any expansion.
std::optional<std::string> baseDescription(const xml::Node& node, const LaserAttrs& a) {
    if (a.jointBase) {
        return a.jointBase;
    }
    if (elementKind(node.name) == ElementKind::Rect) {
        return rectBase(lengthAttr(node, "x"), lengthAttr(node, "y"), lengthAttr(node, "width"),
                        lengthAttr(node, "height"));
    }
    if (a.templateText) {
        return a.templateText;
    }
    if (const std::string* d = node.attribute("d")) {
        return *d;
    }
    return std::nullopt;
}

struct EdgeRequest {
    int segment = -1;
    std::optional<Side> side;
    std::string id;
    JointSpec spec;
    bool hasDirection = false;
};

std::vector<EdgeRequest> edgeRequests(const xml::Node& node, const LaserAttrs& a,
                                      const std::string& locator) {
    std::vector<EdgeRequest> out;
    if (a.jointType && a.hasSideJoints()) {
        throw Error(ErrorKind::Validation, "element '" + locator
                                               + "' has both joint-type and per-side joint types");
    }
    if (a.jointType) {
        if (elementKind(node.name) == ElementKind::Rect) {
            throw Error(ErrorKind::Validation,
                        "rect '" + locator + "' must use per-side joint attributes (joint-top-type, ...)");
        }
        EdgeRequest r;
        r.segment = a.jointSegment.value_or(-1);
        if (r.segment < 0) {
            throw Error(ErrorKind::Validation,
                        "path '" + locator + "' has a joint-type but no joint-segment index");
        }
        r.id = a.jointId.value_or("");
        r.spec.type = *a.jointType;
        r.spec.direction = a.jointDirection.value_or(JointDirection::Outside);
        r.hasDirection = a.jointDirection.has_value();
        r.spec.fingerCount = a.fingerCount;
        r.spec.bolt = a.bolt();
        out.push_back(r);
    }
    for (Side s : kSides) {
        const SideJoint& sj = a.side(s);
        if (!sj.type) {
            continue;
        }
        if (elementKind(node.name) != ElementKind::Rect && !a.jointBase) {
            throw Error(ErrorKind::Validation,
                        "per-side joints on '" + locator + "' need a rect or a laser:joint-base");
        }
        EdgeRequest r;
        r.segment = static_cast<int>(s);
        r.side = s;
        r.id = sj.id.value_or("");
        r.spec.type = *sj.type;
        r.spec.direction = sj.direction.value_or(JointDirection::Outside);
        r.hasDirection = sj.direction.has_value();
        r.spec.fingerCount = a.fingerCount;
        r.spec.bolt = a.bolt();
        out.push_back(r);
    }
    return out;
}

std::string describe(const EdgeRequest& r, const std::string& locator) {
    std::string s = "'" + locator + "'";
    if (r.side) {
        s += std::string(" ") + toString(*r.side) + " side";
    }
    else {
        s += " segment " + std::to_string(r.segment);
    }
    return s;
}

const path::Segment& findSegment(const std::vector<path::Segment>& segs, const EdgeRequest& r,
                                 const std::string& locator) {
    for (const path::Segment& s : segs) {
        if (static_cast<int>(s.index) == r.segment) {
            if (s.kind != path::SegmentKind::Line) {
                throw Error(ErrorKind::Pipeline,
                            "joint on " + describe(r, locator) + ": joints need a straight edge");
            }
            return s;
        }
    }
    throw Error(ErrorKind::Pipeline, "joint on " + describe(r, locator) + ": no such segment");
}

std::string renamed(const std::string& name, std::string_view local) {
    auto colon = name.find(':');
    return colon == std::string::npos ? std::string(local) : name.substr(0, colon + 1) + std::string(local);
}

bool isGenerated(const Document& doc, const xml::Node& n) {
    const std::string* g = n.attribute(doc.laserName("generated"));
    return g && g->rfind("joint:", 0) == 0;
}

void removeGenerated(const Document& doc, xml::Node& node) {
    std::erase_if(node.children, [&](const xml::Node& c) { return c.isElement() && isGenerated(doc, c); });
    for (xml::Node& c : node.children) {
        if (c.isElement()) {
            removeGenerated(doc, c);
        }
    }
}

void setIfDifferent(xml::Node& node, const std::string& name, const std::string& value) {
    const std::string* cur = node.attribute(name);
    if (!cur || *cur != value) {
        node.setAttribute(name, value);
    }
}

struct Expander {
    Document& doc;
    const std::map<std::string, JointType>& overrides;
    double thickness;
    double kerf;
    double scale;

    std::vector<xml::Node> process(xml::Node& node, const std::string& locator) {
        LaserAttrs a = doc.laserAttrs(node, locator);
        if (!a.hasJoint()) {
            return {};
        }
        ElementKind kind = elementKind(node.name);
        if (kind != ElementKind::Rect && kind != ElementKind::Path) {
            throw Error(ErrorKind::Validation, "joints are supported on rect and path elements, not <"
                                                   + node.name + "> '" + locator + "'");
        }
        if (kind == ElementKind::Rect && a.thicknessAdjust && *a.thicknessAdjust != ThicknessAdjust::None) {
            throw Error(ErrorKind::Validation,
                        "rect '" + locator + "' cannot combine thickness-adjust with joints");
        }
        std::vector<EdgeRequest> requests = edgeRequests(node, a, locator);
        for (EdgeRequest& r : requests) {
            auto it = overrides.find(r.id);
            if (!r.id.empty() && it != overrides.end() && it->second != r.spec.type) {
                r.spec.type = it->second;
                std::string attr = r.side ? std::string("joint-") + toString(*r.side) + "-type"
                                          : std::string("joint-type");
                node.setAttribute(doc.laserName(attr), toString(r.spec.type));
            }
        }
        const double t = a.materialThickness.value_or(thickness);
        expr::Scope scope{t, kerf, scale, &doc.functions()};
        std::string base = *baseDescription(node, a);

        if (kind == ElementKind::Rect) {
            for (const char* attr : {"x", "y", "width", "height", "rx", "ry"}) {
                node.removeAttribute(attr);
            }
            node.name = renamed(node.name, "path");
        }

        tpl::TemplatePath bt = tpl::parseTemplate(base);
        path::CommandList baseCmds = tpl::instantiate(bt, scope);
        std::vector<path::Segment> segs = path::segments(baseCmds);

        std::map<std::size_t, Fragment> fragments;
        std::vector<xml::Node> pockets;
        for (const EdgeRequest& r : requests) {
            const path::Segment& seg = findSegment(segs, r, locator);
            Edge edge{seg.start, seg.end, path::interiorOnRight(baseCmds, seg.command)};
            Fragment f;
            try {
                f = generateJoint(edge, r.spec, t);
            }
            catch (const Error& e) {
                throw Error(e.kind(), "joint on " + describe(r, locator) + ": " + e.what());
            }
            if (f.pocket) {
                pockets.push_back(pocketElement(node, r, locator, *f.pocket, scope, pockets.size()));
            }
            fragments[seg.command] = std::move(f);
        }

        // Straight sides are left uncompensated; any earlier mask is replaced.
        tpl::TemplatePath out;
        path::KerfMask mask;
        for (std::size_t i = 0; i < bt.commands.size(); ++i) {
            auto it = fragments.find(i);
            if (it == fragments.end()) {
                out.commands.push_back(bt.commands[i]);
                if (bt.commands[i].op != 'M' && bt.commands[i].op != 'Z') {
                    mask.letters.push_back('i');
                }
            }
            else {
                out.commands.insert(out.commands.end(), it->second.commands.begin(),
                                    it->second.commands.end());
                mask.letters.insert(mask.letters.end(), it->second.kerfLetters.begin(),
                                    it->second.kerfLetters.end());
            }
        }
        setIfDifferent(node, doc.laserName("kerf-mask"), path::serializeKerfMask(mask));
        if (!a.jointBase) {
            node.setAttribute(doc.laserName("joint-base"), base);
        }
        setIfDifferent(node, doc.laserName("template"), tpl::serializeTemplate(out));
        setPathData(node, tpl::instantiate(out, scope));
        return pockets;
    }

    xml::Node pocketElement(const xml::Node& host, const EdgeRequest& r, const std::string& locator,
                            const tpl::TemplatePath& pocket, const expr::Scope& scope,
                            std::size_t index) {
        xml::Node p = xml::Node::element(renamed(host.name, "path"));
        if (const std::string* id = host.attribute("id")) {
            p.setAttribute("id", *id + "-pocket" + (index > 0 ? "-" + std::to_string(index + 1) : ""));
        }
        for (const xml::Attribute& attr : host.attributes) {
            if (attr.name == "class" || attr.name == "style" || attr.name == "stroke"
                || attr.name == "fill" || attr.name == "stroke-width"
                || attr.name == doc.laserName("action")) {
                p.setAttribute(attr.name, attr.value);
            }
        }
        p.setAttribute(doc.laserName("generated"), "joint:" + (r.id.empty() ? locator : r.id));
        p.setAttribute(doc.laserName("template"), tpl::serializeTemplate(pocket));
        p.setAttribute("d", path::serializePathData(tpl::instantiate(pocket, scope)));
        return p;
    }

    void walk(xml::Node& parent, const std::string& parentPath) {
        std::map<std::string, int> counts;
        for (std::size_t i = 0; i < parent.children.size(); ++i) {
            if (!parent.children[i].isElement()) {
                continue;
            }
            std::string childPath = parentPath + "/" + parent.children[i].name + "["
                                    + std::to_string(++counts[parent.children[i].name]) + "]";
            const std::string* id = parent.children[i].attribute("id");
            std::string locator = id && !id->empty() ? *id : childPath;
            std::vector<xml::Node> pockets = process(parent.children[i], locator);
            walk(parent.children[i], childPath);
            if (!pockets.empty()) {
                parent.children.insert(parent.children.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                       pockets.begin(), pockets.end());
                i += pockets.size();
            }
        }
    }
};

} // namespace

std::vector<JointEdge> listJoints(const Document& doc) {
    std::vector<JointEdge> out;
    GlobalParams g = doc.globals();
    doc.forEachElement([&](const xml::Node& node, const std::string& locator) {
        LaserAttrs a = doc.laserAttrs(node, locator);
        if (!a.hasJoint() || isGenerated(doc, node)) {
            return;
        }
        std::vector<EdgeRequest> requests;
        try {
            requests = edgeRequests(node, a, locator);
        }
        catch (const Error&) {
            return; // reported by the validator
        }
        std::vector<path::Segment> segs;
        try {
            if (auto base = baseDescription(node, a)) {
                expr::Scope scope{a.materialThickness.value_or(g.materialThickness.value_or(1)),
                                  g.kerf.value_or(0), g.scale.value_or(1), &doc.functions()};
                segs = path::segments(tpl::instantiate(tpl::parseTemplate(*base), scope));
            }
        }
        catch (const Error&) {
        }
        for (const EdgeRequest& r : requests) {
            JointEdge e;
            e.id = r.id;
            e.element = locator;
            e.side = r.side;
            e.segment = r.segment;
            e.type = r.spec.type;
            if (r.hasDirection) {
                e.direction = r.spec.direction;
            }
            for (const path::Segment& s : segs) {
                if (static_cast<int>(s.index) == r.segment) {
                    e.length = s.chordLength();
                }
            }
            out.push_back(e);
        }
    });
    return out;
}

Diagnostics validateJointPairs(const Document& doc) {
    Diagnostics out;
    std::vector<JointEdge> edges = listJoints(doc);
    std::map<std::string, std::vector<const JointEdge*>> byId;
    std::vector<std::string> order;
    for (const JointEdge& e : edges) {
        if (e.id.empty()) {
            continue;
        }
        if (!byId.count(e.id)) {
            order.push_back(e.id);
        }
        byId[e.id].push_back(&e);
    }
    auto report = [&](Severity sev, const std::string& element, const std::string& msg) {
        out.push_back({sev, element, "", msg});
    };
    for (const std::string& id : order) {
        const auto& group = byId[id];
        const JointEdge& first = *group.front();
        if (group.size() == 1) {
            report(Severity::Warning, first.element, "joint '" + id + "' is used by a single edge");
            continue;
        }
        int inside = 0;
        int outside = 0;
        bool directionsKnown = true;
        for (const JointEdge* e : group) {
            if (e->type != first.type) {
                report(Severity::Error, e->element,
                       "joint '" + id + "': types differ (" + toString(first.type) + " on '"
                           + first.element + "' vs " + toString(e->type) + ")");
            }
            if (std::fabs(e->length - first.length) > 0.05) {
                report(Severity::Error, e->element,
                       "joint '" + id + "': edge lengths differ (" + formatNumber(first.length)
                           + " mm vs " + formatNumber(e->length) + " mm)");
            }
            if (!e->direction) {
                directionsKnown = false;
            }
            else if (*e->direction == JointDirection::Inside) {
                ++inside;
            }
            else {
                ++outside;
            }
        }
        bool symmetric = first.type == JointType::Flap && !directionsKnown;
        if (!symmetric && (inside == 0 || outside == 0)) {
            report(Severity::Error, first.element,
                   "joint '" + id + "': directions not complementary (needs one inside and one outside edge)");
        }
    }
    return out;
}

void expandJoints(Document& doc, const std::map<std::string, JointType>& overrides,
                  double thickness, double kerf, double scale) {
    if (!overrides.empty()) {
        std::vector<JointEdge> edges = listJoints(doc);
        for (const auto& [id, type] : overrides) {
            bool known = false;
            for (const JointEdge& e : edges) {
                known = known || e.id == id;
            }
            if (!known) {
                throw Error(ErrorKind::NotFound, "unknown joint id '" + id + "'");
            }
        }
    }
    removeGenerated(doc, doc.root());
    Expander ex{doc, overrides, thickness, kerf, scale};
    ex.walk(doc.root(), "/" + doc.root().name);
}

Document overrideJointType(const Document& doc, const std::string& jointId, JointType type) {
    Document out = doc;
    std::vector<JointEdge> edges = listJoints(out);
    bool known = false;
    bool change = false;
    for (const JointEdge& e : edges) {
        if (e.id == jointId) {
            known = true;
            change = change || e.type != type;
        }
    }
    if (!known) {
        throw Error(ErrorKind::NotFound, "unknown joint id '" + jointId + "'");
    }
    if (!change) {
        return out;
    }
    GlobalParams g = out.globals();
    if (!g.materialThickness) {
        throw Error(ErrorKind::Validation, "document has no laser:material-thickness");
    }
    expandJoints(out, {{jointId, type}}, *g.materialThickness, g.kerf.value_or(0), g.scale.value_or(1));
    return out;
}

} // namespace lasertpl::joints
