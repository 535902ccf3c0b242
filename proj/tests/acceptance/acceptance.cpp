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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include "fixtures.hpp"
#include "lasertpl/document.hpp"
#include "lasertpl/engine.hpp"
#include "lasertpl/error.hpp"
#include "lasertpl/expr.hpp"
#include "lasertpl/joints.hpp"
#include "lasertpl/path.hpp"
#include "lasertpl/tagger.hpp"
#include "lasertpl/template_path.hpp"
#include "lasertpl/xml.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace lasertpl;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

// Runs `check`, enforcing `limitMs` when positive. Exceptions count as
// failures.
void criterion(const char* name, double limitMs, const std::function<Outcome()>& check) {
    auto t0 = Clock::now();
    Outcome o;
    try {
        o = check();
    }
    catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    bool inTime = limitMs <= 0 || ms < limitMs;
    bool pass = o.ok && inTime;
    failures += pass ? 0 : 1;
    char timing[96];
    if (limitMs > 0) {
        std::snprintf(timing, sizeof timing, "%.1f ms < %.0f ms%s", ms, limitMs, inTime ? "" : " EXCEEDED");
    }
    else {
        std::snprintf(timing, sizeof timing, "%.1f ms", ms);
    }
    std::printf("%s %s: %s [%s]\n", pass ? "PASS" : "FAIL", name, o.detail.c_str(), timing);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

ParamSet at(double t, double kerf = 0, double scale = 1) {
    ParamSet p;
    p.thickness = t;
    p.kerf = kerf;
    p.scale = scale;
    return p;
}

std::vector<oracle::Pt> dOf(const Document& d, const std::string& id) {
    const xml::Node* n = d.findElement(id);
    if (!n || !n->attribute("d")) {
        throw std::runtime_error("no path data on " + id);
    }
    return oracle::endpoints(*n->attribute("d"));
}

double dist(oracle::Pt a, oracle::Pt b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

bool isNumber(const std::string& s, double* out) {
    std::istringstream in(s);
    double v;
    in >> v;
    if (in.fail() || !in.eof()) {
        return false;
    }
    *out = v;
    return true;
}

// --- joints ---------------------------------------------------------------

std::vector<oracle::Pt> polyline(const joints::Edge& e, const joints::Fragment& f, double t) {
    path::CommandList c = tpl::instantiate(joints::fragmentPath(e, f), expr::Scope{t, 0, 1, nullptr});
    std::vector<oracle::Pt> out;
    oracle::Pt cur;
    for (const path::Command& k : c) {
        if (k.op != 'M' && k.op != 'L') {
            throw std::runtime_error("unexpected command in joint fragment");
        }
        cur = k.relative ? oracle::Pt{cur.x + k.args[0], cur.y + k.args[1]}
                         : oracle::Pt{k.args[0], k.args[1]};
        out.push_back(cur);
    }
    return out;
}

oracle::Tiling seam(JointType type, double t, double length) {
    joints::Edge a{{0, 0}, {length, 0}, true};
    joints::Edge b{{length, 0}, {0, 0}, true};
    joints::JointSpec out{type, JointDirection::Outside, std::nullopt, {}};
    joints::JointSpec in{type, JointDirection::Inside, std::nullopt, {}};
    auto pa = polyline(a, joints::generateJoint(a, out, t), t);
    auto pb = polyline(b, joints::generateJoint(b, in, t), t);
    Vec2 na = a.outwardNormal();
    Vec2 nb = b.outwardNormal();
    oracle::Profile fa = oracle::toProfile(pa, {0, 0}, {length, 0}, {na.x, na.y});
    oracle::Profile fb = oracle::toProfile(pb, {0, 0}, {length, 0}, {nb.x, nb.y});
    std::reverse(fb.pts.begin(), fb.pts.end());
    for (oracle::Pt& p : fb.pts) {
        p.y = -p.y;
    }
    if (!oracle::monotone(fa) || !oracle::monotone(fb)) {
        throw std::runtime_error("joint profile is not a function of the edge coordinate");
    }
    return oracle::tile(fa, fb, length, t);
}

// --- criteria -------------------------------------------------------------

Outcome kerfTab() {
    const char* text = R"(<svg xmlns="http://www.w3.org/2000/svg" xmlns:laser="http://www.w3.org/lasersvg" laser:material-thickness="3">
<path id="tab" d="M5 5 l0 10 l3 0 l0 -10 l-3 0" laser:template="M5 5 l0 10 l{thickness} 0 l0 -10 l-{thickness} 0" laser:kerf-mask="G i G i"/>
</svg>)";
    Document out = instantiateDocument(Document::parse(text), at(3, 0.2)).document;
    auto p = dOf(out, "tab");
    double worst = std::max(std::fabs(dist(p[0], p[1]) - 10.2), std::fabs(dist(p[2], p[3]) - 10.2));
    bool horizontal = std::fabs(dist(p[1], p[2]) - 3) < 1e-9 && std::fabs(dist(p[3], p[4]) - 3) < 1e-9;
    return {worst <= 1e-9 && horizontal,
            "vertical lengths 10.2, max error " + fmt(worst) + " <= 1e-9; horizontals "
                + (horizontal ? "unchanged" : "CHANGED")};
}

Outcome identity() {
    double worst = 0;
    int mismatches = 0, elements = 0;
    for (const std::string& f : fixtures::corpus()) {
        Document d = Document::load(fixtures::path(f));
        Document out = instantiateDocument(d, at(*d.globals().materialThickness)).document;
        d.forEachElement([&](const xml::Node& n, const std::string& loc) {
            ++elements;
            const xml::Node* m = out.findElement(loc);
            if (!m) {
                ++mismatches;
                return;
            }
            for (const xml::Attribute& a : n.attributes) {
                const std::string* b = m->attribute(a.name);
                double x, y;
                if (!b) {
                    ++mismatches;
                }
                else if (a.name == "d") {
                    auto pa = oracle::endpoints(a.value);
                    auto pb = oracle::endpoints(*b);
                    if (pa.size() != pb.size()) {
                        ++mismatches;
                    }
                    else {
                        worst = std::max(worst, oracle::maxDeviation(pa, pb));
                    }
                }
                else if (isNumber(a.value, &x) && isNumber(*b, &y)) {
                    worst = std::max(worst, std::fabs(x - y));
                }
                else if (a.name != "laser:template" && *b != a.value) {
                    ++mismatches;
                }
            }
        });
    }
    return {mismatches == 0 && worst <= 1e-6,
            std::to_string(fixtures::corpus().size()) + " fixtures, " + std::to_string(elements)
                + " elements, max coordinate deviation " + fmt(worst) + " <= 1e-6, "
                + std::to_string(mismatches) + " attribute mismatches"};
}

Outcome benchCount() {
    Document src = Document::load(fixtures::path("authoring/bench.svg"));
    tagger::TagReport report = tagger::detectAll(src, 3, 0.01);
    std::size_t rects = std::count_if(report.primitives.begin(), report.primitives.end(),
                                      [&](const tagger::PrimitiveHit& h) {
                                          return src.findElement(h.element)->name == "rect";
                                      });
    std::size_t tenons = std::count_if(report.segments.begin(), report.segments.end(),
                                       [](const tagger::SegmentHit& s) { return !s.curve; });

    // Tag, then compare instantiations at 3 and 4 mm element by element.
    Document tagged = src;
    tagger::tagAll(tagged, 3, 0.01);
    Document a = instantiateDocument(tagged, at(3)).document;
    Document b = instantiateDocument(tagged, at(4)).document;
    std::set<std::string> expectRects;
    for (const auto& h : report.primitives) {
        expectRects.insert(h.element);
    }
    std::set<std::pair<std::string, std::size_t>> expectSegs;
    for (const auto& s : report.segments) {
        expectSegs.insert({s.element, s.index});
    }
    std::set<std::string> changedRects;
    std::set<std::pair<std::string, std::size_t>> changedSegs;
    int unexpected = 0;
    const std::set<std::string> geometry = {"x", "y", "width", "height", "cx", "cy", "r", "rx", "ry"};
    a.forEachElement([&](const xml::Node& n, const std::string& loc) {
        const xml::Node* m = b.findElement(loc);
        if (&n == &a.root()) {
            return; // carries the new material thickness
        }
        for (const xml::Attribute& attr : n.attributes) {
            const std::string* v = m->attribute(attr.name);
            if (v && *v == attr.value) {
                continue;
            }
            if (attr.name == "d") {
                path::CommandList ca = path::parsePathData(attr.value);
                path::CommandList cb = path::parsePathData(*v);
                auto segs = path::segments(ca);
                for (std::size_t k = 0; k < ca.size() && k < cb.size(); ++k) {
                    if (ca[k].args == cb[k].args) {
                        continue;
                    }
                    auto s = std::find_if(segs.begin(), segs.end(),
                                          [&](const path::Segment& g) { return g.command == k; });
                    if (s == segs.end()) {
                        ++unexpected;
                    }
                    else {
                        changedSegs.insert({loc, s->index});
                    }
                }
            }
            else if (geometry.count(attr.name)) {
                changedRects.insert(loc);
            }
            else {
                ++unexpected;
            }
        }
    });
    bool ok = rects == 8 && tenons == 16 && changedRects == expectRects && changedSegs == expectSegs
              && unexpected == 0;
    return {ok, std::to_string(rects) + " mortise rects (want 8), " + std::to_string(tenons)
                    + " tenon segments (want 16); at 4 mm " + std::to_string(changedRects.size())
                    + " rects and " + std::to_string(changedSegs.size())
                    + " segments changed, all tagged; " + std::to_string(unexpected)
                    + " other changes"};
}

Outcome scaling() {
    Document d = Document::load(fixtures::path("corpus/bench.lasersvg"));
    const double t = 3;
    double worstTagged = 0, worstLiteral = 0;
    int tagged = 0, literal = 0;
    for (double s : {0.5, 2.0, 3.0}) {
        Document out = instantiateDocument(d, at(t, 0, s)).document;
        d.forEachElement([&](const xml::Node& n, const std::string& loc) {
            const xml::Node* m = out.findElement(loc);
            if (n.name == "path" && n.attribute("laser:template")) {
                tpl::TemplatePath tp = tpl::parseTemplate(*n.attribute("laser:template"));
                path::CommandList c = path::parsePathData(*m->attribute("d"));
                for (std::size_t k = 0; k < tp.commands.size(); ++k) {
                    const auto& args = tp.commands[k].args;
                    // A thickness segment: one {thickness} slot, every other slot a literal 0.
                    int thick = 0, other = 0;
                    for (std::size_t j = 0; j < args.size(); ++j) {
                        if (!args[j].isExpr) {
                            ++literal;
                            worstLiteral = std::max(worstLiteral, std::fabs(c[k].args[j] - s * args[j].literal));
                            other += args[j].literal != 0;
                        }
                        else if (args[j].source == "thickness") {
                            ++thick;
                        }
                        else {
                            ++other;
                        }
                    }
                    if (thick == 1 && other == 0) {
                        double len = 0;
                        for (double v : c[k].args) {
                            len += v * v;
                        }
                        ++tagged;
                        worstTagged = std::max(worstTagged, std::fabs(std::sqrt(len) - t));
                    }
                }
            }
            else if (n.name == "rect") {
                LaserAttrs la = d.laserAttrs(n);
                bool tw = la.thicknessAdjust == ThicknessAdjust::Width || la.thicknessAdjust == ThicknessAdjust::Both;
                bool th = la.thicknessAdjust == ThicknessAdjust::Height || la.thicknessAdjust == ThicknessAdjust::Both;
                for (auto [name, isTagged] : {std::pair{"width", tw}, std::pair{"height", th}}) {
                    double before = lengthAttr(n, name), after = lengthAttr(*m, name);
                    if (isTagged) {
                        ++tagged;
                        worstTagged = std::max(worstTagged, std::fabs(after - t));
                    }
                    else {
                        ++literal;
                        worstLiteral = std::max(worstLiteral, std::fabs(after - s * before));
                    }
                }
            }
        });
    }
    return {tagged > 0 && literal > 0 && worstTagged <= 1e-6 && worstLiteral <= 1e-6,
            "s in {0.5, 2, 3}: " + std::to_string(tagged) + " tagged lengths within " + fmt(worstTagged)
                + " of t, " + std::to_string(literal) + " literals within " + fmt(worstLiteral)
                + " of s*value (tol 1e-6)"};
}

Outcome complementarity() {
    double worstOverlap = 0, worstGap = 0;
    int seams = 0;
    for (JointType type : {JointType::Flap, JointType::Finger, JointType::FingerCompact, JointType::TSlot}) {
        for (double t : {2.0, 3.0, 4.0, 6.0}) {
            for (double length : {60.0, 97.3}) {
                oracle::Tiling r = seam(type, t, length);
                worstOverlap = std::max(worstOverlap, r.overlap);
                worstGap = std::max(worstGap, r.gap);
                ++seams;
            }
        }
    }
    return {worstOverlap < 1e-6 && worstGap < 1e-6,
            std::to_string(seams) + " seams over 4 joint types and t in {2,3,4,6}: overlap "
                + fmt(worstOverlap) + ", gap " + fmt(worstGap) + " mm^2 (< 1e-6)"};
}

Outcome expressions() {
    int bad = 0;
    for (unsigned seed = 1; seed <= 1000; ++seed) {
        oracle::Vars v{1 + (seed % 7) * 0.5, (seed % 5) * 0.05, 0.5 + (seed % 3) * 0.75};
        oracle::GenExpr g = oracle::ExprGen(seed, v).make(5);
        double got = expr::evaluate(expr::parseExpression(g.text), expr::Scope{v.thickness, v.kerf, v.scale, nullptr});
        bad += oracle::closeRelative(got, g.value, 1e-9) ? 0 : 1;
    }
    tpl::Token half = tpl::Token::parse("0.5 * thickness");
    double a = expr::evaluate(half.expression, expr::Scope{3, 0, 1, nullptr});
    double b = expr::evaluate(expr::parseExpression("Math.cos(Math.PI/3)*thickness"), expr::Scope{4, 0, 1, nullptr});
    bool worked = oracle::closeRelative(a, 1.5, 1e-9) && oracle::closeRelative(b, 2.0, 1e-9);
    return {bad == 0 && worked, std::to_string(1000 - bad) + "/1000 random expressions within 1e-9 relative; "
                                    "{0.5 * thickness}@3 = " + fmt(a) + ", Math.cos(Math.PI/3)*thickness@4 = " + fmt(b)};
}

Outcome slitCenters() {
    Document src = Document::load(fixtures::path("authoring/comb.svg"));
    std::vector<tagger::SlitMotif> before = tagger::detectSlits(src, 3);
    Document doc = src;
    tagger::parameterizeSlits(doc, 3, 6);
    double worst = 0;
    int samples = 0;
    bool counts = before.size() == 4;
    for (double t = 1.5; t <= 6.0 + 1e-9; t += 0.125) {
        Document out = instantiateDocument(doc, at(t)).document;
        std::vector<tagger::SlitMotif> after = tagger::detectSlits(out, t, 1e-6);
        if (after.size() != before.size()) {
            counts = false;
            continue;
        }
        for (std::size_t k = 0; k < after.size(); ++k) {
            oracle::Pt c0{(before[k].mouth0.x + before[k].mouth1.x) / 2, (before[k].mouth0.y + before[k].mouth1.y) / 2};
            oracle::Pt c1{(after[k].mouth0.x + after[k].mouth1.x) / 2, (after[k].mouth0.y + after[k].mouth1.y) / 2};
            worst = std::max(worst, dist(c0, c1));
            ++samples;
        }
    }
    return {counts && worst <= 1e-6,
            std::to_string(before.size()) + " slits (axis-aligned and rotated), " + std::to_string(samples)
                + " samples over t in [1.5, 6], max mouth midpoint drift " + fmt(worst) + " <= 1e-6"};
}

Outcome roundTrip() {
    int ok = 0;
    for (const std::string& f : fixtures::all()) {
        std::string text = fixtures::read(f);
        xml::XmlDocument a = xml::parse(text);
        Document d = Document::parse(text);
        ok += xml::domEqual(xml::parse(xml::serialize(a)), a) && xml::domEqual(xml::parse(d.serialize()).root, a.root);
    }
    int n = static_cast<int>(fixtures::all().size());
    return {ok == n, std::to_string(ok) + "/" + std::to_string(n) + " fixtures DOM-equal after parse and serialize"};
}

Outcome profileStyling() {
    Document d = Document::load(fixtures::path("corpus/bench.lasersvg"));
    ParamSet p = at(3);
    p.profile = "trotec";
    Document trotec = instantiateDocument(d, p).document;
    p.profile = "epilog";
    Document epilog = instantiateDocument(d, p).document;
    int cuts = 0, bad = 0;
    trotec.forEachElement([&](const xml::Node& n, const std::string& loc) {
        if (n.name == "svg" || n.name == "g" || !n.attribute("stroke")) {
            return;
        }
        // The fixture sets cut on the root and engrave on the label only.
        if (d.laserAttrs(n).action == Action::Engrave) {
            return;
        }
        ++cuts;
        const xml::Node* e = epilog.findElement(loc);
        bad += *n.attribute("stroke") != "#0000FF";
        bad += !e->attribute("stroke-width") || *e->attribute("stroke-width") != "0.076mm";
    });
    return {cuts > 0 && bad == 0, std::to_string(cuts) + " cut elements: trotec stroke=\"#0000FF\", "
                                      "epilog stroke-width=\"0.076mm\", " + std::to_string(bad) + " mismatches"};
}

} // namespace

int main() {
    auto t0 = Clock::now();
    criterion("kerf-compensation", 1000, kerfTab);
    criterion("identity-at-design-parameters", 5000, identity);
    criterion("bench-tagging", 0, benchCount);
    criterion("thickness-aware-scaling", 0, scaling);
    criterion("joint-complementarity", 10000, complementarity);
    criterion("expression-differential", 0, expressions);
    criterion("slit-center-invariance", 0, slitCenters);
    criterion("round-trip", 0, roundTrip);
    criterion("profile-styling", 0, profileStyling);
    double total = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    criterion("suite-runtime", 0, [&] {
        return Outcome{total < 60000, "all criteria in " + fmt(total / 1000) + " s (< 60 s), "
                                      "core library only, no network or UI"};
    });
    std::printf("%d failed\n", failures);
    return failures == 0 ? 0 : 1;
}
