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

#include "lasertpl/engine.hpp"

#include "lasertpl/joints.hpp"
#include "lasertpl/numbers.hpp"
#include "lasertpl/template_path.hpp"

#include <cmath>

namespace lasertpl {

namespace {

constexpr double kDesignTolerance = 0.05;

bool positive(double v) {
    return std::isfinite(v) && v > 0;
}

} // namespace

ResolvedParams resolveParams(const Document& doc, const ParamSet& p) {
    GlobalParams g = doc.globals();
    ResolvedParams r;
    if (p.designThickness) {
        r.designThickness = *p.designThickness;
    }
    else if (g.materialThickness) {
        r.designThickness = *g.materialThickness;
    }
    else {
        throw Error(ErrorKind::InvalidArgument,
                    "document has no laser:material-thickness; a design thickness is required");
    }
    if (!positive(r.designThickness)) {
        throw Error(ErrorKind::InvalidArgument, "design thickness must be positive");
    }
    r.thickness = p.thickness.value_or(r.designThickness);
    if (!positive(r.thickness)) {
        throw Error(ErrorKind::InvalidArgument, "thickness must be positive");
    }
    r.kerf = p.kerf.value_or(g.kerf.value_or(0));
    if (!std::isfinite(r.kerf) || r.kerf < 0) {
        throw Error(ErrorKind::InvalidArgument, "kerf must not be negative");
    }
    r.documentScale = g.scale.value_or(1);
    if (!positive(r.documentScale)) {
        throw Error(ErrorKind::InvalidArgument, "document laser:scale must be positive");
    }
    r.scale = p.scale.value_or(r.documentScale);
    if (!positive(r.scale)) {
        throw Error(ErrorKind::InvalidArgument, "scale must be positive");
    }
    return r;
}

// Primitive thickness -----------------------------------------------------

Diagnostics adjustPrimitiveThickness(xml::Node& node, const LaserAttrs& a, double newT,
                                     double designT, const std::string& locator) {
    Diagnostics out;
    ThicknessAdjust adj = a.thicknessAdjust.value_or(ThicknessAdjust::None);
    if (adj == ThicknessAdjust::None) {
        return out;
    }
    bool w = adj == ThicknessAdjust::Width || adj == ThicknessAdjust::Both;
    bool h = adj == ThicknessAdjust::Height || adj == ThicknessAdjust::Both;
    auto check = [&](double dim, const char* what) {
        if (std::fabs(dim - designT) > kDesignTolerance) {
            out.push_back({Severity::Warning, locator, "primitives",
                           std::string(what) + " " + formatNumber(dim)
                               + " dimension does not match design thickness "
                               + formatNumber(designT)});
        }
    };
    switch (elementKind(node.name)) {
    case ElementKind::Rect: {
        std::optional<Origin> origin = a.origin;
        if (w) {
            double width = lengthAttr(node, "width");
            check(width, "width");
            double dx = newT - width;
            if (origin == Origin::Right || origin == Origin::BottomRight) {
                setLengthAttr(node, "x", lengthAttr(node, "x") - dx);
            }
            else if (origin == Origin::Center) {
                setLengthAttr(node, "x", lengthAttr(node, "x") - dx / 2);
            }
            setLengthAttr(node, "width", newT);
        }
        if (h) {
            double height = lengthAttr(node, "height");
            check(height, "height");
            double dy = newT - height;
            if (origin == Origin::Bottom || origin == Origin::BottomRight) {
                setLengthAttr(node, "y", lengthAttr(node, "y") - dy);
            }
            else if (origin == Origin::Center) {
                setLengthAttr(node, "y", lengthAttr(node, "y") - dy / 2);
            }
            setLengthAttr(node, "height", newT);
        }
        break;
    }
    case ElementKind::Circle:
        check(2 * lengthAttr(node, "r"), "diameter");
        setLengthAttr(node, "r", newT / 2);
        break;
    case ElementKind::Ellipse:
        if (w) {
            check(2 * lengthAttr(node, "rx"), "width");
            setLengthAttr(node, "rx", newT / 2);
        }
        if (h) {
            check(2 * lengthAttr(node, "ry"), "height");
            setLengthAttr(node, "ry", newT / 2);
        }
        break;
    default:
        out.push_back({Severity::Warning, locator, "primitives",
                       "thickness-adjust applies to rect, circle and ellipse; ignored"});
    }
    return out;
}

// Kerf --------------------------------------------------------------------

path::CommandList applyKerfMask(const path::CommandList& rel, const path::KerfMask& mask,
                                double kerf, Diagnostics* warnings) {
    path::CommandList out = rel;
    std::size_t letter = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        path::Command& c = out[i];
        if (c.op == 'M' || c.op == 'Z') {
            continue;
        }
        if (letter >= mask.letters.size()) {
            throw Error(ErrorKind::Pipeline, "kerf mask is shorter than the path");
        }
        char m = mask.letters[letter];
        std::size_t index = letter++;
        if (m == 'i' || m == 'I') {
            continue;
        }
        if (c.op != 'L' || !c.relative) {
            throw Error(ErrorKind::Pipeline, "kerf mask letter " + std::to_string(index)
                                                 + " is on a segment that is not a relative line");
        }
        double amount = (m == 'G' || m == 'S') ? kerf : kerf / 2;
        bool grow = m == 'G' || m == 'g';
        double len = std::hypot(c.args[0], c.args[1]);
        if (len == 0) {
            if (warnings) {
                warnings->push_back({Severity::Warning, "", "kerf",
                                     "zero-length segment " + std::to_string(index)
                                         + " skipped by kerf mask"});
            }
            continue;
        }
        if (!grow && amount >= len) {
            throw Error(ErrorKind::Pipeline, "kerf shrink of " + formatNumber(amount) + " mm on segment "
                                                 + std::to_string(index) + " of length "
                                                 + formatNumber(len) + " mm leaves no segment");
        }
        double factor = (grow ? len + amount : len - amount) / len;
        c.args[0] *= factor;
        c.args[1] *= factor;
    }
    return out;
}

void applyKerfPrimitive(xml::Node& node, double kerf, KerfAdjust mode) {
    if (mode == KerfAdjust::None || kerf == 0) {
        return;
    }
    const double k = mode == KerfAdjust::Grow ? kerf : -kerf;
    auto require = [&](double v, const char* what) {
        if (!(v > 0)) {
            throw Error(ErrorKind::Pipeline, std::string("kerf shrink leaves ") + what + " "
                                                 + formatNumber(v) + " on <" + node.name + ">");
        }
        return v;
    };
    switch (elementKind(node.name)) {
    case ElementKind::Rect: {
        double w = require(lengthAttr(node, "width") + k, "width");
        double h = require(lengthAttr(node, "height") + k, "height");
        setLengthAttr(node, "x", lengthAttr(node, "x") - k / 2);
        setLengthAttr(node, "y", lengthAttr(node, "y") - k / 2);
        setLengthAttr(node, "width", w);
        setLengthAttr(node, "height", h);
        break;
    }
    case ElementKind::Circle:
        setLengthAttr(node, "r", require(lengthAttr(node, "r") + k / 2, "radius"));
        break;
    case ElementKind::Ellipse: {
        double rx = require(lengthAttr(node, "rx") + k / 2, "rx");
        double ry = require(lengthAttr(node, "ry") + k / 2, "ry");
        setLengthAttr(node, "rx", rx);
        setLengthAttr(node, "ry", ry);
        break;
    }
    default:
        break;
    }
}

namespace {

// For every subpath: whether its last point returns to its start.
std::vector<std::pair<bool, double>> closures(const path::CommandList& cmds) {
    std::vector<std::pair<bool, double>> out;
    std::vector<Vec2> pts = path::currentPoints(cmds);
    Vec2 start;
    bool open = false;
    for (std::size_t i = 0; i < cmds.size(); ++i) {
        if (cmds[i].op == 'M') {
            start = pts[i];
            open = true;
        }
        bool last = i + 1 == cmds.size() || cmds[i + 1].op == 'M' || cmds[i + 1].op == 'Z';
        if (open && last && cmds[i].op != 'Z') {
            double gap = distance(pts[i], start);
            out.emplace_back(gap <= 1e-9, gap);
            open = false;
        }
    }
    return out;
}

} // namespace

// Scaling -----------------------------------------------------------------

path::CommandList scalePathData(const path::CommandList& cmds, double f) {
    path::CommandList out = cmds;
    for (path::Command& c : out) {
        for (std::size_t i = 0; i < c.args.size(); ++i) {
            if (c.op == 'A' && i >= 2 && i <= 4) {
                continue;
            }
            c.args[i] *= f;
        }
    }
    return out;
}

namespace {

std::string scaleTemplateText(const std::string& text, double f) {
    tpl::TemplatePath t = tpl::parseTemplate(text);
    tpl::scaleLiterals(t, f);
    return tpl::serializeTemplate(t);
}

// Scales the numeric part of "200mm" style values, keeping the unit.
std::string scaleWithUnit(const std::string& raw, double f) {
    std::size_t pos = raw.find_first_not_of(" \t");
    if (pos == std::string::npos) {
        return raw;
    }
    auto v = scanNumber(raw, pos);
    if (!v) {
        return raw;
    }
    return formatNumber(*v * f) + raw.substr(pos);
}

void scaleElement(const Document& doc, xml::Node& node, const std::string& locator, double f) {
    LaserAttrs a = doc.laserAttrs(node, locator);
    ThicknessAdjust adj = a.thicknessAdjust.value_or(ThicknessAdjust::None);
    bool tw = adj == ThicknessAdjust::Width || adj == ThicknessAdjust::Both;
    bool th = adj == ThicknessAdjust::Height || adj == ThicknessAdjust::Both;
    switch (elementKind(node.name)) {
    case ElementKind::Rect: {
        double x = lengthAttr(node, "x");
        double y = lengthAttr(node, "y");
        double w = lengthAttr(node, "width");
        double h = lengthAttr(node, "height");
        std::optional<Origin> o = a.origin;
        if (tw) {
            if (o == Origin::Right || o == Origin::BottomRight) {
                x = f * (x + w) - w;
            }
            else if (o == Origin::Center) {
                x = f * (x + w / 2) - w / 2;
            }
            else {
                x *= f;
            }
        }
        else {
            x *= f;
            w *= f;
        }
        if (th) {
            if (o == Origin::Bottom || o == Origin::BottomRight) {
                y = f * (y + h) - h;
            }
            else if (o == Origin::Center) {
                y = f * (y + h / 2) - h / 2;
            }
            else {
                y *= f;
            }
        }
        else {
            y *= f;
            h *= f;
        }
        if (node.hasAttribute("x") || x != 0) {
            setLengthAttr(node, "x", x);
        }
        if (node.hasAttribute("y") || y != 0) {
            setLengthAttr(node, "y", y);
        }
        setLengthAttr(node, "width", w);
        setLengthAttr(node, "height", h);
        for (const char* r : {"rx", "ry"}) {
            if (node.hasAttribute(r)) {
                setLengthAttr(node, r, lengthAttr(node, r) * f);
            }
        }
        break;
    }
    case ElementKind::Circle:
        setLengthAttr(node, "cx", lengthAttr(node, "cx") * f);
        setLengthAttr(node, "cy", lengthAttr(node, "cy") * f);
        if (adj == ThicknessAdjust::None) {
            setLengthAttr(node, "r", lengthAttr(node, "r") * f);
        }
        break;
    case ElementKind::Ellipse:
        setLengthAttr(node, "cx", lengthAttr(node, "cx") * f);
        setLengthAttr(node, "cy", lengthAttr(node, "cy") * f);
        if (!tw) {
            setLengthAttr(node, "rx", lengthAttr(node, "rx") * f);
        }
        if (!th) {
            setLengthAttr(node, "ry", lengthAttr(node, "ry") * f);
        }
        break;
    case ElementKind::Path: {
        if (const std::string* d = node.attribute("d")) {
            node.setAttribute("d", path::serializePathData(scalePathData(path::parsePathData(*d), f)));
        }
        const std::string tname = doc.laserName("template");
        if (a.templateText) {
            node.setAttribute(tname, scaleTemplateText(*a.templateText, f));
        }
        if (a.jointBase) {
            node.setAttribute(doc.laserName("joint-base"), scaleTemplateText(*a.jointBase, f));
        }
        break;
    }
    default:
        break;
    }
}

} // namespace

void scaleDocument(Document& doc, double factor) {
    if (factor == 1) {
        return;
    }
    xml::Node& root = doc.root();
    for (const char* attr : {"width", "height"}) {
        if (const std::string* v = root.attribute(attr)) {
            root.setAttribute(attr, scaleWithUnit(*v, factor));
        }
    }
    if (const std::string* vb = root.attribute("viewBox")) {
        std::vector<double> nums = parseNumberList(*vb);
        std::string s;
        for (double n : nums) {
            s += s.empty() ? "" : " ";
            s += formatNumber(n * factor);
        }
        root.setAttribute("viewBox", s);
    }
    doc.forEachElement([&](xml::Node& node, const std::string& locator, const std::vector<xml::Node*>&) {
        scaleElement(doc, node, locator, factor);
    });
}

// Pipeline ----------------------------------------------------------------

namespace {

class StageRunner {
public:
    explicit StageRunner(Diagnostics& warnings)
        : warnings_(warnings) {
    }

    // Runs `f` for one element, recording failures under `stage`.
    template<typename F>
    void element(const char* stage, const std::string& locator, F&& f) {
        try {
            f();
        }
        catch (const Error& e) {
            if (e.kind() == ErrorKind::NotFound || e.kind() == ErrorKind::InvalidArgument) {
                throw;
            }
            errors_.push_back({Severity::Error, locator, stage, e.what()});
        }
    }

    void warn(Diagnostics d, const char* stage, const std::string& locator) {
        for (Diagnostic& x : d) {
            if (x.stage.empty()) {
                x.stage = stage;
            }
            if (x.element.empty()) {
                x.element = locator;
            }
            warnings_.push_back(std::move(x));
        }
    }

    // Throws the collected errors, if any, at the end of a stage.
    void barrier() {
        if (errors_.empty()) {
            return;
        }
        const Diagnostic& first = errors_.front();
        std::string msg = first.stage + ": ";
        if (!first.element.empty()) {
            msg += "'" + first.element + "': ";
        }
        msg += first.message;
        if (errors_.size() > 1) {
            msg += " (and " + std::to_string(errors_.size() - 1) + " more)";
        }
        Diagnostics all = warnings_;
        all.insert(all.end(), errors_.begin(), errors_.end());
        throw Error(ErrorKind::Pipeline, msg, all);
    }

private:
    Diagnostics& warnings_;
    Diagnostics errors_;
};

using Visit = std::function<void(xml::Node&, const std::string&, const LaserAttrs&)>;

void eachWithAttrs(Document& doc, const Visit& f) {
    doc.forEachElement([&](xml::Node& node, const std::string& locator, const std::vector<xml::Node*>&) {
        f(node, locator, doc.laserAttrs(node, locator));
    });
}

} // namespace

InstantiateResult instantiateDocument(const Document& source, const ParamSet& p,
                                      const profiles::ProfileRegistry& registry) {
    const ResolvedParams r = resolveParams(source, p);
    const profiles::MachineProfile* profile = nullptr;
    if (!p.profile.empty()) {
        profile = registry.find(p.profile);
        if (!profile) {
            throw Error(ErrorKind::NotFound, "unknown profile '" + p.profile + "'");
        }
    }

    InstantiateResult result{source, {}};
    Document& doc = result.document;
    StageRunner run(result.diagnostics);
    auto thicknessOf = [&](const LaserAttrs& a) { return a.materialThickness.value_or(r.thickness); };
    auto designOf = [&](const LaserAttrs& a) { return a.materialThickness.value_or(r.designThickness); };

    // (1) thickness-aware scaling
    const double factor = r.scale / r.documentScale;
    if (factor != 1) {
        run.element("scale", "", [&] { scaleDocument(doc, factor); });
        run.barrier();
        doc.root().setAttribute(doc.laserName("scale"), formatNumber(r.scale));
    }

    // (2) joints
    run.element("joints", "", [&] {
        joints::expandJoints(doc, p.jointOverrides, r.thickness, r.kerf, r.scale);
    });
    run.barrier();

    // (3) templates
    eachWithAttrs(doc, [&](xml::Node& node, const std::string& loc, const LaserAttrs& a) {
        if (!a.templateText || elementKind(node.name) != ElementKind::Path) {
            return;
        }
        run.element("templates", loc, [&] {
            expr::Scope scope{thicknessOf(a), r.kerf, r.scale, &doc.functions()};
            setPathData(node, tpl::instantiate(tpl::parseTemplate(*a.templateText), scope));
        });
    });
    run.barrier();

    // (4) primitive thickness
    eachWithAttrs(doc, [&](xml::Node& node, const std::string& loc, const LaserAttrs& a) {
        if (!a.thicknessAdjust || *a.thicknessAdjust == ThicknessAdjust::None) {
            return;
        }
        run.element("primitives", loc, [&] {
            run.warn(adjustPrimitiveThickness(node, a, thicknessOf(a), designOf(a), loc),
                     "primitives", loc);
        });
    });
    run.barrier();

    // (5) kerf: masks, then primitives
    if (r.kerf > 0) {
        eachWithAttrs(doc, [&](xml::Node& node, const std::string& loc, const LaserAttrs& a) {
            if (!a.kerfMask || elementKind(node.name) != ElementKind::Path || !node.hasAttribute("d")) {
                return;
            }
            run.element("kerf", loc, [&] {
                path::CommandList cmds = path::parsePathData(*node.attribute("d"));
                path::KerfMask mask = path::parseKerfMask(*a.kerfMask, cmds);
                if (mask.allIgnore()) {
                    return;
                }
                Diagnostics w;
                path::CommandList out = applyKerfMask(path::toRelative(cmds), mask, r.kerf, &w);
                auto before = closures(cmds);
                auto after = closures(out);
                for (std::size_t i = 0; i < before.size() && i < after.size(); ++i) {
                    if (before[i].first && !after[i].first) {
                        w.push_back({Severity::Warning, loc, "kerf",
                                     "kerf mask opens a closed outline (gap "
                                         + formatNumber(after[i].second) + " mm)"});
                    }
                }
                run.warn(std::move(w), "kerf", loc);
                node.setAttribute("d", path::serializePathData(out));
            });
        });
        run.barrier();
        eachWithAttrs(doc, [&](xml::Node& node, const std::string& loc, const LaserAttrs& a) {
            if (!a.kerfAdjust || *a.kerfAdjust == KerfAdjust::None) {
                return;
            }
            run.element("kerf", loc, [&] {
                if (elementKind(node.name) == ElementKind::Path) {
                    run.warn({{Severity::Warning, loc, "kerf",
                               "kerf-adjust on a path is ignored; use kerf-mask"}},
                             "kerf", loc);
                    return;
                }
                applyKerfPrimitive(node, r.kerf, *a.kerfAdjust);
            });
        });
        run.barrier();
    }

    // The output is authored for the new thickness.
    if (const std::string* mt = doc.root().attribute(doc.laserName("material-thickness"));
        mt || r.thickness != r.designThickness) {
        setLengthAttr(doc.root(), doc.laserName("material-thickness"), r.thickness);
    }

    // (6) styling
    if (profile) {
        run.element("profile", "", [&] { run.warn(profiles::applyProfile(doc, *profile), "profile", ""); });
        run.barrier();
    }
    return result;
}

} // namespace lasertpl
