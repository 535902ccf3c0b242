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

#include "lasertpl/validate.hpp"

#include "lasertpl/joints.hpp"
#include "lasertpl/numbers.hpp"
#include "lasertpl/path.hpp"
#include "lasertpl/template_path.hpp"

#include <cmath>

namespace lasertpl {

Diagnostics validateDocument(const Document& doc) {
    Diagnostics out;
    auto error = [&](const std::string& el, const std::string& msg) {
        out.push_back({Severity::Error, el, "", msg});
    };
    auto warning = [&](const std::string& el, const std::string& msg) {
        out.push_back({Severity::Warning, el, "", msg});
    };

    GlobalParams g = doc.globals();
    if (g.materialThickness && !(*g.materialThickness > 0)) {
        error("/svg", "material-thickness must be positive");
    }
    if (g.kerf && *g.kerf < 0) {
        error("/svg", "kerf must not be negative");
    }
    if (g.scale && !(*g.scale > 0)) {
        error("/svg", "scale must be positive");
    }

    doc.forEachElement([&](const xml::Node& node, const std::string& loc) {
        LaserAttrs a = doc.laserAttrs(node, loc);
        ElementKind kind = elementKind(node.name);
        bool geometric = kind == ElementKind::Rect || kind == ElementKind::Circle
                         || kind == ElementKind::Ellipse || kind == ElementKind::Path;
        if ((geometric || kind == ElementKind::Group) && node.hasAttribute("transform")) {
            warning(loc, "transform attributes are not applied to template geometry");
        }
        ThicknessAdjust adj = a.thicknessAdjust.value_or(ThicknessAdjust::None);
        if (a.origin && adj == ThicknessAdjust::None) {
            warning(loc, "origin has no effect without thickness-adjust");
        }
        if (a.materialThickness && !(*a.materialThickness > 0)) {
            error(loc, "material-thickness must be positive");
        }
        const double design = a.materialThickness.value_or(g.materialThickness.value_or(0));

        if (adj != ThicknessAdjust::None) {
            if (kind != ElementKind::Rect && kind != ElementKind::Circle && kind != ElementKind::Ellipse) {
                warning(loc, "thickness-adjust applies to rect, circle and ellipse");
            }
            else if (design <= 0) {
                error(loc, "thickness-adjust needs a design thickness (laser:material-thickness)");
            }
            else {
                std::vector<double> dims;
                bool w = adj == ThicknessAdjust::Width || adj == ThicknessAdjust::Both;
                bool h = adj == ThicknessAdjust::Height || adj == ThicknessAdjust::Both;
                try {
                    if (kind == ElementKind::Rect) {
                        if (w) {
                            dims.push_back(lengthAttr(node, "width"));
                        }
                        if (h) {
                            dims.push_back(lengthAttr(node, "height"));
                        }
                    }
                    else if (kind == ElementKind::Circle) {
                        dims.push_back(2 * lengthAttr(node, "r"));
                    }
                    else {
                        if (w) {
                            dims.push_back(2 * lengthAttr(node, "rx"));
                        }
                        if (h) {
                            dims.push_back(2 * lengthAttr(node, "ry"));
                        }
                    }
                }
                catch (const Error& e) {
                    error(loc, e.what());
                }
                for (double d : dims) {
                    if (std::fabs(d - design) > 0.05) {
                        warning(loc, "dimension " + formatNumber(d)
                                         + " does not match design thickness " + formatNumber(design));
                    }
                }
            }
        }
        if (a.kerfAdjust && *a.kerfAdjust != KerfAdjust::None && kind == ElementKind::Path) {
            warning(loc, "kerf-adjust on a path is ignored; use kerf-mask");
        }

        if (kind == ElementKind::Path) {
            std::optional<path::CommandList> cmds;
            if (const std::string* d = node.attribute("d")) {
                try {
                    cmds = path::parsePathData(*d);
                }
                catch (const Error& e) {
                    error(loc, e.what());
                }
            }
            if (cmds && a.kerfMask) {
                try {
                    path::parseKerfMask(*a.kerfMask, *cmds);
                }
                catch (const Error& e) {
                    error(loc, e.what());
                }
            }
            if (a.templateText) {
                try {
                    tpl::TemplatePath t = tpl::parseTemplate(*a.templateText);
                    if (!cmds) {
                        error(loc, "template without a d attribute");
                    }
                    else if (t.hasExpressions() && design <= 0) {
                        error(loc, "template needs a design thickness (laser:material-thickness)");
                    }
                    else {
                        expr::Scope scope{design, g.kerf.value_or(0), g.scale.value_or(1), &doc.functions()};
                        if (auto problem = tpl::checkConsistency(t, *cmds, scope)) {
                            error(loc, "template does not match d at the design thickness: " + *problem);
                        }
                    }
                }
                catch (const Error& e) {
                    error(loc, e.what());
                }
            }
        }

        // Joint attribute sanity.
        if (a.jointDirection && !a.jointType) {
            error(loc, "joint-direction without joint-type");
        }
        if (a.jointType && (*a.jointType == JointType::Finger || *a.jointType == JointType::FingerCompact
                            || *a.jointType == JointType::TSlot)
            && !a.jointDirection) {
            error(loc, std::string("joint-direction is required for ") + toString(*a.jointType) + " joints");
        }
        for (Side s : kSides) {
            const SideJoint& sj = a.side(s);
            std::string side = toString(s);
            if (sj.direction && !sj.type) {
                error(loc, "joint-" + side + "-direction without joint-" + side + "-type");
            }
            if (sj.type && *sj.type != JointType::Flap && !sj.direction) {
                error(loc, "joint-" + side + "-direction is required for " + toString(*sj.type) + " joints");
            }
        }
        if (a.jointType && a.hasSideJoints()) {
            error(loc, "joint-type conflicts with per-side joint types");
        }
        if (a.jointType && kind == ElementKind::Path && !a.jointSegment) {
            error(loc, "joint-type on a path needs joint-segment");
        }
        if (a.fingerCount && (*a.fingerCount < 3 || *a.fingerCount % 2 == 0)) {
            error(loc, "finger-count must be an odd integer of at least 3");
        }
        if (a.hasJoint()) {
            BoltParams b = a.bolt();
            if (!(b.boltDiameter > 0 && b.boltLength > 0 && b.nutWidth > 0 && b.nutHeight > 0)) {
                error(loc, "bolt and nut dimensions must be positive");
            }
            else if (!(b.nutWidth > b.boltDiameter)) {
                error(loc, "nut-width must exceed bolt-diameter");
            }
        }
    });

    Diagnostics pairs = joints::validateJointPairs(doc);
    out.insert(out.end(), pairs.begin(), pairs.end());
    return out;
}

} // namespace lasertpl
