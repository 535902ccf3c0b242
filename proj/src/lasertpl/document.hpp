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

#ifndef LASERTPL_DOCUMENT_HPP
#define LASERTPL_DOCUMENT_HPP

#include "lasertpl/expr.hpp"
#include "lasertpl/path.hpp"
#include "lasertpl/xml.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lasertpl {

inline constexpr std::string_view kLaserNamespace = "http://www.w3.org/lasersvg";

/// Converts an SVG length to millimetres. Unitless values are millimetres.
/// Throws Error(Validation) naming the unit for pt, %, em and other units.
double resolveLength(std::string_view raw);

enum class ElementKind { Rect, Circle, Ellipse, Path, Group, Svg, Other };

/// Kind from a (possibly prefixed) element name.
ElementKind elementKind(std::string_view name);

enum class ThicknessAdjust { None, Width, Height, Both };
enum class Origin { Right, Bottom, BottomRight, Center };
enum class KerfAdjust { None, Shrink, Grow };
enum class Action { Cut, Engrave };
enum class JointType { Flap, Finger, FingerCompact, TSlot };
enum class JointDirection { Inside, Outside };
enum class Side { Top, Right, Bottom, Left };

inline constexpr std::array<Side, 4> kSides = {Side::Top, Side::Right, Side::Bottom, Side::Left};

const char* toString(ThicknessAdjust v);
const char* toString(Origin v);
const char* toString(KerfAdjust v);
const char* toString(Action v);
const char* toString(JointType v);
const char* toString(JointDirection v);
const char* toString(Side v);

std::optional<JointType> parseJointType(std::string_view s);

struct BoltParams {
    double boltDiameter = 3.2;
    double boltLength = 12;
    double nutWidth = 5.7;
    double nutHeight = 2.5;
};

struct SideJoint {
    std::optional<JointType> type;
    std::optional<JointDirection> direction;
    std::optional<std::string> id;
};

/// Decoded `laser:` attributes of one element. Absent attributes are nullopt.
struct LaserAttrs {
    std::optional<double> materialThickness;
    std::optional<double> kerf;
    std::optional<double> scale;
    std::optional<ThicknessAdjust> thicknessAdjust;
    std::optional<Origin> origin;
    std::optional<KerfAdjust> kerfAdjust;
    std::optional<std::string> kerfMask;
    std::optional<std::string> templateText;
    std::optional<Action> action;
    std::optional<std::string> actionValue;
    std::optional<std::string> jointId;
    std::optional<JointType> jointType;
    std::optional<JointDirection> jointDirection;
    std::optional<int> jointSegment;
    std::optional<int> fingerCount;
    std::optional<std::string> jointBase;
    std::optional<std::string> generated;
    std::array<SideJoint, 4> sides;
    std::optional<double> boltDiameter;
    std::optional<double> boltLength;
    std::optional<double> nutWidth;
    std::optional<double> nutHeight;

    bool hasSideJoints() const;
    bool hasJoint() const { return jointType.has_value() || hasSideJoints(); }
    const SideJoint& side(Side s) const { return sides[static_cast<int>(s)]; }
    BoltParams bolt() const;
};

struct GlobalParams {
    std::optional<double> materialThickness; // design thickness
    std::optional<double> kerf;
    std::optional<double> scale;
    std::optional<Action> defaultAction;
    bool namespaceDeclared = false;
};

/// Element visitor: the element, its locator (id when present, otherwise a
/// slash path such as "/svg/g[1]/rect[2]") and its ancestors, root first.
using ElementVisitor =
    std::function<void(xml::Node& node, const std::string& locator,
                       const std::vector<xml::Node*>& ancestors)>;

/// A parsed template document. Copyable value; transforms work on copies.
class Document {
public:
    /// Parses and decodes. Throws Error(Syntax) for malformed XML and
    /// Error(Validation) for undecodable laser attributes or functions.
    static Document parse(std::string_view text);

    static Document load(const std::string& filename);

    /// Serialized XML; adds the laser namespace declaration when laser
    /// attributes are used but the namespace is not bound.
    std::string serialize() const;

    void save(const std::string& filename) const;

    xml::XmlDocument& xml() { return xml_; }
    const xml::XmlDocument& xml() const { return xml_; }

    xml::Node& root() { return xml_.root; }
    const xml::Node& root() const { return xml_.root; }

    const std::string& prefix() const { return prefix_; }

    /// Qualified attribute name for a laser attribute, e.g. "laser:kerf".
    std::string laserName(std::string_view local) const;

    bool isLaserName(std::string_view qualifiedName) const;

    bool namespaceDeclared() const { return namespaceDeclared_; }

    GlobalParams globals() const;

    const expr::FunctionRegistry& functions() const { return functions_; }

    /// Decodes laser attributes of `node`. Throws Error(Validation).
    LaserAttrs laserAttrs(const xml::Node& node, const std::string& locator = {}) const;

    void forEachElement(const ElementVisitor& visit);
    void forEachElement(const std::function<void(const xml::Node&, const std::string&)>& visit) const;

    /// Element by id or locator, nullptr if absent.
    xml::Node* findElement(std::string_view locator);
    const xml::Node* findElement(std::string_view locator) const;

    /// Removes every laser attribute, laser element and the namespace
    /// declaration.
    void stripLaser();

    /// True if any laser attribute or element is present.
    bool usesLaser() const;

private:
    xml::XmlDocument xml_;
    std::string prefix_ = "laser";
    bool namespaceDeclared_ = false;
    expr::FunctionRegistry functions_;
};

// Geometry attribute helpers -------------------------------------------

/// Length attribute in mm, `fallback` when absent.
double lengthAttr(const xml::Node& node, std::string_view name, double fallback = 0);

/// Writes `value` (mm, unitless) unless the attribute already resolves to a
/// value within 1e-9, which keeps untouched geometry byte-stable.
void setLengthAttr(xml::Node& node, std::string_view name, double value);

/// Writes path data to `d` unless the current value already describes
/// `cmds` within 1e-9.
void setPathData(xml::Node& node, const path::CommandList& cmds);

/// Parses "x1,y1 x2,y2 ..." point lists.
std::vector<double> parseNumberList(std::string_view text);

} // namespace lasertpl

#endif // LASERTPL_DOCUMENT_HPP
