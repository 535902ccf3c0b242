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

#include "lasertpl/document.hpp"

#include "lasertpl/error.hpp"
#include "lasertpl/numbers.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace lasertpl {

double resolveLength(std::string_view raw) {
    std::size_t b = raw.find_first_not_of(" \t\r\n");
    std::size_t e = raw.find_last_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        fail(ErrorKind::Validation, "empty length");
    }
    std::string_view s = raw.substr(b, e - b + 1);
    std::size_t pos = 0;
    auto value = scanNumber(s, pos);
    if (!value) {
        fail(ErrorKind::Validation, "invalid length '" + std::string(raw) + "'");
    }
    std::string_view unit = s.substr(pos);
    if (unit.empty() || unit == "mm") {
        return *value;
    }
    if (unit == "cm") {
        return *value * 10;
    }
    if (unit == "in") {
        return *value * 25.4;
    }
    if (unit == "px") {
        return *value * 25.4 / 96;
    }
    fail(ErrorKind::Validation,
         "unsupported unit '" + std::string(unit) + "' in length '" + std::string(raw) + "'");
}

namespace {

std::string_view localName(std::string_view name) {
    auto colon = name.find(':');
    return colon == std::string_view::npos ? name : name.substr(colon + 1);
}

} // namespace

ElementKind elementKind(std::string_view name) {
    std::string_view n = localName(name);
    if (n == "rect") {
        return ElementKind::Rect;
    }
    if (n == "circle") {
        return ElementKind::Circle;
    }
    if (n == "ellipse") {
        return ElementKind::Ellipse;
    }
    if (n == "path") {
        return ElementKind::Path;
    }
    if (n == "g") {
        return ElementKind::Group;
    }
    if (n == "svg") {
        return ElementKind::Svg;
    }
    return ElementKind::Other;
}

// Enumerations ------------------------------------------------------------

namespace {

template<typename E, std::size_t N>
struct EnumTable {
    std::array<std::pair<E, const char*>, N> entries;

    const char* name(E v) const {
        for (const auto& [e, s] : entries) {
            if (e == v) {
                return s;
            }
        }
        return "?";
    }

    std::optional<E> parse(std::string_view s) const {
        for (const auto& [e, n] : entries) {
            if (s == n) {
                return e;
            }
        }
        return std::nullopt;
    }
};

constexpr EnumTable<ThicknessAdjust, 4> kThicknessAdjust{{{{ThicknessAdjust::None, "none"},
                                                          {ThicknessAdjust::Width, "width"},
                                                          {ThicknessAdjust::Height, "height"},
                                                          {ThicknessAdjust::Both, "both"}}}};
constexpr EnumTable<Origin, 4> kOrigin{{{{Origin::Right, "right"},
                                         {Origin::Bottom, "bottom"},
                                         {Origin::BottomRight, "bottom-right"},
                                         {Origin::Center, "center"}}}};
constexpr EnumTable<KerfAdjust, 3> kKerfAdjust{
    {{{KerfAdjust::None, "none"}, {KerfAdjust::Shrink, "shrink"}, {KerfAdjust::Grow, "grow"}}}};
constexpr EnumTable<Action, 2> kAction{{{{Action::Cut, "cut"}, {Action::Engrave, "engrave"}}}};
constexpr EnumTable<JointType, 4> kJointType{{{{JointType::Flap, "flap"},
                                               {JointType::Finger, "finger"},
                                               {JointType::FingerCompact, "finger-compact"},
                                               {JointType::TSlot, "tslot"}}}};
constexpr EnumTable<JointDirection, 2> kJointDirection{
    {{{JointDirection::Inside, "inside"}, {JointDirection::Outside, "outside"}}}};
constexpr EnumTable<Side, 4> kSide{
    {{{Side::Top, "top"}, {Side::Right, "right"}, {Side::Bottom, "bottom"}, {Side::Left, "left"}}}};

} // namespace

const char* toString(ThicknessAdjust v) { return kThicknessAdjust.name(v); }
const char* toString(Origin v) { return kOrigin.name(v); }
const char* toString(KerfAdjust v) { return kKerfAdjust.name(v); }
const char* toString(Action v) { return kAction.name(v); }
const char* toString(JointType v) { return kJointType.name(v); }
const char* toString(JointDirection v) { return kJointDirection.name(v); }
const char* toString(Side v) { return kSide.name(v); }

std::optional<JointType> parseJointType(std::string_view s) {
    return kJointType.parse(s);
}

bool LaserAttrs::hasSideJoints() const {
    for (const SideJoint& s : sides) {
        if (s.type) {
            return true;
        }
    }
    return false;
}

BoltParams LaserAttrs::bolt() const {
    BoltParams b;
    b.boltDiameter = boltDiameter.value_or(b.boltDiameter);
    b.boltLength = boltLength.value_or(b.boltLength);
    b.nutWidth = nutWidth.value_or(b.nutWidth);
    b.nutHeight = nutHeight.value_or(b.nutHeight);
    return b;
}

// Decoding ----------------------------------------------------------------

namespace {

std::string elementLabel(const xml::Node& node, const std::string& locator) {
    return locator.empty() ? "<" + node.name + ">" : "'" + locator + "'";
}

class Decoder {
public:
    Decoder(const Document& doc, const xml::Node& node, const std::string& locator)
        : doc_(doc)
        , node_(node)
        , locator_(locator) {
    }

    const std::string* raw(std::string_view local) const {
        return node_.attribute(doc_.laserName(local));
    }

    template<typename E, std::size_t N>
    std::optional<E> enumValue(std::string_view local, const EnumTable<E, N>& table) const {
        const std::string* v = raw(local);
        if (!v) {
            return std::nullopt;
        }
        auto parsed = table.parse(*v);
        if (!parsed) {
            fail(ErrorKind::Validation, "unknown " + std::string(local) + " value '" + *v
                                            + "' on element " + elementLabel(node_, locator_));
        }
        return parsed;
    }

    std::optional<double> length(std::string_view local) const {
        const std::string* v = raw(local);
        if (!v) {
            return std::nullopt;
        }
        try {
            return resolveLength(*v);
        }
        catch (const Error& e) {
            fail(ErrorKind::Validation, doc_.laserName(local) + " on element "
                                            + elementLabel(node_, locator_) + ": " + e.what());
        }
    }

    std::optional<double> number(std::string_view local) const {
        const std::string* v = raw(local);
        if (!v) {
            return std::nullopt;
        }
        auto d = parseDouble(*v);
        if (!d) {
            fail(ErrorKind::Validation, "invalid " + doc_.laserName(local) + " value '" + *v
                                            + "' on element " + elementLabel(node_, locator_));
        }
        return d;
    }

    std::optional<int> integer(std::string_view local) const {
        auto d = number(local);
        if (!d) {
            return std::nullopt;
        }
        if (*d != std::floor(*d) || std::fabs(*d) > 1e6) {
            fail(ErrorKind::Validation, doc_.laserName(local) + " must be an integer on element "
                                            + elementLabel(node_, locator_));
        }
        return static_cast<int>(*d);
    }

    std::optional<std::string> text(std::string_view local) const {
        const std::string* v = raw(local);
        return v ? std::optional<std::string>(*v) : std::nullopt;
    }

private:
    const Document& doc_;
    const xml::Node& node_;
    const std::string& locator_;
};

std::string readFile(const std::string& filename) {
    std::ifstream in(filename, std::ios::binary);
    if (!in) {
        fail(ErrorKind::Io, "cannot open '" + filename + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void visitElements(xml::Node& node, const std::string& path, std::vector<xml::Node*>& ancestors,
                   const ElementVisitor& visit) {
    const std::string* id = node.attribute("id");
    visit(node, id && !id->empty() ? *id : path, ancestors);
    ancestors.push_back(&node);
    std::map<std::string, int> counts;
    for (xml::Node& child : node.children) {
        if (!child.isElement()) {
            continue;
        }
        int index = ++counts[child.name];
        visitElements(child, path + "/" + child.name + "[" + std::to_string(index) + "]",
                      ancestors, visit);
    }
    ancestors.pop_back();
}

} // namespace

LaserAttrs Document::laserAttrs(const xml::Node& node, const std::string& locator) const {
    Decoder d(*this, node, locator);
    LaserAttrs a;
    a.materialThickness = d.length("material-thickness");
    a.kerf = d.length("kerf");
    a.scale = d.number("scale");
    a.thicknessAdjust = d.enumValue("thickness-adjust", kThicknessAdjust);
    a.origin = d.enumValue("origin", kOrigin);
    a.kerfAdjust = d.enumValue("kerf-adjust", kKerfAdjust);
    a.kerfMask = d.text("kerf-mask");
    a.templateText = d.text("template");
    a.action = d.enumValue("action", kAction);
    a.actionValue = d.text("action-value");
    a.jointId = d.text("joint");
    a.jointType = d.enumValue("joint-type", kJointType);
    a.jointDirection = d.enumValue("joint-direction", kJointDirection);
    a.jointSegment = d.integer("joint-segment");
    a.fingerCount = d.integer("finger-count");
    a.jointBase = d.text("joint-base");
    a.generated = d.text("generated");
    for (Side s : kSides) {
        std::string base = std::string("joint-") + toString(s);
        SideJoint& sj = a.sides[static_cast<int>(s)];
        sj.type = d.enumValue(base + "-type", kJointType);
        sj.direction = d.enumValue(base + "-direction", kJointDirection);
        sj.id = d.text(base);
    }
    a.boltDiameter = d.length("bolt-diameter");
    a.boltLength = d.length("bolt-length");
    a.nutWidth = d.length("nut-width");
    a.nutHeight = d.length("nut-height");
    return a;
}

Document Document::parse(std::string_view text) {
    Document doc;
    doc.xml_ = xml::parse(text);
    if (elementKind(doc.xml_.root.name) != ElementKind::Svg) {
        fail(ErrorKind::Validation, "root element must be <svg>, found <" + doc.xml_.root.name + ">");
    }
    for (const xml::Attribute& a : doc.xml_.root.attributes) {
        if (a.name.rfind("xmlns:", 0) == 0 && a.value == kLaserNamespace) {
            doc.prefix_ = a.name.substr(6);
            doc.namespaceDeclared_ = true;
            break;
        }
    }
    std::string functionsText;
    bool haveFunctions = false;
    const std::string functionsName = doc.laserName("functions");
    doc.forEachElement([&](const xml::Node& node, const std::string& locator) {
        doc.laserAttrs(node, locator);
        if (node.name == functionsName) {
            haveFunctions = true;
            functionsText += node.textContent();
            functionsText += '\n';
        }
    });
    if (haveFunctions) {
        doc.functions_ = expr::parseFunctionDefinitions(functionsText);
    }
    return doc;
}

Document Document::load(const std::string& filename) {
    return parse(readFile(filename));
}

std::string Document::laserName(std::string_view local) const {
    std::string s = prefix_;
    s += ':';
    s += local;
    return s;
}

bool Document::isLaserName(std::string_view qualifiedName) const {
    return qualifiedName.size() > prefix_.size() + 1
           && qualifiedName.compare(0, prefix_.size(), prefix_) == 0
           && qualifiedName[prefix_.size()] == ':';
}

GlobalParams Document::globals() const {
    LaserAttrs a = laserAttrs(xml_.root, "/svg");
    GlobalParams g;
    g.materialThickness = a.materialThickness;
    g.kerf = a.kerf;
    g.scale = a.scale;
    g.defaultAction = a.action;
    g.namespaceDeclared = namespaceDeclared_;
    return g;
}

void Document::forEachElement(const ElementVisitor& visit) {
    std::vector<xml::Node*> ancestors;
    visitElements(xml_.root, "/" + xml_.root.name, ancestors, visit);
}

void Document::forEachElement(
    const std::function<void(const xml::Node&, const std::string&)>& visit) const {
    std::vector<xml::Node*> ancestors;
    // The visitor only reads; the cast lets both overloads share one walker.
    auto& self = const_cast<xml::XmlDocument&>(xml_);
    visitElements(self.root, "/" + self.root.name, ancestors,
                  [&](xml::Node& n, const std::string& loc, const std::vector<xml::Node*>&) {
                      visit(n, loc);
                  });
}

xml::Node* Document::findElement(std::string_view locator) {
    xml::Node* found = nullptr;
    forEachElement([&](xml::Node& n, const std::string& loc, const std::vector<xml::Node*>&) {
        if (!found && loc == locator) {
            found = &n;
        }
    });
    return found;
}

const xml::Node* Document::findElement(std::string_view locator) const {
    const xml::Node* found = nullptr;
    forEachElement([&](const xml::Node& n, const std::string& loc) {
        if (!found && loc == locator) {
            found = &n;
        }
    });
    return found;
}

bool Document::usesLaser() const {
    bool used = false;
    forEachElement([&](const xml::Node& n, const std::string&) {
        if (isLaserName(n.name)) {
            used = true;
        }
        for (const xml::Attribute& a : n.attributes) {
            if (isLaserName(a.name)) {
                used = true;
            }
        }
    });
    return used;
}

namespace {

void stripNode(xml::Node& node, const Document& doc) {
    std::erase_if(node.attributes, [&](const xml::Attribute& a) { return doc.isLaserName(a.name); });
    std::erase_if(node.children, [&](const xml::Node& c) {
        return c.isElement() && doc.isLaserName(c.name);
    });
    for (xml::Node& c : node.children) {
        if (c.isElement()) {
            stripNode(c, doc);
        }
    }
}

} // namespace

void Document::stripLaser() {
    stripNode(xml_.root, *this);
    xml_.root.removeAttribute("xmlns:" + prefix_);
    namespaceDeclared_ = false;
    functions_ = {};
}

std::string Document::serialize() const {
    if (!namespaceDeclared_ && usesLaser()) {
        xml::XmlDocument copy = xml_;
        copy.root.setAttribute("xmlns:" + prefix_, std::string(kLaserNamespace));
        return xml::serialize(copy);
    }
    return xml::serialize(xml_);
}

void Document::save(const std::string& filename) const {
    std::ofstream out(filename, std::ios::binary);
    if (!out) {
        fail(ErrorKind::Io, "cannot write '" + filename + "'");
    }
    out << serialize();
    if (!out) {
        fail(ErrorKind::Io, "error writing '" + filename + "'");
    }
}

// Helpers -----------------------------------------------------------------

double lengthAttr(const xml::Node& node, std::string_view name, double fallback) {
    const std::string* v = node.attribute(name);
    if (!v) {
        return fallback;
    }
    try {
        return resolveLength(*v);
    }
    catch (const Error& e) {
        fail(ErrorKind::Validation, "attribute '" + std::string(name) + "' on <" + node.name
                                        + ">: " + e.what());
    }
}

void setLengthAttr(xml::Node& node, std::string_view name, double value) {
    if (const std::string* v = node.attribute(name)) {
        try {
            if (std::fabs(resolveLength(*v) - value) <= 1e-9) {
                return;
            }
        }
        catch (const Error&) {
            // Unparseable values are overwritten.
        }
    }
    node.setAttribute(name, formatNumber(value));
}

void setPathData(xml::Node& node, const path::CommandList& cmds) {
    if (const std::string* d = node.attribute("d")) {
        try {
            if (path::approxEqual(path::parsePathData(*d), cmds, 1e-9)) {
                return;
            }
        }
        catch (const Error&) {
            // Malformed data is replaced.
        }
    }
    node.setAttribute("d", path::serializePathData(cmds));
}

std::vector<double> parseNumberList(std::string_view text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (true) {
        while (pos < text.size()
               && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',')) {
            ++pos;
        }
        if (pos >= text.size()) {
            break;
        }
        auto v = scanNumber(text, pos);
        if (!v) {
            fail(ErrorKind::Validation, "malformed number list '" + std::string(text) + "'");
        }
        out.push_back(*v);
    }
    return out;
}

} // namespace lasertpl
