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

#include "lasertpl/json_io.hpp"

#include "lasertpl/joints.hpp"

#include <algorithm>
#include <cmath>

namespace lasertpl {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) {
    throw Error(ErrorKind::InvalidArgument, msg);
}

double numberField(const json& v, const char* name) {
    if (!v.is_number()) {
        bad(std::string(name) + " must be a number");
    }
    double d = v.get<double>();
    if (!std::isfinite(d)) {
        bad(std::string(name) + " must be finite");
    }
    return d;
}

json number(const std::string& name, const char* unit, double value, double lo, double hi) {
    return {{"name", name}, {"kind", "number"}, {"unit", unit}, {"value", value},
            {"min", lo}, {"max", std::max(hi, value)}};
}

} // namespace

ParamSet paramsFromJson(const json& j) {
    if (!j.is_object()) {
        bad("request body must be a JSON object");
    }
    ParamSet p;
    for (const auto& [key, v] : j.items()) {
        if (key == "thickness") {
            p.thickness = numberField(v, "thickness");
            if (!(*p.thickness > 0)) {
                bad("thickness must be positive");
            }
        }
        else if (key == "kerf") {
            p.kerf = numberField(v, "kerf");
            if (*p.kerf < 0) {
                bad("kerf must not be negative");
            }
        }
        else if (key == "scale") {
            p.scale = numberField(v, "scale");
            if (!(*p.scale > 0)) {
                bad("scale must be positive");
            }
        }
        else if (key == "profile") {
            if (!v.is_string()) {
                bad("profile must be a string");
            }
            p.profile = v.get<std::string>();
        }
        else if (key == "jointOverrides") {
            if (!v.is_object()) {
                bad("jointOverrides must be an object mapping joint ids to types");
            }
            for (const auto& [id, type] : v.items()) {
                if (!type.is_string()) {
                    bad("jointOverrides." + id + " must be a string");
                }
                auto t = parseJointType(type.get<std::string>());
                if (!t) {
                    bad("jointOverrides." + id + ": unknown joint type '" + type.get<std::string>()
                        + "'");
                }
                p.jointOverrides[id] = *t;
            }
        }
        else {
            bad("unknown field '" + key + "'");
        }
    }
    return p;
}

json paramsToJson(const ParamSet& p) {
    json j = json::object();
    if (p.thickness) {
        j["thickness"] = *p.thickness;
    }
    if (p.kerf) {
        j["kerf"] = *p.kerf;
    }
    if (p.scale) {
        j["scale"] = *p.scale;
    }
    if (!p.profile.empty()) {
        j["profile"] = p.profile;
    }
    if (!p.jointOverrides.empty()) {
        json o = json::object();
        for (const auto& [id, t] : p.jointOverrides) {
            o[id] = toString(t);
        }
        j["jointOverrides"] = o;
    }
    return j;
}

json paramDescriptors(const Document& doc) {
    GlobalParams g = doc.globals();
    json out = json::array();
    double t = g.materialThickness.value_or(3);
    double k = g.kerf.value_or(0);
    double s = g.scale.value_or(1);
    out.push_back(number("thickness", "mm", t, 0.1, 20));
    out.push_back(number("kerf", "mm", k, 0, 1));
    out.push_back(number("scale", "", s, 0.1, 10));
    std::vector<std::string> seen;
    for (const joints::JointEdge& e : joints::listJoints(doc)) {
        if (e.id.empty() || std::find(seen.begin(), seen.end(), e.id) != seen.end()) {
            continue;
        }
        seen.push_back(e.id);
        out.push_back({{"name", e.id},
                       {"kind", "enum"},
                       {"value", toString(e.type)},
                       {"options", {"flap", "finger", "finger-compact", "tslot"}}});
    }
    return out;
}

json toJson(const Diagnostics& diagnostics) {
    json out = json::array();
    for (const Diagnostic& d : diagnostics) {
        json j = {{"severity", toString(d.severity)}, {"message", d.message}};
        if (!d.element.empty()) {
            j["element"] = d.element;
        }
        if (!d.stage.empty()) {
            j["stage"] = d.stage;
        }
        out.push_back(j);
    }
    return out;
}

json toJson(const tagger::TagReport& report) {
    json prims = json::array();
    for (const tagger::PrimitiveHit& p : report.primitives) {
        prims.push_back({{"element", p.element}, {"adjust", toString(p.adjust)}});
    }
    json segs = json::array();
    for (const tagger::SegmentHit& s : report.segments) {
        segs.push_back({{"element", s.element}, {"index", s.index}, {"length", s.length},
                        {"angle", s.angle}, {"curve", s.curve}});
    }
    return {{"primitives", prims}, {"segments", segs}};
}

json toJson(const std::vector<tagger::SlitMotif>& motifs) {
    json out = json::array();
    for (const tagger::SlitMotif& m : motifs) {
        out.push_back({{"element", m.element},
                       {"indices", m.indices},
                       {"width", m.width},
                       {"mouth", {{m.mouth0.x, m.mouth0.y}, {m.mouth1.x, m.mouth1.y}}},
                       {"center", {m.center.x, m.center.y}}});
    }
    return out;
}

json toJson(const std::vector<tagger::SegmentInfo>& segments) {
    json out = json::array();
    for (const tagger::SegmentInfo& s : segments) {
        const char* kind = s.kind == path::SegmentKind::Line    ? "line"
                           : s.kind == path::SegmentKind::Curve ? "curve"
                                                                : "arc";
        out.push_back({{"index", s.index},
                       {"kind", kind},
                       {"length", s.length},
                       {"angle", s.angle},
                       {"start", {s.start.x, s.start.y}},
                       {"end", {s.end.x, s.end.y}},
                       {"tagged", s.tagged}});
    }
    return out;
}

} // namespace lasertpl
