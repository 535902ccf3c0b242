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

#include "lasertpl/profiles.hpp"

#include <algorithm>
#include <map>

namespace lasertpl::profiles {

MachineProfile trotec() {
    return {"trotec", {"#0000FF", "0.01mm", "none"}, {"#FF0000", "0.2mm", "#000000"}};
}

MachineProfile epilog() {
    return {"epilog", {"#000000", "0.076mm", "none"}, {"none", "0", "#000000"}};
}

ProfileRegistry::ProfileRegistry()
    : profiles_{trotec(), epilog()} {
}

void ProfileRegistry::add(MachineProfile profile) {
    if (find(profile.id)) {
        bool builtin = profile.id == "trotec" || profile.id == "epilog";
        throw Error(ErrorKind::InvalidArgument,
                    builtin ? "cannot redefine built-in profile '" + profile.id + "'"
                            : "profile '" + profile.id + "' is already defined");
    }
    profiles_.push_back(std::move(profile));
}

const MachineProfile* ProfileRegistry::find(std::string_view id) const {
    for (const MachineProfile& p : profiles_) {
        if (p.id == id) {
            return &p;
        }
    }
    return nullptr;
}

std::vector<std::string> ProfileRegistry::ids() const {
    std::vector<std::string> out;
    for (const MachineProfile& p : profiles_) {
        out.push_back(p.id);
    }
    return out;
}

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

// "a:b; c:d" to ordered (name, value) pairs.
std::vector<std::pair<std::string, std::string>> declarations(std::string_view css) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t start = 0;
    while (start <= css.size()) {
        std::size_t end = css.find(';', start);
        if (end == std::string_view::npos) {
            end = css.size();
        }
        std::string_view decl = css.substr(start, end - start);
        auto colon = decl.find(':');
        if (colon != std::string_view::npos) {
            out.emplace_back(trim(decl.substr(0, colon)), trim(decl.substr(colon + 1)));
        }
        else if (!trim(decl).empty()) {
            out.emplace_back(trim(decl), "");
        }
        start = end + 1;
    }
    return out;
}

const char* const kKeys[] = {"id", "cut.stroke", "cut.stroke-width", "cut.fill",
                             "engrave.stroke", "engrave.stroke-width", "engrave.fill"};

} // namespace

MachineProfile parseProfile(std::string_view text) {
    std::map<std::string, std::string> values;
    std::size_t start = 0;
    int lineNo = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++lineNo;
        std::string line = trim(text.substr(start, end - start));
        start = end + 1;
        if (line.empty() || line[0] == '#' || line[0] == ';') {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::Syntax,
                        "profile line " + std::to_string(lineNo) + ": expected 'key = value'");
        }
        std::string key = trim(std::string_view(line).substr(0, eq));
        std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key == "cut" || key == "engrave") {
            for (const auto& [name, v] : declarations(value)) {
                values[key + "." + name] = v;
            }
            continue;
        }
        if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
            throw Error(ErrorKind::Validation,
                        "profile line " + std::to_string(lineNo) + ": unknown key '" + key + "'");
        }
        values[key] = value;
    }
    std::string missing;
    for (const char* k : kKeys) {
        auto it = values.find(k);
        if (it == values.end() || it->second.empty()) {
            missing += missing.empty() ? "" : ", ";
            missing += k;
        }
    }
    if (!missing.empty()) {
        throw Error(ErrorKind::Validation, "profile definition is missing: " + missing);
    }
    return {values["id"],
            {values["cut.stroke"], values["cut.stroke-width"], values["cut.fill"]},
            {values["engrave.stroke"], values["engrave.stroke-width"], values["engrave.fill"]}};
}

namespace {

bool drawable(std::string_view name) {
    auto colon = name.find(':');
    std::string_view n = colon == std::string_view::npos ? name : name.substr(colon + 1);
    for (const char* k : {"rect", "circle", "ellipse", "path", "line", "polyline", "polygon", "text"}) {
        if (n == k) {
            return true;
        }
    }
    return false;
}

void removeStyleProperties(xml::Node& node) {
    const std::string* style = node.attribute("style");
    if (!style) {
        return;
    }
    std::string kept;
    bool removed = false;
    for (const auto& [name, value] : declarations(*style)) {
        if (name == "stroke" || name == "stroke-width" || name == "fill") {
            removed = true;
            continue;
        }
        kept += kept.empty() ? "" : ";";
        kept += name + ":" + value;
    }
    if (!removed) {
        return;
    }
    if (kept.empty()) {
        node.removeAttribute("style");
    }
    else {
        node.setAttribute("style", kept);
    }
}

} // namespace

Diagnostics applyProfile(Document& doc, const MachineProfile& profile) {
    Diagnostics out;
    std::optional<Action> rootDefault = doc.globals().defaultAction;
    doc.forEachElement([&](xml::Node& node, const std::string& locator,
                           const std::vector<xml::Node*>& ancestors) {
        if (!drawable(node.name)) {
            return;
        }
        std::optional<Action> action = doc.laserAttrs(node, locator).action;
        for (auto it = ancestors.rbegin(); !action && it != ancestors.rend(); ++it) {
            action = doc.laserAttrs(**it).action;
        }
        if (!action) {
            action = rootDefault;
        }
        if (!action) {
            out.push_back({Severity::Warning, locator, "profile",
                           "no action set; element left unstyled"});
            return;
        }
        const Style& s = profile.style(*action);
        removeStyleProperties(node);
        node.setAttribute("stroke", s.stroke);
        node.setAttribute("stroke-width", s.strokeWidth);
        node.setAttribute("fill", s.fill);
    });
    return out;
}

} // namespace lasertpl::profiles
