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

#ifndef LASERTPL_PROFILES_HPP
#define LASERTPL_PROFILES_HPP

#include "lasertpl/document.hpp"
#include "lasertpl/error.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lasertpl::profiles {

struct Style {
    std::string stroke;
    std::string strokeWidth;
    std::string fill;

    friend bool operator==(const Style&, const Style&) = default;
};

struct MachineProfile {
    std::string id;
    Style cut;
    Style engrave;

    const Style& style(Action a) const { return a == Action::Cut ? cut : engrave; }
};

MachineProfile trotec();
MachineProfile epilog();

/// Built-in profiles plus registered custom ones. Built-ins cannot be
/// replaced.
class ProfileRegistry {
public:
    ProfileRegistry();

    /// Throws Error(InvalidArgument) if the id is taken.
    void add(MachineProfile profile);

    const MachineProfile* find(std::string_view id) const;

    std::vector<std::string> ids() const;

private:
    std::vector<MachineProfile> profiles_;
};

/// Parses `key = value` lines: id, cut.stroke, cut.stroke-width, cut.fill,
/// engrave.stroke, engrave.stroke-width, engrave.fill. `cut` and `engrave`
/// also accept a declaration list such as "stroke:#FF0000; fill:none".
/// Lines starting with '#' or ';' are comments. Throws Error(Validation)
/// listing every missing key.
MachineProfile parseProfile(std::string_view text);

/// Writes stroke, stroke-width and fill presentation attributes on every
/// drawable element according to its action (own, nearest ancestor, then
/// the root default) and removes those properties from `style`. Elements
/// without any action are left alone with a warning.
Diagnostics applyProfile(Document& doc, const MachineProfile& profile);

} // namespace lasertpl::profiles

#endif // LASERTPL_PROFILES_HPP
